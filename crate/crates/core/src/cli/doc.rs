//! JSON documents for maps and base points. Coefficients and coordinates are
//! canonical rational strings; rendering is deterministic (pretty-printed,
//! terms in decreasing monomial order, trailing newline).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homaloidal::{AssignedBasePoints, CremonaMap, MapError};
use crate::polyring::{format_rational, parse_rational, Form, ProjPoint};

pub const MAP_SCHEMA: &str = "cremona.map/v1";
pub const POINTS_SCHEMA: &str = "cremona.points/v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unknown schema {found:?} (expected {expected:?})")]
    Schema {
        expected: &'static str,
        found: String,
    },
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub exp: [u32; 3],
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub point: [String; 3],
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub schema: String,
    pub degree: u32,
    pub f: Vec<Vec<TermRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub htype: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_of: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDocument {
    pub schema: String,
    pub points: Vec<PointRecord>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

fn check_schema(found: &str, expected: &'static str) -> Result<(), DocError> {
    if found == expected {
        Ok(())
    } else {
        Err(DocError::Schema {
            expected,
            found: found.to_string(),
        })
    }
}

fn form_records(f: &Form) -> Vec<TermRecord> {
    f.terms()
        .map(|(m, c)| TermRecord {
            exp: m.exps(),
            coef: format_rational(c),
        })
        .collect()
}

fn records_to_points(records: &[PointRecord]) -> Result<AssignedBasePoints, DocError> {
    let mut entries = Vec::with_capacity(records.len());
    for r in records {
        let mut coords = Vec::with_capacity(3);
        for c in &r.point {
            coords.push(parse_rational(c).map_err(|e| DocError::Invalid(e.to_string()))?);
        }
        let coords: [_; 3] = coords.try_into().expect("three coordinates");
        let p = ProjPoint::new(coords).map_err(|e| DocError::Invalid(e.to_string()))?;
        entries.push((p, r.mult));
    }
    Ok(AssignedBasePoints::new(entries)?)
}

pub fn points_to_records(bp: &AssignedBasePoints) -> Vec<PointRecord> {
    bp.entries()
        .iter()
        .map(|(p, m)| PointRecord {
            point: p.coords().each_ref().map(format_rational),
            mult: *m,
        })
        .collect()
}

impl MapDocument {
    pub fn from_map(map: &CremonaMap) -> MapDocument {
        MapDocument {
            schema: MAP_SCHEMA.to_string(),
            degree: map.degree(),
            f: map.forms().iter().map(form_records).collect(),
            name: None,
            source: None,
            htype: None,
            inverse_of: None,
            points: None,
        }
    }

    pub fn parse(text: &str) -> Result<MapDocument, DocError> {
        let doc: MapDocument =
            serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))?;
        check_schema(&doc.schema, MAP_SCHEMA)?;
        doc.to_map()?;
        if let Some(p) = &doc.points {
            records_to_points(p)?;
        }
        Ok(doc)
    }

    pub fn to_map(&self) -> Result<CremonaMap, DocError> {
        if self.f.len() != 3 {
            return Err(DocError::Invalid(format!(
                "expected 3 components, found {}",
                self.f.len()
            )));
        }
        let mut forms = Vec::with_capacity(3);
        for (i, terms) in self.f.iter().enumerate() {
            let mut seen = std::collections::BTreeSet::new();
            let mut parsed = Vec::with_capacity(terms.len());
            for t in terms {
                if t.exp.iter().sum::<u32>() != self.degree {
                    return Err(DocError::Invalid(format!(
                        "component {i}: exponent {:?} does not have degree {}",
                        t.exp, self.degree
                    )));
                }
                if !seen.insert(t.exp) {
                    return Err(DocError::Invalid(format!(
                        "component {i}: repeated exponent {:?}",
                        t.exp
                    )));
                }
                let c = parse_rational(&t.coef).map_err(|e| DocError::Invalid(e.to_string()))?;
                parsed.push((t.exp, c));
            }
            forms.push(Form::from_terms(self.degree, parsed).map_err(MapError::from)?);
        }
        let forms: [Form; 3] = forms.try_into().expect("three forms");
        Ok(CremonaMap::new(forms)?)
    }

    /// Base points carried by the document, if any.
    pub fn base_points(&self) -> Result<Option<AssignedBasePoints>, DocError> {
        match &self.points {
            Some(p) if !p.is_empty() => Ok(Some(records_to_points(p)?)),
            _ => Ok(None),
        }
    }

    pub fn render(&self) -> String {
        to_json(self)
    }
}

impl PointsDocument {
    pub fn from_points(bp: &AssignedBasePoints) -> PointsDocument {
        PointsDocument {
            schema: POINTS_SCHEMA.to_string(),
            points: points_to_records(bp),
        }
    }

    pub fn parse(text: &str) -> Result<PointsDocument, DocError> {
        let doc: PointsDocument =
            serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))?;
        check_schema(&doc.schema, POINTS_SCHEMA)?;
        records_to_points(&doc.points)?;
        Ok(doc)
    }

    pub fn to_points(&self) -> Result<AssignedBasePoints, DocError> {
        records_to_points(&self.points)
    }

    pub fn render(&self) -> String {
        to_json(self)
    }
}

/// Serializes any value the way every document is written.
pub fn render_json<T: Serialize>(value: &T) -> String {
    to_json(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_round_trip() {
        let doc = MapDocument::from_map(&CremonaMap::sigma());
        let text = doc.render();
        assert!(text.ends_with("}\n"));
        let back = MapDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_map().unwrap(), CremonaMap::sigma());
        assert_eq!(back.render(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let good = MapDocument::from_map(&CremonaMap::sigma()).render();
        let wrong_schema = good.replace("cremona.map/v1", "cremona.map/v9");
        assert!(matches!(
            MapDocument::parse(&wrong_schema),
            Err(DocError::Schema { .. })
        ));
        let bad_coef = good.replacen("\"1\"", "\"2/4\"", 1);
        assert!(matches!(
            MapDocument::parse(&bad_coef),
            Err(DocError::Invalid(_))
        ));
        let bad_degree = good.replacen("\"degree\": 2", "\"degree\": 3", 1);
        assert!(matches!(
            MapDocument::parse(&bad_degree),
            Err(DocError::Invalid(_))
        ));
        assert!(matches!(MapDocument::parse("{"), Err(DocError::Json(_))));
        let extra = good.replacen("{", "{\"extra\": 1,", 1);
        assert!(matches!(MapDocument::parse(&extra), Err(DocError::Json(_))));
    }

    #[test]
    fn points_document() {
        let text = r#"{"schema":"cremona.points/v1","points":[{"point":["0","2","4"],"mult":2},{"point":["1","0","0"],"mult":1}]}"#;
        let doc = PointsDocument::parse(text).unwrap();
        let bp = doc.to_points().unwrap();
        assert_eq!(bp.entries()[0], (ProjPoint::from_ints(0, 1, 2), 2));
        let again = PointsDocument::from_points(&bp);
        assert_eq!(again.points[0].point, ["0", "1", "2"].map(String::from));
        let dup = r#"{"schema":"cremona.points/v1","points":[{"point":["1","1","1"],"mult":1},{"point":["2","2","2"],"mult":1}]}"#;
        assert!(matches!(
            PointsDocument::parse(dup),
            Err(DocError::Map(MapError::DuplicatePoint(_)))
        ));
    }
}
