//! The example maps shipped with the crate: ten maps of degrees 4, 5 and 6
//! transcribed with their exact integer coefficients, plus inverses of the
//! degree-5 and degree-6 maps computed by exact elimination in
//! `scripts/fixture_oracle.py`.

use std::sync::OnceLock;

use super::{verify_inverse_pair, AssignedBasePoints, CremonaMap};
use crate::cli::doc::MapDocument;
use crate::hudson::is_admissible;
use crate::multiindex::MultiIndex;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../fixtures/", $name, ".json")))),*]
    };
}

const BUNDLED: &[(&str, &str)] = bundled!(
    "bir4_t1",
    "bir4_t1_inv",
    "bir4_t0",
    "bir4_t0_inv",
    "bir5_t1",
    "bir5_t1_inv",
    "bir5_t0",
    "bir5_t0_inv",
    "bir6_family1_t1",
    "bir6_family1_t1_inv",
    "bir6_family1_t0",
    "bir6_family1_t0_inv",
    "bir6_family2_t1",
    "bir6_family2_t1_inv",
    "bir6_family2_t0",
    "bir6_family2_t0_inv",
);

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub map: CremonaMap,
    /// Proper base points with their multiplicities, when known.
    pub points: AssignedBasePoints,
    pub htype: Option<MultiIndex>,
    /// Transcribed as given, or computed.
    pub transcribed: bool,
    pub inverse_of: Option<String>,
    pub document: MapDocument,
    pub text: &'static str,
}

pub fn fixtures() -> &'static [Fixture] {
    static ALL: OnceLock<Vec<Fixture>> = OnceLock::new();
    ALL.get_or_init(|| {
        BUNDLED
            .iter()
            .map(|&(name, text)| {
                let document = MapDocument::parse(text)
                    .unwrap_or_else(|e| panic!("bundled fixture {name}: {e}"));
                let htype = document.htype.as_ref().map(|h| {
                    let counts: Vec<i64> = h.iter().map(|&v| v as i64).collect();
                    MultiIndex::from_counts(&counts).expect("bundled H-type")
                });
                Fixture {
                    name,
                    map: document.to_map().expect("validated"),
                    points: document
                        .base_points()
                        .expect("validated")
                        .unwrap_or_default(),
                    htype,
                    transcribed: document.source.as_deref() == Some("transcribed"),
                    inverse_of: document.inverse_of.clone(),
                    document,
                    text,
                }
            })
            .collect()
    })
}

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    fixtures().iter().find(|f| f.name == name)
}

/// The bundled map paired with `name` as its inverse.
pub fn partner(name: &str) -> Option<&'static Fixture> {
    let this = fixture(name)?;
    match &this.inverse_of {
        Some(base) => fixture(base),
        None => fixtures()
            .iter()
            .find(|f| f.inverse_of.as_deref() == Some(name)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCheck {
    pub fixture: &'static str,
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub checks: Vec<FixtureCheck>,
    /// Transcribed maps all of whose checks passed.
    pub verified: usize,
    pub transcribed: usize,
}

impl FixtureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        format!("{}/{} maps verified", self.verified, self.transcribed)
    }
}

fn check_fixture(f: &'static Fixture) -> Vec<FixtureCheck> {
    let mut out = Vec::new();
    let mut push = |check, passed, detail: String| {
        out.push(FixtureCheck {
            fixture: f.name,
            check,
            passed,
            detail,
        })
    };
    let jac = f.map.jacobian_nonzero();
    push(
        "jacobian",
        jac,
        if jac {
            "nonzero".into()
        } else {
            "vanishes".into()
        },
    );
    push(
        "pure",
        f.map.is_pure(),
        format!("degree {}", f.map.degree()),
    );
    if !f.points.is_empty() {
        let wrong: Vec<String> = f
            .points
            .entries()
            .iter()
            .filter_map(|(p, m)| {
                let found = f.map.multiplicity_at(p);
                (found != *m).then(|| format!("{p}: expected {m}, found {found}"))
            })
            .collect();
        push(
            "multiplicities",
            wrong.is_empty(),
            if wrong.is_empty() {
                format!("{} points", f.points.len())
            } else {
                wrong.join("; ")
            },
        );
    }
    if let Some(h) = &f.htype {
        let admissible = is_admissible(h).is_admissible() && h.degree() == f.map.degree();
        let mut profile: Vec<u32> = h
            .multiplicities()
            .map(|p| p.values().to_vec())
            .unwrap_or_default();
        let fits =
            f.points
                .entries()
                .iter()
                .all(|(_, m)| match profile.iter().position(|v| v == m) {
                    Some(i) => {
                        profile.remove(i);
                        true
                    }
                    None => false,
                });
        push("htype", admissible && fits, format!("{h}"));
    }
    if let Some(p) = partner(f.name) {
        let ok = verify_inverse_pair(&f.map, &p.map);
        push("inverse", ok, format!("with {}", p.name));
    }
    out
}

/// Runs every check on every bundled map, one thread per map.
pub fn run_fixture_checks() -> FixtureReport {
    let all = fixtures();
    let per_map: Vec<Vec<FixtureCheck>> = std::thread::scope(|s| {
        let handles: Vec<_> = all
            .iter()
            .map(|f| s.spawn(move || check_fixture(f)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread"))
            .collect()
    });
    let transcribed = all.iter().filter(|f| f.transcribed).count();
    let verified = all
        .iter()
        .zip(&per_map)
        .filter(|(f, c)| f.transcribed && c.iter().all(|c| c.passed))
        .count();
    FixtureReport {
        checks: per_map.into_iter().flatten().collect(),
        verified,
        transcribed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_set() {
        assert_eq!(fixtures().len(), 16);
        assert_eq!(fixtures().iter().filter(|f| f.transcribed).count(), 10);
        assert_eq!(partner("bir4_t1").unwrap().name, "bir4_t1_inv");
        assert_eq!(partner("bir4_t1_inv").unwrap().name, "bir4_t1");
        assert_eq!(
            partner("bir6_family2_t0").unwrap().name,
            "bir6_family2_t0_inv"
        );
        assert!(fixture("nope").is_none());
    }

    #[test]
    fn documents_are_canonical() {
        for f in fixtures() {
            assert_eq!(f.document.render(), f.text, "{}", f.name);
        }
    }

    #[test]
    fn degree_four_checks() {
        for name in ["bir4_t1", "bir4_t0", "bir4_t1_inv", "bir4_t0_inv"] {
            let checks = check_fixture(fixture(name).unwrap());
            assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        }
    }

    #[test]
    fn full_report() {
        let report = run_fixture_checks();
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(report.summary(), "10/10 maps verified");
    }

    #[test]
    fn stated_multiplicities() {
        let origin = crate::polyring::ProjPoint::from_ints(0, 0, 1);
        assert_eq!(fixture("bir4_t0").unwrap().map.multiplicity_at(&origin), 3);
        assert_eq!(
            fixture("bir6_family2_t0")
                .unwrap()
                .map
                .multiplicity_at(&origin),
            5
        );
    }
}
