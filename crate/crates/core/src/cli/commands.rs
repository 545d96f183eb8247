use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use super::cache::CensusCache;
use super::doc::{points_to_records, render_json, MapDocument, PointsDocument};
use super::{Outcome, EXIT_FALSE, EXIT_OK};
use crate::homaloidal::fixtures::{fixtures, run_fixture_checks};
use crate::homaloidal::{
    compose, factor_quadratics, inverse, is_identity_up_to_factor, strip_gcd, AssignedBasePoints,
    CremonaMap, MapError,
};
use crate::hudson::{dim_bir, dim_biro, is_admissible, Census};
use crate::multiindex::MultiIndex;
use crate::polyring::format_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusFormat {
    Table,
    Json,
}

pub fn cmd_adm(nu: &[i64]) -> Outcome {
    match MultiIndex::from_counts(nu) {
        Ok(nu) => {
            let verdict = is_admissible(&nu);
            let code = if verdict.is_admissible() {
                EXIT_OK
            } else {
                EXIT_FALSE
            };
            Outcome::with_code(code, format!("{}\n", verdict.diagnostic()))
        }
        Err(e) => Outcome::usage(format!("error: {e}")),
    }
}

fn census_table(c: &Census) -> String {
    let d = c.degree as i64;
    let rows: Vec<[String; 5]> = c
        .components
        .iter()
        .map(|r| {
            let kind = match (r.de_jonquieres, r.symmetric) {
                (true, true) => "de Jonquières, symmetric",
                (true, false) => "de Jonquières",
                (false, true) => "symmetric",
                (false, false) => "",
            };
            [
                r.htype.to_string(),
                r.reduced_length.to_string(),
                r.length.to_string(),
                r.dimension.to_string(),
                kind.to_string(),
            ]
        })
        .collect();
    let header = ["H-type", "r", "rho", "dim", "type"].map(String::from);
    let mut width = [0usize; 4];
    for row in std::iter::once(&header).chain(&rows) {
        for (w, cell) in width.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let line = format!(
            "{:<w0$}  {:>w1$}  {:>w2$}  {:>w3$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            row[4],
            w0 = width[0],
            w1 = width[1],
            w2 = width[2],
            w3 = width[3],
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&format!(
        "components: {}\nNoether solutions: {}\ndim Bir°_{d} = {}\ndim Bir_{d} = {}\n",
        c.component_count(),
        c.noether_solutions.len(),
        dim_biro(d).expect("d >= 2"),
        dim_bir(d).expect("d >= 2"),
    ));
    out
}

fn census_json(c: &Census) -> String {
    let d = c.degree as i64;
    let components: Vec<Value> = c
        .components
        .iter()
        .map(|r| {
            json!({
                "htype": r.htype,
                "reduced_length": r.reduced_length,
                "length": r.length,
                "dimension": r.dimension,
                "de_jonquieres": r.de_jonquieres,
                "symmetric": r.symmetric,
            })
        })
        .collect();
    render_json(&json!({
        "schema": "cremona.census/v1",
        "degree": c.degree,
        "components": components,
        "component_count": c.component_count(),
        "noether_solutions": c.noether_solutions.len(),
        "dim_biro": dim_biro(d).expect("d >= 2"),
        "dim_bir": dim_bir(d).expect("d >= 2"),
    }))
}

/// Census listing; with a cache directory the census is read from, or
/// stored to, that directory.
pub fn cmd_census(d: u32, format: CensusFormat, cache_dir: Option<&Path>) -> Outcome {
    if d < 2 {
        return Outcome::usage("error: the census needs degree at least 2");
    }
    let mut stderr = String::new();
    let census = match cache_dir {
        Some(dir) => match CensusCache::new(dir).get_or_build(d) {
            Ok((c, _)) => c,
            Err(e) => {
                stderr.push_str(&format!(
                    "warning: census cache in {} unusable: {e}\n",
                    dir.display()
                ));
                Census::build(d)
            }
        },
        None => Census::build(d),
    };
    let stdout = match format {
        CensusFormat::Table => census_table(&census),
        CensusFormat::Json => census_json(&census),
    };
    Outcome {
        code: EXIT_OK,
        stdout,
        stderr,
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path)
        .map_err(|e| Outcome::usage(format!("error: cannot read {}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<(MapDocument, CremonaMap), Outcome> {
    let text = read(path)?;
    let doc = MapDocument::parse(&text)
        .map_err(|e| Outcome::usage(format!("error: {}: {e}", path.display())))?;
    let map = doc.to_map().expect("validated by parse");
    Ok((doc, map))
}

/// Base points from `--points`, else those embedded in the map document.
fn load_points(doc: &MapDocument, points: Option<&Path>) -> Result<AssignedBasePoints, Outcome> {
    if let Some(path) = points {
        let text = read(path)?;
        return PointsDocument::parse(&text)
            .and_then(|p| p.to_points())
            .map_err(|e| Outcome::usage(format!("error: {}: {e}", path.display())));
    }
    match doc.base_points() {
        Ok(Some(bp)) => Ok(bp),
        Ok(None) => Ok(AssignedBasePoints::default()),
        Err(e) => Err(Outcome::usage(format!("error: embedded points: {e}"))),
    }
}

fn error_kind(e: &MapError) -> &'static str {
    match e {
        MapError::Poly(_) => "polynomial",
        MapError::DegreeMismatch(_) => "degree-mismatch",
        MapError::AllZero => "all-zero",
        MapError::NotAdmissible(_) => "not-admissible",
        MapError::WrongPointCount { .. } => "wrong-point-count",
        MapError::DuplicatePoint(_) => "duplicate-point",
        MapError::ZeroMultiplicity(_) => "zero-multiplicity",
        MapError::SpecialPosition { .. } => "special-position",
        MapError::CollinearCenters => "collinear-centers",
        MapError::CoincidentCenters => "coincident-centers",
        MapError::MultiplicityMismatch { .. } => "multiplicity-mismatch",
        MapError::InfinitelyNearUnsupported(_) => "infinitely-near-unsupported",
        MapError::NotPure => "not-pure",
        MapError::Internal(_) => "internal",
    }
}

fn failure(e: &MapError) -> Outcome {
    Outcome::with_code(
        EXIT_FALSE,
        render_json(&json!({
            "schema": "cremona.error/v1",
            "kind": error_kind(e),
            "message": e.to_string(),
        })),
    )
}

macro_rules! try_out {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(out) => return out,
        }
    };
}

pub fn cmd_verify_pair(a: &Path, b: &Path) -> Outcome {
    let (_, ga) = try_out!(load_map(a));
    let (_, gb) = try_out!(load_map(b));
    let forward = is_identity_up_to_factor(&compose(&ga, &gb));
    let backward = is_identity_up_to_factor(&compose(&gb, &ga));
    let passed = forward && backward;
    let reason = match (forward, backward) {
        (true, true) => Value::Null,
        (false, true) => json!("A∘B is not the identity"),
        (true, false) => json!("B∘A is not the identity"),
        (false, false) => json!("neither A∘B nor B∘A is the identity"),
    };
    Outcome::with_code(
        if passed { EXIT_OK } else { EXIT_FALSE },
        render_json(&json!({
            "schema": "cremona.verdict/v1",
            "check": "verify-pair",
            "passed": passed,
            "forward": forward,
            "backward": backward,
            "reason": reason,
        })),
    )
}

/// `A ∘ B`: the components of `B` substituted into `A`.
pub fn cmd_compose(a: &Path, b: &Path, strip: bool) -> Outcome {
    let (_, ga) = try_out!(load_map(a));
    let (_, gb) = try_out!(load_map(b));
    let mut out = compose(&ga, &gb);
    if strip {
        out = strip_gcd(&out).0;
    }
    Outcome::ok(MapDocument::from_map(&out).render())
}

pub fn cmd_invert(file: &Path, points: Option<&Path>) -> Outcome {
    let (doc, g) = try_out!(load_map(file));
    let bp = try_out!(load_points(&doc, points));
    match inverse(&g, &bp) {
        Ok(inv) => {
            let mut out = MapDocument::from_map(&inv);
            out.inverse_of = doc.name.clone();
            Outcome::ok(out.render())
        }
        Err(e) => failure(&e),
    }
}

pub fn cmd_factor(file: &Path, points: Option<&Path>) -> Outcome {
    let (doc, g) = try_out!(load_map(file));
    let bp = try_out!(load_points(&doc, points));
    let fac = match factor_quadratics(&g, &bp) {
        Ok(f) => f,
        Err(e) => return failure(&e),
    };
    let verified = fac.verify();
    let steps: Vec<Value> = fac
        .steps
        .iter()
        .map(|s| {
            let centers =
                AssignedBasePoints::new(s.centers.iter().cloned().zip(s.multiplicities).collect())
                    .expect("distinct centers");
            json!({
                "centers": points_to_records(&centers),
                "degree_before": s.degree_before,
                "degree_after": s.degree_after,
                "quadratic": MapDocument::from_map(&s.map),
            })
        })
        .collect();
    let tail: Vec<Vec<String>> = fac
        .linear_tail
        .rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect();
    Outcome::with_code(
        if verified { EXIT_OK } else { EXIT_FALSE },
        render_json(&json!({
            "schema": "cremona.factorization/v1",
            "degrees": fac.degrees(),
            "steps": steps,
            "linear_tail": tail,
            "verified": verified,
        })),
    )
}

pub fn cmd_mults(file: &Path, points: Option<&Path>) -> Outcome {
    let (doc, g) = try_out!(load_map(file));
    let bp = try_out!(load_points(&doc, points));
    if bp.is_empty() {
        return Outcome::usage("error: no points given (use --points or embed them)");
    }
    let records = points_to_records(&bp);
    let mut passed = true;
    let rows: Vec<Value> = bp
        .entries()
        .iter()
        .zip(records)
        .map(|((p, expected), rec)| {
            let found = g.multiplicity_at(p);
            passed &= found == *expected;
            json!({
                "point": rec.point,
                "expected": expected,
                "found": found,
                "ok": found == *expected,
            })
        })
        .collect();
    Outcome::with_code(
        if passed { EXIT_OK } else { EXIT_FALSE },
        render_json(&json!({
            "schema": "cremona.multiplicities/v1",
            "degree": g.degree(),
            "points": rows,
            "passed": passed,
        })),
    )
}

pub fn cmd_fixtures(run_all: bool, export: Option<&Path>) -> Outcome {
    let mut out = String::new();
    if let Some(dir) = export {
        if let Err(e) = fs::create_dir_all(dir) {
            return Outcome::usage(format!("error: cannot create {}: {e}", dir.display()));
        }
        for f in fixtures() {
            let path = dir.join(format!("{}.json", f.name));
            if let Err(e) = fs::write(&path, f.text) {
                return Outcome::usage(format!("error: cannot write {}: {e}", path.display()));
            }
        }
        out.push_str(&format!(
            "wrote {} fixtures to {}\n",
            fixtures().len(),
            dir.display()
        ));
    }
    if run_all {
        let report = run_fixture_checks();
        for c in &report.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{mark}  {:<22} {:<15} {}\n",
                c.fixture, c.check, c.detail
            ));
        }
        out.push_str(&report.summary());
        out.push('\n');
        let code = if report.all_passed() {
            EXIT_OK
        } else {
            EXIT_FALSE
        };
        return Outcome::with_code(code, out);
    }
    if export.is_none() {
        for f in fixtures() {
            let kind = if f.transcribed {
                "transcribed"
            } else {
                "computed"
            };
            out.push_str(&format!(
                "{:<22} degree {}  {kind}\n",
                f.name,
                f.map.degree()
            ));
        }
    }
    Outcome::ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::run;

    fn fixture_path(name: &str) -> std::path::PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("fixtures/{name}.json"))
    }

    #[test]
    fn adm_examples() {
        assert_eq!(cmd_adm(&[0, 6, 0, 0]), Outcome::ok("1\n".into()));
        assert_eq!(
            cmd_adm(&[6, 0, 2, 0]),
            Outcome::with_code(1, "The net is reducible\n".into())
        );
        assert_eq!(
            cmd_adm(&[1, 0]),
            Outcome::with_code(1, "ERROR: the self-intersection is not 1\n".into())
        );
        assert_eq!(cmd_adm(&[1, -1]).code, 2);
        assert_eq!(run(["cremona", "adm", "0", "6", "0", "0"]).stdout, "1\n");
        assert_eq!(run(["cremona", "adm", "x"]).code, 2);
        assert_eq!(run(["cremona", "adm"]).code, 2);
    }

    #[test]
    fn genus_diagnostic() {
        // Σ i²ν_i = 15 but Σ iν_i = 11 ≠ 9.
        let out = cmd_adm(&[7, 2, 0]);
        assert_eq!(out.stdout, "ERROR: the genus is not 0\n");
        assert_eq!(out.code, 1);
    }

    #[test]
    fn census_rows() {
        let out = cmd_census(5, CensusFormat::Table, None);
        assert_eq!(out.code, 0);
        let rows: Vec<&str> = out.stdout.lines().skip(1).take(3).collect();
        assert!(rows[0].starts_with("(8,0,0,1)") && rows[0].contains(" 26  de Jonquières"));
        assert!(rows[1].starts_with("(3,3,1,0)") && rows[1].contains(" 22"));
        assert!(rows[2].starts_with("(0,6,0,0)") && rows[2].ends_with(" 20  symmetric"));
        assert!(out.stdout.contains("components: 3\n"));
        let two = cmd_census(2, CensusFormat::Json, None);
        let v: Value = serde_json::from_str(&two.stdout).unwrap();
        assert_eq!(v["components"][0]["htype"], json!([3]));
        assert_eq!(v["components"][0]["dimension"], json!(14));
        assert_eq!(cmd_census(1, CensusFormat::Table, None).code, 2);
    }

    #[test]
    fn census_ten_contains_sparse_types() {
        let out = cmd_census(10, CensusFormat::Table, None);
        assert!(out
            .stdout
            .lines()
            .any(|l| l.starts_with("(0,0,7,0,0,1,0,0,0) ")));
        assert!(out
            .stdout
            .lines()
            .any(|l| l.starts_with("(3,0,0,6,0,0,0,0,0) ")));
    }

    #[test]
    fn census_uses_cache() {
        let dir = tempfile::tempdir().unwrap();
        let a = cmd_census(4, CensusFormat::Json, Some(dir.path()));
        assert!(dir.path().join("census-d4.v1.json").exists());
        let b = cmd_census(4, CensusFormat::Json, Some(dir.path()));
        assert_eq!(a, b);
    }

    #[test]
    fn verify_pair_and_exit_codes() {
        let a = fixture_path("bir4_t1");
        let b = fixture_path("bir4_t1_inv");
        let out = cmd_verify_pair(&a, &b);
        assert_eq!(out.code, 0, "{out:?}");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["passed"], json!(true));
        let bad = cmd_verify_pair(&a, &fixture_path("bir4_t0_inv"));
        assert_eq!(bad.code, 1);
        assert_eq!(cmd_verify_pair(&a, Path::new("/nonexistent.json")).code, 2);
        let dir = tempfile::tempdir().unwrap();
        let junk = dir.path().join("junk.json");
        fs::write(&junk, "[]").unwrap();
        assert_eq!(cmd_verify_pair(&a, &junk).code, 2);
    }

    #[test]
    fn compose_sigma_strip() {
        let dir = tempfile::tempdir().unwrap();
        let sigma = dir.path().join("sigma.json");
        fs::write(&sigma, MapDocument::from_map(&CremonaMap::sigma()).render()).unwrap();
        let out = cmd_compose(&sigma, &sigma, true);
        assert_eq!(out.code, 0);
        assert_eq!(
            out.stdout,
            MapDocument::from_map(&CremonaMap::identity()).render()
        );
        let raw = cmd_compose(&sigma, &sigma, false);
        let doc = MapDocument::parse(&raw.stdout).unwrap();
        assert_eq!(doc.degree, 4);
    }

    #[test]
    fn invert_and_factor_bir4() {
        let file = fixture_path("bir4_t1");
        let out = cmd_invert(&file, None);
        assert_eq!(out.code, 0, "{out:?}");
        let inv = MapDocument::parse(&out.stdout).unwrap().to_map().unwrap();
        let known = MapDocument::parse(&fs::read_to_string(fixture_path("bir4_t1_inv")).unwrap())
            .unwrap()
            .to_map()
            .unwrap();
        assert!(inv.projectively_equal(&known));
        let fac = cmd_factor(&file, None);
        assert_eq!(fac.code, 0);
        let v: Value = serde_json::from_str(&fac.stdout).unwrap();
        assert_eq!(v["degrees"], json!([4, 2, 1]));
        // The t = 0 net has infinitely near base points.
        let t0 = cmd_invert(&fixture_path("bir4_t0"), None);
        assert_eq!(t0.code, 1);
        assert!(t0.stdout.contains("infinitely-near-unsupported"));
    }

    #[test]
    fn mults_reports() {
        let out = cmd_mults(&fixture_path("bir6_family2_t0"), None);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["points"][0]["found"], json!(5));
        assert_eq!(cmd_mults(&fixture_path("bir5_t1_inv"), None).code, 2);
        let dir = tempfile::tempdir().unwrap();
        let pts = dir.path().join("p.json");
        fs::write(
            &pts,
            r#"{"schema":"cremona.points/v1","points":[{"point":["0","0","1"],"mult":2}]}"#,
        )
        .unwrap();
        let wrong = cmd_mults(&fixture_path("bir4_t0"), Some(&pts));
        assert_eq!(wrong.code, 1);
    }

    #[test]
    fn fixture_listing_and_export() {
        let list = cmd_fixtures(false, None);
        assert_eq!(list.stdout.lines().count(), 16);
        let dir = tempfile::tempdir().unwrap();
        let out = cmd_fixtures(false, Some(dir.path()));
        assert_eq!(out.code, 0);
        assert_eq!(
            fs::read_to_string(dir.path().join("bir4_t1.json")).unwrap(),
            fs::read_to_string(fixture_path("bir4_t1")).unwrap()
        );
    }
}
