//! Seeded property suites shared by the property tests and the acceptance
//! run. Each suite returns `Err` with the shrunk counterexample on failure.

#![allow(dead_code)]

use cremona::cli::cache::CensusCache;
use cremona::cli::doc::MapDocument;
use cremona::homaloidal::{
    compose, is_identity_up_to_factor, quadratic_map, strip_gcd, CremonaMap,
};
use cremona::hudson::Census;
use cremona::polyring::{gcd, jacobian_det, rat, Form, Mat3, Monomial, ProjPoint, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed, TestRunner};

pub const SEED: u64 = 0x5eed_c7e0;

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

/// Forms of the given degree with a handful of small rational terms.
pub fn form_of_degree(degree: u32) -> impl Strategy<Value = Form> {
    let monos = Monomial::all_of_degree(degree);
    let n = monos.len();
    proptest::collection::vec((0..n, small_rational()), 0..=n.min(5)).prop_map(move |terms| {
        let mut f = Form::zero(degree);
        for (i, c) in terms {
            let t = Form::monomial(monos[i].exps(), c);
            f = f.add(&t).unwrap();
        }
        f
    })
}

pub fn nonzero_form(degree: u32) -> impl Strategy<Value = Form> {
    form_of_degree(degree).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn int_point() -> impl Strategy<Value = ProjPoint> {
    (-20i64..=20, -20i64..=20, -20i64..=20)
        .prop_filter("nonzero", |&(a, b, c)| (a, b, c) != (0, 0, 0))
        .prop_map(|(a, b, c)| ProjPoint::from_ints(a, b, c))
}

pub fn invertible_matrix() -> impl Strategy<Value = Mat3> {
    proptest::array::uniform3(proptest::array::uniform3(-4i64..=4))
        .prop_map(Mat3::from_rows)
        .prop_filter("invertible", |m| m.det() != rat(0, 1))
}

pub fn noncollinear_centers() -> impl Strategy<Value = [ProjPoint; 3]> {
    (int_point(), int_point(), int_point())
        .prop_filter("distinct, not collinear", |(a, b, c)| {
            a != b && b != c && a != c && !ProjPoint::collinear(a, b, c)
        })
        .prop_map(|(a, b, c)| [a, b, c])
}

pub fn small_map() -> impl Strategy<Value = CremonaMap> {
    (1u32..=3).prop_flat_map(|d| {
        (form_of_degree(d), form_of_degree(d), form_of_degree(d))
            .prop_filter_map("not all zero", |(a, b, c)| CremonaMap::new([a, b, c]).ok())
    })
}

fn fail(msg: String) -> Result<(), TestCaseError> {
    Err(TestCaseError::fail(msg))
}

fn report<T: std::fmt::Debug>(
    r: Result<(), proptest::test_runner::TestError<T>>,
) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn ring_axioms(cases: u32) -> Result<(), String> {
    let strat = (1u32..=3).prop_flat_map(|d| {
        (
            form_of_degree(d),
            form_of_degree(d),
            form_of_degree(d),
            form_of_degree(2),
        )
    });
    report(runner(cases).run(&strat, |(f, g, h, k)| {
        let fg = f.add(&g).unwrap();
        prop_assert_eq!(fg.add(&h).unwrap(), f.add(&g.add(&h).unwrap()).unwrap());
        prop_assert_eq!(&fg, &g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&k), k.mul(&f));
        prop_assert_eq!(fg.mul(&k), f.mul(&k).add(&g.mul(&k)).unwrap());
        prop_assert!(f.sub(&f).unwrap().is_zero());
        prop_assert_eq!(f.mul(&Form::one()), f.clone());
        Ok(())
    }))
}

pub fn gcd_divisibility(cases: u32) -> Result<(), String> {
    let strat = (
        nonzero_form(1),
        nonzero_form(2),
        nonzero_form(2),
        nonzero_form(1),
    );
    report(runner(cases).run(&strat, |(c, a, b, e)| {
        let fa = a.mul(&c).mul(&e);
        let fb = b.mul(&c);
        let g = gcd(&fa, &fb).unwrap();
        prop_assert!(g.exact_div(&c).is_some(), "gcd {} misses factor {}", g, c);
        let qa = fa.exact_div(&g);
        let qb = fb.exact_div(&g);
        prop_assert!(qa.is_some() && qb.is_some(), "gcd {} does not divide", g);
        let cofactor = gcd(&qa.unwrap(), &qb.unwrap()).unwrap();
        if cofactor.degree() != 0 {
            return fail(format!("cofactors share {cofactor}"));
        }
        Ok(())
    }))
}

/// Products of lines through `p` and general lines have the same
/// multiplicity at `p` as their pullback has at the preimage of `p`.
pub fn multiplicity_invariance(cases: u32) -> Result<(), String> {
    let strat = (
        int_point(),
        proptest::collection::vec(int_point(), 1..=3),
        proptest::collection::vec(nonzero_form(1), 0..=2),
        invertible_matrix(),
    );
    report(runner(cases).run(&strat, |(p, through, general, m)| {
        let c = p.coords();
        let mut f = Form::one();
        let mut lines = 0;
        for q in &through {
            let d = q.coords();
            let cross = [
                &c[1] * &d[2] - &c[2] * &d[1],
                &c[2] * &d[0] - &c[0] * &d[2],
                &c[0] * &d[1] - &c[1] * &d[0],
            ];
            if cross.iter().all(|v| *v == rat(0, 1)) {
                continue;
            }
            f = f.mul(&Form::linear(&cross));
            lines += 1;
        }
        for g in &general {
            f = f.mul(g);
        }
        let mult = f.multiplicity_at(&p).unwrap();
        prop_assert!(mult >= lines);
        let pulled = f.linear_substitute(&m).unwrap();
        let pre = m.inverse().unwrap().apply(&p).unwrap();
        prop_assert_eq!(pulled.multiplicity_at(&pre).unwrap(), mult);
        Ok(())
    }))
}

/// `J(F ∘ G) = (J F ∘ G) · J G`.
pub fn jacobian_chain_rule(cases: u32) -> Result<(), String> {
    let tri = |d| (nonzero_form(d), nonzero_form(d), nonzero_form(d));
    let strat = (tri(1), tri(2));
    report(runner(cases).run(&strat, |((a, b, c), (x, y, z))| {
        let outer = CremonaMap::new([a, b, c]).unwrap();
        let inner = CremonaMap::new([x, y, z]).unwrap();
        let whole = compose(&outer, &inner);
        let [f1, f2, f3] = whole.forms();
        let lhs = jacobian_det(f1, f2, f3).unwrap();
        let jf = outer.jacobian().unwrap();
        let jf_g = jf.substitute(inner.forms()).unwrap();
        let rhs = jf_g.mul(&inner.jacobian().unwrap());
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

pub fn quadratic_involution(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&noncollinear_centers(), |[p, q, r]| {
        let w = quadratic_map(&p, &q, &r).unwrap();
        prop_assert_eq!(w.degree(), 2);
        let (sq, h) = strip_gcd(&compose(&w, &w));
        prop_assert_eq!(h.degree(), 3);
        prop_assert!(is_identity_up_to_factor(&sq));
        Ok(())
    }))
}

pub fn document_round_trip(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&small_map(), |g| {
        let doc = MapDocument::from_map(&g);
        let text = doc.render();
        let back = MapDocument::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_map().unwrap(), g);
        prop_assert_eq!(back.render(), text);
        Ok(())
    }))
}

/// Regenerating the cache from scratch gives byte-identical files.
pub fn cache_determinism(degrees: std::ops::RangeInclusive<u32>) -> Result<(), String> {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    for d in degrees {
        let first = CensusCache::new(a.path());
        first.get_or_build(d).map_err(|e| e.to_string())?;
        let bytes = std::fs::read(first.path_for(d)).map_err(|e| e.to_string())?;
        std::fs::remove_file(first.path_for(d)).map_err(|e| e.to_string())?;
        first.get_or_build(d).map_err(|e| e.to_string())?;
        let again = std::fs::read(first.path_for(d)).map_err(|e| e.to_string())?;
        let other = CensusCache::new(b.path());
        other.store(&Census::build(d)).map_err(|e| e.to_string())?;
        let fresh = std::fs::read(other.path_for(d)).map_err(|e| e.to_string())?;
        if bytes != again || bytes != fresh {
            return Err(format!(
                "degree {d}: cache bytes differ between regenerations"
            ));
        }
        let (loaded, hit) = first.get_or_build(d).map_err(|e| e.to_string())?;
        if !hit || loaded != Census::build(d) {
            return Err(format!("degree {d}: cached census does not reload"));
        }
    }
    Ok(())
}
