use super::{compose, AssignedBasePoints, CremonaMap, MapError};
use crate::polyring::{Form, Mat3, ProjPoint};

/// The quadratic involution with fundamental points `p1, p2, p3`:
/// `L ∘ σ ∘ adj(L)` where `L = [p1 | p2 | p3]`.
pub fn quadratic_map(
    p1: &ProjPoint,
    p2: &ProjPoint,
    p3: &ProjPoint,
) -> Result<CremonaMap, MapError> {
    let l = center_matrix(p1, p2, p3)?;
    let inner = compose(
        &CremonaMap::sigma(),
        &CremonaMap::from_linear(&l.adjugate())?,
    );
    Ok(compose(&CremonaMap::from_linear(&l)?, &inner).normalized())
}

fn center_matrix(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> Result<Mat3, MapError> {
    if p1 == p2 || p1 == p3 || p2 == p3 {
        return Err(MapError::CoincidentCenters);
    }
    if ProjPoint::collinear(p1, p2, p3) {
        return Err(MapError::CollinearCenters);
    }
    Ok(Mat3::from_columns([p1.coords(), p2.coords(), p3.coords()]))
}

/// The three lines contracted by the quadratic map centred at `centers`; the
/// `i`-th joins the two centers other than the `i`-th.
fn contracted_lines(centers: &[ProjPoint; 3]) -> Result<[Form; 3], MapError> {
    let l = center_matrix(&centers[0], &centers[1], &centers[2])?;
    Ok(l.adjugate().row_forms())
}

/// `outer ∘ ω` for a quadratic `ω`. Any common factor of the components is a
/// product of the lines `ω` contracts, so those are divided out directly
/// instead of through a gcd.
fn compose_quadratic(outer: &CremonaMap, omega: &CremonaMap, lines: &[Form; 3]) -> CremonaMap {
    let mut forms = compose(outer, omega).into_forms();
    for line in lines {
        loop {
            let divided: Option<Vec<Form>> = forms.iter().map(|f| f.exact_div(line)).collect();
            match divided {
                Some(v) if forms.iter().any(|f| !f.is_zero()) => {
                    forms = v.try_into().expect("three forms");
                }
                _ => break,
            }
        }
    }
    CremonaMap::new(forms)
        .expect("nonzero components")
        .normalized()
}

/// `γ ∘ ω` with the common factor removed, where `ω` is the quadratic map
/// centred at `centers`, which must be base points of `γ` of the stated
/// multiplicities. The degree becomes `2d − m1 − m2 − m3`.
pub fn apply_quadratic(
    gamma: &CremonaMap,
    centers: &[ProjPoint; 3],
    multiplicities: [u32; 3],
) -> Result<CremonaMap, MapError> {
    for (p, &m) in centers.iter().zip(&multiplicities) {
        let found = gamma.multiplicity_at(p);
        if found != m {
            return Err(MapError::MultiplicityMismatch {
                point: Box::new(p.clone()),
                expected: m,
                found,
            });
        }
    }
    let omega = quadratic_map(&centers[0], &centers[1], &centers[2])?;
    Ok(compose_quadratic(
        gamma,
        &omega,
        &contracted_lines(centers)?,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticStep {
    pub centers: [ProjPoint; 3],
    /// Multiplicities of the map being reduced at the centers.
    pub multiplicities: [u32; 3],
    pub map: CremonaMap,
    pub degree_before: u32,
    pub degree_after: u32,
}

impl QuadraticStep {
    fn lines(&self) -> [Form; 3] {
        contracted_lines(&self.centers).expect("centers were checked")
    }
}

/// `γ = L ∘ ω_k ∘ … ∘ ω_1` with quadratic involutions `ω_i`, recorded in the
/// order they were applied (`steps[0]` is `ω_1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub original: CremonaMap,
    pub steps: Vec<QuadraticStep>,
    pub linear_tail: Mat3,
}

impl Factorization {
    pub fn quadratics(&self) -> impl Iterator<Item = &CremonaMap> {
        self.steps.iter().map(|s| &s.map)
    }

    /// `[d, d_1, …, 1]`.
    pub fn degrees(&self) -> Vec<u32> {
        let mut out = vec![self.original.degree()];
        out.extend(self.steps.iter().map(|s| s.degree_after));
        out
    }

    pub fn recompose(&self) -> CremonaMap {
        let mut acc = CremonaMap::from_linear(&self.linear_tail).expect("invertible tail");
        for s in self.steps.iter().rev() {
            acc = compose_quadratic(&acc, &s.map, &s.lines());
        }
        acc
    }

    pub fn verify(&self) -> bool {
        self.recompose().projectively_equal(&self.original)
    }

    /// `ω_1 ∘ … ∘ ω_k ∘ L⁻¹`, built from the left so that every common
    /// factor comes from lines contracted by the newest quadratic map.
    pub fn inverse(&self) -> CremonaMap {
        let mut acc = CremonaMap::identity();
        for s in &self.steps {
            acc = compose_quadratic(&acc, &s.map, &s.lines());
        }
        let tail_inv =
            CremonaMap::from_linear(&self.linear_tail.adjugate()).expect("invertible tail");
        compose(&acc, &tail_inv).normalized()
    }
}

fn unsupported(msg: impl Into<String>) -> MapError {
    MapError::InfinitelyNearUnsupported(msg.into())
}

/// Factors a pure map into quadratic involutions and a projectivity, given
/// all of its base points as proper points of the plane. Each step uses the
/// three points of largest multiplicity.
pub fn factor_quadratics(
    gamma: &CremonaMap,
    base_points: &AssignedBasePoints,
) -> Result<Factorization, MapError> {
    if !gamma.is_pure() {
        return Err(MapError::NotPure);
    }
    for (p, m) in base_points.entries() {
        let found = gamma.multiplicity_at(p);
        if found != *m {
            return Err(MapError::MultiplicityMismatch {
                point: Box::new(p.clone()),
                expected: *m,
                found,
            });
        }
    }
    let mut current = gamma.clone();
    let mut bp = base_points.sorted();
    let mut steps = Vec::new();
    while current.degree() > 1 {
        let d = current.degree() as u64;
        let sum: u64 = bp.entries().iter().map(|(_, m)| *m as u64).sum();
        let squares: u64 = bp.entries().iter().map(|(_, m)| (*m as u64).pow(2)).sum();
        if squares != d * d - 1 || sum != 3 * (d - 1) {
            return Err(unsupported(format!(
                "the proper base points of the degree-{d} map do not satisfy the Noether equations"
            )));
        }
        if bp.len() < 3 {
            return Err(unsupported("fewer than three proper base points"));
        }
        let e = bp.entries();
        let centers = [e[0].0.clone(), e[1].0.clone(), e[2].0.clone()];
        let [m1, m2, m3] = [e[0].1, e[1].1, e[2].1];
        let omega = quadratic_map(&centers[0], &centers[1], &centers[2])?;
        let next = compose_quadratic(&current, &omega, &contracted_lines(&centers)?);
        let expected = 2 * current.degree() - m1 - m2 - m3;
        if next.degree() != expected {
            return Err(unsupported(format!(
                "degree dropped to {} instead of {expected}",
                next.degree()
            )));
        }
        let mut entries = Vec::with_capacity(bp.len());
        let dd = current.degree();
        for (c, m) in centers
            .iter()
            .zip([dd - m2 - m3, dd - m1 - m3, dd - m1 - m2])
        {
            if m > 0 {
                entries.push((c.clone(), m));
            }
        }
        for (p, m) in &e[3..] {
            let Some(img) = omega.image_of(p) else {
                return Err(unsupported(format!(
                    "{p} is a center of the quadratic step"
                )));
            };
            if entries.iter().any(|(q, _)| *q == img) {
                return Err(unsupported(format!(
                    "{p} is sent onto another base point; the new base point is infinitely near"
                )));
            }
            entries.push((img, *m));
        }
        let moved = AssignedBasePoints::new(entries)?;
        for (p, m) in moved.entries() {
            if next.multiplicity_at(p) != *m {
                return Err(unsupported(format!(
                    "multiplicity at {p} is not {m} after the step"
                )));
            }
        }
        steps.push(QuadraticStep {
            centers,
            multiplicities: [m1, m2, m3],
            map: omega,
            degree_before: current.degree(),
            degree_after: next.degree(),
        });
        current = next;
        bp = moved.sorted();
    }
    let linear_tail = current
        .to_linear()
        .ok_or_else(|| MapError::Internal("reduction ended in degree 0".into()))?;
    Ok(Factorization {
        original: gamma.clone(),
        steps,
        linear_tail,
    })
}

/// Inverse of a pure map, through its factorization into quadratic maps.
pub fn inverse(
    gamma: &CremonaMap,
    base_points: &AssignedBasePoints,
) -> Result<CremonaMap, MapError> {
    Ok(factor_quadratics(gamma, base_points)?.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homaloidal::{build_net, verify_inverse_pair};
    use crate::multiindex::MultiIndex;
    use crate::polyring::ProjPoint as P;

    #[test]
    fn quadratic_map_errors() {
        let a = P::from_ints(1, 0, 0);
        let b = P::from_ints(0, 1, 0);
        assert_eq!(
            quadratic_map(&a, &a, &b).unwrap_err(),
            MapError::CoincidentCenters
        );
        assert_eq!(
            quadratic_map(&a, &b, &P::from_ints(1, 1, 0)).unwrap_err(),
            MapError::CollinearCenters
        );
    }

    #[test]
    fn standard_centers_give_sigma() {
        let w = quadratic_map(
            &P::from_ints(1, 0, 0),
            &P::from_ints(0, 1, 0),
            &P::from_ints(0, 0, 1),
        )
        .unwrap();
        assert!(w.projectively_equal(&CremonaMap::sigma()));
    }

    #[test]
    fn quadratic_maps_are_involutions() {
        let pts = [
            P::from_ints(1, 2, 3),
            P::from_ints(-1, 0, 2),
            P::from_ints(4, 1, 1),
        ];
        let w = quadratic_map(&pts[0], &pts[1], &pts[2]).unwrap();
        assert_eq!(w.degree(), 2);
        assert!(verify_inverse_pair(&w, &w));
        for p in &pts {
            assert_eq!(w.multiplicity_at(p), 1);
            assert!(w.image_of(p).is_none());
        }
    }

    #[test]
    fn apply_quadratic_lowers_degree() {
        let nu = MultiIndex::new(3, &[4, 1]).unwrap();
        let pts = [
            P::from_ints(0, 0, 1),
            P::from_ints(1, 0, 0),
            P::from_ints(0, 1, 0),
            P::from_ints(1, 1, 1),
            P::from_ints(1, -1, 2),
        ];
        let g = build_net(&nu, &pts).unwrap();
        let centers = [pts[0].clone(), pts[1].clone(), pts[2].clone()];
        let lower = apply_quadratic(&g, &centers, [2, 1, 1]).unwrap();
        assert_eq!(lower.degree(), 2);
        assert!(matches!(
            apply_quadratic(&g, &centers, [1, 1, 1]),
            Err(MapError::MultiplicityMismatch {
                expected: 1,
                found: 2,
                ..
            })
        ));
    }

    #[test]
    fn factor_and_invert_cubic() {
        let nu = MultiIndex::new(3, &[4, 1]).unwrap();
        let pts = [
            P::from_ints(0, 0, 1),
            P::from_ints(1, 0, 0),
            P::from_ints(0, 1, 0),
            P::from_ints(1, 1, 1),
            P::from_ints(1, -1, 2),
        ];
        let g = build_net(&nu, &pts).unwrap();
        let bp =
            AssignedBasePoints::new(pts.iter().cloned().zip([2, 1, 1, 1, 1]).collect()).unwrap();
        let fac = factor_quadratics(&g, &bp).unwrap();
        assert_eq!(fac.degrees(), vec![3, 2, 1]);
        assert!(fac.verify());
        let inv = fac.inverse();
        assert_eq!(inv.degree(), 3);
        assert!(verify_inverse_pair(&g, &inv));
    }

    #[test]
    fn factor_linear_map() {
        let m = Mat3::from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 2]]);
        let g = CremonaMap::from_linear(&m).unwrap();
        let fac = factor_quadratics(&g, &AssignedBasePoints::default()).unwrap();
        assert!(fac.steps.is_empty());
        assert_eq!(fac.degrees(), vec![1]);
        assert!(verify_inverse_pair(&g, &fac.inverse()));
    }

    #[test]
    fn missing_base_points_are_reported() {
        let g = CremonaMap::sigma();
        let bp =
            AssignedBasePoints::new(vec![(P::from_ints(1, 0, 0), 1), (P::from_ints(0, 1, 0), 1)])
                .unwrap();
        assert!(matches!(
            factor_quadratics(&g, &bp),
            Err(MapError::InfinitelyNearUnsupported(_))
        ));
        let lifted =
            CremonaMap::new(g.forms().each_ref().map(|f| f.mul(&"x".parse().unwrap()))).unwrap();
        assert_eq!(
            factor_quadratics(&lifted, &bp).unwrap_err(),
            MapError::NotPure
        );
    }

    #[test]
    fn round_trip_through_degree_five() {
        use crate::homaloidal::sample::random_net;
        use crate::hudson::{census, q_reduce};
        for d in 2..=5 {
            for (k, rec) in census(d).iter().enumerate() {
                let nu = &rec.htype;
                let (g, pts) = random_net(nu, 1000 * d as u64 + k as u64).unwrap();
                let mults = nu.multiplicities().unwrap();
                let bp = AssignedBasePoints::new(
                    pts.into_iter()
                        .zip(mults.values().iter().copied())
                        .collect(),
                )
                .unwrap();
                assert!(g.is_pure());
                let fac = factor_quadratics(&g, &bp).unwrap();
                assert!(fac.verify(), "{nu}");
                let mut expected = vec![d];
                let mut cur = nu.clone();
                while cur.degree() > 2 {
                    cur = q_reduce(&cur).unwrap().output;
                    expected.push(cur.degree());
                }
                expected.push(1);
                assert_eq!(fac.degrees(), expected, "{nu}");
                assert!(verify_inverse_pair(&g, &fac.inverse()), "{nu}");
            }
        }
    }

    fn cubic() -> (CremonaMap, AssignedBasePoints) {
        let nu = MultiIndex::new(3, &[4, 1]).unwrap();
        let pts = [
            P::from_ints(0, 0, 1),
            P::from_ints(1, 0, 0),
            P::from_ints(0, 1, 0),
            P::from_ints(1, 1, 1),
            P::from_ints(1, -1, 2),
        ];
        let g = build_net(&nu, &pts).unwrap();
        let bp =
            AssignedBasePoints::new(pts.iter().cloned().zip([2, 1, 1, 1, 1]).collect()).unwrap();
        (g, bp)
    }

    #[test]
    fn sigma_reduces_to_identity() {
        let centers = [
            P::from_ints(1, 0, 0),
            P::from_ints(0, 1, 0),
            P::from_ints(0, 0, 1),
        ];
        let id = apply_quadratic(&CremonaMap::sigma(), &centers, [1, 1, 1]).unwrap();
        assert_eq!(id.degree(), 1);
        assert!(crate::homaloidal::is_identity_up_to_factor(&id));
        let bp =
            AssignedBasePoints::new(centers.iter().cloned().map(|p| (p, 1)).collect()).unwrap();
        assert!(inverse(&CremonaMap::sigma(), &bp)
            .unwrap()
            .projectively_equal(&CremonaMap::sigma()));
    }

    #[test]
    fn small_centers_quadratic() {
        let c = [
            P::from_ints(1, 1, 1),
            P::from_ints(1, -1, 1),
            P::from_ints(0, 0, 1),
        ];
        let w = quadratic_map(&c[0], &c[1], &c[2]).unwrap();
        assert!(c.iter().all(|p| w.multiplicity_at(p) == 1));
        let bp = AssignedBasePoints::new(c.iter().cloned().map(|p| (p, 1)).collect()).unwrap();
        let fac = factor_quadratics(&w, &bp).unwrap();
        assert_eq!(fac.steps.len(), 1);
        assert_eq!(fac.degrees(), vec![2, 1]);
        assert!(fac.verify());
    }

    #[test]
    fn quartic_with_three_double_points() {
        let nu = MultiIndex::new(4, &[3, 3, 0]).unwrap();
        let pts = [
            P::from_ints(0, 0, 1),
            P::from_ints(1, 0, 1),
            P::from_ints(0, 1, 1),
            P::from_ints(1, -2, 1),
            P::from_ints(-2, 1, 1),
            P::from_ints(2, 3, 1),
        ];
        let g = build_net(&nu, &pts).unwrap();
        let doubles = [pts[0].clone(), pts[1].clone(), pts[2].clone()];
        assert_eq!(
            apply_quadratic(&g, &doubles, [2, 2, 2]).unwrap().degree(),
            2
        );
        let bp =
            AssignedBasePoints::new(pts.iter().cloned().zip([2, 2, 2, 1, 1, 1]).collect()).unwrap();
        let fac = factor_quadratics(&g, &bp).unwrap();
        assert_eq!(fac.degrees(), vec![4, 2, 1]);
        assert!(fac.verify());
    }

    #[test]
    fn cubic_inverse_is_certified() {
        let (g, bp) = cubic();
        let inv = inverse(&g, &bp).unwrap();
        assert!(inv.is_pure());
        assert!(verify_inverse_pair(&g, &inv));
    }

    #[test]
    fn known_quartic_inverse_is_recovered() {
        use crate::homaloidal::fixtures::fixture;
        let fx = fixture("bir4_t1").unwrap();
        let inv = inverse(&fx.map, &fx.points).unwrap();
        assert!(inv.projectively_equal(&fixture("bir4_t1_inv").unwrap().map));
    }

    #[test]
    fn t0_quartic_has_infinitely_near_points() {
        use crate::homaloidal::fixtures::fixture;
        let fx = fixture("bir4_t0").unwrap();
        assert!(matches!(
            factor_quadratics(&fx.map, &fx.points),
            Err(MapError::InfinitelyNearUnsupported(_))
        ));
    }
}
