use num_traits::Zero;

use super::{CremonaMap, MapError};
use crate::hudson::is_admissible;
use crate::multiindex::MultiIndex;
use crate::polyring::linalg::{nullspace, rank, rref};
use crate::polyring::{gcd3, Form, Mat3, Monomial, ProjPoint, Rational};

/// Distinct proper points of the plane with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AssignedBasePoints {
    entries: Vec<(ProjPoint, u32)>,
}

impl AssignedBasePoints {
    pub fn new(entries: Vec<(ProjPoint, u32)>) -> Result<AssignedBasePoints, MapError> {
        for (i, (p, m)) in entries.iter().enumerate() {
            if *m == 0 {
                return Err(MapError::ZeroMultiplicity(Box::new(p.clone())));
            }
            if entries[..i].iter().any(|(q, _)| q == p) {
                return Err(MapError::DuplicatePoint(Box::new(p.clone())));
            }
        }
        Ok(AssignedBasePoints { entries })
    }

    pub fn entries(&self) -> &[(ProjPoint, u32)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &ProjPoint> {
        self.entries.iter().map(|(p, _)| p)
    }

    /// Sorted by decreasing multiplicity; ties keep their input order.
    pub fn sorted(&self) -> AssignedBasePoints {
        let mut entries = self.entries.clone();
        entries.sort_by_key(|e| std::cmp::Reverse(e.1));
        AssignedBasePoints { entries }
    }

    /// Number of linear conditions imposed on forms of any large degree.
    pub fn expected_conditions(&self) -> usize {
        self.entries
            .iter()
            .map(|(_, m)| (m * (m + 1) / 2) as usize)
            .sum()
    }
}

/// The solution space of an interpolation problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpolation {
    pub degree: u32,
    /// Reduced echelon basis, in ascending order of leading monomial.
    pub basis: Vec<Form>,
    /// Rank of the condition matrix.
    pub rank: usize,
    /// Number of conditions written down (`Σ m(m+1)/2`).
    pub conditions: usize,
}

impl Interpolation {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The conditions are independent.
    pub fn is_expected(&self) -> bool {
        self.rank == self.conditions
    }
}

/// One row per derivative `∂^{a+b}/∂x^a∂y^b` with `a + b < m`, taken after
/// moving the point to `[0:0:1]`; columns follow `Monomial::all_of_degree`.
fn condition_rows(d: u32, monomials: &[Monomial], p: &ProjPoint, m: u32) -> Vec<Vec<Rational>> {
    let mover = Mat3::moving_origin_to(p);
    let moved: Vec<Form> = monomials
        .iter()
        .map(|mono| {
            Form::monomial(mono.exps(), Rational::from_integer(1.into())).apply_linear(&mover)
        })
        .collect();
    let mut rows = Vec::new();
    for s in 0..m.min(d + 1) {
        for a in 0..=s {
            let exps = [a, s - a, d - s];
            rows.push(moved.iter().map(|f| f.coeff(exps)).collect());
        }
    }
    rows
}

pub fn interpolate_detailed(d: u32, bp: &AssignedBasePoints) -> Interpolation {
    let monomials = Monomial::all_of_degree(d);
    let n = monomials.len();
    let mut rows = Vec::new();
    for (p, m) in bp.entries() {
        rows.extend(condition_rows(d, &monomials, p, *m));
    }
    let conditions = rows.len();
    let rank = rank(&rows, n);
    let mut null = nullspace(&rows, n);
    rref(&mut null, n);
    let mut basis: Vec<Form> = null
        .iter()
        .map(|v| {
            let terms = monomials
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.exps(), c.clone()));
            Form::from_terms(d, terms).expect("monomials of degree d")
        })
        .collect();
    basis.reverse();
    Interpolation {
        degree: d,
        basis,
        rank,
        conditions,
    }
}

/// Basis of the forms of degree `d` with multiplicity at least `m` at each
/// assigned point.
pub fn interpolate(d: u32, bp: &AssignedBasePoints) -> Vec<Form> {
    interpolate_detailed(d, bp).basis
}

/// The homaloidal net of type `nu` through `points`, which are assigned the
/// multiplicities of `nu` in decreasing order.
pub fn build_net(nu: &MultiIndex, points: &[ProjPoint]) -> Result<CremonaMap, MapError> {
    if !is_admissible(nu).is_admissible() {
        return Err(MapError::NotAdmissible(Box::new(nu.clone())));
    }
    let profile = nu
        .multiplicities()
        .map_err(|e| MapError::Internal(e.to_string()))?;
    if points.len() != profile.len() {
        return Err(MapError::WrongPointCount {
            expected: profile.len(),
            found: points.len(),
        });
    }
    let bp = AssignedBasePoints::new(
        points
            .iter()
            .cloned()
            .zip(profile.values().iter().copied())
            .collect(),
    )?;
    let d = nu.degree();
    let interp = interpolate_detailed(d, &bp);
    if interp.dimension() != 3 {
        return Err(MapError::SpecialPosition {
            dimension: interp.dimension(),
            reason: "the net does not have dimension 3".into(),
        });
    }
    let [a, b, c]: [Form; 3] = interp.basis.try_into().expect("three forms");
    let h = gcd3(&a, &b, &c)?;
    if h.degree() > 0 {
        return Err(MapError::SpecialPosition {
            dimension: 3,
            reason: format!("the forms share the factor {h}"),
        });
    }
    let map = CremonaMap::with_purity([a, b, c], true);
    if !map.jacobian_nonzero() {
        return Err(MapError::SpecialPosition {
            dimension: 3,
            reason: "the Jacobian vanishes".into(),
        });
    }
    Ok(map)
}
