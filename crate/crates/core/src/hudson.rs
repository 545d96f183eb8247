//! Hudson's test: the q-reduction of an H-type and the resulting census of
//! components of the space of pure Cremona maps of fixed degree.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multiindex::{enumerate_noether, MultiIndex, NoetherStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HudsonError {
    #[error("fewer than three base points (r = {0})")]
    TooFewPoints(u64),
    #[error("{0} is not 1-irreducible")]
    NotOneIrreducible(MultiIndex),
    #[error("q-reduction needs degree at least 3")]
    DegreeTooSmall,
    #[error("{0} does not satisfy the Noether equations ({1:?})")]
    NotNoether(MultiIndex, NoetherStatus),
    #[error("internal error reducing {input}: {reason}")]
    Internal { input: MultiIndex, reason: String },
    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },
}

/// One q-reduction step `ν ↦ q(ν)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QStep {
    pub input: MultiIndex,
    /// Top multiplicities `m_1 ≥ m_2 ≥ m_3`.
    pub centers: [u32; 3],
    /// `ε = d − m_1 − m_2 − m_3`.
    pub epsilon: i64,
    pub output: MultiIndex,
}

impl QStep {
    pub fn output_degree(&self) -> u32 {
        self.output.degree()
    }
}

/// Takes the three largest multiplicities off `counts`, scanning from the
/// highest index down; a repeated multiplicity is consumed repeatedly.
fn take_top_three(counts: &mut [u32]) -> Option<[u32; 3]> {
    let mut m = [0u32; 3];
    let mut t = counts.len();
    let mut available = 0u32;
    for slot in m.iter_mut() {
        while available == 0 {
            if t == 0 {
                return None;
            }
            t -= 1;
            available = counts[t];
        }
        *slot = t as u32 + 1;
        counts[t] -= 1;
        available -= 1;
    }
    Some(m)
}

pub fn top_three(nu: &MultiIndex) -> Result<[u32; 3], HudsonError> {
    let mut counts = nu.counts().to_vec();
    take_top_three(&mut counts).ok_or(HudsonError::TooFewPoints(nu.reduced_length()))
}

/// `m_1 + m_2 ≤ d`; `(3)` in degree 2 counts as 1-irreducible.
pub fn is_one_irreducible(nu: &MultiIndex) -> Result<bool, HudsonError> {
    if nu.degree() == 2 {
        return Ok(true);
    }
    let [m1, m2, _] = top_three(nu)?;
    Ok(m1 + m2 <= nu.degree())
}

pub fn q_reduce(nu: &MultiIndex) -> Result<QStep, HudsonError> {
    let status = nu.noether_status();
    if !status.is_ok() {
        return Err(HudsonError::NotNoether(nu.clone(), status));
    }
    let d = nu.degree();
    if d == 2 {
        return Err(HudsonError::DegreeTooSmall);
    }
    let internal = |reason: String| HudsonError::Internal {
        input: nu.clone(),
        reason,
    };
    let mut counts = nu.counts().to_vec();
    let m = take_top_three(&mut counts).ok_or(HudsonError::TooFewPoints(nu.reduced_length()))?;
    if m[0] + m[1] > d {
        return Err(HudsonError::NotOneIrreducible(nu.clone()));
    }
    let epsilon = d as i64 - m.iter().map(|&v| v as i64).sum::<i64>();
    let new_degree = d as i64 + epsilon;
    if new_degree < 2 || new_degree >= d as i64 {
        return Err(internal(format!(
            "target degree {new_degree} outside [2, {d})"
        )));
    }
    for &mj in &m {
        let k = mj as i64 + epsilon;
        if k < 0 || k > counts.len() as i64 {
            return Err(internal(format!("increment index {k} out of range")));
        }
        if k > 0 {
            counts[k as usize - 1] += 1;
        }
    }
    let keep = (new_degree - 1) as usize;
    if counts[keep..].iter().any(|&v| v != 0) {
        return Err(internal(format!(
            "entries at index >= {new_degree} are nonzero: {:?}",
            &counts[keep..]
        )));
    }
    counts.truncate(keep);
    Ok(QStep {
        input: nu.clone(),
        centers: m,
        epsilon,
        output: MultiIndex::from_raw(new_degree as u32, counts),
    })
}

/// Result of Hudson's test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    /// Every iterate was 1-irreducible down to degree 2.
    Admissible(Vec<QStep>),
    /// The iterate after `trace.len()` steps (step `trace.len() + 1`) has
    /// `m_1 + m_2 > d`.
    Reducible {
        at_step: usize,
        at: MultiIndex,
        top: [u32; 3],
        trace: Vec<QStep>,
    },
    NoetherFailure(NoetherStatus),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible(_))
    }

    /// The one-line diagnostic printed by `cremona adm`.
    pub fn diagnostic(&self) -> &'static str {
        match self {
            Admissibility::Admissible(_) => "1",
            Admissibility::Reducible { .. } => "The net is reducible",
            Admissibility::NoetherFailure(NoetherStatus::SelfIntersectionMismatch(_)) => {
                "ERROR: the self-intersection is not 1"
            }
            Admissibility::NoetherFailure(_) => "ERROR: the genus is not 0",
        }
    }
}

pub fn is_admissible(nu: &MultiIndex) -> Admissibility {
    let status = nu.noether_status();
    if !status.is_ok() {
        return Admissibility::NoetherFailure(status);
    }
    let mut trace = Vec::new();
    let mut current = nu.clone();
    while current.degree() > 2 {
        match q_reduce(&current) {
            Ok(step) => {
                current = step.output.clone();
                trace.push(step);
            }
            Err(HudsonError::NotOneIrreducible(_)) => {
                let top = top_three(&current).expect("Noether solutions have r >= 3");
                return Admissibility::Reducible {
                    at_step: trace.len() + 1,
                    at: current,
                    top,
                    trace,
                };
            }
            Err(e) => panic!("q-reduction of a Noether solution failed: {e}"),
        }
    }
    Admissibility::Admissible(trace)
}

/// One irreducible component of the space of pure maps of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub htype: MultiIndex,
    pub reduced_length: u64,
    pub length: u64,
    pub dimension: u64,
    pub de_jonquieres: bool,
    pub symmetric: bool,
    pub reduction_trace: Vec<QStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub htype: MultiIndex,
    pub reason: String,
    pub at_step: usize,
    pub at: MultiIndex,
    pub top: [u32; 3],
}

/// Full census for one degree: every Noether solution, split into admissible
/// components and rejections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub degree: u32,
    pub noether_solutions: Vec<MultiIndex>,
    pub components: Vec<ComponentRecord>,
    pub rejected: Vec<Rejection>,
}

impl Census {
    pub fn build(d: u32) -> Census {
        let solutions = enumerate_noether(d);
        let mut components = Vec::new();
        let mut rejected = Vec::new();
        for nu in &solutions {
            match is_admissible(nu) {
                Admissibility::Admissible(trace) => {
                    let r = nu.reduced_length();
                    components.push(ComponentRecord {
                        htype: nu.clone(),
                        reduced_length: r,
                        length: nu.length(),
                        dimension: 8 + 2 * r,
                        de_jonquieres: nu.is_de_jonquieres(),
                        symmetric: nu.is_symmetric(),
                        reduction_trace: trace,
                    });
                }
                verdict @ Admissibility::Reducible { .. } => {
                    let Admissibility::Reducible {
                        at_step, at, top, ..
                    } = &verdict
                    else {
                        unreachable!()
                    };
                    rejected.push(Rejection {
                        htype: nu.clone(),
                        reason: verdict.diagnostic().to_string(),
                        at_step: *at_step,
                        at: at.clone(),
                        top: *top,
                    });
                }
                Admissibility::NoetherFailure(s) => {
                    unreachable!("enumerated solution fails Noether: {s:?}")
                }
            }
        }
        Census {
            degree: d,
            noether_solutions: solutions,
            components,
            rejected,
        }
    }

    /// Number of irreducible components of the pure maps of this degree.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// Admissible Noether solutions of degree `d` with their dimensions.
pub fn census(d: u32) -> Vec<ComponentRecord> {
    Census::build(d).components
}

fn check_degree(d: i64) -> Result<u64, HudsonError> {
    if d < 1 {
        return Err(HudsonError::OutOfRange {
            what: "degree",
            value: d,
        });
    }
    Ok(d as u64)
}

/// Dimension of the pure maps of degree `d`: `4d + 6`, and 8 for `d = 1`.
pub fn dim_biro(d: i64) -> Result<u64, HudsonError> {
    let d = check_degree(d)?;
    Ok(if d == 1 { 8 } else { 4 * d + 6 })
}

/// Dimension of all maps of degree `d`: `max(4d + 6, d(d + 1)/2 + 7)`.
pub fn dim_bir(d: i64) -> Result<u64, HudsonError> {
    let d = check_degree(d)?;
    if d == 1 {
        return Ok(8);
    }
    Ok((4 * d + 6).max(d * (d + 1) / 2 + 7))
}

/// Naive dimension of the stratum with a degree-`a` common factor:
/// `a(a + 3)/2 + dim(maps of degree d − a)`.
pub fn dim_bira(d: i64, a: i64) -> Result<u64, HudsonError> {
    if d < 2 {
        return Err(HudsonError::OutOfRange {
            what: "degree",
            value: d,
        });
    }
    if a < 1 || a > d - 1 {
        return Err(HudsonError::OutOfRange {
            what: "factor degree",
            value: a,
        });
    }
    let au = a as u64;
    let factor = au * (au + 3) / 2;
    Ok(factor + if a == d - 1 { 8 } else { dim_bir(d - a)? })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bound violated at degree {degree} by {htype}: {bound}")]
pub struct BoundViolation {
    pub degree: u32,
    pub htype: MultiIndex,
    pub bound: String,
}

/// Summary of the classical bounds over all components of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub degree: u32,
    pub components: usize,
    pub max_dimension: u64,
    pub max_reduced_length: u64,
    /// Largest reduced length among non–de Jonquières components.
    pub max_other_reduced_length: Option<u64>,
    pub max_other_dimension: Option<u64>,
    /// H-types where `m_1 + m_2 + m_3 = d + 1`.
    pub noether_equality: Vec<MultiIndex>,
    pub symmetric: Vec<MultiIndex>,
}

pub fn verify_bounds(d: u32) -> Result<BoundsReport, BoundViolation> {
    let comps = census(d);
    let fail = |htype: &MultiIndex, bound: String| BoundViolation {
        degree: d,
        htype: htype.clone(),
        bound,
    };
    let d64 = d as u64;
    let dj: Vec<&ComponentRecord> = comps.iter().filter(|c| c.de_jonquieres).collect();
    if dj.len() != 1 {
        let h = comps
            .first()
            .map(|c| c.htype.clone())
            .unwrap_or_else(|| MultiIndex::from_raw(d, vec![0; (d - 1) as usize]));
        return Err(fail(&h, format!("{} de Jonquieres components", dj.len())));
    }
    let dj = dj[0];
    if dj.dimension != 4 * d64 + 6 {
        return Err(fail(&dj.htype, "de Jonquieres dimension != 4d+6".into()));
    }
    if dj.reduced_length != 2 * d64 - 1 {
        return Err(fail(&dj.htype, "de Jonquieres r != 2d-1".into()));
    }
    let mut noether_equality = Vec::new();
    let mut symmetric = Vec::new();
    for c in &comps {
        if !c.de_jonquieres {
            if c.dimension >= dj.dimension {
                return Err(fail(&c.htype, "dimension not below 4d+6".into()));
            }
            if c.reduced_length >= 2 * d64 - 1 {
                return Err(fail(&c.htype, "r not below 2d-1".into()));
            }
            if d >= 4 && c.dimension > 2 * d64 + 12 {
                return Err(fail(&c.htype, "dimension above 2d+12".into()));
            }
            if d >= 4 && c.reduced_length > d64 + 2 {
                return Err(fail(&c.htype, "r above d+2".into()));
            }
        }
        let top = top_three(&c.htype).map_err(|e| fail(&c.htype, e.to_string()))?;
        let s: u64 = top.iter().map(|&v| v as u64).sum();
        if s < d64 + 1 {
            return Err(fail(&c.htype, "m1+m2+m3 < d+1".into()));
        }
        let equality = s == d64 + 1;
        if equality != (c.symmetric || c.de_jonquieres) {
            return Err(fail(
                &c.htype,
                "equality in m1+m2+m3 >= d+1 not exactly on symmetric or de Jonquieres".into(),
            ));
        }
        if equality {
            noether_equality.push(c.htype.clone());
        }
        if c.symmetric {
            symmetric.push(c.htype.clone());
        }
        let high: u64 = (1..d as usize)
            .filter(|&i| 2 * i > d as usize)
            .map(|i| c.htype.nu(i) as u64)
            .sum();
        if high > 1 {
            return Err(fail(
                &c.htype,
                "more than one point of multiplicity > d/2".into(),
            ));
        }
    }
    let others = comps.iter().filter(|c| !c.de_jonquieres);
    Ok(BoundsReport {
        degree: d,
        components: comps.len(),
        max_dimension: comps.iter().map(|c| c.dimension).max().unwrap_or(0),
        max_reduced_length: comps.iter().map(|c| c.reduced_length).max().unwrap_or(0),
        max_other_reduced_length: others.clone().map(|c| c.reduced_length).max(),
        max_other_dimension: others.map(|c| c.dimension).max(),
        noether_equality,
        symmetric,
    })
}
