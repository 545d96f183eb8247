use std::fmt;

use num_traits::Zero;

use super::{format_rational, PolyError, Rational};

/// A point of the projective plane with rational coordinates, normalized so
/// that its first nonzero coordinate is 1. Equality is coordinate equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [Rational; 3],
}

impl ProjPoint {
    pub fn new(coords: [Rational; 3]) -> Result<ProjPoint, PolyError> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(PolyError::ZeroPoint)?
            .clone();
        Ok(ProjPoint {
            coords: coords.map(|c| c / &lead),
        })
    }

    /// Panics on `(0, 0, 0)`; meant for literals.
    pub fn from_ints(a: i64, b: i64, c: i64) -> ProjPoint {
        ProjPoint::new([a, b, c].map(|v| Rational::from_integer(v.into())))
            .expect("nonzero literal point")
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    /// Whether three points lie on a common line.
    pub fn collinear(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
        super::Mat3::from_columns([a.coords(), b.coords(), c.coords()])
            .det()
            .is_zero()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "[{}]", c.join(":"))
    }
}
