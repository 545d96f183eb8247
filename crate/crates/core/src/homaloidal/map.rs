use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MapError;
use crate::polyring::{gcd3, jacobian_det, Form, Mat3, ProjPoint, Rational, Var};

/// `[f1 : f2 : f3]`: three forms of one degree, not all zero, taken up to a
/// common scalar.
pub struct CremonaMap {
    forms: [Form; 3],
    pure: OnceLock<bool>,
}

impl CremonaMap {
    pub fn new(forms: [Form; 3]) -> Result<CremonaMap, MapError> {
        let degrees = forms.each_ref().map(Form::degree);
        if degrees[0] != degrees[1] || degrees[0] != degrees[2] {
            return Err(MapError::DegreeMismatch(degrees));
        }
        if forms.iter().all(Form::is_zero) {
            return Err(MapError::AllZero);
        }
        Ok(CremonaMap {
            forms,
            pure: OnceLock::new(),
        })
    }

    pub(crate) fn with_purity(forms: [Form; 3], pure: bool) -> CremonaMap {
        let cell = OnceLock::new();
        let _ = cell.set(pure);
        CremonaMap { forms, pure: cell }
    }

    pub fn identity() -> CremonaMap {
        CremonaMap::with_purity(Var::ALL.map(Form::var), true)
    }

    /// The standard quadratic involution `[yz : xz : xy]`.
    pub fn sigma() -> CremonaMap {
        let [x, y, z] = Var::ALL.map(Form::var);
        CremonaMap::with_purity([y.mul(&z), x.mul(&z), x.mul(&y)], true)
    }

    /// The projectivity `v ↦ M v`.
    pub fn from_linear(m: &Mat3) -> Result<CremonaMap, MapError> {
        if m.det().is_zero() {
            return Err(MapError::Poly(crate::polyring::PolyError::SingularMatrix));
        }
        Ok(CremonaMap::with_purity(m.row_forms(), true))
    }

    /// The matrix of a degree-1 map.
    pub fn to_linear(&self) -> Option<Mat3> {
        if self.degree() != 1 {
            return None;
        }
        let rows = self
            .forms
            .each_ref()
            .map(|f| [f.coeff([1, 0, 0]), f.coeff([0, 1, 0]), f.coeff([0, 0, 1])]);
        Some(Mat3::new(rows))
    }

    pub fn degree(&self) -> u32 {
        self.forms[0].degree()
    }

    pub fn forms(&self) -> &[Form; 3] {
        &self.forms
    }

    pub fn into_forms(self) -> [Form; 3] {
        self.forms
    }

    /// Whether the components have no common factor of positive degree.
    pub fn is_pure(&self) -> bool {
        *self.pure.get_or_init(|| {
            let [a, b, c] = &self.forms;
            gcd3(a, b, c).map(|h| h.degree() == 0).unwrap_or(false)
        })
    }

    pub fn jacobian(&self) -> Result<Form, MapError> {
        let [a, b, c] = &self.forms;
        Ok(jacobian_det(a, b, c)?)
    }

    /// Nonzero Jacobian determinant, i.e. the map is dominant.
    pub fn jacobian_nonzero(&self) -> bool {
        self.jacobian().map(|j| !j.is_zero()).unwrap_or(false)
    }

    /// Multiplicity of the net at `p`: the least order of vanishing among the
    /// nonzero components.
    pub fn multiplicity_at(&self, p: &ProjPoint) -> u32 {
        self.forms
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.multiplicity_at(p).expect("nonzero form"))
            .min()
            .expect("some component is nonzero")
    }

    /// `γ(p)`, or `None` when `p` is a base point.
    pub fn image_of(&self, p: &ProjPoint) -> Option<ProjPoint> {
        ProjPoint::new(self.forms.each_ref().map(|f| f.evaluate(p))).ok()
    }

    /// Equal as points of projective space: one triple is a nonzero scalar
    /// multiple of the other.
    pub fn projectively_equal(&self, other: &CremonaMap) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        let ratio = self.forms.iter().zip(&other.forms).find_map(|(a, b)| {
            let (m, c) = a.leading()?;
            let d = b.coeff(m.exps());
            (!d.is_zero()).then(|| d / c)
        });
        let Some(ratio) = ratio else {
            return false;
        };
        self.forms
            .iter()
            .zip(&other.forms)
            .all(|(a, b)| &a.scale(&ratio) == b)
    }

    /// The representative with coprime integer coefficients whose first
    /// nonzero component has a positive leading coefficient.
    pub fn normalized(&self) -> CremonaMap {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for f in &self.forms {
            for (_, c) in f.terms() {
                den = den.lcm(c.denom());
                num = num.gcd(c.numer());
            }
        }
        let positive = self
            .forms
            .iter()
            .find_map(|f| f.leading().map(|(_, c)| c.is_positive()))
            .expect("some component is nonzero");
        let mut factor = Rational::new(den, num);
        if !positive {
            factor = -factor;
        }
        let out = self.scale(&factor);
        if let Some(&p) = self.pure.get() {
            let _ = out.pure.set(p);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CremonaMap {
        CremonaMap::new(self.forms.each_ref().map(|f| f.scale(c))).expect("nonzero scalar")
    }
}

impl Clone for CremonaMap {
    fn clone(&self) -> Self {
        CremonaMap {
            forms: self.forms.clone(),
            pure: self.pure.clone(),
        }
    }
}

impl PartialEq for CremonaMap {
    fn eq(&self, other: &Self) -> bool {
        self.forms == other.forms
    }
}

impl Eq for CremonaMap {}

impl fmt::Debug for CremonaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CremonaMap({self})")
    }
}

impl fmt::Display for CremonaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {}]",
            self.forms[0], self.forms[1], self.forms[2]
        )
    }
}

/// `outer ∘ inner`, by substituting the components of `inner` into `outer`.
/// No common factor is removed; the degree is the product of the degrees.
pub fn compose(outer: &CremonaMap, inner: &CremonaMap) -> CremonaMap {
    let forms = outer.forms.each_ref().map(|f| {
        f.substitute(&inner.forms)
            .expect("components share a degree")
    });
    match CremonaMap::new(forms) {
        Ok(m) => m,
        Err(_) => {
            // A dominant inner map never makes a nonzero form vanish; keep the
            // degenerate triple visible instead of failing.
            let d = outer.degree() * inner.degree();
            CremonaMap {
                forms: [Form::zero(d), Form::zero(d), Form::zero(d)],
                pure: OnceLock::new(),
            }
        }
    }
}

/// Divides out `h = gcd(f1, f2, f3)`, returning the pure map and `h`.
pub fn strip_gcd(map: &CremonaMap) -> (CremonaMap, Form) {
    let [a, b, c] = &map.forms;
    let h = match gcd3(a, b, c) {
        Ok(h) => h,
        Err(_) => return (map.clone(), Form::one()),
    };
    if h.degree() == 0 {
        let out = map.clone();
        let _ = out.pure.set(true);
        return (out, Form::one());
    }
    let forms = map
        .forms
        .each_ref()
        .map(|f| f.exact_div(&h).expect("gcd divides every component"));
    (CremonaMap::with_purity(forms, true), h)
}

/// `f1·y − f2·x`, `f1·z − f3·x` and `f2·z − f3·y` all vanish.
pub fn is_identity_up_to_factor(map: &CremonaMap) -> bool {
    let [f1, f2, f3] = &map.forms;
    if map.forms.iter().all(Form::is_zero) {
        return false;
    }
    let [x, y, z] = Var::ALL.map(Form::var);
    let minor = |a: &Form, va: &Form, b: &Form, vb: &Form| a.mul(va).sub(&b.mul(vb)).unwrap();
    minor(f1, &y, f2, &x).is_zero()
        && minor(f1, &z, f3, &x).is_zero()
        && minor(f2, &z, f3, &y).is_zero()
}

/// Both `γ∘δ` and `δ∘γ` are the identity up to a common factor.
pub fn verify_inverse_pair(gamma: &CremonaMap, delta: &CremonaMap) -> bool {
    is_identity_up_to_factor(&compose(gamma, delta))
        && is_identity_up_to_factor(&compose(delta, gamma))
}
