//! Greatest common divisors of forms.
//!
//! A form not divisible by `z` is determined by its dehomogenization at
//! `z = 1`, so `gcd(f, g) = z^min(v_z f, v_z g) · hom(gcd(f(x, y, 1), g(x, y, 1)))`.
//! The bivariate gcd treats polynomials as univariate in `x` over `ℚ[y]`
//! and runs the subresultant pseudo-remainder sequence on primitive parts.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Form, PolyError, Rational};

/// Dense univariate polynomial over ℚ, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
struct UPoly(Vec<Rational>);

impl UPoly {
    fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    fn one() -> UPoly {
        UPoly(vec![Rational::one()])
    }

    fn trimmed(mut coeffs: Vec<Rational>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lc(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        UPoly::trimmed(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::trimmed(out)
    }

    fn pow(&self, e: usize) -> UPoly {
        (0..e).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    fn scale(&self, c: &Rational) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|v| v * c).collect())
    }

    fn divrem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.deg().expect("division by zero polynomial");
        let mut rem = self.0.clone();
        let inv = divisor.lc().recip();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] * &inv;
            if !c.is_zero() {
                for (k, dc) in divisor.0.iter().enumerate() {
                    rem[top - dd + k] -= &c * dc;
                }
                quot[top - dd] = c;
            }
            rem.pop();
        }
        (UPoly::trimmed(quot), UPoly::trimmed(rem))
    }

    fn exact_div(&self, divisor: &UPoly) -> UPoly {
        let (q, r) = self.divrem(divisor);
        debug_assert!(r.is_zero(), "inexact division in Q[y]");
        q
    }

    fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Polynomial in `x` with coefficients in `ℚ[y]`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BiPoly(Vec<UPoly>);

impl BiPoly {
    fn trimmed(mut coeffs: Vec<UPoly>) -> BiPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly(coeffs)
    }

    fn constant(c: UPoly) -> BiPoly {
        BiPoly::trimmed(vec![c])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &UPoly {
        self.0.last().expect("nonzero polynomial")
    }

    fn content(&self) -> UPoly {
        self.0.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c))
    }

    fn map(&self, f: impl Fn(&UPoly) -> UPoly) -> BiPoly {
        BiPoly::trimmed(self.0.iter().map(f).collect())
    }

    fn primitive_part(&self) -> BiPoly {
        let c = self.content();
        self.map(|v| v.exact_div(&c))
    }

    /// `lc(b)^(deg a - deg b + 1) · a mod b`.
    fn prem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg();
        let lcb = b.lc().clone();
        let mut r = self.clone();
        let mut steps = self.deg() + 1 - db;
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let lcr = r.lc().clone();
            let mut next: Vec<UPoly> = r.0.iter().map(|c| c.mul(&lcb)).collect();
            for (k, bc) in b.0.iter().enumerate() {
                next[shift + k] = next[shift + k].sub(&bc.mul(&lcr));
            }
            r = BiPoly::trimmed(next);
            steps -= 1;
        }
        let factor = lcb.pow(steps);
        r.map(|c| c.mul(&factor))
    }
}

fn bivariate_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let c = a.content().gcd(&b.content());
    let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = UPoly::one();
    let mut h = UPoly::one();
    loop {
        if b.deg() == 0 {
            return BiPoly::constant(c);
        }
        let delta = a.deg() - b.deg();
        let r = a.prem(&b);
        if r.is_zero() {
            return b.primitive_part().map(|v| v.mul(&c));
        }
        if r.deg() == 0 {
            return BiPoly::constant(c);
        }
        let divisor = g.mul(&h.pow(delta));
        a = b;
        b = r.map(|v| v.exact_div(&divisor));
        g = a.lc().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)),
        };
    }
}

fn dehomogenize(f: &Form) -> BiPoly {
    let mut coeffs: Vec<Vec<Rational>> = Vec::new();
    for (m, c) in f.raw_terms() {
        let [a, b, _] = m.exps();
        let (a, b) = (a as usize, b as usize);
        if coeffs.len() <= a {
            coeffs.resize(a + 1, Vec::new());
        }
        let row = &mut coeffs[a];
        if row.len() <= b {
            row.resize(b + 1, Rational::zero());
        }
        row[b] += c;
    }
    BiPoly::trimmed(coeffs.into_iter().map(UPoly::trimmed).collect())
}

fn homogenize(p: &BiPoly, z_power: u32) -> Form {
    let mut terms = BTreeMap::new();
    let mut total = 0;
    for (a, coeff) in p.0.iter().enumerate() {
        if let Some(d) = coeff.deg() {
            total = total.max(a + d);
        }
    }
    for (a, coeff) in p.0.iter().enumerate() {
        for (b, c) in coeff.0.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(
                    [a as u32, b as u32, (total - a - b) as u32 + z_power],
                    c.clone(),
                );
            }
        }
    }
    Form::from_terms(total as u32 + z_power, terms).expect("homogenized terms share degree")
}

/// Restriction of `f` to the line through `[1:3:7]` and `[2:-5:1]`, as a
/// polynomial in the affine parameter (the first point at infinity), with
/// a flag for whether the point at infinity is a root.
fn restrict_to_line(f: &Form) -> (UPoly, bool) {
    let line = |a: i64, b: i64| {
        Form::linear(&[
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            Rational::zero(),
        ])
    };
    let binary = f
        .substitute(&[line(1, 2), line(3, -5), line(7, 1)])
        .expect("linear substitution");
    let d = f.degree();
    let mut coeffs = vec![Rational::zero(); d as usize + 1];
    for (m, c) in binary.terms() {
        coeffs[m.exps()[0] as usize] = c.clone();
    }
    let vanishes_at_infinity = coeffs[d as usize].is_zero();
    (UPoly::trimmed(coeffs), vanishes_at_infinity)
}

/// Cheap certificate that `f` and `g` are coprime: a common factor of
/// positive degree restricts to a common factor on any line not contained
/// in it. `false` means "unknown".
fn coprime_on_a_line(f: &Form, g: &Form) -> bool {
    let (a, a_inf) = restrict_to_line(f);
    let (b, b_inf) = restrict_to_line(g);
    if a.is_zero() || b.is_zero() || (a_inf && b_inf) {
        return false;
    }
    a.gcd(&b).deg() == Some(0)
}

/// A gcd over ℚ, normalized to leading coefficient 1 (grlex, `x > y > z`).
/// The gcd of a zero form and `g` is `g` made monic.
pub fn gcd(f: &Form, g: &Form) -> Result<Form, PolyError> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(PolyError::AllZero),
        (true, false) => return Ok(g.monic()),
        (false, true) => return Ok(f.monic()),
        _ => {}
    }
    if f.degree() > 0 && g.degree() > 0 && coprime_on_a_line(f, g) {
        return Ok(Form::one());
    }
    let zf = f.z_valuation();
    let zg = g.z_valuation();
    let strip = |h: &Form, k: u32| -> Form {
        let zk = Form::monomial([0, 0, k], Rational::one());
        h.exact_div(&zk).expect("z-power divides")
    };
    let f0 = strip(f, zf);
    let g0 = strip(g, zg);
    let h = bivariate_gcd(&dehomogenize(&f0), &dehomogenize(&g0));
    Ok(homogenize(&h, zf.min(zg)).monic())
}

/// `gcd(gcd(f1, f2), f3)`.
pub fn gcd3(f1: &Form, f2: &Form, f3: &Form) -> Result<Form, PolyError> {
    if f1.is_zero() && f2.is_zero() {
        return if f3.is_zero() {
            Err(PolyError::AllZero)
        } else {
            Ok(f3.monic())
        };
    }
    let h = gcd(f1, f2)?;
    if f3.is_zero() {
        return Ok(h);
    }
    gcd(&h, f3)
}
