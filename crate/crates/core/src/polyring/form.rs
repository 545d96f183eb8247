use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{format_rational, Mat3, PolyError, ProjPoint, Rational};

/// The three homogeneous coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

/// Exponent triple `x^a y^b z^c`, ordered graded lexicographically (`x > y > z`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> [u32; 3] {
        self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial([
            self.0[0] - divisor.0[0],
            self.0[1] - divisor.0[1],
            self.0[2] - divisor.0[2],
        ])
    }

    /// All monomials of total degree `degree`, in decreasing grlex order.
    pub fn all_of_degree(degree: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(((degree + 1) * (degree + 2) / 2) as usize);
        for a in (0..=degree).rev() {
            for b in (0..=degree - a).rev() {
                out.push(Monomial([a, b, degree - a - b]));
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous polynomial in `x, y, z` with rational coefficients.
///
/// Stored coefficients are never zero and every monomial has total degree
/// `degree`. The zero form keeps its degree tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl Form {
    pub fn zero(degree: u32) -> Form {
        Form {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Form {
        Form::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Form {
        Form::monomial([0, 0, 0], value)
    }

    pub fn var(v: Var) -> Form {
        let mut exps = [0; 3];
        exps[v.index()] = 1;
        Form::monomial(exps, Rational::one())
    }

    pub fn monomial(exps: [u32; 3], coef: Rational) -> Form {
        let mut form = Form::zero(exps.iter().sum());
        if !coef.is_zero() {
            form.terms.insert(Monomial(exps), coef);
        }
        form
    }

    /// Builds a form from `(exponents, coefficient)` pairs; repeated monomials
    /// are summed and zero coefficients dropped.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Form, PolyError>
    where
        I: IntoIterator<Item = ([u32; 3], Rational)>,
    {
        let mut form = Form::zero(degree);
        for (exps, coef) in terms {
            let mono = Monomial(exps);
            if mono.degree() != degree {
                return Err(PolyError::DegreeMismatch(degree, mono.degree()));
            }
            form.add_term(mono, coef);
        }
        Ok(form)
    }

    /// Linear form `a x + b y + c z`.
    pub fn linear(coeffs: &[Rational; 3]) -> Form {
        Form::from_terms(
            1,
            [
                ([1, 0, 0], coeffs[0].clone()),
                ([0, 1, 0], coeffs[1].clone()),
                ([0, 0, 1], coeffs[2].clone()),
            ],
        )
        .expect("linear monomials have degree 1")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: [u32; 3]) -> Rational {
        self.terms
            .get(&Monomial(exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, mono: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coef;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_same_degree(&self, other: &Form) -> Result<u32, PolyError> {
        if self.degree == other.degree || other.is_zero() {
            Ok(self.degree)
        } else if self.is_zero() {
            Ok(other.degree)
        } else {
            Err(PolyError::DegreeMismatch(self.degree, other.degree))
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form, PolyError> {
        let degree = self.check_same_degree(other)?;
        let mut out = self.clone();
        out.degree = degree;
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form, PolyError> {
        let degree = self.check_same_degree(other)?;
        let mut out = self.clone();
        out.degree = degree;
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Form {
        Form {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.degree);
        }
        Form {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Form) -> Form {
        let degree = self.degree + other.degree;
        if self.is_zero() || other.is_zero() {
            return Form::zero(degree);
        }
        let (da, a) = IntForm::from_form(self);
        let (db, b) = IntForm::from_form(other);
        let mut out = a.mul(&b).into_form(&(da * db));
        out.degree = degree;
        out
    }

    pub fn pow(&self, exp: u32) -> Form {
        let mut result = Form::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Scales so that the leading coefficient is 1. The zero form is returned
    /// unchanged.
    pub fn monic(&self) -> Form {
        match self.leading() {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Rational {
        self.evaluate_at(p.coords())
    }

    pub fn evaluate_at(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn partial(&self, v: Var) -> Result<Form, PolyError> {
        if self.degree == 0 {
            return Err(PolyError::ZeroDegree);
        }
        let i = v.index();
        let mut out = Form::zero(self.degree - 1);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0;
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// `self(inner[0], inner[1], inner[2])`: substitutes one form for each
    /// variable. All inner forms must share one degree.
    pub fn substitute(&self, inner: &[Form; 3]) -> Result<Form, PolyError> {
        let e = inner[0].degree;
        for g in &inner[1..] {
            if g.degree != e {
                return Err(PolyError::DegreeMismatch(e, g.degree));
            }
        }
        let degree = self.degree * e;
        if self.is_zero() {
            return Ok(Form::zero(degree));
        }
        let parts: Vec<(BigInt, IntForm)> = inner.iter().map(IntForm::from_form).collect();
        let mut max_exp = [0u32; 3];
        for m in self.terms.keys() {
            for (mx, &e) in max_exp.iter_mut().zip(&m.0) {
                *mx = (*mx).max(e);
            }
        }
        let powers: Vec<Vec<IntForm>> = (0..3)
            .map(|i| {
                let mut row = vec![IntForm::one()];
                for k in 0..max_exp[i] as usize {
                    let next = row[k].mul(&parts[i].1);
                    row.push(next);
                }
                row
            })
            .collect();
        let den_pows: Vec<Vec<BigInt>> = (0..3)
            .map(|i| {
                let mut row = vec![BigInt::one()];
                for k in 0..max_exp[i] as usize {
                    let next = &row[k] * &parts[i].0;
                    row.push(next);
                }
                row
            })
            .collect();

        // Each term contributes coef / (D0^a D1^b D2^c) * G0^a G1^b G2^c.
        let mut scaled = Vec::with_capacity(self.terms.len());
        let mut common = BigInt::one();
        for (m, c) in &self.terms {
            let [a, b, cc] = m.0;
            let den = c.denom()
                * &den_pows[0][a as usize]
                * &den_pows[1][b as usize]
                * &den_pows[2][cc as usize];
            common = common.lcm(&den);
            scaled.push((m.0, c.numer().clone(), den));
        }
        let mut pair_cache: HashMap<(u32, u32), IntForm> = HashMap::new();
        let mut acc = IntForm::zero();
        for ([a, b, c], numer, den) in scaled {
            let ab = pair_cache
                .entry((a, b))
                .or_insert_with(|| powers[0][a as usize].mul(&powers[1][b as usize]));
            let prod = ab.mul(&powers[2][c as usize]);
            let factor = numer * (&common / den);
            acc.add_scaled(&prod, &factor);
        }
        let mut out = acc.into_form(&common);
        out.degree = degree;
        Ok(out)
    }

    /// `f(M·(x, y, z))`, rejecting singular `M`.
    pub fn linear_substitute(&self, m: &Mat3) -> Result<Form, PolyError> {
        if m.det().is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        Ok(self.apply_linear(m))
    }

    pub(crate) fn apply_linear(&self, m: &Mat3) -> Form {
        let rows = m.row_forms();
        self.substitute(&rows).expect("linear forms share degree 1")
    }

    /// Order of vanishing at `p`. The point is moved to `[0:0:1]` by the
    /// basis completed with the two standard vectors other than the index of
    /// the last nonzero coordinate of `p`; the order is then `d` minus the
    /// largest surviving power of `z`.
    pub fn multiplicity_at(&self, p: &ProjPoint) -> Result<u32, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroForm);
        }
        let m = Mat3::moving_origin_to(p);
        let moved = self.apply_linear(&m);
        let max_z = moved
            .terms
            .keys()
            .map(|mono| mono.0[2])
            .max()
            .expect("nonzero after invertible substitution");
        Ok(self.degree - max_z)
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not
    /// divide `self`.
    pub fn exact_div(&self, divisor: &Form) -> Option<Form> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        if divisor.degree > self.degree {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Form::zero(self.degree - divisor.degree);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.quotient(&lm);
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(qm.mul(dm), -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Largest `k` with `z^k` dividing the form (0 for the zero form).
    pub(crate) fn z_valuation(&self) -> u32 {
        self.terms.keys().map(|m| m.0[2]).min().unwrap_or(0)
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub(crate) fn unchecked_sub(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    /// Parses text such as `3/2*x^2*y - z^3` or `xz + y^2`. A form with no
    /// terms needs an explicit degree.
    pub fn parse(text: &str, degree: Option<u32>) -> Result<Form, PolyError> {
        let err = || PolyError::Parse {
            what: "form",
            input: text.to_string(),
        };
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms: Vec<([u32; 3], Rational)> = Vec::new();
        let chars: Vec<char> = cleaned.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = Rational::one();
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let coef = if start == i {
                Rational::one()
            } else {
                let s: String = chars[start..i].iter().collect();
                let (n, d) = s.split_once('/').unwrap_or((&s, "1"));
                let n: BigInt = n.parse().map_err(|_| err())?;
                let d: BigInt = d.parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Rational::new(n, d)
            };
            let mut exps = [0u32; 3];
            let mut saw_factor = start != i;
            while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                if chars[i] == '*' {
                    i += 1;
                    continue;
                }
                let v = match chars[i] {
                    'x' => 0,
                    'y' => 1,
                    'z' => 2,
                    _ => return Err(err()),
                };
                i += 1;
                let mut e = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let s = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    e = chars[s..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err())?;
                }
                exps[v] += e;
                saw_factor = true;
            }
            if !saw_factor {
                return Err(err());
            }
            terms.push((exps, sign * coef));
        }
        let degree = match degree {
            Some(d) => d,
            None => terms
                .iter()
                .find(|(_, c)| !c.is_zero())
                .map(|(e, _)| e.iter().sum())
                .ok_or_else(err)?,
        };
        Form::from_terms(degree, terms)
    }
}

impl FromStr for Form {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Form::parse(s, None)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(format_rational(&abs));
            }
            for v in Var::ALL {
                match m.0[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Determinant of the matrix of first partials of `(f1, f2, f3)`.
pub fn jacobian_det(f1: &Form, f2: &Form, f3: &Form) -> Result<Form, PolyError> {
    let d = f1.degree;
    for g in [f2, f3] {
        if g.degree != d {
            return Err(PolyError::DegreeMismatch(d, g.degree));
        }
    }
    if d == 0 {
        return Err(PolyError::ZeroDegree);
    }
    let rows: Vec<Vec<Form>> = [f1, f2, f3]
        .iter()
        .map(|f| Var::ALL.iter().map(|&v| f.partial(v).unwrap()).collect())
        .collect();
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        rows[r1][c1]
            .mul(&rows[r2][c2])
            .unchecked_sub(&rows[r1][c2].mul(&rows[r2][c1]))
    };
    let t0 = rows[0][0].mul(&minor(1, 2, 1, 2));
    let t1 = rows[0][1].mul(&minor(1, 2, 0, 2));
    let t2 = rows[0][2].mul(&minor(1, 2, 0, 1));
    let mut det = t0.unchecked_sub(&t1);
    for (m, c) in t2.terms {
        det.add_term(m, c);
    }
    det.degree = 3 * (d - 1);
    Ok(det)
}

/// Integer-coefficient form used as the multiplication kernel: products are
/// accumulated without normalizing a rational at every step.
#[derive(Debug, Clone)]
struct IntForm {
    terms: HashMap<Monomial, BigInt>,
}

impl IntForm {
    fn zero() -> IntForm {
        IntForm {
            terms: HashMap::new(),
        }
    }

    fn one() -> IntForm {
        let mut terms = HashMap::new();
        terms.insert(Monomial([0, 0, 0]), BigInt::one());
        IntForm { terms }
    }

    /// Splits `f` as `F / den` with `F` integral.
    fn from_form(f: &Form) -> (BigInt, IntForm) {
        let den = f
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (den, IntForm { terms })
    }

    fn mul(&self, other: &IntForm) -> IntForm {
        let mut terms: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                terms
                    .entry(ma.mul(mb))
                    .and_modify(|v| *v += &prod)
                    .or_insert(prod);
            }
        }
        terms.retain(|_, v| !v.is_zero());
        IntForm { terms }
    }

    fn add_scaled(&mut self, other: &IntForm, factor: &BigInt) {
        for (m, c) in &other.terms {
            let v = c * factor;
            self.terms.entry(*m).and_modify(|t| *t += &v).or_insert(v);
        }
    }

    fn into_form(self, den: &BigInt) -> Form {
        let mut terms = BTreeMap::new();
        let mut degree = 0;
        for (m, c) in self.terms {
            if c.is_zero() {
                continue;
            }
            degree = m.degree();
            terms.insert(m, Rational::new(c, den.clone()));
        }
        Form { degree, terms }
    }
}
