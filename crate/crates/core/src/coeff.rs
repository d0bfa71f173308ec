//! Exact scalar arithmetic: arbitrary-precision rationals and rational
//! functions in the formal variables q^{1/2} and t.
//!
//! Internally everything is a ratio of sparse Laurent polynomials in
//! u = q^{1/2} and t.  Only half-integer powers of q ever occur in this
//! artifact (translations are restricted to the coroot lattice, and the
//! specializations are t = q^{-k/2}), so exponents of u are plain integers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// The substitution t = q^{-k/2}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Specialization {
    pub k: u32,
}

// ---------------------------------------------------------------------------
// Sparse Laurent polynomials in (u, t)
// ---------------------------------------------------------------------------

/// Sparse Laurent polynomial over Q in u = q^{1/2} and t.
/// Keys are (exponent of u, exponent of t); zero coefficients are pruned.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QtPoly {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl QtPoly {
    pub fn zero() -> Self {
        QtPoly::default()
    }

    pub fn one() -> Self {
        QtPoly::monomial(Rat::one(), 0, 0)
    }

    pub fn constant(c: Rat) -> Self {
        QtPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, u: i64, t: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((u, t), c);
        }
        QtPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, u: i64, t: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((u, t)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(u, t));
        }
    }

    pub fn add_ref(&self, other: &QtPoly) -> QtPoly {
        let mut out = self.clone();
        for (&(u, t), c) in &other.terms {
            out.add_term(u, t, c);
        }
        out
    }

    pub fn sub_ref(&self, other: &QtPoly) -> QtPoly {
        let mut out = self.clone();
        for (&(u, t), c) in &other.terms {
            out.add_term(u, t, &(-c.clone()));
        }
        out
    }

    pub fn neg_ref(&self) -> QtPoly {
        QtPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, -c.clone()))
                .collect(),
        }
    }

    pub fn mul_ref(&self, other: &QtPoly) -> QtPoly {
        let mut out = QtPoly::zero();
        for (&(u1, t1), c1) in &self.terms {
            for (&(u2, t2), c2) in &other.terms {
                out.add_term(u1 + u2, t1 + t2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> QtPoly {
        if c.is_zero() {
            return QtPoly::zero();
        }
        QtPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, v * c))
                .collect(),
        }
    }

    /// Multiply by the monomial u^du t^dt.
    pub fn mul_monomial(&self, du: i64, dt: i64) -> QtPoly {
        QtPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(u, t), c)| ((u + du, t + dt), c.clone()))
                .collect(),
        }
    }

    fn min_exps(&self) -> (i64, i64) {
        let mut mu = i64::MAX;
        let mut mt = i64::MAX;
        for &(u, t) in self.terms.keys() {
            mu = mu.min(u);
            mt = mt.min(t);
        }
        (mu, mt)
    }

    /// Leading term under lex order on (u-exponent, t-exponent).
    fn leading(&self) -> Option<(&(i64, i64), &Rat)> {
        self.terms.iter().next_back()
    }

    /// Apply an exponent map (used by iota and specialization); coefficients
    /// of colliding monomials are summed.
    pub fn map_exps(&self, f: impl Fn(i64, i64) -> (i64, i64)) -> QtPoly {
        let mut out = QtPoly::zero();
        for (&(u, t), c) in &self.terms {
            let (nu, nt) = f(u, t);
            out.add_term(nu, nt, c);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Dense helpers for gcd computation
// ---------------------------------------------------------------------------

// Univariate dense polynomials over Q, coefficient of u^i at index i.
type UP = Vec<Rat>;

fn up_trim(mut p: UP) -> UP {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn up_is_zero(p: &UP) -> bool {
    p.is_empty()
}

fn up_mul(a: &UP, b: &UP) -> UP {
    if up_is_zero(a) || up_is_zero(b) {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    up_trim(out)
}

fn up_sub(a: &UP, b: &UP) -> UP {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (i, cb) in b.iter().enumerate() {
        out[i] -= cb;
    }
    up_trim(out)
}

fn up_divrem(a: &UP, b: &UP) -> (UP, UP) {
    assert!(!up_is_zero(b), "division by zero polynomial");
    let mut rem = a.clone();
    let mut quo = vec![Rat::zero(); a.len().saturating_sub(b.len() - 1)];
    let lead = b.last().unwrap();
    while rem.len() >= b.len() {
        let d = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        quo[d] = c.clone();
        for (i, cb) in b.iter().enumerate() {
            rem[d + i] -= &c * cb;
        }
        rem = up_trim(rem);
    }
    (up_trim(quo), rem)
}

fn up_gcd(a: &UP, b: &UP) -> UP {
    let mut a = a.clone();
    let mut b = b.clone();
    while !up_is_zero(&b) {
        let (_, r) = up_divrem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c /= &lead;
        }
    }
    a
}

// Bivariate dense: coefficient of t^j is bp[j], a univariate poly in u.
type BP = Vec<UP>;

fn bp_trim(mut p: BP) -> BP {
    while p.last().map(up_is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

fn bp_is_zero(p: &BP) -> bool {
    p.is_empty()
}

fn bp_mul_up(p: &BP, u: &UP) -> BP {
    bp_trim(p.iter().map(|c| up_mul(c, u)).collect())
}

fn bp_sub(a: &BP, b: &BP) -> BP {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), vec![]);
    }
    for (i, cb) in b.iter().enumerate() {
        out[i] = up_sub(&out[i], cb);
    }
    bp_trim(out)
}

fn bp_shift_t(p: &BP, k: usize) -> BP {
    if bp_is_zero(p) {
        return vec![];
    }
    let mut out = vec![vec![]; k];
    out.extend(p.iter().cloned());
    out
}

/// gcd of the u-coefficients (the content with respect to t).
fn bp_content(p: &BP) -> UP {
    let mut g: UP = vec![];
    for c in p {
        if !up_is_zero(c) {
            g = up_gcd(&g, c);
        }
    }
    g
}

fn bp_div_up_exact(p: &BP, u: &UP) -> BP {
    p.iter()
        .map(|c| {
            if up_is_zero(c) {
                vec![]
            } else {
                let (q, r) = up_divrem(c, u);
                assert!(up_is_zero(&r), "inexact content division");
                q
            }
        })
        .collect()
}

fn bp_primitive(p: &BP) -> BP {
    if bp_is_zero(p) {
        return vec![];
    }
    let c = bp_content(p);
    bp_div_up_exact(p, &c)
}

/// Pseudo-remainder of a by b with respect to t.
fn bp_pseudo_rem(a: &BP, b: &BP) -> BP {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // lb * r  -  lr * t^{dr-db} * b
        r = bp_sub(&bp_mul_up(&r, &lb), &bp_shift_t(&bp_mul_up(b, &lr), dr - db));
        if r.len() > dr {
            r.truncate(dr);
            r = bp_trim(r);
        }
    }
    r
}

fn bp_gcd(a: &BP, b: &BP) -> BP {
    if bp_is_zero(a) {
        return b.clone();
    }
    if bp_is_zero(b) {
        return a.clone();
    }
    let ca = bp_content(a);
    let cb = bp_content(b);
    let cg = up_gcd(&ca, &cb);
    let mut f = bp_div_up_exact(a, &ca);
    let mut g = bp_div_up_exact(b, &cb);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !bp_is_zero(&g) {
        let r = bp_pseudo_rem(&f, &g);
        f = g;
        g = bp_primitive(&r);
    }
    bp_mul_up(&bp_primitive(&f), &cg)
}

/// Exact division in Q[u][t]; panics if not exact (only used on divisors
/// produced by bp_gcd).
fn bp_div_exact(a: &BP, b: &BP) -> BP {
    if bp_is_zero(a) {
        return vec![];
    }
    assert!(!bp_is_zero(b));
    if b.len() == 1 {
        return a
            .iter()
            .map(|c| {
                if up_is_zero(c) {
                    vec![]
                } else {
                    let (q, r) = up_divrem(c, &b[0]);
                    assert!(up_is_zero(&r), "inexact division");
                    q
                }
            })
            .collect();
    }
    let mut rem = a.clone();
    let mut quo: BP = vec![vec![]; a.len().saturating_sub(b.len() - 1)];
    let lb = b.last().unwrap();
    while rem.len() >= b.len() {
        let d = rem.len() - b.len();
        let (qc, qr) = up_divrem(rem.last().unwrap(), lb);
        assert!(up_is_zero(&qr), "inexact division");
        quo[d] = qc.clone();
        rem = bp_sub(&rem, &bp_shift_t(&bp_mul_up(b, &qc), d));
    }
    assert!(bp_is_zero(&rem), "inexact division");
    bp_trim(quo)
}

fn qtpoly_to_bp(p: &QtPoly) -> BP {
    // caller guarantees non-negative exponents
    let mut tdeg = 0usize;
    let mut udeg = 0usize;
    for &(u, t) in p.terms.keys() {
        tdeg = tdeg.max(t as usize);
        udeg = udeg.max(u as usize);
    }
    let mut out: BP = vec![vec![Rat::zero(); udeg + 1]; tdeg + 1];
    for (&(u, t), c) in &p.terms {
        out[t as usize][u as usize] = c.clone();
    }
    bp_trim(out.into_iter().map(up_trim).collect())
}

fn bp_to_qtpoly(p: &BP) -> QtPoly {
    let mut out = QtPoly::zero();
    for (t, row) in p.iter().enumerate() {
        for (u, c) in row.iter().enumerate() {
            out.add_term(u as i64, t as i64, c);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// QtScalar: normalized rational functions
// ---------------------------------------------------------------------------

/// An exact element of Q(q^{1/2}, t), stored as a normalized ratio of
/// Laurent polynomials: the gcd of numerator and denominator is removed,
/// the denominator has no monomial factor, and its leading coefficient
/// (lex order on (u, t) exponents) is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QtScalar {
    num: QtPoly,
    den: QtPoly,
}

impl QtScalar {
    pub fn zero() -> Self {
        QtScalar {
            num: QtPoly::zero(),
            den: QtPoly::one(),
        }
    }

    pub fn one() -> Self {
        QtScalar::from_poly(QtPoly::one())
    }

    pub fn int(n: i64) -> Self {
        QtScalar::from_poly(QtPoly::constant(rat(n)))
    }

    pub fn from_rat(c: Rat) -> Self {
        QtScalar::from_poly(QtPoly::constant(c))
    }

    pub fn from_poly(num: QtPoly) -> Self {
        QtScalar {
            num,
            den: QtPoly::one(),
        }
    }

    pub fn ratio(num: QtPoly, den: QtPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QtScalar { num, den }.normalized())
    }

    /// c * q^{qh/2} * t^tp
    pub fn monomial(c: Rat, qh: i64, tp: i64) -> Self {
        QtScalar::from_poly(QtPoly::monomial(c, qh, tp))
    }

    /// q^n
    pub fn q_pow(n: i64) -> Self {
        QtScalar::monomial(Rat::one(), 2 * n, 0)
    }

    /// q^{n/2}
    pub fn q_half_pow(n: i64) -> Self {
        QtScalar::monomial(Rat::one(), n, 0)
    }

    /// t^n
    pub fn t_pow(n: i64) -> Self {
        QtScalar::monomial(Rat::one(), 0, n)
    }

    /// h = t - t^{-1}
    pub fn h() -> Self {
        QtScalar::t_pow(1) - QtScalar::t_pow(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn numerator(&self) -> &QtPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QtPoly {
        &self.den
    }

    fn normalized(self) -> Self {
        let QtScalar { mut num, mut den } = self;
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QtScalar::zero();
        }
        if den.num_terms() == 1 {
            // monomial denominator folds into the (Laurent) numerator
            let (&(du, dt), c) = den.leading().unwrap();
            num = num.mul_monomial(-du, -dt).scale(&c.recip());
            return QtScalar {
                num,
                den: QtPoly::one(),
            };
        }
        let (nu, nt) = num.min_exps();
        let (du, dt) = den.min_exps();
        num = num.mul_monomial(-nu, -nt);
        den = den.mul_monomial(-du, -dt);
        let bn = qtpoly_to_bp(&num);
        let bd = qtpoly_to_bp(&den);
        let g = bp_gcd(&bn, &bd);
        let nontrivial = g.len() > 1 || g.first().map(|c| c.len() > 1).unwrap_or(false);
        let (bn, bd) = if nontrivial {
            (bp_div_exact(&bn, &g), bp_div_exact(&bd, &g))
        } else {
            (bn, bd)
        };
        num = bp_to_qtpoly(&bn).mul_monomial(nu - du, nt - dt);
        den = bp_to_qtpoly(&bd);
        if den.num_terms() == 1 {
            let (&(du2, dt2), c) = den.leading().unwrap();
            num = num.mul_monomial(-du2, -dt2).scale(&c.recip());
            return QtScalar {
                num,
                den: QtPoly::one(),
            };
        }
        let lead = den.leading().unwrap().1.clone();
        num = num.scale(&lead.recip());
        den = den.scale(&lead.recip());
        QtScalar { num, den }
    }

    pub fn checked_div(&self, other: &QtScalar) -> Result<QtScalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QtScalar {
            num: self.num.mul_ref(&other.den),
            den: self.den.mul_ref(&other.num),
        }
        .normalized())
    }

    pub fn recip(&self) -> Result<QtScalar> {
        QtScalar::one().checked_div(self)
    }

    /// The involution q -> q^{-1}, t -> t^{-1}.
    pub fn iota(&self) -> QtScalar {
        QtScalar {
            num: self.num.map_exps(|u, t| (-u, -t)),
            den: self.den.map_exps(|u, t| (-u, -t)),
        }
        .normalized()
    }

    /// Substitute t = q^{-k/2}, i.e. t -> u^{-k}.
    pub fn specialize(&self, s: Specialization) -> Result<QtScalar> {
        let k = s.k as i64;
        let num = self.num.map_exps(|u, t| (u - k * t, 0));
        let den = self.den.map_exps(|u, t| (u - k * t, 0));
        if den.is_zero() {
            return Err(Error::SpecializationCollapse { k: s.k });
        }
        Ok(QtScalar { num, den }.normalized())
    }

    /// Substitute q -> -q; requires integral q-powers and no t.
    pub fn negate_q(&self) -> Result<QtScalar> {
        let map = |p: &QtPoly| -> Result<QtPoly> {
            let mut out = QtPoly::zero();
            for (&(u, t), c) in p.iter() {
                if t != 0 {
                    return Err(Error::NonPolynomialResult { half: u, tpow: t });
                }
                if u % 2 != 0 {
                    return Err(Error::FractionalQPower { half: u });
                }
                let sign = if (u / 2).rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
                out.add_term(u, 0, &sign);
            }
            Ok(out)
        };
        Ok(QtScalar {
            num: map(&self.num)?,
            den: map(&self.den)?,
        }
        .normalized())
    }

    /// Extract a Laurent polynomial in q with integer powers: map from
    /// q-exponent to coefficient.  Errors if t survives, the denominator is
    /// non-trivial, or a half-integral power of q remains.
    pub fn to_q_polynomial(&self) -> Result<BTreeMap<i64, Rat>> {
        if !self.den.is_one() {
            let (&(u, t), _) = self.den.leading().unwrap();
            return Err(Error::NonPolynomialResult { half: u, tpow: t });
        }
        let mut out = BTreeMap::new();
        for (&(u, t), c) in self.num.iter() {
            if t != 0 {
                return Err(Error::NonPolynomialResult { half: u, tpow: t });
            }
            if u % 2 != 0 {
                return Err(Error::FractionalQPower { half: u });
            }
            out.insert(u / 2, c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> QtScalar {
        let mut out = QtScalar::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl Add for &QtScalar {
    type Output = QtScalar;
    fn add(self, rhs: &QtScalar) -> QtScalar {
        if self.den == rhs.den {
            return QtScalar {
                num: self.num.add_ref(&rhs.num),
                den: self.den.clone(),
            }
            .normalized();
        }
        QtScalar {
            num: self
                .num
                .mul_ref(&rhs.den)
                .add_ref(&rhs.num.mul_ref(&self.den)),
            den: self.den.mul_ref(&rhs.den),
        }
        .normalized()
    }
}

impl Sub for &QtScalar {
    type Output = QtScalar;
    fn sub(self, rhs: &QtScalar) -> QtScalar {
        self + &(-rhs)
    }
}

impl Mul for &QtScalar {
    type Output = QtScalar;
    fn mul(self, rhs: &QtScalar) -> QtScalar {
        QtScalar {
            num: self.num.mul_ref(&rhs.num),
            den: self.den.mul_ref(&rhs.den),
        }
        .normalized()
    }
}

impl Div for &QtScalar {
    type Output = QtScalar;
    fn div(self, rhs: &QtScalar) -> QtScalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &QtScalar {
    type Output = QtScalar;
    fn neg(self) -> QtScalar {
        QtScalar {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for QtScalar {
            type Output = QtScalar;
            fn $m(self, rhs: QtScalar) -> QtScalar { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QtScalar {
    type Output = QtScalar;
    fn neg(self) -> QtScalar {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn fmt_coeff(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_poly(p: &QtPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    // descending order for readability
    for (&(u, t), c) in p.terms.iter().rev() {
        let mut factors: Vec<String> = Vec::new();
        if u != 0 {
            if u % 2 == 0 {
                let n = u / 2;
                factors.push(if n == 1 { "q".into() } else { format!("q^{}", n) });
            } else {
                factors.push(format!("q^({}/2)", u));
            }
        }
        if t != 0 {
            factors.push(if t == 1 { "t".into() } else { format!("t^{}", t) });
        }
        let abs = c.abs();
        let mono = factors.join("*");
        let body = if mono.is_empty() {
            fmt_coeff(&abs)
        } else if abs.is_one() {
            mono
        } else {
            format!("{}*{}", fmt_coeff(&abs), mono)
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{}", body) } else { body });
        } else if c.is_negative() {
            parts.push(format!("- {}", body));
        } else {
            parts.push(format!("+ {}", body));
        }
    }
    parts.join(" ")
}

impl fmt::Display for QtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

// ---------------------------------------------------------------------------
