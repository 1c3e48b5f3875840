//! Exact arithmetic in a number field `Q[z]/(m)`.
//!
//! The rationals are the special case `m = z`. Elements carry a shared
//! handle to their [`FieldSpec`]; mixing fields is reported as
//! [`Error::FieldMismatch`] by the checked operations and is a programming
//! error (panic) in the operator impls.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Whether the minimal polynomial was proven irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Verified,
    /// Degree above 4 or coefficients too large to factor by enumeration.
    Assumed,
}

/// A number field given by a monic minimal polynomial over `Q`.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldSpec {
    min_poly: Vec<BigRational>,
    irreducibility: Irreducibility,
}

/// Shared handle to a field.
pub type Field = Arc<FieldSpec>;

/// Binary operations accepted by [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldSpec {
    /// The field of rationals, `m = z`.
    pub fn rationals() -> Field {
        Arc::new(FieldSpec {
            min_poly: vec![BigRational::zero(), BigRational::one()],
            irreducibility: Irreducibility::Verified,
        })
    }

    /// Builds a field from the coefficients of `m`, constant term first.
    ///
    /// `m` must be monic of degree at least one. For degree at most four the
    /// polynomial is checked for irreducibility over `Q`.
    pub fn new(min_poly: Vec<BigRational>) -> Result<Field> {
        let mut m = min_poly;
        while m.len() > 1 && m.last().is_some_and(Zero::is_zero) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(Error::InvalidField("minimal polynomial must have degree >= 1".into()));
        }
        if !m.last().unwrap().is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        let irreducibility = match check_irreducible(&m) {
            Some(true) => Irreducibility::Verified,
            Some(false) => {
                return Err(Error::InvalidField(format!(
                    "{} is reducible over Q",
                    fmt_upoly(&m, "z")
                )))
            }
            None => Irreducibility::Assumed,
        };
        Ok(Arc::new(FieldSpec { min_poly: m, irreducibility }))
    }

    /// Parses coefficient strings such as `["1", "1", "1"]` for `z^2 + z + 1`.
    pub fn parse(coeffs: &[String]) -> Result<Field> {
        let m = coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        FieldSpec::new(m)
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1 && self.min_poly[0].is_zero()
    }
}

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let r = BigRational::from_str(t).map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))?;
    Ok(r)
}

pub fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || a.min_poly == b.min_poly
}

/// An element of a number field, stored as its residue of degree below `deg m`.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    residue: Vec<BigRational>,
}

impl FieldElement {
    pub fn zero(field: &Field) -> Self {
        FieldElement { field: field.clone(), residue: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Field, q: BigRational) -> Self {
        let mut e = Self::zero(field);
        e.residue[0] = q;
        e
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    /// The class of `z`.
    pub fn generator(field: &Field) -> Self {
        Self::from_residue(field, vec![BigRational::zero(), BigRational::one()])
    }

    /// Reduces an arbitrary polynomial in `z` modulo `m`.
    pub fn from_residue(field: &Field, coeffs: Vec<BigRational>) -> Self {
        FieldElement { field: field.clone(), residue: reduce_mod(coeffs, &field.min_poly) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn residue(&self) -> &[BigRational] {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.residue[0].is_one() && self.residue[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.residue[1..].iter().all(Zero::is_zero).then(|| &self.residue[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let residue = self.residue.iter().zip(&other.residue).map(|(a, b)| a + b).collect();
        FieldElement { field: self.field.clone(), residue }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let residue = self.residue.iter().zip(&other.residue).map(|(a, b)| a - b).collect();
        FieldElement { field: self.field.clone(), residue }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.field.degree();
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                residue: vec![&self.residue[0] * &other.residue[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.residue.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.residue.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement { field: self.field.clone(), residue: reduce_mod(prod, &self.field.min_poly) }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[z]`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(FieldElement { field: self.field.clone(), residue: vec![self.residue[0].recip()] });
        }
        let (g, s) = ext_gcd(&trim(self.residue.clone()), &self.field.min_poly);
        // g is a nonzero constant because m is irreducible and self is nonzero mod m.
        if g.len() != 1 {
            return Err(Error::InvalidField("minimal polynomial has a nontrivial factor".into()));
        }
        let c = g[0].recip();
        let s = s.into_iter().map(|x| x * &c).collect();
        Ok(FieldElement::from_residue(&self.field, s))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

/// Checked binary operation on two field elements.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Sub => a.try_sub(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Div => a.try_div(b),
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.residue == other.residue
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}", fmt_upoly(&self.residue, "z")),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), residue: self.residue.iter().map(|a| -a).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// ---- univariate helpers over Q, coefficients constant term first ----

fn trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    if a.is_empty() {
        a.push(BigRational::zero());
    }
    a
}

fn is_zero_poly(a: &[BigRational]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn reduce_mod(mut a: Vec<BigRational>, m: &[BigRational]) -> Vec<BigRational> {
    let d = m.len() - 1;
    if a.len() > d {
        for k in (d..a.len()).rev() {
            if a[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut a[k]);
            for i in 0..d {
                if !m[i].is_zero() {
                    a[k - d + i] -= &c * &m[i];
                }
            }
        }
        a.truncate(d);
    }
    a.resize(d, BigRational::zero());
    a
}

fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let c = &r[k] / &lb;
        for i in 0..=db {
            let t = &c * &b[i];
            r[k - db + i] -= t;
        }
        q[k - db] = c;
    }
    (trim(q), trim(r))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Returns `(g, s)` with `s * a = g (mod m)`.
fn ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !is_zero_poly(&r1) {
        let (q, r) = divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

pub(crate) fn fmt_upoly(c: &[BigRational], var: &str) -> String {
    let mut parts = Vec::new();
    for (k, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let s = if mono.is_empty() {
            a.to_string()
        } else if a.is_one() {
            mono
        } else if *a == -BigRational::one() {
            format!("-{mono}")
        } else {
            format!("{a}*{mono}")
        };
        parts.push(s);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

// ---- irreducibility for small degree ----

/// Largest absolute value whose divisors are enumerated.
const DIVISOR_LIMIT: u64 = 1 << 40;

/// `Some(true/false)` when decided, `None` when the degree or size is out of reach.
fn check_irreducible(m: &[BigRational]) -> Option<bool> {
    let d = m.len() - 1;
    if d == 1 {
        return Some(true);
    }
    if d > 4 {
        return None;
    }
    let c = monic_integer(m);
    if c[0].is_zero() {
        return Some(false);
    }
    let divs = divisors(&c[0])?;
    for q in &divs {
        for r in [q.clone(), -q.clone()] {
            if eval_int(&c, &r).is_zero() {
                return Some(false);
            }
        }
    }
    if d <= 3 {
        return Some(true);
    }
    // Monic quartic: look for (x^2 + p x + q)(x^2 + r x + s) with integers.
    let (a3, a2, a1, a0) = (&c[3], &c[2], &c[1], &c[0]);
    for q in divs.iter().flat_map(|q| [q.clone(), -q.clone()]) {
        let s = a0 / &q;
        let pr = a2 - &q - &s;
        let disc = a3 * a3 - BigInt::from(4) * &pr;
        if disc.is_negative() {
            continue;
        }
        let root = disc.sqrt();
        if &root * &root != disc {
            continue;
        }
        for sgn in [1, -1] {
            let num = a3 + BigInt::from(sgn) * &root;
            if num.is_odd() {
                continue;
            }
            let p = &num / 2;
            let r = a3 - &p;
            if &p * &s + &q * &r == *a1 {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Rescales `z -> z / L` so that the polynomial becomes monic with integer coefficients.
fn monic_integer(m: &[BigRational]) -> Vec<BigInt> {
    let d = m.len() - 1;
    let l = m.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    (0..=d)
        .map(|i| {
            let scaled = &m[i] * BigRational::from_integer(num_traits::pow(l.clone(), d - i));
            scaled.to_integer()
        })
        .collect()
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|v| *v <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn cyclotomic3() -> Field {
        FieldSpec::new(vec![q(1), q(1), q(1)]).unwrap()
    }

    #[test]
    fn half_plus_third() {
        let f = FieldSpec::rationals();
        let a = FieldElement::from_rational(&f, BigRational::new(1.into(), 2.into()));
        let b = FieldElement::from_rational(&f, BigRational::new(1.into(), 3.into()));
        assert_eq!((&a + &b).to_string(), "5/6");
    }

    #[test]
    fn cube_root_of_unity() {
        let f = cyclotomic3();
        let w = FieldElement::generator(&f);
        assert!(w.pow(3).is_one());
        let s = &(&FieldElement::one(&f) + &w) + &w.pow(2);
        assert!(s.is_zero());
    }

    #[test]
    fn mismatch_and_zero_division() {
        let a = FieldElement::one(&FieldSpec::rationals());
        let b = FieldElement::one(&cyclotomic3());
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch));
        assert_eq!(FieldElement::zero(&cyclotomic3()).inv().err(), Some(Error::DivisionByZero));
    }

    #[test]
    fn reducible_polynomials_rejected() {
        // z^2 - 1, z^4 + 4 = (z^2 + 2z + 2)(z^2 - 2z + 2), z^3 - z/2
        for m in [
            vec![q(-1), q(0), q(1)],
            vec![q(4), q(0), q(0), q(0), q(1)],
            vec![q(0), BigRational::new((-1).into(), 2.into()), q(0), q(1)],
        ] {
            assert!(matches!(FieldSpec::new(m), Err(Error::InvalidField(_))));
        }
        // z^4 + 1 and z^2 - 1/2 are irreducible
        assert!(FieldSpec::new(vec![q(1), q(0), q(0), q(0), q(1)]).is_ok());
        assert!(FieldSpec::new(vec![BigRational::new((-1).into(), 2.into()), q(0), q(1)]).is_ok());
        assert!(FieldSpec::new(vec![q(1), q(2)]).is_err());
    }

    fn elem(f: &Field, c: &[i64]) -> FieldElement {
        FieldElement::from_residue(f, c.iter().map(|&n| q(n)).collect())
    }

    proptest! {
        #[test]
        fn field_axioms(a in prop::collection::vec(-20i64..20, 2),
                        b in prop::collection::vec(-20i64..20, 2),
                        c in prop::collection::vec(-20i64..20, 2)) {
            let f = cyclotomic3();
            let (a, b, c) = (elem(&f, &a), elem(&f, &b), elem(&f, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
