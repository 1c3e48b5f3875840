//! Truncated Laurent series in one variable `t`, vectors of them (one per
//! branch), and the multi-valuation with an explicit infinity.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeffs::{same_field, Field, FieldElement};
use crate::error::{Error, Result};

/// Truncation marker for series with finite, fully known support.
pub const EXACT: i64 = 1 << 40;

fn clamp(n: i64) -> i64 {
    n.min(EXACT)
}

/// `sum_{e < trunc} c_e t^e`, known modulo `t^trunc`.
///
/// Only nonzero coefficients are stored; every stored exponent lies in
/// `[min_exp, trunc)`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    field: Field,
    min_exp: i64,
    trunc: i64,
    coeffs: BTreeMap<i64, FieldElement>,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.trunc == other.trunc && self.coeffs == other.coeffs
    }
}

impl TruncatedSeries {
    pub fn new(
        field: &Field,
        min_exp: i64,
        trunc: i64,
        coeffs: impl IntoIterator<Item = (i64, FieldElement)>,
    ) -> Result<Self> {
        if min_exp > trunc {
            return Err(Error::ShapeMismatch(format!("min_exp {min_exp} exceeds truncation {trunc}")));
        }
        let mut map = BTreeMap::new();
        for (e, c) in coeffs {
            if !same_field(c.field(), field) {
                return Err(Error::FieldMismatch);
            }
            if e < min_exp || e >= trunc {
                return Err(Error::ShapeMismatch(format!(
                    "exponent {e} outside [{min_exp}, {trunc})"
                )));
            }
            if !c.is_zero() {
                map.insert(e, c);
            }
        }
        Ok(TruncatedSeries { field: field.clone(), min_exp, trunc: clamp(trunc), coeffs: map })
    }

    /// A series with finite support known exactly.
    pub fn exact(field: &Field, coeffs: impl IntoIterator<Item = (i64, FieldElement)>) -> Self {
        let coeffs: BTreeMap<i64, FieldElement> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let min_exp = coeffs.keys().next().copied().unwrap_or(0).min(0);
        TruncatedSeries { field: field.clone(), min_exp, trunc: EXACT, coeffs }
    }

    /// Exact series with small integer coefficients, handy for fixtures.
    pub fn from_ints(field: &Field, terms: &[(i64, i64)]) -> Self {
        Self::exact(field, terms.iter().map(|&(e, c)| (e, FieldElement::from_int(field, c))))
    }

    pub fn monomial(field: &Field, e: i64, c: FieldElement) -> Self {
        Self::exact(field, [(e, c)])
    }

    pub fn zero(field: &Field) -> Self {
        Self::exact(field, [])
    }

    pub fn one(field: &Field) -> Self {
        Self::monomial(field, 0, FieldElement::one(field))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc >= EXACT
    }

    /// Smallest exponent with a nonzero coefficient, if any is known.
    pub fn order(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// The order, or the truncation when the series vanishes below it.
    pub fn ord_bound(&self) -> i64 {
        self.order().unwrap_or(self.trunc)
    }

    pub fn leading(&self) -> Option<(i64, &FieldElement)> {
        self.coeffs.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> FieldElement {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn coeff_ref(&self, e: i64) -> Option<&FieldElement> {
        self.coeffs.get(&e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldElement)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Forgets every coefficient at or above `n`.
    pub fn truncated(&self, n: i64) -> Self {
        if n >= self.trunc {
            return self.clone();
        }
        let coeffs = self.coeffs.range(..n).map(|(e, c)| (*e, c.clone())).collect();
        TruncatedSeries { field: self.field.clone(), min_exp: self.min_exp.min(n), trunc: n, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert!(same_field(&self.field, &other.field), "field mismatch");
        let trunc = self.trunc.min(other.trunc);
        let mut coeffs: BTreeMap<i64, FieldElement> = self.coeffs.range(..trunc).map(|(e, c)| (*e, c.clone())).collect();
        for (e, c) in other.coeffs.range(..trunc) {
            let entry = coeffs.entry(*e).or_insert_with(|| FieldElement::zero(&self.field));
            *entry = if negate { &*entry - c } else { &*entry + c };
            if entry.is_zero() {
                coeffs.remove(e);
            }
        }
        TruncatedSeries { field: self.field.clone(), min_exp: self.min_exp.min(other.min_exp), trunc, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(same_field(&self.field, &other.field), "field mismatch");
        let trunc = clamp(
            self.trunc
                .saturating_add(other.ord_bound())
                .min(other.trunc.saturating_add(self.ord_bound())),
        );
        let mut coeffs: BTreeMap<i64, FieldElement> = BTreeMap::new();
        for (ea, a) in &self.coeffs {
            for (eb, b) in &other.coeffs {
                let e = ea + eb;
                if e >= trunc {
                    break;
                }
                let prod = a * b;
                let entry = coeffs.entry(e).or_insert_with(|| FieldElement::zero(&self.field));
                *entry = &*entry + &prod;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        let min_exp = (self.min_exp + other.min_exp).min(trunc);
        TruncatedSeries { field: self.field.clone(), min_exp, trunc, coeffs }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return TruncatedSeries { coeffs: BTreeMap::new(), ..self.clone() };
        }
        let coeffs = self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect();
        TruncatedSeries { coeffs, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, a)| (*e, -a)).collect();
        TruncatedSeries { coeffs, ..self.clone() }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, a)| (e + k, a.clone())).collect();
        let trunc = if self.is_exact() { EXACT } else { self.trunc + k };
        TruncatedSeries { field: self.field.clone(), min_exp: self.min_exp + k, trunc, coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e != 0)
            .map(|(e, a)| (e - 1, a * &FieldElement::from_int(&self.field, *e)))
            .collect();
        let trunc = if self.is_exact() { EXACT } else { self.trunc - 1 };
        TruncatedSeries { field: self.field.clone(), min_exp: self.min_exp - 1, trunc, coeffs }
    }

    /// Inverse of a series with known order `k`: the result has order `-k`
    /// and is known modulo `t^(trunc - 2k)`.
    pub fn invert_unit(&self) -> Result<Self> {
        let (k, lc) = self
            .leading()
            .ok_or_else(|| Error::truncation("series inversion", self.trunc + 1, self.trunc))?;
        let lc_inv = lc.inv()?;
        // u = t^{-k} self / lc, a unit known mod t^{len}.
        let len = if self.is_exact() { EXACT } else { self.trunc - k };
        let u = self.shift(-k).scale(&lc_inv);
        let out_len = if self.is_exact() { 0 } else { len };
        if self.is_exact() && self.coeffs.len() > 1 {
            return Err(Error::InvalidInput(
                "inverse of a non-monomial exact series has infinite support; truncate it first".into(),
            ));
        }
        let mut inv: BTreeMap<i64, FieldElement> = BTreeMap::new();
        inv.insert(0, FieldElement::one(&self.field));
        for n in 1..out_len {
            let mut acc = FieldElement::zero(&self.field);
            for (e, c) in u.coeffs.range(1..=n) {
                if let Some(b) = inv.get(&(n - e)) {
                    acc = &acc - &(c * b);
                }
            }
            if !acc.is_zero() {
                inv.insert(n, acc);
            }
        }
        let trunc = if self.is_exact() { EXACT } else { len - k };
        let coeffs = inv.into_iter().map(|(e, c)| (e - k, &c * &lc_inv));
        TruncatedSeries::new(&self.field, -k, trunc, coeffs)
    }

    /// Evaluates the coefficient at `e`, failing when it lies at or above the truncation.
    pub fn known_coeff(&self, e: i64, context: &str) -> Result<FieldElement> {
        if e >= self.trunc {
            return Err(Error::truncation(context, e + 1, self.trunc));
        }
        Ok(self.coeff(e))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*t^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(t^{})", self.trunc)?;
        }
        Ok(())
    }
}

/// A coordinate of a multi-valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Fin(i64),
    Inf,
}

impl Coord {
    pub fn finite(self) -> Option<i64> {
        match self {
            Coord::Fin(v) => Some(v),
            Coord::Inf => None,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Fin(v) => write!(f, "{v}"),
            Coord::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coord::Fin(v) => s.serialize_i64(*v),
            Coord::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Coord::Fin(v)),
            Raw::S(s) if s == "inf" || s == "∞" => Ok(Coord::Inf),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad value coordinate `{s}`"))),
        }
    }
}

/// A point of `(Z ∪ {∞})^p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiValue(pub Vec<Coord>);

impl MultiValue {
    pub fn from_finite(v: &[i64]) -> Self {
        MultiValue(v.iter().map(|&x| Coord::Fin(x)).collect())
    }

    pub fn finite(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.finite()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| matches!(c, Coord::Fin(_)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MultiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Operations for [`series_arith`].
#[derive(Debug, Clone)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Scale(FieldElement),
}

/// One series per branch; an element of the total ring of fractions.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesVector {
    comps: Vec<TruncatedSeries>,
}

impl SeriesVector {
    pub fn new(comps: Vec<TruncatedSeries>) -> Result<Self> {
        let first = comps.first().ok_or_else(|| Error::ShapeMismatch("empty series vector".into()))?;
        if comps.iter().any(|c| !same_field(c.field(), first.field())) {
            return Err(Error::FieldMismatch);
        }
        Ok(SeriesVector { comps })
    }

    /// The same series on every branch.
    pub fn diagonal(s: TruncatedSeries, p: usize) -> Self {
        SeriesVector { comps: vec![s; p] }
    }

    /// `t^k` on every branch (componentwise exponents).
    pub fn monomial(field: &Field, k: &[i64]) -> Self {
        SeriesVector {
            comps: k.iter().map(|&e| TruncatedSeries::monomial(field, e, FieldElement::one(field))).collect(),
        }
    }

    /// `t^k` on branch `j`, zero elsewhere.
    pub fn unit(field: &Field, p: usize, j: usize, k: i64) -> Self {
        let comps = (0..p)
            .map(|i| {
                if i == j {
                    TruncatedSeries::monomial(field, k, FieldElement::one(field))
                } else {
                    TruncatedSeries::zero(field)
                }
            })
            .collect();
        SeriesVector { comps }
    }

    pub fn p(&self) -> usize {
        self.comps.len()
    }

    pub fn field(&self) -> &Field {
        self.comps[0].field()
    }

    pub fn comps(&self) -> &[TruncatedSeries] {
        &self.comps
    }

    pub fn comp(&self, j: usize) -> &TruncatedSeries {
        &self.comps[j]
    }

    pub fn into_comps(self) -> Vec<TruncatedSeries> {
        self.comps
    }

    fn zip(&self, other: &Self, f: impl Fn(&TruncatedSeries, &TruncatedSeries) -> TruncatedSeries) -> Self {
        SeriesVector { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, TruncatedSeries::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, TruncatedSeries::sub)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, TruncatedSeries::mul)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        SeriesVector { comps: self.comps.iter().map(|s| s.scale(c)).collect() }
    }

    pub fn shift(&self, k: &[i64]) -> Self {
        SeriesVector { comps: self.comps.iter().zip(k).map(|(s, &e)| s.shift(e)).collect() }
    }

    pub fn truncated(&self, n: &[i64]) -> Self {
        SeriesVector { comps: self.comps.iter().zip(n).map(|(s, &e)| s.truncated(e)).collect() }
    }

    /// Componentwise orders; a component vanishing below its truncation is
    /// `∞` when the truncation reaches `safe`, otherwise the order is
    /// reported as indeterminate.
    pub fn val(&self, safe: i64) -> Result<MultiValue> {
        self.comps
            .iter()
            .enumerate()
            .map(|(j, s)| match s.order() {
                Some(e) => Ok(Coord::Fin(e)),
                None if s.trunc() >= safe => Ok(Coord::Inf),
                None => Err(Error::IndeterminateOrder { branch: j, trunc: s.trunc(), needed: safe }),
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiValue)
    }

    /// True when every component has a known nonzero term.
    pub fn is_non_zero_divisor(&self) -> bool {
        self.comps.iter().all(|s| s.order().is_some())
    }
}

/// Checked componentwise arithmetic.
pub fn series_arith(a: &SeriesVector, b: &SeriesVector, op: SeriesOp) -> Result<SeriesVector> {
    if a.p() != b.p() {
        return Err(Error::ShapeMismatch(format!("{} vs {} components", a.p(), b.p())));
    }
    if !same_field(a.field(), b.field()) {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Sub => a.sub(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Scale(c) => {
            if !same_field(c.field(), a.field()) {
                return Err(Error::FieldMismatch);
            }
            a.scale(&c)
        }
    })
}

/// Inverse of a non-zero divisor, componentwise.
pub fn series_invert_unit(a: &SeriesVector) -> Result<SeriesVector> {
    SeriesVector::new(a.comps.iter().map(|s| s.invert_unit()).collect::<Result<Vec<_>>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::FieldSpec;
    use proptest::prelude::*;

    fn series(f: &Field, min: i64, n: i64, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(
            f,
            min,
            n,
            c.iter().enumerate().map(|(i, &v)| (min + i as i64, FieldElement::from_int(f, v))),
        )
        .unwrap()
    }

    #[test]
    fn product_truncation() {
        let f = FieldSpec::rationals();
        // (t^2 + O(t^6)) * (t^3 + O(t^5)) is known mod t^7
        let a = series(&f, 2, 6, &[1, 0, 0, 0]);
        let b = series(&f, 3, 5, &[1, 0]);
        assert_eq!(a.mul(&b).trunc(), 7);
        assert_eq!(a.mul(&b).order(), Some(5));
    }

    #[test]
    fn inverse_of_shifted_unit() {
        let f = FieldSpec::rationals();
        let a = series(&f, 2, 12, &[1, 1, 0, 3, 0, 0, 0, 1, 0, 2]);
        let inv = a.invert_unit().unwrap();
        assert_eq!(inv.order(), Some(-2));
        let prod = a.mul(&inv);
        assert_eq!(prod.order(), Some(0));
        assert!(prod.terms().all(|(e, c)| e == 0 && c.is_one()));
        assert_eq!(prod.trunc(), 10);
    }

    #[test]
    fn val_distinguishes_infinity_from_indeterminate() {
        let f = FieldSpec::rationals();
        let z = TruncatedSeries::new(&f, 0, 5, []).unwrap();
        let v = SeriesVector::new(vec![TruncatedSeries::from_ints(&f, &[(3, 1)]), z]).unwrap();
        assert!(matches!(v.val(10), Err(Error::IndeterminateOrder { branch: 1, .. })));
        assert_eq!(v.val(5).unwrap(), MultiValue(vec![Coord::Fin(3), Coord::Inf]));
    }

    #[test]
    fn multivalue_json() {
        let v = MultiValue(vec![Coord::Fin(-1), Coord::Inf]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[-1,\"inf\"]");
        assert_eq!(serde_json::from_str::<MultiValue>(&s).unwrap(), v);
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in prop::collection::vec(-5i64..5, 1..6),
                                 b in prop::collection::vec(-5i64..5, 1..6),
                                 sa in -3i64..4, sb in -3i64..4) {
            prop_assume!(a[0] != 0 && b[0] != 0);
            let f = FieldSpec::rationals();
            let x = series(&f, sa, sa + 10, &a);
            let y = series(&f, sb, sb + 10, &b);
            prop_assert_eq!(x.mul(&y).order(), Some(sa + sb));
            let s = x.add(&y);
            if let Some(o) = s.order() {
                prop_assert!(o >= sa.min(sb));
            }
        }
    }
}
