//! Multivariate polynomials over a number field and their evaluation on
//! parametrizations.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffs::{same_field, Field, FieldElement};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Exponent vector of a monomial.
pub type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Exps, FieldElement>,
}

impl Poly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        Poly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: FieldElement) -> Self {
        Self::monomial(field, vec![0; nvars], c)
    }

    pub fn monomial(field: &Field, exps: Exps, c: FieldElement) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, FieldElement::one(field))
    }

    pub fn from_terms(field: &Field, nvars: usize, terms: impl IntoIterator<Item = (Exps, FieldElement)>) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ShapeMismatch(format!("monomial with {} exponents in {nvars} variables", e.len())));
            }
            if !same_field(c.field(), field) {
                return Err(Error::FieldMismatch);
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    /// Small integer coefficients, for fixtures: `[(vec![2, 0], 1), (vec![0, 3], -1)]`.
    pub fn from_ints(field: &Field, terms: &[(Vec<u32>, i64)]) -> Self {
        let nvars = terms.first().map_or(2, |t| t.0.len());
        Self::from_terms(field, nvars, terms.iter().map(|(e, c)| (e.clone(), FieldElement::from_int(field, *c))))
            .expect("well-formed fixture")
    }

    fn add_term(&mut self, e: Exps, c: &FieldElement) {
        let entry = self.terms.entry(e.clone()).or_insert_with(|| FieldElement::zero(&self.field));
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&FieldElement> {
        self.terms.get(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Lowest total degree of a term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-FieldElement::one(&self.field)))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &(a * b));
            }
        }
        out
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, &(c * &FieldElement::from_int(&self.field, e[i] as i64)));
        }
        out
    }

    /// Substitutes series for the variables.
    pub fn eval_series(&self, coords: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        if coords.len() != self.nvars {
            return Err(Error::ShapeMismatch(format!(
                "polynomial in {} variables evaluated at {} series",
                self.nvars,
                coords.len()
            )));
        }
        let mut powers = PowerCache::new(coords);
        let mut acc = TruncatedSeries::zero(&self.field);
        for (e, c) in &self.terms {
            acc = acc.add(&powers.monomial(e).scale(c));
        }
        Ok(acc)
    }
}

/// Memoized powers of coordinate series.
pub(crate) struct PowerCache<'a> {
    coords: &'a [TruncatedSeries],
    powers: Vec<Vec<TruncatedSeries>>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(coords: &'a [TruncatedSeries]) -> Self {
        let powers = coords.iter().map(|c| vec![TruncatedSeries::one(c.field())]).collect();
        PowerCache { coords, powers }
    }

    pub(crate) fn power(&mut self, i: usize, k: u32) -> &TruncatedSeries {
        while self.powers[i].len() <= k as usize {
            let next = self.powers[i].last().unwrap().mul(&self.coords[i]);
            self.powers[i].push(next);
        }
        &self.powers[i][k as usize]
    }

    pub(crate) fn monomial(&mut self, e: &[u32]) -> TruncatedSeries {
        let mut acc: Option<TruncatedSeries> = None;
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let p = self.power(i, k).clone();
            acc = Some(match acc {
                None => p,
                Some(a) => a.mul(&p),
            });
        }
        acc.unwrap_or_else(|| TruncatedSeries::one(self.coords[0].field()))
    }
}

pub(crate) fn var_name(i: usize, n: usize) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if n <= 4 {
        NAMES[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { var_name(i, self.nvars) } else { format!("{}^{k}", var_name(i, self.nvars)) })
                .collect();
            let mono = mono.join("*");
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if c.as_rational().is_some() => (true, rest.to_string()),
                _ => (false, if c.as_rational().is_some() { cs.clone() } else { format!("({cs})") }),
            };
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
