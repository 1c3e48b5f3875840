//! Poincaré polynomials of fractional ideals.
//!
//! With `c_I(v) = dim I_v / I_(v+1)`, the coefficient of `t^v` is
//! `α_I(v) = Σ_J (-1)^|J| c_I(v - e_J)`, so that `P_I = L_I · Π (1 - t_i)`.
//! The support lies in `[λ, ν]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{dual_values_symmetry, FractionalIdeal};
use crate::lattice::{le, offset, points, sub, EllTable, Point, ValueSet};

/// A Laurent polynomial in `p` variables with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawLaurent", try_from = "RawLaurent")]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Point, i64>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    exps: Point,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct RawLaurent {
    nvars: usize,
    terms: Vec<RawTerm>,
}

impl From<LaurentPoly> for RawLaurent {
    fn from(l: LaurentPoly) -> Self {
        RawLaurent { nvars: l.nvars, terms: l.terms.into_iter().map(|(exps, coeff)| RawTerm { exps, coeff }).collect() }
    }
}

impl TryFrom<RawLaurent> for LaurentPoly {
    type Error = Error;
    fn try_from(r: RawLaurent) -> Result<Self> {
        let mut l = LaurentPoly::zero(r.nvars);
        for t in r.terms {
            if t.exps.len() != r.nvars {
                return Err(Error::ShapeMismatch(format!("term {:?} in {} variables", t.exps, r.nvars)));
            }
            l.add_term(t.exps, t.coeff);
        }
        Ok(l)
    }
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Point, i64> {
        &self.terms
    }

    pub fn coeff(&self, e: &[i64]) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Point, c: i64) {
        let entry = self.terms.entry(e.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    /// `sign · t^shift · P(1/t_1, ..., 1/t_p)`.
    pub fn reflected(&self, shift: &[i64], sign: i64) -> Self {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(sub(shift, e), sign * c);
        }
        out
    }

    /// Sum of all coefficients, the value at `t = 1`.
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Point> = self.terms.keys().collect();
        keys.sort_by_key(|e| (e.iter().sum::<i64>(), (*e).clone()));
        for (n, e) in keys.into_iter().enumerate() {
            let c = self.terms[e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    let var = if self.nvars == 1 { "t".to_string() } else { format!("t{}", i + 1) };
                    if k == 1 {
                        var
                    } else {
                        format!("{var}^{k}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let sign = if c < 0 { "-" } else { "+" };
            if n == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (c.abs(), mono.is_empty()) {
                (a, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{mono}")?,
                (a, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// `α(v)` from a table of `ℓ`.
pub fn alpha(table: &EllTable, v: &[i64]) -> i64 {
    let p = v.len();
    (0u32..1 << p)
        .map(|mask| {
            let w: Point = (0..p).map(|j| v[j] - i64::from(mask >> j & 1)).collect();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            sign * table.c(&w)
        })
        .sum()
}

pub fn alpha_i(v: &[i64], ideal: &FractionalIdeal) -> Result<i64> {
    Ok(alpha(&EllTable::new(ideal.values()?), v))
}

/// `P` of a value set, with its support checked against `[λ, ν]`.
pub fn poincare_of_values(s: &ValueSet) -> Result<LaurentPoly> {
    let table = EllTable::new(s);
    let mut out = LaurentPoly::zero(s.p());
    for v in points(s.lambda(), s.nu()) {
        out.add_term(v.clone(), alpha(&table, &v));
    }
    let (lo, hi) = (offset(s.lambda(), -1), offset(s.nu(), 1));
    if let Some(v) = points(&lo, &hi).find(|v| !(le(s.lambda(), v) && le(v, s.nu())) && alpha(&table, v) != 0) {
        return Err(Error::Invariant(format!("Poincaré coefficient outside [λ, ν] at {v:?}")));
    }
    Ok(out)
}

pub fn poincare_poly(ideal: &FractionalIdeal) -> Result<LaurentPoly> {
    poincare_of_values(ideal.values()?)
}

/// Both polynomials of `I` and `I^∨` and whether they satisfy
/// `P_(I^∨)(t) = (-1)^(p+1) t^γ P_I(1/t)` and `c_(I^∨)(v) = p - c_I(γ - v - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSymmetry {
    pub ideal: LaurentPoly,
    pub dual: LaurentPoly,
    pub sign: i64,
    pub polynomial_identity: bool,
    pub c_identity: bool,
    /// First `v` where the `c` identity fails.
    pub witness: Option<Point>,
}

pub fn symmetry_of_values(s: &ValueSet, dual: &ValueSet, gamma: &[i64]) -> Result<PoincareSymmetry> {
    let p = s.p();
    let sign = if p % 2 == 1 { 1 } else { -1 };
    let pi = poincare_of_values(s)?;
    let pd = poincare_of_values(dual)?;
    let polynomial_identity = pi.reflected(gamma, sign) == pd;
    let (ts, td) = (EllTable::new(s), EllTable::new(dual));
    let lo = offset(dual.lambda(), -1);
    let hi = offset(dual.nu(), 1);
    let witness = points(&lo, &hi).find(|v| td.c(v) != p as i64 - ts.c(&offset(&sub(gamma, v), -1)));
    Ok(PoincareSymmetry { ideal: pi, dual: pd, sign, polynomial_identity, c_identity: witness.is_none(), witness })
}

pub fn poincare_symmetry_check(ideal: &FractionalIdeal) -> Result<PoincareSymmetry> {
    let dual = dual_values_symmetry(ideal)?;
    symmetry_of_values(ideal.values()?, &dual, ideal.curve().gamma())
}
