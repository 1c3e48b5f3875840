//! Fractional ideals of `O_D` and their value sets.
//!
//! Values are computed from ranks: `ℓ(v) = dim I/I_v` is the rank of the
//! spanning set projected onto the coefficients below `v`, and `v` is a
//! value exactly when `ℓ` jumps in every coordinate direction at `v`.

mod closure;
mod two_branch;

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{same_field, FieldElement};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::lattice::{self, add, offset, points, sub, EllTable, Point, ValueSet};
use crate::linalg::{nullspace, Echelon};
use crate::poly::Poly;
use crate::series::{Coord, MultiValue, SeriesVector, TruncatedSeries};
use crate::span::{module_rows, Window};

pub use closure::value_algo_p1;
pub use two_branch::{value_algo_p2, TwoBranchFaces};

/// Named ideals attached to every curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    #[serde(rename = "O_D")]
    LocalRing,
    #[serde(rename = "O_Dtilde")]
    Normalization,
    #[serde(rename = "jacobian")]
    Jacobian,
    #[serde(rename = "kahler")]
    Kahler,
    #[serde(rename = "residues")]
    Residues,
    #[serde(rename = "conductor")]
    Conductor,
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "O_D" | "local" => Preset::LocalRing,
            "O_Dtilde" | "normalization" => Preset::Normalization,
            "jacobian" => Preset::Jacobian,
            "kahler" => Preset::Kahler,
            "residues" => Preset::Residues,
            "conductor" => Preset::Conductor,
            other => return Err(Error::InvalidInput(format!("unknown ideal preset `{other}`"))),
        })
    }
}

/// `I = sum O_D g_i`, with bounds `t^ν Õ ⊆ I ⊆ t^λ Õ`.
#[derive(Clone, Debug)]
pub struct FractionalIdeal {
    curve: Arc<Curve>,
    generators: Vec<SeriesVector>,
    gen_values: Vec<MultiValue>,
    lambda: Point,
    nu: Point,
    values: OnceLock<ValueSet>,
}

impl FractionalIdeal {
    pub fn new(curve: &Arc<Curve>, generators: Vec<SeriesVector>) -> Result<Self> {
        Self::build(curve, generators, None)
    }

    /// Like [`FractionalIdeal::new`] with a known corner: `t^hint Õ ⊆ I` must hold.
    pub fn with_corner_hint(curve: &Arc<Curve>, generators: Vec<SeriesVector>, hint: Point) -> Result<Self> {
        Self::build(curve, generators, Some(hint))
    }

    fn build(curve: &Arc<Curve>, generators: Vec<SeriesVector>, hint: Option<Point>) -> Result<Self> {
        let p = curve.p();
        let safe = curve.stabilization();
        let mut gens = Vec::new();
        let mut vals = Vec::new();
        for g in generators {
            if g.p() != p {
                return Err(Error::ShapeMismatch(format!("generator with {} components on a curve with {p} branches", g.p())));
            }
            if !same_field(g.field(), curve.field()) {
                return Err(Error::FieldMismatch);
            }
            let v = g.val(safe)?;
            if v.0.iter().all(|c| *c == Coord::Inf) {
                continue;
            }
            gens.push(g);
            vals.push(v);
        }
        if gens.is_empty() {
            return Err(Error::NoNonZeroDivisor);
        }
        if !vals.iter().any(MultiValue::is_finite) {
            let (g, v) = generic_combination(&gens, safe)?;
            gens.push(g);
            vals.push(v);
        }
        let lambda: Point = (0..p)
            .map(|j| vals.iter().filter_map(|v| v.0[j].finite()).min().expect("a non-zero divisor exists"))
            .collect();
        let mut nu: Option<Point> = None;
        for v in vals.iter().filter_map(MultiValue::finite) {
            let cand = add(&v, curve.gamma());
            nu = Some(match nu {
                None => cand,
                Some(n) => lattice::inf(&n, &cand),
            });
        }
        let mut nu = nu.unwrap();
        if let Some(h) = hint {
            if h.len() != p {
                return Err(Error::ShapeMismatch("corner hint length".into()));
            }
            nu = lattice::inf(&nu, &h);
        }
        let nu = lattice::sup(&nu, &lambda);
        Ok(FractionalIdeal { curve: curve.clone(), generators: gens, gen_values: vals, lambda, nu, values: OnceLock::new() })
    }

    /// One of the named ideals of the curve.
    pub fn preset(curve: &Arc<Curve>, which: Preset) -> Result<Self> {
        let field = curve.field();
        let p = curve.p();
        match which {
            Preset::LocalRing => Self::new(curve, vec![SeriesVector::diagonal(TruncatedSeries::one(field), p)]),
            Preset::Normalization => {
                let mut gens: Vec<SeriesVector> = (0..p).map(|j| SeriesVector::unit(field, p, j, 0)).collect();
                gens.push(SeriesVector::monomial(field, &vec![0; p]));
                Self::with_corner_hint(curve, gens, vec![0; p])
            }
            Preset::Conductor => {
                let g = curve.gamma();
                let mut gens: Vec<SeriesVector> = (0..p).map(|j| SeriesVector::unit(field, p, j, g[j])).collect();
                gens.push(SeriesVector::monomial(field, g));
                Self::with_corner_hint(curve, gens, g.to_vec())
            }
            Preset::Kahler => Self::new(curve, kahler_generators(curve)),
            Preset::Jacobian => match curve.full_equation() {
                Some(f) => {
                    let gens = vec![curve.eval(&f.derivative(0))?, curve.eval(&f.derivative(1))?];
                    Self::new(curve, gens)
                }
                None => {
                    let t_gamma = SeriesVector::monomial(field, curve.gamma());
                    Self::new(curve, kahler_generators(curve).iter().map(|g| g.mul(&t_gamma)).collect())
                }
            },
            Preset::Residues => dual_direct(&Self::preset(curve, Preset::Jacobian)?),
        }
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn generators(&self) -> &[SeriesVector] {
        &self.generators
    }

    pub fn generator_values(&self) -> &[MultiValue] {
        &self.gen_values
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn nu(&self) -> &[i64] {
        &self.nu
    }

    pub fn p(&self) -> usize {
        self.curve.p()
    }

    /// Value set, computed once by the rank oracle.
    pub fn values(&self) -> Result<&ValueSet> {
        if let Some(v) = self.values.get() {
            return Ok(v);
        }
        let v = value_set_rank_oracle(self)?;
        Ok(self.values.get_or_init(|| v))
    }

    /// `t^k I`.
    pub fn shifted(&self, k: &[i64]) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.shift(k)).collect();
        Self::with_corner_hint(&self.curve, gens, add(&self.nu, k))
    }
}

/// `x_k'(t)` on every branch, one generator per coordinate.
pub(crate) fn kahler_generators(curve: &Curve) -> Vec<SeriesVector> {
    (0..curve.ambient_dim())
        .map(|k| {
            SeriesVector::new(curve.branches().iter().map(|b| b.coords()[k].derivative()).collect())
                .expect("nonempty")
        })
        .collect()
}

/// A combination `sum c_i g_i` that is nonzero on every branch.
fn generic_combination(gens: &[SeriesVector], safe: i64) -> Result<(SeriesVector, MultiValue)> {
    let field = gens[0].field().clone();
    for shift in 0..32i64 {
        let mut acc: Option<SeriesVector> = None;
        for (i, g) in gens.iter().enumerate() {
            let c = FieldElement::from_int(&field, 1 + shift * i as i64);
            let term = g.scale(&c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        let acc = acc.unwrap();
        let v = acc.val(safe)?;
        if v.is_finite() {
            return Ok((acc, v));
        }
    }
    Err(Error::NoNonZeroDivisor)
}

/// `ℓ(w)` for every `w ∈ [λ, ν + 1]` from the reduced rows of the spanning set.
fn ell_from_rows(field: &crate::coeffs::Field, basis: &[Vec<FieldElement>], window: &Window) -> BTreeMap<Point, i64> {
    let p = window.p();
    let lo = window.lo.clone();
    let hi = window.hi.clone();
    if p == 1 {
        let mut e = Echelon::new(field, window.ncols());
        for r in basis {
            e.insert(r.clone());
        }
        let mut piv: Vec<i64> = e.pivots().iter().map(|&c| lo[0] + c as i64).collect();
        piv.sort();
        return (lo[0]..=hi[0]).map(|w| (vec![w], piv.iter().filter(|&&x| x < w).count() as i64)).collect();
    }
    let outer: Vec<Point> = points(&lo[1..], &hi[1..]).collect();
    let parts: Vec<Vec<(Point, i64)>> = outer
        .par_iter()
        .map(|wp| {
            let mut cols: Vec<usize> = Vec::new();
            for j in 1..p {
                for e in lo[j]..wp[j - 1] {
                    cols.push(window.col(j, e));
                }
            }
            let n_other = cols.len();
            for e in lo[0]..hi[0] {
                cols.push(window.col(0, e));
            }
            let mut ech = Echelon::new(field, cols.len());
            for r in basis {
                let rr: Vec<FieldElement> = cols.iter().map(|&c| r[c].clone()).collect();
                if rr.iter().any(|x| !x.is_zero()) {
                    ech.insert(rr);
                }
            }
            let base = ech.pivots().iter().filter(|&&c| c < n_other).count() as i64;
            let mut firsts: Vec<i64> =
                ech.pivots().iter().filter(|&&c| c >= n_other).map(|&c| lo[0] + (c - n_other) as i64).collect();
            firsts.sort();
            (lo[0]..=hi[0])
                .map(|w0| {
                    let mut w = vec![w0];
                    w.extend_from_slice(wp);
                    (w, base + firsts.iter().filter(|&&x| x < w0).count() as i64)
                })
                .collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Reduced rows spanning the image of `I` in the window `[λ, ν]`.
pub(crate) fn window_basis(ideal: &FractionalIdeal, lo: &[i64], hi: &[i64]) -> Result<(Window, Vec<Vec<FieldElement>>)> {
    let window = Window::new(lo.to_vec(), hi.to_vec());
    let rows = module_rows(&ideal.curve.branch_coords(), &ideal.generators, &window, "value set")?;
    let mut e = Echelon::new(ideal.curve.field(), window.ncols());
    for r in rows {
        e.insert(r);
    }
    Ok((window, e.rows().to_vec()))
}

/// Value set from ranks of coefficient matrices.
pub fn value_set_rank_oracle(ideal: &FractionalIdeal) -> Result<ValueSet> {
    let p = ideal.p();
    let hi = offset(&ideal.nu, 1);
    let (window, basis) = window_basis(ideal, &ideal.lambda, &hi)?;
    let ell = ell_from_rows(ideal.curve.field(), &basis, &window);
    let box_values = points(&ideal.lambda, &ideal.nu)
        .filter(|v| {
            (0..p).all(|k| {
                let mut u = v.clone();
                u[k] += 1;
                ell[&u] > ell[v]
            })
        })
        .collect();
    ValueSet::new(ideal.lambda.clone(), ideal.nu.clone(), box_values)
        .map_err(|e| Error::Invariant(format!("rank oracle produced an inconsistent value set: {e}")))
}

/// `ℓ(v, I) = dim I / I_v`.
pub fn ell(v: &[i64], ideal: &FractionalIdeal) -> Result<i64> {
    Ok(EllTable::new(ideal.values()?).ell(v))
}

/// `c_I(v) = ℓ(v + 1) - ℓ(v)`.
pub fn c_i(v: &[i64], ideal: &FractionalIdeal) -> Result<i64> {
    Ok(EllTable::new(ideal.values()?).c(v))
}

/// Values of `I^∨` from those of `I`; needs a Gorenstein curve.
pub fn dual_values_symmetry(ideal: &FractionalIdeal) -> Result<ValueSet> {
    if !ideal.curve.is_gorenstein() {
        return Err(Error::InvalidInput("value symmetry needs a Gorenstein curve".into()));
    }
    Ok(lattice::dual_by_symmetry(ideal.values()?, ideal.curve.gamma()))
}

/// `I^∨ = {h : h I ⊆ O_D}` by solving a linear system.
///
/// Unknown coefficients of `h` live at exponents `[γ - ν, γ - λ)` on each
/// branch; everything from `γ - λ` on is in the dual already.
pub fn dual_direct(ideal: &FractionalIdeal) -> Result<FractionalIdeal> {
    let curve = ideal.curve.clone();
    let field = curve.field().clone();
    let p = curve.p();
    let gamma = curve.gamma().to_vec();
    let low = sub(&gamma, &ideal.nu);
    let top = sub(&gamma, &ideal.lambda);
    let unknowns = Window::new(low.clone(), top.clone());
    // products h * g live at exponents >= low + λ; only those below γ matter
    let test_lo: Point = (0..p).map(|j| (low[j] + ideal.lambda[j]).min(0)).collect();
    let test = Window::new(test_lo.clone(), gamma.clone());
    let one = SeriesVector::diagonal(TruncatedSeries::one(&field), p);
    let od_window = Window::new(vec![0; p], gamma.clone());
    let od_rows = module_rows(&curve.branch_coords(), &[one], &od_window, "dual")?;
    let mut od = Echelon::new(&field, test.ncols());
    for r in od_rows {
        let mut full = vec![FieldElement::zero(&field); test.ncols()];
        for j in 0..p {
            for e in 0..gamma[j] {
                full[test.col(j, e)] = r[od_window.col(j, e)].clone();
            }
        }
        od.insert(full);
    }
    // constraint columns: one per unknown; rows: (generator, test column)
    let mut columns: Vec<Vec<FieldElement>> = Vec::with_capacity(unknowns.ncols());
    for j in 0..p {
        for e in low[j]..top[j] {
            let h = SeriesVector::unit(&field, p, j, e);
            let mut col = Vec::new();
            for g in &ideal.generators {
                let prod = h.mul(g).truncated(&gamma);
                col.extend(od.reduce(test.row(&prod, "dual")?));
            }
            columns.push(col);
        }
    }
    let nrows = columns.first().map_or(0, |c| c.len());
    let rows: Vec<Vec<FieldElement>> = (0..nrows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let kernel = nullspace(&field, rows, unknowns.ncols());
    let mut gens: Vec<SeriesVector> = kernel.iter().map(|v| unknowns.vector(&field, v)).collect();
    gens.push(SeriesVector::monomial(&field, &top));
    for j in 0..p {
        gens.push(SeriesVector::unit(&field, p, j, top[j]));
    }
    FractionalIdeal::with_corner_hint(&curve, gens, top)
}

/// A polynomial on the curve as an element of `O_D`.
pub fn function_on_curve(curve: &Curve, f: &Poly) -> Result<SeriesVector> {
    curve.eval(f)
}


#[cfg(test)]
mod algorithm_tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn fast_algorithms_match_the_rank_oracle() {
        let presets = [Preset::LocalRing, Preset::Jacobian, Preset::Kahler, Preset::Residues, Preset::Conductor];
        for (name, c) in catalog::plane_curves() {
            for preset in presets {
                let i = FractionalIdeal::preset(&c, preset).unwrap();
                let oracle = value_set_rank_oracle(&i).unwrap();
                let fast = match c.p() {
                    1 => value_algo_p1(&i).unwrap(),
                    2 => value_algo_p2(&i, None, None).unwrap(),
                    _ => continue,
                };
                assert!(fast.same_values(&oracle), "{name} {preset:?}: {:?}", fast.first_difference(&oracle));
            }
        }
    }
}
