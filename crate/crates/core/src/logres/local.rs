//! Dimensions of local quotients `C{x, y} / I` for polynomial ideals.
//!
//! The quotient by `I + m^(d+1)` is the cokernel of the matrix of monomial
//! multiples of the generators truncated at degree `d`. Once every monomial
//! of degree `d` lies in `I + m^(d+1)`, Nakayama gives `m^d ⊆ I` and the
//! dimension has stabilized.

use std::collections::{BTreeMap, HashMap};

use crate::coeffs::FieldElement;
use crate::error::{Error, Result};
use crate::poly::{Exps, Poly};

/// Default degree cap: four times a bound on the Milnor number read off the
/// Newton data (`(a-1)(b-1)` for pure powers `x^a`, `y^b`, else `(deg f - 1)^2`).
pub fn default_degree_cap(f: &Poly) -> u32 {
    let pure = |i: usize| {
        f.terms()
            .filter(|(e, _)| e[i] > 0 && e.iter().enumerate().all(|(k, &x)| k == i || x == 0))
            .map(|(e, _)| e[i])
            .min()
    };
    let bound = match (f.nvars(), pure(0), pure(1)) {
        (2, Some(a), Some(b)) => (a - 1) * (b - 1),
        _ => f.degree().saturating_sub(1).pow(2),
    };
    4 * bound.max(2)
}

/// Monomials of degree at most `d`, ordered by degree.
fn monomials(nvars: usize, d: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut level = Vec::new();
        of_degree(nvars, deg, &mut Vec::new(), &mut level);
        out.extend(level);
    }
    out
}

fn of_degree(nvars: usize, deg: u32, prefix: &mut Exps, out: &mut Vec<Exps>) {
    if prefix.len() + 1 == nvars {
        let mut e = prefix.clone();
        e.push(deg);
        out.push(e);
        return;
    }
    for k in (0..=deg).rev() {
        prefix.push(k);
        of_degree(nvars, deg - k, prefix, out);
        prefix.pop();
    }
}

type SparseRow = BTreeMap<usize, FieldElement>;

/// `(dim C{x}/(I + m^(d+1)), every degree-d monomial is a pivot)`.
fn truncated_codim(gens: &[Poly], d: u32) -> (usize, bool) {
    let nvars = gens[0].nvars();
    let monos = monomials(nvars, d);
    let index: HashMap<&Exps, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for g in gens {
        let Some(o) = g.order() else { continue };
        if o > d {
            continue;
        }
        for m in monos.iter().filter(|m| m.iter().sum::<u32>() + o <= d) {
            let mut row: SparseRow = BTreeMap::new();
            for (e, c) in g.terms() {
                let prod: Exps = e.iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(&col) = index.get(&prod) {
                    row.insert(col, c.clone());
                }
            }
            insert(&mut pivots, row);
        }
    }
    let top_start = monos.iter().position(|m| m.iter().sum::<u32>() == d).unwrap_or(monos.len());
    let saturated = (top_start..monos.len()).all(|c| pivots.contains_key(&c));
    (monos.len() - pivots.len(), saturated)
}

fn insert(pivots: &mut HashMap<usize, SparseRow>, mut row: SparseRow) {
    while let Some((&lead, c)) = row.iter().next() {
        let Some(p) = pivots.get(&lead) else {
            let inv = c.inv().expect("leading coefficient is nonzero");
            let row = row.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
            pivots.insert(lead, row);
            return;
        };
        let c = c.clone();
        for (k, v) in p {
            let entry = row.entry(*k).or_insert_with(|| FieldElement::zero(v.field()));
            *entry = &*entry - &(&c * v);
            if entry.is_zero() {
                row.remove(k);
            }
        }
    }
}

/// `dim C{x}/(gens)` at the origin, raising the degree cutoff until it stabilizes.
pub fn local_quotient_dim(gens: &[Poly], d_max: u32) -> Result<i64> {
    if gens.is_empty() || gens.iter().all(Poly::is_zero) {
        return Err(Error::InvalidInput("the ideal needs a nonzero generator".into()));
    }
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut previous: Option<usize> = None;
    for d in 0..=d_max {
        let (codim, saturated) = truncated_codim(&gens, d);
        if saturated && previous == Some(codim) {
            return Ok(codim as i64);
        }
        previous = Some(codim);
    }
    Err(Error::NonIsolated(d_max))
}

/// `τ = dim C{x, y} / (f, f_x, f_y)`.
pub fn tjurina_direct(f: &Poly, d_max: Option<u32>) -> Result<i64> {
    let cap = d_max.unwrap_or_else(|| default_degree_cap(f));
    let mut gens = vec![f.clone()];
    gens.extend((0..f.nvars()).map(|i| f.derivative(i)));
    local_quotient_dim(&gens, cap)
}

/// `μ = dim C{x, y} / (f_x, f_y)`.
pub fn milnor_direct(f: &Poly, d_max: Option<u32>) -> Result<i64> {
    let cap = d_max.unwrap_or_else(|| default_degree_cap(f));
    let gens: Vec<Poly> = (0..f.nvars()).map(|i| f.derivative(i)).collect();
    local_quotient_dim(&gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::FieldSpec;

    fn poly(terms: &[(u32, u32, i64)]) -> Poly {
        let f = FieldSpec::rationals();
        Poly::from_ints(&f, &terms.iter().map(|&(i, j, c)| (vec![i, j], c)).collect::<Vec<_>>())
    }

    #[test]
    fn cusp_and_quasi_homogeneous() {
        let cusp = poly(&[(3, 0, 1), (0, 2, -1)]);
        assert_eq!(tjurina_direct(&cusp, None).unwrap(), 2);
        assert_eq!(milnor_direct(&cusp, None).unwrap(), 2);
        let f = poly(&[(5, 0, 1), (0, 6, -1)]);
        assert_eq!(tjurina_direct(&f, None).unwrap(), 20);
        assert_eq!(milnor_direct(&f, None).unwrap(), 20);
    }

    #[test]
    fn perturbation_lowers_tjurina() {
        let f = poly(&[(5, 0, 1), (0, 6, -1), (3, 3, 1)]);
        assert_eq!(milnor_direct(&f, None).unwrap(), 20);
        assert!(tjurina_direct(&f, None).unwrap() < 20);
    }

    #[test]
    fn smooth_point_and_non_isolated() {
        assert_eq!(tjurina_direct(&poly(&[(1, 0, 1), (0, 2, 1)]), None).unwrap(), 0);
        let double_line = poly(&[(0, 2, 1)]);
        assert_eq!(tjurina_direct(&double_line, Some(12)), Err(Error::NonIsolated(12)));
    }
}
