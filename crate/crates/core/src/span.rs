//! Finite-dimensional shadows of `O_D`-modules: coefficient windows,
//! spanning rows of monomial multiples, and value closures on one branch.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::coeffs::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::poly::{PowerCache, Poly};
use crate::series::{SeriesVector, TruncatedSeries};

/// Columns indexed by `(branch j, exponent e)` with `lo_j <= e < hi_j`.
#[derive(Clone, Debug)]
pub(crate) struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    offsets: Vec<usize>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        let mut offsets = Vec::with_capacity(lo.len() + 1);
        let mut acc = 0usize;
        for (l, h) in lo.iter().zip(&hi) {
            offsets.push(acc);
            acc += (h - l).max(0) as usize;
        }
        offsets.push(acc);
        Window { lo, hi, offsets }
    }

    pub fn p(&self) -> usize {
        self.lo.len()
    }

    pub fn ncols(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn col(&self, j: usize, e: i64) -> usize {
        debug_assert!(e >= self.lo[j] && e < self.hi[j]);
        self.offsets[j] + (e - self.lo[j]) as usize
    }

    /// Inverse of [`Window::col`].
    pub fn branch_exp(&self, c: usize) -> (usize, i64) {
        let j = self.offsets.partition_point(|&o| o <= c) - 1;
        (j, self.lo[j] + (c - self.offsets[j]) as i64)
    }

    pub fn row(&self, v: &SeriesVector, context: &str) -> Result<Vec<FieldElement>> {
        let field = v.field();
        let mut row = vec![FieldElement::zero(field); self.ncols()];
        for j in 0..self.p() {
            let s = v.comp(j);
            if self.hi[j] <= self.lo[j] {
                continue;
            }
            if s.trunc() < self.hi[j] {
                return Err(Error::truncation(context, self.hi[j], s.trunc()));
            }
            if let Some(o) = s.order() {
                if o < self.lo[j] {
                    return Err(Error::Algorithm(format!(
                        "{context}: term t^{o} on branch {j} lies below the window start {}",
                        self.lo[j]
                    )));
                }
            }
            for (e, c) in s.terms() {
                if e >= self.hi[j] {
                    break;
                }
                row[self.col(j, e)] = c.clone();
            }
        }
        Ok(row)
    }

    /// Rebuilds a series vector (exact) from a coefficient row.
    pub fn vector(&self, field: &Field, row: &[FieldElement]) -> SeriesVector {
        let comps = (0..self.p())
            .map(|j| {
                TruncatedSeries::exact(
                    field,
                    (self.lo[j]..self.hi[j])
                        .map(|e| (e, row[self.col(j, e)].clone()))
                        .filter(|(_, c)| !c.is_zero()),
                )
            })
            .collect();
        SeriesVector::new(comps).expect("nonempty")
    }
}

/// Coordinates of every branch: `coords[j][k]` is the `k`-th coordinate on branch `j`.
pub(crate) type BranchCoords = Vec<Vec<TruncatedSeries>>;

/// Monomial multiples `x^a * g` of the generators that still reach the window.
///
/// Every coordinate has positive order on every branch (or vanishes), so
/// the set is finite.
pub(crate) fn module_elements(
    coords: &BranchCoords,
    gens: &[SeriesVector],
    window: &Window,
    context: &str,
) -> Result<Vec<(Vec<u32>, usize, SeriesVector)>> {
    let p = coords.len();
    let m = coords[0].len();
    let capped: BranchCoords = coords
        .iter()
        .enumerate()
        .map(|(j, cs)| {
            let cap = window.hi[j] - window.lo[j].min(0) + 1;
            cs.iter().map(|c| c.truncated(cap)).collect()
        })
        .collect();
    let mut caches: Vec<PowerCache<'_>> = capped.iter().map(|c| PowerCache::new(c)).collect();
    let mut out = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
        queue.push_back(vec![0; m]);
        seen.insert(vec![0; m]);
        while let Some(a) = queue.pop_front() {
            let mut comps = Vec::with_capacity(p);
            for j in 0..p {
                let s = g.comp(j).truncated(window.hi[j].max(window.lo[j]));
                comps.push(if a.iter().all(|&k| k == 0) { s } else { caches[j].monomial(&a).mul(&s) });
            }
            let v = SeriesVector::new(comps)?;
            let mut reaches = false;
            for j in 0..p {
                let s = v.comp(j);
                match s.order() {
                    Some(o) if o < window.hi[j] => reaches = true,
                    Some(_) => {}
                    None if s.trunc() >= window.hi[j] => {}
                    None => return Err(Error::truncation(context, window.hi[j], s.trunc())),
                }
            }
            if !reaches {
                continue;
            }
            for k in 0..m {
                let mut b = a.clone();
                b[k] += 1;
                if seen.insert(b.clone()) {
                    queue.push_back(b);
                }
            }
            out.push((a, gi, v));
        }
    }
    Ok(out)
}

/// Rows of the spanning set of `sum O_D g_i` projected onto the window.
pub(crate) fn module_rows(
    coords: &BranchCoords,
    gens: &[SeriesVector],
    window: &Window,
    context: &str,
) -> Result<Vec<Vec<FieldElement>>> {
    module_elements(coords, gens, window, context)?
        .into_iter()
        .map(|(_, _, v)| window.row(&v, context))
        .collect()
}

/// An element together with the polynomial that produced it, when tracked.
#[derive(Clone, Debug)]
pub(crate) struct Tagged {
    pub s: TruncatedSeries,
    pub tag: Option<Poly>,
}

/// Echelon basis, keyed by order, of the image of `sum O_D g_i` in
/// `C((t)) / t^hi` on a single branch.
pub(crate) fn value_closure(coords: &[TruncatedSeries], gens: Vec<Tagged>, hi: i64, context: &str) -> Result<BTreeMap<i64, Tagged>> {
    let m = coords.len();
    let field = coords[0].field().clone();
    let vars: Vec<Poly> = (0..m).map(|k| Poly::var(&field, m, k)).collect();
    let mut basis: BTreeMap<i64, Tagged> = BTreeMap::new();
    let mut queue: VecDeque<Tagged> = gens.into();
    while let Some(mut el) = queue.pop_front() {
        if el.s.trunc() < hi {
            return Err(Error::truncation(context, hi, el.s.trunc()));
        }
        el.s = el.s.truncated(hi);
        loop {
            let Some((e, c)) = el.s.leading().map(|(e, c)| (e, c.clone())) else { break };
            let Some(b) = basis.get(&e) else { break };
            el.s = el.s.sub(&b.s.scale(&c));
            if let (Some(t), Some(bt)) = (&el.tag, &b.tag) {
                el.tag = Some(t.sub(&bt.scale(&c)));
            }
        }
        let Some((e, c)) = el.s.leading().map(|(e, c)| (e, c.clone())) else { continue };
        let inv = c.inv()?;
        let el = Tagged { s: el.s.scale(&inv), tag: el.tag.map(|t| t.scale(&inv)) };
        // x has positive order, so x * el is known below hi once x is known below hi - e
        let cap = (hi - e).max(0) + 1;
        for (k, x) in coords.iter().enumerate() {
            let s = el.s.mul(&x.truncated(cap));
            if s.order().is_none_or(|o| o >= hi) && s.trunc() >= hi {
                continue;
            }
            queue.push_back(Tagged { s, tag: el.tag.as_ref().map(|t| t.mul(&vars[k])) });
        }
        basis.insert(e, el);
    }
    Ok(basis)
}
