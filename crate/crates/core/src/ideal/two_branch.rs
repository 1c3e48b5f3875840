//! Values of an ideal on a two-branch curve, level by level in the first
//! coordinate, starting at the corner and descending to `λ_1`.
//!
//! At each level `a` either some element has value `(a, ≥ν_2)` (then the
//! level copies every second coordinate seen so far) or an element with
//! first value `a` is corrected by witnesses from higher levels until its
//! second value is new.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::{Point, ValueSet};
use crate::linalg::Echelon;
use crate::series::TruncatedSeries;
use crate::span::{module_rows, value_closure, Tagged, Window};

use super::FractionalIdeal;

/// `F_i = {v_i ≤ ν_i : (v_i, ν_other) is a value}` for both branches.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoBranchFaces {
    pub first: BTreeSet<i64>,
    pub second: BTreeSet<i64>,
}

/// Elements with value `≥ ν` on the other branch, seen on branch `keep`.
fn face(ideal: &FractionalIdeal, lam: &[i64], nu: &[i64], keep: usize) -> Result<(BTreeSet<i64>, Vec<TruncatedSeries>)> {
    let field = ideal.curve().field().clone();
    let other = 1 - keep;
    let mut hi = nu.to_vec();
    hi[keep] += 1;
    let window = Window::new(lam.to_vec(), hi.clone());
    let rows = module_rows(&ideal.curve().branch_coords(), ideal.generators(), &window, "two-branch faces")?;
    let mut order: Vec<usize> = (lam[other]..hi[other]).map(|e| window.col(other, e)).collect();
    order.extend((lam[keep]..hi[keep]).map(|e| window.col(keep, e)));
    let mut ech = Echelon::with_order(&field, &order);
    for r in rows {
        ech.insert(r);
    }
    let mut values = BTreeSet::new();
    let mut elems = Vec::new();
    for (row, &pc) in ech.rows().iter().zip(ech.pivots()) {
        let (j, e) = window.branch_exp(pc);
        if j != keep {
            continue;
        }
        values.insert(e);
        let terms = (lam[keep]..hi[keep]).map(|x| (x, row[window.col(keep, x)].clone()));
        elems.push(TruncatedSeries::new(&field, lam[keep], hi[keep], terms)?);
    }
    Ok((values, elems))
}

/// Echelon family on the first branch: for each first value `a`, an element
/// `(ρ_1, ρ_2)` of the ideal with `val_1 ρ = a`, second part known below `ν_2 + 1`.
fn first_branch_family(
    ideal: &FractionalIdeal,
    nu: &[i64],
) -> Result<BTreeMap<i64, (TruncatedSeries, TruncatedSeries)>> {
    let curve = ideal.curve();
    let hi = [nu[0] + 1, nu[1] + 1];
    let coords = curve.branch_coords();
    let mut basis: BTreeMap<i64, (TruncatedSeries, TruncatedSeries)> = BTreeMap::new();
    let mut queue: VecDeque<(TruncatedSeries, TruncatedSeries)> = ideal
        .generators()
        .iter()
        .map(|g| (g.comp(0).truncated(hi[0]), g.comp(1).truncated(hi[1])))
        .collect();
    while let Some((mut s1, mut s2)) = queue.pop_front() {
        for (s, h) in [(&s1, hi[0]), (&s2, hi[1])] {
            if s.trunc() < h {
                return Err(Error::truncation("two-branch family", h, s.trunc()));
            }
        }
        loop {
            let Some((e, c)) = s1.leading().map(|(e, c)| (e, c.clone())) else { break };
            let Some((b1, b2)) = basis.get(&e) else { break };
            s1 = s1.sub(&b1.scale(&c));
            s2 = s2.sub(&b2.scale(&c));
        }
        let Some((e, c)) = s1.leading().map(|(e, c)| (e, c.clone())) else { continue };
        let inv = c.inv()?;
        let (s1, s2) = (s1.scale(&inv), s2.scale(&inv));
        let low2 = s2.order().unwrap_or(hi[1]);
        let (cap1, cap2) = ((hi[0] - e).max(0) + 1, (hi[1] - low2).max(0) + 1);
        for k in 0..coords[0].len() {
            let n1 = s1.mul(&coords[0][k].truncated(cap1)).truncated(hi[0]);
            let n2 = s2.mul(&coords[1][k].truncated(cap2)).truncated(hi[1]);
            if n1.order().is_some() {
                queue.push_back((n1, n2));
            }
        }
        basis.insert(e, (s1, s2));
    }
    Ok(basis)
}

/// Values of an ideal on a curve with two branches.
///
/// `corner` overrides `ν` (it must satisfy `t^corner Õ ⊆ I`); with
/// `expected` the face sets computed here are checked against values
/// obtained elsewhere, for instance from the branches alone.
pub fn value_algo_p2(
    ideal: &FractionalIdeal,
    corner: Option<&[i64]>,
    expected: Option<&TwoBranchFaces>,
) -> Result<ValueSet> {
    if ideal.p() != 2 {
        return Err(Error::InvalidInput("value_algo_p2 needs a curve with two branches".into()));
    }
    let lam = ideal.lambda().to_vec();
    let nu: Point = corner.map_or_else(|| ideal.nu().to_vec(), |c| c.to_vec());
    if nu.len() != 2 || nu[0] < lam[0] || nu[1] < lam[1] {
        return Err(Error::InvalidInput(format!("corner {nu:?} must lie above lambda {lam:?}")));
    }
    let (f1, _) = face(ideal, &lam, &nu, 0)?;
    let (f2, h0) = face(ideal, &lam, &nu, 1)?;
    if let Some(exp) = expected {
        let clip = |s: &BTreeSet<i64>, lo: i64, hi: i64| s.range(lo..=hi).copied().collect::<BTreeSet<_>>();
        if clip(&exp.first, lam[0], nu[0]) != f1 || clip(&exp.second, lam[1], nu[1]) != f2 {
            return Err(Error::Invariant(format!(
                "face sets disagree: branch values give {:?} / {:?}, the ideal gives {f1:?} / {f2:?}",
                exp.first, exp.second
            )));
        }
    }
    let family = first_branch_family(ideal, &nu)?;

    // Standard basis of the second branch's local ring, as series on that branch.
    let curve = ideal.curve();
    let field = curve.field().clone();
    let one = Tagged { s: TruncatedSeries::one(&field), tag: None };
    let g2 = value_closure(curve.branches()[1].coords(), vec![one], nu[1] - lam[1] + 1, "second branch semigroup")?;

    let hi2 = nu[1] + 1;
    let mut values: BTreeSet<Point> = f2.iter().map(|&v| vec![nu[0], v]).collect();
    let mut seen2: BTreeSet<i64> = f2.clone();
    let mut witnesses: Vec<TruncatedSeries> = h0;

    let witness = |w: i64, ws: &[TruncatedSeries]| -> Option<TruncatedSeries> {
        ws.iter().find_map(|eta| {
            let v = eta.order()?;
            let h = g2.get(&(w - v))?;
            Some(h.s.mul(eta).truncated(hi2))
        })
    };

    for a in (lam[0]..nu[0]).rev() {
        let Some((_, rho2)) = family.get(&a) else { continue };
        if f1.contains(&a) {
            for &v in &seen2 {
                values.insert(vec![a, v]);
            }
            continue;
        }
        let mut rho = rho2.clone();
        let mut trace = Vec::new();
        let w2 = loop {
            let w = rho.order().unwrap_or(hi2);
            trace.push(w);
            if w >= nu[1] {
                return Err(Error::Algorithm(format!(
                    "level {a}: second value reached the corner ({trace:?}) although {a} is not on the face"
                )));
            }
            if !seen2.contains(&w) {
                break w;
            }
            let omega = witness(w, &witnesses).ok_or_else(|| {
                Error::Algorithm(format!("level {a}: no witness for second value {w} (trace {trace:?})"))
            })?;
            let c = rho.coeff(w).try_div(&omega.coeff(w))?;
            rho = rho.sub(&omega.scale(&c));
        };
        values.insert(vec![a, w2]);
        for &v in seen2.range(..=w2) {
            values.insert(vec![a, v]);
        }
        seen2.insert(w2);
        witnesses.push(rho);
    }
    ValueSet::new(lam, nu, values)
        .map_err(|e| Error::Invariant(format!("two-branch algorithm produced an inconsistent value set: {e}")))
}
