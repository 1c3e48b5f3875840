//! Value sets as finite objects, and the combinatorics on them.
//!
//! A value set `S ⊆ Z^p` of a fractional ideal satisfies
//! `ν + N^p ⊆ S ⊆ λ + N^p` and `v ∈ S ⟺ inf(v, ν) ∈ S` for `v ≥ λ`, so it
//! is determined by the finite box `S ∩ [λ, ν]`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Coord, MultiValue};

pub type Point = Vec<i64>;

#[derive(Deserialize)]
struct RawValueSet {
    lambda: Point,
    nu: Point,
    #[serde(rename = "box")]
    box_values: BTreeSet<Point>,
}

/// Finite description `(λ, ν, S ∩ [λ, ν])` of a value set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawValueSet")]
pub struct ValueSet {
    lambda: Point,
    nu: Point,
    #[serde(rename = "box")]
    box_values: BTreeSet<Point>,
}

impl TryFrom<RawValueSet> for ValueSet {
    type Error = Error;
    fn try_from(r: RawValueSet) -> Result<Self> {
        ValueSet::new(r.lambda, r.nu, r.box_values)
    }
}

impl ValueSet {
    pub fn new(lambda: Point, nu: Point, box_values: BTreeSet<Point>) -> Result<Self> {
        if lambda.is_empty() || lambda.len() != nu.len() {
            return Err(Error::ShapeMismatch("lambda and nu must have the same positive length".into()));
        }
        if lambda.iter().zip(&nu).any(|(l, n)| l > n) {
            return Err(Error::InvalidInput(format!("lambda {lambda:?} is not below nu {nu:?}")));
        }
        for v in &box_values {
            if v.len() != lambda.len() || !le(&lambda, v) || !le(v, &nu) {
                return Err(Error::InvalidInput(format!("box value {v:?} outside [{lambda:?}, {nu:?}]")));
            }
        }
        if !box_values.contains(&nu) {
            return Err(Error::InvalidInput(format!("nu {nu:?} must itself be a value")));
        }
        Ok(ValueSet { lambda, nu, box_values })
    }

    /// `corner + N^p`.
    pub fn quadrant(corner: Point) -> Self {
        ValueSet { lambda: corner.clone(), nu: corner.clone(), box_values: [corner].into() }
    }

    pub fn p(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn nu(&self) -> &[i64] {
        &self.nu
    }

    pub fn box_values(&self) -> &BTreeSet<Point> {
        &self.box_values
    }

    /// Membership of an arbitrary lattice point.
    pub fn contains(&self, v: &[i64]) -> bool {
        le(&self.lambda, v) && self.box_values.contains(&inf(v, &self.nu))
    }

    /// Membership of a value with possibly infinite coordinates (values of zero divisors).
    pub fn contains_value(&self, u: &MultiValue) -> bool {
        let clipped: Option<Point> = u
            .0
            .iter()
            .zip(&self.nu)
            .map(|(c, n)| match c {
                Coord::Fin(x) => Some(*x),
                Coord::Inf => Some(*n),
            })
            .collect();
        u.0.iter().any(|c| matches!(c, Coord::Fin(_))) && clipped.is_some_and(|v| self.contains(&v))
    }

    pub fn shifted(&self, k: &[i64]) -> Self {
        ValueSet {
            lambda: add(&self.lambda, k),
            nu: add(&self.nu, k),
            box_values: self.box_values.iter().map(|v| add(v, k)).collect(),
        }
    }

    /// Same set described on a larger window `[lambda, nu]`.
    pub fn rewindowed(&self, lambda: &[i64], nu: &[i64]) -> Result<Self> {
        if !le(lambda, &self.lambda) || !le(&self.nu, nu) {
            return Err(Error::InvalidInput("new window must contain the old one".into()));
        }
        let box_values = points(lambda, nu).filter(|v| self.contains(v)).collect();
        ValueSet::new(lambda.to_vec(), nu.to_vec(), box_values)
    }

    /// Equality as subsets of `Z^p`, independent of the chosen window.
    pub fn same_values(&self, other: &ValueSet) -> bool {
        if self.p() != other.p() {
            return false;
        }
        let lo = inf(&self.lambda, &other.lambda);
        let hi = sup(&self.nu, &other.nu);
        points(&lo, &hi).all(|v| self.contains(&v) == other.contains(&v))
    }

    /// The first point where membership differs, if any.
    pub fn first_difference(&self, other: &ValueSet) -> Option<Point> {
        let lo = inf(&self.lambda, &other.lambda);
        let hi = sup(&self.nu, &other.nu);
        points(&lo, &hi).find(|v| self.contains(v) != other.contains(v))
    }

    /// Minimal value set window, shrinking `ν` and growing `λ` as far as possible.
    pub fn normalized(&self) -> Self {
        let lambda: Point = (0..self.p()).map(|j| self.box_values.iter().map(|v| v[j]).min().unwrap()).collect();
        let mut nu = self.nu.clone();
        for j in 0..self.p() {
            while nu[j] > lambda[j] {
                let mut trial = nu.clone();
                trial[j] -= 1;
                if points(&lambda, &trial).all(|v| {
                    if v[j] != trial[j] {
                        return true;
                    }
                    let mut up = v.clone();
                    up[j] += 1;
                    self.contains(&v) == self.contains(&up)
                }) && self.contains(&trial)
                {
                    nu = trial;
                } else {
                    break;
                }
            }
        }
        let box_values = points(&lambda, &nu).filter(|v| self.contains(v)).collect();
        ValueSet { lambda, nu, box_values }
    }

    /// Compact text form: for one branch the values below `ν` and `ν+`.
    pub fn describe(&self) -> String {
        if self.p() == 1 {
            let small: Vec<String> =
                self.box_values.iter().filter(|v| v[0] < self.nu[0]).map(|v| v[0].to_string()).collect();
            let mut s = small.join(", ");
            if !s.is_empty() {
                s.push_str(", ");
            }
            format!("{{{s}{}, ...}}", self.nu[0])
        } else {
            let pts: Vec<String> = self.box_values.iter().map(|v| format!("{v:?}")).collect();
            format!("lambda={:?} nu={:?} box={{{}}}", self.lambda, self.nu, pts.join(", "))
        }
    }
}

pub(crate) fn le(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn inf(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
}

pub(crate) fn sup(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn offset(a: &[i64], k: i64) -> Point {
    a.iter().map(|x| x + k).collect()
}

/// Lattice points of `[lo, hi]` in lexicographic order.
pub fn points(lo: &[i64], hi: &[i64]) -> impl Iterator<Item = Point> {
    let lo = lo.to_vec();
    let hi = hi.to_vec();
    let empty = lo.iter().zip(&hi).any(|(l, h)| l > h);
    let mut cur = if empty { None } else { Some(lo.clone()) };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut j = next.len();
        loop {
            if j == 0 {
                cur = None;
                break;
            }
            j -= 1;
            if next[j] < hi[j] {
                next[j] += 1;
                cur = Some(next);
                break;
            }
            next[j] = lo[j];
        }
        Some(out)
    })
}

/// Values `α` with `α_i = v_i` and `α_j` in the given per-coordinate ranges,
/// clipped where membership no longer changes.
fn slab<'a>(s: &'a ValueSet, v: &[i64], i: usize, strict: bool) -> impl Iterator<Item = Point> + 'a {
    let p = s.p();
    let lo: Point = (0..p).map(|j| if j == i { v[i] } else if strict { v[j] + 1 } else { v[j] }).collect();
    let hi: Point = (0..p).map(|j| if j == i { v[i] } else { lo[j].max(s.nu[j]) }).collect();
    points(&lo, &hi).filter(move |a| s.contains(a))
}

/// `Δ_i(v) = {α ∈ S : α_i = v_i, α_j > v_j (j ≠ i)}` (or the union over `i`
/// when `which` is `None`), returned as representatives: every element of
/// `Δ` agrees with one of them after clipping at `sup(v + 1, ν)`.
pub fn delta_set(v: &[i64], s: &ValueSet, which: Option<usize>) -> Vec<Point> {
    match which {
        Some(i) => slab(s, v, i, true).collect(),
        None => (0..s.p()).flat_map(|i| slab(s, v, i, true).collect::<Vec<_>>()).collect(),
    }
}

pub fn delta_is_empty(v: &[i64], s: &ValueSet) -> bool {
    (0..s.p()).all(|i| slab(s, v, i, true).next().is_none())
}

/// Is `Λ_i(v) = {α ∈ S : α_i = v_i, α ≥ v}` nonempty?
pub fn lambda_nonempty(v: &[i64], s: &ValueSet, i: usize) -> bool {
    slab(s, v, i, false).next().is_some()
}

/// `v ∈ S`, using only the box.
pub fn extend_membership(s: &ValueSet, v: &[i64]) -> bool {
    s.contains(v)
}

/// Values of zero divisors inside the box: `∞` on a nonempty proper subset
/// of the coordinates where a box value reaches `ν`.
pub fn zero_divisor_values(s: &ValueSet) -> BTreeSet<MultiValue> {
    let p = s.p();
    let mut out = BTreeSet::new();
    for v in &s.box_values {
        let at_nu: Vec<usize> = (0..p).filter(|&j| v[j] == s.nu[j]).collect();
        for mask in 1u32..(1 << at_nu.len()) {
            if mask.count_ones() as usize == p {
                continue;
            }
            let mut u: Vec<Coord> = v.iter().map(|&x| Coord::Fin(x)).collect();
            for (b, &j) in at_nu.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    u[j] = Coord::Inf;
                }
            }
            out.insert(MultiValue(u));
        }
    }
    out
}

/// Value set from its part in the non-positive orthant (which must contain 0).
pub fn negative_window_reconstruct(window: &BTreeSet<Point>, p: usize) -> Result<ValueSet> {
    let zero = vec![0; p];
    if !window.contains(&zero) {
        return Err(Error::InvalidInput("the origin must be a value".into()));
    }
    if window.iter().any(|v| v.len() != p || v.iter().any(|&x| x > 0)) {
        return Err(Error::InvalidInput("window values must be non-positive".into()));
    }
    let lambda = (0..p).map(|j| window.iter().map(|v| v[j]).min().unwrap()).collect();
    ValueSet::new(lambda, zero, window.clone())
}

/// `ℓ(v) = dim I / I_v`, tabulated on `[λ, ν]` and extended outside.
#[derive(Clone, Debug)]
pub struct EllTable {
    set: ValueSet,
    table: BTreeMap<Point, i64>,
}

impl EllTable {
    pub fn new(s: &ValueSet) -> Self {
        let mut table: BTreeMap<Point, i64> = BTreeMap::new();
        for w in points(&s.lambda, &s.nu) {
            let val = match (0..s.p()).find(|&i| w[i] > s.lambda[i]) {
                None => 0,
                Some(i) => {
                    let mut prev = w.clone();
                    prev[i] -= 1;
                    table[&prev] + i64::from(lambda_nonempty(&prev, s, i))
                }
            };
            table.insert(w, val);
        }
        EllTable { set: s.clone(), table }
    }

    pub fn ell(&self, v: &[i64]) -> i64 {
        let v = sup(v, &self.set.lambda);
        let u = inf(&v, &self.set.nu);
        self.table[&u] + v.iter().zip(&u).map(|(a, b)| a - b).sum::<i64>()
    }

    /// `c(v) = ℓ(v + 1) - ℓ(v)`.
    pub fn c(&self, v: &[i64]) -> i64 {
        self.ell(&offset(v, 1)) - self.ell(v)
    }

    pub fn set(&self) -> &ValueSet {
        &self.set
    }
}

pub fn ell(s: &ValueSet, v: &[i64]) -> i64 {
    EllTable::new(s).ell(v)
}

/// `ℓ` summed along a lattice path of unit steps starting at or below `λ`.
pub fn ell_along_path(s: &ValueSet, path: &[Point]) -> Result<i64> {
    let start = path.first().ok_or_else(|| Error::InvalidInput("empty path".into()))?;
    if !le(start, &s.lambda) {
        return Err(Error::InvalidInput("path must start below lambda".into()));
    }
    let mut total = 0;
    for w in path.windows(2) {
        let d = sub(&w[1], &w[0]);
        let Some(i) = d.iter().position(|&x| x == 1).filter(|_| d.iter().map(|x| x.abs()).sum::<i64>() == 1) else {
            return Err(Error::InvalidInput("path steps must be unit vectors".into()));
        };
        total += i64::from(lambda_nonempty(&w[0], s, i));
    }
    Ok(total)
}

/// `dim J / I` for value sets with `I ⊆ J`.
pub fn colength(i: &ValueSet, j: &ValueSet) -> i64 {
    let w = sup(i.nu(), j.nu());
    EllTable::new(j).ell(&w) - EllTable::new(i).ell(&w)
}

/// Values of the dual ideal for a Gorenstein curve with conductor `γ`:
/// `v ∈ S^∨ ⟺ Δ(γ - v - 1, S) = ∅`.
pub fn dual_by_symmetry(s: &ValueSet, gamma: &[i64]) -> ValueSet {
    let lambda = sub(gamma, &s.nu);
    let nu = sub(gamma, &s.lambda);
    let box_values = points(&lambda, &nu)
        .filter(|v| delta_is_empty(&offset(&sub(gamma, v), -1), s))
        .collect();
    ValueSet { lambda, nu, box_values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node_od() -> ValueSet {
        ValueSet::new(vec![0, 0], vec![1, 1], [vec![0, 0], vec![1, 1]].into()).unwrap()
    }

    #[test]
    fn cusp_semigroup_membership() {
        let s = ValueSet::new(vec![0], vec![2], [vec![0], vec![2]].into()).unwrap();
        let got: Vec<i64> = (-1..6).filter(|&v| s.contains(&[v])).collect();
        assert_eq!(got, vec![0, 2, 3, 4, 5]);
        assert_eq!(EllTable::new(&s).ell(&[2]), 1);
    }

    #[test]
    fn node_combinatorics() {
        let s = node_od();
        assert!(s.contains(&[1, 5]) && s.contains(&[3, 1]) && !s.contains(&[0, 1]));
        let z = zero_divisor_values(&s);
        let expected: BTreeSet<MultiValue> = [
            MultiValue(vec![Coord::Fin(1), Coord::Inf]),
            MultiValue(vec![Coord::Inf, Coord::Fin(1)]),
        ]
        .into();
        assert_eq!(z, expected);
        assert!(delta_is_empty(&[0, 0], &s));
        assert!(!delta_is_empty(&[0, -1], &s));
        assert_eq!(dual_by_symmetry(&s, &[1, 1]), s);
        assert_eq!(EllTable::new(&s).ell(&[1, 1]), 1);
    }

    #[test]
    fn window_roundtrip() {
        let s = node_od();
        let big = s.rewindowed(&[-1, -1], &[3, 2]).unwrap();
        assert!(big.same_values(&s));
        assert_eq!(big.normalized(), s);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<ValueSet>(&json).unwrap(), s);
        assert!(serde_json::from_str::<ValueSet>(r#"{"lambda":[0],"nu":[2],"box":[[0]]}"#).is_err());
    }

    #[test]
    fn negative_part_determines_residues() {
        let w: BTreeSet<Point> = [vec![-1], vec![0]].into();
        let s = negative_window_reconstruct(&w, 1).unwrap();
        assert!(s.contains(&[-1]) && s.contains(&[7]) && !s.contains(&[-2]));
    }
}
