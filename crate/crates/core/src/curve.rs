//! Reduced curve germs given by branch parametrizations.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::coeffs::{same_field, Field, FieldElement};
use crate::error::{Error, Result};
use crate::linalg::{rank, Echelon};
use crate::poly::Poly;
use crate::series::{SeriesVector, TruncatedSeries};
use crate::span::{module_rows, value_closure, BranchCoords, Tagged, Window};

/// Default extra precision on top of the stabilization estimate.
pub const DEFAULT_SLACK: i64 = 8;
/// Default starting truncation when branches are lifted from seeds.
pub const DEFAULT_TRUNCATION: i64 = 32;
const MAX_TRUNCATION: i64 = 4096;

/// A primitive parametrization `t -> (x_1(t), ..., x_m(t))` of one branch.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchParam {
    coords: Vec<TruncatedSeries>,
    multiplicity: i64,
}

impl BranchParam {
    pub fn new(coords: Vec<TruncatedSeries>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::MalformedCurve("a branch needs at least two coordinates".into()));
        }
        let field = coords[0].field().clone();
        if coords.iter().any(|c| !same_field(c.field(), &field)) {
            return Err(Error::FieldMismatch);
        }
        for (k, c) in coords.iter().enumerate() {
            if let Some(o) = c.order() {
                if o < 1 {
                    return Err(Error::MalformedCurve(format!(
                        "coordinate {k} has order {o}; coordinates must vanish at the origin"
                    )));
                }
            }
        }
        let multiplicity = coords
            .iter()
            .filter_map(|c| c.order())
            .min()
            .ok_or_else(|| Error::MalformedCurve("every coordinate vanishes identically".into()))?;
        let g = coords.iter().flat_map(|c| c.terms().map(|(e, _)| e)).fold(0i64, |g, e| g.gcd(&e));
        if g != 1 {
            return Err(Error::MalformedCurve(format!(
                "parametrization is not primitive: all exponents divisible by {g}"
            )));
        }
        Ok(BranchParam { coords, multiplicity })
    }

    pub fn coords(&self) -> &[TruncatedSeries] {
        &self.coords
    }

    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    /// Smallest truncation among the coordinates.
    pub fn trunc(&self) -> i64 {
        self.coords.iter().map(|c| c.trunc()).min().unwrap()
    }
}

/// Leading Puiseux data for Hensel lifting on a plane curve.
///
/// Each coordinate is a finite list of `(exponent, coefficient)`. All
/// coordinates except `solve_for` are kept exactly; the solved one is
/// completed to a root of the equation.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchSeed {
    pub coords: Vec<Vec<(i64, FieldElement)>>,
    pub solve_for: Option<usize>,
}

/// Defining equations attached to a curve.
#[derive(Clone, Debug, PartialEq)]
pub enum Equations {
    None,
    /// `f_i` vanishing on branch `i`; the curve is `f = prod f_i`.
    PerBranch(Vec<Poly>),
    /// Only the reduced equation of the whole germ.
    Full(Poly),
}

/// Where a branch parametrization comes from.
#[derive(Clone, Debug)]
pub enum BranchSource {
    Explicit(BranchParam),
    Seed { seed: BranchSeed, equation: Poly },
    /// `x^a - y^b + (terms above the weighted diagonal)` with `gcd(a, b) = 1`.
    SemiQuasiHomogeneous { equation: Poly },
}

impl BranchSource {
    fn liftable(&self) -> bool {
        !matches!(self, BranchSource::Explicit(_))
    }

    fn realize(&self, n: i64) -> Result<BranchParam> {
        match self {
            BranchSource::Explicit(b) => Ok(b.clone()),
            BranchSource::Seed { seed, equation } => hensel_lift_branch(equation, seed, n),
            BranchSource::SemiQuasiHomogeneous { equation } => sqh_parametrize(equation, n),
        }
    }
}

/// Numerical semigroup of a branch, below its conductor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSemigroup {
    pub multiplicity: i64,
    pub conductor: i64,
    /// Elements of the semigroup in `[0, conductor)`.
    pub small: Vec<i64>,
}

impl BranchSemigroup {
    pub fn contains(&self, v: i64) -> bool {
        v >= self.conductor || self.small.binary_search(&v).is_ok()
    }

    /// Number of gaps.
    pub fn delta(&self) -> i64 {
        self.conductor - self.small.len() as i64
    }
}

/// How the conductor was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConductorRoute {
    SingleBranch,
    IntersectionFormula,
    DirectSearch,
}

/// A reduced curve germ with `p` branches in `m`-space.
#[derive(Clone, Debug)]
pub struct Curve {
    field: Field,
    branches: Vec<BranchParam>,
    equations: Equations,
    semigroups: Vec<BranchSemigroup>,
    intersections: Option<Vec<Vec<i64>>>,
    gamma: Vec<i64>,
    conductor_route: ConductorRoute,
    delta: i64,
    stabilization: i64,
    slack: i64,
}

impl Curve {
    /// Builds a curve from parametrizations; invariants are computed eagerly.
    pub fn new(field: &Field, branches: Vec<BranchParam>, equations: Equations) -> Result<Self> {
        Self::with_slack(field, branches, equations, DEFAULT_SLACK)
    }

    pub fn with_slack(field: &Field, branches: Vec<BranchParam>, equations: Equations, slack: i64) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::MalformedCurve("a curve needs at least one branch".into()));
        }
        let m = branches[0].ambient_dim();
        for b in &branches {
            if !same_field(b.field(), field) {
                return Err(Error::FieldMismatch);
            }
            if b.ambient_dim() != m {
                return Err(Error::MalformedCurve("branches live in different ambient dimensions".into()));
            }
        }
        let p = branches.len();
        match &equations {
            Equations::PerBranch(fs) if fs.len() != p => {
                return Err(Error::MalformedCurve(format!("{} equations for {p} branches", fs.len())))
            }
            Equations::PerBranch(fs) => {
                for (i, f) in fs.iter().enumerate() {
                    check_vanishes(f, &branches[i], i)?;
                }
            }
            Equations::Full(f) => {
                for (i, b) in branches.iter().enumerate() {
                    check_vanishes(f, b, i)?;
                }
            }
            Equations::None => {}
        }
        if !matches!(equations, Equations::None) && m != 2 {
            return Err(Error::MalformedCurve("equations are only supported for plane curves".into()));
        }
        let semigroups = branches.iter().map(branch_semigroup).collect::<Result<Vec<_>>>()?;
        let mut curve = Curve {
            field: field.clone(),
            branches,
            equations,
            semigroups,
            intersections: None,
            gamma: Vec::new(),
            conductor_route: ConductorRoute::SingleBranch,
            delta: 0,
            stabilization: 0,
            slack,
        };
        if p == 1 {
            curve.gamma = vec![curve.semigroups[0].conductor];
        } else if let Equations::PerBranch(fs) = &curve.equations {
            let mut table = vec![vec![0i64; p]; p];
            for i in 0..p {
                for j in 0..p {
                    if i != j {
                        table[i][j] = order_on_branch(&fs[j], &curve.branches[i], i)?;
                    }
                }
            }
            curve.gamma = conductor_delgado_table(&curve.semigroups, &table);
            curve.intersections = Some(table);
            curve.conductor_route = ConductorRoute::IntersectionFormula;
        } else {
            curve.gamma = conductor_search(&curve)?;
            curve.conductor_route = ConductorRoute::DirectSearch;
        }
        let max_gamma = *curve.gamma.iter().max().unwrap();
        let max_mult = curve.branches.iter().map(|b| b.multiplicity).max().unwrap();
        curve.stabilization = 2 * max_gamma + max_mult + slack;
        let have = curve.branches.iter().map(|b| b.trunc()).min().unwrap();
        if have < curve.stabilization {
            return Err(Error::truncation("curve invariants", curve.stabilization, have));
        }
        curve.delta = curve.gamma.iter().sum::<i64>() - colength_of_conductor(&curve)?;
        Ok(curve)
    }

    /// Realizes branch sources at a truncation, raising it until the
    /// invariants stabilize (seeded branches only).
    pub fn from_sources(field: &Field, sources: &[BranchSource], equations: Equations, truncation: Option<i64>) -> Result<Self> {
        let liftable = sources.iter().any(BranchSource::liftable);
        let mut n = truncation.unwrap_or(DEFAULT_TRUNCATION);
        loop {
            let attempt = sources
                .iter()
                .map(|s| s.realize(n))
                .collect::<Result<Vec<_>>>()
                .and_then(|bs| Curve::new(field, bs, equations.clone()));
            match attempt {
                Err(e) if e.is_truncation() && liftable && n < MAX_TRUNCATION => {
                    let needed = match e {
                        Error::Truncation { needed, .. } | Error::IndeterminateOrder { needed, .. } => needed,
                        _ => unreachable!(),
                    };
                    n = needed.max(2 * n).min(MAX_TRUNCATION);
                }
                other => return other,
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> usize {
        self.branches.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.branches[0].ambient_dim()
    }

    pub fn is_plane(&self) -> bool {
        self.ambient_dim() == 2
    }

    pub fn branches(&self) -> &[BranchParam] {
        &self.branches
    }

    pub fn equations(&self) -> &Equations {
        &self.equations
    }

    /// The reduced equation `f = prod f_i`, when known.
    pub fn full_equation(&self) -> Option<Poly> {
        match &self.equations {
            Equations::None => None,
            Equations::Full(f) => Some(f.clone()),
            Equations::PerBranch(fs) => Some(fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.mul(f))),
        }
    }

    pub fn semigroups(&self) -> &[BranchSemigroup] {
        &self.semigroups
    }

    /// `(f_j . phi_i)` orders, when per-branch equations are known.
    pub fn intersections(&self) -> Option<&Vec<Vec<i64>>> {
        self.intersections.as_ref()
    }

    pub fn gamma(&self) -> &[i64] {
        &self.gamma
    }

    pub fn conductor_route(&self) -> ConductorRoute {
        self.conductor_route
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// Milnor number `2 delta - p + 1`.
    pub fn mu(&self) -> i64 {
        2 * self.delta - self.p() as i64 + 1
    }

    /// Truncation beyond which a vanishing component is treated as zero.
    pub fn stabilization(&self) -> i64 {
        self.stabilization
    }

    pub fn slack(&self) -> i64 {
        self.slack
    }

    /// `dim O/C = dim Õ/O`; automatic for plane curves.
    pub fn is_gorenstein(&self) -> bool {
        2 * self.delta == self.gamma.iter().sum::<i64>()
    }

    pub(crate) fn branch_coords(&self) -> BranchCoords {
        self.branches.iter().map(|b| b.coords.clone()).collect()
    }

    /// A polynomial evaluated on every branch.
    pub fn eval(&self, f: &Poly) -> Result<SeriesVector> {
        SeriesVector::new(self.branches.iter().map(|b| f.eval_series(&b.coords)).collect::<Result<Vec<_>>>()?)
    }

    /// A linear form `sum c_k x_k` with the smallest possible order on every branch.
    pub(crate) fn generic_linear_form(&self) -> Result<(Poly, Vec<i64>)> {
        let m = self.ambient_dim();
        let mult: Vec<i64> = self.branches.iter().map(|b| b.multiplicity).collect();
        for shift in 0..64i64 {
            let f = Poly::from_terms(
                &self.field,
                m,
                (0..m).map(|k| {
                    let mut e = vec![0; m];
                    e[k] = 1;
                    (e, FieldElement::from_int(&self.field, 1 + (k as i64 + 1) * shift))
                }),
            )?;
            let v = self.eval(&f)?;
            let vals: Vec<Option<i64>> = v.comps().iter().map(|s| s.order()).collect();
            if vals.iter().zip(&mult).all(|(o, m)| *o == Some(*m)) {
                return Ok((f, mult));
            }
        }
        Err(Error::Algorithm("no generic linear form found".into()))
    }
}

fn check_vanishes(f: &Poly, b: &BranchParam, i: usize) -> Result<()> {
    let r = f.eval_series(b.coords())?;
    match r.order() {
        None => Ok(()),
        Some(o) => Err(Error::MalformedCurve(format!(
            "equation {f} does not vanish on branch {i}: term of order {o} below truncation {}",
            r.trunc()
        ))),
    }
}

fn order_on_branch(f: &Poly, b: &BranchParam, i: usize) -> Result<i64> {
    let r = f.eval_series(b.coords())?;
    match r.order() {
        Some(o) => Ok(o),
        None if r.is_exact() => Err(Error::MalformedCurve(format!("equation {f} vanishes on branch {i}"))),
        None => Err(Error::IndeterminateOrder { branch: i, trunc: r.trunc(), needed: 2 * r.trunc() }),
    }
}

/// Semigroup of values of `O_{D_i}` and its conductor.
pub fn branch_semigroup(branch: &BranchParam) -> Result<BranchSemigroup> {
    let field = branch.field().clone();
    let m = branch.multiplicity;
    let have = branch.trunc();
    let mut hi = (4 * m).max(8);
    loop {
        let hi_eff = hi.min(have);
        let one = Tagged { s: TruncatedSeries::one(&field), tag: None };
        let basis = value_closure(branch.coords(), vec![one], hi_eff, "branch semigroup")?;
        let keys: Vec<i64> = basis.keys().copied().collect();
        let tail_full = (hi_eff - m..hi_eff).all(|v| basis.contains_key(&v));
        if tail_full {
            let mut c = hi_eff - m;
            while c > 0 && basis.contains_key(&(c - 1)) {
                c -= 1;
            }
            let small = keys.into_iter().filter(|&v| v < c).collect();
            return Ok(BranchSemigroup { multiplicity: m, conductor: c, small });
        }
        if hi_eff >= have {
            return Err(Error::truncation("branch semigroup", 2 * hi_eff, have));
        }
        hi *= 2;
    }
}

/// `gamma_j = c_j + sum_{i != j} (f_i . f_j)` for plane curves.
fn conductor_delgado_table(semigroups: &[BranchSemigroup], table: &[Vec<i64>]) -> Vec<i64> {
    (0..semigroups.len())
        .map(|j| semigroups[j].conductor + (0..semigroups.len()).filter(|&i| i != j).map(|i| table[j][i]).sum::<i64>())
        .collect()
}

/// Conductor from intersection multiplicities; needs per-branch equations.
pub fn conductor_delgado(curve: &Curve) -> Result<Vec<i64>> {
    let Equations::PerBranch(fs) = curve.equations() else {
        return Err(Error::InvalidInput("per-branch equations are required".into()));
    };
    let p = curve.p();
    let mut table = vec![vec![0i64; p]; p];
    for i in 0..p {
        for j in 0..p {
            if i != j {
                table[i][j] = order_on_branch(&fs[j], &curve.branches[i], i)?;
            }
        }
    }
    Ok(conductor_delgado_table(&curve.semigroups, &table))
}

/// `(f_i . f_j) = ord_t f_j(phi_i(t))`.
pub fn intersection_multiplicity(curve: &Curve, i: usize, j: usize) -> Result<i64> {
    let Equations::PerBranch(fs) = curve.equations() else {
        return Err(Error::InvalidInput("per-branch equations are required".into()));
    };
    if i >= curve.p() || j >= curve.p() || i == j {
        return Err(Error::InvalidInput(format!("branch pair ({i}, {j}) out of range")));
    }
    order_on_branch(&fs[j], &curve.branches[i], i)
}

/// `(delta, mu)`.
pub fn delta_mu(curve: &Curve) -> (i64, i64) {
    (curve.delta(), curve.mu())
}

/// `dim O_D / t^gamma Õ`.
fn colength_of_conductor(curve: &Curve) -> Result<i64> {
    let p = curve.p();
    let window = Window::new(vec![0; p], curve.gamma.clone());
    let one = SeriesVector::diagonal(TruncatedSeries::one(&curve.field), p);
    let rows = module_rows(&curve.branch_coords(), &[one], &window, "delta")?;
    Ok(rank(&curve.field, rows, window.ncols()) as i64)
}

/// Does `t^w Õ` lie in `O_D`? Decided modulo `t^(w + v)` with `v` the value
/// of a generic linear form.
fn conductor_test(curve: &Curve, w: &[i64], v: &[i64]) -> Result<bool> {
    let p = curve.p();
    let hi: Vec<i64> = w.iter().zip(v).map(|(a, b)| a + b).collect();
    let window = Window::new(vec![0; p], hi.clone());
    let one = SeriesVector::diagonal(TruncatedSeries::one(&curve.field), p);
    let rows = module_rows(&curve.branch_coords(), &[one], &window, "conductor search")?;
    let mut ech = Echelon::new(&curve.field, window.ncols());
    for r in rows {
        ech.insert(r);
    }
    let base = ech.rank();
    for j in 0..p {
        for e in w[j]..hi[j] {
            let mut row = vec![FieldElement::zero(&curve.field); window.ncols()];
            row[window.col(j, e)] = FieldElement::one(&curve.field);
            ech.insert(row);
            if ech.rank() != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Conductor exponent by a finite search, valid for any embedding dimension.
pub fn conductor_search(curve: &Curve) -> Result<Vec<i64>> {
    let p = curve.p();
    let lower: Vec<i64> = curve.semigroups.iter().map(|s| s.conductor).collect();
    if p == 1 {
        return Ok(lower);
    }
    let (_, v) = curve.generic_linear_form()?;
    let have = curve.branches.iter().map(|b| b.trunc()).min().unwrap();
    let mut step = 1i64;
    let mut w: Vec<i64>;
    loop {
        w = lower.iter().map(|c| c + step).collect();
        let need = w.iter().zip(&v).map(|(a, b)| a + b).max().unwrap();
        if need > have {
            return Err(Error::truncation("conductor search", 2 * need, have));
        }
        if conductor_test(curve, &w, &v)? {
            break;
        }
        step *= 2;
    }
    for j in 0..p {
        let (mut lo, mut hi) = (lower[j], w[j]);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let mut trial = w.clone();
            trial[j] = mid;
            if conductor_test(curve, &trial, &v)? {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        w[j] = hi;
    }
    Ok(w)
}

/// Completes a seed to a root of `f`, correct modulo `t^n` in the solved coordinate.
pub fn hensel_lift_branch(f: &Poly, seed: &BranchSeed, n: i64) -> Result<BranchParam> {
    if f.nvars() != 2 || seed.coords.len() != 2 {
        return Err(Error::InvalidInput("Hensel lifting needs a plane curve and a two-coordinate seed".into()));
    }
    let field = f.field().clone();
    let s = seed.solve_for.unwrap_or(1);
    if s > 1 {
        return Err(Error::InvalidInput(format!("solve_for = {s} out of range")));
    }
    let exact: Vec<TruncatedSeries> = seed.coords.iter().map(|c| TruncatedSeries::exact(&field, c.iter().cloned())).collect();
    if f.eval_series(&exact)?.is_zero() {
        return BranchParam::new(exact);
    }
    let fs = f.derivative(s);
    let mut y: BTreeMap<i64, FieldElement> = seed.coords[s].iter().filter(|&(_, c)| !c.is_zero()).cloned().collect();
    let at = |y: &BTreeMap<i64, FieldElement>, prec: i64| -> Vec<TruncatedSeries> {
        let ys = TruncatedSeries::exact(&field, y.iter().map(|(e, c)| (*e, c.clone()))).truncated(prec);
        let mut v = exact.iter().map(|c| c.truncated(prec)).collect::<Vec<_>>();
        v[s] = ys;
        v
    };
    // Order of the derivative along the branch; constant once the seed is close enough.
    let probe = fs.eval_series(&at(&y, 4 * n.max(8)))?;
    let e = probe
        .order()
        .ok_or_else(|| Error::NotLiftable("the derivative vanishes along the seed".into()))?;
    let prec = n + e;
    let mut last = i64::MIN;
    for _ in 0..256 {
        let point = at(&y, prec);
        let r = f.eval_series(&point)?;
        let Some(ord) = r.order().filter(|&o| o < prec) else {
            let mut coords = exact.clone();
            coords[s] = TruncatedSeries::new(&field, 0, n, y.into_iter().filter(|(k, _)| *k < n))?;
            return BranchParam::new(coords);
        };
        if ord <= last || ord <= e {
            return Err(Error::NotLiftable(format!("residual order stalls at {ord} (derivative order {e})")));
        }
        last = ord;
        let d = fs.eval_series(&point)?;
        if d.order() != Some(e) {
            return Err(Error::NotLiftable("derivative order changes during lifting".into()));
        }
        let corr = r.mul(&d.invert_unit()?);
        for (k, c) in corr.terms() {
            if k >= n {
                break;
            }
            let entry = y.entry(k).or_insert_with(|| FieldElement::zero(&field));
            *entry = &*entry - c;
            if entry.is_zero() {
                y.remove(&k);
            }
        }
    }
    Err(Error::NotLiftable("no convergence after 256 Newton steps".into()))
}

/// Exponents `(a, b)` of `x^a - y^b + ...` when the equation is semi-quasi-homogeneous.
pub fn sqh_exponents(f: &Poly) -> Result<(u32, u32)> {
    if f.nvars() != 2 {
        return Err(Error::InvalidInput("semi-quasi-homogeneous equations are plane".into()));
    }
    let mut a = None;
    let mut b = None;
    for (e, c) in f.terms() {
        if e[1] == 0 && e[0] > 0 {
            if a.is_some() || !c.is_one() {
                return Err(Error::InvalidInput("expected exactly one pure x term, with coefficient 1".into()));
            }
            a = Some(e[0]);
        }
        if e[0] == 0 && e[1] > 0 {
            if b.is_some() || !(-c).is_one() {
                return Err(Error::InvalidInput("expected exactly one pure y term, with coefficient -1".into()));
            }
            b = Some(e[1]);
        }
    }
    let (Some(a), Some(b)) = (a, b) else {
        return Err(Error::InvalidInput("missing x^a or y^b term".into()));
    };
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidInput(format!("gcd({a}, {b}) != 1")));
    }
    for (e, _) in f.terms() {
        let w = e[0] * b + e[1] * a;
        if w < a * b || (w == a * b && e[0] != a && e[1] != b) {
            return Err(Error::InvalidInput(format!(
                "monomial x^{}*y^{} lies on or below the weighted diagonal",
                e[0], e[1]
            )));
        }
    }
    Ok((a, b))
}

/// Parametrization `x = t^b`, `y = t^a (1 + ...)` of `x^a - y^b + ...`.
pub fn sqh_parametrize(f: &Poly, n: i64) -> Result<BranchParam> {
    let (a, b) = sqh_exponents(f)?;
    let field = f.field();
    let one = FieldElement::one(field);
    let seed = BranchSeed { coords: vec![vec![(b as i64, one.clone())], vec![(a as i64, one)]], solve_for: Some(1) };
    hensel_lift_branch(f, &seed, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::FieldSpec;

    fn param(f: &Field, x: &[(i64, i64)], y: &[(i64, i64)]) -> BranchParam {
        BranchParam::new(vec![TruncatedSeries::from_ints(f, x), TruncatedSeries::from_ints(f, y)]).unwrap()
    }

    #[test]
    fn cusp_invariants() {
        let f = FieldSpec::rationals();
        let c = Curve::new(&f, vec![param(&f, &[(2, 1)], &[(3, 1)])], Equations::None).unwrap();
        assert_eq!(c.gamma(), &[2]);
        assert_eq!(delta_mu(&c), (1, 2));
        assert_eq!(c.semigroups()[0].small, vec![0]);
    }

    #[test]
    fn node_by_direct_search_and_formula() {
        let f = FieldSpec::rationals();
        let b = vec![param(&f, &[(1, 1)], &[]), param(&f, &[], &[(1, 1)])];
        let direct = Curve::new(&f, b.clone(), Equations::None).unwrap();
        assert_eq!(direct.gamma(), &[1, 1]);
        assert_eq!(direct.conductor_route(), ConductorRoute::DirectSearch);
        let eqs = Equations::PerBranch(vec![
            Poly::from_ints(&f, &[(vec![0, 1], 1)]),
            Poly::from_ints(&f, &[(vec![1, 0], 1)]),
        ]);
        let formula = Curve::new(&f, b, eqs).unwrap();
        assert_eq!(formula.gamma(), &[1, 1]);
        assert_eq!((formula.delta(), formula.mu()), (1, 1));
    }

    #[test]
    fn non_primitive_rejected() {
        let f = FieldSpec::rationals();
        let r = BranchParam::new(vec![TruncatedSeries::from_ints(&f, &[(2, 1)]), TruncatedSeries::from_ints(&f, &[(4, 1)])]);
        assert!(matches!(r, Err(Error::MalformedCurve(_))));
    }

    #[test]
    fn sqh_lift_satisfies_equation() {
        let f = FieldSpec::rationals();
        let eq = Poly::from_ints(&f, &[(vec![5, 0], 1), (vec![0, 6], -1), (vec![2, 4], 1)]);
        let b = sqh_parametrize(&eq, 40).unwrap();
        let r = eq.eval_series(b.coords()).unwrap();
        assert!(r.order().is_none());
        assert!(r.trunc() >= 40);
        assert_eq!(b.multiplicity(), 5);
    }

    #[test]
    fn space_curve_conductor() {
        // (t^4, t^5, t^6): semigroup <4,5,6>, conductor 8, symmetric
        let f = FieldSpec::rationals();
        let b = BranchParam::new(vec![
            TruncatedSeries::from_ints(&f, &[(4, 1)]),
            TruncatedSeries::from_ints(&f, &[(5, 1)]),
            TruncatedSeries::from_ints(&f, &[(6, 1)]),
        ])
        .unwrap();
        let c = Curve::new(&f, vec![b], Equations::None).unwrap();
        assert_eq!(c.gamma(), &[8]);
        assert_eq!(c.delta(), 4);
        assert!(c.is_gorenstein());
    }
}
