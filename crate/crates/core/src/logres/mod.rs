//! Values of the Jacobian ideal, of Kähler differentials and of logarithmic
//! residues, and the invariants `τ`, `μ` derived from them.
//!
//! Residues are reached through duality: `R_D = J_D^∨`, and on the value
//! side `v ∈ val(R_D)` exactly when `Δ(-v, val(Ω¹_D))` is empty.

mod local;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Equations};
use crate::error::{Error, Result};
use crate::ideal::{
    dual_direct, dual_values_symmetry, kahler_generators, value_algo_p1, value_algo_p2, value_set_rank_oracle,
    FractionalIdeal, Preset,
};
use crate::lattice::{self, add, colength, inf, offset, points, sup, Point, ValueSet};
use crate::series::{Coord, MultiValue};

pub use local::{default_degree_cap, local_quotient_dim, milnor_direct, tjurina_direct};

/// Values of the Kähler ideal and of `Ω¹_D` (the same set shifted by `1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerValues {
    pub ideal: ValueSet,
    pub omega1: ValueSet,
}

pub fn kahler_values(curve: &Arc<Curve>) -> Result<KahlerValues> {
    let gens = kahler_generators(curve);
    for j in 0..curve.p() {
        if gens.iter().all(|g| g.comp(j).is_zero()) {
            return Err(Error::MalformedCurve(format!("every coordinate derivative vanishes on branch {j}")));
        }
    }
    let ideal = FractionalIdeal::new(curve, gens)?.values()?.clone();
    let omega1 = ideal.shifted(&vec![1; curve.p()]);
    Ok(KahlerValues { ideal, omega1 })
}

/// `val(J_D) = γ + val(K)`; when an equation is known the ideal `(f_x, f_y)`
/// is computed as well and must give the same set.
pub fn jacobian_values(curve: &Arc<Curve>) -> Result<ValueSet> {
    let from_kahler = kahler_values(curve)?.ideal.shifted(curve.gamma());
    if curve.is_plane() && curve.full_equation().is_some() {
        let from_equation = FractionalIdeal::preset(curve, Preset::Jacobian)?;
        let vals = from_equation.values()?;
        if let Some(v) = vals.first_difference(&from_kahler) {
            return Err(Error::Invariant(format!(
                "Jacobian values from the equation and from the Kähler ideal differ at {v:?}"
            )));
        }
        return Ok(vals.clone());
    }
    Ok(from_kahler)
}

/// Both sides of `val(f_x) = γ + val(y) - 1` and `val(f_y) = γ + val(x) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeissierReport {
    pub val_fx: MultiValue,
    pub gamma_plus_val_y: MultiValue,
    pub val_fy: MultiValue,
    pub gamma_plus_val_x: MultiValue,
}

pub fn teissier_check(curve: &Arc<Curve>) -> Result<TeissierReport> {
    let f = match (curve.is_plane(), curve.full_equation()) {
        (true, Some(f)) => f,
        _ => return Err(Error::InvalidInput("the Teissier identities need a plane curve with equations".into())),
    };
    let safe = curve.stabilization();
    let val = |k: usize| -> Result<MultiValue> {
        let g = crate::series::SeriesVector::new(curve.branches().iter().map(|b| b.coords()[k].clone()).collect())?;
        g.val(safe)
    };
    let shift = |v: MultiValue| -> MultiValue {
        MultiValue(
            v.0.iter()
                .zip(curve.gamma())
                .map(|(c, g)| match c {
                    Coord::Fin(x) => Coord::Fin(x + g - 1),
                    Coord::Inf => Coord::Inf,
                })
                .collect(),
        )
    };
    let report = TeissierReport {
        val_fx: curve.eval(&f.derivative(0))?.val(safe)?,
        gamma_plus_val_y: shift(val(1)?),
        val_fy: curve.eval(&f.derivative(1))?.val(safe)?,
        gamma_plus_val_x: shift(val(0)?),
    };
    if report.val_fx != report.gamma_plus_val_y || report.val_fy != report.gamma_plus_val_x {
        return Err(Error::Invariant(format!(
            "Teissier identities fail: val(f_x) = {}, γ + val(y) - 1 = {}, val(f_y) = {}, γ + val(x) - 1 = {}",
            report.val_fx, report.gamma_plus_val_y, report.val_fy, report.gamma_plus_val_x
        )));
    }
    Ok(report)
}

/// `{v : Δ(-v, val(Ω¹)) = ∅}`.
pub fn residues_from_differentials(omega1: &ValueSet) -> ValueSet {
    lattice::dual_by_symmetry(omega1, &vec![1; omega1.p()])
}

/// `val(R_D)` by value symmetry applied to `J_D`, checked against the
/// characterization through `val(Ω¹_D)`.
pub fn residue_values(curve: &Arc<Curve>) -> Result<ValueSet> {
    if !curve.is_gorenstein() {
        return Err(Error::InvalidInput("residue values need a Gorenstein curve".into()));
    }
    let jac = jacobian_values(curve)?;
    let by_symmetry = lattice::dual_by_symmetry(&jac, curve.gamma());
    let by_forms = residues_from_differentials(&kahler_values(curve)?.omega1);
    if let Some(v) = by_symmetry.first_difference(&by_forms) {
        return Err(Error::Invariant(format!("residue values from J_D and from Ω¹_D differ at {v:?}")));
    }
    Ok(by_symmetry)
}

/// `val(R_D)` from the residue module itself, computed as `J_D^∨` by linear algebra.
pub fn residue_values_direct(curve: &Arc<Curve>) -> Result<ValueSet> {
    let jac = FractionalIdeal::preset(curve, Preset::Jacobian)?;
    Ok(dual_direct(&jac)?.values()?.clone())
}

/// Values of `O_D̃`, that is `N^p`.
fn normalization_values(p: usize) -> ValueSet {
    ValueSet::quadrant(vec![0; p])
}

/// `dim R_D / O_D̃` from the two value sets.
pub fn residue_excess(residues: &ValueSet) -> i64 {
    colength(&normalization_values(residues.p()), residues)
}

/// `τ = δ + dim R_D / O_D̃`.
pub fn tjurina_via_values(curve: &Arc<Curve>) -> Result<i64> {
    Ok(curve.delta() + residue_excess(&residue_values(curve)?))
}

/// `dim Tors(Ω¹_D) = τ`, checked through `dim R_D/O_D = dim O_D/J_D = τ`.
pub fn torsion_dimension(curve: &Arc<Curve>, tau: i64) -> Result<i64> {
    let od = FractionalIdeal::preset(curve, Preset::LocalRing)?.values()?.clone();
    let residues = residue_values(curve)?;
    let jac = jacobian_values(curve)?;
    let r_over_o = colength(&od, &residues);
    let o_over_j = colength(&jac, &od);
    if r_over_o != tau || o_over_j != tau {
        return Err(Error::Invariant(format!(
            "torsion dimension: dim R/O = {r_over_o}, dim O/J = {o_over_j}, τ = {tau}"
        )));
    }
    Ok(tau)
}

/// Outcome of comparing two value sets on a finite window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetComparison {
    pub holds: bool,
    /// A point witnessing the failure.
    pub witness: Option<Point>,
}

impl SetComparison {
    fn from_witness(witness: Option<Point>) -> Self {
        SetComparison { holds: witness.is_none(), witness }
    }
}

/// `γ - 1 + (val(O_D) ∖ {0}) = val(J_D)`, expected for quasi-homogeneous curves.
pub fn quasihomogeneous_jacobian_check(curve: &Arc<Curve>) -> Result<SetComparison> {
    let od = FractionalIdeal::preset(curve, Preset::LocalRing)?.values()?.clone();
    let jac = jacobian_values(curve)?;
    let shift = offset(curve.gamma(), -1);
    let zero = vec![0; curve.p()];
    let in_shifted = |v: &[i64]| {
        let u = lattice::sub(v, &shift);
        u != zero && od.contains(&u)
    };
    let lo = inf(jac.lambda(), &shift);
    let hi = sup(jac.nu(), &offset(&add(&shift, od.nu()), 1));
    Ok(SetComparison::from_witness(points(&lo, &hi).find(|v| jac.contains(v) != in_shifted(v))))
}

/// `γ - 1 + (val(O_D) ∖ {0}) ⊆ val(J_D)`, true on every plane curve.
pub fn jacobian_contains_shifted_semigroup(curve: &Arc<Curve>) -> Result<SetComparison> {
    let od = FractionalIdeal::preset(curve, Preset::LocalRing)?.values()?.clone();
    let jac = jacobian_values(curve)?;
    let shift = offset(curve.gamma(), -1);
    let zero = vec![0; curve.p()];
    let hi = sup(jac.nu(), &offset(&add(&shift, od.nu()), 1));
    Ok(SetComparison::from_witness(points(&shift, &hi).find(|v| {
        let u = lattice::sub(v, &shift);
        u != zero && od.contains(&u) && !jac.contains(v)
    })))
}

/// The componentwise minimum of `val(J_D)` is `γ + m - 1` with `m` the branch multiplicities.
pub fn jacobian_minimum_check(curve: &Arc<Curve>) -> Result<SetComparison> {
    let jac = jacobian_values(curve)?;
    let mins: Point = (0..curve.p()).map(|j| jac.box_values().iter().map(|v| v[j]).min().unwrap()).collect();
    let expected: Point =
        curve.branches().iter().zip(curve.gamma()).map(|(b, g)| g + b.multiplicity() - 1).collect();
    Ok(SetComparison::from_witness((mins != expected).then_some(mins)))
}

/// `val(R_{D_1}) × ⋯ × val(R_{D_p}) ⊆ val(R_D)`, each factor computed on the
/// branch as a curve of its own.
pub fn branch_sum_inclusion_check(curve: &Arc<Curve>) -> Result<SetComparison> {
    if curve.p() < 2 {
        return Err(Error::InvalidInput("the branch product needs at least two branches".into()));
    }
    let total = residue_values(curve)?;
    let mut factors = Vec::new();
    for (i, b) in curve.branches().iter().enumerate() {
        let eqs = match curve.equations() {
            Equations::PerBranch(fs) => Equations::PerBranch(vec![fs[i].clone()]),
            _ => Equations::None,
        };
        let single = Arc::new(Curve::with_slack(curve.field(), vec![b.clone()], eqs, curve.slack())?);
        factors.push(residue_values(&single)?);
    }
    let lo: Point = factors.iter().map(|f| f.lambda()[0]).collect();
    let hi: Point = factors.iter().zip(total.nu()).map(|(f, n)| f.nu()[0].max(*n)).collect();
    Ok(SetComparison::from_witness(
        points(&lo, &hi).find(|v| factors.iter().zip(v).all(|(f, &x)| f.contains(&[x])) && !total.contains(v)),
    ))
}

/// Value points with a negative coordinate, on the window `[λ, sup(ν, 0)]`.
pub fn negative_values(s: &ValueSet) -> Vec<Point> {
    let hi = sup(s.nu(), &vec![0; s.p()]);
    points(s.lambda(), &hi).filter(|v| v.iter().any(|&x| x < 0) && s.contains(v)).collect()
}

/// How much cross-checking an analysis performs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    None,
    #[default]
    CrossCheck,
    Full,
}

impl std::str::FromStr for Verification {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Verification::None),
            "cross-check" => Ok(Verification::CrossCheck),
            "full" => Ok(Verification::Full),
            other => Err(Error::InvalidInput(format!("unknown verification level `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub verification: Verification,
    /// Degree cap for the direct Tjurina and Milnor computations.
    pub d_max: Option<u32>,
}

/// A named check and what it found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(detail: impl Into<String>) -> Self {
        Check { passed: true, detail: detail.into() }
    }
}

/// Everything `analyze` computes about a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub p: usize,
    pub gamma: Vec<i64>,
    pub delta: i64,
    pub mu: i64,
    /// `δ + dim R_D/O_D̃`, for plane curves.
    pub tau: Option<i64>,
    pub tau_direct: Option<i64>,
    pub mu_direct: Option<i64>,
    pub multiplicities: Vec<i64>,
    pub semigroup: ValueSet,
    pub zero_divisor_values: Vec<MultiValue>,
    #[serde(rename = "val_J")]
    pub val_j: ValueSet,
    #[serde(rename = "val_Omega1")]
    pub val_omega1: ValueSet,
    #[serde(rename = "val_R")]
    pub val_r: ValueSet,
    pub negative_residues: Vec<Point>,
    pub dim_residues_over_normalization: i64,
    /// Set for space curves, where residues rest on the Gorenstein property
    /// read off the value semigroup rather than on an equation.
    pub gorenstein_caveat: bool,
    pub checks: BTreeMap<String, Check>,
}

/// Runs the full pipeline on a curve.
pub fn analyze(curve: &Arc<Curve>, opts: AnalysisOptions) -> Result<AnalysisReport> {
    let p = curve.p();
    let mut checks = BTreeMap::new();
    let od_ideal = FractionalIdeal::preset(curve, Preset::LocalRing)?;
    let semigroup = od_ideal.values()?.clone();
    let kahler = kahler_values(curve)?;
    let val_j = jacobian_values(curve)?;
    if !curve.is_gorenstein() {
        return Err(Error::InvalidInput(format!(
            "the curve is not Gorenstein (2δ = {} but Σγ = {}); residues are not determined by value symmetry",
            2 * curve.delta(),
            curve.gamma().iter().sum::<i64>()
        )));
    }
    let val_r = residue_values(curve)?;
    checks.insert("residues_symmetry_vs_differentials".into(), Check::pass("Δ(γ-v-1, J) and Δ(-v, Ω¹) agree"));
    let excess = residue_excess(&val_r);
    let plane = curve.is_plane();
    let tau = plane.then(|| curve.delta() + excess);
    let equation = curve.full_equation().filter(|_| plane);

    let gamma_check = lattice::delta_is_empty(&offset(curve.gamma(), -1), &semigroup);
    if !gamma_check {
        return Err(Error::Invariant("Δ(γ - 1, val(O_D)) is not empty".into()));
    }
    checks.insert("conductor_delta_empty".into(), Check::pass("Δ(γ - 1, val(O_D)) = ∅"));

    let mut tau_direct = None;
    let mut mu_direct = None;
    if opts.verification != Verification::None {
        if let Some(f) = &equation {
            let t = tjurina_direct(f, opts.d_max)?;
            let m = milnor_direct(f, opts.d_max)?;
            if Some(t) != tau {
                return Err(Error::Invariant(format!("τ from values is {tau:?}, the local algebra gives {t}")));
            }
            if m != curve.mu() {
                return Err(Error::Invariant(format!("μ = 2δ - p + 1 = {}, the local algebra gives {m}", curve.mu())));
            }
            checks.insert("tau_values_vs_direct".into(), Check::pass(format!("τ = {t}")));
            checks.insert("mu_delta_formula_vs_direct".into(), Check::pass(format!("μ = {m}")));
            tau_direct = Some(t);
            mu_direct = Some(m);
            let t = teissier_check(curve)?;
            checks.insert(
                "teissier".into(),
                Check::pass(format!("val(f_x) = {}, val(f_y) = {}", t.val_fx, t.val_fy)),
            );
        }
        if let Some(t) = tau {
            torsion_dimension(curve, t)?;
            checks.insert("torsion_dimension".into(), Check::pass(format!("dim R/O = dim O/J = {t}")));
        }
        if plane {
            let inc = jacobian_contains_shifted_semigroup(curve)?;
            if !inc.holds {
                return Err(Error::Invariant(format!("γ - 1 + (val(O_D) ∖ 0) ⊄ val(J_D) at {:?}", inc.witness)));
            }
            checks.insert("jacobian_contains_shifted_semigroup".into(), Check::pass("γ - 1 + (val(O_D) ∖ 0) ⊆ val(J_D)"));
            let min = jacobian_minimum_check(curve)?;
            if !min.holds {
                return Err(Error::Invariant(format!("minimum of val(J_D) is {:?}, expected γ + m - 1", min.witness)));
            }
            checks.insert("jacobian_minimum".into(), Check::pass("min val(J_D) = γ + m - 1"));
            let qh = quasihomogeneous_jacobian_check(curve)?;
            let quasi_homogeneous = tau_direct.zip(mu_direct).map(|(t, m)| t == m);
            if quasi_homogeneous == Some(true) && !qh.holds {
                return Err(Error::Invariant(format!(
                    "τ = μ but γ - 1 + (val(O_D) ∖ 0) ≠ val(J_D) at {:?}",
                    qh.witness
                )));
            }
            checks.insert(
                "quasihomogeneous_jacobian".into(),
                Check {
                    passed: qh.holds || quasi_homogeneous != Some(true),
                    detail: match &qh.witness {
                        None => "γ - 1 + (val(O_D) ∖ 0) = val(J_D)".into(),
                        Some(w) => format!("sets differ at {w:?} (expected unless τ = μ)"),
                    },
                },
            );
        }
        if p >= 2 {
            let inc = branch_sum_inclusion_check(curve)?;
            if !inc.holds {
                return Err(Error::Invariant(format!("branch residue product not contained in val(R_D) at {:?}", inc.witness)));
            }
            checks.insert("branch_product_inclusion".into(), Check::pass("Π val(R_{D_i}) ⊆ val(R_D)"));
        }
        if !points(&vec![0; p], &sup(val_r.nu(), &vec![0; p])).all(|v| val_r.contains(&v)) {
            return Err(Error::Invariant("N^p ⊄ val(R_D)".into()));
        }
        checks.insert("normalization_in_residues".into(), Check::pass("N^p ⊆ val(R_D)"));
    }
    if opts.verification == Verification::Full {
        let direct = residue_values_direct(curve)?;
        if let Some(v) = direct.first_difference(&val_r) {
            return Err(Error::Invariant(format!("residues by linear algebra differ from the symmetry route at {v:?}")));
        }
        checks.insert("residues_direct".into(), Check::pass("J_D^∨ computed by linear algebra agrees"));
        for preset in [Preset::LocalRing, Preset::Jacobian, Preset::Kahler] {
            let ideal = FractionalIdeal::preset(curve, preset)?;
            let oracle = value_set_rank_oracle(&ideal)?;
            let fast = match p {
                1 => Some(value_algo_p1(&ideal)?),
                2 => Some(value_algo_p2(&ideal, None, None)?),
                _ => None,
            };
            if let Some(fast) = fast {
                if let Some(v) = fast.first_difference(&oracle) {
                    return Err(Error::Invariant(format!("{preset:?}: fast value algorithm differs at {v:?}")));
                }
                checks.insert(format!("value_algorithm_{preset:?}").to_lowercase(), Check::pass("agrees with the rank oracle"));
            }
        }
        let dual = dual_values_symmetry(&od_ideal)?;
        if !dual.same_values(&semigroup) {
            return Err(Error::Invariant("val(O_D) is not self-dual".into()));
        }
        checks.insert("local_ring_self_dual".into(), Check::pass("val(O_D)^∨ = val(O_D)"));
    }
    Ok(AnalysisReport {
        p,
        gamma: curve.gamma().to_vec(),
        delta: curve.delta(),
        mu: curve.mu(),
        tau,
        tau_direct,
        mu_direct,
        multiplicities: curve.branches().iter().map(|b| b.multiplicity()).collect(),
        zero_divisor_values: lattice::zero_divisor_values(&semigroup).into_iter().collect(),
        semigroup,
        val_j,
        val_omega1: kahler.omega1,
        negative_residues: negative_values(&val_r),
        val_r,
        dim_residues_over_normalization: excess,
        gorenstein_caveat: !plane,
        checks,
    })
}
