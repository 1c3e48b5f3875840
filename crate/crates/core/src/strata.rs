//! Equisingular deformation families sampled at parameter points and
//! grouped by `(τ, negative residue values)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{Field, FieldElement};
use crate::curve::{sqh_exponents, BranchSeed, BranchSource, Curve, Equations};
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::logres::{milnor_direct, negative_values, residue_excess, residue_values, tjurina_direct};
use crate::poly::{Exps, Poly};

/// `F(x, y, s) = f(x, y) + Σ s_k x^i y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationFamily {
    base: Poly,
    params: Vec<(String, Exps)>,
    seeds: Vec<BranchSeed>,
}

impl DeformationFamily {
    /// `seeds` are lifted on every fiber; without them each fiber must be
    /// semi-quasi-homogeneous to be parametrized.
    pub fn new(base: Poly, params: Vec<(String, Exps)>, seeds: Vec<BranchSeed>) -> Result<Self> {
        if base.nvars() != 2 {
            return Err(Error::InvalidInput("deformation families are plane".into()));
        }
        for (name, e) in &params {
            if e.len() != 2 {
                return Err(Error::ShapeMismatch(format!("monomial of parameter {name} needs two exponents")));
            }
        }
        Ok(DeformationFamily { base, params, seeds })
    }

    pub fn field(&self) -> &Field {
        self.base.field()
    }

    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn params(&self) -> &[(String, Exps)] {
        &self.params
    }

    pub fn k(&self) -> usize {
        self.params.len()
    }

    /// For a base `x^a - y^b`: every deformation monomial lies strictly above
    /// the weighted diagonal, `ib + ja > ab`.
    pub fn weight_condition(&self) -> Result<bool> {
        let (a, b) = sqh_exponents(&self.base)?;
        Ok(self.params.iter().all(|(_, e)| e[0] * b + e[1] * a > a * b))
    }
}

/// `F(., s)`.
pub fn evaluate_family(family: &DeformationFamily, point: &[FieldElement]) -> Result<Poly> {
    if point.len() != family.k() {
        return Err(Error::ShapeMismatch(format!("{} parameter values for {} parameters", point.len(), family.k())));
    }
    let mut f = family.base.clone();
    for ((_, e), s) in family.params.iter().zip(point) {
        f = f.add(&Poly::monomial(family.field(), e.clone(), s.clone()));
    }
    Ok(f)
}

/// Invariants of one fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub point: Vec<String>,
    pub equation: String,
    pub tau_direct: i64,
    pub mu_direct: i64,
    /// Present when the fiber could be parametrized.
    pub values: Option<SampleValues>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleValues {
    pub p: usize,
    pub delta: i64,
    pub mu: i64,
    pub tau: i64,
    pub multiplicities: Vec<i64>,
    pub negative_residues: Vec<Point>,
    pub dim_residues_over_normalization: i64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SampleOptions {
    pub truncation: Option<i64>,
    pub d_max: Option<u32>,
}

/// Direct `τ` and `μ` always; values, `δ` and residues when a parametrization is available.
pub fn analyze_sample(family: &DeformationFamily, point: &[FieldElement], opts: SampleOptions) -> Result<SampleRecord> {
    let f = evaluate_family(family, point)?;
    let tau_direct = tjurina_direct(&f, opts.d_max)?;
    let mu_direct = milnor_direct(&f, opts.d_max)?;
    let mut record = SampleRecord {
        point: point.iter().map(ToString::to_string).collect(),
        equation: f.to_string(),
        tau_direct,
        mu_direct,
        values: None,
        note: None,
    };
    let sources: Vec<BranchSource> = if !family.seeds.is_empty() {
        family.seeds.iter().map(|s| BranchSource::Seed { seed: s.clone(), equation: f.clone() }).collect()
    } else if sqh_exponents(&f).is_ok() {
        vec![BranchSource::SemiQuasiHomogeneous { equation: f.clone() }]
    } else {
        record.note = Some("no parametrization: fiber is not semi-quasi-homogeneous and no seeds were given".into());
        return Ok(record);
    };
    let curve = match Curve::from_sources(family.field(), &sources, Equations::Full(f.clone()), opts.truncation) {
        Ok(c) => std::sync::Arc::new(c),
        Err(e) if matches!(e, Error::NotLiftable(_)) || e.is_truncation() => {
            record.note = Some(format!("parametrization failed: {e}"));
            return Ok(record);
        }
        Err(e) => return Err(e),
    };
    let residues = residue_values(&curve)?;
    let dim = residue_excess(&residues);
    let tau = curve.delta() + dim;
    if tau != tau_direct {
        return Err(Error::Invariant(format!("fiber {f}: τ from values is {tau}, the local algebra gives {tau_direct}")));
    }
    if curve.mu() != mu_direct {
        return Err(Error::Invariant(format!("fiber {f}: 2δ - p + 1 = {}, the local algebra gives μ = {mu_direct}", curve.mu())));
    }
    record.values = Some(SampleValues {
        p: curve.p(),
        delta: curve.delta(),
        mu: curve.mu(),
        tau,
        multiplicities: curve.branches().iter().map(|b| b.multiplicity()).collect(),
        negative_residues: negative_values(&residues),
        dim_residues_over_normalization: dim,
    });
    Ok(record)
}

/// Which parameter points to sample.
#[derive(Clone, Debug, PartialEq)]
pub enum SamplePlan {
    Explicit(Vec<Vec<FieldElement>>),
    /// One list of values per parameter; every combination is sampled.
    Grid(Vec<Vec<FieldElement>>),
    /// Rationals `n / denominator` with `n / denominator` in `[lo, hi]`.
    Random { count: usize, lo: i64, hi: i64, denominator: i64, seed: u64 },
}

impl SamplePlan {
    pub fn points(&self, field: &Field, k: usize) -> Result<Vec<Vec<FieldElement>>> {
        let pts = match self {
            SamplePlan::Explicit(pts) => pts.clone(),
            SamplePlan::Grid(axes) => {
                if axes.len() != k {
                    return Err(Error::ShapeMismatch(format!("grid with {} axes for {k} parameters", axes.len())));
                }
                axes.iter().fold(vec![Vec::new()], |acc, axis| {
                    acc.iter()
                        .flat_map(|prefix| {
                            axis.iter().map(move |v| {
                                let mut p = prefix.clone();
                                p.push(v.clone());
                                p
                            })
                        })
                        .collect()
                })
            }
            SamplePlan::Random { count, lo, hi, denominator, seed } => {
                if *denominator <= 0 || lo > hi {
                    return Err(Error::InvalidInput("random plan needs lo <= hi and a positive denominator".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|_| {
                        (0..k)
                            .map(|_| {
                                let n = rng.gen_range(lo * denominator..=hi * denominator);
                                let q = num_rational::BigRational::new(n.into(), (*denominator).into());
                                FieldElement::from_rational(field, q)
                            })
                            .collect()
                    })
                    .collect()
            }
        };
        if let Some(p) = pts.iter().find(|p| p.len() != k) {
            return Err(Error::ShapeMismatch(format!("sample with {} values for {k} parameters", p.len())));
        }
        Ok(pts)
    }
}

/// Samples sharing `τ` and the negative residue values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    pub name: String,
    pub tau: i64,
    pub negative_residues: Option<Vec<Point>>,
    pub dim_residues_over_normalization: Option<i64>,
    /// Indices into the sample list.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataReport {
    pub samples: Vec<SampleRecord>,
    pub strata: Vec<StratumReport>,
    /// `δ`, `μ` and the multiplicities are constant over the samples.
    pub equisingular: bool,
    pub notes: Vec<String>,
}

fn primes(k: usize) -> String {
    match k {
        1 => "′".into(),
        2 => "″".into(),
        3 => "‴".into(),
        _ => "′".repeat(k),
    }
}

/// Analyzes every sample (in parallel) and groups them into strata, in order of first appearance.
pub fn scan_strata(family: &DeformationFamily, plan: &SamplePlan, opts: SampleOptions) -> Result<StrataReport> {
    let pts = plan.points(family.field(), family.k())?;
    let samples: Vec<SampleRecord> =
        pts.par_iter().map(|p| analyze_sample(family, p, opts)).collect::<Result<Vec<_>>>()?;
    let mut keys: Vec<(i64, Option<Vec<Point>>)> = Vec::new();
    let mut strata: Vec<StratumReport> = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        let neg = s.values.as_ref().map(|v| v.negative_residues.clone());
        let key = (s.tau_direct, neg.clone());
        match keys.iter().position(|k| *k == key) {
            Some(k) => strata[k].members.push(i),
            None => {
                keys.push(key);
                strata.push(StratumReport {
                    name: String::new(),
                    tau: s.tau_direct,
                    negative_residues: neg,
                    dim_residues_over_normalization: s.values.as_ref().map(|v| v.dim_residues_over_normalization),
                    members: vec![i],
                });
            }
        }
    }
    let mut notes = Vec::new();
    let mut by_tau: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, st) in strata.iter().enumerate() {
        by_tau.entry(st.tau).or_default().push(k);
    }
    for (tau, idx) in by_tau.iter().rev() {
        if idx.len() == 1 {
            strata[idx[0]].name = format!("S{tau}");
        } else {
            for (n, &k) in idx.iter().enumerate() {
                strata[k].name = format!("S{tau}{}", primes(n + 1));
            }
            notes.push(format!("the τ = {tau} stratum splits into {} residue strata", idx.len()));
        }
    }
    for st in &strata {
        for &i in &st.members {
            if let Some(v) = &samples[i].values {
                if v.dim_residues_over_normalization != v.tau - v.delta {
                    return Err(Error::Invariant(format!("sample {i}: dim R/O_D̃ differs from τ - δ")));
                }
            }
        }
    }
    let mus: Vec<i64> = samples.iter().map(|s| s.mu_direct).collect();
    let shapes: Vec<(i64, Vec<i64>)> =
        samples.iter().filter_map(|s| s.values.as_ref().map(|v| (v.delta, v.multiplicities.clone()))).collect();
    let equisingular = mus.windows(2).all(|w| w[0] == w[1]) && shapes.windows(2).all(|w| w[0] == w[1]);
    if !equisingular {
        notes.push("δ, μ or the multiplicities vary: the plan is not equisingular".into());
    }
    if samples.iter().any(|s| s.values.is_none()) {
        notes.push("some fibers were not parametrized; their strata use τ alone".into());
    }
    Ok(StrataReport { samples, strata, equisingular, notes })
}

fn format_point(v: &Point) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
    }
}

impl StrataReport {
    /// Table with one row per stratum: name, `τ`, `dim R/O_D̃`, negative values, sample points.
    pub fn markdown(&self) -> String {
        let mut out = String::from("| stratum | τ | dim R/O_D̃ | negative values | samples |\n|---|---|---|---|---|\n");
        for st in &self.strata {
            let dim = st.dim_residues_over_normalization.map_or("-".into(), |d| d.to_string());
            let neg = match &st.negative_residues {
                None => "-".into(),
                Some(n) => n.iter().rev().map(format_point).collect::<Vec<_>>().join(", "),
            };
            let members: Vec<String> =
                st.members.iter().map(|&i| format!("({})", self.samples[i].point.join(", "))).collect();
            let _ = writeln!(out, "| {} | {} | {} | {} | {} |", st.name, st.tau, dim, neg, members.join(" "));
        }
        for n in &self.notes {
            let _ = writeln!(out, "\n{n}");
        }
        out
    }
}
