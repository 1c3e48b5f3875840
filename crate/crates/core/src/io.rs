//! JSON input formats.
//!
//! Rationals are written as strings `"p/q"` or as integers; a field element
//! is a rational or a list of rationals (its residue, constant term first).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::coeffs::{parse_rational, Field, FieldElement, FieldSpec};
use crate::curve::{BranchParam, BranchSeed, BranchSource, Curve, Equations, DEFAULT_SLACK, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::ideal::{FractionalIdeal, Preset};
use crate::poly::Poly;
use crate::series::{SeriesVector, TruncatedSeries, EXACT};
use crate::strata::{DeformationFamily, SamplePlan};

/// Parses JSON, reporting the failing field path and position.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match path.as_str() {
            "." | "?" => Error::InvalidInput(inner.to_string()),
            _ => Error::InvalidInput(format!("at `{path}`: {inner}")),
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Int(i64),
    Str(String),
}

impl RationalInput {
    fn to_element(&self, field: &Field) -> Result<FieldElement> {
        Ok(FieldElement::from_rational(field, self.to_rational()?))
    }

    fn to_rational(&self) -> Result<num_rational::BigRational> {
        match self {
            RationalInput::Int(n) => Ok(num_rational::BigRational::from_integer((*n).into())),
            RationalInput::Str(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementInput {
    Rational(RationalInput),
    Residue(Vec<RationalInput>),
}

impl ElementInput {
    pub fn to_element(&self, field: &Field) -> Result<FieldElement> {
        match self {
            ElementInput::Rational(r) => r.to_element(field),
            ElementInput::Residue(cs) => {
                if cs.len() > field.degree() {
                    return Err(Error::InvalidInput(format!(
                        "residue with {} coefficients in a field of degree {}",
                        cs.len(),
                        field.degree()
                    )));
                }
                let coeffs = cs.iter().map(RationalInput::to_rational).collect::<Result<Vec<_>>>()?;
                Ok(FieldElement::from_residue(field, coeffs))
            }
        }
    }
}

/// `{"min_poly": ["c0", ..., "1"]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldInput {
    pub min_poly: Vec<RationalInput>,
}

impl FieldInput {
    pub fn build(&self) -> Result<Field> {
        let m = self.min_poly.iter().map(RationalInput::to_rational).collect::<Result<Vec<_>>>()?;
        FieldSpec::new(m)
    }
}

fn field_of(input: &Option<FieldInput>) -> Result<Field> {
    input.as_ref().map_or_else(|| Ok(FieldSpec::rationals()), FieldInput::build)
}

/// `{"min_exp": k, "trunc": N, "coeffs": {"e": c, ...}}`; without `trunc` the series is exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesInput {
    #[serde(default)]
    pub min_exp: Option<i64>,
    #[serde(default)]
    pub trunc: Option<i64>,
    pub coeffs: BTreeMap<String, ElementInput>,
}

impl SeriesInput {
    pub fn build(&self, field: &Field) -> Result<TruncatedSeries> {
        let mut terms = Vec::new();
        for (e, c) in &self.coeffs {
            let e: i64 = e.trim().parse().map_err(|_| Error::InvalidInput(format!("bad exponent `{e}`")))?;
            terms.push((e, c.to_element(field)?));
        }
        let lowest = terms.iter().map(|(e, _)| *e).min().unwrap_or(0);
        let min_exp = self.min_exp.unwrap_or(lowest);
        if let Some((e, _)) = terms.iter().find(|(e, _)| *e < min_exp) {
            return Err(Error::InvalidInput(format!("exponent {e} below min_exp {min_exp}")));
        }
        TruncatedSeries::new(field, min_exp, self.trunc.unwrap_or(EXACT), terms)
    }
}

/// `[{"coeff": c, "exps": [i, j]}, ...]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermInput {
    pub coeff: ElementInput,
    pub exps: Vec<u32>,
}

pub fn build_poly(terms: &[TermInput], field: &Field) -> Result<Poly> {
    let nvars = terms.first().map_or(2, |t| t.exps.len());
    let terms = terms.iter().map(|t| Ok((t.exps.clone(), t.coeff.to_element(field)?))).collect::<Result<Vec<_>>>()?;
    Poly::from_terms(field, nvars, terms)
}

/// `{"coords": [[[e, c], ...], [[e, c], ...]], "solve_for": 1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedInput {
    pub coords: Vec<Vec<(i64, ElementInput)>>,
    #[serde(default)]
    pub solve_for: Option<usize>,
}

impl SeedInput {
    pub fn build(&self, field: &Field) -> Result<BranchSeed> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.iter().map(|(e, x)| Ok((*e, x.to_element(field)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(BranchSeed { coords, solve_for: self.solve_for })
    }
}

/// One branch: explicit coordinates, a seed to lift, or a semi-quasi-homogeneous equation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BranchInput {
    Plane { x: SeriesInput, y: SeriesInput },
    Coords { coords: Vec<SeriesInput> },
    Seed { seed: SeedInput, equation_index: usize },
    Sqh { sqh: bool, equation_index: usize },
}

/// `{"field": ..., "truncation": N, "branches": [...], "equations": [...], "ideal": ...}`.
///
/// With one equation per branch the equations are per branch; a single
/// equation for several branches is the equation of the whole curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveInput {
    #[serde(default)]
    pub field: Option<FieldInput>,
    #[serde(default)]
    pub truncation: Option<i64>,
    #[serde(default)]
    pub slack: Option<i64>,
    pub branches: Vec<BranchInput>,
    #[serde(default)]
    pub equations: Vec<Vec<TermInput>>,
    #[serde(default)]
    pub ideal: Option<IdealInput>,
}

impl CurveInput {
    /// Builds the curve; `truncation` overrides the file's value.
    pub fn build(&self, truncation: Option<i64>) -> Result<Arc<Curve>> {
        let field = field_of(&self.field)?;
        let p = self.branches.len();
        if p == 0 {
            return Err(Error::MalformedCurve("no branches".into()));
        }
        let eqs = self.equations.iter().map(|t| build_poly(t, &field)).collect::<Result<Vec<_>>>()?;
        let equation = |i: usize| {
            eqs.get(i).cloned().ok_or_else(|| Error::InvalidInput(format!("equation_index {i} out of range")))
        };
        let sources = self
            .branches
            .iter()
            .map(|b| {
                Ok(match b {
                    BranchInput::Plane { x, y } => {
                        BranchSource::Explicit(BranchParam::new(vec![x.build(&field)?, y.build(&field)?])?)
                    }
                    BranchInput::Coords { coords } => BranchSource::Explicit(BranchParam::new(
                        coords.iter().map(|c| c.build(&field)).collect::<Result<Vec<_>>>()?,
                    )?),
                    BranchInput::Seed { seed, equation_index } => {
                        BranchSource::Seed { seed: seed.build(&field)?, equation: equation(*equation_index)? }
                    }
                    BranchInput::Sqh { sqh: true, equation_index } => {
                        BranchSource::SemiQuasiHomogeneous { equation: equation(*equation_index)? }
                    }
                    BranchInput::Sqh { sqh: false, .. } => {
                        return Err(Error::InvalidInput("`sqh` must be true when present".into()))
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let equations = match eqs.len() {
            0 => Equations::None,
            n if n == p => Equations::PerBranch(eqs),
            1 => Equations::Full(eqs.into_iter().next().unwrap()),
            n => return Err(Error::MalformedCurve(format!("{n} equations for {p} branches"))),
        };
        let n = truncation.or(self.truncation);
        let explicit = sources.iter().all(|s| matches!(s, BranchSource::Explicit(_)));
        let curve = if explicit {
            let bs = sources
                .into_iter()
                .map(|s| match s {
                    BranchSource::Explicit(b) => b,
                    _ => unreachable!(),
                })
                .collect();
            Curve::with_slack(&field, bs, equations, self.slack.unwrap_or(DEFAULT_SLACK))?
        } else {
            Curve::from_sources(&field, &sources, equations, n.or(Some(DEFAULT_TRUNCATION)))?
        };
        Ok(Arc::new(curve))
    }
}

/// `{"preset": "jacobian"}` or `{"generators": [[series per branch], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealInput {
    Preset { preset: Preset },
    Generators { generators: Vec<Vec<SeriesInput>> },
}

impl IdealInput {
    pub fn build(&self, curve: &Arc<Curve>) -> Result<FractionalIdeal> {
        match self {
            IdealInput::Preset { preset } => FractionalIdeal::preset(curve, *preset),
            IdealInput::Generators { generators } => {
                let gens = generators
                    .iter()
                    .map(|g| SeriesVector::new(g.iter().map(|s| s.build(curve.field())).collect::<Result<Vec<_>>>()?))
                    .collect::<Result<Vec<_>>>()?;
                FractionalIdeal::new(curve, gens)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformationInput {
    pub param: String,
    pub exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyInput {
    pub base: Vec<TermInput>,
    #[serde(default)]
    pub deformations: Vec<DeformationInput>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomPlanInput {
    pub count: usize,
    pub lo: i64,
    pub hi: i64,
    #[serde(default = "one")]
    pub denominator: i64,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SamplesInput {
    Explicit(Vec<Vec<ElementInput>>),
    Grid { grid: Vec<Vec<ElementInput>> },
    Random { random: RandomPlanInput },
}

/// `{"field": ..., "family": ..., "samples": [[...]] | {"grid": ...} | {"random": ...}, "seeds": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanInput {
    #[serde(default)]
    pub field: Option<FieldInput>,
    pub family: FamilyInput,
    pub samples: SamplesInput,
    #[serde(default)]
    pub seeds: Vec<SeedInput>,
    #[serde(default)]
    pub truncation: Option<i64>,
}

impl PlanInput {
    /// The family and its sample plan; `seed` overrides the random plan's seed.
    pub fn build(&self, seed: Option<u64>) -> Result<(DeformationFamily, SamplePlan)> {
        let field = field_of(&self.field)?;
        let base = build_poly(&self.family.base, &field)?;
        let params = self.family.deformations.iter().map(|d| (d.param.clone(), d.exps.clone())).collect();
        let seeds = self.seeds.iter().map(|s| s.build(&field)).collect::<Result<Vec<_>>>()?;
        let family = DeformationFamily::new(base, params, seeds)?;
        let elems = |rows: &[Vec<ElementInput>]| -> Result<Vec<Vec<FieldElement>>> {
            rows.iter().map(|r| r.iter().map(|e| e.to_element(&field)).collect()).collect()
        };
        let plan = match &self.samples {
            SamplesInput::Explicit(rows) => SamplePlan::Explicit(elems(rows)?),
            SamplesInput::Grid { grid } => SamplePlan::Grid(elems(grid)?),
            SamplesInput::Random { random } => SamplePlan::Random {
                count: random.count,
                lo: random.lo,
                hi: random.hi,
                denominator: random.denominator,
                seed: seed.or(random.seed).unwrap_or(0),
            },
        };
        Ok((family, plan))
    }
}
