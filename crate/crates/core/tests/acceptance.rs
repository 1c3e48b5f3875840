//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use curvesing::catalog;
use curvesing::coeffs::FieldSpec;
use curvesing::ideal::dual_values_symmetry;
use curvesing::lattice::{delta_is_empty, Point};
use curvesing::logres::{
    milnor_direct, quasihomogeneous_jacobian_check, teissier_check, tjurina_direct, tjurina_via_values,
};
use curvesing::poincare::poincare_poly;
use curvesing::strata::{analyze_sample, scan_strata, DeformationFamily, SampleOptions, SamplePlan};
use curvesing::{Curve, FractionalIdeal, Poly, Preset};

use common::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const SEED: u64 = 20_240_601;
const RANDOM_IDEALS: usize = 60;

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("took {t:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn x5_y6_table() -> Outcome {
    let start = Instant::now();
    let f = FieldSpec::rationals();
    let base = Poly::from_ints(&f, &[(vec![5, 0], 1), (vec![0, 6], -1)]);
    let params = vec![("s1".into(), vec![2, 4]), ("s2".into(), vec![3, 3]), ("s3".into(), vec![3, 4])];
    let fam = DeformationFamily::new(base, params, vec![]).map_err(|e| e.to_string())?;
    let samples = [[0, 0, 0], [0, 0, 1], [1, 0, 0], [0, 1, 0]].iter().map(|s| ints(&f, s)).collect();
    let report = scan_strata(&fam, &SamplePlan::Explicit(samples), SampleOptions::default()).map_err(|e| e.to_string())?;
    let expected: [(i64, &[i64]); 4] = [
        (10, &[-1, -2, -3, -4, -7, -8, -9, -13, -14, -19]),
        (9, &[-1, -2, -3, -4, -7, -8, -9, -13, -14]),
        (8, &[-1, -2, -3, -4, -7, -8, -9, -14]),
        (8, &[-1, -2, -3, -4, -7, -8, -9, -13]),
    ];
    if report.samples.len() != 4 {
        return Err(format!("{} samples", report.samples.len()));
    }
    for (rec, (dim, negs)) in report.samples.iter().zip(expected) {
        let v = rec.values.as_ref().ok_or("sample without values")?;
        let mut got: Vec<i64> = v.negative_residues.iter().map(|p| p[0]).collect();
        got.sort_unstable_by(|a, b| b.cmp(a));
        if v.dim_residues_over_normalization != dim || got != negs {
            return Err(format!("sample {:?}: dim {} negatives {got:?}", rec.point, v.dim_residues_over_normalization));
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("dims 10/9/8/8 and the four negative rows in {:?}", start.elapsed()))
}

fn front_taus() -> Outcome {
    let start = Instant::now();
    let f = FieldSpec::rationals();
    let base = Poly::from_ints(&f, &[(vec![10, 0], 1), (vec![0, 8], 1)]);
    let fam = DeformationFamily::new(base, vec![("s1".into(), vec![5, 4]), ("s2".into(), vec![3, 6])], vec![])
        .map_err(|e| e.to_string())?;
    let mut taus = Vec::new();
    for s in [[1, 0], [0, 1], [1, 1]] {
        let rec = analyze_sample(&fam, &ints(&f, &s), SampleOptions::default()).map_err(|e| e.to_string())?;
        taus.push(rec.tau_direct);
    }
    if taus != [63, 54, 53] {
        return Err(format!("τ = {taus:?}"));
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("τ = 63, 54, 53 in {:?}", start.elapsed()))
}

fn ideals() -> Vec<(String, FractionalIdeal)> {
    random_ideals(RANDOM_IDEALS, SEED)
}

fn symmetry_oracle(ideals: &[(String, FractionalIdeal)]) -> Outcome {
    let curves: std::collections::BTreeSet<&str> = ideals.iter().map(|(n, _)| n.as_str()).collect();
    let branch_counts: std::collections::BTreeSet<usize> = ideals.iter().map(|(_, i)| i.p()).collect();
    if ideals.len() < 50 || curves.len() < 10 || branch_counts != [1, 2, 3].into() {
        return Err("ideal sample too small".into());
    }
    for (name, i) in ideals {
        duality(i).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} ideals over {} curves", ideals.len(), curves.len()))
}

fn plane_equation(c: &Curve) -> Option<Poly> {
    c.is_plane().then(|| c.full_equation()).flatten()
}

fn sqh_samples() -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..12).map(|_| random_sqh(&mut rng)).collect()
}

fn plane_test_curves() -> Vec<(String, std::sync::Arc<Curve>)> {
    let mut out: Vec<_> = catalog::plane_curves().into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    out.extend(sqh_samples().into_iter().map(|f| (f.to_string(), sqh_curve(&f))));
    out
}

fn tau_cross_formula() -> Outcome {
    let known = [("cusp", 2), ("tacnode", 3), ("x^5 - y^6", 20), ("node", 1)];
    let mut n = 0;
    for (name, c) in plane_test_curves() {
        let f = plane_equation(&c).ok_or(format!("{name}: no equation"))?;
        let via = tjurina_via_values(&c).map_err(|e| format!("{name}: {e}"))?;
        let direct = tjurina_direct(&f, None).map_err(|e| format!("{name}: {e}"))?;
        if via != direct {
            return Err(format!("{name}: τ via values {via}, direct {direct}"));
        }
        if let Some((_, t)) = known.iter().find(|(k, _)| *k == name) {
            if *t != via {
                return Err(format!("{name}: τ = {via}, expected {t}"));
            }
        }
        n += 1;
    }
    Ok(format!("{n} plane curves"))
}

fn milnor() -> Outcome {
    let mut n = 0;
    for (name, c) in plane_test_curves() {
        let f = plane_equation(&c).ok_or(format!("{name}: no equation"))?;
        let formula = 2 * c.delta() - c.p() as i64 + 1;
        let direct = milnor_direct(&f, None).map_err(|e| format!("{name}: {e}"))?;
        if c.mu() != formula || direct != formula {
            return Err(format!("{name}: 2δ - p + 1 = {formula}, direct {direct}"));
        }
        n += 1;
    }
    Ok(format!("{n} plane curves"))
}

fn poincare(ideals: &[(String, FractionalIdeal)]) -> Outcome {
    for (name, i) in ideals {
        poincare_duality(i).map_err(|e| format!("{name}: {e}"))?;
    }
    let od = FractionalIdeal::preset(&catalog::cusp(), Preset::LocalRing).map_err(|e| e.to_string())?;
    let p = poincare_poly(&od).map_err(|e| e.to_string())?.to_string();
    if p != "1 - t + t^2" {
        return Err(format!("cusp P = {p}"));
    }
    Ok(format!("{} ideals; cusp P = {p}", ideals.len()))
}

fn teissier() -> Outcome {
    let mut n = 0;
    let mut qh_true = 0;
    let mut qh_false = 0;
    let mut curves = plane_test_curves();
    let f = FieldSpec::rationals();
    let deformed = Poly::from_ints(&f, &[(vec![5, 0], 1), (vec![0, 6], -1), (vec![3, 3], 1)]);
    curves.push((deformed.to_string(), sqh_curve(&deformed)));
    for (name, c) in curves {
        teissier_check(&c).map_err(|e| format!("{name}: {e}"))?;
        let tau = tjurina_via_values(&c).map_err(|e| format!("{name}: {e}"))?;
        let qh = quasihomogeneous_jacobian_check(&c).map_err(|e| format!("{name}: {e}"))?;
        match (tau == c.mu(), qh.holds) {
            (true, true) => qh_true += 1,
            (false, false) => qh_false += 1,
            (true, false) => return Err(format!("{name}: τ = μ but the Jacobian values are not a shifted semigroup")),
            (false, true) => {}
        }
        n += 1;
    }
    if qh_false == 0 {
        return Err("no τ < μ sample separated by the quasi-homogeneity check".into());
    }
    Ok(format!("{n} curves; quasi-homogeneity check true on {qh_true} with τ = μ, false on {qh_false} with τ < μ"))
}

fn algorithms(ideals: &[(String, FractionalIdeal)]) -> Outcome {
    let presets = [Preset::LocalRing, Preset::Normalization, Preset::Jacobian, Preset::Kahler, Preset::Residues, Preset::Conductor];
    let mut n = 0;
    for (name, c) in curves() {
        let od = FractionalIdeal::preset(&c, Preset::LocalRing).map_err(|e| e.to_string())?;
        let s = od.values().map_err(|e| e.to_string())?;
        let below: Point = c.gamma().iter().map(|g| g - 1).collect();
        if !delta_is_empty(&below, s) {
            return Err(format!("{name}: Δ(γ - 1, val(O_D)) is not empty"));
        }
        if c.p() > 2 {
            continue;
        }
        for preset in presets {
            let i = FractionalIdeal::preset(&c, preset).map_err(|e| format!("{name} {preset:?}: {e}"))?;
            fast_algorithms(&i).map_err(|e| format!("{name} {preset:?}: {e}"))?;
            n += 1;
        }
    }
    for (name, i) in ideals.iter().filter(|(_, i)| i.p() <= 2) {
        fast_algorithms(i).map_err(|e| format!("{name}: {e}"))?;
        n += 1;
    }
    Ok(format!("{n} ideals on one or two branches; Δ(γ - 1, val(O_D)) = ∅ on {} curves", curves().len()))
}

fn properties(ideals: &[(String, FractionalIdeal)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for (name, i) in ideals {
        let s = i.values().map_err(|e| e.to_string())?;
        let d = dual_values_symmetry(i).map_err(|e| e.to_string())?;
        for set in [s, &d] {
            inf_closure(set).map_err(|e| format!("{name}: {e}"))?;
            valquimonte(set).map_err(|e| format!("{name}: {e}"))?;
            path_independence(set, &mut rng).map_err(|e| format!("{name}: {e}"))?;
        }
        lambda_equivalence(s, &d, i.curve().gamma()).map_err(|e| format!("{name}: {e}"))?;
        poincare_duality(i).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} ideals and their duals", ideals.len()))
}

fn main() -> ExitCode {
    let ideals = ideals();
    let criteria: Vec<Criterion> = vec![
        ("x^5 - y^6 stratum table", Box::new(x5_y6_table)),
        ("x^10 + y^8 Tjurina numbers", Box::new(front_taus)),
        ("symmetry of values vs direct dual", Box::new(|| symmetry_oracle(&ideals))),
        ("τ via values vs direct", Box::new(tau_cross_formula)),
        ("μ = 2δ - p + 1 vs direct", Box::new(milnor)),
        ("Poincaré duality", Box::new(|| poincare(&ideals))),
        ("Teissier identities and quasi-homogeneity", Box::new(teissier)),
        ("value algorithms vs rank oracle", Box::new(|| algorithms(&ideals))),
        ("value set property suites", Box::new(|| properties(&ideals))),
    ];
    let mut failed = 0;
    for (k, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}: {label} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {label} ({why})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
