mod common;

use curvesing::catalog;
use curvesing::ideal::dual_values_symmetry;
use curvesing::lattice::colength;
use curvesing::logres::{analyze, residue_values, torsion_dimension, AnalysisOptions, Verification};
use curvesing::{Error, FractionalIdeal, Preset};

#[test]
fn space_curve_with_symmetric_semigroup() {
    let c = catalog::monomial_space_curve(&[4, 5, 6]);
    assert!(c.is_gorenstein());
    assert_eq!((c.gamma(), c.delta()), (&[8][..], 4));
    let report = analyze(&c, AnalysisOptions { verification: Verification::Full, d_max: None }).unwrap();
    assert!(report.gorenstein_caveat);
    assert_eq!(report.tau, None);
    assert!(report.checks.values().all(|k| k.passed), "{:?}", report.checks);
    let r = residue_values(&c).unwrap();
    assert!(r.contains(&[0]) && !r.contains(&[-100]));
}

#[test]
fn non_gorenstein_curve_is_refused() {
    let c = catalog::monomial_space_curve(&[3, 4, 5]);
    assert!(!c.is_gorenstein());
    assert!(matches!(analyze(&c, AnalysisOptions::default()), Err(Error::InvalidInput(_))));
    let od = FractionalIdeal::preset(&c, Preset::LocalRing).unwrap();
    assert!(matches!(dual_values_symmetry(&od), Err(Error::InvalidInput(_))));
}

#[test]
fn colengths_of_named_ideals() {
    for (name, c) in catalog::plane_curves() {
        let vals = |p| FractionalIdeal::preset(&c, p).unwrap().values().unwrap().clone();
        let (od, norm, cond, jac, res) =
            (vals(Preset::LocalRing), vals(Preset::Normalization), vals(Preset::Conductor), vals(Preset::Jacobian), vals(Preset::Residues));
        assert_eq!(colength(&od, &norm), c.delta(), "{name}");
        assert_eq!(colength(&cond, &od), c.gamma().iter().sum::<i64>() - c.delta(), "{name}");
        let tau = curvesing::logres::tjurina_via_values(&c).unwrap();
        assert_eq!(colength(&jac, &od), tau, "{name}");
        assert_eq!(colength(&od, &res), tau, "{name}");
        assert_eq!(torsion_dimension(&c, tau).unwrap(), tau, "{name}");
    }
}

#[test]
fn full_verification_on_the_catalog() {
    for (name, c) in catalog::plane_curves() {
        let report = analyze(&c, AnalysisOptions { verification: Verification::Full, d_max: None }).unwrap();
        assert!(report.checks.values().all(|k| k.passed), "{name}: {:?}", report.checks);
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(serde_json::from_str::<curvesing::logres::AnalysisReport>(&json).unwrap(), report);
    }
}
