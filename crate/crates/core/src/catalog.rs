//! Small curves used throughout the tests, the book and the CLI.
//!
//! Plane curves carry one equation per branch so the conductor comes from
//! intersection multiplicities.

use std::sync::Arc;

use crate::coeffs::{Field, FieldElement, FieldSpec};
use crate::curve::{BranchParam, Curve, Equations};
use crate::poly::Poly;
use crate::series::TruncatedSeries;

fn series(f: &Field, terms: &[(i64, i64)]) -> TruncatedSeries {
    TruncatedSeries::from_ints(f, terms)
}

fn plane(f: &Field, branches: &[(&[(i64, i64)], &[(i64, i64)])], eqs: &[&[(u32, u32, i64)]]) -> Arc<Curve> {
    let bs = branches
        .iter()
        .map(|(x, y)| BranchParam::new(vec![series(f, x), series(f, y)]).expect("catalog branch"))
        .collect();
    let eqs = eqs
        .iter()
        .map(|terms| Poly::from_ints(f, &terms.iter().map(|&(i, j, c)| (vec![i, j], c)).collect::<Vec<_>>()))
        .collect();
    Arc::new(Curve::new(f, bs, Equations::PerBranch(eqs)).expect("catalog curve"))
}

/// `y^2 = x^3`, parametrized by `(t^2, t^3)`.
pub fn cusp() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(&f, &[(&[(2, 1)], &[(3, 1)])], &[&[(0, 2, 1), (3, 0, -1)]])
}

/// The smooth branch `y = 0`.
pub fn smooth() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(&f, &[(&[(1, 1)], &[])], &[&[(0, 1, 1)]])
}

/// `y^3 = x^4`.
pub fn e6() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(&f, &[(&[(3, 1)], &[(4, 1)])], &[&[(0, 3, 1), (4, 0, -1)]])
}

/// `(t^4, t^6 + t^7)`, semigroup `<4, 6, 13>`.
pub fn two_pair_branch() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    // (y^2 - x^3)^2 - 4 x^5 y - x^7
    plane(
        &f,
        &[(&[(4, 1)], &[(6, 1), (7, 1)])],
        &[&[(0, 4, 1), (3, 2, -2), (6, 0, 1), (5, 1, -4), (7, 0, -1)]],
    )
}

/// `x^a = y^b` for coprime `a, b`, parametrized by `(t^b, t^a)`.
pub fn quasi_homogeneous(a: u32, b: u32) -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(&f, &[(&[(b as i64, 1)], &[(a as i64, 1)])], &[&[(a, 0, 1), (0, b, -1)]])
}

/// `xy = 0`.
pub fn node() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(&f, &[(&[(1, 1)], &[]), (&[], &[(1, 1)])], &[&[(0, 1, 1)], &[(1, 0, 1)]])
}

/// `y^2 = x^4`.
pub fn tacnode() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(
        &f,
        &[(&[(1, 1)], &[(2, 1)]), (&[(1, 1)], &[(2, -1)])],
        &[&[(0, 1, 1), (2, 0, -1)], &[(0, 1, 1), (2, 0, 1)]],
    )
}

/// `y^2 = x^6`.
pub fn a5() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(
        &f,
        &[(&[(1, 1)], &[(3, 1)]), (&[(1, 1)], &[(3, -1)])],
        &[&[(0, 1, 1), (3, 0, -1)], &[(0, 1, 1), (3, 0, 1)]],
    )
}

/// `x (y^2 - x^3) = 0`.
pub fn cusp_and_line() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(&f, &[(&[(2, 1)], &[(3, 1)]), (&[], &[(1, 1)])], &[&[(0, 2, 1), (3, 0, -1)], &[(1, 0, 1)]])
}

/// `x (x^2 + y^3) = 0`.
pub fn e7() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(&f, &[(&[], &[(1, 1)]), (&[(3, 1)], &[(2, -1)])], &[&[(1, 0, 1)], &[(2, 0, 1), (0, 3, 1)]])
}

/// `xy(x - y) = 0`.
pub fn three_lines() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(
        &f,
        &[(&[(1, 1)], &[]), (&[], &[(1, 1)]), (&[(1, 1)], &[(1, 1)])],
        &[&[(0, 1, 1)], &[(1, 0, 1)], &[(0, 1, 1), (1, 0, -1)]],
    )
}

/// `y^3 = x^3` over `Q(w)`, `w^2 + w + 1 = 0`: the lines `y = w^k x`.
pub fn three_lines_cyclotomic() -> Arc<Curve> {
    let f = FieldSpec::parse(&["1".into(), "1".into(), "1".into()]).expect("cyclotomic field");
    let w = FieldElement::generator(&f);
    let one = FieldElement::one(&f);
    let roots = [one.clone(), w.clone(), w.pow(2)];
    let branches = roots
        .iter()
        .map(|r| {
            BranchParam::new(vec![
                TruncatedSeries::monomial(&f, 1, one.clone()),
                TruncatedSeries::monomial(&f, 1, r.clone()),
            ])
            .expect("line")
        })
        .collect();
    let eqs = roots
        .iter()
        .map(|r| {
            Poly::from_terms(&f, 2, [(vec![0, 1], one.clone()), (vec![1, 0], -r)]).expect("linear form")
        })
        .collect();
    Arc::new(Curve::new(&f, branches, Equations::PerBranch(eqs)).expect("three lines"))
}

/// `x (y^2 - x^4) = 0`.
pub fn tacnode_and_line() -> Arc<Curve> {
    let f = FieldSpec::rationals();
    plane(
        &f,
        &[(&[(1, 1)], &[(2, 1)]), (&[(1, 1)], &[(2, -1)]), (&[], &[(1, 1)])],
        &[&[(0, 1, 1), (2, 0, -1)], &[(0, 1, 1), (2, 0, 1)], &[(1, 0, 1)]],
    )
}

/// The monomial space curve `(t^a_1, ..., t^a_m)`.
pub fn monomial_space_curve(exps: &[i64]) -> Arc<Curve> {
    let f = FieldSpec::rationals();
    let b = BranchParam::new(exps.iter().map(|&e| series(&f, &[(e, 1)])).collect()).expect("monomial curve");
    Arc::new(Curve::new(&f, vec![b], Equations::None).expect("monomial curve"))
}

/// Every named plane curve above, with a label.
pub fn plane_curves() -> Vec<(&'static str, Arc<Curve>)> {
    vec![
        ("smooth", smooth()),
        ("cusp", cusp()),
        ("E6", e6()),
        ("(t^4, t^6 + t^7)", two_pair_branch()),
        ("x^5 - y^6", quasi_homogeneous(5, 6)),
        ("node", node()),
        ("tacnode", tacnode()),
        ("A5", a5()),
        ("cusp and line", cusp_and_line()),
        ("E7", e7()),
        ("three lines", three_lines()),
        ("three lines over Q(w)", three_lines_cyclotomic()),
        ("tacnode and line", tacnode_and_line()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn milnor_numbers() {
        let expected = [0, 2, 6, 16, 20, 1, 3, 5, 5, 7, 4, 4, 6];
        for ((name, c), mu) in plane_curves().into_iter().zip(expected) {
            assert_eq!(c.mu(), mu, "{name}");
        }
    }
}
