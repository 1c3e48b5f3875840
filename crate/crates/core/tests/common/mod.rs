#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use curvesing::catalog;
use curvesing::coeffs::FieldSpec;
use curvesing::curve::{BranchSource, Equations};
use curvesing::ideal::{dual_direct, dual_values_symmetry, value_algo_p1, value_algo_p2, value_set_rank_oracle};
use curvesing::lattice::{ell_along_path, lambda_nonempty, points, EllTable, Point};
use curvesing::poincare::symmetry_of_values;
use curvesing::{Curve, FieldElement, FractionalIdeal, Poly, SeriesVector, TruncatedSeries, ValueSet};

/// Gorenstein curves with one, two and three branches.
pub fn curves() -> Vec<(String, Arc<Curve>)> {
    let mut out: Vec<(String, Arc<Curve>)> = catalog::plane_curves().into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    out.push(("x^3 - y^5".into(), catalog::quasi_homogeneous(3, 5)));
    out.push(("(t^4, t^5, t^6)".into(), catalog::monomial_space_curve(&[4, 5, 6])));
    out
}

/// An ideal generated by one to three vectors with small integer coefficients.
pub fn random_ideal(curve: &Arc<Curve>, rng: &mut ChaCha8Rng) -> FractionalIdeal {
    let field = curve.field();
    let p = curve.p();
    let ngens = rng.gen_range(1..=3);
    let gens = (0..ngens)
        .map(|g| {
            let comps = (0..p)
                .map(|_| {
                    let low = rng.gen_range(-2..=3);
                    let terms: Vec<(i64, i64)> = (0..4)
                        .map(|k| {
                            let c = if k == 0 && g == 0 { rng.gen_range(1..=3) } else { rng.gen_range(-2..=2) };
                            (low + k, c)
                        })
                        .collect();
                    TruncatedSeries::from_ints(field, &terms)
                })
                .collect();
            SeriesVector::new(comps).expect("same field")
        })
        .collect();
    FractionalIdeal::new(curve, gens).expect("random ideal")
}

/// `(name, ideal)` pairs: `count` random ideals cycling through [`curves`].
pub fn random_ideals(count: usize, seed: u64) -> Vec<(String, FractionalIdeal)> {
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let cs = curves();
    (0..count)
        .map(|k| {
            let (name, c) = &cs[k % cs.len()];
            (name.clone(), random_ideal(c, &mut rng))
        })
        .collect()
}

/// `x^a - y^b` plus a few random terms above the weighted diagonal.
pub fn random_sqh(rng: &mut ChaCha8Rng) -> Poly {
    let f = FieldSpec::rationals();
    let pairs = [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (3, 7), (2, 7)];
    let (a, b) = *pairs.choose(rng).unwrap();
    let mut terms = vec![(vec![a, 0], 1), (vec![0, b], -1)];
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(0..=a);
        let j = rng.gen_range(0..=b);
        if b * i + a * j > a * b && !terms.iter().any(|(e, _)| *e == vec![i, j]) {
            terms.push((vec![i, j], rng.gen_range(-3..=3)));
        }
    }
    Poly::from_ints(&f, &terms)
}

pub fn sqh_curve(f: &Poly) -> Arc<Curve> {
    let src = BranchSource::SemiQuasiHomogeneous { equation: f.clone() };
    Arc::new(Curve::from_sources(f.field(), &[src], Equations::Full(f.clone()), None).expect("sqh curve"))
}

pub fn ints(f: &curvesing::Field, v: &[i64]) -> Vec<FieldElement> {
    v.iter().map(|&n| FieldElement::from_int(f, n)).collect()
}

fn unit(p: usize, i: usize) -> Point {
    (0..p).map(|j| i64::from(j == i)).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn offset(a: &[i64], k: i64) -> Point {
    a.iter().map(|x| x + k).collect()
}

/// The dual by symmetry agrees with the directly computed dual, and dualizing twice returns `I`.
pub fn duality(ideal: &FractionalIdeal) -> Result<(), String> {
    let gamma = ideal.curve().gamma().to_vec();
    let vals = ideal.values().map_err(|e| e.to_string())?;
    let sym = dual_values_symmetry(ideal).map_err(|e| e.to_string())?;
    let direct = dual_direct(ideal).map_err(|e| e.to_string())?;
    let dv = direct.values().map_err(|e| e.to_string())?;
    if !dv.same_values(&sym) {
        return Err(format!("dual differs at {:?}", dv.first_difference(&sym)));
    }
    let double = dual_direct(&direct).map_err(|e| e.to_string())?;
    let ddv = double.values().map_err(|e| e.to_string())?;
    if !ddv.same_values(vals) {
        return Err(format!("double dual differs at {:?}", ddv.first_difference(vals)));
    }
    let back = curvesing::lattice::dual_by_symmetry(&sym, &gamma);
    if !back.same_values(vals) {
        return Err(format!("symmetry is not an involution at {:?}", back.first_difference(vals)));
    }
    Ok(())
}

/// `P_(I^∨)(t) = (-1)^(p+1) t^γ P_I(1/t)` and the `c` identity.
pub fn poincare_duality(ideal: &FractionalIdeal) -> Result<(), String> {
    let vals = ideal.values().map_err(|e| e.to_string())?;
    let sym = dual_values_symmetry(ideal).map_err(|e| e.to_string())?;
    let r = symmetry_of_values(vals, &sym, ideal.curve().gamma()).map_err(|e| e.to_string())?;
    if !r.polynomial_identity {
        return Err(format!("P_I = {}, P_dual = {}", r.ideal, r.dual));
    }
    if !r.c_identity {
        return Err(format!("c identity fails at {:?}", r.witness));
    }
    Ok(())
}

/// Fast value algorithms against the rank oracle.
pub fn fast_algorithms(ideal: &FractionalIdeal) -> Result<(), String> {
    let oracle = value_set_rank_oracle(ideal).map_err(|e| e.to_string())?;
    let fast = match ideal.p() {
        1 => value_algo_p1(ideal),
        2 => value_algo_p2(ideal, None, None),
        _ => return Ok(()),
    }
    .map_err(|e| e.to_string())?;
    if fast.same_values(&oracle) {
        Ok(())
    } else {
        Err(format!("differs from the oracle at {:?}", fast.first_difference(&oracle)))
    }
}

/// `v, v' ∈ S ⇒ inf(v, v') ∈ S`, on all pairs of box values.
pub fn inf_closure(s: &ValueSet) -> Result<(), String> {
    let bv: Vec<&Point> = s.box_values().iter().collect();
    for a in &bv {
        for b in &bv {
            let m: Point = a.iter().zip(b.iter()).map(|(x, y)| *x.min(y)).collect();
            if !s.contains(&m) {
                return Err(format!("inf({a:?}, {b:?}) missing"));
            }
        }
    }
    Ok(())
}

/// For `v ≠ v'` in `S` with `v_i = v'_i` there is `v'' ∈ S` with `v''_i > v_i`,
/// `v''_j ≥ min(v_j, v'_j)` and equality where `v_j ≠ v'_j`.
pub fn valquimonte(s: &ValueSet) -> Result<(), String> {
    let p = s.p();
    let bv: Vec<&Point> = s.box_values().iter().collect();
    for a in &bv {
        for b in &bv {
            if a == b {
                continue;
            }
            for i in (0..p).filter(|&i| a[i] == b[i]) {
                let lo: Point = (0..p).map(|j| if j == i { a[i] + 1 } else { a[j].min(b[j]) }).collect();
                let hi: Point = (0..p)
                    .map(|j| if j == i || a[j] == b[j] { lo[j].max(s.nu()[j]) } else { lo[j] })
                    .collect();
                if !points(&lo, &hi).any(|c| s.contains(&c)) {
                    return Err(format!("no witness for {a:?}, {b:?} at coordinate {i}"));
                }
            }
        }
    }
    Ok(())
}

/// `Λ_i(w, I^∨) ≠ ∅ ⟺ Λ_i(γ - w - e_i, I) = ∅` on the window around the dual.
pub fn lambda_equivalence(s: &ValueSet, dual: &ValueSet, gamma: &[i64]) -> Result<(), String> {
    let p = s.p();
    for w in points(&offset(dual.lambda(), -2), &offset(dual.nu(), 2)) {
        for i in 0..p {
            let mirrored = sub(&sub(gamma, &w), &unit(p, i));
            if lambda_nonempty(&w, dual, i) == lambda_nonempty(&mirrored, s, i) {
                return Err(format!("Λ equivalence fails at w = {w:?}, i = {i}"));
            }
        }
    }
    Ok(())
}

/// `ℓ(v)` agrees along random monotone paths from below `λ`.
pub fn path_independence(s: &ValueSet, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let table = EllTable::new(s);
    let p = s.p();
    let start = offset(s.lambda(), -1);
    for _ in 0..8 {
        let target: Point = (0..p).map(|j| rng.gen_range(start[j]..=s.nu()[j] + 1)).collect();
        let mut steps: Vec<usize> = (0..p).flat_map(|j| std::iter::repeat_n(j, (target[j] - start[j]) as usize)).collect();
        for _ in 0..2 {
            steps.shuffle(rng);
            let mut path = vec![start.clone()];
            for &j in &steps {
                let mut next = path.last().unwrap().clone();
                next[j] += 1;
                path.push(next);
            }
            let along = ell_along_path(s, &path).map_err(|e| e.to_string())?;
            if along != table.ell(&target) {
                return Err(format!("ℓ({target:?}) = {} but a path gives {along}", table.ell(&target)));
            }
        }
    }
    Ok(())
}
