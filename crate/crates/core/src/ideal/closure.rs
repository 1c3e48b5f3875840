//! Values on a single branch by saturating a standard basis.

use crate::error::{Error, Result};
use crate::lattice::ValueSet;
use crate::span::{value_closure, Tagged};

use super::FractionalIdeal;

/// Values of an ideal on a one-branch curve, independent of the rank oracle:
/// an echelon basis of `I / t^(ν+1)` is saturated under multiplication by
/// the coordinates and its leading exponents are read off.
pub fn value_algo_p1(ideal: &FractionalIdeal) -> Result<ValueSet> {
    if ideal.p() != 1 {
        return Err(Error::InvalidInput("value_algo_p1 needs a curve with one branch".into()));
    }
    let branch = &ideal.curve().branches()[0];
    let (lambda, nu) = (ideal.lambda()[0], ideal.nu()[0]);
    let gens = ideal.generators().iter().map(|g| Tagged { s: g.comp(0).clone(), tag: None }).collect();
    let basis = value_closure(branch.coords(), gens, nu + 1, "value closure")?;
    let box_values = basis.keys().filter(|&&v| v >= lambda && v <= nu).map(|&v| vec![v]).collect();
    ValueSet::new(vec![lambda], vec![nu], box_values)
        .map_err(|e| Error::Invariant(format!("closure produced an inconsistent value set: {e}")))
}
