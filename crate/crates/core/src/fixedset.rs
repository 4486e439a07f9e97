//! Fixed subsets `A = T(A)` of a self-correspondence.
//!
//! The image operator `A ↦ T(A)` is inclusion-monotone and `T(X) ⊆ X`, so
//! iterating it from the whole space gives a decreasing chain that
//! stabilizes at the greatest fixed subset. Surjectivity of the projection
//! keeps every iterate nonempty. No separation hypothesis is needed for
//! finite spaces.

use crate::corr::Corr;
use crate::error::{Error, Result};
use crate::finspace::{same_space, PointSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSetReport {
    pub fixed_set: PointSet,
    /// `A_0 = X, A_1 = T(A_0), ..., A_k` with `A_k` the first fixed iterate.
    pub iterations: Vec<PointSet>,
    /// The index `k` of the first fixed iterate.
    pub stabilized_at: usize,
}

fn require_self_map(t: &Corr) -> Result<()> {
    if !same_space(t.source(), t.target()) {
        return Err(Error::SpaceMismatch(
            "fixed subsets need a self-correspondence".into(),
        ));
    }
    Ok(())
}

pub fn is_fixed_subset(t: &Corr, set: &PointSet) -> Result<bool> {
    require_self_map(t)?;
    Ok(t.image(set)? == *set)
}

pub fn greatest_fixed_subset(t: &Corr) -> Result<FixedSetReport> {
    require_self_map(t)?;
    let space = t.source();
    if space.is_empty() {
        return Err(Error::EmptySpace);
    }
    let mut iterations = vec![space.full_set()];
    loop {
        let current = iterations.last().expect("nonempty");
        let next = t.image(current)?;
        if next == *current {
            break;
        }
        iterations.push(next);
    }
    let stabilized_at = iterations.len() - 1;
    Ok(FixedSetReport {
        fixed_set: iterations[stabilized_at].clone(),
        iterations,
        stabilized_at,
    })
}
