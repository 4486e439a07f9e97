//! Brute-force oracles shared by the integration tests. None of these call
//! the library's own validity or image code.
#![allow(dead_code)]

use std::sync::Arc;

use mvhom::corr::validate;
use mvhom::{Corr, FinSpace, PointSet};

/// Every preorder on `n` labeled points.
pub fn all_preorders(n: usize) -> Vec<FinSpace> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << off.len() {
        let rel = |a: usize, b: usize| {
            a == b
                || off
                    .iter()
                    .position(|&p| p == (a, b))
                    .is_some_and(|k| mask >> k & 1 == 1)
        };
        let transitive =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c))));
        if transitive {
            let pairs: Vec<(usize, usize)> =
                off.iter().copied().filter(|&(a, b)| rel(a, b)).collect();
            out.push(FinSpace::from_index_pairs(names.clone(), &pairs, false).unwrap());
        }
    }
    out
}

pub fn bits(n: usize, mask: u64) -> PointSet {
    let mut s = PointSet::with_capacity(n);
    for i in 0..n {
        if mask >> i & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

/// Closed sets are the down-sets of the specialization order.
pub fn is_down_set(space: &FinSpace, mask: u64) -> bool {
    (0..space.len()).all(|x| {
        mask >> x & 1 == 0 || (0..space.len()).all(|y| !space.leq(y, x) || mask >> y & 1 == 1)
    })
}

/// Validity straight from the definition: the projection of the graph is
/// surjective and sends every closed subset of the graph (with the
/// subspace topology of the product) to a closed subset of the source.
pub fn valid_by_definition(source: &FinSpace, target: &FinSpace, fibers: &[PointSet]) -> bool {
    let graph: Vec<(usize, usize)> = fibers
        .iter()
        .enumerate()
        .flat_map(|(x, f)| f.ones().map(move |y| (x, y)))
        .collect();
    assert!(graph.len() <= 20, "graph too large for the oracle");
    if (0..source.len()).any(|x| fibers[x].is_clear()) {
        return false;
    }
    let below = |a: (usize, usize), b: (usize, usize)| source.leq(a.0, b.0) && target.leq(a.1, b.1);
    for mask in 0u64..1 << graph.len() {
        let closed = (0..graph.len()).all(|i| {
            mask >> i & 1 == 0
                || (0..graph.len()).all(|j| !below(graph[j], graph[i]) || mask >> j & 1 == 1)
        });
        if !closed {
            continue;
        }
        let proj = (0..graph.len())
            .filter(|&i| mask >> i & 1 == 1)
            .fold(0u64, |m, i| m | 1 << graph[i].0);
        if !is_down_set(source, proj) {
            return false;
        }
    }
    true
}

/// All graphs `source x target` accepted by the library's validity check.
pub fn brute_force_corrs(source: &Arc<FinSpace>, target: &Arc<FinSpace>) -> Vec<Vec<PointSet>> {
    let (n, m) = (source.len(), target.len());
    assert!(n * m <= 24);
    let mut out = Vec::new();
    for mask in 0u64..1 << (n * m) {
        let fibers: Vec<PointSet> = (0..n)
            .map(|x| bits(m, mask >> (x * m) & ((1 << m) - 1)))
            .collect();
        if validate(source, target, &fibers).is_valid {
            out.push(fibers);
        }
    }
    out
}

/// Image by explicit pair scan.
pub fn image_of(t: &Corr, set: &PointSet) -> PointSet {
    let mut out = PointSet::with_capacity(t.target().len());
    for (x, y) in t.pairs() {
        if set.contains(x) {
            out.insert(y);
        }
    }
    out
}

/// All fixed subsets `A = T(A)` by exhaustive search.
pub fn all_fixed_subsets(t: &Corr) -> Vec<PointSet> {
    let n = t.source().len();
    (0u64..1 << n)
        .map(|m| bits(n, m))
        .filter(|a| image_of(t, a) == *a)
        .collect()
}

pub fn is_subset(a: &PointSet, b: &PointSet) -> bool {
    a.ones().all(|x| b.contains(x))
}
pub mod cycles;
pub mod laws;
