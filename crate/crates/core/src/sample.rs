//! Seeded random spaces, maps, correspondences and chains for property
//! tests, benches and the command line. Every generator is driven by a
//! caller-owned ChaCha8 stream, so a seed fixes all output.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{Chain, Simplex};
use crate::corr::Corr;
use crate::error::Result;
use crate::finspace::{ContMap, FinSpace};
use crate::simplicial::delta_fin;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Random T0 space: a random DAG on `n` points (edges go from lower to
/// higher index) closed transitively.
pub fn random_poset(rng: &mut SampleRng, n: usize, density: f64) -> FinSpace {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
    FinSpace::from_index_pairs(names(n), &pairs, true).expect("acyclic relation")
}

/// Random preorder, possibly with equivalent points.
pub fn random_preorder(rng: &mut SampleRng, n: usize, density: f64) -> FinSpace {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(density / 2.0) {
                pairs.push((i, j));
            }
        }
    }
    FinSpace::from_index_pairs(names(n), &pairs, false).expect("preorder")
}

/// Random space with `1..=max_points` points; discrete, poset or preorder.
pub fn random_space(rng: &mut SampleRng, max_points: usize) -> FinSpace {
    let n = rng.gen_range(1..=max_points.max(1));
    match rng.gen_range(0..4) {
        0 => FinSpace::discrete(&names(n)).expect("distinct names"),
        1 => random_preorder(rng, n, 0.4),
        _ => random_poset(rng, n, 0.5),
    }
}

/// Random continuous map. Points are assigned in order of increasing
/// down-set, each to a random point above the images of the points below;
/// after a few failed attempts the map falls back to a constant.
pub fn random_map(rng: &mut SampleRng, dom: &Arc<FinSpace>, cod: &Arc<FinSpace>) -> ContMap {
    let mut order: Vec<usize> = (0..dom.len()).collect();
    order.sort_by_key(|&x| (dom.down(x).count_ones(..), x));
    'attempt: for _ in 0..8 {
        let mut assignment = vec![usize::MAX; dom.len()];
        for (p, &x) in order.iter().enumerate() {
            if let Some(&eq) = order[..p].iter().find(|&&q| dom.leq(x, q)) {
                assignment[x] = assignment[eq];
                continue;
            }
            let mut allowed = cod.full_set();
            for &q in &order[..p] {
                if dom.leq(q, x) {
                    allowed.intersect_with(cod.up(assignment[q]));
                }
            }
            let choices: Vec<usize> = allowed.ones().collect();
            match choices.choose(rng) {
                Some(&y) => assignment[x] = y,
                None => continue 'attempt,
            }
        }
        return ContMap::new(dom.clone(), cod.clone(), assignment)
            .expect("monotone by construction");
    }
    let y = rng.gen_range(0..cod.len());
    ContMap::constant(dom.clone(), cod.clone(), y).expect("in range")
}

/// Random valid correspondence: small random fibers, then repaired by
/// adding witnesses below until every closure condition holds.
pub fn random_corr(rng: &mut SampleRng, source: &Arc<FinSpace>, target: &Arc<FinSpace>) -> Corr {
    let m = target.len();
    let mut fibers: Vec<_> = (0..source.len())
        .map(|_| {
            let mut f = target.empty_set();
            f.insert(rng.gen_range(0..m));
            while rng.gen_bool(0.3) {
                f.insert(rng.gen_range(0..m));
            }
            f
        })
        .collect();
    loop {
        let mut changed = false;
        for x in 0..source.len() {
            let ys: Vec<usize> = fibers[x].ones().collect();
            for y in ys {
                for lower in source.down(x).ones() {
                    if fibers[lower].is_disjoint(target.down(y)) {
                        let witnesses: Vec<usize> = target.down(y).ones().collect();
                        let w = *witnesses.choose(rng).expect("reflexive");
                        fibers[lower].insert(w);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Corr::new(source.clone(), target.clone(), fibers).expect("repaired to validity")
}

pub fn random_simplex(rng: &mut SampleRng, space: &Arc<FinSpace>, n: usize) -> Result<Simplex> {
    let delta = delta_fin(n)?;
    Simplex::new(random_corr(rng, &delta.space, space))
}

/// Random chain with up to `terms` simplices drawn from `basis`, or
/// generated freshly when `basis` is empty, with coefficients in
/// `-max_coeff..=max_coeff`.
pub fn random_chain(
    rng: &mut SampleRng,
    space: &Arc<FinSpace>,
    n: usize,
    basis: &[Simplex],
    terms: usize,
    max_coeff: i64,
) -> Result<Chain> {
    let mut c = Chain::zero(space.clone(), n);
    for _ in 0..terms {
        let s = match basis.choose(rng) {
            Some(s) => s.clone(),
            None => random_simplex(rng, space, n)?,
        };
        c.add_term(s, rng.gen_range(-max_coeff..=max_coeff))?;
    }
    Ok(c)
}
