//! Cycle generators: kernel elements from Smith normal form and boundaries
//! of random chains.

use std::sync::Arc;

use mvhom::chain::{boundary, boundary_matrix, smith_normal_form, Chain, Simplex};
use mvhom::engine::{enumerate_simplices, DEFAULT_BOUND};
use mvhom::sample::{random_chain, rng};
use mvhom::{Exec, FinSpace};
use rand::Rng;

pub fn basis(x: &Arc<FinSpace>, n: usize) -> Vec<Simplex> {
    enumerate_simplices(x, n, DEFAULT_BOUND, Exec::default())
        .unwrap()
        .simplices
}

fn chain_from_vector(x: &Arc<FinSpace>, n: usize, basis: &[Simplex], v: &[i64]) -> Chain {
    Chain::from_terms(x.clone(), n, basis.iter().cloned().zip(v.iter().copied())).unwrap()
}

/// A lattice basis of the `n`-cycles, `n >= 1`.
pub fn kernel_cycles(x: &Arc<FinSpace>, n: usize) -> Vec<Chain> {
    let lower = basis(x, n - 1);
    let upper = basis(x, n);
    let d = boundary_matrix(&lower, &upper, Exec::default()).unwrap();
    let smith = smith_normal_form(&d.matrix).unwrap();
    smith
        .kernel_basis()
        .iter()
        .map(|v| chain_from_vector(x, n, &upper, v))
        .collect()
}

/// Seeded 2-cycles: alternately boundaries of random 3-chains and random
/// small combinations of kernel generators.
pub fn seeded_two_cycles(x: &Arc<FinSpace>, count: usize, seed: u64) -> Vec<Chain> {
    let mut r = rng(seed);
    let b3 = basis(x, 3);
    let kernel = kernel_cycles(x, 2);
    (0..count)
        .map(|k| {
            if k % 2 == 0 {
                let terms = r.gen_range(1..=4);
                let tau = random_chain(&mut r, x, 3, &b3, terms, 3).unwrap();
                boundary(&tau).unwrap()
            } else {
                let mut z = Chain::zero(x.clone(), 2);
                for _ in 0..r.gen_range(1..=3) {
                    let g = &kernel[r.gen_range(0..kernel.len())];
                    z.add_scaled(g, r.gen_range(-2..=2)).unwrap();
                }
                z
            }
        })
        .collect()
}
