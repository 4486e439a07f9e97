mod common;

use std::sync::Arc;

use common::brute_force_corrs;
use mvhom::chain::{
    boundary, boundary_matrix, homology_at, smith_normal_form, BoundaryMatrix, Chain,
    ChainHomotopy, IntMatrix, Simplex,
};
use mvhom::corr::compose;
use mvhom::engine::{contraction, enumerate_corrs, enumerate_simplices, DEFAULT_BOUND};
use mvhom::sample::{random_chain, random_corr, random_simplex, random_space, rng};
use mvhom::simplicial::{delta_fin, interval_fin};
use mvhom::{Corr, Exec, FinSpace};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn pt() -> Arc<FinSpace> {
    Arc::new(FinSpace::point())
}

fn ab() -> Arc<FinSpace> {
    Arc::new(FinSpace::discrete(&["a", "b"]).unwrap())
}

fn sierpinski() -> Arc<FinSpace> {
    Arc::new(FinSpace::sierpinski())
}

fn bases(x: &Arc<FinSpace>, max: usize) -> Vec<Vec<Simplex>> {
    (0..=max)
        .map(|n| {
            enumerate_simplices(x, n, DEFAULT_BOUND, Exec::default())
                .unwrap()
                .simplices
        })
        .collect()
}

#[test]
fn boundary_squares_to_zero_on_enumerated_bases() {
    for x in [pt(), ab(), sierpinski()] {
        for (n, basis) in bases(&x, 3).iter().enumerate().skip(2) {
            for s in basis {
                let c = Chain::from_simplex(s.clone());
                assert!(
                    boundary(&boundary(&c).unwrap()).unwrap().is_zero(),
                    "degree {n}: {s:?}"
                );
            }
        }
    }
}

#[test]
fn matrix_composites_vanish() {
    for x in [pt(), ab(), sierpinski()] {
        let b = bases(&x, 3);
        for n in 1..3 {
            let lo = boundary_matrix(&b[n - 1], &b[n], Exec::default()).unwrap();
            let hi = boundary_matrix(&b[n], &b[n + 1], Exec::default()).unwrap();
            assert!(lo.matrix.mul(&hi.matrix).unwrap().is_zero());
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for x in [pt(), ab(), sierpinski()] {
        for n in 0..=2 {
            if x.len() == 2 && !x.is_discrete() && n == 2 {
                continue;
            }
            let delta = delta_fin(n).unwrap();
            let mut expected = brute_force_corrs(&delta.space, &x);
            expected.sort_by(|a, b| {
                a.iter()
                    .zip(b)
                    .map(|(p, q)| p.ones().cmp(q.ones()))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            let got: Vec<_> = enumerate_simplices(&x, n, DEFAULT_BOUND, Exec::default())
                .unwrap()
                .simplices
                .into_iter()
                .map(|s| s.corr().fibers().to_vec())
                .collect();
            assert_eq!(got, expected, "{x:?}, n = {n}");
        }
    }
}

#[test]
fn discrete_pair_basis_sizes_follow_dedekind_numbers() {
    // 1 + 2 (M(n+1) - 2) with Dedekind numbers M = 3, 6, 20, 168, 7581
    let x = ab();
    let sizes: Vec<usize> = (0..=4)
        .map(|n| {
            enumerate_simplices(&x, n, DEFAULT_BOUND, Exec::default())
                .unwrap()
                .len()
        })
        .collect();
    assert_eq!(sizes, [3, 9, 37, 333, 15159]);
}

#[test]
fn smith_factorization_on_boundary_matrices() {
    let x = ab();
    let b = bases(&x, 3);
    for n in 1..=3 {
        let d = boundary_matrix(&b[n - 1], &b[n], Exec::default()).unwrap();
        let s = smith_normal_form(&d.matrix).unwrap();
        assert_eq!(s.u.mul(&d.matrix).unwrap().mul(&s.v).unwrap(), s.d);
        for v in s.kernel_basis() {
            assert!(d.matrix.mul_vec(&v).unwrap().iter().all(|&e| e == 0));
        }
    }
}

#[test]
fn homology_is_invariant_under_basis_reordering() {
    let x = sierpinski();
    let mut b = bases(&x, 2);
    let h = |b: &[Vec<Simplex>]| {
        let d1 = boundary_matrix(&b[0], &b[1], Exec::default()).unwrap();
        let d2 = boundary_matrix(&b[1], &b[2], Exec::default()).unwrap();
        (
            homology_at(&BoundaryMatrix::degree_zero(b[0].len()), &d1).unwrap(),
            homology_at(&d1, &d2).unwrap(),
        )
    };
    let before = h(&b);
    let mut r = rng(3);
    for basis in &mut b {
        basis.shuffle(&mut r);
    }
    assert_eq!(h(&b), before);
}

fn homotopy_source(x: &Arc<FinSpace>) -> Arc<FinSpace> {
    Arc::new(x.product(&interval_fin(1).unwrap().space))
}

/// Every valid homotopy `X x I -> Y` satisfies `dh + hd = S# - R#` on every
/// basis simplex of degree at most 2.
#[test]
fn homotopy_identity_for_all_small_homotopies() {
    let spaces = [pt(), sierpinski(), ab()];
    let mut homotopies = 0;
    for x in &spaces {
        let samples: Vec<Chain> = bases(x, 2)
            .into_iter()
            .flatten()
            .map(Chain::from_simplex)
            .collect();
        for y in &spaces {
            let all =
                enumerate_corrs(&homotopy_source(x), y, DEFAULT_BOUND, Exec::default()).unwrap();
            let failures: usize = Exec::default()
                .map(&all, |l| {
                    let h = ChainHomotopy::new(x.clone(), l.clone()).unwrap();
                    samples
                        .iter()
                        .filter(|c| {
                            let (lhs, rhs) = h.identity_sides(c).unwrap();
                            lhs != rhs
                        })
                        .count()
                })
                .into_iter()
                .sum();
            assert_eq!(failures, 0, "{x:?} -> {y:?}");
            homotopies += all.len();
        }
    }
    assert!(homotopies > 100);
}

#[test]
fn homotopy_identity_for_random_three_point_homotopies() {
    let mut r = rng(17);
    for _ in 0..40 {
        let x = Arc::new(random_space(&mut r, 3));
        let y = Arc::new(random_space(&mut r, 3));
        let l = random_corr(&mut r, &homotopy_source(&x), &y);
        let h = ChainHomotopy::new(x.clone(), l).unwrap();
        for n in 0..=2 {
            let c = random_chain(&mut r, &x, n, &[], 3, 3).unwrap();
            let (lhs, rhs) = h.identity_sides(&c).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn contraction_steps_satisfy_homotopy_identity() {
    let x = ab();
    let (l1, l2) = contraction(&x, 0).unwrap();
    let samples: Vec<Chain> = bases(&x, 2)
        .into_iter()
        .flatten()
        .map(Chain::from_simplex)
        .collect();
    for l in [l1, l2] {
        let h = ChainHomotopy::new(x.clone(), l).unwrap();
        let report = mvhom::chain::verify_homotopy_identity(&h, &samples, Exec::default()).unwrap();
        assert_eq!(report.checked, 49);
        assert!(report.passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Operator-level identities for the components `h^i`.
    #[test]
    fn prism_component_identities(seed in any::<u64>(), n in 0usize..=2) {
        let mut r = rng(seed);
        let x = Arc::new(random_space(&mut r, 3));
        let y = Arc::new(random_space(&mut r, 3));
        let h = ChainHomotopy::new(x.clone(), random_corr(&mut r, &homotopy_source(&x), &y)).unwrap();
        let a = random_simplex(&mut r, &x, n).unwrap();
        let hc = |s: &Simplex, i: usize| h.component(s, i).unwrap();
        for j in 0..n {
            for i in 0..=j {
                prop_assert_eq!(hc(&a, j + 1).face(i).unwrap(), hc(&a.face(i).unwrap(), j));
            }
        }
        for i in 0..n {
            prop_assert_eq!(hc(&a, i + 1).face(i + 1).unwrap(), hc(&a, i).face(i + 1).unwrap());
        }
        for j in 1..=n {
            for i in 0..j {
                prop_assert_eq!(hc(&a, i).face(j + 1).unwrap(), hc(&a.face(j).unwrap(), i));
            }
        }
        let top = Simplex::new(compose(a.corr(), h.top()).unwrap()).unwrap();
        let bottom = Simplex::new(compose(a.corr(), h.bottom()).unwrap()).unwrap();
        prop_assert_eq!(hc(&a, 0).face(0).unwrap(), top);
        prop_assert_eq!(hc(&a, n).face(n + 1).unwrap(), bottom);
    }

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let x = Arc::new(random_space(&mut r, 4));
        let c = random_chain(&mut r, &x, n, &[], 4, 5).unwrap();
        prop_assert!(boundary(&boundary(&c).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn face_face_relation(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let x = Arc::new(random_space(&mut r, 4));
        let s = random_simplex(&mut r, &x, n).unwrap();
        for j in 1..=n {
            for i in 0..j {
                prop_assert_eq!(s.face(j).unwrap().face(i).unwrap(), s.face(i).unwrap().face(j - 1).unwrap());
            }
        }
    }
}

#[test]
fn zero_matrices_give_full_rank() {
    let z0 = BoundaryMatrix::degree_zero(4);
    let z1 = BoundaryMatrix {
        degree: 1,
        matrix: IntMatrix::zeros(4, 6),
    };
    assert_eq!(homology_at(&z0, &z1).unwrap().rank, 4);
}

#[test]
fn homotopy_rejects_wrong_source() {
    let x = ab();
    let l = Corr::identity(x.clone());
    assert!(ChainHomotopy::new(x, l).is_err());
}
