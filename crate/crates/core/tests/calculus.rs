mod common;

use std::sync::Arc;

use common::laws::LAWS;
use common::{all_preorders, bits, brute_force_corrs, is_down_set, valid_by_definition};
use mvhom::corr::validate;
use mvhom::{ContMap, FinSpace};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn calculus_laws_hold(seed in any::<u64>()) {
        for (name, law) in LAWS {
            if let Err(e) = law(seed) {
                prop_assert!(false, "{name} failed for seed {seed}: {e}");
            }
        }
    }
}

fn closed_map_by_definition(f: &ContMap) -> bool {
    let (dom, cod) = (f.dom(), f.cod());
    (0u64..1 << dom.len())
        .filter(|&m| is_down_set(dom, m))
        .all(|m| {
            let img = (0..dom.len())
                .filter(|&x| m >> x & 1 == 1)
                .fold(0u64, |acc, x| acc | 1 << f.apply(x));
            is_down_set(cod, img)
        })
}

fn all_maps(dom: &Arc<FinSpace>, cod: &Arc<FinSpace>) -> Vec<Vec<usize>> {
    let (n, m) = (dom.len(), cod.len());
    (0..m.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let y = code % m;
                    code /= m;
                    y
                })
                .collect()
        })
        .collect()
}

#[test]
fn closed_map_criterion_matches_definition() {
    let mut spaces: Vec<Arc<FinSpace>> = (1..=3).flat_map(all_preorders).map(Arc::new).collect();
    let small: Vec<Arc<FinSpace>> = all_preorders(2).into_iter().map(Arc::new).collect();
    let four: Vec<Arc<FinSpace>> = all_preorders(4)
        .into_iter()
        .step_by(7)
        .map(Arc::new)
        .collect();
    let mut pairs: Vec<(Arc<FinSpace>, Arc<FinSpace>)> = Vec::new();
    for a in &spaces {
        for b in &spaces {
            pairs.push((a.clone(), b.clone()));
        }
    }
    for a in &four {
        for b in &small {
            pairs.push((a.clone(), b.clone()));
            pairs.push((b.clone(), a.clone()));
        }
    }
    spaces.clear();
    let mut checked = 0;
    for (dom, cod) in pairs {
        for assignment in all_maps(&dom, &cod) {
            let Ok(f) = ContMap::continuous(dom.clone(), cod.clone(), assignment) else {
                continue;
            };
            assert_eq!(
                f.is_closed_map().unwrap(),
                closed_map_by_definition(&f),
                "{f:?}"
            );
            checked += 1;
        }
    }
    assert!(checked > 10_000, "only {checked} maps checked");
}

#[test]
fn validity_matches_definition_exhaustively() {
    let spaces: Vec<Arc<FinSpace>> = (1..=3).flat_map(all_preorders).map(Arc::new).collect();
    for x in &spaces {
        for y in &spaces {
            let (n, m) = (x.len(), y.len());
            if n * m > 9 {
                continue;
            }
            for mask in 0u64..1 << (n * m) {
                let fibers: Vec<_> = (0..n)
                    .map(|p| bits(m, mask >> (p * m) & ((1 << m) - 1)))
                    .collect();
                assert_eq!(
                    validate(x, y, &fibers).is_valid,
                    valid_by_definition(x, y, &fibers),
                    "{x:?} -> {y:?}, mask {mask:b}"
                );
            }
        }
    }
}

#[test]
fn discrete_targets_need_antitone_nonempty_fibers() {
    let targets = [
        Arc::new(FinSpace::discrete(&["a"]).unwrap()),
        Arc::new(FinSpace::discrete(&["a", "b"]).unwrap()),
    ];
    for n in 1..=3 {
        for x in all_preorders(n).into_iter().map(Arc::new) {
            for y in &targets {
                let valid = brute_force_corrs(&x, y);
                let m = y.len();
                let total = (0u64..1 << (n * m))
                    .filter(|&mask| {
                        let f: Vec<u64> =
                            (0..n).map(|p| mask >> (p * m) & ((1 << m) - 1)).collect();
                        let nonempty = f.iter().all(|&s| s != 0);
                        let antitone =
                            (0..n).all(|a| (0..n).all(|b| !x.leq(a, b) || f[b] & !f[a] == 0));
                        nonempty && antitone
                    })
                    .count();
                assert_eq!(valid.len(), total, "{x:?}");
            }
        }
    }
}
