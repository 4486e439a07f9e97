//! Seeded algebraic laws of the correspondence calculus. Each law draws its
//! own spaces (at most `MAX_POINTS` points) from the seed and returns a
//! description of the first violation.

use std::sync::Arc;

use mvhom::corr::{box_product, compose, glue, pullback, pushforward, validate};
use mvhom::sample::{random_corr, random_map, random_space, rng, SampleRng};
use mvhom::{Corr, FinSpace, PointSet};
use rand::Rng;

use super::valid_by_definition;

pub const MAX_POINTS: usize = 5;

pub type Law = fn(u64) -> Result<(), String>;

pub const LAWS: [(&str, Law); 5] = [
    ("composition preserves validity", compose_is_valid),
    ("composition is associative", associativity),
    ("interchange law", interchange),
    (
        "pullback equals composition with the graph",
        pullback_is_graph_composition,
    ),
    ("gluing exists and is unique", gluing),
];

fn space(r: &mut SampleRng) -> Arc<FinSpace> {
    Arc::new(random_space(r, MAX_POINTS))
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn compose_is_valid(seed: u64) -> Result<(), String> {
    let r = &mut rng(seed);
    let (x, y, z) = (space(r), space(r), space(r));
    let t1 = random_corr(r, &x, &y);
    let t2 = random_corr(r, &y, &z);
    let c = compose(&t1, &t2).map_err(err)?;
    let v = validate(c.source(), c.target(), c.fibers());
    check(v.is_valid, || format!("composite rejected: {v}"))?;
    if c.pair_count() <= 16 {
        check(
            valid_by_definition(c.source(), c.target(), c.fibers()),
            || format!("composite {c:?} fails the definition"),
        )?;
    }
    Ok(())
}

pub fn associativity(seed: u64) -> Result<(), String> {
    let r = &mut rng(seed);
    let (w, x, y, z) = (space(r), space(r), space(r), space(r));
    let a = random_corr(r, &w, &x);
    let b = random_corr(r, &x, &y);
    let c = random_corr(r, &y, &z);
    let left = compose(&compose(&a, &b).map_err(err)?, &c).map_err(err)?;
    let right = compose(&a, &compose(&b, &c).map_err(err)?).map_err(err)?;
    check(left == right, || format!("{left:?} != {right:?}"))
}

pub fn interchange(seed: u64) -> Result<(), String> {
    let r = &mut rng(seed);
    let (x, y, z) = (space(r), space(r), space(r));
    let (x2, y2, z2) = (space(r), space(r), space(r));
    let (rr, s) = (random_corr(r, &x, &y), random_corr(r, &y, &z));
    let (rr2, s2) = (random_corr(r, &x2, &y2), random_corr(r, &y2, &z2));
    let left = box_product(
        &compose(&rr, &s).map_err(err)?,
        &compose(&rr2, &s2).map_err(err)?,
    )
    .map_err(err)?;
    let right = compose(
        &box_product(&rr, &rr2).map_err(err)?,
        &box_product(&s, &s2).map_err(err)?,
    )
    .map_err(err)?;
    check(left == right, || format!("{left:?} != {right:?}"))
}

pub fn pullback_is_graph_composition(seed: u64) -> Result<(), String> {
    let r = &mut rng(seed);
    let (w, x, y, z) = (space(r), space(r), space(r), space(r));
    let f = random_map(r, &x, &y);
    let g = random_map(r, &w, &x);
    let s = random_corr(r, &y, &z);
    let graph = Corr::from_map(&f).map_err(err)?;
    let pulled = pullback(&f, &s).map_err(err)?;
    let composed = compose(&graph, &s).map_err(err)?;
    check(pulled == composed, || {
        format!("pullback {pulled:?} != {composed:?}")
    })?;
    // contravariance: (f g)^* = g^* f^*
    let fg = g.then(&f).map_err(err)?;
    let once = pullback(&fg, &s).map_err(err)?;
    let twice = pullback(&g, &pulled).map_err(err)?;
    check(once == twice, || "pullback is not contravariant".into())?;
    // and the covariant side
    let t = random_corr(r, &z, &x);
    let pushed = pushforward(&t, &f).map_err(err)?;
    let via_graph = compose(&t, &graph).map_err(err)?;
    check(pushed == via_graph, || {
        "pushforward differs from composition with the graph".into()
    })
}

fn random_closed_cover(r: &mut SampleRng, x: &FinSpace) -> Vec<PointSet> {
    let k = r.gen_range(1..=3);
    let mut cover: Vec<PointSet> = (0..k)
        .map(|_| {
            let mut seed = x.empty_set();
            for p in 0..x.len() {
                if r.gen_bool(0.4) {
                    seed.insert(p);
                }
            }
            x.closure(&seed).expect("in range")
        })
        .collect();
    let mut covered = x.empty_set();
    for c in &cover {
        covered.union_with(c);
    }
    let mut missing = x.full_set();
    missing.difference_with(&covered);
    if missing.count_ones(..) > 0 {
        cover.push(x.closure(&missing).expect("in range"));
    }
    cover
}

pub fn gluing(seed: u64) -> Result<(), String> {
    let r = &mut rng(seed);
    let (x, y) = (space(r), space(r));
    let t = random_corr(r, &x, &y);
    let cover = random_closed_cover(r, &x);
    let parts: Vec<Corr> = cover
        .iter()
        .map(|c| t.restrict(c))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let glued = glue(&x, &cover, &parts).map_err(err)?;
    check(glued == t, || format!("glued {glued:?} != original {t:?}"))?;
    for (c, p) in cover.iter().zip(&parts) {
        let back = glued.restrict(c).map_err(err)?;
        check(back.fibers() == p.fibers(), || {
            "glued correspondence does not restrict to its parts".into()
        })?;
    }
    // a part that disagrees on an overlap must be refused
    if cover.len() >= 2 {
        let overlap: Vec<usize> = cover[0].intersection(&cover[1]).collect();
        if !overlap.is_empty() && y.len() >= 2 {
            let other = random_corr(r, &x, &y);
            if (0..x.len()).any(|p| {
                cover[1].contains(p) && other.fiber(p) != t.fiber(p) && overlap.contains(&p)
            }) {
                let mut bad = parts.clone();
                bad[1] = other.restrict(&cover[1]).map_err(err)?;
                check(glue(&x, &cover, &bad).is_err(), || {
                    "disagreeing parts were glued".into()
                })?;
            }
        }
    }
    Ok(())
}
