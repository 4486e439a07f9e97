//! Simplex enumeration, finite-model homology, the contraction of a discrete
//! space and nullhomotopy certificates.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;

use crate::chain::{
    boundary, boundary_matrix, homology_at, BoundaryMatrix, Chain, ChainHomotopy, HomologyGroup,
    Simplex,
};
use crate::corr::Corr;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::finspace::{FinSpace, PointSet};
use crate::simplicial::{delta_fin, face_vertex, faces, interval_fin, Face};

/// Default cap on the number of basis elements enumerated per degree.
pub const DEFAULT_BOUND: usize = 1_000_000;

/// Default cap on the bases of degree 3 and up, which feed `H_2` and higher
/// through Smith normal form; beyond it those degrees need
/// [`HomologyOptions::attempt_high_degrees`].
pub const DEFAULT_SNF_LIMIT: usize = 256;

const MAX_TARGET: usize = 64;

struct Plan {
    order: Vec<usize>,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    up_mask: Vec<u64>,
    full: u64,
}

impl Plan {
    fn new(source: &FinSpace, target: &FinSpace) -> Result<Self> {
        if target.len() > MAX_TARGET {
            return Err(Error::IndexOutOfRange {
                what: "enumeration target size",
                index: target.len(),
                max: MAX_TARGET,
            });
        }
        let mut order: Vec<usize> = (0..source.len()).collect();
        order.sort_by_key(|&x| (source.down(x).count_ones(..), x));
        let mut below = Vec::with_capacity(order.len());
        let mut above = Vec::with_capacity(order.len());
        for (p, &x) in order.iter().enumerate() {
            below.push((0..p).filter(|&q| source.leq(order[q], x)).collect());
            above.push((0..p).filter(|&q| source.leq(x, order[q])).collect());
        }
        let up_mask = (0..target.len())
            .map(|y| target.up(y).ones().fold(0u64, |m, z| m | 1 << z))
            .collect();
        let full = if target.len() == 64 {
            u64::MAX
        } else {
            (1u64 << target.len()) - 1
        };
        Ok(Plan {
            order,
            below,
            above,
            up_mask,
            full,
        })
    }

    fn up_closure(&self, set: u64) -> u64 {
        let mut out = 0;
        let mut s = set;
        while s != 0 {
            out |= self.up_mask[s.trailing_zeros() as usize];
            s &= s - 1;
        }
        out
    }

    /// Fibers allowed at position `p` given the assigned prefix, in
    /// decreasing mask order.
    fn choices(&self, p: usize, prefix: &[u64]) -> Vec<u64> {
        let allowed = self.below[p]
            .iter()
            .fold(self.full, |m, &q| m & self.up_closure(prefix[q]));
        let mut out = Vec::new();
        let mut sub = allowed;
        while sub != 0 {
            let up = self.up_closure(sub);
            if self.above[p].iter().all(|&q| prefix[q] & !up == 0) {
                out.push(sub);
            }
            sub = (sub - 1) & allowed;
        }
        out
    }

    /// Depth-first extension of `prefix`; `emit` returns false to stop.
    fn extend(&self, prefix: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        let p = prefix.len();
        if p == self.order.len() {
            return emit(prefix);
        }
        for s in self.choices(p, prefix) {
            prefix.push(s);
            let go_on = self.extend(prefix, emit);
            prefix.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Breadth-first prefixes to spread over workers.
    fn prefixes(&self) -> Vec<Vec<u64>> {
        let mut level: Vec<Vec<u64>> = vec![Vec::new()];
        let fan = 1usize << self.up_mask.len().min(20);
        for p in 0..self.order.len() {
            if level.len() >= 64 || level.len().saturating_mul(fan) > 4096 {
                break;
            }
            level = level
                .iter()
                .flat_map(|pre| {
                    self.choices(p, pre).into_iter().map(move |s| {
                        let mut v = pre.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        level
    }

    fn to_fibers(&self, masks: &[u64], target_len: usize) -> Vec<PointSet> {
        let mut fibers = vec![PointSet::with_capacity(target_len); masks.len()];
        for (p, &m) in masks.iter().enumerate() {
            let f = &mut fibers[self.order[p]];
            let mut s = m;
            while s != 0 {
                f.insert(s.trailing_zeros() as usize);
                s &= s - 1;
            }
        }
        fibers
    }
}

/// Counts valid correspondences up to `limit`; returns `None` past it.
fn count_up_to(plan: &Plan, limit: usize, exec: Exec) -> Option<usize> {
    let count = AtomicUsize::new(0);
    let over = AtomicBool::new(false);
    let prefixes = plan.prefixes();
    exec.map(&prefixes, |pre| {
        let mut pre = pre.clone();
        plan.extend(&mut pre, &mut |_| {
            if over.load(Ordering::Relaxed) {
                return false;
            }
            if count.fetch_add(1, Ordering::Relaxed) >= limit {
                over.store(true, Ordering::Relaxed);
                return false;
            }
            true
        });
    });
    if over.load(Ordering::Relaxed) {
        None
    } else {
        Some(count.load(Ordering::Relaxed))
    }
}

/// All valid correspondences `source -> target`, sorted canonically.
///
/// Points of the source are assigned in order of increasing down-set, so
/// each fiber is chosen from the intersection of the up-closures of the
/// fibers below it; over a discrete target this is exactly the set of
/// antitone nonempty-fiber assignments.
pub fn enumerate_corrs(
    source: &Arc<FinSpace>,
    target: &Arc<FinSpace>,
    bound: usize,
    exec: Exec,
) -> Result<Vec<Corr>> {
    enumerate_masks(source, target, bound, exec)?.ok_or(Error::TooManyCorrs { bound })
}

/// `Ok(None)` when the bound is exceeded.
fn enumerate_masks(
    source: &Arc<FinSpace>,
    target: &Arc<FinSpace>,
    bound: usize,
    exec: Exec,
) -> Result<Option<Vec<Corr>>> {
    let plan = Plan::new(source, target)?;
    if source.is_empty() {
        return Ok(Some(vec![Corr::new(
            source.clone(),
            target.clone(),
            Vec::new(),
        )?]));
    }
    if count_up_to(&plan, bound, exec).is_none() {
        return Ok(None);
    }
    let prefixes = plan.prefixes();
    let chunks = exec.try_map(&prefixes, |pre| -> Result<Vec<Corr>> {
        let mut out = Vec::new();
        let mut pre = pre.clone();
        let mut failed = None;
        plan.extend(&mut pre, &mut |masks| {
            match Corr::new(
                source.clone(),
                target.clone(),
                plan.to_fibers(masks, target.len()),
            ) {
                Ok(c) => out.push(c),
                Err(e) => {
                    failed = Some(e);
                    return false;
                }
            }
            true
        });
        match failed {
            Some(e) => Err(e),
            None => Ok(out),
        }
    })?;
    let mut plain: Vec<Corr> = chunks.into_iter().flatten().collect();
    // canonical order: fiber-wise lexicographic on sorted point lists
    plain.sort_by(|a, b| {
        a.fibers()
            .iter()
            .zip(b.fibers())
            .map(|(x, y)| x.ones().cmp(y.ones()))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(Some(plain))
}

/// `S_n(X)`: all valid correspondences `delta_fin(n) -> X`, or a
/// face-closed sublist of them.
#[derive(Clone, Debug)]
pub struct SimplexBasis {
    pub space: Arc<FinSpace>,
    pub degree: usize,
    pub simplices: Vec<Simplex>,
    pub face_closed: bool,
}

impl SimplexBasis {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// A user-supplied sublist, canonically sorted and deduplicated. It is
    /// flagged face-closed when `lower` is given and contains every face.
    pub fn from_simplices(
        space: Arc<FinSpace>,
        degree: usize,
        mut simplices: Vec<Simplex>,
        lower: Option<&SimplexBasis>,
    ) -> Result<Self> {
        for s in &simplices {
            if s.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: s.degree(),
                });
            }
        }
        simplices.sort();
        simplices.dedup();
        let face_closed = match lower {
            Some(low) if degree > 0 => {
                let set: std::collections::HashSet<&Simplex> = low.simplices.iter().collect();
                let mut ok = true;
                'outer: for s in &simplices {
                    for i in 0..=degree {
                        if !set.contains(&s.face(i)?) {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                ok
            }
            Some(_) => true,
            None => degree == 0,
        };
        Ok(SimplexBasis {
            space,
            degree,
            simplices,
            face_closed,
        })
    }
}

pub fn enumerate_simplices(
    space: &Arc<FinSpace>,
    n: usize,
    bound: usize,
    exec: Exec,
) -> Result<SimplexBasis> {
    let delta = delta_fin(n)?;
    let corrs = enumerate_masks(&delta.space, space, bound, exec)?
        .ok_or(Error::BoundExceeded { degree: n, bound })?;
    let simplices = corrs
        .into_iter()
        .map(Simplex::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplexBasis {
        space: space.clone(),
        degree: n,
        simplices,
        face_closed: true,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct HomologyOptions {
    pub max_n: usize,
    pub bound: usize,
    pub snf_limit: usize,
    pub attempt_high_degrees: bool,
    pub exec: Exec,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            max_n: 2,
            bound: DEFAULT_BOUND,
            snf_limit: DEFAULT_SNF_LIMIT,
            attempt_high_degrees: false,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkipReason {
    /// The basis exceeded the hard enumeration bound.
    BoundExceeded,
    /// The basis exceeded the soft Smith normal form limit.
    SnfLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedDegree {
    pub n: usize,
    pub reason: SkipReason,
    /// Degree whose basis was too large.
    pub basis_degree: usize,
    pub limit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub groups: Vec<(usize, HomologyGroup)>,
    pub skipped: Vec<SkippedDegree>,
    pub basis_sizes: Vec<usize>,
}

impl HomologyReport {
    pub fn is_complete(&self) -> bool {
        self.skipped.is_empty()
    }

    pub fn group(&self, n: usize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|(k, _)| *k == n).map(|(_, g)| g)
    }
}

/// `H_0 .. H_max_n` of the finite-model complex. Degrees whose bases cannot
/// be enumerated within the configured limits are reported as skipped.
pub fn space_homology(space: &Arc<FinSpace>, opts: &HomologyOptions) -> Result<HomologyReport> {
    if space.is_empty() {
        return Err(Error::EmptySpace);
    }
    let mut bases: Vec<SimplexBasis> = Vec::new();
    let mut failure = None;
    for k in 0..=opts.max_n + 1 {
        let (limit, reason) = if k < 3 || opts.attempt_high_degrees || opts.snf_limit >= opts.bound
        {
            (opts.bound, SkipReason::BoundExceeded)
        } else {
            (opts.snf_limit, SkipReason::SnfLimit)
        };
        match enumerate_simplices(space, k, limit, opts.exec) {
            Ok(b) => bases.push(b),
            Err(Error::BoundExceeded { .. }) => {
                failure = Some((k, reason, limit));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let basis_sizes = bases.iter().map(SimplexBasis::len).collect();
    let mut mats = vec![BoundaryMatrix::degree_zero(bases[0].len())];
    for k in 1..bases.len() {
        mats.push(boundary_matrix(
            &bases[k - 1].simplices,
            &bases[k].simplices,
            opts.exec,
        )?);
    }
    let mut groups = Vec::new();
    let mut skipped = Vec::new();
    for n in 0..=opts.max_n {
        if n + 1 < mats.len() {
            groups.push((n, homology_at(&mats[n], &mats[n + 1])?));
        } else if let Some((k, reason, limit)) = failure {
            skipped.push(SkippedDegree {
                n,
                reason,
                basis_degree: k,
                limit,
            });
        }
    }
    Ok(HomologyReport {
        groups,
        skipped,
        basis_sizes,
    })
}

fn require_discrete(space: &FinSpace) -> Result<()> {
    if space.is_empty() {
        return Err(Error::EmptySpace);
    }
    if !space.is_discrete() {
        return Err(Error::NotDiscrete);
    }
    Ok(())
}

/// The two-step contraction of a discrete space onto `x0`: `L1` runs from
/// the identity to `D = {(x,x),(x,x0)}`, `L2` from `D` to the constant
/// correspondence at `x0`. Both live on `X x I`.
pub fn contraction(space: &Arc<FinSpace>, x0: usize) -> Result<(Corr, Corr)> {
    require_discrete(space)?;
    if x0 >= space.len() {
        return Err(Error::PointIndex(x0));
    }
    let interval = interval_fin(1)?;
    let (m0, g, m1) = (interval.bottom(), interval.open_point(1), interval.top());
    let width = interval.space.len();
    let source = Arc::new(space.product(&interval.space));
    let at = |x: usize, level: usize| x * width + level;
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for x in 0..space.len() {
        p1.extend([
            (at(x, m0), x),
            (at(x, g), x),
            (at(x, m1), x),
            (at(x, m1), x0),
        ]);
        p2.extend([
            (at(x, m0), x),
            (at(x, m0), x0),
            (at(x, g), x0),
            (at(x, m1), x0),
        ]);
    }
    let l1 = Corr::from_pairs(source.clone(), space.clone(), &p1)?;
    let l2 = Corr::from_pairs(source, space.clone(), &p2)?;
    Ok((l1, l2))
}

/// `m · C_A` in degree `n`, the chain of the constant simplex at `A`.
pub fn constant_chain(space: &Arc<FinSpace>, value: &PointSet, n: usize, m: i64) -> Result<Chain> {
    let delta = delta_fin(n)?;
    let s = Simplex::new(Corr::constant(delta.space.clone(), space.clone(), value)?)?;
    Chain::from_terms(space.clone(), n, [(s, m)])
}

/// `m · C_A` in degree `n + 1`, whose boundary is `m · C_A` in degree `n`
/// when `n` is odd.
pub fn constant_cycle_fill(
    space: &Arc<FinSpace>,
    m: i64,
    value: &PointSet,
    n: usize,
) -> Result<Chain> {
    if m == 0 {
        return Ok(Chain::zero(space.clone(), n + 1));
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenDegree(n));
    }
    constant_chain(space, value, n + 1, m)
}

/// A 1-chain with boundary `[B] - [A]` for nonempty `A`, `B`: two
/// 1-simplices through the union `A ∪ B`.
pub fn zero_simplex_link(space: &Arc<FinSpace>, a: &PointSet, b: &PointSet) -> Result<Chain> {
    if a.is_clear() || b.is_clear() {
        return Err(Error::EmptyValue);
    }
    let d1 = delta_fin(1)?;
    let mut union = a.clone();
    union.union_with(b);
    // vertex {0} -> start, vertex {1} -> A ∪ B, edge -> start
    let towards_union = |start: &PointSet| -> Result<Simplex> {
        let mut fibers = vec![space.empty_set(); 3];
        fibers[d1.vertex(0)] = start.clone();
        fibers[d1.vertex(1)] = union.clone();
        fibers[d1.top()] = start.clone();
        Simplex::new(Corr::new(d1.space.clone(), space.clone(), fibers)?)
    };
    Chain::from_terms(
        space.clone(),
        1,
        [(towards_union(a)?, 1), (towards_union(b)?, -1)],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// `-h¹(z)` for the first contraction step.
    FirstHomotopy,
    /// `-h²(z)` for the second contraction step.
    SecondHomotopy,
    /// Filling of the constant cycle `C#(z)`.
    ConstantFill,
}

#[derive(Clone, Debug)]
pub struct Step {
    pub kind: StepKind,
    /// Coefficient of the step's chain in the filling.
    pub sign: i64,
    pub chain: Chain,
    /// Multiplicity `m` of `C#(z) = m · C_{x0}`; only set for the fill.
    pub multiplicity: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub cycle: Chain,
    pub filling: Chain,
    pub basepoint: usize,
    pub steps: Vec<Step>,
    pub verified: bool,
}

/// Fibers as sorted point lists, a representation independent of
/// [`Simplex`].
type RawSimplex = Vec<Vec<usize>>;

fn raw_chain(c: &Chain) -> BTreeMap<RawSimplex, i64> {
    c.terms()
        .map(|(s, k)| {
            (
                s.corr()
                    .fibers()
                    .iter()
                    .map(|f| f.ones().collect())
                    .collect(),
                k,
            )
        })
        .collect()
}

/// Boundary by reindexing fibers directly on face bitmasks.
fn raw_boundary(c: &BTreeMap<RawSimplex, i64>, n: usize) -> BTreeMap<RawSimplex, i64> {
    let mut upper: Vec<Face> = (1..1u64 << (n + 1)).collect();
    upper.sort_by_key(|&f| (f.count_ones(), f));
    let position = |f: Face| upper.iter().position(|&g| g == f).expect("face");
    let lower: Vec<Face> = faces(n - 1);
    let mut out: BTreeMap<RawSimplex, i64> = BTreeMap::new();
    for (raw, &k) in c {
        for i in 0..=n {
            let face: RawSimplex = lower
                .iter()
                .map(|&f| {
                    let lifted = (0..n)
                        .filter(|v| f >> v & 1 == 1)
                        .fold(0u64, |m, v| m | 1 << face_vertex(i, v));
                    raw[position(lifted)].clone()
                })
                .collect();
            *out.entry(face).or_insert(0) += if i % 2 == 0 { k } else { -k };
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// An explicit `b` with `boundary(b) = z` for a cycle `z` of positive degree
/// over a discrete space, built from the contraction onto `x0`:
/// `b = fill(C#z) - h¹(z) - h²(z)`.
pub fn nullhomotopy_certificate(z: &Chain, x0: usize) -> Result<Certificate> {
    let space = z.space().clone();
    let n = z.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    require_discrete(&space)?;
    if !boundary(z)?.is_zero() {
        return Err(Error::NotACycle);
    }
    let (l1, l2) = contraction(&space, x0)?;
    let h1 = ChainHomotopy::new(space.clone(), l1)?;
    let h2 = ChainHomotopy::new(space.clone(), l2)?;
    let a = h1.apply(z)?;
    let b = h2.apply(z)?;
    let m = z
        .terms()
        .try_fold(0i64, |acc, (_, k)| acc.checked_add(k))
        .ok_or(Error::Overflow)?;
    let mut point = space.empty_set();
    point.insert(x0);
    let fill = constant_cycle_fill(&space, m, &point, n).map_err(|_| Error::CertificateFailed)?;
    let mut filling = fill.clone();
    filling.add_scaled(&a, -1)?;
    filling.add_scaled(&b, -1)?;

    let direct = boundary(&filling)? == *z;
    let independent = raw_boundary(&raw_chain(&filling), n + 1) == raw_chain(z);
    if !(direct && independent) {
        return Err(Error::CertificateFailed);
    }
    Ok(Certificate {
        cycle: z.clone(),
        filling,
        basepoint: x0,
        steps: vec![
            Step {
                kind: StepKind::FirstHomotopy,
                sign: -1,
                chain: a,
                multiplicity: None,
            },
            Step {
                kind: StepKind::SecondHomotopy,
                sign: -1,
                chain: b,
                multiplicity: None,
            },
            Step {
                kind: StepKind::ConstantFill,
                sign: 1,
                chain: fill,
                multiplicity: Some(m),
            },
        ],
        verified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::push_chain;

    fn ab() -> Arc<FinSpace> {
        Arc::new(FinSpace::discrete(&["a", "b"]).unwrap())
    }

    #[test]
    fn point_has_one_simplex_per_degree() {
        let pt = Arc::new(FinSpace::point());
        for n in 0..=5 {
            assert_eq!(
                enumerate_simplices(&pt, n, DEFAULT_BOUND, Exec::default())
                    .unwrap()
                    .len(),
                1
            );
        }
    }

    #[test]
    fn discrete_pair_counts() {
        let x = ab();
        let sizes: Vec<usize> = (0..=3)
            .map(|n| {
                enumerate_simplices(&x, n, DEFAULT_BOUND, Exec::default())
                    .unwrap()
                    .len()
            })
            .collect();
        assert_eq!(sizes, [3, 9, 37, 333]);
    }

    #[test]
    fn bound_is_enforced() {
        let x = ab();
        let err = enumerate_simplices(&x, 2, 36, Exec::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::BoundExceeded {
                degree: 2,
                bound: 36
            }
        ));
        assert_eq!(
            enumerate_simplices(&x, 2, 37, Exec::Sequential)
                .unwrap()
                .len(),
            37
        );
    }

    #[test]
    fn enumeration_is_schedule_independent() {
        let x = Arc::new(FinSpace::sierpinski());
        let a = enumerate_simplices(&x, 2, DEFAULT_BOUND, Exec::Sequential).unwrap();
        let b = enumerate_simplices(&x, 2, DEFAULT_BOUND, Exec::Parallel).unwrap();
        assert_eq!(a.simplices, b.simplices);
        assert!(a.simplices.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn homology_of_point_and_pair() {
        for x in [Arc::new(FinSpace::point()), ab()] {
            let r = space_homology(
                &x,
                &HomologyOptions {
                    max_n: 1,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(r.is_complete());
            assert_eq!(
                r.group(0).unwrap(),
                &HomologyGroup {
                    rank: 1,
                    torsion: vec![]
                }
            );
            assert!(r.group(1).unwrap().is_trivial());
        }
    }

    #[test]
    fn high_degree_needs_flag() {
        let x = ab();
        let opts = HomologyOptions {
            max_n: 2,
            ..Default::default()
        };
        let r = space_homology(&x, &opts).unwrap();
        assert_eq!(r.groups.len(), 2);
        assert_eq!(r.skipped[0].n, 2);
        assert_eq!(r.skipped[0].reason, SkipReason::SnfLimit);
        let r = space_homology(
            &x,
            &HomologyOptions {
                attempt_high_degrees: true,
                ..opts
            },
        )
        .unwrap();
        assert!(r.is_complete());
        assert!(r.group(2).unwrap().is_trivial());
    }

    #[test]
    fn contraction_restrictions() {
        let x = ab();
        let (l1, l2) = contraction(&x, 0).unwrap();
        let h1 = ChainHomotopy::new(x.clone(), l1).unwrap();
        let h2 = ChainHomotopy::new(x.clone(), l2).unwrap();
        assert_eq!(h1.bottom(), &Corr::identity(x.clone()));
        assert_eq!(h1.top(), h2.bottom());
        assert_eq!(
            h1.top().named_pairs(),
            [("a", "a"), ("b", "a"), ("b", "b")].map(|(p, q)| (p.to_string(), q.to_string()))
        );
        assert_eq!(
            h2.top(),
            &Corr::constant(x.clone(), x.clone(), &x.subset(&["a"]).unwrap()).unwrap()
        );
        let sierpinski = Arc::new(FinSpace::sierpinski());
        assert!(matches!(
            contraction(&sierpinski, 0),
            Err(Error::NotDiscrete)
        ));
    }

    #[test]
    fn contraction_of_point_is_constant() {
        let pt = Arc::new(FinSpace::point());
        let (l1, l2) = contraction(&pt, 0).unwrap();
        assert_eq!(l1, l2);
        assert_eq!(l1.pair_count(), 3);
    }

    #[test]
    fn constant_fills() {
        let x = ab();
        let a = x.subset(&["a"]).unwrap();
        let fill = constant_cycle_fill(&x, 1, &a, 1).unwrap();
        assert_eq!(fill, constant_chain(&x, &a, 2, 1).unwrap());
        assert_eq!(
            boundary(&fill).unwrap(),
            constant_chain(&x, &a, 1, 1).unwrap()
        );
        assert!(constant_cycle_fill(&x, 0, &a, 2).unwrap().is_zero());
        assert!(matches!(
            constant_cycle_fill(&x, 3, &a, 2),
            Err(Error::EvenDegree(2))
        ));
        let full = x.full_set();
        let two = constant_cycle_fill(&x, 2, &full, 1).unwrap();
        assert_eq!(two.terms().map(|(_, k)| k).collect::<Vec<_>>(), [2]);
    }

    #[test]
    fn union_link_connects_vertices() {
        let x = ab();
        let (a, b) = (x.subset(&["a"]).unwrap(), x.subset(&["b"]).unwrap());
        let link = zero_simplex_link(&x, &a, &b).unwrap();
        let expected = constant_chain(&x, &b, 0, 1)
            .unwrap()
            .minus(&constant_chain(&x, &a, 0, 1).unwrap())
            .unwrap();
        assert_eq!(boundary(&link).unwrap(), expected);
    }

    #[test]
    fn certificate_for_two_edge_loop() {
        let x = ab();
        let d1 = delta_fin(1).unwrap();
        let edge = |f0: &[&str], f1: &[&str]| {
            let fibers = vec![
                x.subset(f0).unwrap(),
                x.subset(f1).unwrap(),
                x.subset(&["a"]).unwrap(),
            ];
            Simplex::new(Corr::new(d1.space.clone(), x.clone(), fibers).unwrap()).unwrap()
        };
        let z = Chain::from_terms(
            x.clone(),
            1,
            [
                (edge(&["a"], &["a", "b"]), 1),
                (edge(&["a", "b"], &["a"]), 1),
            ],
        )
        .unwrap();
        assert!(boundary(&z).unwrap().is_zero());
        for x0 in 0..2 {
            let cert = nullhomotopy_certificate(&z, x0).unwrap();
            assert!(cert.verified);
            assert_eq!(boundary(&cert.filling).unwrap(), z);
        }
        let zero = Chain::zero(x.clone(), 1);
        assert!(nullhomotopy_certificate(&zero, 0)
            .unwrap()
            .filling
            .is_zero());
        let open = Chain::from_simplex(edge(&["a"], &["a", "b"]));
        assert!(matches!(
            nullhomotopy_certificate(&open, 0),
            Err(Error::NotACycle)
        ));
    }

    #[test]
    fn raw_boundary_matches_chain_boundary() {
        let x = ab();
        let basis = enumerate_simplices(&x, 2, DEFAULT_BOUND, Exec::default()).unwrap();
        for (i, s) in basis.simplices.iter().enumerate() {
            let c = Chain::from_terms(x.clone(), 2, [(s.clone(), i as i64 + 1)]).unwrap();
            assert_eq!(
                raw_boundary(&raw_chain(&c), 2),
                raw_chain(&boundary(&c).unwrap())
            );
        }
    }

    #[test]
    fn contraction_composite_is_constant_on_chains() {
        let x = ab();
        let (_, l2) = contraction(&x, 1).unwrap();
        let h2 = ChainHomotopy::new(x.clone(), l2).unwrap();
        let c = constant_chain(&x, &x.full_set(), 1, 3).unwrap();
        let pushed = push_chain(h2.top(), &c).unwrap();
        assert_eq!(
            pushed,
            constant_chain(&x, &x.subset(&["b"]).unwrap(), 1, 3).unwrap()
        );
    }
}
