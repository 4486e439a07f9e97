//! Continuous multivalued maps (correspondences) between finite spaces.
//!
//! A correspondence `T ⊆ X x Y` is valid when the first projection
//! `T -> X` is closed (with `T` carrying the subspace topology of `X x Y`)
//! and surjective; fibers are finite automatically. For finite spaces the
//! closedness test reduces to point closures: for every `(x, y)` in `T` and
//! every `x' <= x` some `y' <= y` must satisfy `(x', y') ∈ T`.
//!
//! Every [`Corr`] is validated on construction, including the results of
//! composition, box products, gluing and the rest of the calculus.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finspace::{same_space, ContMap, FinSpace, PointSet};
use crate::simplicial::interval_fin;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "criterion", content = "witness", rename_all = "snake_case")]
pub enum Failure {
    /// The projected closure of `(source, target)` misses `missing`.
    Closed {
        source: String,
        target: String,
        missing: String,
    },
    /// `point` has an empty fiber.
    Surjective { point: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validity {
    pub is_valid: bool,
    pub failures: Vec<Failure>,
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self
            .failures
            .iter()
            .map(|fail| match fail {
                Failure::Closed {
                    source,
                    target,
                    missing,
                } => format!(
                    "projected closure of ({source},{target}) is not closed, misses {missing}"
                ),
                Failure::Surjective { point } => format!("no pair over {point}"),
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks a graph given by its fibers (`fibers[x]` is the set of `y` with
/// `(x, y)` in the graph).
pub fn validate(source: &FinSpace, target: &FinSpace, fibers: &[PointSet]) -> Validity {
    let mut failures = Vec::new();
    for (x, fiber) in fibers.iter().enumerate() {
        if fiber.is_clear() {
            failures.push(Failure::Surjective {
                point: source.name(x).into(),
            });
        }
        for y in fiber.ones() {
            for lower in source.down(x).ones() {
                if lower != x && fibers[lower].is_disjoint(target.down(y)) {
                    failures.push(Failure::Closed {
                        source: source.name(x).into(),
                        target: target.name(y).into(),
                        missing: source.name(lower).into(),
                    });
                }
            }
        }
    }
    Validity {
        is_valid: failures.is_empty(),
        failures,
    }
}

/// Builds fibers from pairs of point positions.
pub fn fibers_from_pairs(
    source: &FinSpace,
    target: &FinSpace,
    pairs: &[(usize, usize)],
) -> Result<Vec<PointSet>> {
    let mut fibers = vec![target.empty_set(); source.len()];
    for &(x, y) in pairs {
        if x >= source.len() {
            return Err(Error::PointIndex(x));
        }
        if y >= target.len() {
            return Err(Error::PointIndex(y));
        }
        fibers[x].insert(y);
    }
    Ok(fibers)
}

#[derive(Clone)]
pub struct Corr {
    source: Arc<FinSpace>,
    target: Arc<FinSpace>,
    fibers: Vec<PointSet>,
}

impl PartialEq for Corr {
    fn eq(&self, other: &Self) -> bool {
        self.fibers == other.fibers
            && same_space(&self.source, &other.source)
            && same_space(&self.target, &other.target)
    }
}

impl Eq for Corr {}

impl fmt::Debug for Corr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .map(|(x, y)| format!("({},{})", self.source.name(x), self.target.name(y)))
            .collect();
        write!(f, "Corr{{{}}}", pairs.join(", "))
    }
}

fn mismatch(what: &str) -> Error {
    Error::SpaceMismatch(what.into())
}

impl Corr {
    pub fn new(
        source: Arc<FinSpace>,
        target: Arc<FinSpace>,
        fibers: Vec<PointSet>,
    ) -> Result<Self> {
        if fibers.len() != source.len() {
            return Err(Error::AssignmentLength {
                expected: source.len(),
                got: fibers.len(),
            });
        }
        let fibers: Vec<PointSet> = fibers
            .into_iter()
            .map(|mut f| {
                if f.len() > target.len() {
                    if let Some(bad) = f.ones().find(|&y| y >= target.len()) {
                        return Err(Error::PointIndex(bad));
                    }
                }
                f.grow(target.len());
                Ok(f)
            })
            .collect::<Result<_>>()?;
        let v = validate(&source, &target, &fibers);
        if !v.is_valid {
            return Err(Error::InvalidCorr(v));
        }
        Ok(Corr {
            source,
            target,
            fibers,
        })
    }

    pub fn from_pairs(
        source: Arc<FinSpace>,
        target: Arc<FinSpace>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let fibers = fibers_from_pairs(&source, &target, pairs)?;
        Self::new(source, target, fibers)
    }

    pub fn from_named_pairs<S: AsRef<str>>(
        source: Arc<FinSpace>,
        target: Arc<FinSpace>,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let idx = pairs
            .iter()
            .map(|(x, y)| Ok((source.index_of(x.as_ref())?, target.index_of(y.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(source, target, &idx)
    }

    /// Graph of a continuous map.
    pub fn from_map(f: &ContMap) -> Result<Self> {
        f.require_continuous()?;
        let target = f.cod().clone();
        let fibers = f
            .assignment()
            .iter()
            .map(|&y| {
                let mut s = target.empty_set();
                s.insert(y);
                s
            })
            .collect();
        Self::new(f.dom().clone(), target, fibers)
    }

    pub fn identity(space: Arc<FinSpace>) -> Self {
        Self::from_map(&ContMap::identity(space)).expect("identity is continuous")
    }

    /// The constant correspondence `X x A`.
    pub fn constant(
        source: Arc<FinSpace>,
        target: Arc<FinSpace>,
        value: &PointSet,
    ) -> Result<Self> {
        if value.is_clear() {
            return Err(Error::EmptyValue);
        }
        if let Some(bad) = value.ones().find(|&y| y >= target.len()) {
            return Err(Error::PointIndex(bad));
        }
        let fibers = vec![value.clone(); source.len()];
        Self::new(source, target, fibers)
    }

    pub fn source(&self) -> &Arc<FinSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinSpace> {
        &self.target
    }

    pub fn fiber(&self, x: usize) -> &PointSet {
        &self.fibers[x]
    }

    pub fn fibers(&self) -> &[PointSet] {
        &self.fibers
    }

    pub fn into_fibers(self) -> Vec<PointSet> {
        self.fibers
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.fibers[x].contains(y)
    }

    /// Pairs in lexicographic order of point positions.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.fibers
            .iter()
            .enumerate()
            .flat_map(|(x, f)| f.ones().map(move |y| (x, y)))
    }

    pub fn named_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .map(|(x, y)| (self.source.name(x).into(), self.target.name(y).into()))
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.fibers.iter().map(|f| f.count_ones(..)).sum()
    }

    /// Re-runs the validity check (always valid for a constructed value).
    pub fn validity(&self) -> Validity {
        validate(&self.source, &self.target, &self.fibers)
    }

    /// `self` followed by `next`, i.e. `next ∘ self`: pairs `(x, z)` with
    /// `(x, y) ∈ self` and `(y, z) ∈ next` for some `y`.
    pub fn then(&self, next: &Corr) -> Result<Corr> {
        compose(self, next)
    }

    /// Image `T(A)`.
    pub fn image(&self, set: &PointSet) -> Result<PointSet> {
        if let Some(bad) = set.ones().find(|&x| x >= self.source.len()) {
            return Err(Error::PointIndex(bad));
        }
        let mut out = self.target.empty_set();
        for x in set.ones() {
            out.union_with(&self.fibers[x]);
        }
        Ok(out)
    }

    /// `T ∩ (A x Y)` as a correspondence on the subspace `A`.
    pub fn restrict(&self, set: &PointSet) -> Result<Corr> {
        let (sub, embed) = self.source.subspace_with_embedding(set)?;
        let fibers = embed.iter().map(|&x| self.fibers[x].clone()).collect();
        Corr::new(Arc::new(sub), self.target.clone(), fibers)
    }

    /// Identifies `X` with the slice along `inclusion: X -> X x I` and
    /// restricts; this is `pullback(inclusion, self)`.
    pub fn restrict_along(&self, inclusion: &ContMap) -> Result<Corr> {
        pullback(inclusion, self)
    }
}

/// `S ∘ R`. Validity of the result is re-checked on construction.
pub fn compose(r: &Corr, s: &Corr) -> Result<Corr> {
    if !same_space(&r.target, &s.source) {
        return Err(mismatch(
            "target of the first correspondence is not the source of the second",
        ));
    }
    let fibers = r
        .fibers
        .iter()
        .map(|fy| {
            let mut out = s.target.empty_set();
            for y in fy.ones() {
                out.union_with(&s.fibers[y]);
            }
            out
        })
        .collect();
    Corr::new(r.source.clone(), s.target.clone(), fibers)
}

/// Box product `R ⊠ R' ∈ M(X x X', Y x Y')`.
pub fn box_product(r: &Corr, r2: &Corr) -> Result<Corr> {
    let source = Arc::new(r.source.product(&r2.source));
    let target = Arc::new(r.target.product(&r2.target));
    box_product_into(r, r2, source, target)
}

/// Box product with caller-supplied product spaces (which must equal the
/// products of the factors, as checked by index layout).
pub(crate) fn box_product_into(
    r: &Corr,
    r2: &Corr,
    source: Arc<FinSpace>,
    target: Arc<FinSpace>,
) -> Result<Corr> {
    let (n2, m2) = (r2.source.len(), r2.target.len());
    if source.len() != r.source.len() * n2 || target.len() != r.target.len() * m2 {
        return Err(mismatch("product spaces do not match the factors"));
    }
    let mut fibers = Vec::with_capacity(source.len());
    for x in 0..r.source.len() {
        for x2 in 0..n2 {
            let mut out = target.empty_set();
            for y in r.fibers[x].ones() {
                for y2 in r2.fibers[x2].ones() {
                    out.insert(y * m2 + y2);
                }
            }
            fibers.push(out);
        }
    }
    Corr::new(source, target, fibers)
}

/// `{(x, z) : (f(x), z) ∈ S}`, equal to `S ∘ gr(f)`.
pub fn pullback(f: &ContMap, s: &Corr) -> Result<Corr> {
    if !same_space(f.cod(), &s.source) {
        return Err(mismatch(
            "codomain of the map is not the source of the correspondence",
        ));
    }
    f.require_continuous()?;
    let fibers = f
        .assignment()
        .iter()
        .map(|&y| s.fibers[y].clone())
        .collect();
    Corr::new(f.dom().clone(), s.target.clone(), fibers)
}

/// `{(x, g(y)) : (x, y) ∈ R}`, equal to `gr(g) ∘ R`.
pub fn pushforward(r: &Corr, g: &ContMap) -> Result<Corr> {
    if !same_space(&r.target, g.dom()) {
        return Err(mismatch(
            "target of the correspondence is not the domain of the map",
        ));
    }
    g.require_continuous()?;
    let fibers = r.fibers.iter().map(|f| g.image(f)).collect();
    Corr::new(r.source.clone(), g.cod().clone(), fibers)
}

/// Glues correspondences defined on a finite closed cover that agree on
/// overlaps. The glued correspondence is the union of the parts.
pub fn glue(space: &Arc<FinSpace>, cover: &[PointSet], parts: &[Corr]) -> Result<Corr> {
    if cover.len() != parts.len() {
        return Err(Error::CoverArity {
            cover: cover.len(),
            parts: parts.len(),
        });
    }
    let target = match parts.first() {
        Some(p) => p.target.clone(),
        None if space.is_empty() => Arc::new(FinSpace::discrete::<&str>(&[])?),
        None => return Err(Error::IncompleteCover(space.name(0).into())),
    };
    let mut owner: Vec<Option<(usize, usize)>> = vec![None; space.len()];
    for (i, (member, part)) in cover.iter().zip(parts).enumerate() {
        if !space.is_closed(member) {
            return Err(Error::CoverNotClosed(i));
        }
        let (sub, embed) = space.subspace_with_embedding(member)?;
        if *part.source != sub {
            return Err(mismatch(&format!(
                "part {i} is not defined on cover member {i}"
            )));
        }
        if !same_space(&part.target, &target) {
            return Err(mismatch("parts have different targets"));
        }
        for (local, &x) in embed.iter().enumerate() {
            match owner[x] {
                None => owner[x] = Some((i, local)),
                Some((j, other)) => {
                    if parts[j].fibers[other] != part.fibers[local] {
                        return Err(Error::OverlapDisagreement {
                            first: j,
                            second: i,
                            point: space.name(x).into(),
                        });
                    }
                }
            }
        }
    }
    let fibers = owner
        .iter()
        .enumerate()
        .map(|(x, o)| match o {
            Some((i, local)) => Ok(parts[*i].fibers[*local].clone()),
            None => Err(Error::IncompleteCover(space.name(x).into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Corr::new(space.clone(), target, fibers)
}

/// Shortest comparability path from `from` to `to`, breadth first with
/// neighbours in point order.
fn comparability_path(space: &FinSpace, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = space.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([from]);
    prev[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        let mut nbrs: Vec<usize> = space.down(x).ones().chain(space.up(x).ones()).collect();
        nbrs.sort_unstable();
        for y in nbrs {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Multivalued path from `from` to `to`: a correspondence from a fence
/// `I_k` to `space` whose fibers at the two extreme points are `from` and
/// `to`. It is the union of the graphs of single-valued fence paths, one per
/// pair `(a, b)`, each padded to the common length by repeating its endpoint.
pub fn mpath(space: &Arc<FinSpace>, from: &PointSet, to: &PointSet) -> Result<Corr> {
    if from.is_clear() || to.is_clear() {
        return Err(Error::EmptyValue);
    }
    for s in [from, to] {
        if let Some(bad) = s.ones().find(|&x| x >= space.len()) {
            return Err(Error::PointIndex(bad));
        }
    }
    let mut paths = Vec::new();
    for a in from.ones() {
        for b in to.ones() {
            let p = comparability_path(space, a, b).ok_or_else(|| Error::Disconnected {
                from: space.name(a).into(),
                to: space.name(b).into(),
            })?;
            paths.push(p);
        }
    }
    let length = paths.iter().map(|p| p.len() - 1).max().unwrap_or(0).max(1);
    let fence = interval_fin(length)?;
    let mut pairs = Vec::new();
    for p in &paths {
        let at = |j: usize| p[j.min(p.len() - 1)];
        for j in 0..=length {
            pairs.push((fence.closed_point(j), at(j)));
        }
        for j in 1..=length {
            let (lo, hi) = (at(j - 1), at(j));
            // the open point sits above both ends of its step
            let top = if space.leq(lo, hi) { hi } else { lo };
            pairs.push((fence.open_point(j), top));
        }
    }
    Corr::from_pairs(fence.space.clone(), space.clone(), &pairs)
}
