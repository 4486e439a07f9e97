//! Finite topological spaces as specialization preorders.
//!
//! A finite space is determined by its specialization preorder: `x <= y`
//! iff `x` lies in the closure of `{y}`. Closed sets are the down-sets of the
//! preorder, open sets the up-sets, and continuous maps are the monotone maps.
//! Nothing here materializes the lattice of closed sets; every test reduces
//! to point closures.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A subset of the points of a space, indexed by point position.
pub type PointSet = FixedBitSet;

#[derive(Clone)]
pub struct FinSpace {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// `down[x]` holds every `y` with `y <= x`, i.e. the closure of `{x}`.
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    t0: bool,
}

impl PartialEq for FinSpace {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.down == other.down
    }
}

impl Eq for FinSpace {}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = self
            .strict_pairs()
            .map(|(x, y)| format!("{}<={}", self.names[x], self.names[y]))
            .collect();
        f.debug_struct("FinSpace")
            .field("points", &self.names)
            .field("leq", &pairs)
            .finish()
    }
}

impl FinSpace {
    /// Builds the reflexive-transitive closure of `pairs` (each `(x, y)` read
    /// as `x <= y`). With `t0` set, the result must be antisymmetric.
    pub fn new<S: AsRef<str>>(points: &[S], pairs: &[(S, S)], t0: bool) -> Result<Self> {
        let names: Vec<String> = points.iter().map(|p| p.as_ref().to_owned()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(n.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownPoint(s.into()))
        };
        let idx_pairs = pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_index_pairs(names, &idx_pairs, t0)
    }

    /// Same as [`FinSpace::new`] with pairs given by point position.
    pub fn from_index_pairs(
        names: Vec<String>,
        pairs: &[(usize, usize)],
        t0: bool,
    ) -> Result<Self> {
        let n = names.len();
        let mut down: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(i);
                s
            })
            .collect();
        for &(lo, hi) in pairs {
            if lo >= n {
                return Err(Error::PointIndex(lo));
            }
            if hi >= n {
                return Err(Error::PointIndex(hi));
            }
            down[hi].insert(lo);
        }
        // Warshall on rows: j <= k <= i implies j <= i.
        for k in 0..n {
            let row_k = down[k].clone();
            for row in down.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_down_sets(names, down, t0)
    }

    /// `down[x]` must already be reflexive and transitive.
    fn from_down_sets(names: Vec<String>, down: Vec<FixedBitSet>, t0: bool) -> Result<Self> {
        let n = names.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in down.iter().enumerate() {
            for y in row.ones() {
                up[y].insert(x);
            }
        }
        if t0 {
            for x in 0..n {
                for y in down[x].ones() {
                    if y != x && down[y].contains(x) {
                        return Err(Error::Antisymmetry(names[y].clone(), names[x].clone()));
                    }
                }
            }
        }
        let index = names
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(FinSpace {
            names,
            index,
            down,
            up,
            t0,
        })
    }

    pub fn discrete<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        Self::new(points, &[], true)
    }

    /// The one-point space `{pt}`.
    pub fn point() -> Self {
        Self::discrete(&["pt"]).expect("valid")
    }

    /// Sierpiński space `{c <= o}`: `c` closed, `o` open.
    pub fn sierpinski() -> Self {
        Self::new(&["c", "o"], &[("c", "o")], true).expect("valid")
    }

    /// The 4-point pseudocircle: closed points `a, b` below open points `c, d`.
    pub fn pseudocircle() -> Self {
        Self::new(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
            true,
        )
        .expect("valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_owned()))
    }

    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        let mut s = self.empty_set();
        for n in names {
            s.insert(self.index_of(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn subset_names(&self, set: &PointSet) -> Vec<String> {
        set.ones().map(|x| self.names[x].clone()).collect()
    }

    pub fn is_t0(&self) -> bool {
        self.t0
    }

    pub fn t0_flag(&self) -> bool {
        self.t0
    }

    /// `x <= y` in the specialization preorder.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// Closure of `{x}`.
    pub fn down(&self, x: usize) -> &PointSet {
        &self.down[x]
    }

    /// Smallest open set containing `x`.
    pub fn up(&self, x: usize) -> &PointSet {
        &self.up[x]
    }

    pub fn empty_set(&self) -> PointSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Pairs `x <= y` with `x != y`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.down
            .iter()
            .enumerate()
            .flat_map(|(y, row)| row.ones().filter(move |&x| x != y).map(move |x| (x, y)))
    }

    pub fn is_discrete(&self) -> bool {
        self.down.iter().all(|row| row.count_ones(..) == 1)
    }

    fn check_subset(&self, set: &PointSet) -> Result<()> {
        if set.len() > self.len() {
            if let Some(x) = set.ones().find(|&x| x >= self.len()) {
                return Err(Error::PointIndex(x));
            }
        }
        Ok(())
    }

    /// Down-closure of `set`.
    pub fn closure(&self, set: &PointSet) -> Result<PointSet> {
        self.check_subset(set)?;
        let mut out = self.empty_set();
        for x in set.ones() {
            out.union_with(&self.down[x]);
        }
        Ok(out)
    }

    /// Up-closure of `set`: the smallest open set containing it.
    pub fn up_closure(&self, set: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for x in set.ones() {
            out.union_with(&self.up[x]);
        }
        out
    }

    pub fn is_closed(&self, set: &PointSet) -> bool {
        set.ones()
            .all(|x| x < self.len() && self.down[x].is_subset(set))
    }

    pub fn is_open(&self, set: &PointSet) -> bool {
        set.ones()
            .all(|x| x < self.len() && self.up[x].is_subset(set))
    }

    /// Product space; the point `(a, b)` sits at index `a * other.len() + b`
    /// and carries the name `"(a,b)"`.
    pub fn product(&self, other: &FinSpace) -> FinSpace {
        let nb = other.len();
        let n = self.len() * nb;
        let mut names = Vec::with_capacity(n);
        let mut down = Vec::with_capacity(n);
        for a in 0..self.len() {
            for b in 0..nb {
                names.push(format!("({},{})", self.names[a], other.names[b]));
                let mut row = FixedBitSet::with_capacity(n);
                for a2 in self.down[a].ones() {
                    for b2 in other.down[b].ones() {
                        row.insert(a2 * nb + b2);
                    }
                }
                down.push(row);
            }
        }
        Self::from_down_sets(names, down, self.t0 && other.t0).expect("product of preorders")
    }

    /// Subspace on `subset`, keeping the original point order.
    pub fn subspace(&self, subset: &PointSet) -> Result<FinSpace> {
        Ok(self.subspace_with_embedding(subset)?.0)
    }

    /// Subspace together with the positions of its points in `self`.
    pub fn subspace_with_embedding(&self, subset: &PointSet) -> Result<(FinSpace, Vec<usize>)> {
        self.check_subset(subset)?;
        let embed: Vec<usize> = subset.ones().collect();
        let m = embed.len();
        let names = embed.iter().map(|&x| self.names[x].clone()).collect();
        let down = embed
            .iter()
            .map(|&x| {
                let mut row = FixedBitSet::with_capacity(m);
                for (j, &y) in embed.iter().enumerate() {
                    if self.leq(y, x) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok((Self::from_down_sets(names, down, self.t0)?, embed))
    }

    /// Connected components of the comparability graph (for finite spaces,
    /// connected and path-connected coincide). Returns a component id per point.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(x) = stack.pop() {
                for y in self.down[x].ones().chain(self.up[x].ones()) {
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }
}

pub fn same_space(a: &Arc<FinSpace>, b: &Arc<FinSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A total map between finite spaces. Continuity is a property checked by
/// [`ContMap::is_continuous`]; operations that need it check it themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContMap {
    dom: Arc<FinSpace>,
    cod: Arc<FinSpace>,
    assignment: Vec<usize>,
}

impl ContMap {
    pub fn new(dom: Arc<FinSpace>, cod: Arc<FinSpace>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != dom.len() {
            return Err(Error::AssignmentLength {
                expected: dom.len(),
                got: assignment.len(),
            });
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= cod.len()) {
            return Err(Error::PointIndex(bad));
        }
        Ok(ContMap {
            dom,
            cod,
            assignment,
        })
    }

    /// Builds a map from `(domain point, codomain point)` names.
    pub fn from_names<S: AsRef<str>>(
        dom: Arc<FinSpace>,
        cod: Arc<FinSpace>,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut assignment = vec![usize::MAX; dom.len()];
        for (x, y) in pairs {
            assignment[dom.index_of(x.as_ref())?] = cod.index_of(y.as_ref())?;
        }
        if let Some(x) = assignment.iter().position(|&y| y == usize::MAX) {
            return Err(Error::Malformed(format!(
                "map is not total: `{}` unassigned",
                dom.name(x)
            )));
        }
        Self::new(dom, cod, assignment)
    }

    /// Like [`ContMap::new`] but rejects non-monotone assignments.
    pub fn continuous(
        dom: Arc<FinSpace>,
        cod: Arc<FinSpace>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        let f = Self::new(dom, cod, assignment)?;
        f.require_continuous()?;
        Ok(f)
    }

    pub fn identity(space: Arc<FinSpace>) -> Self {
        let assignment = (0..space.len()).collect();
        ContMap {
            dom: space.clone(),
            cod: space,
            assignment,
        }
    }

    /// The constant map onto `y`.
    pub fn constant(dom: Arc<FinSpace>, cod: Arc<FinSpace>, y: usize) -> Result<Self> {
        let n = dom.len();
        Self::new(dom, cod, vec![y; n])
    }

    /// First projection `a x b -> a`.
    pub fn projection_first(a: &Arc<FinSpace>, b: &Arc<FinSpace>) -> Self {
        let nb = b.len();
        let prod = Arc::new(a.product(b));
        let assignment = (0..prod.len()).map(|p| p / nb).collect();
        ContMap {
            dom: prod,
            cod: a.clone(),
            assignment,
        }
    }

    /// Second projection `a x b -> b`.
    pub fn projection_second(a: &Arc<FinSpace>, b: &Arc<FinSpace>) -> Self {
        let nb = b.len();
        let prod = Arc::new(a.product(b));
        let assignment = (0..prod.len()).map(|p| p % nb).collect();
        ContMap {
            dom: prod,
            cod: b.clone(),
            assignment,
        }
    }

    /// Inclusion of the subspace on `subset`.
    pub fn inclusion(space: &Arc<FinSpace>, subset: &PointSet) -> Result<Self> {
        let (sub, embed) = space.subspace_with_embedding(subset)?;
        Ok(ContMap {
            dom: Arc::new(sub),
            cod: space.clone(),
            assignment: embed,
        })
    }

    /// Product map `f x g`.
    pub fn product(&self, other: &ContMap) -> ContMap {
        let dom = Arc::new(self.dom.product(&other.dom));
        let cod = Arc::new(self.cod.product(&other.cod));
        let (nb, nd) = (other.dom.len(), other.cod.len());
        let assignment = (0..dom.len())
            .map(|p| self.assignment[p / nb] * nd + other.assignment[p % nb])
            .collect();
        ContMap {
            dom,
            cod,
            assignment,
        }
    }

    pub fn dom(&self) -> &Arc<FinSpace> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinSpace> {
        &self.cod
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn image(&self, set: &PointSet) -> PointSet {
        let mut out = self.cod.empty_set();
        for x in set.ones() {
            out.insert(self.assignment[x]);
        }
        out
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ContMap) -> Result<ContMap> {
        if !same_space(&self.cod, &other.dom) {
            return Err(Error::SpaceMismatch(
                "codomain of the first map is not the domain of the second".into(),
            ));
        }
        Ok(ContMap {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            assignment: self
                .assignment
                .iter()
                .map(|&y| other.assignment[y])
                .collect(),
        })
    }

    /// First witness of non-monotonicity, as `(lower, upper)`.
    fn monotonicity_witness(&self) -> Option<(usize, usize)> {
        self.dom
            .strict_pairs()
            .find(|&(x, y)| !self.cod.leq(self.assignment[x], self.assignment[y]))
    }

    pub fn is_continuous(&self) -> bool {
        self.monotonicity_witness().is_none()
    }

    pub(crate) fn require_continuous(&self) -> Result<()> {
        match self.monotonicity_witness() {
            None => Ok(()),
            Some((x, y)) => Err(Error::NotContinuous {
                lower: self.dom.name(x).into(),
                upper: self.dom.name(y).into(),
                image_lower: self.cod.name(self.assignment[x]).into(),
                image_upper: self.cod.name(self.assignment[y]).into(),
            }),
        }
    }

    /// Closedness via point closures: `f(cl{t})` must be a down-set for every
    /// `t`. Closed sets are finite unions of point closures, so this is
    /// equivalent to closedness. Between finite spaces closed and proper agree.
    pub fn is_closed_map(&self) -> Result<bool> {
        self.require_continuous()?;
        Ok((0..self.dom.len()).all(|t| {
            // f(cl{t}) ⊆ cl{f(t)} by monotonicity; it is a down-set iff it is all of it.
            self.cod
                .down(self.assignment[t])
                .is_subset(&self.image(self.dom.down(t)))
        }))
    }

    pub fn is_proper(&self) -> Result<bool> {
        self.is_closed_map()
    }
}
