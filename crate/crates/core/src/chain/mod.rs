//! Integral chains of multivalued simplices, boundary operators, homology
//! over finite bases and the prism chain homotopy.
//!
//! An `n`-simplex over `X` is a valid correspondence from `delta_fin(n)` to
//! `X`. Chains are sparse: a sorted map from simplices to nonzero integer
//! coefficients. Chains are unnormalized (degenerate simplices are kept).

mod snf;

pub use snf::{invariant_factors, smith_normal_form, IntMatrix, Smith};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::corr::{box_product_into, compose, pullback, Corr};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::finspace::{same_space, ContMap, FinSpace};
use crate::simplicial::{delta_fin, face_fin, interval_fin, prism_fin, prism_space};

/// A basis simplex. Ordering and hashing only look at the fibers; simplices
/// are only ever compared within one degree and one target space.
#[derive(Clone, PartialEq, Eq)]
pub struct Simplex(Corr);

impl Simplex {
    pub fn new(corr: Corr) -> Result<Self> {
        let n = degree_of(&corr)?;
        if !same_space(corr.source(), &delta_fin(n)?.space) {
            return Err(Error::SpaceMismatch(
                "simplex source is not a simplex model".into(),
            ));
        }
        Ok(Simplex(corr))
    }

    pub fn degree(&self) -> usize {
        degree_of(&self.0).expect("checked on construction")
    }

    pub fn corr(&self) -> &Corr {
        &self.0
    }

    pub fn into_corr(self) -> Corr {
        self.0
    }

    pub fn target(&self) -> &Arc<FinSpace> {
        self.0.target()
    }

    /// `i`-th face: the pullback along `face_fin(n, i)`.
    pub fn face(&self, i: usize) -> Result<Simplex> {
        face(&self.0, i).map(Simplex)
    }
}

/// The degree `n` with `|delta_fin(n)| = 2^(n+1) - 1`.
fn degree_of(corr: &Corr) -> Result<usize> {
    let len = corr.source().len() + 1;
    if !len.is_power_of_two() || len < 2 {
        return Err(Error::SpaceMismatch(
            "simplex source is not a simplex model".into(),
        ));
    }
    Ok(len.trailing_zeros() as usize - 1)
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.0.fibers(), other.0.fibers());
        a.len().cmp(&b.len()).then_with(|| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.ones().cmp(y.ones()))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Simplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.fibers().hash(state);
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src = self.0.source();
        let tgt = self.0.target();
        let parts: Vec<String> = self
            .0
            .fibers()
            .iter()
            .enumerate()
            .map(|(x, fib)| format!("{}->{}", src.name(x), tgt.subset_names(fib).join("")))
            .collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

/// `i`-th face of an `n`-simplex.
pub fn face(sigma: &Corr, i: usize) -> Result<Corr> {
    let n = degree_of(sigma)?;
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    pullback(&*face_fin(n, i)?, sigma)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    space: Arc<FinSpace>,
    terms: BTreeMap<Simplex, i64>,
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain[{}]", self.degree)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Chain {
    pub fn zero(space: Arc<FinSpace>, degree: usize) -> Self {
        Chain {
            degree,
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_simplex(s: Simplex) -> Self {
        let mut c = Chain::zero(s.target().clone(), s.degree());
        c.terms.insert(s, 1);
        c
    }

    pub fn from_terms(
        space: Arc<FinSpace>,
        degree: usize,
        terms: impl IntoIterator<Item = (Simplex, i64)>,
    ) -> Result<Self> {
        let mut c = Chain::zero(space, degree);
        for (s, k) in terms {
            c.add_term(s, k)?;
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> &Arc<FinSpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, i64)> {
        self.terms.iter().map(|(s, &k)| (s, k))
    }

    pub fn coeff(&self, s: &Simplex) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, s: Simplex, k: i64) -> Result<()> {
        if s.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: s.degree(),
            });
        }
        if !same_space(s.target(), &self.space) {
            return Err(Error::SpaceMismatch(
                "simplex target differs from the chain's space".into(),
            ));
        }
        if k == 0 {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Vacant(e) => {
                e.insert(k);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(k).ok_or(Error::Overflow)?;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
        Ok(())
    }

    /// `self + k * other`.
    pub fn add_scaled(&mut self, other: &Chain, k: i64) -> Result<()> {
        if other.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        for (s, v) in other.terms() {
            self.add_term(s.clone(), v.checked_mul(k).ok_or(Error::Overflow)?)?;
        }
        Ok(())
    }

    pub fn plus(&self, other: &Chain) -> Result<Chain> {
        let mut c = self.clone();
        c.add_scaled(other, 1)?;
        Ok(c)
    }

    pub fn minus(&self, other: &Chain) -> Result<Chain> {
        let mut c = self.clone();
        c.add_scaled(other, -1)?;
        Ok(c)
    }

    pub fn scaled(&self, k: i64) -> Result<Chain> {
        let mut c = Chain::zero(self.space.clone(), self.degree);
        c.add_scaled(self, k)?;
        Ok(c)
    }
}

/// Alternating sum of faces.
pub fn boundary(c: &Chain) -> Result<Chain> {
    if c.degree == 0 {
        return Err(Error::DegreeZero);
    }
    let mut out = Chain::zero(c.space.clone(), c.degree - 1);
    for (s, k) in c.terms() {
        for i in 0..=c.degree {
            let sign = if i % 2 == 0 { k } else { -k };
            out.add_term(s.face(i)?, sign)?;
        }
    }
    Ok(out)
}

/// Boundary with the degree-0 convention `d_0 = 0`.
pub fn boundary_or_zero(c: &Chain) -> Result<Chain> {
    if c.degree == 0 {
        return Ok(Chain::zero(c.space.clone(), 0));
    }
    boundary(c)
}

/// Induced chain map `C_n(T)`: each simplex `σ` goes to `T ∘ σ`.
pub fn push_chain(t: &Corr, c: &Chain) -> Result<Chain> {
    if !same_space(t.source(), &c.space) {
        return Err(Error::SpaceMismatch(
            "correspondence source differs from the chain's space".into(),
        ));
    }
    let mut out = Chain::zero(t.target().clone(), c.degree);
    for (s, k) in c.terms() {
        out.add_term(Simplex(compose(s.corr(), t)?), k)?;
    }
    Ok(out)
}

/// Matrix of `d_n` in given bases: rows are `(n-1)`-simplices, columns
/// `n`-simplices.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub degree: usize,
    pub matrix: IntMatrix,
}

impl BoundaryMatrix {
    /// `d_0`, the zero map to the trivial group.
    pub fn degree_zero(basis_len: usize) -> Self {
        BoundaryMatrix {
            degree: 0,
            matrix: IntMatrix::zeros(0, basis_len),
        }
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
}

/// Assembles `d_n` column by column. `lower` must contain every face of
/// every simplex in `upper`.
pub fn boundary_matrix(lower: &[Simplex], upper: &[Simplex], exec: Exec) -> Result<BoundaryMatrix> {
    let Some(first) = upper.first() else {
        return Ok(BoundaryMatrix {
            degree: lower.first().map_or(1, |s| s.degree() + 1),
            matrix: IntMatrix::zeros(lower.len(), 0),
        });
    };
    let n = first.degree();
    if n == 0 {
        return Ok(BoundaryMatrix::degree_zero(upper.len()));
    }
    let index: HashMap<&Simplex, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let columns = exec.try_map(upper, |s| -> Result<Vec<i64>> {
        if s.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                got: s.degree(),
            });
        }
        let mut col = vec![0i64; lower.len()];
        for i in 0..=n {
            let f = s.face(i)?;
            let r = *index.get(&f).ok_or(Error::BasisNotFaceClosed)?;
            col[r] += if i % 2 == 0 { 1 } else { -1 };
        }
        Ok(col)
    })?;
    Ok(BoundaryMatrix {
        degree: n,
        matrix: IntMatrix::from_columns(lower.len(), &columns),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `ker d_n / im d_{n+1}`.
pub fn homology_at(d_n: &BoundaryMatrix, d_next: &BoundaryMatrix) -> Result<HomologyGroup> {
    if d_n.cols() != d_next.rows() {
        return Err(Error::NotComposable(format!(
            "d_{} has {} columns but d_{} has {} rows",
            d_n.degree,
            d_n.cols(),
            d_next.degree,
            d_next.rows()
        )));
    }
    if !d_n.matrix.mul(&d_next.matrix)?.is_zero() {
        return Err(Error::NonzeroComposite);
    }
    let rank_n = invariant_factors(&d_n.matrix)?.len();
    let factors = invariant_factors(&d_next.matrix)?;
    Ok(HomologyGroup {
        rank: d_n.cols() - rank_n - factors.len(),
        torsion: factors.into_iter().filter(|&f| f > 1).collect(),
    })
}

/// The chain homotopy induced by `L ∈ M(X x I, Y)`, with `R` and `S` the
/// restrictions of `L` to the bottom and top of the interval.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    base: Arc<FinSpace>,
    homotopy: Corr,
    bottom: Corr,
    top: Corr,
}

impl ChainHomotopy {
    pub fn new(base: Arc<FinSpace>, homotopy: Corr) -> Result<Self> {
        let interval = interval_fin(1)?;
        let width = interval.space.len();
        if **homotopy.source() != base.product(&interval.space) {
            return Err(Error::SpaceMismatch("homotopy source is not X x I".into()));
        }
        let end = |level: usize| -> Result<Corr> {
            let assignment = (0..base.len()).map(|x| x * width + level).collect();
            let inc = ContMap::new(base.clone(), homotopy.source().clone(), assignment)?;
            pullback(&inc, &homotopy)
        };
        let bottom = end(interval.bottom())?;
        let top = end(interval.top())?;
        Ok(ChainHomotopy {
            base,
            homotopy,
            bottom,
            top,
        })
    }

    pub fn homotopy(&self) -> &Corr {
        &self.homotopy
    }

    /// Restriction to the bottom of the interval.
    pub fn bottom(&self) -> &Corr {
        &self.bottom
    }

    /// Restriction to the top of the interval.
    pub fn top(&self) -> &Corr {
        &self.top
    }

    /// `h_n^i(α) = L ∘ (α ⊠ id_I) ∘ gr(prism_fin(n, i))`.
    pub fn component(&self, alpha: &Simplex, i: usize) -> Result<Simplex> {
        let n = alpha.degree();
        if !same_space(alpha.target(), &self.base) {
            return Err(Error::SpaceMismatch(
                "simplex target is not the homotopy's base".into(),
            ));
        }
        let id = Corr::identity(interval_fin(1)?.space.clone());
        let lifted = box_product_into(
            alpha.corr(),
            &id,
            prism_space(n)?,
            self.homotopy.source().clone(),
        )?;
        let moved = compose(&lifted, &self.homotopy)?;
        Ok(Simplex(pullback(&*prism_fin(n, i)?, &moved)?))
    }

    /// `h_n = Σ (-1)^i h_n^i`, extended linearly.
    pub fn apply(&self, c: &Chain) -> Result<Chain> {
        if !same_space(&c.space, &self.base) {
            return Err(Error::SpaceMismatch(
                "chain space is not the homotopy's base".into(),
            ));
        }
        let mut out = Chain::zero(self.homotopy.target().clone(), c.degree + 1);
        for (s, k) in c.terms() {
            for i in 0..=c.degree {
                out.add_term(self.component(s, i)?, if i % 2 == 0 { k } else { -k })?;
            }
        }
        Ok(out)
    }

    /// Both sides of `d h + h d = S# - R#` on `c`.
    pub fn identity_sides(&self, c: &Chain) -> Result<(Chain, Chain)> {
        let mut lhs = boundary(&self.apply(c)?)?;
        if c.degree > 0 {
            lhs.add_scaled(&self.apply(&boundary(c)?)?, 1)?;
        }
        let rhs = push_chain(&self.top, c)?.minus(&push_chain(&self.bottom, c)?)?;
        Ok((lhs, rhs))
    }
}

pub fn apply_chain_homotopy(base: &Arc<FinSpace>, homotopy: &Corr, c: &Chain) -> Result<Chain> {
    ChainHomotopy::new(base.clone(), homotopy.clone())?.apply(c)
}

#[derive(Clone, Debug)]
pub struct HomotopyFailure {
    pub sample: usize,
    pub lhs: Chain,
    pub rhs: Chain,
}

#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub checked: usize,
    pub failures: Vec<HomotopyFailure>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `d h + h d = S# - R#` exactly on every sample.
pub fn verify_homotopy_identity(
    h: &ChainHomotopy,
    samples: &[Chain],
    exec: Exec,
) -> Result<HomotopyReport> {
    let sides = exec.try_map(samples, |c| h.identity_sides(c))?;
    let failures = sides
        .into_iter()
        .enumerate()
        .filter(|(_, (l, r))| l != r)
        .map(|(sample, (lhs, rhs))| HomotopyFailure { sample, lhs, rhs })
        .collect();
    Ok(HomotopyReport {
        checked: samples.len(),
        failures,
    })
}
