//! Finite models of the standard simplices, the unit interval, faces and
//! prisms.
//!
//! `Δn` is modelled by its face poset: the nonempty subsets of `{0..n}`
//! ordered by inclusion, so the closure of a face is the set of its
//! subfaces. The interval is modelled by a fence
//! `m0 <= g1 >= m1 <= g2 >= ... >= mk` whose extreme points are closed.
//!
//! Models and the structure maps between them are memoized; repeated calls
//! return the same `Arc`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::finspace::{ContMap, FinSpace};

type MapCache = OnceLock<Mutex<HashMap<(usize, usize), Arc<ContMap>>>>;

/// A face of a standard simplex as a vertex bitmask.
pub type Face = u64;

pub const MAX_SIMPLEX_DIM: usize = 12;

/// Canonical face name, e.g. `{0,2}`.
pub fn face_name(face: Face) -> String {
    let verts: Vec<String> = (0..64)
        .filter(|v| face >> v & 1 == 1)
        .map(|v| v.to_string())
        .collect();
    format!("{{{}}}", verts.join(","))
}

/// Faces of `Δn` in model order: by size, then by bitmask.
pub fn faces(n: usize) -> Vec<Face> {
    let mut fs: Vec<Face> = (1..(1u64 << (n + 1))).collect();
    fs.sort_by_key(|&f| (f.count_ones(), f));
    fs
}

/// Finite model of the standard `n`-simplex.
#[derive(Clone, Debug)]
pub struct SimplexModel {
    pub dim: usize,
    pub space: Arc<FinSpace>,
    pub faces: Vec<Face>,
    position: HashMap<Face, usize>,
}

impl SimplexModel {
    pub fn point_of(&self, face: Face) -> usize {
        self.position[&face]
    }

    /// Point of the vertex `{v}`.
    pub fn vertex(&self, v: usize) -> usize {
        self.point_of(1 << v)
    }

    /// Point of the top face.
    pub fn top(&self) -> usize {
        self.space.len() - 1
    }
}

/// Finite model of the interval as a fence of length `k`.
#[derive(Clone, Debug)]
pub struct IntervalModel {
    pub length: usize,
    pub space: Arc<FinSpace>,
}

impl IntervalModel {
    /// Closed point `m_j`, `0 <= j <= k`.
    pub fn closed_point(&self, j: usize) -> usize {
        2 * j
    }

    /// Open point `g_j`, `1 <= j <= k`.
    pub fn open_point(&self, j: usize) -> usize {
        2 * j - 1
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        2 * self.length
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_SIMPLEX_DIM {
        return Err(Error::IndexOutOfRange {
            what: "simplex dimension",
            index: n,
            max: MAX_SIMPLEX_DIM,
        });
    }
    Ok(())
}

fn build_delta(n: usize) -> SimplexModel {
    let faces = faces(n);
    let position: HashMap<Face, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let names: Vec<String> = faces.iter().map(|&f| face_name(f)).collect();
    // covering relations suffice; the constructor closes transitively
    let mut pairs = Vec::new();
    for (i, &f) in faces.iter().enumerate() {
        for v in 0..=n {
            if f >> v & 1 == 1 && f.count_ones() > 1 {
                pairs.push((position[&(f & !(1 << v))], i));
            }
        }
    }
    let space = FinSpace::from_index_pairs(names, &pairs, true).expect("face poset");
    SimplexModel {
        dim: n,
        space: Arc::new(space),
        faces,
        position,
    }
}

fn memo<K, V, F>(cell: &'static OnceLock<Mutex<HashMap<K, V>>>, key: K, build: F) -> V
where
    K: std::hash::Hash + Eq,
    V: Clone,
    F: FnOnce() -> V,
{
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = build();
    map.lock().unwrap().entry(key).or_insert(v).clone()
}

pub fn delta_fin(n: usize) -> Result<Arc<SimplexModel>> {
    check_dim(n)?;
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SimplexModel>>>> = OnceLock::new();
    Ok(memo(&CACHE, n, || Arc::new(build_delta(n))))
}

pub fn interval_fin(k: usize) -> Result<Arc<IntervalModel>> {
    if k == 0 {
        return Err(Error::IndexOutOfRange {
            what: "fence length",
            index: 0,
            max: usize::MAX,
        });
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<IntervalModel>>>> = OnceLock::new();
    Ok(memo(&CACHE, k, || {
        let mut names = Vec::with_capacity(2 * k + 1);
        let mut pairs = Vec::new();
        names.push("m0".to_string());
        for j in 1..=k {
            names.push(format!("g{j}"));
            names.push(format!("m{j}"));
            pairs.push((2 * j - 2, 2 * j - 1));
            pairs.push((2 * j, 2 * j - 1));
        }
        let space = FinSpace::from_index_pairs(names, &pairs, true).expect("fence");
        Arc::new(IntervalModel {
            length: k,
            space: Arc::new(space),
        })
    }))
}

/// `Δn x I` with the length-one fence.
pub fn prism_space(n: usize) -> Result<Arc<FinSpace>> {
    let delta = delta_fin(n)?;
    let interval = interval_fin(1)?;
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FinSpace>>>> = OnceLock::new();
    Ok(memo(&CACHE, n, || {
        Arc::new(delta.space.product(&interval.space))
    }))
}

/// Vertex relabeling of the face map `δ_i^n`: skips vertex `i`.
pub fn face_vertex(i: usize, v: usize) -> usize {
    if v < i {
        v
    } else {
        v + 1
    }
}

/// Vertex relabeling of the degeneracy `σ_i`: merges vertices `i` and `i+1`.
pub fn degeneracy_vertex(i: usize, v: usize) -> usize {
    if v <= i {
        v
    } else {
        v - 1
    }
}

fn map_face(face: Face, f: impl Fn(usize) -> usize) -> Face {
    (0..64)
        .filter(|v| face >> v & 1 == 1)
        .fold(0, |acc, v| acc | 1 << f(v))
}

fn check_index(what: &'static str, i: usize, max: usize) -> Result<()> {
    if i > max {
        return Err(Error::IndexOutOfRange {
            what,
            index: i,
            max,
        });
    }
    Ok(())
}

/// Face inclusion `delta_fin(n-1) -> delta_fin(n)` missing vertex `i`.
pub fn face_fin(n: usize, i: usize) -> Result<Arc<ContMap>> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            what: "face dimension",
            index: 0,
            max: usize::MAX,
        });
    }
    check_index("face", i, n)?;
    let lower = delta_fin(n - 1)?;
    let upper = delta_fin(n)?;
    static CACHE: MapCache = OnceLock::new();
    Ok(memo(&CACHE, (n, i), || {
        let assignment = lower
            .faces
            .iter()
            .map(|&f| upper.point_of(map_face(f, |v| face_vertex(i, v))))
            .collect();
        Arc::new(
            ContMap::new(lower.space.clone(), upper.space.clone(), assignment).expect("face map"),
        )
    }))
}

/// Level of a face under the prism rule: all vertices `<= i` give the bottom
/// closed point, all `>= i + 1` the top one, anything mixed the open point.
fn prism_level(face: Face, i: usize, interval: &IntervalModel) -> usize {
    let low_mask: Face = (1u64 << (i + 1)) - 1;
    if face & !low_mask == 0 {
        interval.bottom()
    } else if face & low_mask == 0 {
        interval.top()
    } else {
        interval.open_point(1)
    }
}

/// Prism map `delta_fin(n+1) -> delta_fin(n) x I`.
pub fn prism_fin(n: usize, i: usize) -> Result<Arc<ContMap>> {
    check_index("prism", i, n)?;
    let upper = delta_fin(n + 1)?;
    let lower = delta_fin(n)?;
    let interval = interval_fin(1)?;
    let target = prism_space(n)?;
    static CACHE: MapCache = OnceLock::new();
    Ok(memo(&CACHE, (n, i), || {
        let width = interval.space.len();
        let assignment = upper
            .faces
            .iter()
            .map(|&f| {
                let base = lower.point_of(map_face(f, |v| degeneracy_vertex(i, v)));
                base * width + prism_level(f, i, &interval)
            })
            .collect();
        Arc::new(ContMap::new(upper.space.clone(), target, assignment).expect("prism map"))
    }))
}

/// `face_fin(n, i) x id_I : delta_fin(n-1) x I -> delta_fin(n) x I`.
pub fn face_times_interval(n: usize, i: usize) -> Result<ContMap> {
    let f = face_fin(n, i)?;
    let interval = interval_fin(1)?;
    let id = ContMap::identity(interval.space.clone());
    let p = f.product(&id);
    // swap in the memoized product spaces so identity checks hit the fast path
    ContMap::new(
        prism_space(n - 1)?,
        prism_space(n)?,
        p.assignment().to_vec(),
    )
}

/// End inclusion `delta_fin(n) -> delta_fin(n) x I` at the bottom (`top = false`)
/// or top closed point.
pub fn end_inclusion(n: usize, top: bool) -> Result<ContMap> {
    let delta = delta_fin(n)?;
    let interval = interval_fin(1)?;
    let level = if top {
        interval.top()
    } else {
        interval.bottom()
    };
    let width = interval.space.len();
    let assignment = (0..delta.space.len()).map(|p| p * width + level).collect();
    ContMap::new(delta.space.clone(), prism_space(n)?, assignment)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub n: usize,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub status: CheckStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

/// Every identity instance as `(identity, n, i, j)`, in report order. The
/// same enumeration drives the affine and the finite-model suites.
pub(crate) fn identity_instances(
    max_n: usize,
) -> Vec<(&'static str, usize, Option<usize>, Option<usize>)> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        if n >= 1 {
            for j in 0..n {
                for i in 0..=j {
                    out.push(("prism-1", n, Some(i), Some(j)));
                }
            }
            for i in 0..n {
                out.push(("prism-2", n, Some(i), None));
            }
            for j in 1..=n {
                for i in 0..j {
                    out.push(("prism-3", n, Some(i), Some(j)));
                }
            }
        }
        out.push(("prism-4", n, None, None));
        out.push(("prism-5", n, None, None));
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    out.push(("face-face", n, Some(i), Some(j)));
                }
            }
        }
    }
    out
}

fn check_fin_instance(name: &str, n: usize, i: Option<usize>, j: Option<usize>) -> Result<bool> {
    let eq = |a: ContMap, b: ContMap| a.assignment() == b.assignment();
    Ok(match name {
        // r^{j+1} ∘ δ^i = (δ^i x id) ∘ r^j_{n-1}
        "prism-1" => {
            let (i, j) = (i.unwrap(), j.unwrap());
            let lhs = face_fin(n + 1, i)?.then(&*prism_fin(n, j + 1)?)?;
            let rhs = prism_fin(n - 1, j)?.then(&face_times_interval(n, i)?)?;
            eq(lhs, rhs)
        }
        // r^{i+1} ∘ δ^{i+1} = r^i ∘ δ^{i+1}
        "prism-2" => {
            let i = i.unwrap();
            let lhs = face_fin(n + 1, i + 1)?.then(&*prism_fin(n, i + 1)?)?;
            let rhs = face_fin(n + 1, i + 1)?.then(&*prism_fin(n, i)?)?;
            eq(lhs, rhs)
        }
        // r^i ∘ δ^{j+1} = (δ^j x id) ∘ r^i_{n-1}
        "prism-3" => {
            let (i, j) = (i.unwrap(), j.unwrap());
            let lhs = face_fin(n + 1, j + 1)?.then(&*prism_fin(n, i)?)?;
            let rhs = prism_fin(n - 1, i)?.then(&face_times_interval(n, j)?)?;
            eq(lhs, rhs)
        }
        "prism-4" => {
            let lhs = face_fin(n + 1, 0)?.then(&*prism_fin(n, 0)?)?;
            eq(lhs, end_inclusion(n, true)?)
        }
        "prism-5" => {
            let lhs = face_fin(n + 1, n + 1)?.then(&*prism_fin(n, n)?)?;
            eq(lhs, end_inclusion(n, false)?)
        }
        // δ^j ∘ δ^i = δ^i ∘ δ^{j-1}, i < j, as maps Δ_{n-2} -> Δ_n
        "face-face" => {
            let (i, j) = (i.unwrap(), j.unwrap());
            let lhs = face_fin(n - 1, i)?.then(&*face_fin(n, j)?)?;
            let rhs = face_fin(n - 1, j - 1)?.then(&*face_fin(n, i)?)?;
            eq(lhs, rhs)
        }
        other => unreachable!("unknown identity {other}"),
    })
}

/// Checks the transported prism identities and the face identities for all
/// `n <= max_n` in the finite model.
pub fn verify_fin_identities(max_n: usize) -> Result<Vec<IdentityCheck>> {
    verify_fin_identities_with(max_n, Exec::default())
}

pub fn verify_fin_identities_with(max_n: usize, exec: Exec) -> Result<Vec<IdentityCheck>> {
    if max_n == 0 {
        return Err(Error::IndexOutOfRange {
            what: "max_n",
            index: 0,
            max: usize::MAX,
        });
    }
    // prism maps reach delta_fin(max_n + 1)
    check_dim(max_n + 1)?;
    let instances = identity_instances(max_n);
    exec.try_map(&instances, |&(name, n, i, j)| {
        Ok(IdentityCheck {
            identity: name.to_string(),
            n,
            i,
            j,
            status: CheckStatus::from_bool(check_fin_instance(name, n, i, j)?),
        })
    })
}
