//! Exact affine maps between products of standard simplices and the unit
//! interval.
//!
//! A map is stored by the images of the domain vertices, as exact rational
//! coordinate vectors in the codomain: `n + 1` barycentric coordinates per
//! simplex factor and one coordinate per interval factor. On a product domain
//! the vertex images must satisfy the mixed-difference conditions that make
//! their interpolation affine; points are evaluated through the product
//! weights of their factor coordinates.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::simplicial::{
    degeneracy_vertex, face_vertex, identity_instances, CheckStatus, IdentityCheck,
};

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Simplex(usize),
    Interval,
}

impl Factor {
    pub fn vertex_count(self) -> usize {
        match self {
            Factor::Simplex(n) => n + 1,
            Factor::Interval => 2,
        }
    }

    pub fn coord_len(self) -> usize {
        match self {
            Factor::Simplex(n) => n + 1,
            Factor::Interval => 1,
        }
    }
}

/// A product of simplices and intervals, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<Factor>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|fac| match fac {
                Factor::Simplex(n) => format!("Δ{n}"),
                Factor::Interval => "I".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Signature {
    pub fn simplex(n: usize) -> Self {
        Signature(vec![Factor::Simplex(n)])
    }

    pub fn prism(n: usize) -> Self {
        Signature(vec![Factor::Simplex(n), Factor::Interval])
    }

    pub fn vertex_count(&self) -> usize {
        self.0.iter().map(|f| f.vertex_count()).product()
    }

    pub fn coord_len(&self) -> usize {
        self.0.iter().map(|f| f.coord_len()).sum()
    }

    /// Per-factor vertex indices of a vertex; the first factor varies slowest.
    pub fn split_vertex(&self, mut v: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (k, f) in self.0.iter().enumerate().rev() {
            let c = f.vertex_count();
            out[k] = v % c;
            v /= c;
        }
        out
    }

    pub fn join_vertex(&self, parts: &[usize]) -> usize {
        self.0
            .iter()
            .zip(parts)
            .fold(0, |acc, (f, &p)| acc * f.vertex_count() + p)
    }

    /// Coordinates of a vertex.
    pub fn vertex_coords(&self, v: usize) -> Vec<Rational> {
        let parts = self.split_vertex(v);
        let mut out = Vec::with_capacity(self.coord_len());
        for (f, &p) in self.0.iter().zip(&parts) {
            match f {
                Factor::Simplex(n) => out.extend((0..=*n).map(|j| {
                    if j == p {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })),
                Factor::Interval => out.push(Rational::from_integer(BigInt::from(p))),
            }
        }
        out
    }

    /// Checks that `point` lies in the polytope.
    pub fn contains(&self, point: &[Rational]) -> std::result::Result<(), String> {
        if point.len() != self.coord_len() {
            return Err(format!(
                "expected {} coordinates, got {}",
                self.coord_len(),
                point.len()
            ));
        }
        let mut at = 0;
        for f in &self.0 {
            let c = &point[at..at + f.coord_len()];
            match f {
                Factor::Simplex(_) => {
                    if c.iter().any(|t| t.is_negative()) {
                        return Err("negative barycentric coordinate".into());
                    }
                    if c.iter().sum::<Rational>() != Rational::one() {
                        return Err("barycentric coordinates do not sum to 1".into());
                    }
                }
                Factor::Interval => {
                    if c[0].is_negative() || c[0] > Rational::one() {
                        return Err("interval coordinate outside [0,1]".into());
                    }
                }
            }
            at += f.coord_len();
        }
        Ok(())
    }

    /// Convex weights of the vertices reproducing `point`: the product of
    /// the factor weights.
    fn vertex_weights(&self, point: &[Rational]) -> Vec<Rational> {
        let mut factor_weights = Vec::with_capacity(self.0.len());
        let mut at = 0;
        for f in &self.0 {
            let c = &point[at..at + f.coord_len()];
            factor_weights.push(match f {
                Factor::Simplex(_) => c.to_vec(),
                Factor::Interval => vec![Rational::one() - &c[0], c[0].clone()],
            });
            at += f.coord_len();
        }
        (0..self.vertex_count())
            .map(|v| {
                self.split_vertex(v)
                    .iter()
                    .zip(&factor_weights)
                    .map(|(&p, w)| w[p].clone())
                    .product()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    domain: Signature,
    codomain: Signature,
    images: Vec<Vec<Rational>>,
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl AffineMap {
    pub fn new(domain: Signature, codomain: Signature, images: Vec<Vec<Rational>>) -> Result<Self> {
        if images.len() != domain.vertex_count() {
            return Err(Error::SignatureMismatch(format!(
                "{} has {} vertices, got {} images",
                domain,
                domain.vertex_count(),
                images.len()
            )));
        }
        for (v, img) in images.iter().enumerate() {
            codomain
                .contains(img)
                .map_err(|reason| Error::OutsideCodomain { vertex: v, reason })?;
        }
        let map = AffineMap {
            domain,
            codomain,
            images,
        };
        if !map.is_affine() {
            return Err(Error::NotAffine);
        }
        Ok(map)
    }

    /// Mixed differences across every pair of factors vanish.
    fn is_affine(&self) -> bool {
        let factors = &self.domain.0;
        for k in 0..factors.len() {
            for l in k + 1..factors.len() {
                for v in 0..self.domain.vertex_count() {
                    let base = self.domain.split_vertex(v);
                    for a in 0..factors[k].vertex_count() {
                        for b in 0..factors[l].vertex_count() {
                            let mut vk = base.clone();
                            vk[k] = a;
                            let mut vl = base.clone();
                            vl[l] = b;
                            let mut vkl = vk.clone();
                            vkl[l] = b;
                            let img = |p: &[usize]| &self.images[self.domain.join_vertex(p)];
                            let lhs = sub(img(&vkl), img(&vk));
                            let rhs = sub(img(&vl), img(&base));
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Builds a map from vertex images given as codomain vertices.
    fn from_vertex_map(
        domain: Signature,
        codomain: Signature,
        map: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let images = (0..domain.vertex_count())
            .map(|v| codomain.vertex_coords(map(v)))
            .collect();
        Self::new(domain, codomain, images)
    }

    pub fn identity(sig: Signature) -> Self {
        Self::from_vertex_map(sig.clone(), sig, |v| v).expect("identity")
    }

    pub fn domain(&self) -> &Signature {
        &self.domain
    }

    pub fn codomain(&self) -> &Signature {
        &self.codomain
    }

    pub fn vertex_images(&self) -> &[Vec<Rational>] {
        &self.images
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.domain
            .contains(point)
            .map_err(|r| Error::SignatureMismatch(format!("point outside {}: {r}", self.domain)))?;
        let weights = self.domain.vertex_weights(point);
        let mut out = vec![Rational::zero(); self.codomain.coord_len()];
        for (w, img) in weights.iter().zip(&self.images) {
            if w.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(img) {
                *o += w * c;
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &AffineMap) -> Result<AffineMap> {
        compose_affine(self, inner)
    }

    /// Product map `self x other`.
    pub fn product(&self, other: &AffineMap) -> AffineMap {
        let mut domain = self.domain.0.clone();
        domain.extend(other.domain.0.iter().copied());
        let mut codomain = self.codomain.0.clone();
        codomain.extend(other.codomain.0.iter().copied());
        let nb = other.domain.vertex_count();
        let images = (0..self.domain.vertex_count() * nb)
            .map(|v| {
                let mut img = self.images[v / nb].clone();
                img.extend(other.images[v % nb].iter().cloned());
                img
            })
            .collect();
        AffineMap::new(Signature(domain), Signature(codomain), images)
            .expect("product of affine maps")
    }
}

/// `f ∘ g`, computed by pushing the vertices of `g`'s domain through both maps.
pub fn compose_affine(f: &AffineMap, g: &AffineMap) -> Result<AffineMap> {
    if g.codomain != f.domain {
        return Err(Error::SignatureMismatch(format!(
            "cannot compose {} -> {} after {} -> {}",
            f.domain, f.codomain, g.domain, g.codomain
        )));
    }
    let images = g
        .images
        .iter()
        .map(|p| f.eval(p))
        .collect::<Result<Vec<_>>>()?;
    AffineMap::new(g.domain.clone(), f.codomain.clone(), images)
}

/// Exact equality of vertex images (and signatures).
pub fn equal_affine(f: &AffineMap, g: &AffineMap) -> bool {
    f == g
}

fn range_check(what: &'static str, i: usize, max: usize) -> Result<()> {
    if i > max {
        return Err(Error::IndexOutOfRange {
            what,
            index: i,
            max,
        });
    }
    Ok(())
}

/// Face map `δ_i^n : Δ_{n-1} -> Δ_n`, inserting a zero at coordinate `i`.
pub fn face_map(n: usize, i: usize) -> Result<AffineMap> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            what: "face dimension",
            index: 0,
            max: usize::MAX,
        });
    }
    range_check("face", i, n)?;
    AffineMap::from_vertex_map(Signature::simplex(n - 1), Signature::simplex(n), |v| {
        face_vertex(i, v)
    })
}

/// Degeneracy `σ_i^n : Δ_{n+1} -> Δ_n`, adding coordinates `i` and `i + 1`.
pub fn degeneracy_map(n: usize, i: usize) -> Result<AffineMap> {
    range_check("degeneracy", i, n)?;
    AffineMap::from_vertex_map(Signature::simplex(n + 1), Signature::simplex(n), |v| {
        degeneracy_vertex(i, v)
    })
}

/// Prism map `r_n^i : Δ_{n+1} -> Δ_n x I`,
/// `(t_0..t_{n+1}) ↦ ((t_0, .., t_{i-1}, t_i + t_{i+1}, t_{i+2}, .., t_{n+1}), t_{i+1} + .. + t_{n+1})`.
pub fn prism_map(n: usize, i: usize) -> Result<AffineMap> {
    range_check("prism", i, n)?;
    let domain = Signature::simplex(n + 1);
    let images = (0..=n + 1)
        .map(|v| {
            let t: Vec<Rational> = domain.vertex_coords(v);
            let mut base = Vec::with_capacity(n + 1);
            base.extend(t[..i].iter().cloned());
            base.push(&t[i] + &t[i + 1]);
            base.extend(t[i + 2..].iter().cloned());
            let level: Rational = t[i + 1..].iter().sum();
            base.push(level);
            base
        })
        .collect();
    AffineMap::new(domain, Signature::prism(n), images)
}

/// `e ↦ (e, level)` for `level` 0 or 1.
pub fn end_inclusion(n: usize, top: bool) -> AffineMap {
    let domain = Signature::simplex(n);
    let images = (0..=n)
        .map(|v| {
            let mut c = domain.vertex_coords(v);
            c.push(int(top as i64));
            c
        })
        .collect();
    AffineMap::new(domain, Signature::prism(n), images).expect("end inclusion")
}

fn face_times_interval(n: usize, i: usize) -> Result<AffineMap> {
    Ok(face_map(n, i)?.product(&AffineMap::identity(Signature(vec![Factor::Interval]))))
}

/// Instances checked by [`verify_prism_identities`]: the prism identities,
/// the face identities, and the degeneracy identities.
fn affine_instances(max_n: usize) -> Vec<(&'static str, usize, Option<usize>, Option<usize>)> {
    let mut out = identity_instances(max_n);
    for n in 0..=max_n {
        for j in 0..=n {
            for i in 0..=j {
                out.push(("degen-degen", n, Some(i), Some(j)));
            }
        }
        for j in 0..=n {
            for i in 0..=n + 1 {
                if i < j && n == 0 {
                    continue;
                }
                if i > j + 1 && n == 0 {
                    continue;
                }
                out.push(("degen-face", n, Some(i), Some(j)));
            }
        }
    }
    out
}

fn check_instance(name: &str, n: usize, i: Option<usize>, j: Option<usize>) -> Result<bool> {
    Ok(match name {
        "prism-1" => {
            let (i, j) = (i.unwrap(), j.unwrap());
            let lhs = prism_map(n, j + 1)?.after(&face_map(n + 1, i)?)?;
            let rhs = face_times_interval(n, i)?.after(&prism_map(n - 1, j)?)?;
            equal_affine(&lhs, &rhs)
        }
        "prism-2" => {
            let i = i.unwrap();
            let lhs = prism_map(n, i + 1)?.after(&face_map(n + 1, i + 1)?)?;
            let rhs = prism_map(n, i)?.after(&face_map(n + 1, i + 1)?)?;
            equal_affine(&lhs, &rhs)
        }
        "prism-3" => {
            let (i, j) = (i.unwrap(), j.unwrap());
            let lhs = prism_map(n, i)?.after(&face_map(n + 1, j + 1)?)?;
            let rhs = face_times_interval(n, j)?.after(&prism_map(n - 1, i)?)?;
            equal_affine(&lhs, &rhs)
        }
        "prism-4" => {
            let lhs = prism_map(n, 0)?.after(&face_map(n + 1, 0)?)?;
            equal_affine(&lhs, &end_inclusion(n, true))
        }
        "prism-5" => {
            let lhs = prism_map(n, n)?.after(&face_map(n + 1, n + 1)?)?;
            equal_affine(&lhs, &end_inclusion(n, false))
        }
        "face-face" => {
            let (i, j) = (i.unwrap(), j.unwrap());
            let lhs = face_map(n, j)?.after(&face_map(n - 1, i)?)?;
            let rhs = face_map(n, i)?.after(&face_map(n - 1, j - 1)?)?;
            equal_affine(&lhs, &rhs)
        }
        // σ_j ∘ σ_i = σ_i ∘ σ_{j+1}, i <= j, as maps Δ_{n+2} -> Δ_n
        "degen-degen" => {
            let (i, j) = (i.unwrap(), j.unwrap());
            let lhs = degeneracy_map(n, j)?.after(&degeneracy_map(n + 1, i)?)?;
            let rhs = degeneracy_map(n, i)?.after(&degeneracy_map(n + 1, j + 1)?)?;
            equal_affine(&lhs, &rhs)
        }
        // σ_j ∘ δ_i as a map Δ_n -> Δ_n
        "degen-face" => {
            let (i, j) = (i.unwrap(), j.unwrap());
            let lhs = degeneracy_map(n, j)?.after(&face_map(n + 1, i)?)?;
            let rhs = if i < j {
                face_map(n, i)?.after(&degeneracy_map(n - 1, j - 1)?)?
            } else if i == j || i == j + 1 {
                AffineMap::identity(Signature::simplex(n))
            } else {
                face_map(n, i - 1)?.after(&degeneracy_map(n - 1, j)?)?
            };
            equal_affine(&lhs, &rhs)
        }
        other => unreachable!("unknown identity {other}"),
    })
}

/// Verifies every identity instance for `n <= max_n` exactly. Failures are
/// reported, not raised.
pub fn verify_prism_identities(max_n: usize) -> Result<Vec<IdentityCheck>> {
    verify_prism_identities_with(max_n, Exec::default())
}

pub fn verify_prism_identities_with(max_n: usize, exec: Exec) -> Result<Vec<IdentityCheck>> {
    if max_n == 0 {
        return Err(Error::IndexOutOfRange {
            what: "max_n",
            index: 0,
            max: usize::MAX,
        });
    }
    let instances = affine_instances(max_n);
    exec.try_map(&instances, |&(name, n, i, j)| {
        Ok(IdentityCheck {
            identity: name.to_string(),
            n,
            i,
            j,
            status: CheckStatus::from_bool(check_instance(name, n, i, j)?),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{delta_fin, interval_fin, prism_fin};

    fn q(num: i64, den: i64) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn face_map_examples() {
        assert_eq!(face_map(1, 0).unwrap().vertex_images(), &[ints(&[0, 1])]);
        assert_eq!(face_map(1, 1).unwrap().vertex_images(), &[ints(&[1, 0])]);
        let lhs = face_map(2, 1)
            .unwrap()
            .after(&face_map(1, 0).unwrap())
            .unwrap();
        let rhs = face_map(2, 0)
            .unwrap()
            .after(&face_map(1, 0).unwrap())
            .unwrap();
        assert!(equal_affine(&lhs, &rhs));
        assert!(!equal_affine(
            &face_map(1, 0).unwrap(),
            &face_map(1, 1).unwrap()
        ));
        assert!(face_map(1, 2).is_err());
        assert!(face_map(0, 0).is_err());
    }

    #[test]
    fn face_map_inserts_zero_at_generic_points() {
        let f = face_map(3, 1).unwrap();
        let p = vec![q(1, 2), q(1, 3), q(1, 6)];
        assert_eq!(
            f.eval(&p).unwrap(),
            vec![q(1, 2), q(0, 1), q(1, 3), q(1, 6)]
        );
    }

    #[test]
    fn degeneracy_examples() {
        let s = degeneracy_map(0, 0).unwrap();
        assert_eq!(s.vertex_images(), &[ints(&[1]), ints(&[1])]);
        for n in 0..4 {
            for i in 0..=n {
                let id = AffineMap::identity(Signature::simplex(n));
                let a = degeneracy_map(n, i)
                    .unwrap()
                    .after(&face_map(n + 1, i).unwrap())
                    .unwrap();
                let b = degeneracy_map(n, i)
                    .unwrap()
                    .after(&face_map(n + 1, i + 1).unwrap())
                    .unwrap();
                assert_eq!(a, id);
                assert_eq!(b, id);
            }
        }
        assert!(degeneracy_map(1, 2).is_err());
    }

    #[test]
    fn prism_map_examples() {
        let r = prism_map(1, 0).unwrap();
        assert_eq!(
            r.vertex_images(),
            &[ints(&[1, 0, 0]), ints(&[1, 0, 1]), ints(&[0, 1, 1])]
        );
        let lhs = r.after(&face_map(2, 0).unwrap()).unwrap();
        assert_eq!(lhs, end_inclusion(1, true));
        for n in 0..=4 {
            let five = prism_map(n, n)
                .unwrap()
                .after(&face_map(n + 1, n + 1).unwrap())
                .unwrap();
            assert_eq!(five, end_inclusion(n, false));
        }
        let two_lhs = prism_map(2, 1)
            .unwrap()
            .after(&face_map(3, 1).unwrap())
            .unwrap();
        let two_rhs = prism_map(2, 0)
            .unwrap()
            .after(&face_map(3, 1).unwrap())
            .unwrap();
        assert_eq!(two_lhs, two_rhs);
    }

    #[test]
    fn prism_map_matches_coordinate_formula_at_interior_point() {
        // r_2^1 at (1/10, 2/10, 3/10, 4/10) = ((1/10, 5/10, 4/10), 7/10)
        let r = prism_map(2, 1).unwrap();
        let p = vec![q(1, 10), q(2, 10), q(3, 10), q(4, 10)];
        assert_eq!(
            r.eval(&p).unwrap(),
            vec![q(1, 10), q(5, 10), q(4, 10), q(7, 10)]
        );
    }

    #[test]
    fn product_domain_must_be_affine() {
        // Δ1 x I -> I sending (e0,1) to 1 and everything else to 0 is bilinear, not affine
        let dom = Signature::prism(1);
        let cod = Signature(vec![Factor::Interval]);
        let images = vec![ints(&[0]), ints(&[1]), ints(&[0]), ints(&[0])];
        assert!(matches!(
            AffineMap::new(dom, cod, images),
            Err(Error::NotAffine)
        ));
    }

    #[test]
    fn images_must_lie_in_codomain() {
        let r = AffineMap::new(
            Signature::simplex(0),
            Signature::simplex(1),
            vec![ints(&[1, 1])],
        );
        assert!(matches!(r, Err(Error::OutsideCodomain { .. })));
        let r = AffineMap::new(
            Signature::simplex(0),
            Signature::simplex(1),
            vec![ints(&[2, -1])],
        );
        assert!(matches!(r, Err(Error::OutsideCodomain { .. })));
    }

    #[test]
    fn composition_checks_signatures() {
        let f = face_map(2, 0).unwrap();
        assert!(matches!(
            compose_affine(&f, &f),
            Err(Error::SignatureMismatch(_))
        ));
        let id = AffineMap::identity(Signature::simplex(1));
        assert_eq!(f.after(&id).unwrap(), f);
    }

    #[test]
    fn all_identities_hold_to_four() {
        let report = verify_prism_identities(4).unwrap();
        let failed: Vec<_> = report
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
        for name in [
            "prism-1",
            "prism-2",
            "prism-3",
            "prism-4",
            "prism-5",
            "face-face",
            "degen-degen",
            "degen-face",
        ] {
            assert!(
                report.iter().any(|c| c.identity == name),
                "{name} not checked"
            );
        }
    }

    #[test]
    fn wrong_prism_identity_is_detected() {
        // (4) with the wrong end
        let lhs = prism_map(2, 0)
            .unwrap()
            .after(&face_map(3, 0).unwrap())
            .unwrap();
        assert_ne!(lhs, end_inclusion(2, false));
    }

    #[test]
    fn finite_prism_agrees_with_affine_on_vertices() {
        let interval = interval_fin(1).unwrap();
        for n in 0..=4 {
            let upper = delta_fin(n + 1).unwrap();
            let lower = delta_fin(n).unwrap();
            for i in 0..=n {
                let affine = prism_map(n, i).unwrap();
                let fin = prism_fin(n, i).unwrap();
                for v in 0..=n + 1 {
                    let img = &affine.vertex_images()[v];
                    let base = img[..=n].iter().position(|t| t.is_one()).unwrap();
                    let level = if img[n + 1].is_zero() {
                        interval.bottom()
                    } else {
                        interval.top()
                    };
                    let expected = lower.vertex(base) * interval.space.len() + level;
                    assert_eq!(fin.apply(upper.vertex(v)), expected, "n={n} i={i} v={v}");
                }
            }
        }
    }

    #[test]
    fn composition_is_associative_on_face_chains() {
        for n in 3..=5 {
            for a in 0..=n {
                for b in 0..n {
                    let f = face_map(n, a).unwrap();
                    let g = face_map(n - 1, b).unwrap();
                    let h = face_map(n - 2, 0).unwrap();
                    let left = f.after(&g).unwrap().after(&h).unwrap();
                    let right = f.after(&g.after(&h).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}
