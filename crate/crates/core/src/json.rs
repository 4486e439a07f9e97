//! JSON interchange for spaces, correspondences, chains and reports.
//!
//! A space is `{"points": [...], "leq": [[x, y], ...], "t0": bool}` where
//! `[x, y]` means `x <= y` (the relation is closed reflexively and
//! transitively). Wherever a space is expected, a string is read as a path
//! to a space file, relative to the referring file.
//!
//! A correspondence is `{"source": space, "target": space, "pairs": [[x, y], ...]}`.
//! A chain is `{"degree": n, "space": space, "terms": [{"simplex": {"pairs": ...}, "coeff": k}]}`;
//! simplex sources are the face posets of the standard simplex, with faces
//! written as vertex sets like `{0,2}`.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chain::{Chain, HomologyGroup, Simplex};
use crate::corr::{Corr, Failure, Validity};
use crate::engine::{Certificate, HomologyReport, SkipReason, StepKind};
use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::fixedset::FixedSetReport;
use crate::simplicial::delta_fin;

pub const MODEL: &str = "finite";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    #[serde(default)]
    pub t0: bool,
}

impl SpaceDoc {
    pub fn from_space(space: &FinSpace) -> Self {
        SpaceDoc {
            points: space.names().to_vec(),
            leq: space
                .strict_pairs()
                .map(|(x, y)| (space.name(x).to_string(), space.name(y).to_string()))
                .collect(),
            t0: space.t0_flag(),
        }
    }

    pub fn to_space(&self) -> Result<FinSpace> {
        FinSpace::new(&self.points, &self.leq, self.t0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrDoc {
    pub source: SpaceDoc,
    pub target: SpaceDoc,
    pub pairs: Vec<(String, String)>,
}

impl CorrDoc {
    pub fn from_corr(c: &Corr) -> Self {
        CorrDoc {
            source: SpaceDoc::from_space(c.source()),
            target: SpaceDoc::from_space(c.target()),
            pairs: c.named_pairs(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplexDoc {
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermDoc {
    pub simplex: SimplexDoc,
    pub coeff: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainDoc {
    pub degree: usize,
    pub space: SpaceDoc,
    pub terms: Vec<TermDoc>,
}

impl ChainDoc {
    pub fn from_chain(c: &Chain) -> Self {
        ChainDoc {
            degree: c.degree(),
            space: SpaceDoc::from_space(c.space()),
            terms: c
                .terms()
                .map(|(s, k)| TermDoc {
                    simplex: SimplexDoc {
                        pairs: s.corr().named_pairs(),
                    },
                    coeff: k,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidityDoc {
    pub valid: bool,
    pub failures: Vec<Failure>,
}

impl From<&Validity> for ValidityDoc {
    fn from(v: &Validity) -> Self {
        ValidityDoc {
            valid: v.is_valid,
            failures: v.failures.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyDoc {
    pub n: usize,
    pub rank: usize,
    pub torsion: Vec<i64>,
    pub model: &'static str,
}

impl HomologyDoc {
    pub fn new(n: usize, g: &HomologyGroup) -> Self {
        HomologyDoc {
            n,
            rank: g.rank,
            torsion: g.torsion.clone(),
            model: MODEL,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedDoc {
    pub n: usize,
    pub reason: &'static str,
    pub basis_degree: usize,
    pub limit: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReportDoc {
    pub model: &'static str,
    pub complete: bool,
    pub homology: Vec<HomologyDoc>,
    pub skipped: Vec<SkippedDoc>,
    pub basis_sizes: Vec<usize>,
}

impl HomologyReportDoc {
    pub fn from_report(r: &HomologyReport) -> Self {
        HomologyReportDoc {
            model: MODEL,
            complete: r.is_complete(),
            homology: r
                .groups
                .iter()
                .map(|(n, g)| HomologyDoc::new(*n, g))
                .collect(),
            skipped: r
                .skipped
                .iter()
                .map(|s| SkippedDoc {
                    n: s.n,
                    reason: match s.reason {
                        SkipReason::BoundExceeded => "bound_exceeded",
                        SkipReason::SnfLimit => "snf_limit",
                    },
                    basis_degree: s.basis_degree,
                    limit: s.limit,
                })
                .collect(),
            basis_sizes: r.basis_sizes.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepDoc {
    pub step: &'static str,
    pub sign: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<i64>,
    pub chain: ChainDoc,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateDoc {
    pub model: &'static str,
    pub basepoint: String,
    pub cycle: ChainDoc,
    pub filling: ChainDoc,
    pub steps: Vec<StepDoc>,
    pub verified: bool,
}

impl CertificateDoc {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateDoc {
            model: MODEL,
            basepoint: c.cycle.space().name(c.basepoint).to_string(),
            cycle: ChainDoc::from_chain(&c.cycle),
            filling: ChainDoc::from_chain(&c.filling),
            steps: c
                .steps
                .iter()
                .map(|s| StepDoc {
                    step: match s.kind {
                        StepKind::FirstHomotopy => "first_homotopy",
                        StepKind::SecondHomotopy => "second_homotopy",
                        StepKind::ConstantFill => "constant_fill",
                    },
                    sign: s.sign,
                    multiplicity: s.multiplicity,
                    chain: ChainDoc::from_chain(&s.chain),
                })
                .collect(),
            verified: c.verified,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedSetDoc {
    pub fixed_set: Vec<String>,
    pub iterations: Vec<Vec<String>>,
    pub stabilized_at: usize,
}

impl FixedSetDoc {
    pub fn from_report(space: &FinSpace, r: &FixedSetReport) -> Self {
        FixedSetDoc {
            fixed_set: space.subset_names(&r.fixed_set),
            iterations: r.iterations.iter().map(|s| space.subset_names(s)).collect(),
            stabilized_at: r.stabilized_at,
        }
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| malformed(format!("missing field `{key}`")))
}

fn parse_pairs(v: &Value) -> Result<Vec<(String, String)>> {
    serde_json::from_value(v.clone()).map_err(|e| malformed(format!("pairs: {e}")))
}

/// Reads documents and resolves space references. Structurally equal
/// spaces are shared, so correspondences loaded through one resolver
/// compose without further checks.
#[derive(Default)]
pub struct Resolver {
    files: HashMap<PathBuf, Arc<FinSpace>>,
    spaces: Vec<Arc<FinSpace>>,
}

impl Resolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, space: FinSpace) -> Arc<FinSpace> {
        if let Some(s) = self.spaces.iter().find(|s| ***s == space) {
            return s.clone();
        }
        let s = Arc::new(space);
        self.spaces.push(s.clone());
        s
    }

    fn read(path: &Path) -> Result<Value> {
        let text =
            fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| malformed(format!("{}: {e}", path.display())))
    }

    /// A space given inline or as a path relative to `base`.
    pub fn space_ref(&mut self, v: &Value, base: &Path) -> Result<Arc<FinSpace>> {
        match v {
            Value::String(p) => {
                let path = base.join(p);
                let key = path.canonicalize().unwrap_or_else(|_| path.clone());
                if let Some(s) = self.files.get(&key) {
                    return Ok(s.clone());
                }
                let doc = Self::read(&path)?;
                let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
                let s = self.space_ref(&doc, &dir)?;
                self.files.insert(key, s.clone());
                Ok(s)
            }
            Value::Object(_) => {
                let doc: SpaceDoc = serde_json::from_value(v.clone())
                    .map_err(|e| malformed(format!("space: {e}")))?;
                Ok(self.intern(doc.to_space()?))
            }
            _ => Err(malformed("space must be an object or a path")),
        }
    }

    pub fn corr(&mut self, v: &Value, base: &Path) -> Result<Corr> {
        let source = self.space_ref(field(v, "source")?, base)?;
        let target = self.space_ref(field(v, "target")?, base)?;
        let pairs = parse_pairs(field(v, "pairs")?)?;
        Corr::from_named_pairs(source, target, &pairs)
    }

    pub fn chain(&mut self, v: &Value, base: &Path) -> Result<Chain> {
        let degree: usize = serde_json::from_value(field(v, "degree")?.clone())
            .map_err(|e| malformed(format!("degree: {e}")))?;
        let terms = field(v, "terms")?
            .as_array()
            .ok_or_else(|| malformed("terms must be a list"))?;
        let space = match v.get("space") {
            Some(s) => self.space_ref(s, base)?,
            None => {
                let first = terms
                    .first()
                    .and_then(|t| t.get("simplex"))
                    .and_then(|s| s.get("target"))
                    .ok_or_else(|| malformed("chain needs a `space` or a simplex `target`"))?;
                self.space_ref(first, base)?
            }
        };
        let delta = delta_fin(degree)?;
        let mut chain = Chain::zero(space.clone(), degree);
        for t in terms {
            let s = field(t, "simplex")?;
            if let Some(src) = s.get("source") {
                if *self.space_ref(src, base)? != *delta.space {
                    return Err(malformed(
                        "simplex source is not the face poset of the simplex",
                    ));
                }
            }
            if let Some(tgt) = s.get("target") {
                if *self.space_ref(tgt, base)? != *space {
                    return Err(malformed("simplex target differs from the chain's space"));
                }
            }
            let pairs = parse_pairs(field(s, "pairs")?)?;
            let corr = Corr::from_named_pairs(delta.space.clone(), space.clone(), &pairs)?;
            let coeff: i64 = serde_json::from_value(field(t, "coeff")?.clone())
                .map_err(|e| malformed(format!("coeff: {e}")))?;
            chain.add_term(Simplex::new(corr)?, coeff)?;
        }
        Ok(chain)
    }

    pub fn load_space(&mut self, path: &Path) -> Result<Arc<FinSpace>> {
        let v = Self::read(path)?;
        self.space_ref(&v, &parent(path))
    }

    pub fn load_corr(&mut self, path: &Path) -> Result<Corr> {
        let v = Self::read(path)?;
        self.corr(&v, &parent(path))
    }

    pub fn load_chain(&mut self, path: &Path) -> Result<Chain> {
        let v = Self::read(path)?;
        self.chain(&v, &parent(path))
    }
}

fn parent(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}
