//! Plain-text renderings of the JSON reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use mvhom::json::{CertificateDoc, ChainDoc, FixedSetDoc, HomologyReportDoc};
use mvhom::simplicial::{CheckStatus, IdentityCheck};
use mvhom::{Corr, Validity};

pub fn validity(v: &Validity) -> String {
    format!("{v}\n")
}

fn set(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

pub fn corr(c: &Corr) -> String {
    let mut out = format!(
        "{} -> {}\n",
        set(c.source().names()),
        set(c.target().names())
    );
    for x in 0..c.source().len() {
        let _ = writeln!(
            out,
            "  {} |-> {}",
            c.source().name(x),
            set(&c.target().subset_names(c.fiber(x)))
        );
    }
    out
}

pub fn identities(checks: &[IdentityCheck]) -> String {
    let mut rows: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for c in checks {
        let row = rows.entry(c.identity.as_str()).or_default();
        match c.status {
            CheckStatus::Pass => row.0 += 1,
            CheckStatus::Fail => row.1 += 1,
        }
    }
    let mut out = format!("{:<14} {:>6} {:>6}\n", "identity", "pass", "fail");
    for (name, (pass, fail)) in &rows {
        let _ = writeln!(out, "{name:<14} {pass:>6} {fail:>6}");
    }
    for c in checks.iter().filter(|c| c.status == CheckStatus::Fail) {
        let _ = writeln!(out, "FAIL {} n={} i={:?} j={:?}", c.identity, c.n, c.i, c.j);
    }
    out
}

pub fn homology(r: &HomologyReportDoc) -> String {
    let mut out = String::new();
    for h in &r.homology {
        let mut parts: Vec<String> = Vec::new();
        if h.rank > 0 {
            parts.push(if h.rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", h.rank)
            });
        }
        parts.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
        let group = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        let _ = writeln!(out, "H_{} = {group} ({} model)", h.n, h.model);
    }
    for s in &r.skipped {
        let _ = writeln!(
            out,
            "H_{} skipped: {} (basis in degree {} over {})",
            s.n, s.reason, s.basis_degree, s.limit
        );
    }
    let _ = writeln!(out, "basis sizes {:?}", r.basis_sizes);
    out
}

fn chain(c: &ChainDoc) -> String {
    if c.terms.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = c
        .terms
        .iter()
        .map(|t| {
            let pairs: Vec<String> = t
                .simplex
                .pairs
                .iter()
                .map(|(x, y)| format!("({x},{y})"))
                .collect();
            format!("{:+}[{}]", t.coeff, pairs.join(" "))
        })
        .collect();
    terms.join(" ")
}

pub fn certificate(c: &CertificateDoc) -> String {
    let mut out = format!("basepoint {}\ncycle   {}\n", c.basepoint, chain(&c.cycle));
    for s in &c.steps {
        let _ = writeln!(
            out,
            "step {} sign {:+}: {}",
            s.step,
            s.sign,
            chain(&s.chain)
        );
    }
    let _ = writeln!(
        out,
        "filling {}\nverified {}",
        chain(&c.filling),
        c.verified
    );
    out
}

pub fn fixed_set(r: &FixedSetDoc) -> String {
    let mut out = String::new();
    for (k, a) in r.iterations.iter().enumerate() {
        let _ = writeln!(out, "A_{k} = {}", set(a));
    }
    let _ = writeln!(
        out,
        "fixed set {} (stabilized at {})",
        set(&r.fixed_set),
        r.stabilized_at
    );
    out
}
