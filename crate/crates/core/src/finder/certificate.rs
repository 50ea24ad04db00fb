//! Certificate documents and the independent verifier.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Certificate, ChainEntry};
use crate::cantor::CantorParams;
use crate::error::{Error, Result};
use crate::exact::{Interval, Rational};
use crate::goodness::{ap_translates, goodness_with_set, ApDescriptor, TranslateFamily};

/// Schema tag carried by every emitted document.
pub const FORMAT: &str = "cantor-ap/1";

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    format: String,
    #[serde(rename = "N")]
    n: u64,
    translates: Vec<Rational>,
    ap: Option<ApDescriptor>,
    depth: u32,
    chain: Vec<ChainEntry>,
    point: Rational,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let doc = CertificateDoc {
            format: FORMAT.to_string(),
            n: self.params.n(),
            translates: self.family.translates().to_vec(),
            ap: self.family.ap().cloned(),
            depth: self.depth,
            chain: self.chain.clone(),
            point: self.point.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("certificate serializes");
        s.push('\n');
        s
    }

    /// Parses a certificate document. Only the syntax is checked here; all
    /// mathematical claims are left to [`verify_certificate`].
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: CertificateDoc = serde_json::from_str(s)
            .map_err(|e| Error::invalid(format!("malformed certificate: {e}")))?;
        if doc.format != FORMAT {
            return Err(Error::invalid(format!(
                "unsupported format {:?}, expected {FORMAT:?}",
                doc.format
            )));
        }
        Ok(Certificate {
            params: CantorParams::new(doc.n)?,
            family: TranslateFamily::from_parts(doc.translates, doc.ap),
            chain: doc.chain,
            depth: doc.depth,
            point: doc.point,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn accepted(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} {:<24} {}", c.name, c.detail)?;
        }
        match self.first_failure() {
            None if self.accepted() => writeln!(f, "verdict: ACCEPT"),
            None => writeln!(f, "verdict: REJECT (no checks ran)"),
            Some(c) => writeln!(f, "verdict: REJECT (first failing check: {})", c.name),
        }
    }
}

/// Re-derives every claim in the certificate from its parameters alone.
pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    let mut report = VerificationReport::default();
    let p = &cert.params;
    let fam = &cert.family;

    let reduced = fam
        .translates()
        .iter()
        .all(|a| !a.is_negative() && a < &Rational::one());
    if !report.push(
        "family",
        !fam.is_empty() && reduced,
        format!("{} translates, all in [0,1): {reduced}", fam.len()),
    ) {
        return report;
    }
    if let Some(ap) = fam.ap() {
        let regenerated = ap_translates(&ap.d, ap.length);
        if !report.push(
            "family.ap",
            regenerated == fam.translates(),
            format!("d={}, length={}", ap.d, ap.length),
        ) {
            return report;
        }
    }

    let depth_ok = cert.depth >= 1 && cert.chain.len() == cert.depth as usize + 1;
    if !report.push(
        "depth",
        depth_ok,
        format!(
            "depth {} with {} chain entries",
            cert.depth,
            cert.chain.len()
        ),
    ) {
        return report;
    }

    for (i, e) in cert.chain.iter().enumerate() {
        let name = format!("chain[{i}].shape");
        let expected_len = p.scale(i as u32);
        let ok = e.k == i as u32 && e.interval.is_within_unit() && e.interval.len() == expected_len;
        if !report.push(
            name,
            ok,
            format!(
                "k={} interval {} (length must be {expected_len})",
                e.k, e.interval
            ),
        ) {
            return report;
        }
    }
    if !report.push(
        "chain[0].interval",
        cert.chain[0].interval == Interval::unit(),
        format!("{}", cert.chain[0].interval),
    ) {
        return report;
    }

    let recomputed: Vec<_> = cert
        .chain
        .par_iter()
        .map(|e| goodness_with_set(p, fam, e.k, &e.interval))
        .collect();

    let mut results = Vec::with_capacity(recomputed.len());
    for (i, r) in recomputed.into_iter().enumerate() {
        match r {
            Ok(v) => results.push(v),
            Err(e) => {
                report.push(format!("chain[{i}].goodness"), false, e.to_string());
                return report;
            }
        }
    }

    for (i, e) in cert.chain.iter().enumerate() {
        let (g, _) = &results[i];
        report.push(
            format!("chain[{i}].goodness"),
            g.good && g.witness_count == e.witness_count,
            format!(
                "recomputed {} witnesses (claimed {}), threshold {}",
                g.witness_count, e.witness_count, g.threshold
            ),
        );
        if i > 0 {
            let parent = &results[i - 1].0;
            let nested =
                parent.interval.contains_interval(&e.interval) && parent.interval != e.interval;
            let is_block = parent.witnesses.contains(&e.interval);
            report.push(
                format!("chain[{i}].nesting"),
                nested && is_block,
                format!(
                    "inside J_{}: {nested}, one of its witness blocks: {is_block}",
                    i - 1
                ),
            );
        }
    }

    let (_, final_set) = &results[cert.depth as usize];
    report.push(
        "point.membership",
        final_set.contains(&cert.point),
        format!("point {} in final intersection set", cert.point),
    );

    let tolerance = cert.tolerance();
    let level = match p.stage_for_delta(&p.scale(cert.depth + 1)) {
        Ok(l) => l.max(1),
        Err(e) => {
            report.push("point.distance", false, e.to_string());
            return report;
        }
    };
    let in_unit = !cert.point.is_negative() && cert.point <= Rational::one();
    for (i, a) in fam.translates().iter().enumerate() {
        let name = format!("point.distance[{i}]");
        if !in_unit {
            report.push(name, false, format!("point {} outside [0,1]", cert.point));
            continue;
        }
        let y = (&cert.point - a).mod_one();
        match p.distance_to_x(&y, level) {
            Ok(d) => {
                let exact = if d.exact { "exact" } else { "bound" };
                report.push(
                    name,
                    d.upper <= tolerance,
                    format!(
                        "dist(x - a_{i}) <= {} ({exact}), tolerance {tolerance}",
                        d.upper
                    ),
                );
            }
            Err(e) => {
                report.push(name, false, e.to_string());
            }
        }
    }
    report
}
