use serde::Serialize;

use super::{find_common_point_with, verify_certificate, BlockSelection};
use crate::bounds::max_translates;
use crate::cantor::CantorParams;
use crate::error::Result;
use crate::exact::Rational;
use crate::goodness::TranslateFamily;

const EMPIRICAL_NOTE: &str = "empirical, depth-limited evidence: success shows the depth-D \
approximant intersection is nonempty, not that the Cantor-set intersection is; that needs the \
refinement chain to extend indefinitely. Failure at depth D proves nothing about nonexistence.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthOutcome {
    pub length: u64,
    pub verified: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub d: Rational,
    pub depth: u32,
    pub length_cap: u64,
    pub outcomes: Vec<LengthOutcome>,
    /// Largest length whose certificate verified (0 if none).
    pub max_verified_length: u64,
    /// Lengths up to this are covered by the guarantee.
    pub guaranteed_floor: u64,
    /// No failure precedes a success.
    pub monotone: bool,
    pub note: &'static str,
}

pub fn empirical_max_length(
    p: &CantorParams,
    d: &Rational,
    depth: u32,
    length_cap: u64,
) -> Result<EmpiricalReport> {
    empirical_max_length_with(p, d, depth, length_cap, BlockSelection::FirstFit)
}

pub fn empirical_max_length_with(
    p: &CantorParams,
    d: &Rational,
    depth: u32,
    length_cap: u64,
    selection: BlockSelection,
) -> Result<EmpiricalReport> {
    let mut outcomes = Vec::with_capacity(length_cap as usize);
    for length in 1..=length_cap {
        let fam = TranslateFamily::arithmetic_progression(d.clone(), length)?;
        let outcome = match find_common_point_with(p, &fam, depth, selection) {
            Ok(cert) => {
                let report = verify_certificate(&cert);
                let detail = match report.first_failure() {
                    None => format!("verified, point {}", cert.point),
                    Some(c) => format!("certificate rejected at {}: {}", c.name, c.detail),
                };
                LengthOutcome {
                    length,
                    verified: report.accepted(),
                    detail,
                }
            }
            Err(e) => LengthOutcome {
                length,
                verified: false,
                detail: e.to_string(),
            },
        };
        outcomes.push(outcome);
    }
    let max_verified_length = outcomes
        .iter()
        .filter(|o| o.verified)
        .map(|o| o.length)
        .max()
        .unwrap_or(0);
    let monotone = outcomes.windows(2).all(|w| w[0].verified || !w[1].verified);
    Ok(EmpiricalReport {
        n: p.n(),
        d: d.clone(),
        depth,
        length_cap,
        outcomes,
        max_verified_length,
        guaranteed_floor: max_translates(p.n()),
        monotone,
        note: EMPIRICAL_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_search_is_consistent() {
        let p = CantorParams::new(5).unwrap();
        let report = empirical_max_length(&p, &Rational::frac(1, 2), 2, 3).unwrap();
        assert_eq!(report.outcomes.len(), 3);
        assert!(report.outcomes[0].verified);
        assert!(report.monotone);
        assert!(report.max_verified_length >= 1);
    }
}
