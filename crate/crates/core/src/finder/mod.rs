//! Inductive refinement of good intervals and extraction of a common point.
//!
//! Starting from `J_0 = [0,1]`, each step takes a k-good interval and looks
//! for one of its witness intervals (length `1/N^{k+1}`) that is itself
//! (k+1)-good. The witnesses play the role of blocks: after the finer
//! approximants `X_{1/N^{k+2}}` cut into the intersection, at least one
//! block keeps `⌈N/2⌉` length-`1/N^{k+2}` pieces whenever the family is
//! within the guaranteed size. The nested chain is emitted as a
//! [`Certificate`] that [`verify_certificate`] re-checks from scratch.

mod certificate;
mod search;

pub use certificate::{verify_certificate, Check, VerificationReport, FORMAT};
pub use search::{empirical_max_length, empirical_max_length_with, EmpiricalReport, LengthOutcome};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::max_translates;
use crate::cantor::{CantorParams, Window};
use crate::error::{Error, RefinementFailure, Result};
use crate::exact::{Interval, Rational};
use crate::goodness::{intersection_in_window, is_k_good, GoodnessResult, TranslateFamily};

/// How `refine` picks among blocks that meet the threshold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BlockSelection {
    /// Leftmost block meeting the threshold.
    #[default]
    FirstFit,
    /// Block with the most surviving pieces, leftmost on ties.
    Best,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub k: u32,
    pub interval: Interval,
    pub witness_count: u64,
}

impl From<&GoodnessResult> for ChainEntry {
    fn from(g: &GoodnessResult) -> Self {
        ChainEntry {
            k: g.k,
            interval: g.interval.clone(),
            witness_count: g.witness_count,
        }
    }
}

/// Nested chain of good intervals `J_0 ⊃ J_1 ⊃ … ⊃ J_depth` and a point of
/// the final intersection set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub params: CantorParams,
    pub family: TranslateFamily,
    pub chain: Vec<ChainEntry>,
    pub depth: u32,
    pub point: Rational,
}

impl Certificate {
    /// Every translate of the point lies within this distance of the
    /// Cantor set.
    pub fn tolerance(&self) -> Rational {
        self.params.scale(self.depth)
    }
}

/// Checks `J_0 = [0,1]` directly; the induction has no other base case.
pub fn initial_good(p: &CantorParams, fam: &TranslateFamily) -> Result<GoodnessResult> {
    let g = is_k_good(p, fam, 0, &Interval::unit())?;
    if !g.good {
        return Err(Error::BaseCaseFailed {
            witness_count: g.witness_count,
            threshold: g.threshold,
        });
    }
    Ok(g)
}

pub fn refine(
    p: &CantorParams,
    fam: &TranslateFamily,
    g: &GoodnessResult,
    selection: BlockSelection,
) -> Result<GoodnessResult> {
    if !g.good {
        return Err(Error::invalid(format!(
            "cannot refine a non-good interval (k={}, {} < {})",
            g.k, g.witness_count, g.threshold
        )));
    }
    let k = g.k;
    let piece = p.scale(k + 2);
    let window = Window::new(g.interval.clone())?;
    let finer = intersection_in_window(p, &piece, fam, &window)?;

    let count_block = |w: &Interval| finer.restrict(w).pack_count(&piece);
    let chosen = match selection {
        BlockSelection::FirstFit => {
            let mut found = None;
            for (i, w) in g.witnesses.iter().enumerate() {
                if count_block(w)? >= g.threshold {
                    found = Some(i);
                    break;
                }
            }
            found
        }
        BlockSelection::Best => {
            let counts: Vec<u64> = g
                .witnesses
                .par_iter()
                .map(count_block)
                .collect::<Result<_>>()?;
            counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c >= g.threshold)
                // max_by_key keeps the last maximum; reverse to keep the first
                .rev()
                .max_by_key(|(_, &c)| c)
                .map(|(i, _)| i)
        }
    };

    match chosen {
        Some(i) => {
            let block = g.witnesses[i].clone();
            GoodnessResult::from_set(p, k + 1, block.clone(), &finer.restrict(&block))
        }
        None => {
            let block_counts = g
                .witnesses
                .par_iter()
                .map(count_block)
                .collect::<Result<_>>()?;
            Err(Error::RefinementFailed(Box::new(RefinementFailure {
                k,
                threshold: g.threshold,
                block_counts,
                translates: fam.len(),
                max_translates: max_translates(p.n()),
                chain: Vec::new(),
            })))
        }
    }
}

pub fn find_common_point(
    p: &CantorParams,
    fam: &TranslateFamily,
    depth: u32,
) -> Result<Certificate> {
    find_common_point_with(p, fam, depth, BlockSelection::FirstFit)
}

pub fn find_common_point_with(
    p: &CantorParams,
    fam: &TranslateFamily,
    depth: u32,
    selection: BlockSelection,
) -> Result<Certificate> {
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    let mut current = initial_good(p, fam)?;
    let mut chain = vec![ChainEntry::from(&current)];
    for _ in 0..depth {
        current = match refine(p, fam, &current, selection) {
            Ok(next) => next,
            Err(Error::RefinementFailed(mut failure)) => {
                failure.chain = chain;
                return Err(Error::RefinementFailed(failure));
            }
            Err(e) => return Err(e),
        };
        chain.push(ChainEntry::from(&current));
    }
    let point = current
        .witnesses
        .first()
        .map(|w| w.lo().clone())
        .expect("a good interval has at least one witness");
    Ok(Certificate {
        params: p.clone(),
        family: fam.clone(),
        chain,
        depth,
        point,
    })
}

/// Looks for `x` with `x + i·d mod 1` near the Cantor set for
/// `i = 0..length`.
pub fn find_ap(p: &CantorParams, d: &Rational, length: u64, depth: u32) -> Result<Certificate> {
    let fam = TranslateFamily::arithmetic_progression(d.clone(), length)?;
    find_common_point(p, &fam, depth)
}

/// True when `length` exceeds the family size covered by the guarantee;
/// callers may warn.
pub fn beyond_guarantee(p: &CantorParams, length: u64) -> bool {
    length > max_translates(p.n())
}
