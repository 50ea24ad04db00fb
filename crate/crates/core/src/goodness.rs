//! The k-good predicate.
//!
//! An interval `J` of length `1/N^k` is k-good for a family of translates
//! `a_1..a_r` when `J ∩ ⋂ᵢ (X_{1/N^{k+1}} + aᵢ)` contains at least `⌈N/2⌉`
//! interior-disjoint intervals of length `1/N^{k+1}`.
//!
//! Translates are rationals. Irrational translates must be approximated by
//! the caller, and any result then speaks about the approximating family
//! only.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::goodness_threshold;
use crate::cantor::{CantorParams, Window};
use crate::error::{Error, Result};
use crate::exact::{Interval, IntervalSet, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApDescriptor {
    pub d: Rational,
    pub length: u64,
}

/// Translates `a_1..a_r`, each reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateFamily {
    translates: Vec<Rational>,
    ap: Option<ApDescriptor>,
}

impl TranslateFamily {
    pub fn new(translates: Vec<Rational>) -> Result<Self> {
        if translates.is_empty() {
            return Err(Error::invalid("translate family must be nonempty"));
        }
        Ok(TranslateFamily {
            translates: translates.iter().map(Rational::mod_one).collect(),
            ap: None,
        })
    }

    /// `{0, -d, -2d, …}` mod 1, so that a common point `x` gives the
    /// progression `x, x + d, x + 2d, …` mod 1.
    pub fn arithmetic_progression(d: Rational, length: u64) -> Result<Self> {
        if length == 0 {
            return Err(Error::invalid("progression length must be at least 1"));
        }
        Ok(TranslateFamily {
            translates: ap_translates(&d, length),
            ap: Some(ApDescriptor { d, length }),
        })
    }

    /// Rebuilds a family from stored parts without normalizing them; used
    /// when reading documents, which the verifier then checks.
    pub(crate) fn from_parts(translates: Vec<Rational>, ap: Option<ApDescriptor>) -> Self {
        TranslateFamily { translates, ap }
    }

    pub fn translates(&self) -> &[Rational] {
        &self.translates
    }

    pub fn ap(&self) -> Option<&ApDescriptor> {
        self.ap.as_ref()
    }

    pub fn len(&self) -> usize {
        self.translates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.translates.is_empty()
    }

    /// The first `length` members of this family (AP descriptor kept in
    /// step), or `None` if `length` is 0 or too long.
    pub fn prefix(&self, length: usize) -> Option<TranslateFamily> {
        if length == 0 || length > self.translates.len() {
            return None;
        }
        Some(TranslateFamily {
            translates: self.translates[..length].to_vec(),
            ap: self.ap.as_ref().map(|ap| ApDescriptor {
                d: ap.d.clone(),
                length: length as u64,
            }),
        })
    }
}

pub(crate) fn ap_translates(d: &Rational, length: u64) -> Vec<Rational> {
    (0..length)
        .map(|i| (-(d * &Rational::from(i as i64))).mod_one())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodnessResult {
    pub k: u32,
    pub interval: Interval,
    /// Greedy packing of the intersection set by length-`1/N^{k+1}` intervals.
    pub witnesses: Vec<Interval>,
    pub witness_count: u64,
    pub threshold: u64,
    pub good: bool,
}

impl GoodnessResult {
    pub(crate) fn from_set(
        p: &CantorParams,
        k: u32,
        interval: Interval,
        set: &IntervalSet,
    ) -> Result<Self> {
        let witnesses = set.pack_intervals(&p.scale(k + 1))?;
        let threshold = goodness_threshold(p.n());
        let witness_count = witnesses.len() as u64;
        Ok(GoodnessResult {
            k,
            interval,
            witnesses,
            witness_count,
            threshold,
            good: witness_count >= threshold,
        })
    }
}

/// `w ∩ ⋂ᵢ (X_δ + aᵢ)`. Translates are processed in parallel and reduced in
/// family order.
pub fn intersection_in_window(
    p: &CantorParams,
    delta: &Rational,
    fam: &TranslateFamily,
    w: &Window,
) -> Result<IntervalSet> {
    let parts: Vec<IntervalSet> = fam
        .translates()
        .par_iter()
        .map(|a| p.approximant_in_window(delta, a, w))
        .collect::<Result<_>>()?;
    let mut iter = parts.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::invalid("translate family must be nonempty"))?;
    Ok(iter.fold(first, |acc, s| acc.intersect(&s)))
}

pub fn is_k_good(
    p: &CantorParams,
    fam: &TranslateFamily,
    k: u32,
    interval: &Interval,
) -> Result<GoodnessResult> {
    goodness_with_set(p, fam, k, interval).map(|(g, _)| g)
}

/// [`is_k_good`] together with the intersection set it packed.
pub(crate) fn goodness_with_set(
    p: &CantorParams,
    fam: &TranslateFamily,
    k: u32,
    interval: &Interval,
) -> Result<(GoodnessResult, IntervalSet)> {
    let expected = p.scale(k);
    if interval.len() != expected {
        return Err(Error::invalid(format!(
            "interval {interval} has length {}, expected {expected}",
            interval.len()
        )));
    }
    let w = Window::new(interval.clone())?;
    let set = intersection_in_window(p, &p.scale(k + 1), fam, &w)?;
    let g = GoodnessResult::from_set(p, k, interval.clone(), &set)?;
    Ok((g, set))
}
