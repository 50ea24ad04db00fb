//! Closed-form counting bounds and the sliding-window oracles that check
//! them on small instances.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::cantor::{check_budget, CantorParams, Window};
use crate::error::{Error, Result};
use crate::exact::{Interval, Rational};

/// Number of stage-`L` gaps a window of length `ratio^k` can meet, at most:
/// `2^(L-k-1)`.
pub fn lemma_bound(stage: u32, k: u32) -> Result<u64> {
    if stage <= k {
        return Err(Error::invalid(format!("need L > k, got L={stage}, k={k}")));
    }
    1u64.checked_shl(stage - k - 1)
        .ok_or_else(|| Error::invalid("lemma bound overflows u64"))
}

/// A removed gap. `open` gaps do not contain their endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    pub interval: Interval,
    pub open: bool,
}

/// The `2^(L-1)` gaps removed from `C_{L-1}` to form `C_L`, left to right.
pub fn gaps_at_stage(p: &CantorParams, stage: u32, component_budget: u64) -> Result<Vec<Gap>> {
    if stage == 0 {
        return Err(Error::invalid("gap stages start at 1"));
    }
    check_budget(stage - 1, component_budget)?;
    let child = p.component_len(stage);
    let parents = p.components_in_window(stage - 1, &Window::unit());
    Ok(parents
        .components()
        .iter()
        .map(|c| Gap {
            interval: Interval::new_unchecked(c.lo() + &child, c.hi() - &child),
            open: true,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidingMax {
    pub max_count: u64,
    /// Leftmost position `p` where `[p, p + jlen]` attains `max_count`.
    pub position: Rational,
}

/// Exact maximum, over windows `[p, p + jlen] ⊆ [0, 1]`, of the number of
/// gaps the window meets.
///
/// The count is piecewise constant in `p` and only changes at `g.hi` and
/// `g.lo - jlen`, so evaluating at every such breakpoint and every midpoint
/// between consecutive breakpoints covers all positions.
pub fn max_hits_sliding(gaps: &[Gap], jlen: &Rational) -> Result<SlidingMax> {
    let one = Rational::one();
    if !jlen.is_positive() || jlen > &one {
        return Err(Error::invalid(format!(
            "window length must be in (0, 1], got {jlen}"
        )));
    }
    if gaps
        .windows(2)
        .any(|w| w[0].interval.hi() > w[1].interval.lo())
    {
        return Err(Error::invalid("gaps must be sorted and disjoint"));
    }
    let last = &one - jlen;
    let zero = Rational::zero();
    let clip = |x: Rational| x.max(zero.clone()).min(last.clone());

    let mut probes: Vec<Rational> = Vec::with_capacity(2 * gaps.len() + 2);
    probes.push(zero.clone());
    probes.push(last.clone());
    for g in gaps {
        probes.push(clip(g.interval.hi().clone()));
        probes.push(clip(g.interval.lo() - jlen));
    }
    probes.sort();
    probes.dedup();
    let mids: Vec<Rational> = probes
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / Rational::from(2))
        .collect();
    probes.extend(mids);
    probes.sort();

    let mut best = SlidingMax {
        max_count: 0,
        position: zero,
    };
    for pos in probes {
        let c = hits_at(gaps, &pos, jlen);
        if c > best.max_count {
            best = SlidingMax {
                max_count: c,
                position: pos,
            };
        }
    }
    Ok(best)
}

/// Number of gaps met by `[pos, pos + jlen]`; gaps sorted and disjoint.
pub fn hits_at(gaps: &[Gap], pos: &Rational, jlen: &Rational) -> u64 {
    let end = pos + jlen;
    // Open and closed gaps are never mixed in practice; handle each gap's flag.
    let started = gaps.partition_point(|g| {
        if g.open {
            g.interval.lo() < &end
        } else {
            g.interval.lo() <= &end
        }
    });
    let finished = gaps.partition_point(|g| {
        if g.open {
            g.interval.hi() <= pos
        } else {
            g.interval.hi() < pos
        }
    });
    started.saturating_sub(finished) as u64
}

/// `3 · 2^e` with `e = ⌈log_{2N/(N-1)} ⌈1/δ⌉⌉`, the exponent found by exact
/// comparison of powers of `2N/(N-1)` against `⌈1/δ⌉`.
pub fn corollary_bound(p: &CantorParams, delta: &Rational) -> Result<u64> {
    if !delta.is_positive() || delta > &Rational::one() {
        return Err(Error::invalid(format!(
            "delta must be in (0, 1], got {delta}"
        )));
    }
    let target = Rational::from_integer(delta.recip()?.ceil());
    let base = p.ratio().recip()?;
    let mut power = Rational::one();
    let mut exp = 0u32;
    while power < target {
        power = power * &base;
        exp += 1;
    }
    1u64.checked_shl(exp)
        .filter(|_| exp < 62)
        .map(|v| 3 * v)
        .ok_or_else(|| Error::invalid("corollary bound overflows u64"))
}

/// Oracle for [`corollary_bound`]: the most gaps of length exactly
/// `δ / N^k` that a window of length `1 / N^k` can meet.
pub fn max_hits_scaled(
    p: &CantorParams,
    k: u32,
    delta: &Rational,
    component_budget: u64,
) -> Result<u64> {
    let target = delta * &p.scale(k);
    let stage = p.stage_for_delta(&target)?;
    if stage == 0 || p.gap_size(stage)? != target {
        return Err(Error::NoSuchGapLength(target.to_string()));
    }
    let gaps = gaps_at_stage(p, stage, component_budget)?;
    let jlen = p.scale(k);
    Ok(max_hits_sliding(&gaps, &jlen)?.max_count)
}

/// `⌈log₂ N⌉`, exact for powers of two.
pub fn ceil_log2(n: u64) -> u32 {
    debug_assert!(n >= 1);
    64 - (n - 1).leading_zeros()
}

/// Per-translate cap `9 · N · log₂N` on damaged length-`1/N^{k+2}`
/// subintervals in one refinement step, with `log₂N` rounded up.
pub fn deletion_budget(n: u64) -> u64 {
    9 * n * ceil_log2(n) as u64
}

/// `⌊N / (100 log₂N)⌋`, the family size covered by the guarantee.
pub fn max_translates(n: u64) -> u64 {
    assert!(n >= 2, "max_translates needs N >= 2");
    let estimate = n as f64 / (100.0 * (n as f64).log2());
    let mut m = estimate.floor() as u64;
    let frac = estimate - estimate.floor();
    if !(1e-6..=1.0 - 1e-6).contains(&frac) {
        // Near an integer boundary: settle with exact arithmetic.
        // m ≤ N/(100 log₂N)  ⇔  N^(100m) ≤ 2^N.
        let fits = |m: u64| -> bool {
            let lhs: BigUint = Pow::pow(BigUint::from(n), 100 * m);
            lhs <= BigUint::one() << n as usize
        };
        while m > 0 && !fits(m) {
            m -= 1;
        }
        while fits(m + 1) {
            m += 1;
        }
    }
    m
}

/// `⌈N/2⌉`, the witness threshold for goodness.
pub fn goodness_threshold(n: u64) -> u64 {
    n.div_ceil(2)
}
