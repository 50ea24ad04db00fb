//! The middle-1/N Cantor set and its finite approximants.
//!
//! `C_0 = [0,1]`, and `C_{L+1}` keeps the two outer pieces of length
//! `ratio · |c|` of every component `c` of `C_L`, where
//! `ratio = (N-1)/(2N)`. Every gap removed at stage `L` has length
//! `(1/N) · ratio^(L-1)`, so gap lengths strictly decrease and the coarse
//! approximant `X_δ` (delete every gap of length at least `δ`) is always a
//! full stage `C_L`.
//!
//! Globally `C_L` has `2^L` components, which is out of reach for the
//! stages the solver needs. All solver work goes through the windowed
//! descent here, which only expands the part of the construction tree that
//! meets a window.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Interval, IntervalSet, Rational};

/// The integer `N ≥ 3` and the scale factor `(N-1)/(2N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct CantorParams {
    n: u64,
    ratio: Rational,
}

impl CantorParams {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("N must be at least 3, got {n}")));
        }
        let n_i = n as i64;
        Ok(CantorParams {
            n,
            ratio: Rational::frac(n_i - 1, 2 * n_i),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    /// `1/N^k`.
    pub fn scale(&self, k: u32) -> Rational {
        Rational::new(1, BigInt::from(self.n).pow(k)).expect("N > 0")
    }

    /// Length of every component of `C_level`.
    pub fn component_len(&self, level: u32) -> Rational {
        self.ratio.pow(level)
    }

    /// Length of every gap removed when refining `C_{stage-1}` to `C_stage`.
    pub fn gap_size(&self, stage: u32) -> Result<Rational> {
        if stage == 0 {
            return Err(Error::invalid("gap stages start at 1"));
        }
        Ok(self.ratio.pow(stage - 1) / Rational::from(self.n as i64))
    }

    /// The stage `L` with `X_δ = C_L`: the last stage whose gaps have length
    /// at least `delta`, or 0 if even the first gap is shorter.
    pub fn stage_for_delta(&self, delta: &Rational) -> Result<u32> {
        if !delta.is_positive() {
            return Err(Error::invalid(format!(
                "delta must be positive, got {delta}"
            )));
        }
        let mut stage = 0;
        let mut gap = Rational::one() / Rational::from(self.n as i64);
        while &gap >= delta {
            stage += 1;
            gap = gap * &self.ratio;
        }
        Ok(stage)
    }

    /// `C_level ∩ w`, by descent from `[0,1]` into children meeting `w`.
    pub fn components_in_window(&self, level: u32, w: &Window) -> IntervalSet {
        let tree = ScaledTree::new(self, level);
        let out = tree
            .meeting(std::slice::from_ref(&w.0))
            .into_iter()
            .filter_map(|c| c.intersection(&w.0))
            .collect();
        IntervalSet::from_sorted(out)
    }

    /// `(X_δ + a mod 1) ∩ w`, computed by pulling `w` back through the
    /// translation, so only components near the window are generated.
    pub fn approximant_in_window(
        &self,
        delta: &Rational,
        a: &Rational,
        w: &Window,
    ) -> Result<IntervalSet> {
        let level = self.stage_for_delta(delta)?;
        let shift = a.mod_one();
        let (lo, hi) = (w.0.lo(), w.0.hi());
        let zero = Rational::zero();
        let one = Rational::one();

        let mut pulled = Vec::with_capacity(2);
        let hi_back = hi - &shift;
        if !hi_back.is_negative() {
            pulled.push(Interval::new_unchecked((lo - &shift).max(zero), hi_back));
        }
        if lo <= &shift {
            let wrap_lo = lo - &shift + &one;
            let wrap_hi = (hi - &shift + &one).min(one);
            pulled.push(Interval::new_unchecked(wrap_lo, wrap_hi));
        }

        // Whole components, not clipped ones: the translation must treat each
        // component exactly as the global translate does at the 0/1 seam.
        let whole = ScaledTree::new(self, level).meeting(&pulled);
        let moved = IntervalSet::from_sorted(whole).translate_mod1(&shift);
        Ok(moved.restrict(&w.0))
    }

    /// The full `X_δ`. Refuses when `2^L` exceeds `component_budget`.
    pub fn global_approximant(
        &self,
        delta: &Rational,
        component_budget: u64,
    ) -> Result<IntervalSet> {
        let level = self.stage_for_delta(delta)?;
        check_budget(level, component_budget)?;
        Ok(self.components_in_window(level, &Window::unit()))
    }

    /// Distance from `x` to the Cantor set, exact when `x` falls into a gap
    /// at some stage `≤ max_level` or is a component endpoint; otherwise the
    /// bracket `[0, ratio^max_level]`.
    pub fn distance_to_x(&self, x: &Rational, max_level: u32) -> Result<Distance> {
        if x.is_negative() || x > &Rational::one() {
            return Err(Error::invalid(format!("point {x} is outside [0, 1]")));
        }
        if max_level == 0 {
            return Err(Error::invalid("max_level must be at least 1"));
        }
        let mut lo = Rational::zero();
        let mut len = Rational::one();
        for _ in 0..max_level {
            let hi = &lo + &len;
            if x == &lo || x == &hi {
                return Ok(Distance::exact(Rational::zero()));
            }
            let child = &len * &self.ratio;
            let left_hi = &lo + &child;
            let right_lo = &hi - &child;
            if x <= &left_hi {
                len = child;
            } else if x >= &right_lo {
                lo = right_lo;
                len = child;
            } else {
                let d = (x - &left_hi).min(&right_lo - x);
                return Ok(Distance::exact(d));
            }
        }
        if x == &lo || x == &(&lo + &len) {
            return Ok(Distance::exact(Rational::zero()));
        }
        Ok(Distance {
            lower: Rational::zero(),
            upper: len,
            exact: false,
        })
    }
}

impl TryFrom<u64> for CantorParams {
    type Error = Error;
    fn try_from(n: u64) -> Result<Self> {
        CantorParams::new(n)
    }
}

impl From<CantorParams> for u64 {
    fn from(p: CantorParams) -> u64 {
        p.n
    }
}

pub(crate) fn check_budget(level: u32, budget: u64) -> Result<()> {
    let needed = BigInt::one() << level as usize;
    if needed > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    Ok(())
}

/// A sub-interval of `[0, 1]` restricting where the construction is expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window(Interval);

impl Window {
    pub fn new(interval: Interval) -> Result<Self> {
        if !interval.is_within_unit() {
            return Err(Error::invalid(format!(
                "window {interval} is not inside [0, 1]"
            )));
        }
        Ok(Window(interval))
    }

    pub fn unit() -> Self {
        Window(Interval::unit())
    }

    pub fn interval(&self) -> &Interval {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distance {
    pub lower: Rational,
    pub upper: Rational,
    pub exact: bool,
}

impl Distance {
    fn exact(d: Rational) -> Self {
        Distance {
            lower: d.clone(),
            upper: d,
            exact: true,
        }
    }
}

/// Construction tree of `C_level` in integer coordinates over the common
/// denominator `(2N)^level`, where every endpoint is an integer.
struct ScaledTree {
    level: u32,
    denom: BigInt,
    /// `lens[j]` is the scaled length of a level-`j` component.
    lens: Vec<BigInt>,
}

impl ScaledTree {
    fn new(p: &CantorParams, level: u32) -> Self {
        let two_n = BigInt::from(2 * p.n);
        let n_minus = BigInt::from(p.n - 1);
        let mut lens = Vec::with_capacity(level as usize + 1);
        let mut up = BigInt::one();
        for j in 0..=level {
            lens.push(&up * Pow::pow(&two_n, level - j));
            up *= &n_minus;
        }
        ScaledTree {
            level,
            denom: Pow::pow(&two_n, level),
            lens,
        }
    }

    /// Whole level-`level` components meeting any window, left to right.
    fn meeting(&self, windows: &[Interval]) -> Vec<Interval> {
        let mut found: Vec<BigInt> = Vec::new();
        for w in windows {
            let lo_bound = (w.lo() * Rational::from_integer(self.denom.clone())).ceil();
            let hi_bound = (w.hi() * Rational::from_integer(self.denom.clone())).floor();
            let mut stack = vec![(BigInt::zero(), 0u32)];
            while let Some((lo, j)) = stack.pop() {
                let len = &self.lens[j as usize];
                if lo > hi_bound || &lo + len < lo_bound {
                    continue;
                }
                if j == self.level {
                    found.push(lo);
                    continue;
                }
                let child = &self.lens[j as usize + 1];
                let right = &lo + len - child;
                stack.push((right, j + 1));
                stack.push((lo, j + 1));
            }
        }
        if windows.len() > 1 {
            found.sort();
            found.dedup();
        }
        let len = &self.lens[self.level as usize];
        found
            .into_iter()
            .map(|lo| {
                let hi = &lo + len;
                Interval::new_unchecked(
                    Rational::new(lo, self.denom.clone()).expect("nonzero"),
                    Rational::new(hi, self.denom.clone()).expect("nonzero"),
                )
            })
            .collect()
    }
}
