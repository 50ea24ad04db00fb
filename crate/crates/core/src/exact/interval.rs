use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact endpoints. A point is `[x, x]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    /// `[lo, lo + len]`.
    pub fn with_len(lo: Rational, len: &Rational) -> Result<Self> {
        let hi = &lo + len;
        Interval::new(lo, hi)
    }

    pub(crate) fn new_unchecked(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_within_unit(&self) -> bool {
        !self.lo.is_negative() && self.hi <= Rational::one()
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = std::cmp::max(&self.lo, &other.lo);
        let hi = std::cmp::min(&self.hi, &other.hi);
        (lo <= hi).then(|| Interval::new_unchecked(lo.clone(), hi.clone()))
    }

    pub fn shift(&self, by: &Rational) -> Interval {
        Interval::new_unchecked(&self.lo + by, &self.hi + by)
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from(2)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.lo, &self.hi).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (lo, hi) = <(Rational, Rational)>::deserialize(deserializer)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// Finite union of closed intervals inside `[0, 1]` in canonical form:
/// components sorted, pairwise disjoint, and separated by strictly
/// positive gaps (touching components are merged).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    components: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn unit() -> Self {
        IntervalSet {
            components: vec![Interval::unit()],
        }
    }

    pub fn canonicalize(raw: impl IntoIterator<Item = Interval>) -> Result<Self> {
        let raw: Vec<Interval> = raw.into_iter().collect();
        if let Some(bad) = raw.iter().find(|iv| !iv.is_within_unit()) {
            return Err(Error::invalid(format!(
                "interval {bad} is not inside [0, 1]"
            )));
        }
        Ok(Self::merge(raw))
    }

    /// Canonicalize without the `[0, 1]` check; callers guarantee it.
    pub(crate) fn merge(mut raw: Vec<Interval>) -> Self {
        raw.sort_unstable_by(|a, b| a.lo.cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { components: out }
    }

    /// Wraps components already in canonical order.
    pub(crate) fn from_sorted(components: Vec<Interval>) -> Self {
        debug_assert!(components.windows(2).all(|w| w[0].hi < w[1].lo));
        IntervalSet { components }
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Interval> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.components.partition_point(|c| &c.lo <= x);
        idx > 0 && x <= &self.components[idx - 1].hi
    }

    pub fn contains_interval(&self, iv: &Interval) -> bool {
        let idx = self.components.partition_point(|c| c.lo <= iv.lo);
        idx > 0 && iv.hi <= self.components[idx - 1].hi
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.components, &other.components);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if let Some(iv) = a[i].intersection(&b[j]) {
                out.push(iv);
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::from_sorted(out)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let all = self
            .components
            .iter()
            .chain(&other.components)
            .cloned()
            .collect();
        Self::merge(all)
    }

    /// `self ∩ w`, located by binary search.
    pub fn restrict(&self, w: &Interval) -> IntervalSet {
        let start = self.components.partition_point(|c| c.hi < w.lo);
        let out = self.components[start..]
            .iter()
            .take_while(|c| c.lo <= w.hi)
            .filter_map(|c| c.intersection(w))
            .collect();
        IntervalSet::from_sorted(out)
    }

    /// Image of the set under `x ↦ x + a (mod 1)`.
    ///
    /// Each component is shifted by `a mod 1`; one that crosses 1 is split
    /// into `[lo + a, 1]` and `[0, hi + a - 1]`, and one starting exactly at 1
    /// after the shift is moved to start at 0.
    pub fn translate_mod1(&self, a: &Rational) -> IntervalSet {
        let shift = a.mod_one();
        if shift.is_zero() {
            return self.clone();
        }
        let one = Rational::one();
        let down = &shift - &one;
        let mut out = Vec::with_capacity(self.components.len() + 1);
        for c in &self.components {
            let lo = &c.lo + &shift;
            let hi = &c.hi + &shift;
            if hi <= one {
                out.push(Interval::new_unchecked(lo, hi));
            } else if lo >= one {
                out.push(c.shift(&down));
            } else {
                out.push(Interval::new_unchecked(lo, one.clone()));
                out.push(Interval::new_unchecked(Rational::zero(), &c.hi + &down));
            }
        }
        Self::merge(out)
    }

    pub fn measure(&self) -> Rational {
        self.components
            .iter()
            .fold(Rational::zero(), |acc, c| acc + c.len())
    }

    /// Total number of interior-disjoint length-`len` intervals that fit,
    /// component by component.
    pub fn pack_count(&self, len: &Rational) -> Result<u64> {
        check_pack_len(len)?;
        self.components.iter().try_fold(0u64, |acc, c| {
            let n = c
                .len()
                .floor_div_u64(len)
                .ok_or_else(|| Error::invalid("packing count overflows u64"))?;
            Ok(acc + n)
        })
    }

    /// Greedy left-aligned packing inside each component; returns exactly
    /// `pack_count(len)` intervals, in increasing order.
    pub fn pack_intervals(&self, len: &Rational) -> Result<Vec<Interval>> {
        check_pack_len(len)?;
        let mut out = Vec::new();
        for c in &self.components {
            let n = c
                .len()
                .floor_div_u64(len)
                .ok_or_else(|| Error::invalid("packing count overflows u64"))?;
            let mut lo = c.lo.clone();
            for _ in 0..n {
                let hi = &lo + len;
                out.push(Interval::new_unchecked(lo, hi.clone()));
                lo = hi;
            }
        }
        Ok(out)
    }
}

fn check_pack_len(len: &Rational) -> Result<()> {
    if !len.is_positive() {
        return Err(Error::invalid(format!(
            "packing length must be positive, got {len}"
        )));
    }
    Ok(())
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.components).finish()
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.components.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Interval>::deserialize(deserializer)?;
        let set =
            IntervalSet::canonicalize(raw.iter().cloned()).map_err(serde::de::Error::custom)?;
        if set.components != raw {
            return Err(serde::de::Error::custom(
                "interval set is not in canonical form",
            ));
        }
        Ok(set)
    }
}
