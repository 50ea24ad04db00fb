//! Shared fixtures for the benchmarks.

use cantor_ap::{initial_good, CantorParams, GoodnessResult, Rational, TranslateFamily};

pub fn params(n: u64) -> CantorParams {
    CantorParams::new(n).expect("N >= 3")
}

pub fn progression(d: (i64, i64), length: u64) -> TranslateFamily {
    TranslateFamily::arithmetic_progression(Rational::frac(d.0, d.1), length)
        .expect("nonempty progression")
}

/// The base interval `[0,1]`, already checked to be 0-good.
pub fn base(p: &CantorParams, fam: &TranslateFamily) -> GoodnessResult {
    initial_good(p, fam).expect("base case holds for the benchmark families")
}
