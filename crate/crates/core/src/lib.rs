//! Exact search for common points of translates of middle-1/N Cantor sets.
//!
//! The middle-1/N Cantor set `X ⊂ [0,1]` is what remains after repeatedly
//! removing the open middle `1/N` of every interval. Given rational
//! translates `a_1..a_r`, this crate finds a point `x` with
//! `x - aᵢ mod 1` arbitrarily close to `X` for every `i`, by refining a
//! nested chain of "good" intervals, and emits the chain as a certificate
//! that can be re-checked independently. With `aᵢ = -(i-1)·d` the point
//! starts an arithmetic progression `x, x+d, …` whose terms all lie near
//! `X`. Families of at most `⌊N / (100 log₂N)⌋` translates always succeed.
//!
//! All arithmetic is exact.
//!
//! ```
//! use cantor_ap::{find_ap, verify_certificate, CantorParams, Rational};
//!
//! let params = CantorParams::new(64).unwrap();
//! let cert = find_ap(&params, &Rational::frac(1, 3), 2, 2).unwrap();
//! assert!(verify_certificate(&cert).accepted());
//! ```

pub mod bounds;
pub mod cantor;
pub mod error;
pub mod exact;
pub mod finder;
pub mod goodness;

pub use cantor::{CantorParams, Distance, Window};
pub use error::{Error, RefinementFailure, Result};
pub use exact::{Interval, IntervalSet, Rational};
pub use finder::{
    empirical_max_length, empirical_max_length_with, find_ap, find_common_point,
    find_common_point_with, initial_good, refine, verify_certificate, BlockSelection, Certificate,
    ChainEntry, EmpiricalReport, LengthOutcome, VerificationReport, FORMAT,
};
pub use goodness::{
    intersection_in_window, is_k_good, ApDescriptor, GoodnessResult, TranslateFamily,
};
