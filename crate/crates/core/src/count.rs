//! Gain-delay-block (GDB) cost model: closed-form counts, the direct-path
//! counts, and a structural counter over the factor stage list.
//!
//! Counting conventions: multiplications by `±1` and permutations are free.
//! A complex multiplication in real arithmetic is 4 real multiplications and
//! 2 real additions. Structural counts are generic in `θ`: the scalar block
//! charges its `block_size/2` lanes whatever the numeric value of `c`, while
//! the delay diagonal never charges its leading unit entry.

use crate::error::{Result, VanError};
use crate::factor::{build_factors, Factor};
use crate::spec::VanSpec;
use crate::transform::TransformKind;
use crate::Scalar;

/// Arithmetic the input vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arithmetic {
    Complex,
    Real,
}

/// Addition/multiplication tallies in one arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GdbCount {
    pub additions: u64,
    pub multiplications: u64,
    pub arithmetic: Arithmetic,
}

fn log2_checked(n: usize) -> Result<u64> {
    if n < 2 || !n.is_power_of_two() {
        return Err(VanError::NonPowerOfTwo { n });
    }
    Ok(n.trailing_zeros() as u64)
}

/// Closed-form GDB count of the fast algorithm `kind` at size `n = 2^t`.
///
/// Complex input: `(Nt, Nt - N + 1)` for the unit-circle kinds and
/// `(Nt, Nt - N/2)` for the radius-scaled kinds. Real input: `(Nt, 2Nt - 5N/2 + 2)`
/// and `(Nt, 2Nt - 3N/2 + 1)` respectively.
pub fn formula_count(kind: TransformKind, n: usize, arithmetic: Arithmetic) -> Result<GdbCount> {
    let t = log2_checked(n)?;
    let n = n as u64;
    let additions = n * t;
    let multiplications = match (arithmetic, kind.allows_radius()) {
        (Arithmetic::Complex, false) => n * t - n + 1,
        (Arithmetic::Complex, true) => n * t - n / 2,
        (Arithmetic::Real, false) => 2 * n * t + 2 - 5 * n / 2,
        (Arithmetic::Real, true) => 2 * n * t + 1 - 3 * n / 2,
    };
    Ok(GdbCount {
        additions,
        multiplications,
        arithmetic,
    })
}

/// GDB count of the direct matrix-vector product. The all-ones first column
/// keeps the multiplication count at `N(N-1)` rather than `N²`.
pub fn direct_count(n: usize, arithmetic: Arithmetic) -> GdbCount {
    let n = n as u64;
    match arithmetic {
        Arithmetic::Complex => GdbCount {
            additions: n * (n - 1),
            multiplications: n * (n - 1),
            arithmetic,
        },
        Arithmetic::Real => GdbCount {
            additions: n * (2 * n - 1),
            multiplications: 2 * n * (n - 1),
            arithmetic,
        },
    }
}

/// Walks the stage list of `spec` and tallies GDBs structurally.
///
/// Per stage of block size `M`, complex arithmetic charges: scalar block
/// `M/2` multiplications, butterfly `M` additions, delay diagonal `M/2 - 1`
/// multiplications, radius diagonal `N/2 - 1` multiplications (two real
/// gains per complex lane count as one block). Real arithmetic charges the
/// real-input recursion tallies: scalar block `M` (one multiplication per
/// size-2 leaf), butterfly `M` additions, delay diagonal `M - 2`, radius
/// diagonal `N - 1`. Matches [`formula_count`] for generic `θ`, and for
/// generic `r > 1` on the radius-scaled kinds.
pub fn measured_count<T: Scalar>(
    kind: TransformKind,
    spec: &VanSpec<T>,
    arithmetic: Arithmetic,
) -> Result<GdbCount> {
    kind.validate(spec)?;
    let mut additions = 0u64;
    let mut multiplications = 0u64;
    for factor in build_factors(spec) {
        match (&factor, arithmetic) {
            (Factor::RadiusDiagonal { entries }, Arithmetic::Complex) => {
                multiplications += entries.len() as u64 / 2 - 1;
            }
            (Factor::RadiusDiagonal { entries }, Arithmetic::Real) => {
                multiplications += entries.len() as u64 - 1;
            }
            (Factor::ScalarBlock { block_size, blocks, .. }, Arithmetic::Complex) => {
                multiplications += (*blocks as u64) * (*block_size as u64 / 2);
            }
            (Factor::ScalarBlock { block_size, blocks, .. }, Arithmetic::Real) => {
                multiplications += if *block_size == 2 {
                    *blocks as u64
                } else {
                    (*blocks as u64) * (*block_size as u64)
                };
            }
            (Factor::Butterfly { block_size, blocks }, _) => {
                additions += (*blocks as u64) * (*block_size as u64);
            }
            (Factor::DelayDiagonal { block_size, blocks, .. }, Arithmetic::Complex) => {
                multiplications += (*blocks as u64) * (*block_size as u64 / 2 - 1);
            }
            (Factor::DelayDiagonal { block_size, blocks, .. }, Arithmetic::Real) => {
                multiplications += (*blocks as u64) * (*block_size as u64 - 2);
            }
            (Factor::EvenOddPermutationTranspose { .. }, _) => {}
        }
    }
    Ok(GdbCount {
        additions,
        multiplications,
        arithmetic,
    })
}
