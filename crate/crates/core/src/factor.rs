//! Sparse factor stages of the radix-2 factorization and their application.
//!
//! For a spec of size `N = 2^t` the factorization unrolls, in application
//! order (rightmost factor first), into
//!
//! ```text
//! [radius diagonal, r > 1 only]
//! level s = 0..t-1, block size M = N/2^s, 2^s blocks each:
//!     scalar block   I ⊕ c_M·I          c_M = e^{±jθM/2}
//!     butterfly      [[I, I], [I, -I]]
//!     delay diagonal I ⊕ diag(e^{±2πjl/M})   l = 0..M/2-1   (absent at M = 2)
//! even-odd interleaves, levels t-2 down to 0
//! ```
//!
//! The `M = 2` scalar/butterfly pair is exactly the recursion leaf
//! `[[1, w], [1, -w]]` with `w = e^{±jθ}`, since the level-`M` scalar is
//! `e^{±jθM/2}` and the size-2 delay diagonal is the identity. Every level
//! keeps the original `θ`: the even-node subproblem of size `M/2` has nodes
//! `e^{±j(θ + 2πk/(M/2))}`, i.e. the same leading angle with doubled spacing.
//!
//! The same stage list drives the transforms, the structural GDB counter, and
//! the signal-flow-graph export, so the three views cannot drift apart.

use num_complex::Complex;

use crate::spec::{radius_powers, tau, VanSpec};
use crate::Scalar;

/// One sparse stage. Block-diagonal stages repeat `blocks` copies of a
/// `block_size`-sized block along the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor<T> {
    /// `diag(r^l)`, `l = 0..N-1`. Present only when `r > 1`.
    RadiusDiagonal { entries: Vec<T> },
    /// `I ⊕ c·I`: the last `block_size/2` lanes of each block scale by `c`.
    ScalarBlock {
        block_size: usize,
        blocks: usize,
        scalar: Complex<T>,
    },
    /// `[[I, I], [I, -I]]` in `block_size/2` halves: two nonzeros per row, all `±1`.
    Butterfly { block_size: usize, blocks: usize },
    /// `I ⊕ diag(w^l)` with `w = e^{±2πj/block_size}`; `entries[l] = w^l` for
    /// `l = 0..block_size/2-1` (so `entries[0] = 1`), shared by every block.
    DelayDiagonal {
        block_size: usize,
        blocks: usize,
        entries: Vec<Complex<T>>,
    },
    /// Transpose of the permutation listing even-indexed entries before odd
    /// ones, i.e. the interleave `out[2i] = in[i]`, `out[2i+1] = in[i + M/2]`
    /// per block.
    EvenOddPermutationTranspose { block_size: usize, blocks: usize },
}

impl<T> Factor<T> {
    /// Total size the stage operates on.
    pub fn size(&self) -> usize {
        match self {
            Factor::RadiusDiagonal { entries } => entries.len(),
            Factor::ScalarBlock {
                block_size, blocks, ..
            }
            | Factor::Butterfly { block_size, blocks }
            | Factor::DelayDiagonal {
                block_size, blocks, ..
            }
            | Factor::EvenOddPermutationTranspose { block_size, blocks } => block_size * blocks,
        }
    }
}

/// The fully unrolled factorization of `spec`, in application order.
/// Multiplying the stages (last element leftmost) reproduces the explicit
/// matrix.
pub fn build_factors<T: Scalar>(spec: &VanSpec<T>) -> Vec<Factor<T>> {
    let n = spec.n();
    let t = spec.levels();
    let sign: T = spec.direction().sign();
    let mut factors = Vec::with_capacity(3 * t as usize + 1);

    if spec.radius() > T::one() {
        factors.push(Factor::RadiusDiagonal {
            entries: radius_powers(spec.radius(), n),
        });
    }

    for s in 0..t {
        let block_size = n >> s;
        let blocks = 1 << s;
        let half = T::from(block_size / 2).unwrap();
        // θ·M/2 is an exact product (M/2 is a power of two), so the scalar is
        // a correctly rounded exponential even when the phase is large.
        let scalar = Complex::from_polar(T::one(), sign * spec.theta() * half);
        factors.push(Factor::ScalarBlock {
            block_size,
            blocks,
            scalar,
        });
        factors.push(Factor::Butterfly { block_size, blocks });
        if block_size >= 4 {
            let step = sign * (tau::<T>() / T::from(block_size).unwrap());
            let entries = (0..block_size / 2)
                .map(|l| Complex::from_polar(T::one(), step * T::from(l).unwrap()))
                .collect();
            factors.push(Factor::DelayDiagonal {
                block_size,
                blocks,
                entries,
            });
        }
    }

    for s in (0..t.saturating_sub(1)).rev() {
        factors.push(Factor::EvenOddPermutationTranspose {
            block_size: n >> s,
            blocks: 1 << s,
        });
    }

    factors
}

/// Applies one stage to `v` in place. `v.len()` must equal the stage size.
pub fn apply_factor<T: Scalar>(factor: &Factor<T>, v: &mut Vec<Complex<T>>) {
    debug_assert_eq!(factor.size(), v.len());
    match factor {
        Factor::RadiusDiagonal { entries } => {
            for (x, r) in v.iter_mut().zip(entries) {
                *x *= *r;
            }
        }
        Factor::ScalarBlock {
            block_size,
            blocks,
            scalar,
        } => {
            let half = block_size / 2;
            for b in 0..*blocks {
                let base = b * block_size + half;
                for x in &mut v[base..base + half] {
                    *x *= *scalar;
                }
            }
        }
        Factor::Butterfly { block_size, blocks } => {
            let half = block_size / 2;
            for b in 0..*blocks {
                let base = b * block_size;
                for i in 0..half {
                    let a = v[base + i];
                    let bb = v[base + half + i];
                    v[base + i] = a + bb;
                    v[base + half + i] = a - bb;
                }
            }
        }
        Factor::DelayDiagonal {
            block_size,
            blocks,
            entries,
        } => {
            let half = block_size / 2;
            for b in 0..*blocks {
                let base = b * block_size + half;
                for (x, w) in v[base..base + half].iter_mut().zip(entries) {
                    *x *= *w;
                }
            }
        }
        Factor::EvenOddPermutationTranspose { block_size, blocks } => {
            let half = block_size / 2;
            let mut out = vec![Complex::new(T::zero(), T::zero()); v.len()];
            for b in 0..*blocks {
                let base = b * block_size;
                for i in 0..half {
                    out[base + 2 * i] = v[base + i];
                    out[base + 2 * i + 1] = v[base + half + i];
                }
            }
            *v = out;
        }
    }
}

/// Gather map `g` for one interleave stage: output `d` reads input `g(d)`.
#[inline]
fn interleave_source(block_size: usize, d: usize) -> usize {
    let base = d - d % block_size;
    let local = d % block_size;
    if local.is_multiple_of(2) {
        base + local / 2
    } else {
        base + local / 2 + block_size / 2
    }
}

/// Composition of all trailing interleave stages into a single gather:
/// `out[d] = pre_permutation[map[d]]`.
///
/// The per-level interleaves are never applied as data movement between
/// arithmetic levels; they are deferred and fused here, which is also why no
/// cost is attributed to them.
pub fn composed_output_permutation(n: usize) -> Vec<usize> {
    let t = n.trailing_zeros();
    let mut map: Vec<usize> = (0..n).collect();
    for s in (0..t.saturating_sub(1)).rev() {
        let block_size = n >> s;
        let prev = map;
        map = (0..n)
            .map(|d| prev[interleave_source(block_size, d)])
            .collect();
    }
    map
}
