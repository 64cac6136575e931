//! Radix-2 fast transforms for Vandermonde matrices on equally spaced circular nodes.
//!
//! A Vandermonde matrix `V = [v_k^l]` whose nodes `v_k = r·e^{±j(θ + 2πk/N)}` are
//! equally spaced on the circle of radius `r` admits a self-contained sparse
//! factorization into permutation, butterfly, and diagonal stages, exactly like the
//! radix-2 DFT (which is the `θ = 0`, `r = 1`, clockwise special case). This crate
//! provides:
//!
//! - [`VanSpec`]: the matrix instance descriptor (size, rotation, radius, node
//!   direction), node generation, and a dense explicit-matrix oracle;
//! - [`build_factors`]: the fully unrolled sparse factorization;
//! - the four fast `O(N log N)` matrix-vector kernels [`vancc`], [`vanc`],
//!   [`vanccr`], [`vancr`] plus the `O(N²)` [`direct_matvec`] reference path;
//! - gain-delay-block (GDB) cost counting ([`formula_count`], [`direct_count`],
//!   [`measured_count`]) for complex and real arithmetic;
//! - floating-point forward-error bound calculators ([`radix2_bound`],
//!   [`fft_bound`], [`direct_bound`]) and an empirical measurement harness;
//! - signal-flow-graph export of the factorized dataflow ([`build_sfg`],
//!   [`export_dot`], [`export_json`]) for hardware-design handoff;
//! - the multibeam filterbank response sweep ([`beam_responses`]) that drives the
//!   clockwise kernel as a true-time-delay beamformer.
//!
//! All numerics are generic over the scalar type through [`Scalar`] (blanket-implemented
//! for `f32` and `f64`); concrete aliases such as [`VanSpec64`] are exported at the
//! crate root. Every type is immutable after construction and every operation is a
//! pure function, so values can be shared freely across threads.

use std::fmt;

use num_traits::{Float, FloatConst, NumAssign, NumCast};

pub mod beam;
pub mod count;
pub mod error;
pub mod factor;
pub mod roundoff;
pub mod sfg;
pub mod spec;
pub mod transform;

pub use beam::{beam_responses, steering_vector, uniform_grid, BeamResponse};
pub use count::{direct_count, formula_count, measured_count, Arithmetic, GdbCount};
pub use error::{Result, VanError};
pub use factor::{apply_factor, build_factors, composed_output_permutation, Factor};
pub use roundoff::{
    direct_bound, fft_bound, gamma, measure_forward_error, radix2_bound, ErrorModel,
    ErrorSummary, WeightSign,
};
pub use sfg::{build_sfg, evaluate_sfg, export_dot, export_json, SfgEdge, SfgGraph, SfgNode,
    SfgNodeKind, SfgWeight};
pub use spec::{DenseMatrix, Direction, VanSpec, DEFAULT_MATRIX_CAP};
pub use transform::{direct_matvec, matvec_rows, transform, vanc, vancc, vanccr, vancr,
    TransformKind};

/// Floating-point scalar the transforms are generic over.
///
/// Blanket-implemented for every type with the required `num-traits` bounds,
/// in practice `f32` and `f64`.
pub trait Scalar:
    Float + FloatConst + NumAssign + NumCast + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FloatConst + NumAssign + NumCast + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// `VanSpec` over `f32`.
pub type VanSpec32 = VanSpec<f32>;
/// `VanSpec` over `f64`, the default precision for the command-line tools.
pub type VanSpec64 = VanSpec<f64>;
/// `ErrorModel` over `f64`.
pub type ErrorModel64 = ErrorModel<f64>;
