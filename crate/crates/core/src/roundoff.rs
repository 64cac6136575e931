//! Floating-point forward-error bound calculators and the empirical
//! measurement harness.
//!
//! With unit roundoff `u` and computed-weight error bounds `μ±`, define
//! `γ_k = ku/(1 - ku)`, `η± = μ± + γ₄(1 + μ±)`, and `ν± = η±γ₃ + η± + γ₃`.
//! The radix-2 sweep of size `N = 2^t` then satisfies
//! `‖y - ŷ‖₂/‖y‖₂ ≤ tν±/(1 - tν±)·√N`; the classical radix-2 FFT bound is the
//! same with `ν` replaced by `η`, and the direct product is bounded by
//! `γ_{N+2}·√N`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, VanError};
use crate::spec::VanSpec;
use crate::transform::{matvec_rows, transform, TransformKind};
use crate::Scalar;

/// Roundoff parameters: unit roundoff `u` and the weight-error bounds `μ+`
/// (counterclockwise weights) and `μ-` (clockwise weights). The two are
/// independent parameters; set them equal to reproduce the tabulated bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel<T> {
    u: T,
    mu_plus: T,
    mu_minus: T,
}

impl<T: Scalar> ErrorModel<T> {
    pub fn new(u: T, mu_plus: T, mu_minus: T) -> Result<Self> {
        if u <= T::zero() || !u.is_finite() {
            return Err(VanError::InvalidModel {
                reason: "u must be a positive finite number",
            });
        }
        if u >= T::from(1e-6).unwrap() {
            return Err(VanError::InvalidModel {
                reason: "u must be below 1e-6",
            });
        }
        if mu_plus < T::zero() || mu_minus < T::zero() {
            return Err(VanError::InvalidModel {
                reason: "mu bounds must be nonnegative",
            });
        }
        Ok(ErrorModel { u, mu_plus, mu_minus })
    }

    /// Model at machine roundoff `u = ε/2` with `μ± = 8u`, the accuracy of
    /// weights obtained from one exponential call each.
    pub fn machine() -> Self {
        let u = T::epsilon() / T::from(2).unwrap();
        let mu = T::from(8).unwrap() * u;
        ErrorModel { u, mu_plus: mu, mu_minus: mu }
    }

    #[inline]
    pub fn u(&self) -> T {
        self.u
    }

    #[inline]
    pub fn mu(&self, sign: WeightSign) -> T {
        match sign {
            WeightSign::Plus => self.mu_plus,
            WeightSign::Minus => self.mu_minus,
        }
    }
}

/// Selects `μ+` (counterclockwise) or `μ-` (clockwise) in the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSign {
    Plus,
    Minus,
}

/// `γ_k = ku/(1 - ku)`.
pub fn gamma<T: Scalar>(k: u64, model: &ErrorModel<T>) -> Result<T> {
    let ku = T::from(k).unwrap() * model.u;
    if ku >= T::one() {
        return Err(VanError::DivergentGamma { k });
    }
    Ok(ku / (T::one() - ku))
}

fn eta<T: Scalar>(model: &ErrorModel<T>, mu: T) -> Result<T> {
    let g4 = gamma(4, model)?;
    Ok(mu + g4 * (T::one() + mu))
}

fn nu<T: Scalar>(model: &ErrorModel<T>, mu: T) -> Result<T> {
    let g3 = gamma(3, model)?;
    let eta = eta(model, mu)?;
    Ok(eta * g3 + eta + g3)
}

fn scaled_bound<T: Scalar>(n: usize, per_level: T) -> Result<T> {
    let t = T::from(n.trailing_zeros()).unwrap();
    let tl = t * per_level;
    if tl >= T::one() {
        return Err(VanError::BoundDiverges);
    }
    Ok(tl / (T::one() - tl) * T::from(n).unwrap().sqrt())
}

/// Forward-error bound `tν/(1 - tν)·√N` of the radix-2 sweep.
pub fn radix2_bound<T: Scalar>(n: usize, model: &ErrorModel<T>, sign: WeightSign) -> Result<T> {
    if n < 2 || !n.is_power_of_two() {
        return Err(VanError::NonPowerOfTwo { n });
    }
    scaled_bound(n, nu(model, model.mu(sign))?)
}

/// Forward-error bound `tη/(1 - tη)·√N` of the radix-2 FFT, for comparison.
pub fn fft_bound<T: Scalar>(n: usize, model: &ErrorModel<T>) -> Result<T> {
    if n < 2 || !n.is_power_of_two() {
        return Err(VanError::NonPowerOfTwo { n });
    }
    scaled_bound(n, eta(model, model.mu_plus)?)
}

/// Forward-error bound `γ_{N+2}·√N` of the direct row-sum product.
pub fn direct_bound<T: Scalar>(n: usize, model: &ErrorModel<T>) -> Result<T> {
    Ok(gamma(n as u64 + 2, model)? * T::from(n).unwrap().sqrt())
}

/// Forward-error statistics over random trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSummary<T> {
    pub max_rel_error: T,
    pub mean_rel_error: T,
}

/// Runs `trials` random inputs through the fast kernel and the explicit-matrix
/// oracle and summarizes the relative ℓ₂ differences.
///
/// Inputs have i.i.d. real and imaginary parts uniform on `[0, 1)`, drawn
/// from a counter-based generator, so results are deterministic per seed.
pub fn measure_forward_error<T: Scalar>(
    kind: TransformKind,
    spec: &VanSpec<T>,
    trials: usize,
    rng_seed: u64,
) -> Result<ErrorSummary<T>> {
    if trials == 0 {
        return Err(VanError::ZeroTrials);
    }
    kind.validate(spec)?;
    let matrix = spec.explicit_matrix()?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let n = spec.n();
    let mut max = T::zero();
    let mut sum = T::zero();
    for _ in 0..trials {
        let z: Vec<Complex<T>> = (0..n)
            .map(|_| {
                let re = T::from(rng.gen::<f64>()).unwrap();
                let im = T::from(rng.gen::<f64>()).unwrap();
                Complex::new(re, im)
            })
            .collect();
        let fast = transform(kind, &z, spec)?;
        let direct = matvec_rows(&matrix, &z);
        let mut num = T::zero();
        let mut den = T::zero();
        for (f, d) in fast.iter().zip(&direct) {
            num += (f - d).norm_sqr();
            den += d.norm_sqr();
        }
        let rel = (num / den).sqrt();
        if rel > max {
            max = rel;
        }
        sum += rel;
    }
    Ok(ErrorSummary {
        max_rel_error: max,
        mean_rel_error: sum / T::from(trials).unwrap(),
    })
}
