//! Matrix instance descriptor, node generation, and the dense explicit-matrix oracle.

use num_complex::Complex;

use crate::error::{Result, VanError};
use crate::Scalar;

/// Largest `N` for which a dense explicit matrix will be materialized.
pub const DEFAULT_MATRIX_CAP: usize = 8192;

/// Node ordering around the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Counterclockwise,
    Clockwise,
}

impl Direction {
    /// Phase sign: `+1` counterclockwise, `-1` clockwise.
    #[inline]
    pub(crate) fn sign<T: Scalar>(self) -> T {
        match self {
            Direction::Counterclockwise => T::one(),
            Direction::Clockwise => -T::one(),
        }
    }
}

/// `2π` in `T`. Exact doubling of the rounded `π`, which equals the correctly
/// rounded `2π` for binary floats.
#[inline]
pub(crate) fn tau<T: Scalar>() -> T {
    T::PI() + T::PI()
}

/// One Vandermonde matrix instance: `V = [v_k^l]` with nodes
/// `v_k = r·e^{±j(θ + 2πk/N)}`, `k, l = 0..N-1`, sign per direction.
///
/// Node indexing is 0-based with `v_0 = r·e^{±jθ}`. Immutable after
/// construction; all operations on it are pure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VanSpec<T> {
    n: usize,
    theta: T,
    radius: T,
    direction: Direction,
}

impl<T: Scalar> VanSpec<T> {
    /// Validates and builds a spec. `theta` is normalized into `[0, 2π)`.
    pub fn new(n: usize, theta: T, radius: T, direction: Direction) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(VanError::NonPowerOfTwo { n });
        }
        if !theta.is_finite() {
            return Err(VanError::NonFiniteTheta);
        }
        if !(radius.is_finite() && radius >= T::one()) {
            return Err(VanError::RadiusOutOfRange {
                radius: radius.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(VanSpec {
            n,
            theta: normalize_angle(theta),
            radius,
            direction,
        })
    }

    /// Spec for the delay-induced rotation `θ = 2π·f·τ mod 2π`.
    ///
    /// Clockwise is forced: the delay matrix elements are negative powers of
    /// `e^{jω_t τ}`.
    pub fn from_delay(n: usize, freq_hz: T, tau_seconds: T, radius: T) -> Result<Self> {
        let theta = tau::<T>() * freq_hz * tau_seconds;
        if !theta.is_finite() {
            return Err(VanError::NonFiniteTheta);
        }
        Self::new(n, theta, radius, Direction::Clockwise)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rotation of `v_0` from the positive real axis, in `[0, 2π)`.
    #[inline]
    pub fn theta(&self) -> T {
        self.theta
    }

    #[inline]
    pub fn radius(&self) -> T {
        self.radius
    }

    #[inline]
    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Number of recursion levels `t = log2 N`.
    #[inline]
    pub fn levels(&self) -> u32 {
        self.n.trailing_zeros()
    }

    /// The `N` nodes `v_k = r·e^{±j(θ + 2πk/N)}`, each from one complex
    /// exponential call, so `|v_k| = r` to within a few roundoffs and the
    /// spacing `v_{k+1}/v_k = e^{±2πj/N}` holds to the same accuracy.
    pub fn nodes(&self) -> Vec<Complex<T>> {
        let sign: T = self.direction.sign();
        let step = sign * (tau::<T>() / T::from(self.n).unwrap());
        let signed_theta = sign * self.theta;
        (0..self.n)
            .map(|k| {
                // Keep the phase split error-free so adjacent nodes differ by
                // the exact step angle up to one unit of rounding each.
                let (p, pe) = two_prod(step, T::from(k).unwrap());
                let (h, se) = two_sum(signed_theta, p);
                let unit = cis_corrected(h, pe + se);
                Complex::new(self.radius * unit.re, self.radius * unit.im)
            })
            .collect()
    }

    /// Dense `N×N` matrix with entry `(k, l) = v_k^l`, under the default size cap.
    pub fn explicit_matrix(&self) -> Result<DenseMatrix<T>> {
        self.explicit_matrix_capped(DEFAULT_MATRIX_CAP)
    }

    /// Dense matrix with a caller-chosen size cap.
    ///
    /// Each entry is evaluated by a direct exponential,
    /// `v_k^l = e^{±jl(θ + 2πk/N)}·r^l`, never by multiplying node powers, so
    /// per-entry error stays at the roundoff level. The phase is formed as
    /// `lθ + 2π((kl) mod N)/N` with an error-free product/sum split and a
    /// first-order correction of the residual, which keeps large `lθ` from
    /// contaminating the argument reduction.
    pub fn explicit_matrix_capped(&self, cap: usize) -> Result<DenseMatrix<T>> {
        if self.n > cap {
            return Err(VanError::SizeTooLarge { n: self.n, cap });
        }
        let n = self.n;
        let sign: T = self.direction.sign();
        let signed_theta = sign * self.theta;
        let signed_step = sign * (tau::<T>() / T::from(n).unwrap());
        let rpow = radius_powers(self.radius, n);
        let mut data = Vec::with_capacity(n * n);
        for k in 0..n {
            for (l, &rp) in rpow.iter().enumerate() {
                let (h0, e0) = two_prod(T::from(l).unwrap(), signed_theta);
                let rot = signed_step * T::from((k * l) % n).unwrap();
                let (h, e1) = two_sum(h0, rot);
                let w = cis_corrected(h, e0 + e1);
                data.push(w * rp);
            }
        }
        Ok(DenseMatrix { n, data })
    }
}

/// Normalizes an angle into `[0, 2π)`.
pub(crate) fn normalize_angle<T: Scalar>(theta: T) -> T {
    let tau = tau::<T>();
    let mut t = theta % tau;
    if t < T::zero() {
        t += tau;
    }
    // The fixup above can round back up to 2π for tiny negative inputs.
    if t >= tau {
        t = T::zero();
    }
    t
}

/// `[r^0, r^1, ..., r^{n-1}]`, each power by integer exponentiation.
pub(crate) fn radius_powers<T: Scalar>(r: T, n: usize) -> Vec<T> {
    (0..n).map(|l| r.powi(l as i32)).collect()
}

/// Error-free product: returns `(p, e)` with `a·b = p + e` exactly.
#[inline]
pub(crate) fn two_prod<T: Scalar>(a: T, b: T) -> (T, T) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Error-free sum (Knuth): returns `(s, e)` with `a + b = s + e` exactly.
#[inline]
pub(crate) fn two_sum<T: Scalar>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `e^{j(h + e)}` for `|e| << 1`: evaluates at `h` and applies the first-order
/// rotation by `e`.
#[inline]
pub(crate) fn cis_corrected<T: Scalar>(h: T, e: T) -> Complex<T> {
    let (s, c) = h.sin_cos();
    Complex::new(c - e * s, s + e * c)
}

/// Minimal dense complex matrix, row-major. Used for the explicit-matrix
/// oracle and the direct matrix-vector path.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> DenseMatrix<T> {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.n + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[Complex<T>] {
        &self.data[row * self.n..(row + 1) * self.n]
    }
}
