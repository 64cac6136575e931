//! Multibeam filterbank responses of the clockwise transform.
//!
//! Beam `k` of the delay-and-sum bank has the 2-D response
//! `H_k(ω_x) = Σ_i v_k^i · e^{-jω_x i}` over the spatial frequency `ω_x`,
//! where `v_k` is the `k`-th clockwise node. One fast transform of the
//! steering vector `(e^{-jω_x i})_i` evaluates all `N` beams at once, so the
//! sweep exercises the fast kernel rather than the double sum.

use num_complex::Complex;

use crate::error::{Result, VanError};
use crate::spec::VanSpec;
use crate::transform::{transform, TransformKind};
use crate::Scalar;

/// Response of one beam across the swept spatial frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamResponse<T> {
    /// Beam index `0..N-1`.
    pub k: usize,
    pub omega_x_grid: Vec<T>,
    pub magnitude_db: Vec<T>,
}

/// `M`-point uniform grid over `[-π, π]`, endpoints included.
pub fn uniform_grid<T: Scalar>(points: usize) -> Result<Vec<T>> {
    if points < 2 {
        return Err(VanError::InvalidGrid { points });
    }
    let step = T::from(points - 1).unwrap();
    Ok((0..points)
        .map(|i| {
            let frac = T::from(i).unwrap() / step;
            -T::PI() + (T::PI() + T::PI()) * frac
        })
        .collect())
}

/// Steering vector `(e^{-jω_x i})_{i=0..n-1}`.
pub fn steering_vector<T: Scalar>(omega_x: T, n: usize) -> Vec<Complex<T>> {
    (0..n)
        .map(|i| Complex::from_polar(T::one(), -omega_x * T::from(i).unwrap()))
        .collect()
}

/// Sweeps all `N` beams over `omega_x_grid` by running the clockwise kernel
/// once per grid point. The spec must be clockwise; radius above 1 routes
/// through the radius-scaled kernel.
pub fn beam_responses<T: Scalar>(
    spec: &VanSpec<T>,
    omega_x_grid: &[T],
) -> Result<Vec<BeamResponse<T>>> {
    if omega_x_grid.is_empty() {
        return Err(VanError::InvalidGrid { points: 0 });
    }
    let kind = if spec.radius() > T::one() {
        TransformKind::VanCR
    } else {
        TransformKind::VanC
    };
    kind.validate(spec)?;

    let n = spec.n();
    let twenty = T::from(20.0).unwrap();
    let mut magnitudes: Vec<Vec<T>> = vec![Vec::with_capacity(omega_x_grid.len()); n];
    for &omega_x in omega_x_grid {
        let y = transform(kind, &steering_vector(omega_x, n), spec)?;
        for (k, h) in y.into_iter().enumerate() {
            magnitudes[k].push(twenty * h.norm().log10());
        }
    }
    Ok(magnitudes
        .into_iter()
        .enumerate()
        .map(|(k, magnitude_db)| BeamResponse {
            k,
            omega_x_grid: omega_x_grid.to_vec(),
            magnitude_db,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::direct_matvec;

    #[test]
    fn grid_endpoints_and_validation() {
        let g: Vec<f64> = uniform_grid(5).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], -std::f64::consts::PI);
        assert_eq!(g[4], std::f64::consts::PI);
        assert_eq!(g[2], 0.0);
        assert_eq!(uniform_grid::<f64>(1).unwrap_err(), VanError::InvalidGrid { points: 1 });
    }

    #[test]
    fn zero_delay_beam_zero_is_coherent_sum() {
        // f·τ = 0 makes v_0 = 1; at ω_x = 0 the sum is N.
        let spec = VanSpec::from_delay(8, 0.0, 0.0, 1.0).unwrap();
        let beams = beam_responses(&spec, &[0.0]).unwrap();
        let mag = 10f64.powf(beams[0].magnitude_db[0] / 20.0);
        assert!((mag - 8.0).abs() < 1e-9);
    }

    #[test]
    fn mainlobe_peak_is_n() {
        // Evaluating beam k at ω_x = arg(v_k) makes every term 1.
        let spec = VanSpec::from_delay(16, 0.13, 1.0, 1.0).unwrap();
        let nodes = spec.nodes();
        for k in [0usize, 3, 9, 15] {
            let peak = nodes[k].arg();
            let beams = beam_responses(&spec, &[peak]).unwrap();
            let mag = 10f64.powf(beams[k].magnitude_db[0] / 20.0);
            assert!((mag - 16.0).abs() < 1e-9, "beam {k}: {mag}");
        }
    }

    #[test]
    fn sweep_matches_direct_double_sum() {
        let spec = VanSpec::from_delay(8, 0.13, 1.0, 1.0).unwrap();
        let grid: Vec<f64> = uniform_grid(33).unwrap();
        let beams = beam_responses(&spec, &grid).unwrap();
        for (gi, &omega_x) in grid.iter().enumerate() {
            let brute = direct_matvec(&steering_vector(omega_x, 8), &spec).unwrap();
            for k in 0..8 {
                let fast_mag = 10f64.powf(beams[k].magnitude_db[gi] / 20.0);
                let rel = (fast_mag - brute[k].norm()).abs() / brute[k].norm().max(1e-300);
                assert!(rel < 1e-12, "beam {k}, grid {gi}: rel {rel:e}");
            }
        }
    }

    #[test]
    fn rejects_counterclockwise_spec() {
        let spec = VanSpec::new(8, 0.1, 1.0, crate::Direction::Counterclockwise).unwrap();
        assert!(matches!(
            beam_responses(&spec, &[0.0]),
            Err(VanError::SpecMismatch { .. })
        ));
    }
}
