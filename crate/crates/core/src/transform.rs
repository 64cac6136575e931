//! The four fast matrix-vector kernels and the `O(N²)` direct reference path.

use std::fmt;

use num_complex::Complex;

use crate::error::{Result, VanError};
use crate::factor::{apply_factor, build_factors, composed_output_permutation, Factor};
use crate::spec::{DenseMatrix, Direction, VanSpec};
use crate::Scalar;

/// Which kernel to run. `VanC`/`VanCR` take clockwise nodes, `VanCC`/`VanCCR`
/// counterclockwise; the `R` variants allow a circle radius above 1 and
/// prepend the `diag(r^l)` scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    VanC,
    VanCC,
    VanCR,
    VanCCR,
}

impl TransformKind {
    pub const ALL: [TransformKind; 4] = [
        TransformKind::VanC,
        TransformKind::VanCC,
        TransformKind::VanCR,
        TransformKind::VanCCR,
    ];

    pub fn direction(self) -> Direction {
        match self {
            TransformKind::VanC | TransformKind::VanCR => Direction::Clockwise,
            TransformKind::VanCC | TransformKind::VanCCR => Direction::Counterclockwise,
        }
    }

    /// Whether the kind admits radius > 1 (and carries the diagonal prescale).
    pub fn allows_radius(self) -> bool {
        matches!(self, TransformKind::VanCR | TransformKind::VanCCR)
    }

    /// Checks direction/radius compatibility between kind and spec.
    pub fn validate<T: Scalar>(self, spec: &VanSpec<T>) -> Result<()> {
        if spec.direction() != self.direction() {
            return Err(VanError::SpecMismatch {
                kind: self,
                reason: "node direction does not match the kind",
            });
        }
        if !self.allows_radius() && spec.radius() > T::one() {
            return Err(VanError::SpecMismatch {
                kind: self,
                reason: "radius > 1 needs the radius-scaled kind",
            });
        }
        Ok(())
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TransformKind::VanC => "vanc",
            TransformKind::VanCC => "vancc",
            TransformKind::VanCR => "vancr",
            TransformKind::VanCCR => "vanccr",
        };
        f.write_str(name)
    }
}

/// Shared stage sweep: apply the arithmetic stages in order, then fuse the
/// trailing interleaves into one gather. The input is never mutated.
fn run_stages<T: Scalar>(z: &[Complex<T>], spec: &VanSpec<T>) -> Result<Vec<Complex<T>>> {
    if z.len() != spec.n() {
        return Err(VanError::LengthMismatch {
            expected: spec.n(),
            got: z.len(),
        });
    }
    let mut v = z.to_vec();
    for factor in &build_factors(spec) {
        if matches!(factor, Factor::EvenOddPermutationTranspose { .. }) {
            break;
        }
        apply_factor(factor, &mut v);
    }
    let map = composed_output_permutation(spec.n());
    Ok(map.into_iter().map(|src| v[src]).collect())
}

/// `y = V·z` for counterclockwise nodes on the unit circle.
pub fn vancc<T: Scalar>(z: &[Complex<T>], spec: &VanSpec<T>) -> Result<Vec<Complex<T>>> {
    TransformKind::VanCC.validate(spec)?;
    run_stages(z, spec)
}

/// `y = V·z` for clockwise nodes on the unit circle. At `θ = 0` this is the DFT.
pub fn vanc<T: Scalar>(z: &[Complex<T>], spec: &VanSpec<T>) -> Result<Vec<Complex<T>>> {
    TransformKind::VanC.validate(spec)?;
    run_stages(z, spec)
}

/// `y = Ṽ·z` for counterclockwise nodes on the circle of radius `r >= 1`:
/// the `diag(r^l)` prescale followed by the unit-circle sweep. At `r = 1` the
/// scaling stage is skipped and the output is bit-identical to [`vancc`].
pub fn vanccr<T: Scalar>(z: &[Complex<T>], spec: &VanSpec<T>) -> Result<Vec<Complex<T>>> {
    TransformKind::VanCCR.validate(spec)?;
    run_stages(z, spec)
}

/// Clockwise counterpart of [`vanccr`].
pub fn vancr<T: Scalar>(z: &[Complex<T>], spec: &VanSpec<T>) -> Result<Vec<Complex<T>>> {
    TransformKind::VanCR.validate(spec)?;
    run_stages(z, spec)
}

/// Dispatches to the kernel named by `kind` after validating compatibility.
pub fn transform<T: Scalar>(
    kind: TransformKind,
    z: &[Complex<T>],
    spec: &VanSpec<T>,
) -> Result<Vec<Complex<T>>> {
    match kind {
        TransformKind::VanC => vanc(z, spec),
        TransformKind::VanCC => vancc(z, spec),
        TransformKind::VanCR => vancr(z, spec),
        TransformKind::VanCCR => vanccr(z, spec),
    }
}

/// Plain row-wise products with left-to-right accumulation, no compensation.
pub fn matvec_rows<T: Scalar>(m: &DenseMatrix<T>, z: &[Complex<T>]) -> Vec<Complex<T>> {
    (0..m.n())
        .map(|k| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (a, x) in m.row(k).iter().zip(z) {
                acc += *a * *x;
            }
            acc
        })
        .collect()
}

/// `y = V·z` by the explicit matrix, the independent `O(N²)` oracle for the
/// fast kernels.
pub fn direct_matvec<T: Scalar>(z: &[Complex<T>], spec: &VanSpec<T>) -> Result<Vec<Complex<T>>> {
    if z.len() != spec.n() {
        return Err(VanError::LengthMismatch {
            expected: spec.n(),
            got: z.len(),
        });
    }
    let m = spec.explicit_matrix()?;
    Ok(matvec_rows(&m, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn rel_l2(a: &[C], b: &[C]) -> f64 {
        let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
        let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
        (num / den).sqrt()
    }

    fn seeded_vec(n: usize, seed: u64) -> Vec<C> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| C::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect()
    }

    #[test]
    fn base_case_pair() {
        // N = 2, θ = 0: y = (a + b, a - b).
        let spec = VanSpec::new(2, 0.0, 1.0, Direction::Counterclockwise).unwrap();
        let z = [C::new(3.0, 1.0), C::new(-1.0, 2.0)];
        let y = vancc(&z, &spec).unwrap();
        assert_eq!(y[0], C::new(2.0, 3.0));
        assert_eq!(y[1], C::new(4.0, -1.0));
    }

    #[test]
    fn unit_impulse_gives_ones() {
        // e_0 maps to the first matrix column, which is all ones.
        for kind in TransformKind::ALL {
            let r = if kind.allows_radius() { 1.5 } else { 1.0 };
            let spec = VanSpec::new(8, 1.2, r, kind.direction()).unwrap();
            let mut z = vec![C::new(0.0, 0.0); 8];
            z[0] = C::new(1.0, 0.0);
            let y = transform(kind, &z, &spec).unwrap();
            for c in y {
                assert!((c - C::new(1.0, 0.0)).norm() < 1e-14, "{kind}: {c}");
            }
        }
    }

    #[test]
    fn dft_of_constant() {
        let spec = VanSpec::new(4, 0.0, 1.0, Direction::Clockwise).unwrap();
        let z = vec![C::new(1.0, 0.0); 4];
        let y = vanc(&z, &spec).unwrap();
        assert!((y[0] - C::new(4.0, 0.0)).norm() < 1e-14);
        for c in &y[1..] {
            assert!(c.norm() < 1e-14);
        }
    }

    #[test]
    fn vanc_theta_zero_is_dft4() {
        let spec = VanSpec::new(4, 0.0, 1.0, Direction::Clockwise).unwrap();
        let z = seeded_vec(4, 7);
        let y = vanc(&z, &spec).unwrap();
        let omega = C::from_polar(1.0, -std::f64::consts::TAU / 4.0);
        let dft: Vec<C> = (0..4)
            .map(|k| (0..4).map(|l| omega.powu((k * l) as u32) * z[l]).sum())
            .collect();
        assert!(rel_l2(&y, &dft) < 1e-14);
    }

    #[test]
    fn fast_matches_oracle_small() {
        let spec = VanSpec::new(8, 0.7, 1.0, Direction::Counterclockwise).unwrap();
        let z = seeded_vec(8, 42);
        let fast = vancc(&z, &spec).unwrap();
        let direct = direct_matvec(&z, &spec).unwrap();
        assert!(rel_l2(&fast, &direct) <= 1e-13);

        let spec = VanSpec::new(16, 1.1, 1.0, Direction::Clockwise).unwrap();
        let z = seeded_vec(16, 43);
        assert!(rel_l2(&vanc(&z, &spec).unwrap(), &direct_matvec(&z, &spec).unwrap()) <= 1e-13);

        let spec = VanSpec::new(8, 0.4, 1.5, Direction::Counterclockwise).unwrap();
        let z = seeded_vec(8, 44);
        assert!(rel_l2(&vanccr(&z, &spec).unwrap(), &direct_matvec(&z, &spec).unwrap()) <= 1e-12);

        let spec = VanSpec::new(32, 2.0, 1.2, Direction::Clockwise).unwrap();
        let z = seeded_vec(32, 45);
        assert!(rel_l2(&vancr(&z, &spec).unwrap(), &direct_matvec(&z, &spec).unwrap()) <= 1e-12);
    }

    #[test]
    fn second_column_with_radius_two() {
        // e_1 maps to the second column: the nodes scaled by r = 2.
        let spec = VanSpec::new(4, 0.0, 2.0, Direction::Counterclockwise).unwrap();
        let mut z = vec![C::new(0.0, 0.0); 4];
        z[1] = C::new(1.0, 0.0);
        let y = vanccr(&z, &spec).unwrap();
        let want = [C::new(2.0, 0.0), C::new(0.0, 2.0), C::new(-2.0, 0.0), C::new(0.0, -2.0)];
        for (got, want) in y.iter().zip(want) {
            assert!((got - want).norm() < 1e-14);
        }
    }

    #[test]
    fn radius_one_scaled_kinds_match_unit_kinds_bitwise() {
        let spec = VanSpec::new(16, 0.9, 1.0, Direction::Counterclockwise).unwrap();
        let z = seeded_vec(16, 46);
        assert_eq!(vanccr(&z, &spec).unwrap(), vancc(&z, &spec).unwrap());

        let spec = VanSpec::new(16, 0.9, 1.0, Direction::Clockwise).unwrap();
        assert_eq!(vancr(&z, &spec).unwrap(), vanc(&z, &spec).unwrap());
    }

    #[test]
    fn kind_spec_mismatch_is_rejected() {
        let cw = VanSpec::new(4, 0.0, 1.0, Direction::Clockwise).unwrap();
        let z = seeded_vec(4, 1);
        assert!(matches!(
            vancc(&z, &cw).unwrap_err(),
            VanError::SpecMismatch { kind: TransformKind::VanCC, .. }
        ));
        assert!(matches!(
            transform(TransformKind::VanC, &z, &VanSpec::new(4, 0.0, 1.0, Direction::Counterclockwise).unwrap()),
            Err(VanError::SpecMismatch { .. })
        ));

        // Unit-circle kinds refuse r > 1.
        let wide = VanSpec::new(4, 0.0, 2.0, Direction::Clockwise).unwrap();
        assert!(matches!(vanc(&z, &wide), Err(VanError::SpecMismatch { .. })));
        // The scaled kind takes it.
        assert!(transform(TransformKind::VanCR, &z, &wide).is_ok());
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let spec = VanSpec::new(8, 0.0, 1.0, Direction::Clockwise).unwrap();
        let z = seeded_vec(4, 2);
        assert_eq!(
            vanc(&z, &spec).unwrap_err(),
            VanError::LengthMismatch { expected: 8, got: 4 }
        );
        assert_eq!(
            direct_matvec(&z, &spec).unwrap_err(),
            VanError::LengthMismatch { expected: 8, got: 4 }
        );
    }

    #[test]
    fn direct_matvec_impulse() {
        let spec = VanSpec::new(2, 1.3, 1.0, Direction::Clockwise).unwrap();
        let y = direct_matvec(&[C::new(1.0, 0.0), C::new(0.0, 0.0)], &spec).unwrap();
        assert_eq!(y[0], C::new(1.0, 0.0));
        assert_eq!(y[1], C::new(1.0, 0.0));
    }

    #[test]
    fn f32_kernels_track_the_oracle() {
        let spec: VanSpec<f32> = VanSpec::new(16, 0.8, 1.0, Direction::Clockwise).unwrap();
        let z: Vec<Complex<f32>> = seeded_vec(16, 9)
            .into_iter()
            .map(|c| Complex::new(c.re as f32, c.im as f32))
            .collect();
        let fast = vanc(&z, &spec).unwrap();
        let direct = direct_matvec(&z, &spec).unwrap();
        let num: f32 = fast.iter().zip(&direct).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f32 = direct.iter().map(|c| c.norm_sqr()).sum();
        assert!((num / den).sqrt() < 1e-5);
    }
}
