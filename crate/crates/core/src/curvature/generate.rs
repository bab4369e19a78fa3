//! Random λ-pinched Kähler curvature tensors.
//!
//! Pipeline: draw a dense random tensor, symmetrize into `S²Λ²`, then run
//! von Neumann alternating projections between the Bianchi kernel
//! (`R ↦ R − c(R)/3`, with `c` the cyclic sum over the first three slots)
//! and the `J`-invariant subspace (group average over
//! `{id, J⊗J⊗1⊗1, 1⊗1⊗J⊗J, J⊗J⊗J⊗J}`) until both residuals drop below
//! `1e−12`. Finally the holomorphic extremes are measured by the
//! constrained optimizer and the tensor is calibrated affinely,
//! `R = a·R′ + b·G`, so the holomorphic range becomes exactly `[−1, −λ]`.
//! At `λ = 1` the output is exactly `G`.

use super::optimize::{optimize_holomorphic, OptimizeConfig};
use super::tensor::{complex_hyperbolic_g, ComplexStructure, CurvatureTensor};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("dimension must be even and at least 4, got {0}")]
    InvalidDimension(usize),
    #[error("pinching constant must lie in (0, 1], got {0}")]
    InvalidLambda(f64),
    #[error("seed {seed} produced a degenerate tensor (holomorphic range {span:.3e} too narrow to calibrate)")]
    Degenerate { seed: u64, span: f64 },
    #[error("alternating projections failed to reach tolerance (bianchi {bianchi:.3e}, kahler {kahler:.3e})")]
    ProjectionStalled { bianchi: f64, kahler: f64 },
}

/// A generated λ-pinched sample together with its provenance.
#[derive(Debug, Clone)]
pub struct PinchedSample {
    pub tensor: CurvatureTensor<f64>,
    pub jay: ComplexStructure,
    pub lambda: f64,
    pub seed: u64,
    /// Calibration `R = a·R′ + b·G`.
    pub scale_a: f64,
    pub shift_b: f64,
    /// Holomorphic range measured on the calibrated tensor.
    pub h_min: f64,
    pub h_max: f64,
    pub projection_iters: usize,
}

/// Projects onto `S²Λ²`: antisymmetrize both index pairs, then symmetrize
/// the pair exchange.
fn symmetrize_pairs(r: &CurvatureTensor<f64>) -> CurvatureTensor<f64> {
    let n = r.dim();
    let mut t = CurvatureTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = 0.25
                        * (r.get(i, j, k, l) - r.get(j, i, k, l) - r.get(i, j, l, k)
                            + r.get(j, i, l, k));
                    t.set(i, j, k, l, v);
                }
            }
        }
    }
    let mut out = CurvatureTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = 0.5 * (t.get(i, j, k, l) + t.get(k, l, i, j));
                    out.set(i, j, k, l, v);
                }
            }
        }
    }
    out
}

/// Orthogonal projection onto the first-Bianchi kernel inside `S²Λ²`:
/// `R − c(R)/3`, where `c(R)` is the cyclic sum over the first three slots.
fn bianchi_project(r: &CurvatureTensor<f64>) -> CurvatureTensor<f64> {
    let n = r.dim();
    let mut out = CurvatureTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let c = r.get(i, j, k, l) + r.get(j, k, i, l) + r.get(k, i, j, l);
                    out.set(i, j, k, l, r.get(i, j, k, l) - c / 3.0);
                }
            }
        }
    }
    out
}

/// Group average over `J` acting on the index pairs; fixed points are the
/// tensors with `R(JX,JY,Z,W) = R(X,Y,Z,W) = R(X,Y,JZ,JW)`.
fn j_average(r: &CurvatureTensor<f64>, jay: &ComplexStructure) -> CurvatureTensor<f64> {
    let n = r.dim();
    let mut out = CurvatureTensor::zeros(n);
    for i in 0..n {
        let (ji, si) = jay.image_of_basis(i);
        for j in 0..n {
            let (jj, sj) = jay.image_of_basis(j);
            let s12 = (si * sj) as f64;
            for k in 0..n {
                let (jk, sk) = jay.image_of_basis(k);
                for l in 0..n {
                    let (jl, sl) = jay.image_of_basis(l);
                    let s34 = (sk * sl) as f64;
                    let v = 0.25
                        * (r.get(i, j, k, l)
                            + s12 * r.get(ji, jj, k, l)
                            + s34 * r.get(i, j, jk, jl)
                            + s12 * s34 * r.get(ji, jj, jk, jl));
                    out.set(i, j, k, l, v);
                }
            }
        }
    }
    out
}

const PROJECTION_TOL: f64 = 1e-12;

/// Generates a random algebraic Kähler curvature tensor on ℝⁿ whose
/// holomorphic values lie exactly in `[−1, −λ]` (up to the optimizer's
/// measurement of the extremes). Deterministic in `(n, lambda, seed)`.
pub fn random_pinched_kahler(
    n: usize,
    lambda: f64,
    seed: u64,
) -> Result<PinchedSample, GeneratorError> {
    if n < 4 || n % 2 != 0 {
        return Err(GeneratorError::InvalidDimension(n));
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(GeneratorError::InvalidLambda(lambda));
    }
    let jay = ComplexStructure::canonical(n);
    let g: CurvatureTensor<f64> = complex_hyperbolic_g(&jay);
    if lambda == 1.0 {
        // The only holomorphically 1-pinched tensor up to scale; emit it
        // exactly rather than calibrating a random draw down to a point.
        return Ok(PinchedSample {
            tensor: g.clone(),
            jay,
            lambda,
            seed,
            scale_a: 0.0,
            shift_b: 1.0,
            h_min: -1.0,
            h_max: -1.0,
            projection_iters: 0,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n * n * n * n)
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    let mut r = symmetrize_pairs(&CurvatureTensor::from_components(n, raw));

    let mut iters = 0;
    loop {
        r = bianchi_project(&r);
        r = j_average(&r, &jay);
        iters += 1;
        if iters % 4 == 0 || iters >= 400 {
            let bb = r.bianchi_residual();
            let kk = r.kahler_residual(&jay);
            if bb < PROJECTION_TOL && kk < PROJECTION_TOL {
                break;
            }
            if iters >= 400 {
                return Err(GeneratorError::ProjectionStalled { bianchi: bb, kahler: kk });
            }
        }
    }

    if r.norm() < 1e-8 {
        return Err(GeneratorError::Degenerate { seed, span: 0.0 });
    }

    // Calibrate iteratively: measure the holomorphic extremes, map them
    // affinely onto [−1, −λ], re-measure, and repeat until the measured
    // range is within 1e−10 of the target. H(a·R + b·G) = a·H_R − b.
    let cfg = OptimizeConfig {
        restarts: 48,
        seed: seed ^ 0x9e37_79b9_7f4a_7c15,
        ..OptimizeConfig::default()
    };
    // Composite coefficients of R_final = A·R_projected + B·G across rounds.
    let (mut total_a, mut total_b) = (1.0f64, 0.0f64);
    for _ in 0..4 {
        let (hi, _, _) = optimize_holomorphic(&r, &jay, true, &cfg);
        let (lo, _, _) = optimize_holomorphic(&r, &jay, false, &cfg);
        let span = hi - lo;
        if span < 1e-9 {
            return Err(GeneratorError::Degenerate { seed, span });
        }
        if (lo + 1.0).abs() < 1e-10 && (hi + lambda).abs() < 1e-10 {
            return Ok(PinchedSample {
                tensor: r,
                jay,
                lambda,
                seed,
                scale_a: total_a,
                shift_b: total_b,
                h_min: lo,
                h_max: hi,
                projection_iters: iters,
            });
        }
        let a = (1.0 - lambda) / span;
        let b = a * hi + lambda;
        r = r.scale(&a).add(&g.scale(&b));
        total_a *= a;
        total_b = a * total_b + b;
    }
    // One final measurement for the report.
    let (hi, _, _) = optimize_holomorphic(&r, &jay, true, &cfg);
    let (lo, _, _) = optimize_holomorphic(&r, &jay, false, &cfg);
    if (lo + 1.0).abs() < 1e-8 && (hi + lambda).abs() < 1e-8 {
        Ok(PinchedSample {
            tensor: r,
            jay,
            lambda,
            seed,
            scale_a: total_a,
            shift_b: total_b,
            h_min: lo,
            h_max: hi,
            projection_iters: iters,
        })
    } else {
        Err(GeneratorError::Degenerate { seed, span: hi - lo })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::optimize::verify_bishop_goldberg;

    #[test]
    fn generated_tensor_has_kahler_symmetries() {
        let s = random_pinched_kahler(4, 0.95, 11).unwrap();
        assert!(s.tensor.symmetry_residual() < 1e-11);
        assert!(s.tensor.bianchi_residual() < 1e-11);
        assert!(s.tensor.kahler_residual(&s.jay) < 1e-11);
    }

    #[test]
    fn generated_tensor_holomorphic_range_is_calibrated() {
        let s = random_pinched_kahler(4, 0.95, 3).unwrap();
        assert!((s.h_min + 1.0).abs() < 1e-8, "h_min {}", s.h_min);
        assert!((s.h_max + 0.95).abs() < 1e-8, "h_max {}", s.h_max);
    }

    #[test]
    fn lambda_one_yields_exact_g() {
        let s = random_pinched_kahler(6, 1.0, 42).unwrap();
        let jay = ComplexStructure::canonical(6);
        let g: CurvatureTensor<f64> = complex_hyperbolic_g(&jay);
        assert_eq!(s.tensor, g);
    }

    #[test]
    fn deterministic_in_seed() {
        let a = random_pinched_kahler(4, 0.95, 5).unwrap();
        let b = random_pinched_kahler(4, 0.95, 5).unwrap();
        assert_eq!(a.tensor, b.tensor);
        let c = random_pinched_kahler(4, 0.95, 6).unwrap();
        assert_ne!(a.tensor, c.tensor);
    }

    #[test]
    fn generated_tensor_passes_bishop_goldberg() {
        let s = random_pinched_kahler(4, 0.95, 17).unwrap();
        let cfg = OptimizeConfig {
            restarts: 24,
            seed: 1,
            ..OptimizeConfig::default()
        };
        let report = verify_bishop_goldberg(&s.tensor, &s.jay, 0.95, &cfg);
        assert!(report.all_bounds_hold(), "{report:#?}");
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            random_pinched_kahler(5, 0.95, 0),
            Err(GeneratorError::InvalidDimension(5))
        ));
        assert!(matches!(
            random_pinched_kahler(4, 0.0, 0),
            Err(GeneratorError::InvalidLambda(_))
        ));
        assert!(matches!(
            random_pinched_kahler(4, 1.5, 0),
            Err(GeneratorError::InvalidLambda(_))
        ));
    }
}
