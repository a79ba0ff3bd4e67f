use serde::{Deserialize, Serialize};

use super::kernel::{cauchy_kernel, harmonic_potential};
use crate::clifford::{CliffordVector, Multivector};
use crate::error::{Error, Result};

/// Central-difference discretization of the Dirac operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DiracSpec {
    pub step: f64,
}

impl Default for DiracSpec {
    fn default() -> Self {
        Self { step: 1e-4 }
    }
}

impl DiracSpec {
    pub fn with_step(step: f64) -> Self {
        Self { step }
    }

    fn validate(&self) -> Result<()> {
        if self.step > 0.0 && self.step.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("dirac step must be positive, got {}", self.step)))
        }
    }
}

/// `D f(x) = sum_j e_j (f(x + h e_j) - f(x - h e_j)) / 2h`, with `e_j`
/// multiplying from the left. `f` must return elements of `C(n)`, `n = x.len()`.
pub fn dirac_apply<F>(f: F, x: &[f64], spec: &DiracSpec) -> Result<Multivector>
where
    F: Fn(&[f64]) -> Multivector,
{
    dirac_apply_fallible(|p| Ok(f(p)), x, spec)
}

/// [`dirac_apply`] for fields that can fail, e.g. near a singularity.
pub fn dirac_apply_fallible<F>(f: F, x: &[f64], spec: &DiracSpec) -> Result<Multivector>
where
    F: Fn(&[f64]) -> Result<Multivector>,
{
    spec.validate()?;
    let n = x.len();
    let h = spec.step;
    let mut out = Multivector::zero(n)?;
    let mut probe = x.to_vec();
    for j in 0..n {
        probe[j] = x[j] + h;
        let plus = f(&probe)?;
        probe[j] = x[j] - h;
        let minus = f(&probe)?;
        probe[j] = x[j];
        if plus.dim() != n || minus.dim() != n {
            return Err(Error::DimensionMismatch {
                left: plus.dim(),
                right: n,
            });
        }
        let derivative = (&plus - &minus).scale(1.0 / (2.0 * h));
        let ej = Multivector::generator(n, j + 1)?;
        out += &ej.product(&derivative)?;
    }
    Ok(out)
}

/// `D(D f)(x)` by nesting the central differences.
pub fn dirac_squared<F>(f: F, x: &[f64], spec: &DiracSpec) -> Result<Multivector>
where
    F: Fn(&[f64]) -> Multivector,
{
    dirac_apply_fallible(|p| dirac_apply(&f, p, spec), x, spec)
}

/// `D_x E(x - y)`, which vanishes for `x != y` up to the `O(h^2)` stencil error.
pub fn kernel_dirac_residual(x: &[f64], y: &[f64], spec: &DiracSpec) -> Result<Multivector> {
    dirac_apply_fallible(|p| Ok(cauchy_kernel(p, y)?.to_multivector()), x, spec)
}

/// `D_y E(x - y)`, the same check in the second variable.
pub fn kernel_dirac_residual_y(x: &[f64], y: &[f64], spec: &DiracSpec) -> Result<Multivector> {
    dirac_apply_fallible(|p| Ok(cauchy_kernel(x, p)?.to_multivector()), y, spec)
}

/// Ratio between `E(x)` and the finite-difference `D` of the harmonic
/// potential (`log|x|` for `n = 2`, `|x|^(2-n)` otherwise), fitted over the
/// vector components. The ratio is independent of `x`; see
/// [`super::kernel_potential_constant`].
pub fn check_kernel_potential(x: &[f64], spec: &DiracSpec) -> Result<f64> {
    let n = x.len();
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let origin = vec![0.0; n];
    let kernel = cauchy_kernel(x, &origin)?;
    let dphi = dirac_apply_fallible(
        |p| Multivector::scalar(n, harmonic_potential(p)?),
        x,
        spec,
    )?;
    let dphi = CliffordVector::from_multivector(&dphi);
    let num: f64 = kernel.components().iter().zip(dphi.components()).map(|(a, b)| a * b).sum();
    let den = dphi.norm_squared();
    if den == 0.0 {
        return Err(Error::Singularity);
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::kernel_potential_constant;

    #[test]
    fn gradient_of_coordinate() {
        let d = dirac_apply(|p| Multivector::scalar(3, p[0]).unwrap(), &[0.3, 0.1, -0.2], &DiracSpec::default())
            .unwrap();
        let e1 = Multivector::generator(3, 1).unwrap();
        assert!(d.max_abs_diff(&e1).unwrap() < 1e-10);
    }

    #[test]
    fn dirac_squared_is_minus_laplacian_on_square() {
        let spec = DiracSpec::with_step(1e-3);
        let d2 = dirac_squared(|p| Multivector::scalar(3, p[0] * p[0]).unwrap(), &[0.4, -0.2, 0.7], &spec).unwrap();
        let minus_two = Multivector::scalar(3, -2.0).unwrap();
        assert!(d2.max_abs_diff(&minus_two).unwrap() < 1e-6, "{d2}");
    }

    #[test]
    fn kernel_is_clifford_analytic() {
        let spec = DiracSpec::default();
        let y = [0.2, -0.1, 0.3];
        let x = [0.9, 0.4, -0.2];
        assert!(kernel_dirac_residual(&x, &y, &spec).unwrap().norm() < 1e-6);
        assert!(kernel_dirac_residual_y(&x, &y, &spec).unwrap().norm() < 1e-6);
    }

    #[test]
    fn kernel_potential_ratio_is_constant() {
        let spec = DiracSpec::default();
        for n in 2..=4 {
            let mut x: Vec<f64> = (0..n).map(|k| 0.3 + 0.2 * k as f64).collect();
            let r1 = check_kernel_potential(&x, &spec).unwrap();
            x.iter_mut().for_each(|v| *v *= -2.5);
            let r2 = check_kernel_potential(&x, &spec).unwrap();
            assert!((r1 - kernel_potential_constant(n)).abs() < 1e-6, "n={n} r1={r1}");
            assert!((r1 - r2).abs() < 1e-6, "n={n}");
        }
        assert_eq!(check_kernel_potential(&[0.0, 0.0], &spec), Err(Error::Singularity));
    }

    #[test]
    fn bad_step_rejected() {
        let f = |p: &[f64]| Multivector::scalar(2, p[0]).unwrap();
        assert!(dirac_apply(f, &[0.0, 0.0], &DiracSpec::with_step(0.0)).is_err());
    }
}
