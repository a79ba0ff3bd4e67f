use crate::clifford::{BasisBlade, CliffordVector, Multivector};
use crate::error::{Error, Result};

fn difference(x: &[f64], y: &[f64]) -> Result<(Vec<f64>, f64)> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let r = d.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(Error::Singularity);
    }
    Ok((d, r))
}

/// `E(x - y) = sum_j (x_j - y_j) e_j / |x - y|^n`.
pub fn cauchy_kernel(x: &[f64], y: &[f64]) -> Result<CliffordVector> {
    let (d, r) = difference(x, y)?;
    let scale = r.powi(-(d.len() as i32));
    CliffordVector::new(d.iter().map(|v| v * scale).collect())
}

/// `∂/∂x_axis E(x - y) = e_m / r^n - n d_m d / r^(n+2)` with `d = x - y`,
/// `r = |d|`, `m = axis + 1`. `axis` is 0-based.
pub fn cauchy_kernel_derivative(x: &[f64], y: &[f64], axis: usize) -> Result<CliffordVector> {
    let (d, r) = difference(x, y)?;
    let n = d.len();
    if axis >= n {
        return Err(Error::IndexOutOfRange { index: axis + 1, dim: n });
    }
    let rn = r.powi(-(n as i32));
    let cross = n as f64 * d[axis] * rn / (r * r);
    let mut comps: Vec<f64> = d.iter().map(|v| -cross * v).collect();
    comps[axis] += rn;
    CliffordVector::new(comps)
}

/// `log|x|` for `n = 2` and `|x|^(2-n)` for `n > 2`. The Cauchy kernel is
/// [`kernel_potential_constant`] times the Dirac operator applied to this.
pub fn harmonic_potential(x: &[f64]) -> Result<f64> {
    let n = x.len();
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(Error::Singularity);
    }
    Ok(if n == 2 { r.ln() } else { r.powi(2 - n as i32) })
}

/// `1` for `n = 2` and `1/(2-n)` for `n > 2`.
pub fn kernel_potential_constant(n: usize) -> f64 {
    if n == 2 {
        1.0
    } else {
        1.0 / (2.0 - n as f64)
    }
}

/// Image of the even part of a `C(2)` element under `1 -> 1`, `e1e2 -> i`.
pub fn even_part_to_complex(mv: &Multivector) -> Result<num_complex::Complex64> {
    if mv.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: mv.dim(),
            right: 2,
        });
    }
    Ok(num_complex::Complex64::new(
        mv.scalar_part(),
        mv.get(BasisBlade::from_mask(0b11)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        let k = cauchy_kernel(&[1.0, 0.0, 0.0], &[0.0; 3]).unwrap();
        assert_eq!(k.components(), &[1.0, 0.0, 0.0]);
        let k = cauchy_kernel(&[0.0, 2.0, 0.0], &[0.0; 3]).unwrap();
        assert_eq!(k.components(), &[0.0, 0.25, 0.0]);
        let (x, y) = ([0.3, -1.2, 0.7], [1.0, 0.4, -0.2]);
        let a = cauchy_kernel(&x, &y).unwrap();
        let b = cauchy_kernel(&y, &x).unwrap();
        assert_eq!(a, b.scale(-1.0));
        // |E(x-y)| = |x-y|^(1-n)
        let r: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        assert!((a.norm() - r.powi(-2)).abs() < 1e-15);
        assert_eq!(cauchy_kernel(&x, &x), Err(Error::Singularity));
    }

    #[test]
    fn derivative_examples() {
        let d = cauchy_kernel_derivative(&[1.0, 0.0, 0.0], &[0.0; 3], 0).unwrap();
        assert_eq!(d.components(), &[-2.0, 0.0, 0.0]);
        let d = cauchy_kernel_derivative(&[1.0, 0.0, 0.0], &[0.0; 3], 1).unwrap();
        assert_eq!(d.components(), &[-0.0, 1.0, -0.0]);
        assert!(cauchy_kernel_derivative(&[1.0, 0.0, 0.0], &[0.0; 3], 3).is_err());
        assert_eq!(
            cauchy_kernel_derivative(&[1.0, 0.0], &[1.0, 0.0], 0),
            Err(Error::Singularity)
        );
    }

    #[test]
    fn derivative_matches_central_differences() {
        let h = 1e-4;
        let y = [0.1, -0.3, 0.2, 0.05];
        for x in [[1.0, 0.2, -0.4, 0.3], [-0.6, 0.9, 0.1, 0.8]] {
            for axis in 0..4 {
                let mut xp = x;
                let mut xm = x;
                xp[axis] += h;
                xm[axis] -= h;
                let kp = cauchy_kernel(&xp, &y).unwrap();
                let km = cauchy_kernel(&xm, &y).unwrap();
                let exact = cauchy_kernel_derivative(&x, &y, axis).unwrap();
                for j in 0..4 {
                    let fd = (kp.components()[j] - km.components()[j]) / (2.0 * h);
                    let e = exact.components()[j];
                    assert!((fd - e).abs() <= 1e-6 * exact.norm(), "axis {axis} comp {j}");
                }
            }
        }
    }

    #[test]
    fn potentials() {
        assert_eq!(harmonic_potential(&[3.0, 4.0]).unwrap(), 5f64.ln());
        assert_eq!(harmonic_potential(&[0.0, 2.0, 0.0]).unwrap(), 0.5);
        assert!(harmonic_potential(&[0.0, 0.0]).is_err());
        assert!(harmonic_potential(&[1.0]).is_err());
        assert_eq!(kernel_potential_constant(3), -1.0);
        assert_eq!(kernel_potential_constant(4), -0.5);
    }
}
