use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeMap, Serializer};

use super::blade::{BasisBlade, MAX_DIM};
use crate::error::{Error, Result};

/// An element of `C(n)`, stored as `2^n` coefficients indexed by blade mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<f64>,
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::UnsupportedDimension(dim))
    } else {
        Ok(())
    }
}

impl Multivector {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            coeffs: vec![0.0; 1 << dim],
        })
    }

    pub fn scalar(dim: usize, value: f64) -> Result<Self> {
        let mut mv = Self::zero(dim)?;
        mv.coeffs[0] = value;
        Ok(mv)
    }

    pub fn from_blade(dim: usize, blade: BasisBlade, coeff: f64) -> Result<Self> {
        let mut mv = Self::zero(dim)?;
        mv.set(blade, coeff)?;
        Ok(mv)
    }

    /// The generator `e_index` (1-based) in `C(dim)`.
    pub fn generator(dim: usize, index: usize) -> Result<Self> {
        let blade = BasisBlade::generator(index)?;
        Self::from_blade(dim, blade, 1.0)
    }

    /// Takes coefficients in blade-mask order; the length must be a power of two.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        let len = coeffs.len();
        if !len.is_power_of_two() {
            return Err(Error::Domain(format!(
                "coefficient count {len} is not a power of two"
            )));
        }
        let dim = len.trailing_zeros() as usize;
        check_dim(dim)?;
        Ok(Self { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, blade: BasisBlade) -> f64 {
        self.coeffs.get(blade.mask() as usize).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, blade: BasisBlade, coeff: f64) -> Result<()> {
        if blade.max_index() > self.dim {
            return Err(Error::IndexOutOfRange {
                index: blade.max_index(),
                dim: self.dim,
            });
        }
        self.coeffs[blade.mask() as usize] = coeff;
        Ok(())
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Nonzero terms in increasing blade-mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BasisBlade, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(mask, &c)| (BasisBlade::from_mask(mask as u32), c))
    }

    pub fn grade_part(&self, grade: u32) -> Multivector {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, &c)| if mask.count_ones() == grade { c } else { 0.0 })
            .collect();
        Multivector {
            dim: self.dim,
            coeffs,
        }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Multivector) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// True when every non-scalar coefficient is exactly zero.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0.0)
    }

    pub fn scale(&self, factor: f64) -> Multivector {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn check_same_dim(&self, other: &Multivector) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Geometric product, the bilinear extension of the blade product.
    pub fn product(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same_dim(other)?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let bi = BasisBlade::from_mask(i as u32);
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let (blade, sign) = bi.product_unchecked(BasisBlade::from_mask(j as u32));
                out[blade.mask() as usize] += sign * a * b;
            }
        }
        Ok(Multivector {
            dim: self.dim,
            coeffs: out,
        })
    }

    pub fn checked_add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same_dim(other)?;
        Ok(Multivector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.checked_add(&-other)
    }

    /// Map from blade strings (`"1"`, `"e1e3"`) to nonzero coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("multivector serializes to json")
    }
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        for (blade, coeff) in self.terms() {
            map.serialize_entry(&blade.to_string(), &coeff)?;
        }
        map.end()
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (blade, coeff) in self.terms() {
            if !first {
                f.write_str(if coeff < 0.0 { " - " } else { " + " })?;
            } else if coeff < 0.0 {
                f.write_str("-")?;
            }
            first = false;
            if blade == BasisBlade::ONE {
                write!(f, "{}", coeff.abs())?;
            } else {
                write!(f, "{}{}", coeff.abs(), blade)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

/// Panics on mismatched dimensions; use [`Multivector::checked_add`] otherwise.
impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.checked_add(rhs).expect("multivector dimensions must agree")
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.dim, rhs.dim, "multivector dimensions must agree");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.checked_sub(rhs).expect("multivector dimensions must agree")
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

/// Geometric product. Panics on mismatched dimensions; use
/// [`Multivector::product`] for a fallible version.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.product(rhs).expect("multivector dimensions must agree")
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        &self * &rhs
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}
