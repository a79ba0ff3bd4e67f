use super::blade::BasisBlade;
use super::multivector::{check_dim, Multivector};
use crate::error::{Error, Result};

/// A grade-1 element `sum_j b_j e_j`. Component `k` of the slice is the
/// coefficient of `e_{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordVector {
    components: Vec<f64>,
}

impl CliffordVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        check_dim(components.len())?;
        Ok(Self { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn norm_squared(&self) -> f64 {
        self.components.iter().map(|b| b * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// The square of the vector in the algebra, which is the real number
    /// `-sum_j b_j^2`.
    pub fn square(&self) -> f64 {
        -self.norm_squared()
    }

    /// Inverse `-b / |b|^2`; fails only for the zero vector.
    pub fn inverse(&self) -> Result<CliffordVector> {
        let n2 = self.norm_squared();
        if n2 == 0.0 {
            return Err(Error::NotInvertible);
        }
        Ok(self.scale(-1.0 / n2))
    }

    pub fn scale(&self, factor: f64) -> CliffordVector {
        CliffordVector {
            components: self.components.iter().map(|b| b * factor).collect(),
        }
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut mv = Multivector::zero(self.dim()).expect("dimension checked at construction");
        for (k, &b) in self.components.iter().enumerate() {
            mv.set(BasisBlade::from_mask(1 << k), b)
                .expect("index within dimension");
        }
        mv
    }

    /// Grade-1 part of a multivector; other grades are discarded.
    pub fn from_multivector(mv: &Multivector) -> CliffordVector {
        CliffordVector {
            components: (0..mv.dim())
                .map(|k| mv.get(BasisBlade::from_mask(1 << k)))
                .collect(),
        }
    }
}

impl From<&CliffordVector> for Multivector {
    fn from(v: &CliffordVector) -> Self {
        v.to_multivector()
    }
}

/// An element `b_0 + sum_j b_j e_j` of the span of `1, e_1, ..., e_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Paravector {
    scalar: f64,
    vector: Vec<f64>,
}

impl Paravector {
    pub fn new(scalar: f64, vector: Vec<f64>) -> Result<Self> {
        check_dim(vector.len())?;
        Ok(Self { scalar, vector })
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn scalar(&self) -> f64 {
        self.scalar
    }

    pub fn vector(&self) -> &[f64] {
        &self.vector
    }

    /// `b* = b_0 - sum_j b_j e_j`.
    pub fn conjugate(&self) -> Paravector {
        Paravector {
            scalar: self.scalar,
            vector: self.vector.iter().map(|b| -b).collect(),
        }
    }

    /// `b b* = sum_{j=0..n} b_j^2`.
    pub fn norm_squared(&self) -> f64 {
        self.scalar * self.scalar + self.vector.iter().map(|b| b * b).sum::<f64>()
    }

    pub fn inverse(&self) -> Result<Paravector> {
        let n2 = self.norm_squared();
        if n2 == 0.0 {
            return Err(Error::NotInvertible);
        }
        let conj = self.conjugate();
        Ok(Paravector {
            scalar: conj.scalar / n2,
            vector: conj.vector.iter().map(|b| b / n2).collect(),
        })
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut mv = CliffordVector {
            components: self.vector.clone(),
        }
        .to_multivector();
        mv.set(BasisBlade::ONE, self.scalar)
            .expect("scalar blade always valid");
        mv
    }
}

impl From<&Paravector> for Multivector {
    fn from(p: &Paravector) -> Self {
        p.to_multivector()
    }
}

impl From<CliffordVector> for Paravector {
    fn from(v: CliffordVector) -> Self {
        Paravector {
            scalar: 0.0,
            vector: v.components,
        }
    }
}
