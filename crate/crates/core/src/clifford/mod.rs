//! Arithmetic in the real Clifford algebra `C(n)`: generators `e_1..e_n` with
//! `e_j e_k = -e_k e_j` for `j != k` and `e_j^2 = -1`.
//!
//! Blade signs are computed exactly from bitmasks; only the coefficients are
//! floating point. Vectors and paravectors are thin views that promote to
//! [`Multivector`] for products.

mod blade;
mod multivector;
mod vector;

pub use blade::{BasisBlade, MAX_DIM};
pub use multivector::Multivector;
pub use vector::{CliffordVector, Paravector};
