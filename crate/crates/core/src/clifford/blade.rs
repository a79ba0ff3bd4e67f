use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest algebra dimension accepted anywhere in the crate. Coefficients are
/// stored densely, so `C(n)` costs `2^n` floats per element.
pub const MAX_DIM: usize = 12;

/// A canonical basis element `e_{j1} e_{j2} ... e_{jl}` with `j1 < j2 < ... < jl`.
///
/// Bit `j - 1` of the mask is set when generator `e_j` is present; the empty
/// mask is the identity element `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BasisBlade(u32);

impl BasisBlade {
    pub const ONE: BasisBlade = BasisBlade(0);

    pub const fn from_mask(mask: u32) -> Self {
        BasisBlade(mask)
    }

    /// The generator `e_index`, with `index` counted from 1.
    pub fn generator(index: usize) -> Result<Self> {
        if index == 0 || index > MAX_DIM {
            return Err(Error::IndexOutOfRange {
                index,
                dim: MAX_DIM,
            });
        }
        Ok(BasisBlade(1 << (index - 1)))
    }

    /// Builds a blade from generator indices, which may be given in any order
    /// but must be distinct. The returned sign is the parity of the sort.
    pub fn from_indices(indices: &[usize]) -> Result<(Self, f64)> {
        let mut blade = BasisBlade::ONE;
        let mut sign = 1.0;
        for &index in indices {
            let g = BasisBlade::generator(index)?;
            if blade.0 & g.0 != 0 {
                return Err(Error::Domain(format!("repeated generator e{index}")));
            }
            let (next, s) = blade.product_unchecked(g);
            blade = next;
            sign *= s;
        }
        Ok((blade, sign))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Highest generator index present (0 for the identity).
    pub fn max_index(self) -> usize {
        (u32::BITS - self.0.leading_zeros()) as usize
    }

    /// Generator indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..u32::BITS as usize).filter(move |&bit| mask & (1 << bit) != 0).map(|bit| bit + 1)
    }

    /// Product of two blades in `C(dim)`, returning the canonical blade and the
    /// sign picked up from anticommutations and from `e_j^2 = -1`.
    pub fn product(self, other: BasisBlade, dim: usize) -> Result<(BasisBlade, f64)> {
        for blade in [self, other] {
            if blade.max_index() > dim {
                return Err(Error::IndexOutOfRange {
                    index: blade.max_index(),
                    dim,
                });
            }
        }
        Ok(self.product_unchecked(other))
    }

    #[inline]
    pub(crate) fn product_unchecked(self, other: BasisBlade) -> (BasisBlade, f64) {
        // Every generator of `self` must move past each lower-indexed generator
        // of `other`; each crossing is one anticommutation.
        let mut a = self.0 >> 1;
        let mut crossings = 0;
        while a != 0 {
            crossings += (a & other.0).count_ones();
            a >>= 1;
        }
        let contractions = (self.0 & other.0).count_ones();
        let sign = if (crossings + contractions).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        (BasisBlade(self.0 ^ other.0), sign)
    }
}

impl fmt::Display for BasisBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for index in self.indices() {
            write!(f, "e{index}")?;
        }
        Ok(())
    }
}

impl FromStr for BasisBlade {
    type Err = Error;

    /// Parses `"1"` or a canonical string such as `"e1e3"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(BasisBlade::ONE);
        }
        let body = s
            .strip_prefix('e')
            .ok_or_else(|| Error::Domain(format!("malformed blade {s:?}")))?;
        let indices = body
            .split('e')
            .map(|part| {
                part.parse::<usize>()
                    .map_err(|_| Error::Domain(format!("malformed blade {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!("blade {s:?} is not canonically ordered")));
        }
        Ok(BasisBlade::from_indices(&indices)?.0)
    }
}
