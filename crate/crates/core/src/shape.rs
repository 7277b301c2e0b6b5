use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted without an explicit override.
pub const DEFAULT_MAX_N: usize = 16;

/// Largest `n` on which the integer Smith-normal-form route runs by default.
pub const ORACLE_MAX_N: usize = 10;

/// The Grassmannian `Gr(k, n)` of `k`-planes in `n`-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawShape", into = "RawShape")]
pub struct GrassmannShape {
    k: usize,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct RawShape {
    k: usize,
    n: usize,
}

impl TryFrom<RawShape> for GrassmannShape {
    type Error = Error;
    fn try_from(raw: RawShape) -> Result<Self> {
        GrassmannShape::new(raw.k, raw.n)
    }
}

impl From<GrassmannShape> for RawShape {
    fn from(s: GrassmannShape) -> Self {
        RawShape { k: s.k, n: s.n }
    }
}

impl GrassmannShape {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidShape { k, n });
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns of the bounding box, `n - k`.
    pub fn width(&self) -> usize {
        self.n - self.k
    }

    /// Real dimension `k(n-k)`, the top cell degree.
    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn cell_count(&self) -> u64 {
        num_integer::binomial(self.n as u64, self.k as u64)
    }

    pub fn check_capacity(&self, max_n: usize) -> Result<()> {
        if self.n > max_n {
            return Err(Error::Capacity {
                k: self.k,
                n: self.n,
                max_n,
            });
        }
        Ok(())
    }

    /// Every shape with `2 <= n <= max_n`, ordered by `n` then `k`.
    pub fn all_up_to(max_n: usize) -> impl Iterator<Item = GrassmannShape> {
        (2..=max_n).flat_map(|n| (1..n).map(move |k| GrassmannShape { k, n }))
    }
}

impl fmt::Display for GrassmannShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.k, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_shapes() {
        assert!(GrassmannShape::new(0, 3).is_err());
        assert!(GrassmannShape::new(3, 3).is_err());
        assert!(GrassmannShape::new(4, 3).is_err());
        assert_eq!(GrassmannShape::new(2, 5).unwrap().dim(), 6);
    }

    #[test]
    fn enumerates_pairs() {
        assert_eq!(GrassmannShape::all_up_to(6).count(), 15);
        assert_eq!(GrassmannShape::all_up_to(2).count(), 1);
    }

    #[test]
    fn capacity_guard() {
        let s = GrassmannShape::new(8, 17).unwrap();
        assert!(matches!(
            s.check_capacity(DEFAULT_MAX_N),
            Err(Error::Capacity { .. })
        ));
        assert!(s.check_capacity(17).is_ok());
    }
}
