//! Cartan types for the simple Lie algebras handled by this crate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Series label of a simple Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A valid (series, rank) pair.
///
/// Supported: A (rank >= 1), B (rank >= 2), C (rank >= 2), D (rank >= 3),
/// G2. Rank is capped at 8 so the exterior-algebra layer can index basis
/// elements with 64-bit masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidCartanType(format!(
                "{series}{rank} (B needs rank >= 2, C rank >= 2, D rank >= 3, G exactly 2)"
            )));
        }
        if rank > 8 {
            return Err(Error::InvalidCartanType(format!("{series}{rank}: rank > 8 unsupported")));
        }
        Ok(CartanType { series, rank })
    }

    /// Dimension of the algebra of this type.
    pub fn dimension(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * n + 2 * n,
            Series::B | Series::C => 2 * n * n + n,
            Series::D => 2 * n * n - n,
            Series::G => 14,
        }
    }

    /// Number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        (self.dimension() - self.rank) / 2
    }

    /// Closed-form dual Coxeter number, used as a cross-check of the
    /// highest-coroot expansion.
    pub fn dual_coxeter_table(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n + 1,
            Series::B => 2 * n - 1,
            Series::C => n + 1,
            Series::D => 2 * n - 2,
            Series::G => 4,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('G') => Series::G,
            _ => return Err(Error::InvalidCartanType(format!("cannot parse '{s}'"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidCartanType(format!("cannot parse rank in '{s}'")))?;
        CartanType::new(series, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_and_invalid_pairs() {
        assert!(CartanType::new(Series::A, 1).is_ok());
        assert!(CartanType::new(Series::B, 2).is_ok());
        assert!(CartanType::new(Series::B, 1).is_err());
        assert!(CartanType::new(Series::C, 1).is_err());
        assert!(CartanType::new(Series::D, 2).is_err());
        assert!(CartanType::new(Series::D, 3).is_ok());
        assert!(CartanType::new(Series::G, 2).is_ok());
        assert!(CartanType::new(Series::G, 3).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["A1", "A2", "B2", "C3", "D4", "G2"] {
            let t: CartanType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert_eq!("g2".parse::<CartanType>().unwrap().to_string(), "G2");
        assert!("E6".parse::<CartanType>().is_err());
        assert!("A0".parse::<CartanType>().is_err());
        assert!("B".parse::<CartanType>().is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(CartanType::new(Series::A, 1).unwrap().dimension(), 3);
        assert_eq!(CartanType::new(Series::A, 2).unwrap().dimension(), 8);
        assert_eq!(CartanType::new(Series::B, 2).unwrap().dimension(), 10);
        assert_eq!(CartanType::new(Series::G, 2).unwrap().dimension(), 14);
        assert_eq!(CartanType::new(Series::D, 4).unwrap().dimension(), 28);
    }
}
