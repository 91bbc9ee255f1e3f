use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Outcome of one symmetric/antisymmetric projective measurement on a
/// subsystem pair: '+' for the symmetric subspace, '-' for the antisymmetric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One sign per measured subsystem pair, e.g. "+-+" for three pairs.
///
/// Ordering is lexicographic with '+' before '-', which is the order used
/// everywhere outcomes are enumerated or serialized.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignString(Vec<Sign>);

impl SignString {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self(signs)
    }

    /// The all-'+' string of length `n`.
    pub fn all_plus(n: usize) -> Self {
        Self(vec![Sign::Plus; n])
    }

    /// Decodes bit `1` as '-' with position 0 in the most significant bit,
    /// so ascending `bits` enumerates strings in lexicographic order.
    pub fn from_bits(bits: usize, n: usize) -> Self {
        let signs = (0..n)
            .map(|p| {
                if bits >> (n - 1 - p) & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        Self(signs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == Sign::Minus).count()
    }

    /// True when the number of '-' entries is even (zero included).
    pub fn is_even(&self) -> bool {
        self.minus_count().is_multiple_of(2)
    }

    pub fn is_all_plus(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Plus)
    }
}

impl fmt::Display for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(Error::InvalidSubset {
                    reason: format!("invalid sign character {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(signs))
    }
}
