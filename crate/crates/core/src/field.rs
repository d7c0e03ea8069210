//! Finite-field parameters.
//!
//! Presentation sizes depend on the field size `q` mostly through its
//! parity (commutator collapses differ in characteristic 2), and through a
//! handful of small-field exclusions.  `FieldParameter` validates that `q`
//! is a prime power and records its characteristic and parity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors arising from invalid field sizes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    /// The given number is not a prime power (or is 0 or 1).
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
}

/// Parity of the field size, the main branch point for relation counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Odd => write!(f, "odd"),
            Parity::Even => write!(f, "even"),
        }
    }
}

/// A validated prime power `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParameter {
    /// The field size.
    pub q: u64,
    /// The characteristic.
    pub p: u64,
    /// The exponent, so that `q = p^e`.
    pub e: u32,
}

impl FieldParameter {
    /// Validates `q` as a prime power and extracts `p` and `e`.
    pub fn new(q: u64) -> Result<FieldParameter, FieldError> {
        if q < 2 {
            return Err(FieldError::NotAPrimePower(q));
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(FieldError::NotAPrimePower(q));
        }
        Ok(FieldParameter { q, p, e })
    }

    /// Parity of the field: even exactly in characteristic 2.
    pub fn parity(&self) -> Parity {
        if self.p == 2 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// A representative admissible field of the given parity (odd 5, even 4),
    /// large enough to avoid every small-field special case.
    pub fn representative(parity: Parity) -> FieldParameter {
        match parity {
            Parity::Odd => FieldParameter { q: 5, p: 5, e: 1 },
            Parity::Even => FieldParameter { q: 4, p: 2, e: 2 },
        }
    }
}

impl std::fmt::Display for FieldParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}
