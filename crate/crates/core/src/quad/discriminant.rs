use std::fmt;

use serde::{Deserialize, Serialize};

use super::QuadError;
use crate::arith::factorize;

/// Discriminant `D = f^2 d_F` of an imaginary quadratic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Discriminant {
    value: i64,
    fundamental: i64,
    conductor: u64,
}

impl Discriminant {
    /// Splits `d` into fundamental discriminant and conductor.
    pub fn new(d: i64) -> Result<Self, QuadError> {
        if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(QuadError::InvalidDiscriminant(d));
        }
        let fact = factorize(d.unsigned_abs()).map_err(|_| QuadError::InvalidDiscriminant(d))?;
        // |d| = square_part^2 * core with core squarefree
        let mut square_part = 1u64;
        let mut core = 1u64;
        for &(q, e) in fact.factors() {
            square_part *= q.pow(e / 2);
            if e % 2 == 1 {
                core *= q;
            }
        }
        let core = -(core as i64);
        let (fundamental, conductor) = if core.rem_euclid(4) == 1 {
            (core, square_part)
        } else {
            debug_assert!(square_part.is_multiple_of(2));
            (4 * core, square_part / 2)
        };
        Ok(Discriminant {
            value: d,
            fundamental,
            conductor,
        })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn abs(&self) -> u64 {
        self.value.unsigned_abs()
    }

    pub fn fundamental(&self) -> i64 {
        self.fundamental
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_fundamental(&self) -> bool {
        self.conductor == 1
    }

    /// True iff the order is maximal at `p`, i.e. `p` does not divide the conductor.
    pub fn is_maximal_at(&self, p: u64) -> bool {
        !self.conductor.is_multiple_of(p)
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Valid negative discriminants with `|D| <= bound`, in order of increasing `|D|`.
pub fn discriminants_up_to(bound: u64) -> impl Iterator<Item = i64> {
    (3..=bound as i64)
        .map(|n| -n)
        .filter(|d| matches!(d.rem_euclid(4), 0 | 1))
}
