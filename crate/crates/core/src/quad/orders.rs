use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::class_group::{class_number, h_inverted};
use super::norm::{l_p_norm_length, NormLength};
use super::{discriminants_up_to, Discriminant, QuadError};
use crate::arith::{is_prime, kronecker};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        })
    }
}

/// Decomposition of the prime `l` in the order, for `l` coprime to the conductor.
pub fn splitting_symbol(disc: &Discriminant, l: u64) -> Result<Splitting, QuadError> {
    if !is_prime(l) {
        return Err(QuadError::NotPrime(l));
    }
    if !disc.is_maximal_at(l) {
        return Err(QuadError::ConductorDivisible {
            d: disc.value(),
            p: l,
        });
    }
    Ok(match kronecker(disc.value(), l as i64).expect("l != 0") {
        1 => Splitting::Split,
        -1 => Splitting::Inert,
        _ => Splitting::Ramified,
    })
}

/// Residue degree of the unique prime above a non-decomposed `l`.
pub fn inertia_degree(disc: &Discriminant, l: u64) -> Result<u32, QuadError> {
    match splitting_symbol(disc, l)? {
        Splitting::Inert => Ok(2),
        Splitting::Ramified => Ok(1),
        Splitting::Split => Err(QuadError::SplitPrime { d: disc.value(), l }),
    }
}

/// Product of inertia degrees over `s`, i.e. `2^(number of inert l)`.
pub fn s_inertia_degree(disc: &Discriminant, s: &[u64]) -> Result<u64, QuadError> {
    s.iter()
        .try_fold(1u64, |acc, &l| Ok(acc * inertia_degree(disc, l)? as u64))
}

/// Everything the class-number sums need about one order in `L(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderClassData {
    pub disc: Discriminant,
    pub h: u64,
    pub splitting: Vec<(u64, Splitting)>,
    pub f_s: u64,
    pub l_p: NormLength,
    pub h_inv: u64,
}

impl OrderClassData {
    pub fn build(disc: Discriminant, s: &[u64], p: u64, k_max: u32) -> Result<Self, QuadError> {
        let splitting = s
            .iter()
            .map(|&l| Ok((l, splitting_symbol(&disc, l)?)))
            .collect::<Result<Vec<_>, QuadError>>()?;
        let f_s = s_inertia_degree(&disc, s)?;
        let h = class_number(&disc);
        let l_p = l_p_norm_length(&disc, p, k_max)?;
        let h_inv = h_inverted(&disc, p)?;
        Ok(OrderClassData {
            disc,
            h,
            splitting,
            f_s,
            l_p,
            h_inv,
        })
    }
}

fn validate_primes(s: &[u64], p: u64) -> Result<(), QuadError> {
    if !is_prime(p) {
        return Err(QuadError::NotPrime(p));
    }
    for &l in s {
        if !is_prime(l) {
            return Err(QuadError::NotPrime(l));
        }
        if l == p {
            return Err(QuadError::PrimeInS(p));
        }
    }
    Ok(())
}

/// Whether the order of discriminant `d` belongs to `L(S)` and is maximal at `p`:
/// every `l` in `S` is non-decomposed in the field and the order is maximal at `S` and `p`.
pub fn in_family(disc: &Discriminant, s: &[u64], p: u64) -> bool {
    disc.is_maximal_at(p)
        && s.iter().all(|&l| {
            disc.is_maximal_at(l) && kronecker(disc.fundamental(), l as i64).expect("l != 0") != 1
        })
}

/// All orders with `|D| <= d_bound` in the family for `(S, p)`, sorted by `|D|`.
pub fn enumerate_l_s(
    s: &[u64],
    p: u64,
    d_bound: u64,
    k_max: u32,
) -> Result<Vec<OrderClassData>, QuadError> {
    validate_primes(s, p)?;
    if d_bound > i64::MAX as u64 {
        return Err(QuadError::BoundTooLarge(d_bound));
    }
    let candidates: Vec<Discriminant> = discriminants_up_to(d_bound)
        .map(|d| Discriminant::new(d).expect("valid by construction"))
        .filter(|disc| in_family(disc, s, p))
        .collect();
    let out = candidates
        .into_par_iter()
        .map(|disc| OrderClassData::build(disc, s, p, k_max))
        .collect::<Result<Vec<_>, _>>()?;
    check_unit_exclusion(s, &out)?;
    Ok(out)
}

/// With some `l = 1 mod 12` in `S`, both `l` splits in `Q(i)` and `Q(sqrt(-3))`,
/// so `D = -3, -4` must never appear.
fn check_unit_exclusion(s: &[u64], data: &[OrderClassData]) -> Result<(), QuadError> {
    if s.iter().any(|l| l % 12 == 1) {
        if let Some(bad) = data.iter().find(|o| matches!(o.disc.value(), -3 | -4)) {
            return Err(QuadError::InvariantViolated(format!(
                "D={} emitted although S contains a prime = 1 mod 12",
                bad.disc
            )));
        }
    }
    Ok(())
}
