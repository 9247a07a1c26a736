//! Norm lengths: the least `k` such that `p^k` is the norm of a non-rational
//! element of the order of discriminant `D`.
//!
//! An element `(x + y sqrt(D))/2` of the order (with `x = D y mod 2`) has norm
//! `(x^2 - D y^2)/4`, so we look for `x^2 - D y^2 = 4 p^k` with `y != 0`.
//! Solutions with `p | gcd(x, y)` descend to level `k - 2`, so the least level
//! is reached either by a solution with `p` not dividing `y`, or by scaling a
//! level-0 solution (only possible for `|D| <= 4`). A solution with `p` not
//! dividing `y` lies in the lattice `x = t y (mod p^k)` for a square root `t`
//! of `D` modulo `p^k`. On that lattice `(x^2 - D y^2)/p^k` is the binary form
//! `(p^k, 2t, (t^2 - D)/p^k)` of discriminant `4D`, and the search reduces to
//! finding its representations of 4.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Discriminant, QuadError};
use crate::arith::is_prime;

/// `l_p(O)`, or a marker that no `k <= cap` works.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormLength {
    Finite(u32),
    Capped { cap: u32 },
}

impl NormLength {
    pub fn finite(&self) -> Option<u32> {
        match *self {
            NormLength::Finite(k) => Some(k),
            NormLength::Capped { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, NormLength::Finite(_))
    }
}

impl fmt::Display for NormLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormLength::Finite(k) => write!(f, "{k}"),
            NormLength::Capped { cap } => write!(f, "inf@{cap}"),
        }
    }
}

/// A solution of `x^2 - D y^2 = 4 p^k` with `y > 0` and `x = D y (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormWitness {
    pub k: u32,
    pub x: BigInt,
    pub y: BigInt,
}

/// Least `k <= k_max` with `p^k` the norm of a non-rational element of the order.
pub fn l_p_norm_length(disc: &Discriminant, p: u64, k_max: u32) -> Result<NormLength, QuadError> {
    Ok(match first_norm_witness(disc, p, k_max)? {
        Some(w) => NormLength::Finite(w.k),
        None => NormLength::Capped { cap: k_max },
    })
}

/// Witness for the least level `k <= k_max`, if any.
pub fn first_norm_witness(
    disc: &Discriminant,
    p: u64,
    k_max: u32,
) -> Result<Option<NormWitness>, QuadError> {
    if !is_prime(p) {
        return Err(QuadError::NotPrime(p));
    }
    if !disc.is_maximal_at(p) {
        return Err(QuadError::ConductorDivisible { d: disc.value(), p });
    }
    let d = BigInt::from(disc.value());
    let pb = BigInt::from(p);
    let level_zero = level_zero_solution(disc.value());

    let mut modulus = BigInt::one();
    let mut roots = vec![BigInt::zero()];
    for k in 1..=k_max {
        let next_modulus = &modulus * &pb;
        roots = lift_roots(&roots, &modulus, &next_modulus, &pb, &d);
        modulus = next_modulus;
        if roots.is_empty() && level_zero.is_none() {
            // no square roots mod p^k means none at any higher level either
            return Ok(None);
        }
        for t in &roots {
            if let Some((x, y)) = lattice_solution(&d, &modulus, t) {
                return Ok(Some(NormWitness { k, x, y }));
            }
        }
        if k % 2 == 0 {
            if let Some((x0, y0)) = level_zero {
                let scale = pb.pow(k / 2);
                return Ok(Some(NormWitness {
                    k,
                    x: BigInt::from(x0) * &scale,
                    y: BigInt::from(y0) * &scale,
                }));
            }
        }
    }
    Ok(None)
}

// x^2 - D y^2 = 4 with y > 0: only D = -3, -4.
fn level_zero_solution(d: i64) -> Option<(i64, i64)> {
    for y in 1..=2i64 {
        for x in 0..=2i64 {
            if x * x - d * y * y == 4 && (x - d * y).rem_euclid(2) == 0 {
                return Some((x, y));
            }
        }
    }
    None
}

fn lift_roots(
    roots: &[BigInt],
    modulus: &BigInt,
    next_modulus: &BigInt,
    p: &BigInt,
    d: &BigInt,
) -> Vec<BigInt> {
    let p_small = p.to_u64().expect("prime fits in u64");
    let target = d.mod_floor(next_modulus);
    let mut out = Vec::new();
    for r in roots {
        let mut cand = r.clone();
        for _ in 0..p_small {
            if (&cand * &cand).mod_floor(next_modulus) == target {
                out.push(cand.clone());
            }
            cand += modulus;
        }
    }
    out
}

// Reduces (A, B, C) while tracking the unimodular change of variables `basis`
// (columns are the images of the reduced coordinates).
struct TrackedForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    basis: [[BigInt; 2]; 2],
}

impl TrackedForm {
    fn reduce(&mut self) {
        let two = BigInt::from(2);
        loop {
            if self.b > self.a || self.b <= -&self.a {
                let r = (&self.a - &self.b).div_floor(&(&two * &self.a));
                self.c += &r * (&self.a * &r + &self.b);
                self.b += &two * &self.a * &r;
                // second column += r * first column
                for row in self.basis.iter_mut() {
                    let add = &row[0] * &r;
                    row[1] += add;
                }
            }
            if self.a > self.c {
                std::mem::swap(&mut self.a, &mut self.c);
                self.b = -&self.b;
                // (x, y) = (-v, u): new first column = old second, new second = -old first
                for row in self.basis.iter_mut() {
                    let first = std::mem::take(&mut row[0]);
                    row[0] = std::mem::take(&mut row[1]);
                    row[1] = -first;
                }
                continue;
            }
            return;
        }
    }

    /// All `(u, v)` in reduced coordinates with form value `n`.
    fn representations(&self, n: &BigInt) -> Vec<(BigInt, BigInt)> {
        // 4A f(u,v) = (2Au + Bv)^2 + (4AC - B^2) v^2
        let det = &self.a * &self.c * 4 - &self.b * &self.b;
        let rhs = &self.a * n * 4;
        let mut out = Vec::new();
        let mut v = BigInt::zero();
        loop {
            let rest: BigInt = &rhs - &det * &v * &v;
            if rest.is_negative() {
                break;
            }
            let s = rest.sqrt();
            if &s * &s == rest {
                let two_a = &self.a * 2;
                for sign_s in [s.clone(), -s.clone()] {
                    for vv in [v.clone(), -v.clone()] {
                        let num = &sign_s - &self.b * &vv;
                        if num.is_multiple_of(&two_a) {
                            let u = num / &two_a;
                            let pair = (u, vv);
                            if !out.contains(&pair) {
                                out.push(pair);
                            }
                        }
                    }
                }
            }
            v += 1;
        }
        out
    }
}

fn lattice_solution(d: &BigInt, modulus: &BigInt, t: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut form = TrackedForm {
        a: modulus.clone(),
        b: t * 2,
        c: (t * t - d) / modulus,
        basis: [
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ],
    };
    form.reduce();
    let four = BigInt::from(4);
    for (u, v) in form.representations(&four) {
        let a = &form.basis[0][0] * &u + &form.basis[0][1] * &v;
        let b = &form.basis[1][0] * &u + &form.basis[1][1] * &v;
        let x = &a * modulus + &b * t;
        let y = b;
        if y.is_zero() || !(&x - d * &y).is_even() {
            continue;
        }
        return Some(if y.is_negative() { (-x, -y) } else { (x, y) });
    }
    None
}
