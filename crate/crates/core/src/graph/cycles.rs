use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{hashimoto, GraphError, HashimotoMatrix, MultiGraph};
use crate::arith::{decimal_string, moebius};

/// Exact counts `N_m = tr(W^m)` and primitive counts `pi(m)` for `1 <= m <= m_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCountTable {
    n: Vec<BigUint>,
    pi: Vec<BigUint>,
    q: Option<u64>,
    delta: Option<u64>,
}

impl CycleCountTable {
    pub fn m_max(&self) -> usize {
        self.n.len()
    }

    /// `N_m`, 1-based.
    pub fn n(&self, m: usize) -> &BigUint {
        &self.n[m - 1]
    }

    /// `pi(m)`, 1-based.
    pub fn pi(&self, m: usize) -> &BigUint {
        &self.pi[m - 1]
    }

    /// `q` when the graph is `(q+1)`-regular.
    pub fn q(&self) -> Option<u64> {
        self.q
    }

    /// gcd of the tabulated `m` with `pi(m) > 0`; `None` if there are none.
    pub fn delta(&self) -> Option<u64> {
        self.delta
    }
}

// Row e of W^k for k = 1..m_max, keeping only the diagonal entry.
fn diagonal_walk(w: &HashimotoMatrix, e: usize, m_max: usize) -> Vec<BigUint> {
    let size = w.size();
    let mut v = vec![BigUint::zero(); size];
    v[e] = BigUint::one();
    let mut out = Vec::with_capacity(m_max);
    for _ in 0..m_max {
        let mut next = vec![BigUint::zero(); size];
        for (f, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &g in w.successors(f) {
                next[g] += x;
            }
        }
        v = next;
        out.push(v[e].clone());
    }
    out
}

/// `tr(W^m)` for `m = 1..=m_max`.
pub fn trace_powers(w: &HashimotoMatrix, m_max: usize) -> Vec<BigUint> {
    let per_edge: Vec<Vec<BigUint>> = (0..w.size())
        .into_par_iter()
        .map(|e| diagonal_walk(w, e, m_max))
        .collect();
    (0..m_max)
        .map(|k| per_edge.iter().map(|row| &row[k]).sum())
        .collect()
}

fn primitive_counts(n: &[BigUint]) -> Result<Vec<BigUint>, GraphError> {
    (1..=n.len())
        .map(|m| {
            let mut s = BigInt::zero();
            for d in (1..=m).filter(|d| m % d == 0) {
                let mu = moebius((m / d) as u64).expect("positive");
                s += BigInt::from(n[d - 1].clone()) * mu;
            }
            let (pi, r) = s.div_rem(&BigInt::from(m));
            if !r.is_zero() || pi.is_negative() {
                return Err(GraphError::InvariantViolated(format!(
                    "Moebius sum {s} at m={m} is not a non-negative multiple of m"
                )));
            }
            Ok(pi.magnitude().clone())
        })
        .collect()
}

pub fn cycle_counts(g: &MultiGraph, m_max: usize) -> Result<CycleCountTable, GraphError> {
    if m_max == 0 {
        return Err(GraphError::ZeroLength);
    }
    let w = hashimoto(g)?;
    let n = trace_powers(&w, m_max);
    let pi = primitive_counts(&n)?;
    let delta = (1..=m_max as u64)
        .filter(|&m| !pi[m as usize - 1].is_zero())
        .reduce(|a, b| a.gcd(&b));
    Ok(CycleCountTable {
        n,
        pi,
        q: g.regular_q(),
        delta,
    })
}

/// Closed non-backtracking tailless walks of length `m` with a marked start,
/// enumerated edge by edge on the undirected edge list.
pub fn brute_force_n(g: &MultiGraph, m: usize) -> Result<BigUint, GraphError> {
    g.check_md2()?;
    if m == 0 {
        return Err(GraphError::ZeroLength);
    }
    // incident[v] = (edge id, other endpoint)
    let mut incident = vec![Vec::new(); g.vertex_count()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push((i, v));
        incident[v].push((i, u));
    }

    fn extend(
        incident: &[Vec<(usize, usize)>],
        start: usize,
        first_edge: usize,
        at: usize,
        last_edge: usize,
        left: usize,
    ) -> u64 {
        if left == 0 {
            return u64::from(at == start && first_edge != last_edge);
        }
        incident[at]
            .iter()
            .filter(|&&(e, _)| e != last_edge)
            .map(|&(e, next)| extend(incident, start, first_edge, next, e, left - 1))
            .sum()
    }

    let mut total = 0u64;
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        for (a, b) in [(u, v), (v, u)] {
            total += extend(&incident, a, i, b, i, m - 1);
        }
    }
    Ok(BigUint::from(total))
}

/// One row of the prime-geodesic diagnostic `pi(m) m / q^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgtRow {
    pub m: usize,
    pub pi: BigUint,
    pub delta: Option<u64>,
    pub ratio_num: BigUint,
    pub ratio_den: BigUint,
    pub ratio: String,
}

fn pgt_row(table: &CycleCountTable, q: u64, m: usize) -> PgtRow {
    let pi = table.pi(m).clone();
    let delta = table.delta();
    let on_lattice = delta.is_some_and(|d| (m as u64).is_multiple_of(d));
    let (num, den) = if on_lattice {
        let num = &pi * BigUint::from(m);
        let den = BigUint::from(q).pow(m as u32);
        let g = num.gcd(&den);
        (num / &g, den / &g)
    } else {
        (BigUint::zero(), BigUint::one())
    };
    let ratio =
        decimal_string(&BigInt::from(num.clone()), &BigInt::from(den.clone()), 6).expect("q^m > 0");
    PgtRow {
        m,
        pi,
        delta,
        ratio_num: num,
        ratio_den: den,
        ratio,
    }
}

fn regular_connected(g: &MultiGraph) -> Result<u64, GraphError> {
    let q = g.regular_q().ok_or(GraphError::NotRegular)?;
    if !g.is_connected() {
        return Err(GraphError::NotConnected);
    }
    Ok(q)
}

/// `pi(m) m / q^m` for a connected `(q+1)`-regular graph; zero off the lattice `delta Z`.
pub fn pgt_ratio(g: &MultiGraph, m: usize) -> Result<PgtRow, GraphError> {
    let q = regular_connected(g)?;
    let table = cycle_counts(g, m)?;
    Ok(pgt_row(&table, q, m))
}

/// Rows `1..=m_max` from a single table; `delta` is taken over the whole table.
pub fn pgt_rows(
    g: &MultiGraph,
    m_max: usize,
) -> Result<(CycleCountTable, Vec<PgtRow>), GraphError> {
    let q = regular_connected(g)?;
    let table = cycle_counts(g, m_max)?;
    let rows = (1..=m_max).map(|m| pgt_row(&table, q, m)).collect();
    Ok((table, rows))
}

impl PgtRow {
    pub fn ratio_f64(&self) -> f64 {
        let scale = 1u64 << 40;
        let scaled = (&self.ratio_num * BigUint::from(scale)) / &self.ratio_den;
        scaled.to_f64().unwrap_or(f64::INFINITY) / scale as f64
    }
}
