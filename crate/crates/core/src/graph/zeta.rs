use rayon::prelude::*;

use super::{GraphError, IntPolynomial, MultiGraph, OrientedEdgeSet};

/// Non-backtracking edge operator, stored as successor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashimotoMatrix {
    succ: Vec<Vec<usize>>,
}

impl HashimotoMatrix {
    pub fn size(&self) -> usize {
        self.succ.len()
    }

    /// Directed edges `f` with `W[e][f] = 1`, increasing.
    pub fn successors(&self, e: usize) -> &[usize] {
        &self.succ[e]
    }

    pub fn ones(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        self.succ
            .iter()
            .map(|row| {
                let mut dense = vec![0u8; n];
                for &f in row {
                    dense[f] = 1;
                }
                dense
            })
            .collect()
    }
}

/// `W[e][f] = 1` iff `head(e) = tail(f)` and `f` is not the reversal of `e`.
pub fn hashimoto(g: &MultiGraph) -> Result<HashimotoMatrix, GraphError> {
    g.check_md2()?;
    let oe = OrientedEdgeSet::new(g);
    let out = oe.out_edges(g.vertex_count());
    let succ = (0..oe.len())
        .map(|e| {
            out[oe.head(e)]
                .iter()
                .copied()
                .filter(|&f| f != oe.bar(e))
                .collect()
        })
        .collect();
    Ok(HashimotoMatrix { succ })
}

/// Determinant over `Z[u]` by fraction-free elimination with row swaps on zero pivots.
pub fn determinant(mut m: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix");
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut negate = false;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        rest.par_iter_mut().for_each(|row| {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let num = &(pivot * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
        });
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// `det(I - uW)`, the reciprocal of the Ihara zeta function.
pub fn zeta_inverse_hashimoto(g: &MultiGraph) -> Result<IntPolynomial, GraphError> {
    let w = hashimoto(g)?;
    let n = w.size();
    let minus_u = IntPolynomial::from_i64(&[0, -1]);
    let mut m = vec![vec![IntPolynomial::zero(); n]; n];
    for (e, row) in m.iter_mut().enumerate() {
        row[e] = IntPolynomial::one();
        for &f in w.successors(e) {
            row[f] = &row[f] + &minus_u;
        }
    }
    Ok(determinant(m))
}

/// `(1 - u^2)^(m - n) det(I - Au + Qu^2)` with `Q = Deg - I`.
pub fn zeta_inverse_bass(g: &MultiGraph) -> Result<IntPolynomial, GraphError> {
    g.check_md2()?;
    let n = g.vertex_count();
    let a = g.adjacency();
    let deg = g.degrees();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let diag = i64::from(i == j);
                    let q = if i == j { deg[i] as i64 - 1 } else { 0 };
                    IntPolynomial::from_i64(&[diag, -a[i][j], q])
                })
                .collect()
        })
        .collect();
    // md2 gives 2m = sum of degrees >= 2n
    let excess = (g.edge_count() - n) as u32;
    let prefactor = IntPolynomial::from_i64(&[1, 0, -1]).pow(excess);
    Ok(&prefactor * &determinant(m))
}
