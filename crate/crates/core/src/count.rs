//! Exact spanning-tree counting through the Laplacian.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::graph::Graph;

/// Arbitrary-precision nonnegative count. Serialized as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

/// Number of spanning trees of `g`: the determinant of the Laplacian with
/// its last row and column removed. Disconnected graphs give 0; graphs on
/// at most one vertex give 1.
pub fn spanning_tree_count(g: &Graph) -> BigCount {
    let n = g.vertex_count();
    if n <= 1 {
        return BigCount(BigUint::one());
    }
    if !g.is_connected() {
        return BigCount::zero();
    }
    let size = n - 1;
    let mut minor = vec![vec![BigInt::zero(); size]; size];
    for (u, row) in minor.iter_mut().enumerate() {
        row[u] = BigInt::from(g.degree(u));
        for &v in g.neighbors(u).iter().filter(|&&v| v < size) {
            row[v] = BigInt::from(-1);
        }
    }
    let det = bareiss_determinant(minor);
    match det.into_parts() {
        (Sign::Minus, _) => unreachable!("Laplacian minors are positive semidefinite"),
        (_, magnitude) => BigCount(magnitude),
    }
}

/// Fraction-free Gaussian elimination. Every division is exact, so the
/// result is the exact integer determinant.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
