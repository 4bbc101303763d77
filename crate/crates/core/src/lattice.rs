//! Integer lattice helpers: primitive weight vectors, exact rank and
//! determinants.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A primitive nonnegative integer weight vector `P = ᵗ(p_1, …, p_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    /// Normalizes to the primitive vector on the same ray.
    pub fn new(p: Vec<i64>) -> Result<Self> {
        if p.iter().any(|&x| x < 0) {
            return Err(Error::NegativeEntry);
        }
        let g = p.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self(p.into_iter().map(|x| x / g).collect()))
    }

    /// The unit vector `E_j` (0-based `j`).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut p = vec![0; n];
        p[j] = 1;
        Self(p)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// `P ≫ 0`.
    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    /// Index set `{j : p_j = 0}`, the recession directions of `Δ(P)`.
    pub fn zero_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.0[j] == 0).collect()
    }

    pub fn dot(&self, x: &[i64]) -> i64 {
        dot(&self.0, x)
    }

    /// Primitive vector on the ray of `self + other`.
    pub fn primitive_sum(&self, other: &Self) -> Self {
        let s = self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect();
        Self::new(s).expect("sum of nonnegative nonzero vectors")
    }

    pub fn scaled(&self, k: i64) -> Vec<i64> {
        self.0.iter().map(|x| x * k).collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `det[a b]` with `a`, `b` as columns.
pub fn det2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Exact rank of a list of integer vectors (fraction-free elimination).
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let (top, below) = m.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in below.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let (a, b) = (pivot[c], row[c]);
            for k in c..cols {
                row[k] = row[k] * a - pivot[k] * b;
            }
            let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Exact determinant of a square integer matrix (Bareiss).
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Gcd of all maximal minors of the `k × n` matrix with the given rows; the
/// rows extend to a unimodular basis of `ℤⁿ` iff this equals 1.
pub fn maximal_minor_gcd(rows: &[Vec<i64>]) -> i64 {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut g = 0i64;
    for cols in combinations(n, k) {
        let sub: Vec<Vec<i64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        g = g.gcd(&det(&sub));
    }
    g
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}
