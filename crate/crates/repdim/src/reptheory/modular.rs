//! Linear algebra over the modular prime used by the character engine:
//! square matrices, invariant-subspace restriction, kernels, and eigenspace
//! splitting. The modulus is prime and small enough that products fit u64.

use crate::ffield::modpow;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub(crate) struct ModPrime {
    pub l: u64,
}

impl ModPrime {
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.l
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.l - b) % self.l
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.l != 0);
        modpow(a, self.l - 2, self.l)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        modpow(a, e, self.l)
    }
}

/// Dense square matrix over F_l, row-major.
#[derive(Debug, Clone)]
pub(crate) struct ModMatrix {
    pub n: usize,
    pub a: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(n: usize) -> Self {
        ModMatrix { n, a: vec![0; n * n] }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut u64 {
        &mut self.a[i * self.n + j]
    }

    /// Matrix-times-column-vector.
    pub fn apply(&self, m: ModPrime, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for (i, slot) in out.iter_mut().enumerate() {
            let row = &self.a[i * self.n..(i + 1) * self.n];
            let mut acc = 0u64;
            for (&c, &vj) in row.iter().zip(v) {
                if c != 0 && vj != 0 {
                    acc = m.add(acc, m.mul(c, vj));
                }
            }
            *slot = acc;
        }
        out
    }
}

/// Restriction of `op` to the span of `basis` (column vectors): the s x s
/// matrix T with op * basis[j] = sum_i T[i][j] basis[i]. All images are
/// solved for in one elimination of the system [basis | images]. Errors
/// when the span is not invariant, which for commuting class matrices
/// means an engine bug.
pub(crate) fn restrict(op: &ModMatrix, basis: &[Vec<u64>], m: ModPrime) -> Result<ModMatrix> {
    let s = basis.len();
    let c = op.n;
    let cols = 2 * s;
    let mut a = vec![0u64; c * cols];
    for (j, b) in basis.iter().enumerate() {
        let y = op.apply(m, b);
        for i in 0..c {
            a[i * cols + j] = b[i];
            a[i * cols + s + j] = y[i];
        }
    }
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..s {
        let p = (row..c).find(|&r| a[r * cols + col] != 0);
        let p = match p {
            Some(p) => p,
            None => continue,
        };
        if p != row {
            for j in 0..cols {
                a.swap(row * cols + j, p * cols + j);
            }
        }
        let inv = m.inv(a[row * cols + col]);
        for j in col..cols {
            a[row * cols + j] = m.mul(a[row * cols + j], inv);
        }
        for r in 0..c {
            if r == row {
                continue;
            }
            let f = a[r * cols + col];
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let sub = m.mul(f, a[row * cols + j]);
                a[r * cols + j] = m.sub(a[r * cols + j], sub);
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if pivot_cols.len() != s {
        return Err(Error::Internal("subspace basis is linearly dependent".into()));
    }
    // consistency: image columns must be zero outside the pivot rows
    for r in row..c {
        for j in 0..s {
            if a[r * cols + s + j] != 0 {
                return Err(Error::Internal(
                    "class-matrix image left an invariant subspace".into(),
                ));
            }
        }
    }
    let mut t = ModMatrix::zeros(s);
    for (r, &col) in pivot_cols.iter().enumerate() {
        for j in 0..s {
            *t.at_mut(col, j) = a[r * cols + s + j];
        }
    }
    Ok(t)
}

/// Nullspace basis of `t`, as column vectors, in a deterministic order
/// (free columns ascending).
pub(crate) fn kernel_basis(t: &ModMatrix, m: ModPrime) -> Vec<Vec<u64>> {
    let n = t.n;
    let mut a = t.a.clone();
    let mut pivot_col_of_row = Vec::new();
    let mut is_pivot_col = vec![false; n];
    let mut row = 0;
    for col in 0..n {
        let p = (row..n).find(|&r| a[r * n + col] != 0);
        let p = match p {
            Some(p) => p,
            None => continue,
        };
        if p != row {
            for j in 0..n {
                a.swap(row * n + j, p * n + j);
            }
        }
        let inv = m.inv(a[row * n + col]);
        for j in col..n {
            a[row * n + j] = m.mul(a[row * n + j], inv);
        }
        for r in 0..n {
            if r == row {
                continue;
            }
            let f = a[r * n + col];
            if f == 0 {
                continue;
            }
            for j in col..n {
                let sub = m.mul(f, a[row * n + j]);
                a[r * n + j] = m.sub(a[r * n + j], sub);
            }
        }
        pivot_col_of_row.push(col);
        is_pivot_col[col] = true;
        row += 1;
    }
    let mut kernel = Vec::new();
    for free in 0..n {
        if is_pivot_col[free] {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = m.sub(0, a[r * n + free]);
        }
        kernel.push(v);
    }
    kernel
}
