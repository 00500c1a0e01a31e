//! Exact linear algebra over prime fields F_p and degree-m extension
//! fields presented by irreducible polynomials.
//!
//! Everything here is deterministic. Determinants and ranks come from
//! Gaussian elimination over F_p (no floating point anywhere), and
//! irreducible polynomials are found by an exhaustive ascending scan with
//! trial division, so the same inputs always produce the same field
//! presentation.

use crate::{caps, Error, Result};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Deterministic primality test by trial division. Intended for the small
/// moduli used throughout the crate (field characteristics and the modular
/// primes of the character engine).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `base^exp mod m` by square-and-multiply. Requires `m^2` to fit in u64.
pub(crate) fn modpow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// A prime field F_p. Construction checks primality once; elements are then
/// produced through [`PrimeField::elem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Creates F_p, verifying that `p` is prime.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        // Keeps products of two reduced elements inside u64.
        if p >= 1 << 31 {
            return Err(Error::SizeGuard(format!("modulus {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The element `v mod p`.
    pub fn elem(&self, v: u64) -> Fp {
        Fp {
            value: v % self.p,
            modulus: self.p,
        }
    }

    /// The element of a (possibly negative) integer.
    pub fn elem_signed(&self, v: i64) -> Fp {
        let p = self.p as i64;
        self.elem(v.rem_euclid(p) as u64)
    }

    pub fn zero(&self) -> Fp {
        self.elem(0)
    }

    pub fn one(&self) -> Fp {
        self.elem(1)
    }
}

/// A fully reduced element of F_p. Elements carry their modulus; mixing
/// moduli in arithmetic is a programming error and panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Fp {
        assert!(self.value != 0, "inverse of zero in F_{}", self.modulus);
        Fp {
            value: modpow(self.value, self.modulus - 2, self.modulus),
            modulus: self.modulus,
        }
    }

    fn check_same(&self, other: &Fp) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli {} and {}",
            self.modulus, other.modulus
        );
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check_same(&rhs);
        Fp {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check_same(&rhs);
        Fp {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check_same(&rhs);
        Fp {
            value: self.value * rhs.value % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

/// A dense matrix over F_p, stored row-major. All entries share one modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<Fp>,
}

impl FqMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Fp>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let first = entries[0];
        if entries.iter().any(|e| e.modulus() != first.modulus()) {
            return Err(Error::Construction(
                "matrix entries with mixed moduli".into(),
            ));
        }
        Ok(FqMatrix {
            field: PrimeField { p: first.modulus() },
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from unreduced integer rows.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| field.elem(v)))
            .collect();
        FqMatrix::new(r, c, entries)
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        FqMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FqMatrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[Fp] {
        &self.entries
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out = FqMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn neg(&self) -> FqMatrix {
        FqMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| -e).collect(),
        }
    }

    pub fn add(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix shapes differ in add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a + b)
            .collect();
        FqMatrix::new(self.rows, self.cols, entries)
    }

    pub fn scale(&self, c: Fp) -> FqMatrix {
        FqMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * c).collect(),
        }
    }

    pub fn matmul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = self.field();
        let mut out = FqMatrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Determinant by Gaussian elimination over F_p. The pivot is always the
    /// first nonzero entry below the diagonal, so the computation is
    /// deterministic.
    pub fn det(&self) -> Result<Fp> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let field = self.field();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let pivot = match pivot {
                Some(r) => r,
                None => return Ok(field.zero()),
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = m[(col, j)];
                    m[(col, j)] = m[(pivot, j)];
                    m[(pivot, j)] = tmp;
                }
                det = -det;
            }
            let pv = m[(col, col)];
            det = det * pv;
            let pv_inv = pv.inv();
            for r in col + 1..n {
                let factor = m[(r, col)] * pv_inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    m[(r, j)] = m[(r, j)] - factor * m[(col, j)];
                }
            }
        }
        Ok(det)
    }

    /// Row rank over F_p.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| !m[(r, col)].is_zero());
            let pivot = match pivot {
                Some(r) => r,
                None => continue,
            };
            if pivot != rank {
                for j in 0..m.cols {
                    let tmp = m[(rank, j)];
                    m[(rank, j)] = m[(pivot, j)];
                    m[(pivot, j)] = tmp;
                }
            }
            let pv_inv = m[(rank, col)].inv();
            for r in rank + 1..m.rows {
                let factor = m[(r, col)] * pv_inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    m[(r, j)] = m[(r, j)] - factor * m[(rank, j)];
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// The linear combination `sum(coeffs[i] * mats[i])`.
    pub fn linear_combination(mats: &[FqMatrix], coeffs: &[Fp]) -> Result<FqMatrix> {
        if mats.is_empty() || mats.len() != coeffs.len() {
            return Err(Error::Dimension(
                "combination needs matching nonempty matrices and coefficients".into(),
            ));
        }
        let mut acc = mats[0].scale(coeffs[0]);
        for (m, &c) in mats.iter().zip(coeffs).skip(1) {
            acc = acc.add(&m.scale(c))?;
        }
        Ok(acc)
    }
}

impl Index<(usize, usize)> for FqMatrix {
    type Output = Fp;
    fn index(&self, idx: (usize, usize)) -> &Fp {
        assert!(idx.0 < self.rows && idx.1 < self.cols);
        &self.entries[idx.0 * self.cols + idx.1]
    }
}

impl IndexMut<(usize, usize)> for FqMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Fp {
        assert!(idx.0 < self.rows && idx.1 < self.cols);
        &mut self.entries[idx.0 * self.cols + idx.1]
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A monic irreducible polynomial of degree m over F_p, presenting the
/// extension field F_{p^m}. Coefficients are stored ascending by power and
/// irreducibility is re-verified at construction by exhaustive trial
/// division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreduciblePoly {
    p: u64,
    degree: u32,
    coeffs: Vec<u64>,
}

impl IrreduciblePoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if coeffs.is_empty() || *coeffs.last().unwrap() % p != 1 {
            return Err(Error::Construction("polynomial must be monic".into()));
        }
        let degree = (coeffs.len() - 1) as u32;
        if degree == 0 {
            return Err(Error::Construction("degree must be positive".into()));
        }
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        if !poly_is_irreducible(field, &coeffs) {
            return Err(Error::Construction(format!(
                "{} is reducible over F_{p}",
                render_poly(&coeffs)
            )));
        }
        Ok(IrreduciblePoly { p, degree, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficients ascending by power; the leading one is 1.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl fmt::Display for IrreduciblePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_poly(&self.coeffs))
    }
}

fn render_poly(coeffs: &[u64]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".into(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Remainder of `a` divided by monic `b`, both with ascending coefficients
/// reduced mod p.
fn poly_rem(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let p = field.modulus();
    debug_assert_eq!(*b.last().unwrap() % p, 1);
    let mut r: Vec<u64> = a.iter().map(|&c| c % p).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - db;
            for i in 0..db {
                let sub = lead * (b[i] % p) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn poly_eval(field: PrimeField, coeffs: &[u64], x: u64) -> u64 {
    let p = field.modulus();
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = (acc * x + c % p) % p;
    }
    acc
}

/// Exhaustive irreducibility test: no root in F_p and no monic divisor of
/// degree 2..=m/2.
fn poly_is_irreducible(field: PrimeField, coeffs: &[u64]) -> bool {
    let p = field.modulus();
    let m = coeffs.len() - 1;
    if m == 1 {
        return true;
    }
    for x in 0..p {
        if poly_eval(field, coeffs, x) == 0 {
            return false;
        }
    }
    for d in 2..=m / 2 {
        // all monic candidates of degree d
        let count = (p as u128).pow(d as u32) as u64;
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                g.push(rest % p);
                rest /= p;
            }
            g.push(1);
            let r = poly_rem(field, coeffs, &g);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `m`
/// over F_p. Candidates are scanned in ascending numeric order of their
/// non-leading coefficient tuple (constant term least significant), so the
/// result is reproducible bit for bit.
pub fn find_irreducible(p: u64, m: u32) -> Result<IrreduciblePoly> {
    if p > caps::PRIME_CAP {
        return Err(Error::SizeGuard(format!(
            "prime {p} exceeds cap {}",
            caps::PRIME_CAP
        )));
    }
    if m == 0 || m > caps::EXT_DEGREE_CAP {
        return Err(Error::SizeGuard(format!(
            "extension degree {m} outside 1..={}",
            caps::EXT_DEGREE_CAP
        )));
    }
    let field = PrimeField::new(p)?;
    let m = m as usize;
    let count = (p as u128).pow(m as u32);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut rest = idx;
        for _ in 0..m {
            coeffs.push((rest % p as u128) as u64);
            rest /= p as u128;
        }
        coeffs.push(1);
        if poly_is_irreducible(field, &coeffs) {
            return Ok(IrreduciblePoly {
                p,
                degree: m as u32,
                coeffs,
            });
        }
    }
    // A monic irreducible of every degree exists over every prime field.
    Err(Error::Internal(format!(
        "no irreducible of degree {m} over F_{p} found"
    )))
}

/// Matrices of multiplication by 1, x, ..., x^(m-1) on `F_p[x]/(poly)` in the
/// power basis. Every nonzero F_p-combination of the result is invertible,
/// which is exactly what the symplectic construction needs.
pub fn regular_embedding(poly: &IrreduciblePoly) -> Vec<FqMatrix> {
    let field = PrimeField::new(poly.p()).expect("modulus validated at construction");
    let m = poly.degree() as usize;
    // Multiplication by x: shift the power basis and reduce x^m.
    let mut companion = FqMatrix::zeros(field, m, m);
    for j in 0..m - 1 {
        companion[(j + 1, j)] = field.one();
    }
    for i in 0..m {
        companion[(i, m - 1)] = -field.elem(poly.coeffs()[i]);
    }
    let mut out = Vec::with_capacity(m);
    let mut acc = FqMatrix::identity(field, m);
    for _ in 0..m {
        out.push(acc.clone());
        acc = companion.matmul(&acc).expect("square matrices");
    }
    out
}
