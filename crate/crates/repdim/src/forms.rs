//! Spaces of alternating bilinear forms on V = F_p^d and the data derived
//! from them: the evaluation map into coordinates of K*, the exhaustive
//! non-degeneracy census, symplectic subspaces built from extension fields,
//! and the bilinear maps whose antisymmetrization recovers the form space.
//!
//! Alternating means b(v,v) = 0. In odd characteristic this is equivalent
//! to skew-symmetry; over F_2 it is strictly stronger, so the zero-diagonal
//! condition is enforced independently of M^T = -M.

use crate::ffield::{find_irreducible, regular_embedding, Fp, FqMatrix, PrimeField};
use crate::{caps, Error, Result};

/// A k-dimensional space of alternating d x d forms over F_p, presented by
/// an ordered list of linearly independent generator matrices.
///
/// Coordinates of the dual space K* are always taken in the basis dual to
/// these generators, so the generator order is part of the data.
#[derive(Debug, Clone)]
pub struct FormSpace {
    field: PrimeField,
    dim_v: usize,
    generators: Vec<FqMatrix>,
}

impl FormSpace {
    pub fn new(field: PrimeField, generators: Vec<FqMatrix>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Construction("form space needs generators".into()));
        }
        let d = generators[0].rows();
        for (idx, m) in generators.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(Error::Dimension(format!(
                    "generator {idx} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::Construction(format!(
                    "generator {idx} has modulus {}, expected {}",
                    m.field().modulus(),
                    field.modulus()
                )));
            }
            if !is_alternating(m) {
                return Err(Error::Construction(format!(
                    "generator {idx} is not alternating"
                )));
            }
        }
        // independence: flatten each generator into a row of a k x d^2 matrix
        let rows: Vec<Vec<u64>> = generators
            .iter()
            .map(|m| m.entries().iter().map(Fp::value).collect())
            .collect();
        let flat = FqMatrix::from_rows(field, &rows)?;
        if flat.rank() != generators.len() {
            return Err(Error::Construction(
                "generators are linearly dependent".into(),
            ));
        }
        Ok(FormSpace {
            field,
            dim_v: d,
            generators,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    /// Dimension d of the underlying space V.
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    /// Dimension k of the form space itself.
    pub fn dim_k(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[FqMatrix] {
        &self.generators
    }

    /// The form `sum(c[i] * M[i])`.
    pub fn combination(&self, coeffs: &[Fp]) -> Result<FqMatrix> {
        if coeffs.len() != self.dim_k() {
            return Err(Error::Dimension(format!(
                "expected {} coefficients, got {}",
                self.dim_k(),
                coeffs.len()
            )));
        }
        FqMatrix::linear_combination(&self.generators, coeffs)
    }

    /// Evaluates the map V x V -> K*: the coordinate vector
    /// (v^T M_1 w, ..., v^T M_k w) in the basis dual to the generators.
    pub fn omega(&self, v: &[Fp], w: &[Fp]) -> Result<Vec<Fp>> {
        if v.len() != self.dim_v || w.len() != self.dim_v {
            return Err(Error::Dimension(format!(
                "vectors of length {} and {}, expected {}",
                v.len(),
                w.len(),
                self.dim_v
            )));
        }
        Ok(self
            .generators
            .iter()
            .map(|m| {
                let mut acc = self.field.zero();
                for (i, &vi) in v.iter().enumerate() {
                    if vi.is_zero() {
                        continue;
                    }
                    for (j, &wj) in w.iter().enumerate() {
                        acc = acc + vi * m[(i, j)] * wj;
                    }
                }
                acc
            })
            .collect())
    }

    /// Counts the nonzero combinations `sum(c[i] M[i])` with determinant zero,
    /// scanning all p^k - 1 of them. The space is symplectic exactly when
    /// the count is zero.
    pub fn degenerate_census(&self) -> Result<u64> {
        let p = self.p();
        let k = self.dim_k() as u32;
        let total = (p as u128).pow(k);
        if total > caps::CENSUS_CAP as u128 {
            return Err(Error::SizeGuard(format!(
                "census over {total} combinations exceeds cap {}",
                caps::CENSUS_CAP
            )));
        }
        let mut degenerate = 0;
        for code in 1..total as u64 {
            let coeffs = vector_from_index(self.field, self.dim_k(), code);
            let combo = self.combination(&coeffs)?;
            if combo.det()?.is_zero() {
                degenerate += 1;
            }
        }
        Ok(degenerate)
    }

    pub fn is_symplectic(&self) -> Result<bool> {
        Ok(self.degenerate_census()? == 0)
    }

    /// True when the intersection of the radicals of all generators is
    /// trivial, i.e. no nonzero v satisfies M v = 0 for every generator M.
    pub fn common_radical_trivial(&self) -> bool {
        let rows: Vec<Vec<u64>> = self
            .generators
            .iter()
            .flat_map(|m| {
                (0..m.rows()).map(move |i| (0..m.cols()).map(|j| m[(i, j)].value()).collect())
            })
            .collect();
        let stacked = FqMatrix::from_rows(self.field, &rows).expect("validated shapes");
        stacked.rank() == self.dim_v
    }
}

fn is_alternating(m: &FqMatrix) -> bool {
    let n = m.rows();
    if n != m.cols() {
        return false;
    }
    for i in 0..n {
        if !m[(i, i)].is_zero() {
            return false;
        }
        for j in 0..i {
            if m[(i, j)] != -m[(j, i)] {
                return false;
            }
        }
    }
    true
}

/// Digits of `index` in base p as a vector of field elements; coordinate 0
/// is the most significant digit, so ascending indices enumerate vectors in
/// lexicographic order.
pub(crate) fn vector_from_index(field: PrimeField, len: usize, index: u64) -> Vec<Fp> {
    let p = field.modulus();
    let mut out = vec![field.zero(); len];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = field.elem(rest % p);
        rest /= p;
    }
    out
}

/// Builds an m-dimensional symplectic space of alternating 2m x 2m forms
/// over F_p: generators [[0, W_i], [-W_i^T, 0]] where the W_i are the
/// regular-representation matrices of the degree-m extension field, so
/// every nonzero combination is invertible.
pub fn build_symplectic(p: u64, m: u32) -> Result<FormSpace> {
    let poly = find_irreducible(p, m)?;
    let field = PrimeField::new(p)?;
    let blocks = regular_embedding(&poly);
    let m = m as usize;
    let generators = blocks
        .iter()
        .map(|w| {
            let neg_wt = w.transpose().neg();
            let mut g = FqMatrix::zeros(field, 2 * m, 2 * m);
            for i in 0..m {
                for j in 0..m {
                    g[(i, m + j)] = w[(i, j)];
                    g[(m + i, j)] = neg_wt[(i, j)];
                }
            }
            g
        })
        .collect();
    FormSpace::new(field, generators)
}

/// A bilinear map V x V -> K* stored extensionally as its d^2 basis values,
/// each a coordinate vector in the dual basis of the form-space generators.
/// Construction checks that the antisymmetrization b(v,w) - b(w,v) equals
/// the form-space evaluation on every basis pair.
#[derive(Debug, Clone)]
pub struct BilinearMap {
    field: PrimeField,
    dim_v: usize,
    dim_k: usize,
    values: Vec<Vec<Fp>>,
}

impl BilinearMap {
    pub fn new(space: &FormSpace, values: Vec<Vec<Fp>>) -> Result<Self> {
        let d = space.dim_v();
        let k = space.dim_k();
        if values.len() != d * d {
            return Err(Error::Dimension(format!(
                "expected {} basis values, got {}",
                d * d,
                values.len()
            )));
        }
        if values.iter().any(|v| v.len() != k) {
            return Err(Error::Dimension(format!("basis values must have length {k}")));
        }
        let map = BilinearMap {
            field: space.field(),
            dim_v: d,
            dim_k: k,
            values,
        };
        for i in 0..d {
            for j in 0..d {
                let ei = basis_vector(space.field(), d, i);
                let ej = basis_vector(space.field(), d, j);
                let omega = space.omega(&ei, &ej)?;
                let residual: Vec<Fp> = map
                    .basis_value(i, j)
                    .iter()
                    .zip(map.basis_value(j, i))
                    .zip(&omega)
                    .map(|((&bij, &bji), &om)| bij - bji - om)
                    .collect();
                if residual.iter().any(|r| !r.is_zero()) {
                    return Err(Error::Construction(format!(
                        "antisymmetrization mismatch at basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(map)
    }

    /// The canonical choice: the form-space value on strictly lower basis
    /// pairs (i > j) and zero elsewhere.
    pub fn lower_triangular(space: &FormSpace) -> Self {
        let field = space.field();
        let d = space.dim_v();
        let k = space.dim_k();
        let mut values = vec![vec![field.zero(); k]; d * d];
        for i in 0..d {
            for j in 0..i {
                let ei = basis_vector(field, d, i);
                let ej = basis_vector(field, d, j);
                values[i * d + j] = space.omega(&ei, &ej).expect("basis vectors fit");
            }
        }
        BilinearMap {
            field,
            dim_v: d,
            dim_k: k,
            values,
        }
        // The canonical map satisfies the antisymmetrization identity by
        // construction; no re-validation needed.
    }

    /// Builds a map from integer tables: `rows[i][j]` is the coordinate
    /// vector of the value on basis pair (i, j).
    pub fn from_rows(space: &FormSpace, rows: &[Vec<Vec<u64>>]) -> Result<Self> {
        let field = space.field();
        let d = space.dim_v();
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension(format!("expected {d}x{d} table")));
        }
        let values = rows
            .iter()
            .flat_map(|row| {
                row.iter()
                    .map(|entry| entry.iter().map(|&x| field.elem(x)).collect())
            })
            .collect();
        BilinearMap::new(space, values)
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn basis_value(&self, i: usize, j: usize) -> &[Fp] {
        &self.values[i * self.dim_v + j]
    }

    /// Bilinear extension to arbitrary vectors.
    pub fn eval(&self, v: &[Fp], w: &[Fp]) -> Result<Vec<Fp>> {
        if v.len() != self.dim_v || w.len() != self.dim_v {
            return Err(Error::Dimension(format!(
                "vectors of length {} and {}, expected {}",
                v.len(),
                w.len(),
                self.dim_v
            )));
        }
        let mut acc = vec![self.field.zero(); self.dim_k];
        for (i, &vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, &wj) in w.iter().enumerate() {
                let c = vi * wj;
                if c.is_zero() {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(self.basis_value(i, j)) {
                    *slot = *slot + c * b;
                }
            }
        }
        Ok(acc)
    }
}

pub(crate) fn basis_vector(field: PrimeField, len: usize, i: usize) -> Vec<Fp> {
    let mut v = vec![field.zero(); len];
    v[i] = field.one();
    v
}

/// Parses the generator-matrix text format: a first line `p d k` followed by
/// k blocks, each d lines of d entries in [0, p). Whitespace separates all
/// tokens; blank lines between blocks are allowed.
pub fn parse_form_space(text: &str) -> Result<FormSpace> {
    let (space, beta) = parse_form_space_with_beta(text)?;
    if beta.is_some() {
        return Err(Error::Parse("trailing input after generator blocks".into()));
    }
    Ok(space)
}

/// Parses the generator-matrix format optionally followed by a twist-table
/// block in the digit-string syntax of [`parse_beta_table`].
pub fn parse_form_space_with_beta(text: &str) -> Result<(FormSpace, Option<BilinearMap>)> {
    fn take_num(tokens: &[&str], pos: &mut usize, what: &str) -> Result<u64> {
        let tok = tokens
            .get(*pos)
            .ok_or_else(|| Error::Parse(format!("missing {what}")))?;
        *pos += 1;
        tok.parse::<u64>()
            .map_err(|_| Error::Parse(format!("invalid {what}")))
    }
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut pos = 0usize;
    let p = take_num(&tokens, &mut pos, "modulus p")?;
    let d = take_num(&tokens, &mut pos, "dimension d")? as usize;
    let k = take_num(&tokens, &mut pos, "dimension k")? as usize;
    if d == 0 || k == 0 {
        return Err(Error::Parse("dimensions must be positive".into()));
    }
    let field = PrimeField::new(p)?;
    let mut generators = Vec::with_capacity(k);
    for block in 0..k {
        let mut rows = Vec::with_capacity(d);
        for row in 0..d {
            let mut entries = Vec::with_capacity(d);
            for col in 0..d {
                let what = format!("entry ({row},{col}) of generator {block}");
                let v = take_num(&tokens, &mut pos, &what)?;
                if v >= p {
                    return Err(Error::Parse(format!(
                        "entry {v} out of range [0,{p}) in generator {block}"
                    )));
                }
                entries.push(v);
            }
            rows.push(entries);
        }
        generators.push(FqMatrix::from_rows(field, &rows)?);
    }
    let space = FormSpace::new(field, generators)?;
    if pos == tokens.len() {
        return Ok((space, None));
    }
    let beta_text = tokens[pos..].join(" ");
    let beta = parse_beta_table(&space, &beta_text)?;
    Ok((space, Some(beta)))
}

/// Parses a bilinear-map table for `space`: d lines of d entries, each entry
/// a string of exactly k digits (coordinate vector in the dual basis, most
/// significant digit first is digit 0). Digits must be below p, which limits
/// this format to p <= 7; that covers every construction shipped here.
pub fn parse_beta_table(space: &FormSpace, text: &str) -> Result<BilinearMap> {
    let d = space.dim_v();
    let k = space.dim_k();
    let p = space.p();
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != d * d {
        return Err(Error::Parse(format!(
            "expected {} entries, got {}",
            d * d,
            tokens.len()
        )));
    }
    let mut rows: Vec<Vec<Vec<u64>>> = Vec::with_capacity(d);
    for i in 0..d {
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            let tok = tokens[i * d + j];
            if tok.len() != k {
                return Err(Error::Parse(format!(
                    "entry ({i},{j}) has {} digits, expected {k}",
                    tok.len()
                )));
            }
            let mut coords = Vec::with_capacity(k);
            for ch in tok.chars() {
                let digit = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("non-digit in entry ({i},{j})")))?
                    as u64;
                if digit >= p {
                    return Err(Error::Parse(format!(
                        "digit {digit} out of range [0,{p}) in entry ({i},{j})"
                    )));
                }
                coords.push(digit);
            }
            row.push(coords);
        }
        rows.push(row);
    }
    BilinearMap::from_rows(space, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Random alternating d x d matrix over F_p from an entry code.
    fn alternating_from_code(field: PrimeField, d: usize, mut code: u64) -> FqMatrix {
        let p = field.modulus();
        let mut m = FqMatrix::zeros(field, d, d);
        for i in 0..d {
            for j in 0..i {
                let v = field.elem(code % p);
                code /= p;
                m[(i, j)] = v;
                m[(j, i)] = -v;
            }
        }
        m
    }

    fn swap_form() -> FormSpace {
        let field = f(2);
        let m = FqMatrix::from_rows(field, &[vec![0, 1], vec![1, 0]]).unwrap();
        FormSpace::new(field, vec![m]).unwrap()
    }

    fn random_vector(rng: &mut ChaCha8Rng, field: PrimeField, len: usize) -> Vec<Fp> {
        (0..len)
            .map(|_| field.elem(rng.gen_range(0..field.modulus())))
            .collect()
    }

    #[test]
    fn rejects_nonzero_diagonal_over_f2() {
        // symmetric with nonzero diagonal: skew over F_2 but not alternating
        let field = f(2);
        let m = FqMatrix::from_rows(field, &[vec![1, 1], vec![1, 0]]).unwrap();
        assert!(FormSpace::new(field, vec![m]).is_err());
    }

    #[test]
    fn rejects_non_skew() {
        let field = f(3);
        let m = FqMatrix::from_rows(field, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(FormSpace::new(field, vec![m]).is_err());
    }

    #[test]
    fn rejects_dependent_generators() {
        let field = f(3);
        let m = FqMatrix::from_rows(field, &[vec![0, 1], vec![2, 0]]).unwrap();
        let m2 = m.scale(field.elem(2));
        assert!(FormSpace::new(field, vec![m, m2]).is_err());
    }

    #[test]
    fn omega_vanishes_on_diagonal() {
        let space = crate::catalog::exceptional_form_space();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..100 {
            let v = random_vector(&mut rng, space.field(), space.dim_v());
            let out = space.omega(&v, &v).unwrap();
            assert!(out.iter().all(Fp::is_zero));
        }
    }

    #[test]
    fn omega_on_exceptional_basis_pair() {
        let space = crate::catalog::exceptional_form_space();
        let e1 = basis_vector(space.field(), 4, 0);
        let e4 = basis_vector(space.field(), 4, 3);
        let out = space.omega(&e1, &e4).unwrap();
        let values: Vec<u64> = out.iter().map(Fp::value).collect();
        assert_eq!(values, vec![1, 0, 1]);
    }

    #[test]
    fn omega_is_antisymmetric_and_bilinear() {
        let space = build_symplectic(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let field = space.field();
        for _ in 0..100 {
            let u = random_vector(&mut rng, field, space.dim_v());
            let v = random_vector(&mut rng, field, space.dim_v());
            let w = random_vector(&mut rng, field, space.dim_v());
            let vw = space.omega(&v, &w).unwrap();
            let wv = space.omega(&w, &v).unwrap();
            assert!(vw.iter().zip(&wv).all(|(&a, &b)| a == -b));
            let sum: Vec<Fp> = u.iter().zip(&v).map(|(&a, &b)| a + b).collect();
            let lhs = space.omega(&sum, &w).unwrap();
            let uw = space.omega(&u, &w).unwrap();
            assert!(lhs
                .iter()
                .zip(uw.iter().zip(&vw))
                .all(|(&l, (&a, &b))| l == a + b));
        }
    }

    #[test]
    fn omega_rejects_length_mismatch() {
        let space = swap_form();
        let field = space.field();
        let short = vec![field.zero()];
        let ok = vec![field.zero(), field.one()];
        assert!(space.omega(&short, &ok).is_err());
    }

    #[test]
    fn census_single_nondegenerate_form() {
        assert_eq!(swap_form().degenerate_census().unwrap(), 0);
    }

    #[test]
    fn census_exceptional_space_has_one_degenerate_element() {
        let space = crate::catalog::exceptional_form_space();
        assert_eq!(space.degenerate_census().unwrap(), 1);
        // and the degenerate element is the sum of all three generators
        let field = space.field();
        let ones = vec![field.one(); 3];
        assert!(space.combination(&ones).unwrap().det().unwrap().is_zero());
    }

    #[test]
    fn census_of_built_symplectic_spaces_is_zero() {
        for (p, m) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)] {
            let space = build_symplectic(p, m).unwrap();
            assert_eq!(space.dim_v(), 2 * m as usize);
            assert_eq!(space.dim_k(), m as usize);
            assert_eq!(
                space.degenerate_census().unwrap(),
                0,
                "degenerate combination for (p,m)=({p},{m})"
            );
        }
    }

    #[test]
    fn census_respects_cap() {
        // 17 independent alternating 7x7 generators over F_2 gives 2^17
        // combinations, past the census cap
        let field = f(2);
        let mut gens = Vec::new();
        'outer: for i in 0..7 {
            for j in 0..i {
                let mut m = FqMatrix::zeros(field, 7, 7);
                m[(i, j)] = field.one();
                m[(j, i)] = field.one();
                gens.push(m);
                if gens.len() == 17 {
                    break 'outer;
                }
            }
        }
        let space = FormSpace::new(field, gens).unwrap();
        assert!(matches!(
            space.degenerate_census(),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn symplectic_f2_m1_is_the_swap_form() {
        let space = build_symplectic(2, 1).unwrap();
        assert_eq!(space.generators().len(), 1);
        let expected = FqMatrix::from_rows(f(2), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(space.generators()[0], expected);
    }

    #[test]
    fn symplectic_f3_m1_antisymmetrizes_the_identity_block() {
        let space = build_symplectic(3, 1).unwrap();
        let expected = FqMatrix::from_rows(f(3), &[vec![0, 1], vec![2, 0]]).unwrap();
        assert_eq!(space.generators()[0], expected);
    }

    #[test]
    fn symplectic_f2_m2_combinations_have_unit_determinant() {
        let space = build_symplectic(2, 2).unwrap();
        assert_eq!(space.dim_k(), 2);
        let field = space.field();
        for code in 1..4u64 {
            let coeffs = vector_from_index(field, 2, code);
            let det = space.combination(&coeffs).unwrap().det().unwrap();
            assert_eq!(det.value(), 1);
        }
    }

    #[test]
    fn lower_triangular_map_on_swap_form() {
        let space = swap_form();
        let beta = BilinearMap::lower_triangular(&space);
        for i in 0..2 {
            for j in 0..2 {
                let expected = u64::from(i == 1 && j == 0);
                assert_eq!(beta.basis_value(i, j)[0].value(), expected);
            }
        }
    }

    #[test]
    fn lower_triangular_map_has_zero_diagonal() {
        let space = crate::catalog::exceptional_form_space();
        let beta = BilinearMap::lower_triangular(&space);
        for i in 0..space.dim_v() {
            assert!(beta.basis_value(i, i).iter().all(Fp::is_zero));
        }
    }

    #[test]
    fn antisymmetrization_identity_on_exceptional_space() {
        let space = crate::catalog::exceptional_form_space();
        let beta = BilinearMap::lower_triangular(&space);
        let field = space.field();
        let d = space.dim_v();
        for i in 0..d {
            for j in 0..d {
                let ei = basis_vector(field, d, i);
                let ej = basis_vector(field, d, j);
                let omega = space.omega(&ei, &ej).unwrap();
                let residual: Vec<u64> = beta
                    .basis_value(i, j)
                    .iter()
                    .zip(beta.basis_value(j, i))
                    .zip(&omega)
                    .map(|((&bij, &bji), &om)| (bij - bji - om).value())
                    .collect();
                assert!(residual.iter().all(|&r| r == 0));
            }
        }
    }

    #[test]
    fn bilinear_map_validation_rejects_wrong_antisymmetrization() {
        let space = swap_form();
        let field = space.field();
        let zeros = vec![vec![field.zero(); 1]; 4];
        assert!(BilinearMap::new(&space, zeros).is_err());
    }

    proptest! {
        #[test]
        fn canonical_twist_satisfies_the_antisymmetrization_identity(
            p in prop::sample::select(vec![2u64, 3, 5]),
            d in 2usize..=4,
            code in 0u64..u64::MAX / 2,
        ) {
            let field = f(p);
            let m = alternating_from_code(field, d, code);
            // a single generator must be nonzero to span a form space
            prop_assume!(m.entries().iter().any(|e| !e.is_zero()));
            let space = FormSpace::new(field, vec![m]).unwrap();
            let beta = BilinearMap::lower_triangular(&space);
            for i in 0..d {
                for j in 0..d {
                    let ei = basis_vector(field, d, i);
                    let ej = basis_vector(field, d, j);
                    let omega = space.omega(&ei, &ej).unwrap();
                    let lhs = beta.basis_value(i, j)[0] - beta.basis_value(j, i)[0];
                    prop_assert_eq!(lhs, omega[0]);
                }
            }
        }

        #[test]
        fn omega_is_antisymmetric_on_random_spaces(
            p in prop::sample::select(vec![2u64, 3, 5]),
            d in 2usize..=4,
            code in 0u64..u64::MAX / 2,
            vcode in 0u64..u64::MAX / 2,
            wcode in 0u64..u64::MAX / 2,
        ) {
            let field = f(p);
            let m = alternating_from_code(field, d, code);
            prop_assume!(m.entries().iter().any(|e| !e.is_zero()));
            let space = FormSpace::new(field, vec![m]).unwrap();
            let v = vector_from_index(field, d, vcode % p.pow(d as u32));
            let w = vector_from_index(field, d, wcode % p.pow(d as u32));
            let vw = space.omega(&v, &w).unwrap();
            let wv = space.omega(&w, &v).unwrap();
            prop_assert_eq!(vw[0], -wv[0]);
            let vv = space.omega(&v, &v).unwrap();
            prop_assert!(vv[0].is_zero());
        }
    }

    #[test]
    fn parse_form_space_round_trip() {
        let text = "2 2 1\n0 1\n1 0\n";
        let space = parse_form_space(text).unwrap();
        assert_eq!(space.p(), 2);
        assert_eq!(space.dim_v(), 2);
        assert_eq!(space.dim_k(), 1);
        assert_eq!(space.generators()[0], swap_form().generators()[0]);
    }

    #[test]
    fn parse_form_space_rejects_bad_input() {
        assert!(parse_form_space("2 2 1\n0 1\n").is_err()); // truncated
        assert!(parse_form_space("2 2 1\n0 1\n1 0\n1").is_err()); // trailing
        assert!(parse_form_space("2 2 1\n0 2\n2 0\n").is_err()); // digit range
        assert!(parse_form_space("2 2 1\n1 1\n1 1\n").is_err()); // not alternating
        assert!(parse_form_space("4 2 1\n0 1\n1 0\n").is_err()); // composite p
    }

    #[test]
    fn parse_beta_table_single_coordinate() {
        let space = swap_form();
        let beta = parse_beta_table(&space, "1 1\n0 1\n").unwrap();
        assert_eq!(beta.basis_value(0, 0)[0].value(), 1);
        assert_eq!(beta.basis_value(0, 1)[0].value(), 1);
        assert_eq!(beta.basis_value(1, 0)[0].value(), 0);
        assert_eq!(beta.basis_value(1, 1)[0].value(), 1);
    }

    #[test]
    fn parse_beta_table_multi_coordinate() {
        let space = crate::catalog::exceptional_form_space();
        let canonical = BilinearMap::lower_triangular(&space);
        let text: String = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        canonical
                            .basis_value(i, j)
                            .iter()
                            .map(|c| c.value().to_string())
                            .collect::<String>()
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n");
        let parsed = parse_beta_table(&space, &text).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(parsed.basis_value(i, j), canonical.basis_value(i, j));
            }
        }
    }

    #[test]
    fn parse_form_space_with_trailing_twist_block() {
        let text = "2 2 1\n0 1\n1 0\n\n1 1\n0 1\n";
        let (space, beta) = parse_form_space_with_beta(text).unwrap();
        assert_eq!(space.dim_v(), 2);
        let beta = beta.expect("twist block present");
        assert_eq!(beta.basis_value(0, 0)[0].value(), 1);
        assert_eq!(beta.basis_value(1, 0)[0].value(), 0);
        // the plain parser refuses the combined file
        assert!(parse_form_space(text).is_err());
    }

    #[test]
    fn parse_beta_table_rejects_bad_entries() {
        let space = swap_form();
        assert!(parse_beta_table(&space, "11 0\n0 0\n").is_err()); // wrong width
        assert!(parse_beta_table(&space, "2 0\n0 0\n").is_err()); // digit >= p
        assert!(parse_beta_table(&space, "0 0\n0 0\n").is_err()); // fails identity
    }
}
