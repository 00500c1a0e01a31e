//! Exact complex character tables via the modular class-algebra method.
//!
//! The pipeline: pick a prime l congruent to 1 mod the group exponent and
//! larger than twice the square root of the order, build the class-constant
//! matrices over F_l, split the common eigenspace structure down to lines,
//! recover degrees from the weighted self-inner-product, and lift every
//! value to an exact root-of-unity multiplicity vector by discrete Fourier
//! inversion over each cyclic subgroup. All decisions downstream (kernels,
//! central characters, vanishing) are integer comparisons or exact
//! cyclotomic zero tests, never floating point.
//!
//! Each finished table is re-verified before it is returned: degree-square
//! sum, divisibility of degrees, and full row and column orthogonality in
//! the cyclotomic representation. A failure is reported as an internal
//! error; it can only mean an engine bug.

mod cyclo;
mod modular;

use crate::ffield::is_prime;
use crate::groups::{ConjugacyClasses, GroupTable, Subgroup};
use crate::{Error, Result};
use modular::{kernel_basis, restrict, ModMatrix, ModPrime};
use std::collections::BTreeMap;

/// An exact character value: chi(g) = sum over j of `mult[j]` * zeta_e^j,
/// where the multiplicities are the actual eigenvalue counts of the
/// representing matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharValue {
    e: u64,
    mult: Vec<u64>,
}

impl CharValue {
    pub fn exponent_order(&self) -> u64 {
        self.e
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    /// Sum of multiplicities; equals the degree on every value.
    pub fn total(&self) -> u64 {
        self.mult.iter().sum()
    }

    /// Exact test for chi(g) = 0 as a complex number (the multiplicity
    /// vector itself need not be zero, e.g. paired opposite roots).
    pub fn is_zero_value(&self) -> bool {
        let coeffs: Vec<i128> = self.mult.iter().map(|&m| m as i128).collect();
        cyclo::value_is_zero(self.e as usize, &coeffs)
    }

    /// When the value is m * zeta_e^j for a single root, returns (j, m).
    pub fn concentrated_at(&self) -> Option<(usize, u64)> {
        let mut found = None;
        for (j, &m) in self.mult.iter().enumerate() {
            if m == 0 {
                continue;
            }
            if found.is_some() {
                return None;
            }
            found = Some((j, m));
        }
        found
    }

    /// The rendering used by the CSV export: "m0,m1,...|e".
    pub fn render(&self) -> String {
        let ms: Vec<String> = self.mult.iter().map(u64::to_string).collect();
        format!("{}|{}", ms.join(","), self.e)
    }
}

/// The restriction of an irreducible's central character to the canonical
/// basis of the central p-torsion, as a vector of exponents in F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralVector {
    pub irreducible: usize,
    pub vector: Vec<u64>,
}

/// An exact character table: one row per irreducible, one column per
/// conjugacy class, every cell a root-of-unity multiplicity vector.
#[derive(Debug)]
pub struct CharacterTable<'g> {
    group: &'g GroupTable,
    classes: ConjugacyClasses,
    exponent: u64,
    modulus: u64,
    degrees: Vec<u64>,
    values: Vec<Vec<CharValue>>,
}

fn lcm(a: u64, b: u64) -> u64 {
    let gcd = {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    a / gcd * b
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl<'g> CharacterTable<'g> {
    pub fn compute(group: &'g GroupTable) -> Result<Self> {
        let n = group.order() as u64;
        let classes = group.conjugacy_classes();
        let c = classes.count();
        let reps: Vec<u32> = (0..c).map(|t| classes.representative(t)).collect();
        let sizes: Vec<u64> = (0..c).map(|t| classes.size(t) as u64).collect();
        let rep_orders: Vec<u64> = reps.iter().map(|&g| group.element_order(g)).collect();
        let exponent = rep_orders.iter().copied().fold(1, lcm);

        // the working prime: 1 mod e and beyond 2 sqrt(|G|), so degrees and
        // multiplicities are determined by their residues
        let mut modulus = 0;
        for k in 1..=10_000_000u64 {
            let cand = k * exponent + 1;
            if cand * cand > 4 * n && is_prime(cand) {
                modulus = cand;
                break;
            }
        }
        if modulus == 0 {
            return Err(Error::Internal("no working prime found".into()));
        }
        let m = ModPrime { l: modulus };

        // smallest element of multiplicative order exactly e
        let e_factors = prime_factors(exponent);
        let root = (1..modulus)
            .find(|&z| {
                m.pow(z, exponent) == 1 && e_factors.iter().all(|&q| m.pow(z, exponent / q) != 1)
            })
            .ok_or_else(|| Error::Internal("no primitive root of the exponent order".into()))?;

        let inv_class: Vec<usize> = (0..c)
            .map(|t| classes.class_of[group.inv(reps[t]) as usize] as usize)
            .collect();
        let id_class = classes.class_of[group.identity() as usize] as usize;

        // common eigenvectors of the class-constant matrices
        let mut splitter = Splitter {
            group,
            classes: &classes,
            reps: &reps,
            c,
            m,
            cache: vec![None; c],
        };
        let initial: Vec<Vec<u64>> = (0..c)
            .map(|i| {
                let mut v = vec![0u64; c];
                v[i] = 1;
                v
            })
            .collect();
        let mut eigen: Vec<Vec<u64>> = Vec::with_capacity(c);
        splitter.split(initial, &mut eigen)?;
        if eigen.len() != c {
            return Err(Error::Internal(format!(
                "found {} common eigenvectors for {c} classes",
                eigen.len()
            )));
        }

        // normalize so the identity-class coordinate is 1, recover degrees,
        // and lift to exact values
        let size_inv: Vec<u64> = sizes.iter().map(|&s| m.inv(s % modulus)).collect();
        let mut degrees = Vec::with_capacity(c);
        let mut values: Vec<Vec<CharValue>> = Vec::with_capacity(c);
        for vec in &eigen {
            if vec[id_class] == 0 {
                return Err(Error::Internal(
                    "eigenvector vanishes on the identity class".into(),
                ));
            }
            let scale = m.inv(vec[id_class]);
            let u: Vec<u64> = vec.iter().map(|&x| m.mul(x, scale)).collect();
            let weighted_self: u64 = (0..c).fold(0, |acc, t| {
                m.add(acc, m.mul(m.mul(u[t], u[inv_class[t]]), size_inv[t]))
            });
            let d_sq = m.mul(n % modulus, m.inv(weighted_self));
            let degree = (1..=n)
                .take_while(|d| d * d <= n)
                .find(|&d| m.mul(d % modulus, d % modulus) == d_sq)
                .ok_or_else(|| Error::Internal("degree recovery failed".into()))?;
            let chi_mod: Vec<u64> = (0..c)
                .map(|t| m.mul(m.mul(degree % modulus, u[t]), size_inv[t]))
                .collect();
            let mut row = Vec::with_capacity(c);
            for &rep in &reps {
                row.push(lift_value(
                    group, &classes, m, root, exponent, &chi_mod, rep, degree,
                )?);
            }
            degrees.push(degree);
            values.push(row);
        }

        let table = CharacterTable {
            group,
            classes,
            exponent,
            modulus,
            degrees,
            values,
        };
        table.verify()?;
        Ok(table)
    }

    /// Exact structural verification of the finished table.
    fn verify(&self) -> Result<()> {
        let n = self.group.order() as i128;
        let c = self.class_count();
        let sq_sum: i128 = self.degrees.iter().map(|&d| (d as i128) * (d as i128)).sum();
        if sq_sum != n {
            return Err(Error::Internal(format!(
                "degree squares sum to {sq_sum}, group order is {n}"
            )));
        }
        if self.degrees.iter().any(|&d| self.group.order() as u64 % d != 0) {
            return Err(Error::Internal("a degree does not divide the order".into()));
        }
        for (row, &degree) in self.values.iter().zip(&self.degrees) {
            if row.iter().any(|value| value.total() != degree) {
                return Err(Error::Internal(
                    "multiplicity total differs from the degree".into(),
                ));
            }
        }
        let e = self.exponent as usize;
        for i in 0..c {
            for j in i..c {
                let mut acc = cyclo::CycAccumulator::new(e);
                for t in 0..c {
                    acc.add_product_conj(
                        self.values[i][t].multiplicities(),
                        self.values[j][t].multiplicities(),
                        self.classes.size(t) as i128,
                    );
                }
                let target = if i == j { n } else { 0 };
                if !acc.equals_integer(target) {
                    return Err(Error::Internal(format!(
                        "row orthogonality fails for irreducibles {i} and {j}"
                    )));
                }
            }
        }
        for t in 0..c {
            for s in t..c {
                let mut acc = cyclo::CycAccumulator::new(e);
                for i in 0..c {
                    acc.add_product_conj(
                        self.values[i][t].multiplicities(),
                        self.values[i][s].multiplicities(),
                        1,
                    );
                }
                let target = if t == s {
                    n / self.classes.size(t) as i128
                } else {
                    0
                };
                if !acc.equals_integer(target) {
                    return Err(Error::Internal(format!(
                        "column orthogonality fails for classes {t} and {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Re-runs the full exact self-verification: degree-square sum,
    /// divisibility, multiplicity totals, and row and column orthogonality
    /// in the cyclotomic representation.
    pub fn verify_integrity(&self) -> Result<()> {
        self.verify()
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.count()
    }

    pub fn irrep_count(&self) -> usize {
        self.values.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// The modular prime the eigen-analysis ran over.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self, irrep: usize) -> u64 {
        self.degrees[irrep]
    }

    pub fn value(&self, irrep: usize, class: usize) -> &CharValue {
        &self.values[irrep][class]
    }

    /// The value on the class containing a given element.
    pub fn value_at_element(&self, irrep: usize, element: u32) -> &CharValue {
        &self.values[irrep][self.classes.class_of[element as usize] as usize]
    }

    /// Multiset {degree -> number of irreducibles}.
    pub fn degree_census(&self) -> BTreeMap<u64, usize> {
        let mut census = BTreeMap::new();
        for &d in &self.degrees {
            *census.entry(d).or_insert(0) += 1;
        }
        census
    }

    /// The kernel {g : chi(g) = chi(1)}, verified to be a normal subgroup.
    pub fn kernel_of(&self, irrep: usize) -> Result<Subgroup<'g>> {
        let degree = self.degrees[irrep];
        let mut members = Vec::new();
        for (t, class) in self.classes.classes.iter().enumerate() {
            if self.values[irrep][t].concentrated_at() == Some((0, degree)) {
                members.extend_from_slice(class);
            }
        }
        let sub = Subgroup::new(self.group, members)
            .map_err(|e| Error::Internal(format!("character kernel is not a subgroup: {e}")))?;
        if !sub.is_normal() {
            return Err(Error::Internal("character kernel is not normal".into()));
        }
        Ok(sub)
    }

    /// The canonical basis of the central p-torsion: greedy minimal-index
    /// independent elements. Returns the basis and its rank.
    pub fn canonical_central_basis(&self) -> Result<(Vec<u32>, u32)> {
        let p = match self.group.prime_power_order() {
            Some((p, _)) => p,
            None if self.group.order() == 1 => return Ok((Vec::new(), 0)),
            None => {
                return Err(Error::Domain(
                    "central basis requires a group of prime-power order".into(),
                ))
            }
        };
        let (omega, r) = self.group.omega1_of_center(p)?;
        let basis = omega.greedy_basis();
        if basis.len() != r as usize {
            return Err(Error::Internal(
                "greedy basis size differs from the torsion rank".into(),
            ));
        }
        Ok((basis, r))
    }

    /// The exponent vector of the irreducible's central character on the
    /// given basis of the central p-torsion: entry i is a_i in F_p with
    /// chi(z_i) = chi(1) * zeta_p^{a_i}, where zeta_p = zeta_e^{e/p}.
    pub fn central_vector(&self, irrep: usize, basis: &[u32]) -> Result<CentralVector> {
        let p = match self.group.prime_power_order() {
            Some((p, _)) => p,
            None if self.group.order() == 1 => {
                return Ok(CentralVector {
                    irreducible: irrep,
                    vector: Vec::new(),
                })
            }
            None => {
                return Err(Error::Domain(
                    "central characters require a group of prime-power order".into(),
                ))
            }
        };
        let center = self.group.center();
        let degree = self.degrees[irrep];
        let mut vector = Vec::with_capacity(basis.len());
        for &z in basis {
            if !center.contains(z) || self.group.pow(z, p) != self.group.identity() {
                return Err(Error::Domain(format!(
                    "basis element {z} is not central p-torsion"
                )));
            }
            let value = self.value_at_element(irrep, z);
            let (j, mult) = value.concentrated_at().ok_or_else(|| {
                Error::Internal("central element acts by more than one root".into())
            })?;
            if mult != degree {
                return Err(Error::Internal(
                    "central value multiplicity differs from the degree".into(),
                ));
            }
            let step = (self.exponent / p) as usize;
            if j % step != 0 {
                return Err(Error::Internal(
                    "central root is not a p-th root of unity".into(),
                ));
            }
            vector.push((j / step) as u64 % p);
        }
        Ok(CentralVector {
            irreducible: irrep,
            vector,
        })
    }

    /// CSV export: one row per irreducible, one column per class, cells in
    /// the "m0,m1,...|e" rendering.
    pub fn to_csv(&self) -> Result<String> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["irrep".to_string(), "degree".to_string()];
        for t in 0..self.class_count() {
            header.push(format!(
                "C{t}_rep{}_sz{}",
                self.classes.representative(t),
                self.classes.size(t)
            ));
        }
        wtr.write_record(&header)
            .map_err(|e| Error::Internal(format!("csv: {e}")))?;
        for i in 0..self.irrep_count() {
            let mut record = vec![format!("chi_{i}"), self.degrees[i].to_string()];
            for t in 0..self.class_count() {
                record.push(self.values[i][t].render());
            }
            wtr.write_record(&record)
                .map_err(|e| Error::Internal(format!("csv: {e}")))?;
        }
        let bytes = wtr
            .into_inner()
            .map_err(|e| Error::Internal(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(format!("csv: {e}")))
    }

    /// JSON export mirroring the CSV data with explicit field names.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.group.order(),
            "exponent": self.exponent,
            "modular_prime": self.modulus,
            "classes": (0..self.class_count()).map(|t| serde_json::json!({
                "index": t,
                "representative": self.classes.representative(t),
                "size": self.classes.size(t),
            })).collect::<Vec<_>>(),
            "irreducibles": (0..self.irrep_count()).map(|i| serde_json::json!({
                "index": i,
                "degree": self.degrees[i],
                "values": (0..self.class_count())
                    .map(|t| self.values[i][t].multiplicities().to_vec())
                    .collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Lifts the modular value of one class to its exact multiplicity vector by
/// inverse DFT over the cyclic group generated by the representative.
#[allow(clippy::too_many_arguments)]
fn lift_value(
    group: &GroupTable,
    classes: &ConjugacyClasses,
    m: ModPrime,
    root: u64,
    exponent: u64,
    chi_mod: &[u64],
    rep: u32,
    degree: u64,
) -> Result<CharValue> {
    let k = group.element_order(rep);
    let zk_inv = m.inv(m.pow(root, exponent / k));
    // chi on the powers of the representative
    let mut chi_pow = Vec::with_capacity(k as usize);
    let mut x = group.identity();
    for _ in 0..k {
        chi_pow.push(chi_mod[classes.class_of[x as usize] as usize]);
        x = group.mul(x, rep);
    }
    let mut zk_inv_pow = Vec::with_capacity(k as usize);
    let mut acc = 1u64;
    for _ in 0..k {
        zk_inv_pow.push(acc);
        acc = m.mul(acc, zk_inv);
    }
    let k_inv = m.inv(k % m.l);
    let mut mult = vec![0u64; exponent as usize];
    let mut total = 0u64;
    let step = (exponent / k) as usize;
    for s in 0..k as usize {
        let mut sum = 0u64;
        for (j, &chi) in chi_pow.iter().enumerate() {
            sum = m.add(sum, m.mul(chi, zk_inv_pow[s * j % k as usize]));
        }
        let m_s = m.mul(sum, k_inv);
        if m_s > degree {
            return Err(Error::Internal(
                "lifted multiplicity exceeds the degree".into(),
            ));
        }
        mult[s * step] = m_s;
        total += m_s;
    }
    if total != degree {
        return Err(Error::Internal(
            "lifted multiplicities do not sum to the degree".into(),
        ));
    }
    Ok(CharValue { e: exponent, mult })
}

/// Iterative refinement of common eigenspaces of the class matrices.
struct Splitter<'a> {
    group: &'a GroupTable,
    classes: &'a ConjugacyClasses,
    reps: &'a [u32],
    c: usize,
    m: ModPrime,
    cache: Vec<Option<ModMatrix>>,
}

impl Splitter<'_> {
    /// The class-constant matrix of class r: entry (s, t) counts elements
    /// x of class r with x^{-1} g_t in class s.
    fn class_matrix(&mut self, r: usize) -> &ModMatrix {
        if self.cache[r].is_none() {
            let mut a = ModMatrix::zeros(self.c);
            for &x in &self.classes.classes[r] {
                let x_inv = self.group.inv(x);
                for t in 0..self.c {
                    let y = self.group.mul(x_inv, self.reps[t]);
                    let s = self.classes.class_of[y as usize] as usize;
                    *a.at_mut(s, t) = self.m.add(a.at(s, t), 1);
                }
            }
            self.cache[r] = Some(a);
        }
        self.cache[r].as_ref().expect("just inserted")
    }

    /// Recursively splits `basis` into common eigenlines, scanning class
    /// matrices in ascending class index and, within a split, eigenvalues
    /// ascending. The traversal order fixes the irreducible numbering.
    /// Scalar-acting matrices (the identity class in particular) split
    /// nothing and are skipped.
    fn split(&mut self, basis: Vec<Vec<u64>>, out: &mut Vec<Vec<u64>>) -> Result<()> {
        if basis.len() == 1 {
            out.extend(basis);
            return Ok(());
        }
        let s = basis.len();
        let m = self.m;
        for r in 0..self.c {
            let t = {
                let mat = self.class_matrix(r);
                restrict(mat, &basis, m)?
            };
            if is_scalar(&t) {
                continue;
            }
            let mut pieces: Vec<Vec<Vec<u64>>> = Vec::new();
            let mut found = 0usize;
            for lambda in 0..m.l {
                let mut shifted = t.clone();
                for i in 0..s {
                    *shifted.at_mut(i, i) = m.sub(shifted.at(i, i), lambda);
                }
                let ker = kernel_basis(&shifted, m);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|coords| combine(&basis, coords, m))
                    .collect();
                pieces.push(sub);
                if found == s {
                    break;
                }
            }
            if found != s {
                return Err(Error::Internal(
                    "class matrix is not diagonalizable on an invariant subspace".into(),
                ));
            }
            for piece in pieces {
                self.split(piece, out)?;
            }
            return Ok(());
        }
        Err(Error::Internal(
            "no class matrix separates a subspace of dimension above one".into(),
        ))
    }
}

fn is_scalar(t: &ModMatrix) -> bool {
    let d = t.at(0, 0);
    for i in 0..t.n {
        for j in 0..t.n {
            let expected = if i == j { d } else { 0 };
            if t.at(i, j) != expected {
                return false;
            }
        }
    }
    true
}

fn combine(basis: &[Vec<u64>], coords: &[u64], m: ModPrime) -> Vec<u64> {
    let c = basis[0].len();
    let mut out = vec![0u64; c];
    for (b, &x) in basis.iter().zip(coords) {
        if x == 0 {
            continue;
        }
        for (slot, &bi) in out.iter_mut().zip(b) {
            *slot = m.add(*slot, m.mul(x, bi));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic_group, direct_product};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn cyclic_tables_are_fourier_tables(n in 1usize..=24) {
            let g = cyclic_group(n, 0).unwrap();
            let table = CharacterTable::compute(&g).unwrap();
            prop_assert_eq!(table.irrep_count(), n);
            prop_assert_eq!(table.exponent(), n as u64);
            prop_assert!((0..n).all(|i| table.degree(i) == 1));
            // each row is concentrated on single roots and the identity
            // column is all ones
            for i in 0..n {
                prop_assert_eq!(table.value(i, 0).concentrated_at(), Some((0, 1)));
            }
        }

        #[test]
        fn product_of_cyclics_has_product_class_count(a in 1usize..=8, b in 1usize..=8) {
            let g = direct_product(
                &cyclic_group(a, 0).unwrap(),
                &cyclic_group(b, 0).unwrap(),
                0,
            )
            .unwrap();
            let table = CharacterTable::compute(&g).unwrap();
            prop_assert_eq!(table.class_count(), a * b);
            let census = table.degree_census();
            prop_assert_eq!(census.get(&1), Some(&(a * b)));
        }
    }

    #[test]
    fn trivial_group_table() {
        let g = cyclic_group(1, 0).unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        assert_eq!(table.irrep_count(), 1);
        assert_eq!(table.degree(0), 1);
        assert_eq!(table.value(0, 0).concentrated_at(), Some((0, 1)));
    }

    #[test]
    fn cyclic_three_is_a_discrete_fourier_table() {
        let g = cyclic_group(3, 0).unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        assert_eq!(table.irrep_count(), 3);
        assert_eq!(table.exponent(), 3);
        assert!(table.degrees.iter().all(|&d| d == 1));
        // rows are exactly the maps g^k -> zeta_3^{jk} for j = 0, 1, 2
        let mut seen = [false; 3];
        for i in 0..3 {
            let j = table
                .value_at_element(i, 1)
                .concentrated_at()
                .expect("linear characters take single-root values")
                .0;
            assert_eq!(
                table.value_at_element(i, 2).concentrated_at(),
                Some((2 * j % 3, 1))
            );
            assert!(!seen[j]);
            seen[j] = true;
        }
    }

    #[test]
    fn quaternion_table_structure() {
        let g = crate::catalog::quaternion8().unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        assert_eq!(table.irrep_count(), 5);
        assert_eq!(table.degree_census(), BTreeMap::from([(1, 4), (2, 1)]));
        assert_eq!(table.exponent(), 4);
        // the 2-dimensional irreducible takes the value -2 on the central
        // involution and 0 on the order-4 classes
        let two = (0..5).find(|&i| table.degree(i) == 2).unwrap();
        let central_inv = (1..8)
            .find(|&x| g.element_order(x) == 2 && g.center().contains(x))
            .unwrap();
        assert_eq!(
            table.value_at_element(two, central_inv).concentrated_at(),
            Some((2, 2))
        );
        for x in 0..8 {
            if g.element_order(x) == 4 {
                assert!(table.value_at_element(two, x).is_zero_value());
            }
        }
    }

    #[test]
    fn faithful_quaternion_irreducible_has_trivial_kernel() {
        let g = crate::catalog::quaternion8().unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        let two = (0..5).find(|&i| table.degree(i) == 2).unwrap();
        let kernel = table.kernel_of(two).unwrap();
        assert_eq!(kernel.members(), &[g.identity()]);
        // linear characters all contain the center
        for i in 0..5 {
            if table.degree(i) == 1 {
                let k = table.kernel_of(i).unwrap();
                assert!(g.center().members().iter().all(|&z| k.contains(z)));
            }
        }
    }

    #[test]
    fn trivial_character_kernel_is_everything() {
        let g = crate::catalog::dihedral8().unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        let trivial = (0..table.irrep_count())
            .find(|&i| {
                (0..table.class_count())
                    .all(|t| table.value(i, t).concentrated_at() == Some((0, 1)))
            })
            .expect("the trivial character exists");
        assert_eq!(table.kernel_of(trivial).unwrap().order(), 8);
    }

    #[test]
    fn heisenberg_27_census_and_central_vectors() {
        let g = crate::catalog::heisenberg_group(3, 2, 1, 0).unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        assert_eq!(table.class_count(), 11);
        assert_eq!(table.degree_census(), BTreeMap::from([(1, 9), (3, 2)]));
        let (basis, r) = table.canonical_central_basis().unwrap();
        assert_eq!(r, 1);
        let mut three_dim_vectors = Vec::new();
        for i in 0..table.irrep_count() {
            let cv = table.central_vector(i, &basis).unwrap();
            if table.degree(i) == 3 {
                three_dim_vectors.push(cv.vector);
            } else {
                assert_eq!(cv.vector, vec![0]);
            }
        }
        three_dim_vectors.sort();
        assert_eq!(three_dim_vectors, vec![vec![1], vec![2]]);
    }

    #[test]
    fn linear_characters_of_the_order_128_witness_kill_the_center() {
        let g = crate::catalog::exceptional128(0).unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        let center = g.center();
        let mut linear = 0;
        for i in 0..table.irrep_count() {
            if table.degree(i) != 1 {
                continue;
            }
            linear += 1;
            let kernel = table.kernel_of(i).unwrap();
            assert!(center.members().iter().all(|&z| kernel.contains(z)));
        }
        assert_eq!(linear, 16);
    }

    #[test]
    fn elementary_32_census() {
        let c2 = cyclic_group(2, 0).unwrap();
        let mut g = c2.clone();
        for _ in 0..4 {
            g = direct_product(&g, &c2, 0).unwrap();
        }
        let table = CharacterTable::compute(&g).unwrap();
        assert_eq!(table.degree_census(), BTreeMap::from([(1, 32)]));
        assert_eq!(table.exponent(), 2);
    }

    #[test]
    fn symmetric_group_on_three_letters() {
        // the engine is not limited to prime-power orders; the smallest
        // non-abelian group makes a good cross-check
        let perms: [[u8; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let compose = |f: &[u8; 3], g: &[u8; 3]| -> [u8; 3] {
            [
                f[g[0] as usize],
                f[g[1] as usize],
                f[g[2] as usize],
            ]
        };
        let index_of = |h: &[u8; 3]| perms.iter().position(|p| p == h).unwrap() as u32;
        let mut mult = vec![0u32; 36];
        for (a, fa) in perms.iter().enumerate() {
            for (b, fb) in perms.iter().enumerate() {
                mult[a * 6 + b] = index_of(&compose(fa, fb));
            }
        }
        let g = crate::groups::GroupTable::from_mult(mult, None, 0).unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        assert_eq!(table.class_count(), 3);
        assert_eq!(table.degree_census(), BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(table.exponent(), 6);
        // the sign character takes -1 on transpositions
        let sign = (0..3)
            .find(|&i| {
                table.degree(i) == 1
                    && table.value_at_element(i, 3).concentrated_at() == Some((3, 1))
            })
            .expect("sign character exists");
        assert_eq!(table.kernel_of(sign).unwrap().order(), 3);
    }

    #[test]
    fn tables_are_correct_when_the_identity_is_not_element_zero() {
        // relabeling must not matter: swap element 0 with the last element
        let q8 = crate::catalog::quaternion8().unwrap();
        let n = q8.order() as u32;
        let perm = |x: u32| match x {
            0 => 7,
            7 => 0,
            other => other,
        };
        let mut mult = vec![0u32; (n * n) as usize];
        for a in 0..n {
            for b in 0..n {
                mult[(perm(a) * n + perm(b)) as usize] = perm(q8.mul(a, b));
            }
        }
        let relabeled = crate::groups::GroupTable::from_mult(mult, None, 0).unwrap();
        assert_eq!(relabeled.identity(), 7);
        let table = CharacterTable::compute(&relabeled).unwrap();
        assert_eq!(table.degree_census(), BTreeMap::from([(1, 4), (2, 1)]));
    }

    #[test]
    fn csv_and_json_exports_are_well_formed() {
        let g = crate::catalog::quaternion8().unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        let csv_text = table.to_csv().unwrap();
        let lines: Vec<&str> = csv_text.trim().lines().collect();
        assert_eq!(lines.len(), 1 + table.irrep_count());
        assert!(lines[0].starts_with("irrep,degree,C0"));
        // every data cell renders as "m0,m1,...|e"
        assert!(csv_text.contains("|4"));

        let json = table.to_json();
        assert_eq!(json["order"], 8);
        assert_eq!(json["exponent"], 4);
        assert_eq!(json["irreducibles"].as_array().unwrap().len(), 5);
        let degree_sum: u64 = json["irreducibles"]
            .as_array()
            .unwrap()
            .iter()
            .map(|ir| {
                let d = ir["degree"].as_u64().unwrap();
                d * d
            })
            .sum();
        assert_eq!(degree_sum, 8);
    }

    #[test]
    fn central_vector_rejects_non_central_basis() {
        let g = crate::catalog::dihedral8().unwrap();
        let table = CharacterTable::compute(&g).unwrap();
        let refl = (1..8)
            .find(|&x| g.element_order(x) == 2 && !g.center().contains(x))
            .unwrap();
        assert!(matches!(
            table.central_vector(0, &[refl]),
            Err(Error::Domain(_))
        ));
    }
}
