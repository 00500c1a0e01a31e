//! Bound functions and the minimal-faithful-dimension solver.
//!
//! For a p-group, a direct sum of irreducibles is faithful exactly when
//! the restrictions of their central characters to the central p-torsion
//! span its dual: every nontrivial normal subgroup meets the central
//! p-torsion nontrivially, so triviality of the intersection of kernels
//! reduces to that spanning condition. Minimizing total degree over
//! spanning sets is a minimum-weight basis problem in a linear matroid,
//! which the greedy scan solves exactly. The solver never trusts the
//! reduction alone: every returned witness is re-checked by direct kernel
//! intersection, and a brute-force subset oracle is available for
//! cross-validation.

use crate::groups::GroupTable;
use crate::reptheory::CharacterTable;
use crate::{caps, Error, Result};

/// Closed form of the maximum of the rank bound over 1 <= r <= n.
///
/// Values: 2p^{(n-2)/2} for even n; p^{(n-1)/2} for odd n with p odd;
/// 3*2^{(n-3)/2} for odd n >= 3 with p = 2; and 1 for (p, n) = (2, 1).
pub fn fp(p: u64, n: u32) -> u64 {
    assert!(n >= 1, "fp needs a positive exponent");
    assert!(p >= 2);
    if n % 2 == 0 {
        2 * p.pow((n - 2) / 2)
    } else if p != 2 {
        p.pow((n - 1) / 2)
    } else if n >= 3 {
        3 * p.pow((n - 3) / 2)
    } else {
        1
    }
}

/// The rank bound r * p^{floor((n-r)/2)} on the dimension of a faithful
/// representation of a group of order p^n with center of rank r.
pub fn rank_bound(n: u32, r: u32, p: u64) -> u64 {
    assert!(1 <= r && r <= n, "rank bound needs 1 <= r <= n");
    r as u64 * p.pow((n - r) / 2)
}

/// max over r of the rank bound; agrees with [`fp`] everywhere.
pub fn rank_bound_max(n: u32, p: u64) -> u64 {
    (1..=n).map(|r| rank_bound(n, r, p)).max().expect("n >= 1")
}

/// When some central p-torsion escapes the commutator subgroup, a linear
/// character separates it and the faithful sum needs only r - 1 large
/// summands: rdim <= 1 + (r-1) * sqrt of the central index. Returns None
/// when the hypothesis fails. The square root is taken as the largest
/// p-power not exceeding it, which is the true bound on irreducible
/// degrees.
pub fn linear_character_bound(g: &GroupTable, p: u64) -> Result<Option<u64>> {
    match g.prime_power_order() {
        Some((q, _)) if q == p => {}
        None if g.order() == 1 => return Ok(None),
        _ => {
            return Err(Error::Domain(format!(
                "order {} is not a power of {p}",
                g.order()
            )))
        }
    }
    let (omega, r) = g.omega1_of_center(p)?;
    let derived = g.commutator_subgroup();
    if omega.members().iter().all(|&z| derived.contains(z)) {
        return Ok(None);
    }
    let index = (g.order() / g.center().order()) as u64;
    let mut j = 0;
    let mut rest = index;
    while rest % p == 0 {
        rest /= p;
        j += 1;
    }
    debug_assert_eq!(rest, 1);
    let root = p.pow(j / 2);
    Ok(Some(1 + (r as u64).saturating_sub(1) * root))
}

/// How a minimal faithful dimension was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Greedy,
    BruteForce,
}

impl SolveMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveMethod::Greedy => "greedy",
            SolveMethod::BruteForce => "brute-force",
        }
    }
}

/// A minimal faithful dimension together with its verified witness.
#[derive(Debug, Clone)]
pub struct RdimResult {
    /// The minimal dimension of a faithful direct sum of irreducibles.
    pub value: u64,
    /// Indices of the witness irreducibles in the character table.
    pub witness: Vec<usize>,
    /// Their degrees, in witness order.
    pub witness_degrees: Vec<u64>,
    /// Their central vectors on the canonical torsion basis.
    pub central_vectors: Vec<Vec<u64>>,
    pub method: SolveMethod,
}

/// Incremental F_p rank tracking by reduced echelon rows.
struct EchelonBasis {
    p: u64,
    rows: Vec<Vec<u64>>,
}

impl EchelonBasis {
    fn new(p: u64) -> Self {
        EchelonBasis { p, rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the basis; if a nonzero remainder survives, it is
    /// adopted and the rank grows.
    fn try_insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|&x| x != 0).expect("rows are nonzero");
            if v[pivot] != 0 {
                let factor = v[pivot];
                for (slot, &r) in v.iter_mut().zip(row) {
                    *slot = (*slot + (p - factor % p) * r) % p;
                }
            }
        }
        if v.iter().all(|&x| x == 0) {
            return false;
        }
        let pivot = v.iter().position(|&x| x != 0).expect("nonzero");
        let inv = crate::ffield::PrimeField::new(p)
            .expect("p validated upstream")
            .elem(v[pivot])
            .inv()
            .value();
        for slot in v.iter_mut() {
            *slot = *slot * inv % p;
        }
        let at = self
            .rows
            .iter()
            .position(|row| row.iter().position(|&x| x != 0).expect("nonzero") > pivot)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        true
    }
}

fn rank_of_vectors(p: u64, vectors: &[&[u64]]) -> usize {
    let mut basis = EchelonBasis::new(p);
    for v in vectors {
        basis.try_insert(v);
    }
    basis.rank()
}

/// Shared setup: the torsion basis, the rank, and every irreducible's
/// central vector.
fn solver_data(table: &CharacterTable<'_>) -> Result<(u64, u32, Vec<Vec<u64>>)> {
    let group = table.group();
    let p = match group.prime_power_order() {
        Some((p, _)) => p,
        None if group.order() == 1 => 2, // immaterial: rank is zero
        None => {
            return Err(Error::Domain(format!(
                "order {} is not a prime power",
                group.order()
            )))
        }
    };
    let (basis, r) = table.canonical_central_basis()?;
    let vectors = (0..table.irrep_count())
        .map(|i| Ok(table.central_vector(i, &basis)?.vector))
        .collect::<Result<Vec<_>>>()?;
    Ok((p, r, vectors))
}

/// Re-derives faithfulness of the witness from first principles: the
/// kernels must intersect in the identity alone.
fn verify_witness(
    table: &CharacterTable<'_>,
    p: u64,
    r: u32,
    witness: &[usize],
    vectors: &[Vec<u64>],
) -> Result<()> {
    if witness.len() != r as usize {
        return Err(Error::Internal(format!(
            "witness has {} summands, torsion rank is {r}",
            witness.len()
        )));
    }
    let chosen: Vec<&[u64]> = witness.iter().map(|&i| vectors[i].as_slice()).collect();
    if rank_of_vectors(p, &chosen) != r as usize {
        return Err(Error::Internal(
            "witness central vectors do not span the torsion dual".into(),
        ));
    }
    let group = table.group();
    let mut in_all = vec![true; group.order()];
    for &i in witness {
        let kernel = table.kernel_of(i)?;
        for g in 0..group.order() as u32 {
            if !kernel.contains(g) {
                in_all[g as usize] = false;
            }
        }
    }
    let survivors: Vec<u32> = (0..group.order() as u32)
        .filter(|&g| in_all[g as usize])
        .collect();
    if survivors != [group.identity()] {
        return Err(Error::Internal(format!(
            "witness kernel intersection has order {}",
            survivors.len()
        )));
    }
    Ok(())
}

fn assemble(
    table: &CharacterTable<'_>,
    p: u64,
    r: u32,
    witness: Vec<usize>,
    vectors: &[Vec<u64>],
    method: SolveMethod,
) -> Result<RdimResult> {
    verify_witness(table, p, r, &witness, vectors)?;
    let witness_degrees: Vec<u64> = witness.iter().map(|&i| table.degree(i)).collect();
    let central_vectors: Vec<Vec<u64>> = witness.iter().map(|&i| vectors[i].clone()).collect();
    Ok(RdimResult {
        value: witness_degrees.iter().sum(),
        witness,
        witness_degrees,
        central_vectors,
        method,
    })
}

/// The minimal faithful dimension by greedy minimum-weight basis: scan the
/// irreducibles by ascending (degree, index) and keep each one whose
/// central vector grows the span, stopping at full rank.
pub fn min_faithful_dim(table: &CharacterTable<'_>) -> Result<RdimResult> {
    let (p, r, vectors) = solver_data(table)?;
    let mut order: Vec<usize> = (0..table.irrep_count()).collect();
    order.sort_by_key(|&i| (table.degree(i), i));
    let mut echelon = EchelonBasis::new(p);
    let mut witness = Vec::with_capacity(r as usize);
    for i in order {
        if witness.len() == r as usize {
            break;
        }
        if echelon.try_insert(&vectors[i]) {
            witness.push(i);
        }
    }
    assemble(table, p, r, witness, &vectors, SolveMethod::Greedy)
}

/// Independent oracle: exhaustive minimum over all r-subsets of
/// irreducibles with independent central vectors.
pub fn min_faithful_dim_bruteforce(table: &CharacterTable<'_>) -> Result<RdimResult> {
    let (p, r, vectors) = solver_data(table)?;
    let m = table.irrep_count();
    let r = r as usize;
    let combinations = binomial(m as u64, r as u64);
    if combinations > caps::BRUTE_FORCE_SUBSET_CAP {
        return Err(Error::SizeGuard(format!(
            "{combinations} subsets exceed the brute-force cap {}",
            caps::BRUTE_FORCE_SUBSET_CAP
        )));
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    if r > 0 && m >= r {
        let mut subset: Vec<usize> = (0..r).collect();
        loop {
            let chosen: Vec<&[u64]> = subset.iter().map(|&i| vectors[i].as_slice()).collect();
            if rank_of_vectors(p, &chosen) == r {
                let total: u64 = subset.iter().map(|&i| table.degree(i)).sum();
                if best.as_ref().is_none_or(|(b, _)| total < *b) {
                    best = Some((total, subset.clone()));
                }
            }
            if !next_subset(&mut subset, m) {
                break;
            }
        }
    }
    let witness = match best {
        Some((_, w)) => w,
        None if r == 0 => Vec::new(),
        None => {
            return Err(Error::Internal(
                "no independent subset exists; central vectors cannot span".into(),
            ))
        }
    };
    assemble(table, p, r as u32, witness, &vectors, SolveMethod::BruteForce)
}

/// Advances to the next lexicographic r-subset of {0, ..., m-1}.
fn next_subset(subset: &mut [usize], m: usize) -> bool {
    let r = subset.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if subset[i] != m - r + i {
            subset[i] += 1;
            for j in i + 1..r {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
