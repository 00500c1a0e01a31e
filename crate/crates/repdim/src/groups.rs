//! Finite groups as explicit multiplication tables, with the structural
//! queries the rest of the crate is built on: center, commutator subgroup,
//! p-torsion of the center, conjugacy classes, direct products, quotients,
//! order spectra, and a brute-force isoclinism checker.
//!
//! Every constructed table is validated: rows and columns must be
//! permutations, a two-sided identity and two-sided inverses must exist,
//! and associativity is verified exhaustively up to order 512 (sampled on
//! fixed-seed random triples above that).

use crate::{caps, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A finite group of order n on the element set {0, ..., n-1}.
#[derive(Debug, Clone)]
pub struct GroupTable {
    n: usize,
    identity: u32,
    mult: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Builds and fully validates a group from its flat row-major
    /// multiplication table. `seed` drives the sampled associativity check
    /// used above the exhaustive cap.
    pub fn from_mult(mult: Vec<u32>, labels: Option<Vec<String>>, seed: u64) -> Result<Self> {
        let n = (mult.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != mult.len() {
            return Err(Error::Dimension(format!(
                "table length {} is not a positive square",
                mult.len()
            )));
        }
        if n > caps::ORDER_CAP {
            return Err(Error::SizeGuard(format!(
                "order {n} exceeds cap {}",
                caps::ORDER_CAP
            )));
        }
        if let Some(ref l) = labels {
            if l.len() != n {
                return Err(Error::Dimension("label count differs from order".into()));
            }
        }
        if mult.iter().any(|&x| x as usize >= n) {
            return Err(Error::Construction("table entry out of range".into()));
        }

        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.fill(false);
            for c in 0..n {
                let v = mult[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::Construction(format!("row {r} repeats element {v}")));
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            seen.fill(false);
            for r in 0..n {
                let v = mult[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::Construction(format!(
                        "column {c} repeats element {v}"
                    )));
                }
                seen[v] = true;
            }
        }

        // Two-sided identity.
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e * n + x] as usize == x && mult[x * n + e] as usize == x))
            .ok_or_else(|| Error::Construction("no two-sided identity".into()))?;

        // Two-sided inverses.
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| mult[x * n + y] as usize == identity)
                .expect("row is a permutation");
            if mult[y * n + x] as usize != identity {
                return Err(Error::Construction(format!(
                    "element {x} has no two-sided inverse"
                )));
            }
            inv[x] = y as u32;
        }

        // Associativity.
        if n <= caps::EXHAUSTIVE_ASSOC_CAP {
            for a in 0..n {
                for b in 0..n {
                    let ab = mult[a * n + b] as usize;
                    for c in 0..n {
                        let bc = mult[b * n + c] as usize;
                        if mult[ab * n + c] != mult[a * n + bc] {
                            return Err(Error::Construction(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..caps::ASSOC_SAMPLES {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                let ab = mult[a * n + b] as usize;
                let bc = mult[b * n + c] as usize;
                if mult[ab * n + c] != mult[a * n + bc] {
                    return Err(Error::Construction(format!(
                        "associativity fails at sampled ({a},{b},{c})"
                    )));
                }
            }
        }

        Ok(GroupTable {
            n,
            identity: identity as u32,
            mult,
            inv,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn label(&self, x: u32) -> String {
        match &self.labels {
            Some(l) => l[x as usize].clone(),
            None => x.to_string(),
        }
    }

    pub fn pow(&self, x: u32, mut k: u64) -> u32 {
        let mut acc = self.identity;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> u64 {
        let mut acc = x;
        let mut ord = 1u64;
        while acc != self.identity {
            acc = self.mul(acc, x);
            ord += 1;
        }
        ord
    }

    /// The commutator a^{-1} b^{-1} a b.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// (p, n) with |G| = p^n, when the order is a prime power. The trivial
    /// group has no well-defined p and returns None.
    pub fn prime_power_order(&self) -> Option<(u64, u32)> {
        let mut n = self.n as u64;
        if n < 2 {
            return None;
        }
        let mut p = 2;
        while p * p <= n && n % p != 0 {
            p += 1;
        }
        if n % p != 0 {
            p = n;
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        (n == 1).then_some((p, e))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n as u32).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup of elements commuting with everything.
    pub fn center(&self) -> Subgroup<'_> {
        let members = (0..self.n as u32)
            .filter(|&z| (0..self.n as u32).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup {
            parent: self,
            members,
        }
    }

    /// Smallest subgroup containing all commutators, computed by closure.
    pub fn commutator_subgroup(&self) -> Subgroup<'_> {
        let mut gens = Vec::new();
        let mut in_gens = vec![false; self.n];
        for a in 0..self.n as u32 {
            for b in 0..a {
                let c = self.commutator(a, b);
                if !in_gens[c as usize] {
                    in_gens[c as usize] = true;
                    gens.push(c);
                }
            }
        }
        let members = self.closure(&gens);
        Subgroup {
            parent: self,
            members,
        }
    }

    /// Sorted members of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut in_set = vec![false; self.n];
        in_set[self.identity as usize] = true;
        let mut members = vec![self.identity];
        let mut frontier: Vec<u32> = Vec::new();
        for &g in gens {
            if !in_set[g as usize] {
                in_set[g as usize] = true;
                members.push(g);
                frontier.push(g);
            }
        }
        // In a finite group closure under right products by the generators
        // already yields the subgroup.
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !in_set[y as usize] {
                    in_set[y as usize] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// The subgroup of central elements z with z^p = 1, together with its
    /// rank r (its order is p^r). Requires |G| to be a power of p.
    pub fn omega1_of_center(&self, p: u64) -> Result<(Subgroup<'_>, u32)> {
        match self.prime_power_order() {
            Some((q, _)) if q == p => {}
            _ if self.n == 1 => {}
            _ => {
                return Err(Error::Domain(format!(
                    "order {} is not a power of {p}",
                    self.n
                )))
            }
        }
        let members: Vec<u32> = self
            .center()
            .members
            .iter()
            .copied()
            .filter(|&z| self.pow(z, p) == self.identity)
            .collect();
        let mut size = members.len() as u64;
        let mut r = 0;
        while size % p == 0 {
            size /= p;
            r += 1;
        }
        if size != 1 {
            return Err(Error::Internal(format!(
                "central p-torsion has order {} which is not a power of {p}",
                members.len()
            )));
        }
        Ok((
            Subgroup {
                parent: self,
                members,
            },
            r,
        ))
    }

    /// Orbits of the conjugation action, ordered by minimal member; members
    /// sorted ascending. Class 0 is always the identity class.
    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let mut class_of = vec![u32::MAX; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = Vec::new();
            let mut stack = vec![x];
            class_of[x as usize] = id;
            while let Some(y) = stack.pop() {
                members.push(y);
                for g in 0..self.n as u32 {
                    let c = self.mul(self.mul(self.inv(g), y), g);
                    if class_of[c as usize] == u32::MAX {
                        class_of[c as usize] = id;
                        stack.push(c);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyClasses { classes, class_of }
    }

    /// Multiset {element order -> count}.
    pub fn order_spectrum(&self) -> BTreeMap<u64, usize> {
        let mut spectrum = BTreeMap::new();
        for x in 0..self.n as u32 {
            *spectrum.entry(self.element_order(x)).or_insert(0) += 1;
        }
        spectrum
    }

    /// The quotient by a normal subgroup, materialized as a new table over
    /// the minimal-index coset representatives.
    pub fn quotient(&self, normal: &Subgroup<'_>) -> Result<Quotient> {
        if !std::ptr::eq(normal.parent, self) {
            return Err(Error::Domain("subgroup belongs to a different group".into()));
        }
        if !normal.is_normal() {
            return Err(Error::Domain("subgroup is not normal".into()));
        }
        let mut coset_of = vec![u32::MAX; self.n];
        let mut rep_of = Vec::new();
        for g in 0..self.n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = rep_of.len() as u32;
            rep_of.push(g);
            for &z in &normal.members {
                coset_of[self.mul(g, z) as usize] = id;
            }
        }
        let q = rep_of.len();
        let mut mult = vec![0u32; q * q];
        for (i, &gi) in rep_of.iter().enumerate() {
            for (j, &gj) in rep_of.iter().enumerate() {
                mult[i * q + j] = coset_of[self.mul(gi, gj) as usize];
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|_| rep_of.iter().map(|&g| format!("[{}]", self.label(g))).collect());
        let table = GroupTable::from_mult(mult, labels, 0)?;
        Ok(Quotient {
            table,
            coset_of,
            rep_of,
        })
    }
}

/// Component-wise product group on pairs (a, b), indexed a * |B| + b.
pub fn direct_product(a: &GroupTable, b: &GroupTable, seed: u64) -> Result<GroupTable> {
    let n = a.order().saturating_mul(b.order());
    if n > caps::ORDER_CAP {
        return Err(Error::SizeGuard(format!(
            "product order {n} exceeds cap {}",
            caps::ORDER_CAP
        )));
    }
    let nb = b.order();
    let mut mult = vec![0u32; n * n];
    for x in 0..n {
        let (xa, xb) = ((x / nb) as u32, (x % nb) as u32);
        for y in 0..n {
            let (ya, yb) = ((y / nb) as u32, (y % nb) as u32);
            mult[x * n + y] = a.mul(xa, ya) * nb as u32 + b.mul(xb, yb);
        }
    }
    let labels = match (&a.labels, &b.labels) {
        (Some(_), Some(_)) => Some(
            (0..n)
                .map(|x| {
                    format!(
                        "({},{})",
                        a.label((x / nb) as u32),
                        b.label((x % nb) as u32)
                    )
                })
                .collect(),
        ),
        _ => None,
    };
    GroupTable::from_mult(mult, labels, seed)
}

/// The cyclic group of order n.
pub fn cyclic_group(n: usize, seed: u64) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::Domain("cyclic group needs positive order".into()));
    }
    if n > caps::ORDER_CAP {
        return Err(Error::SizeGuard(format!(
            "order {n} exceeds cap {}",
            caps::ORDER_CAP
        )));
    }
    let mut mult = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            mult[i * n + j] = ((i + j) % n) as u32;
        }
    }
    GroupTable::from_mult(mult, None, seed)
}

/// A subgroup presented by its sorted member indices.
#[derive(Debug, Clone)]
pub struct Subgroup<'g> {
    parent: &'g GroupTable,
    members: Vec<u32>,
}

impl<'g> Subgroup<'g> {
    /// Wraps a member set after checking closure under products and
    /// inverses.
    pub fn new(parent: &'g GroupTable, mut members: Vec<u32>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let sub = Subgroup { parent, members };
        if !sub.contains(parent.identity()) {
            return Err(Error::Construction("subgroup misses the identity".into()));
        }
        for &x in &sub.members {
            if !sub.contains(parent.inv(x)) {
                return Err(Error::Construction("subgroup not closed under inverse".into()));
            }
            for &y in &sub.members {
                if !sub.contains(parent.mul(x, y)) {
                    return Err(Error::Construction("subgroup not closed under product".into()));
                }
            }
        }
        Ok(sub)
    }

    pub fn parent(&self) -> &'g GroupTable {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        (0..self.parent.order() as u32).all(|g| {
            self.members.iter().all(|&z| {
                self.contains(self.parent.mul(self.parent.mul(self.parent.inv(g), z), g))
            })
        })
    }

    /// True when every element squares away: order dividing p for all
    /// members, i.e. the subgroup is elementary abelian of exponent p.
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        self.members
            .iter()
            .all(|&z| self.parent.pow(z, p) == self.parent.identity())
            && self
                .members
                .iter()
                .all(|&x| self.members.iter().all(|&y| {
                    self.parent.mul(x, y) == self.parent.mul(y, x)
                }))
    }

    /// Greedy minimal-index basis of an elementary abelian subgroup: scan
    /// members ascending and keep every element outside the span of the
    /// kept ones.
    pub fn greedy_basis(&self) -> Vec<u32> {
        let mut basis: Vec<u32> = Vec::new();
        let mut span = vec![self.parent.identity()];
        for &z in &self.members {
            if z == self.parent.identity() || span.binary_search(&z).is_ok() {
                continue;
            }
            basis.push(z);
            span = self.parent.closure(&basis);
        }
        basis
    }
}

/// Conjugacy classes, ordered by minimal member.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn representative(&self, class: usize) -> u32 {
        self.classes[class][0]
    }

    pub fn size(&self, class: usize) -> usize {
        self.classes[class].len()
    }
}

/// A quotient group together with both directions of the coset
/// correspondence.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub table: GroupTable,
    /// parent element -> quotient element
    pub coset_of: Vec<u32>,
    /// quotient element -> minimal-index parent representative
    pub rep_of: Vec<u32>,
}

/// Greedy minimal generating set: scan elements ascending and keep those
/// outside the closure of the kept ones.
fn minimal_generating_set(g: &GroupTable) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut span = vec![g.identity()];
    for x in 0..g.order() as u32 {
        if span.binary_search(&x).is_ok() {
            continue;
        }
        gens.push(x);
        span = g.closure(&gens);
        if span.len() == g.order() {
            break;
        }
    }
    gens
}

/// Decides isoclinism of S and T: are there isomorphisms between the
/// central quotients and between the commutator subgroups that agree on the
/// commutator pairing? Decided by exhaustive generator-image backtracking
/// over central-quotient isomorphisms; the commutator-side map is forced by
/// the pairing and then closed into an isomorphism or rejected.
pub fn isoclinic(s: &GroupTable, t: &GroupTable) -> Result<bool> {
    let data_s = IsoclinismData::new(s)?;
    let data_t = IsoclinismData::new(t)?;
    if data_s.quotient.order() != data_t.quotient.order()
        || data_s.derived.len() != data_t.derived.len()
    {
        return Ok(false);
    }
    if spectrum_key(&data_s.quotient) != spectrum_key(&data_t.quotient) {
        return Ok(false);
    }

    let nq = data_s.quotient.order();
    let gens = minimal_generating_set(&data_s.quotient);
    let mut phi: Vec<Option<u32>> = vec![None; nq];
    let mut used = vec![false; nq];
    phi[data_s.quotient.identity() as usize] = Some(data_t.quotient.identity());
    used[data_t.quotient.identity() as usize] = true;
    Ok(search_isomorphism(
        &data_s, &data_t, &gens, 0, &mut phi, &mut used,
    ))
}

struct IsoclinismData {
    quotient: GroupTable,
    /// sorted member list of the commutator subgroup, in parent indices
    derived: Vec<u32>,
    /// multiplication of the commutator subgroup in member-list positions
    derived_mult: Vec<u32>,
    /// commutator pairing on quotient elements, as positions in `derived`
    pairing: Vec<u32>,
}

impl IsoclinismData {
    fn new(g: &GroupTable) -> Result<Self> {
        let center = g.center();
        let derived_sub = g.commutator_subgroup();
        let q = g.quotient(&center)?;
        if q.table.order() > caps::ISOCLINISM_CAP || derived_sub.order() > caps::ISOCLINISM_CAP {
            return Err(Error::SizeGuard(format!(
                "central quotient of order {} / commutator subgroup of order {} exceed cap {}",
                q.table.order(),
                derived_sub.order(),
                caps::ISOCLINISM_CAP
            )));
        }
        let derived = derived_sub.members().to_vec();
        let nd = derived.len();
        let mut derived_mult = vec![0u32; nd * nd];
        for a in 0..nd {
            for b in 0..nd {
                let prod = g.mul(derived[a], derived[b]);
                let pos = derived
                    .binary_search(&prod)
                    .map_err(|_| Error::Internal("derived subgroup not closed".into()))?;
                derived_mult[a * nd + b] = pos as u32;
            }
        }
        let nq = q.table.order();
        let mut pairing = vec![0u32; nq * nq];
        for x in 0..nq {
            for y in 0..nq {
                // The commutator is constant on central cosets, so
                // evaluating on representatives is well defined.
                let c = g.commutator(q.rep_of[x], q.rep_of[y]);
                let pos = derived
                    .binary_search(&c)
                    .map_err(|_| Error::Internal("commutator outside derived subgroup".into()))?;
                pairing[x * nq + y] = pos as u32;
            }
        }
        Ok(IsoclinismData {
            quotient: q.table,
            derived,
            derived_mult,
            pairing,
        })
    }

    /// Product within the commutator subgroup, in member-list positions.
    fn mul_derived(&self, a: usize, b: usize) -> usize {
        self.derived_mult[a * self.derived.len() + b] as usize
    }
}

fn spectrum_key(g: &GroupTable) -> Vec<(u64, usize)> {
    g.order_spectrum().into_iter().collect()
}

fn search_isomorphism(
    s: &IsoclinismData,
    t: &IsoclinismData,
    gens: &[u32],
    depth: usize,
    phi: &mut Vec<Option<u32>>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == gens.len() {
        return phi.iter().all(Option::is_some) && compatible_derived_map(s, t, phi);
    }
    let g = gens[depth];
    if phi[g as usize].is_some() {
        // already forced by the closure of earlier generators
        return search_isomorphism(s, t, gens, depth + 1, phi, used);
    }
    let g_order = s.quotient.element_order(g);
    for h in 0..t.quotient.order() as u32 {
        if used[h as usize] || t.quotient.element_order(h) != g_order {
            continue;
        }
        let mut phi_next = phi.clone();
        let mut used_next = used.clone();
        if extend_homomorphism(&s.quotient, &t.quotient, g, h, &mut phi_next, &mut used_next)
            && search_isomorphism(s, t, gens, depth + 1, &mut phi_next, &mut used_next)
        {
            return true;
        }
    }
    false
}

/// Extends a partial injective homomorphism by g -> h, closing under
/// products with already-mapped elements. Returns false on any conflict.
fn extend_homomorphism(
    qs: &GroupTable,
    qt: &GroupTable,
    g: u32,
    h: u32,
    phi: &mut [Option<u32>],
    used: &mut [bool],
) -> bool {
    let assign = |phi: &mut [Option<u32>], used: &mut [bool], x: u32, y: u32| -> Option<bool> {
        match phi[x as usize] {
            Some(existing) => Some(existing == y),
            None => {
                if used[y as usize] {
                    return Some(false);
                }
                phi[x as usize] = Some(y);
                used[y as usize] = true;
                None // newly assigned
            }
        }
    };
    if let Some(ok) = assign(phi, used, g, h) {
        return ok;
    }
    let mut queue = vec![g];
    while let Some(x) = queue.pop() {
        let fx = phi[x as usize].expect("queued elements are mapped");
        let mapped: Vec<u32> = (0..qs.order() as u32)
            .filter(|&y| phi[y as usize].is_some())
            .collect();
        for y in mapped {
            let fy = phi[y as usize].expect("filtered to mapped");
            for (prod_s, prod_t) in [
                (qs.mul(x, y), qt.mul(fx, fy)),
                (qs.mul(y, x), qt.mul(fy, fx)),
            ] {
                match assign(phi, used, prod_s, prod_t) {
                    Some(false) => return false,
                    Some(true) => {}
                    None => queue.push(prod_s),
                }
            }
        }
    }
    true
}

/// Given a full quotient isomorphism, checks that the forced map between
/// commutator subgroups is well defined and extends (by closing under
/// products) to an isomorphism.
fn compatible_derived_map(s: &IsoclinismData, t: &IsoclinismData, phi: &[Option<u32>]) -> bool {
    let nd = s.derived.len();
    let nq = s.quotient.order();
    let mut dmap: Vec<Option<u32>> = vec![None; nd];
    let mut dused = vec![false; nd];
    for x in 0..nq {
        for y in 0..nq {
            let fx = phi[x].expect("full map") as usize;
            let fy = phi[y].expect("full map") as usize;
            let from = s.pairing[x * nq + y] as usize;
            let to = t.pairing[fx * nq + fy];
            match dmap[from] {
                Some(existing) if existing != to => return false,
                Some(_) => {}
                None => {
                    if dused[to as usize] {
                        return false;
                    }
                    dmap[from] = Some(to);
                    dused[to as usize] = true;
                }
            }
        }
    }
    // Close the forced assignments under products. Commutator values
    // generate the derived subgroup, so this either fills the whole map or
    // exposes a conflict.
    loop {
        let known: Vec<usize> = (0..nd).filter(|&i| dmap[i].is_some()).collect();
        let mut changed = false;
        for &a in &known {
            for &b in &known {
                let prod_s = s.mul_derived(a, b);
                let prod_t = t.mul_derived(
                    dmap[a].expect("known") as usize,
                    dmap[b].expect("known") as usize,
                );
                match dmap[prod_s] {
                    Some(existing) if existing != prod_t as u32 => return false,
                    Some(_) => {}
                    None => {
                        if dused[prod_t] {
                            return false;
                        }
                        dmap[prod_s] = Some(prod_t as u32);
                        dused[prod_t] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    dmap.iter().all(Option::is_some)
}
