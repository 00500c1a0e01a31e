//! Groups on the set V x K* with the twisted product
//! (v,t)(v',t') = (v+v', t+t'+b(v,v')), built from a space of alternating
//! forms K and a bilinear map b whose antisymmetrization evaluates K.
//!
//! Elements are indexed by the mixed-radix code of their (v, t) digit
//! string, v digits most significant, so enumeration order is lexicographic
//! and every table is reproducible.

use crate::ffield::Fp;
use crate::forms::{vector_from_index, BilinearMap, FormSpace};
use crate::groups::GroupTable;
use crate::{caps, Error, Result};

/// The construction data: a form space K on V and a compatible bilinear
/// map. Compatibility (the antisymmetrization identity on every basis pair)
/// is re-verified here so a map built against a different space cannot slip
/// through.
#[derive(Debug, Clone)]
pub struct HeisenbergSpec {
    space: FormSpace,
    beta: BilinearMap,
}

impl HeisenbergSpec {
    pub fn new(space: FormSpace, beta: BilinearMap) -> Result<Self> {
        if beta.dim_v() != space.dim_v() || beta.dim_k() != space.dim_k() {
            return Err(Error::Dimension(format!(
                "bilinear map is {}x{}-dimensional, space is {}x{}",
                beta.dim_v(),
                beta.dim_k(),
                space.dim_v(),
                space.dim_k()
            )));
        }
        let values: Vec<Vec<Fp>> = (0..space.dim_v() * space.dim_v())
            .map(|idx| {
                beta.basis_value(idx / space.dim_v(), idx % space.dim_v())
                    .to_vec()
            })
            .collect();
        let beta = BilinearMap::new(&space, values)?;
        Ok(HeisenbergSpec { space, beta })
    }

    /// Uses the canonical strictly-lower-triangular bilinear map.
    pub fn with_default_beta(space: FormSpace) -> Self {
        let beta = BilinearMap::lower_triangular(&space);
        HeisenbergSpec { space, beta }
    }

    pub fn space(&self) -> &FormSpace {
        &self.space
    }

    pub fn beta(&self) -> &BilinearMap {
        &self.beta
    }

    pub fn order(&self) -> u128 {
        (self.space.p() as u128).pow((self.space.dim_v() + self.space.dim_k()) as u32)
    }
}

/// Index of the element (v, t).
pub fn element_index(p: u64, v: &[Fp], t: &[Fp]) -> u32 {
    let mut code: u64 = 0;
    for digit in v.iter().chain(t) {
        code = code * p + digit.value();
    }
    code as u32
}

/// The (v, t) digits of an element index.
pub fn element_of_index(spec: &HeisenbergSpec, index: u32) -> (Vec<Fp>, Vec<Fp>) {
    let field = spec.space.field();
    let d = spec.space.dim_v();
    let k = spec.space.dim_k();
    let p = spec.space.p();
    let t_span = p.pow(k as u32);
    let v = vector_from_index(field, d, index as u64 / t_span);
    let t = vector_from_index(field, k, index as u64 % t_span);
    (v, t)
}

fn fmt_digits(v: &[Fp]) -> String {
    if v.iter().all(|d| d.value() < 10) {
        v.iter().map(|d| d.value().to_string()).collect()
    } else {
        v.iter()
            .map(|d| d.value().to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Builds the full multiplication table of the group on V x K*.
pub fn build_heisenberg(spec: &HeisenbergSpec, seed: u64) -> Result<GroupTable> {
    let order = spec.order();
    if order > caps::ORDER_CAP as u128 {
        return Err(Error::SizeGuard(format!(
            "group order {order} exceeds cap {}",
            caps::ORDER_CAP
        )));
    }
    let n = order as usize;
    let field = spec.space.field();
    let p = spec.space.p();
    let d = spec.space.dim_v();
    let k = spec.space.dim_k();
    let v_count = p.pow(d as u32) as usize;
    let t_count = p.pow(k as u32) as usize;

    let v_vecs: Vec<Vec<Fp>> = (0..v_count)
        .map(|c| vector_from_index(field, d, c as u64))
        .collect();
    let t_vecs: Vec<Vec<Fp>> = (0..t_count)
        .map(|c| vector_from_index(field, k, c as u64))
        .collect();

    let code_of = |digits: &[Fp]| -> usize {
        digits.iter().fold(0usize, |acc, x| acc * p as usize + x.value() as usize)
    };
    let add_codes = |a: &[Fp], b: &[Fp]| -> usize {
        code_of(
            &a.iter()
                .zip(b)
                .map(|(&x, &y)| x + y)
                .collect::<Vec<_>>(),
        )
    };

    // v-sum, t-sum, and twist tables; the product of elements
    // a = (va, ta), b = (vb, tb) is then pure index arithmetic.
    let mut v_add = vec![0usize; v_count * v_count];
    let mut twist = vec![0usize; v_count * v_count];
    for a in 0..v_count {
        for b in 0..v_count {
            v_add[a * v_count + b] = add_codes(&v_vecs[a], &v_vecs[b]);
            twist[a * v_count + b] = code_of(&spec.beta.eval(&v_vecs[a], &v_vecs[b])?);
        }
    }
    let mut t_add = vec![0usize; t_count * t_count];
    for a in 0..t_count {
        for b in 0..t_count {
            t_add[a * t_count + b] = add_codes(&t_vecs[a], &t_vecs[b]);
        }
    }

    let mut mult = vec![0u32; n * n];
    for a in 0..n {
        let (va, ta) = (a / t_count, a % t_count);
        for b in 0..n {
            let (vb, tb) = (b / t_count, b % t_count);
            let v = v_add[va * v_count + vb];
            let t = t_add[t_add[ta * t_count + tb] * t_count + twist[va * v_count + vb]];
            mult[a * n + b] = (v * t_count + t) as u32;
        }
    }

    let labels = (0..n)
        .map(|idx| {
            format!(
                "({}|{})",
                fmt_digits(&v_vecs[idx / t_count]),
                fmt_digits(&t_vecs[idx % t_count])
            )
        })
        .collect();
    GroupTable::from_mult(mult, Some(labels), seed)
}

/// True when Z(G) equals the commutator subgroup and the quotient by it is
/// elementary abelian. Only defined for non-abelian p-groups.
pub fn is_special(g: &GroupTable) -> Result<bool> {
    if g.is_abelian() {
        return Err(Error::Domain(
            "special-group test applies to non-abelian groups".into(),
        ));
    }
    let (p, _) = g
        .prime_power_order()
        .ok_or_else(|| Error::Domain("order is not a prime power".into()))?;
    let center = g.center();
    let derived = g.commutator_subgroup();
    if center.members() != derived.members() {
        return Ok(false);
    }
    let q = g.quotient(&derived)?;
    Ok((0..q.table.order() as u32).all(|x| q.table.pow(x, p) == q.table.identity()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{FqMatrix, PrimeField};
    use crate::forms::build_symplectic;
    use crate::groups::{cyclic_group, direct_product};
    use std::collections::BTreeMap;

    fn swap_space() -> FormSpace {
        let field = PrimeField::new(2).unwrap();
        let m = FqMatrix::from_rows(field, &[vec![0, 1], vec![1, 0]]).unwrap();
        FormSpace::new(field, vec![m]).unwrap()
    }

    fn upper_beta_group() -> GroupTable {
        let space = swap_space();
        let beta =
            BilinearMap::from_rows(&space, &[vec![vec![0], vec![1]], vec![vec![0], vec![0]]])
                .unwrap();
        let spec = HeisenbergSpec::new(space, beta).unwrap();
        build_heisenberg(&spec, 0).unwrap()
    }

    #[test]
    fn strictly_upper_twist_gives_dihedral_spectrum() {
        let g = upper_beta_group();
        assert_eq!(g.order(), 8);
        assert_eq!(g.order_spectrum(), BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
    }

    #[test]
    fn odd_characteristic_group_of_order_27() {
        let space = build_symplectic(3, 1).unwrap();
        let spec = HeisenbergSpec::with_default_beta(space);
        let g = build_heisenberg(&spec, 0).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.center().order(), 3);
        let max_order = g.order_spectrum().keys().max().copied().unwrap();
        assert_eq!(max_order, 3);
    }

    #[test]
    fn commutators_evaluate_the_form_space() {
        let space = swap_space();
        let spec = HeisenbergSpec::with_default_beta(space);
        let g = build_heisenberg(&spec, 0).unwrap();
        let p = spec.space().p();
        for a in 0..8u32 {
            let (va, _) = element_of_index(&spec, a);
            for b in 0..8u32 {
                let (vb, _) = element_of_index(&spec, b);
                let omega = spec.space().omega(&va, &vb).unwrap();
                let zero_v = vec![spec.space().field().zero(); spec.space().dim_v()];
                let expected = element_index(p, &zero_v, &omega);
                assert_eq!(g.commutator(a, b), expected);
            }
        }
    }

    #[test]
    fn inverse_matches_closed_form() {
        let space = build_symplectic(3, 1).unwrap();
        let spec = HeisenbergSpec::with_default_beta(space);
        let g = build_heisenberg(&spec, 0).unwrap();
        let p = spec.space().p();
        for a in 0..g.order() as u32 {
            let (v, t) = element_of_index(&spec, a);
            let neg_v: Vec<Fp> = v.iter().map(|&x| -x).collect();
            let twist = spec.beta().eval(&v, &v).unwrap();
            let t_inv: Vec<Fp> = t
                .iter()
                .zip(&twist)
                .map(|(&ti, &bi)| -ti + bi)
                .collect();
            assert_eq!(g.inv(a), element_index(p, &neg_v, &t_inv));
        }
    }

    #[test]
    fn center_and_commutator_equal_the_dual_coordinates() {
        for (p, m, k) in [(2u64, 1u32, 1usize), (3, 1, 1), (2, 2, 2)] {
            let full = build_symplectic(p, m).unwrap();
            let space = FormSpace::new(
                full.field(),
                full.generators()[..k].to_vec(),
            )
            .unwrap();
            assert!(space.common_radical_trivial());
            let spec = HeisenbergSpec::with_default_beta(space);
            let g = build_heisenberg(&spec, 0).unwrap();
            let expected_center = p.pow(k as u32) as usize;
            assert_eq!(g.order(), p.pow(2 * m + k as u32) as usize);
            let center = g.center();
            assert_eq!(center.order(), expected_center);
            let members: Vec<u32> = (0..expected_center as u32).collect();
            assert_eq!(center.members(), members.as_slice());
            assert_eq!(g.commutator_subgroup().members(), members.as_slice());
        }
    }

    #[test]
    fn degenerate_space_enlarges_the_center() {
        // a single form with a two-dimensional radical: the commutator
        // subgroup is still the dual coordinates, but every radical vector
        // is central too
        let field = PrimeField::new(2).unwrap();
        let m = FqMatrix::from_rows(
            field,
            &[
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
            ],
        )
        .unwrap();
        let space = FormSpace::new(field, vec![m]).unwrap();
        assert!(!space.common_radical_trivial());
        let spec = HeisenbergSpec::with_default_beta(space);
        let g = build_heisenberg(&spec, 0).unwrap();
        assert_eq!(g.order(), 32);
        assert_eq!(g.commutator_subgroup().order(), 2);
        // center = radical x dual coordinates: 4 * 2 elements
        assert_eq!(g.center().order(), 8);
    }

    #[test]
    fn symmetric_twist_change_preserves_commutators() {
        let lower = {
            let spec = HeisenbergSpec::with_default_beta(swap_space());
            build_heisenberg(&spec, 0).unwrap()
        };
        let upper = upper_beta_group();
        // the two twists differ by a symmetric map, and commutators only
        // see the antisymmetrization
        for a in 0..8u32 {
            for b in 0..8u32 {
                assert_eq!(lower.commutator(a, b), upper.commutator(a, b));
            }
        }
    }

    #[test]
    fn halved_form_twist_in_odd_characteristic() {
        // b = (1/2) omega is symmetric-free and gives the unipotent
        // upper-triangular structure: exponent p, center of order p
        let space = build_symplectic(3, 1).unwrap();
        let field = space.field();
        let inv2 = field.elem(2).inv();
        let d = space.dim_v();
        let mut values = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let ei = crate::forms::basis_vector(field, d, i);
                let ej = crate::forms::basis_vector(field, d, j);
                let om = space.omega(&ei, &ej).unwrap();
                values.push(om.into_iter().map(|x| x * inv2).collect());
            }
        }
        let beta = BilinearMap::new(&space, values).unwrap();
        let spec = HeisenbergSpec::new(space, beta).unwrap();
        let g = build_heisenberg(&spec, 0).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.center().order(), 3);
        assert_eq!(g.order_spectrum(), BTreeMap::from([(1, 1), (3, 26)]));
    }

    #[test]
    fn special_group_recognition() {
        let h27 = crate::catalog::heisenberg_group(3, 2, 1, 0).unwrap();
        assert!(is_special(&h27).unwrap());

        let widened = direct_product(&cyclic_group(3, 0).unwrap(), &h27, 0).unwrap();
        assert!(!is_special(&widened).unwrap());

        let abelian = cyclic_group(9, 0).unwrap();
        assert!(matches!(is_special(&abelian), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_oversized_construction() {
        let space = build_symplectic(5, 2).unwrap();
        // 5^(4+2) = 15625 elements
        let spec = HeisenbergSpec::with_default_beta(space);
        assert!(matches!(
            build_heisenberg(&spec, 0),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn spec_rejects_mismatched_beta() {
        let space = swap_space();
        let other = build_symplectic(2, 2).unwrap();
        let beta = BilinearMap::lower_triangular(&other);
        assert!(HeisenbergSpec::new(space, beta).is_err());
    }
}
