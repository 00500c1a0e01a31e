//! Exact arithmetic with integer combinations of e-th roots of unity.
//!
//! A value sum(a_j zeta_e^j) is held as its coefficient vector of length e.
//! That spanning set is not a basis, so equality tests reduce modulo the
//! e-th cyclotomic polynomial: the value is zero exactly when the
//! coefficient polynomial is divisible by it.

/// Coefficients of the e-th cyclotomic polynomial, ascending by power.
/// Computed by exact division of x^e - 1 by the cyclotomic polynomials of
/// the proper divisors.
pub(crate) fn cyclotomic_poly(e: usize) -> Vec<i128> {
    assert!(e >= 1);
    let mut memo: Vec<Option<Vec<i128>>> = vec![None; e + 1];
    fn compute(d: usize, memo: &mut Vec<Option<Vec<i128>>>) -> Vec<i128> {
        if let Some(p) = &memo[d] {
            return p.clone();
        }
        // x^d - 1
        let mut num = vec![0i128; d + 1];
        num[0] = -1;
        num[d] = 1;
        for div in 1..d {
            if d % div == 0 {
                let phi = compute(div, memo);
                num = divide_exact(&num, &phi);
            }
        }
        memo[d] = Some(num.clone());
        num
    }
    compute(e, &mut memo)
}

/// Exact division of integer polynomials, panicking on a nonzero remainder
/// (callers only divide when divisibility is guaranteed).
fn divide_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let (mut num, den) = (num.to_vec(), den);
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let dn = num.len() - 1;
    assert!(dn >= dd);
    let mut quot = vec![0i128; dn - dd + 1];
    for q_pos in (0..=dn - dd).rev() {
        let coef = num[q_pos + dd];
        quot[q_pos] = coef;
        if coef != 0 {
            for (i, &dc) in den.iter().enumerate() {
                num[q_pos + i] -= coef * dc;
            }
        }
    }
    assert!(num.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// Remainder of `poly` (ascending coefficients) modulo the monic integer
/// polynomial `modulus`.
fn rem_by_monic(poly: &[i128], modulus: &[i128]) -> Vec<i128> {
    let dm = modulus.len() - 1;
    let mut r = poly.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in modulus.iter().enumerate() {
                r[shift + i] -= lead * mc;
            }
        }
        r.pop();
    }
    r
}

/// An accumulator for sums of products of root-of-unity combinations,
/// sharing one root order e.
pub(crate) struct CycAccumulator {
    e: usize,
    coeffs: Vec<i128>,
}

impl CycAccumulator {
    pub(crate) fn new(e: usize) -> Self {
        CycAccumulator {
            e,
            coeffs: vec![0; e.max(1)],
        }
    }

    /// Adds weight * a * conj(b), where a and b are multiplicity vectors of
    /// e-th roots of unity. Conjugation negates exponents, so the term
    /// a_i b_j lands on zeta^(i-j).
    pub(crate) fn add_product_conj(&mut self, a: &[u64], b: &[u64], weight: i128) {
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let idx = (i + self.e - j) % self.e;
                self.coeffs[idx] += weight * ai as i128 * bj as i128;
            }
        }
    }

    /// Is the accumulated value exactly the integer `target`?
    pub(crate) fn equals_integer(&self, target: i128) -> bool {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] -= target;
        value_is_zero(self.e, &coeffs)
    }
}

/// Exact zero test for sum(coeffs[j] zeta_e^j).
pub(crate) fn value_is_zero(e: usize, coeffs: &[i128]) -> bool {
    if coeffs.iter().all(|&c| c == 0) {
        return true;
    }
    let phi = cyclotomic_poly(e);
    rem_by_monic(coeffs, &phi).iter().all(|&c| c == 0)
}
