//! p-cyclotomic cosets modulo `p^m - 1` and minimal polynomials of `α^i`.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::gf3::Gf3;
use crate::poly::Poly;

/// The orbit of an exponent under multiplication by `p`, modulo `p^m - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coset {
    /// Smallest member.
    pub leader: u64,
    /// Sorted, distinct.
    pub members: Vec<u64>,
}

impl Coset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: u64) -> bool {
        self.members.binary_search(&j).is_ok()
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `p^m - 1`, rejecting overflow and degenerate inputs.
pub fn cyclotomic_modulus(p: u64, m: u32) -> Result<u64> {
    match p.checked_pow(m) {
        Some(q) if p >= 2 && m >= 1 && q > 1 => Ok(q - 1),
        _ => Err(Error::InvalidParameters(format!(
            "p^m - 1 must be a positive 64-bit integer (p = {p}, m = {m})"
        ))),
    }
}

/// `C_j = { j·p^s mod (p^m - 1) : s ≥ 0 }`.
pub fn coset(j: i64, p: u64, m: u32) -> Result<Coset> {
    let n = cyclotomic_modulus(p, m)?;
    let start = j.rem_euclid(n as i64) as u64;
    let mut members = vec![start];
    let mut cur = start;
    loop {
        cur = ((cur as u128 * p as u128) % n as u128) as u64;
        if cur == start {
            break;
        }
        members.push(cur);
    }
    members.sort_unstable();
    Ok(Coset {
        leader: members[0],
        members,
    })
}

/// All cosets modulo `p^m - 1`, ordered by leader.
pub fn all_cosets(p: u64, m: u32) -> Result<Vec<Coset>> {
    let n = cyclotomic_modulus(p, m)?;
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for j in 0..n {
        if seen[j as usize] {
            continue;
        }
        let c = coset(j as i64, p, m)?;
        for &x in &c.members {
            seen[x as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

/// Outcome of checking that every `e` with `gcd(e, p^m - 1) = 2` has `|C_e| = m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSizeReport {
    pub p: u64,
    pub m: u32,
    pub checked: u64,
    /// Exponents whose coset size differs from `m`.
    pub violations: Vec<u64>,
}

impl CosetSizeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn coset_size_lemma_check(p: u64, m: u32) -> Result<CosetSizeReport> {
    let n = cyclotomic_modulus(p, m)?;
    let mut checked = 0;
    let mut violations = Vec::new();
    for e in 1..n {
        if gcd(e, n) != 2 {
            continue;
        }
        checked += 1;
        if coset(e as i64, p, m)?.len() != m as usize {
            violations.push(e);
        }
    }
    Ok(CosetSizeReport {
        p,
        m,
        checked,
        violations,
    })
}

/// `Π_{s ∈ C_i} (x - α^(i·3^s))`, checked to have coefficients in GF(3).
pub fn minimal_polynomial(ctx: &FieldCtx, i: i64) -> Result<Poly> {
    let c = coset(i, 3, ctx.m())?;
    // coefficients over GF(3^m), ascending
    let mut acc = vec![FieldElem::ONE];
    for &s in &c.members {
        let root = ctx.exp_of_generator(s as i64);
        let mut next = vec![FieldElem::ZERO; acc.len() + 1];
        for (k, &a) in acc.iter().enumerate() {
            next[k + 1] = ctx.add(next[k + 1], a);
            next[k] = ctx.sub(next[k], ctx.mul(a, root));
        }
        acc = next;
    }
    let coeffs = acc
        .into_iter()
        .map(|a| {
            let p = a.to_poly();
            if p.is_constant() {
                Ok(p.coeff(0))
            } else {
                Err(Error::Internal(format!(
                    "minimal polynomial of α^{i} has a coefficient outside GF(3)"
                )))
            }
        })
        .collect::<Result<Vec<Gf3>>>()?;
    Ok(Poly::new(coeffs))
}

/// Memo of minimal polynomials keyed by coset leader.
pub struct MinPolyCache<'a> {
    ctx: &'a FieldCtx,
    memo: RwLock<HashMap<u64, Poly>>,
}

impl<'a> MinPolyCache<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Self {
        MinPolyCache {
            ctx,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, i: i64) -> Result<Poly> {
        let leader = coset(i, 3, self.ctx.m())?.leader;
        if let Some(p) = self.memo.read().expect("poisoned").get(&leader) {
            return Ok(p.clone());
        }
        let p = minimal_polynomial(self.ctx, leader as i64)?;
        self.memo
            .write()
            .expect("poisoned")
            .entry(leader)
            .or_insert(p.clone());
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_examples() {
        assert_eq!(coset(0, 3, 4).unwrap().members, vec![0]);
        assert_eq!(coset(1, 3, 4).unwrap().members, vec![1, 3, 9, 27]);
        let c = coset(14, 3, 4).unwrap();
        assert_eq!(c.members, vec![14, 42, 46, 58]);
        assert_eq!(c.leader, 14);
        assert_eq!(coset(42, 3, 4).unwrap(), c);
        // general p
        assert_eq!(coset(1, 2, 4).unwrap().members, vec![1, 2, 4, 8]);
        assert_eq!(coset(5, 2, 4).unwrap().members, vec![5, 10]);
    }

    #[test]
    fn coset_closed_under_p_and_size_divides_m() {
        for (p, m) in [(3, 4), (3, 6), (2, 6), (5, 3)] {
            let n = cyclotomic_modulus(p, m).unwrap();
            for c in all_cosets(p, m).unwrap() {
                assert_eq!(m as usize % c.len(), 0);
                for &x in &c.members {
                    assert!(c.contains(x * p % n));
                }
            }
        }
    }

    #[test]
    fn cosets_partition_the_range() {
        for m in 1..=6 {
            let n = cyclotomic_modulus(3, m).unwrap();
            let mut all: Vec<u64> = all_cosets(3, m)
                .unwrap()
                .into_iter()
                .flat_map(|c| c.members)
                .collect();
            assert_eq!(all.len() as u64, n);
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len() as u64, n);
        }
    }

    #[test]
    fn coset_size_lemma() {
        let r = coset_size_lemma_check(3, 4).unwrap();
        assert!(r.holds());
        assert!(r.checked > 0);
        let r = coset_size_lemma_check(3, 2).unwrap();
        // e ∈ [1,7] with gcd(e,8) = 2: {2, 6}
        assert_eq!(r.checked, 2);
        assert!(r.holds());
        assert_eq!(gcd(14, 80), 2);
        assert_eq!(coset(14, 3, 4).unwrap().len(), 4);
        assert!(cyclotomic_modulus(3, 0).is_err());
        assert!(cyclotomic_modulus(3, 50).is_err());
    }

    #[test]
    fn minimal_polynomial_examples() {
        let ctx = FieldCtx::build(4).unwrap();
        assert_eq!(
            minimal_polynomial(&ctx, 0).unwrap(),
            Poly::from_u8s(&[2, 1])
        );
        let m1 = minimal_polynomial(&ctx, 1).unwrap();
        assert_eq!(m1.degree(), Some(4));
        assert!(m1.is_monic() && m1.is_irreducible().unwrap());
        assert_eq!(&m1, ctx.modulus());
        let m14 = minimal_polynomial(&ctx, 14).unwrap();
        assert_eq!(m14.degree(), Some(4));
        assert!(m14.is_monic());
        // evaluate m14 at α^14 in GF(3^4)
        let root = ctx.exp_of_generator(14);
        let val = m14.coeffs().iter().rev().fold(FieldElem::ZERO, |acc, &c| {
            ctx.add(ctx.mul(acc, root), ctx.constant(c))
        });
        assert!(val.is_zero());
    }

    #[test]
    fn minimal_polynomials_divide_x_n_minus_1_and_respect_cosets() {
        let ctx = FieldCtx::build(4).unwrap();
        let n = ctx.order() as usize;
        let xn1 = &Poly::monomial(Gf3::ONE, n) - &Poly::one();
        let cache = MinPolyCache::new(&ctx);
        let mut seen: Vec<(u64, Poly)> = Vec::new();
        for c in all_cosets(3, 4).unwrap() {
            let p = cache.get(c.leader as i64).unwrap();
            assert!(p.is_irreducible().unwrap());
            assert_eq!(p.degree(), Some(c.len()));
            assert!(xn1.rem(&p).unwrap().is_zero());
            for &j in &c.members {
                assert_eq!(minimal_polynomial(&ctx, j as i64).unwrap(), p);
            }
            assert!(seen.iter().all(|(_, q)| *q != p));
            seen.push((c.leader, p));
        }
    }
}
