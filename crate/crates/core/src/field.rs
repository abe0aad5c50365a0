//! GF(3^m) for `1 ≤ m ≤ 20`, with `x` as a primitive element.
//!
//! Elements are stored as two bit-planes over the polynomial basis: bit `i` of
//! `lo` set means coefficient `i` is 1, bit `i` of `hi` set means it is 2.
//! Addition is then six word operations and negation is a plane swap.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf3::Gf3;
use crate::poly::{prime_factors, Poly};

pub const MAX_M: u32 = 20;
/// Discrete-log tables are built (lazily) up to this degree.
pub const LOG_TABLE_MAX_M: u32 = 10;

/// An element of GF(3^m), a residue of degree `< m` modulo the field modulus.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FieldElem {
    lo: u32,
    hi: u32,
}

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem { lo: 0, hi: 0 };
    pub const ONE: FieldElem = FieldElem { lo: 1, hi: 0 };
    /// `-1`.
    pub const TWO: FieldElem = FieldElem { lo: 0, hi: 1 };

    pub fn is_zero(self) -> bool {
        (self.lo | self.hi) == 0
    }

    pub fn digit(self, i: u32) -> Gf3 {
        Gf3::new(((self.lo >> i) & 1) as u8 + 2 * ((self.hi >> i) & 1) as u8)
    }

    fn with_digit(self, i: u32, d: Gf3) -> FieldElem {
        let bit = 1 << i;
        let (lo, hi) = (self.lo & !bit, self.hi & !bit);
        match d.value() {
            1 => FieldElem { lo: lo | bit, hi },
            2 => FieldElem { lo, hi: hi | bit },
            _ => FieldElem { lo, hi },
        }
    }

    /// Packed `lo | hi << m`, unique per element for a given `m`.
    pub fn key(self, m: u32) -> u64 {
        self.lo as u64 | (self.hi as u64) << m
    }

    /// Base-3 value `Σ c_i 3^i`; the canonical enumeration index.
    pub fn index(self) -> u64 {
        let top = 32 - (self.lo | self.hi).leading_zeros();
        (0..top)
            .rev()
            .fold(0u64, |acc, i| acc * 3 + self.digit(i).value() as u64)
    }

    pub fn from_index(mut idx: u64) -> FieldElem {
        let mut out = FieldElem::ZERO;
        let mut i = 0;
        while idx > 0 {
            out = out.with_digit(i, Gf3::new((idx % 3) as u8));
            idx /= 3;
            i += 1;
        }
        out
    }

    pub fn to_poly(self) -> Poly {
        let top = 32 - (self.lo | self.hi).leading_zeros();
        Poly::new((0..top).map(|i| self.digit(i)).collect())
    }

    /// Lowest nonzero coefficient, if any.
    pub fn first_nonzero(self) -> Option<Gf3> {
        let bits = self.lo | self.hi;
        (bits != 0).then(|| self.digit(bits.trailing_zeros()))
    }

    #[inline]
    pub fn add(self, b: FieldElem) -> FieldElem {
        let t = (self.lo | b.hi) ^ (self.hi | b.lo);
        FieldElem {
            lo: (self.hi | b.hi) ^ t,
            hi: (self.lo | b.lo) ^ t,
        }
    }

    #[inline]
    pub fn neg(self) -> FieldElem {
        FieldElem {
            lo: self.hi,
            hi: self.lo,
        }
    }

    #[inline]
    pub fn sub(self, b: FieldElem) -> FieldElem {
        self.add(b.neg())
    }

    #[inline]
    pub fn scale(self, c: Gf3) -> FieldElem {
        match c.value() {
            0 => FieldElem::ZERO,
            1 => self,
            _ => self.neg(),
        }
    }
}

/// Ascending base-3 value, so sorted solution sets follow enumeration order.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = (self.lo ^ other.lo) | (self.hi ^ other.hi);
        if diff == 0 {
            return Ordering::Equal;
        }
        let i = 31 - diff.leading_zeros();
        self.digit(i).cmp(&other.digit(i))
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({})", self.to_poly())
    }
}

struct LogTables {
    exp: Vec<FieldElem>,
    /// Indexed by [`FieldElem::key`]; `u32::MAX` marks zero.
    log: Vec<u32>,
}

/// A constructed GF(3^m): modulus, primitive generator `α = x mod modulus`, order `3^m - 1`.
pub struct FieldCtx {
    m: u32,
    modulus: Poly,
    /// `x^m mod modulus` as an element.
    x_pow_m: FieldElem,
    generator: FieldElem,
    order: u64,
    tables: OnceLock<Option<LogTables>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("order", &self.order)
            .finish()
    }
}

impl Clone for FieldCtx {
    fn clone(&self) -> Self {
        FieldCtx {
            m: self.m,
            modulus: self.modulus.clone(),
            x_pow_m: self.x_pow_m,
            generator: self.generator,
            order: self.order,
            tables: OnceLock::new(),
        }
    }
}

fn check_m(m: u32) -> Result<()> {
    if (1..=MAX_M).contains(&m) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(m))
    }
}

/// Monic degree-`m` polynomials in ascending base-3 order that are irreducible
/// and have `x` primitive.
pub fn primitive_moduli(m: u32) -> Result<impl Iterator<Item = Poly>> {
    check_m(m)?;
    let base = 3u128.pow(m);
    Ok((0..base).filter_map(move |low| {
        let f = Poly::from_index(base + low);
        if !f.is_irreducible().ok()? {
            return None;
        }
        let ctx = FieldCtx::raw(m, f.clone());
        ctx.is_primitive(ctx.generator).then_some(f)
    }))
}

impl FieldCtx {
    /// Builds GF(3^m) on the first primitive modulus in canonical order.
    pub fn build(m: u32) -> Result<FieldCtx> {
        let modulus = primitive_moduli(m)?
            .next()
            .ok_or_else(|| Error::Internal(format!("no primitive polynomial of degree {m}")))?;
        Ok(FieldCtx::raw(m, modulus))
    }

    /// Builds GF(3^m) on a caller-chosen modulus, which must be monic
    /// irreducible of degree `m` with `x` primitive.
    pub fn with_modulus(modulus: Poly) -> Result<FieldCtx> {
        let m = modulus.degree().unwrap_or(0) as u32;
        check_m(m)?;
        if !modulus.is_monic() || !modulus.is_irreducible()? {
            return Err(Error::InvalidParameters(format!(
                "{modulus} is not a monic irreducible"
            )));
        }
        let ctx = FieldCtx::raw(m, modulus);
        if !ctx.is_primitive(ctx.generator) {
            return Err(Error::InvalidParameters(format!(
                "x is not primitive modulo {}",
                ctx.modulus
            )));
        }
        Ok(ctx)
    }

    fn raw(m: u32, modulus: Poly) -> FieldCtx {
        let x_pow_m = FieldElem::ZERO;
        let mut ctx = FieldCtx {
            m,
            x_pow_m,
            generator: FieldElem::ZERO,
            order: 3u64.pow(m) - 1,
            tables: OnceLock::new(),
            modulus,
        };
        // x^m ≡ -(c_0 + ... + c_{m-1} x^{m-1})
        let mut r = FieldElem::ZERO;
        for i in 0..m {
            r = r.with_digit(i, -ctx.modulus.coeff(i as usize));
        }
        ctx.x_pow_m = r;
        ctx.generator = ctx.from_poly(&Poly::x());
        ctx
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    /// `3^m - 1`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `3^m`.
    pub fn size(&self) -> u64 {
        self.order + 1
    }

    fn mask(&self) -> u32 {
        ((1u64 << self.m) - 1) as u32
    }

    /// Reduces a polynomial modulo the field modulus.
    pub fn from_poly(&self, p: &Poly) -> FieldElem {
        let r = p.rem(&self.modulus).expect("modulus has degree ≥ 1");
        let mut out = FieldElem::ZERO;
        for (i, &c) in r.coeffs().iter().enumerate() {
            out = out.with_digit(i as u32, c);
        }
        out
    }

    /// Element from exactly `m` coefficients.
    pub fn from_coeffs(&self, coeffs: &[Gf3]) -> Result<FieldElem> {
        if coeffs.len() != self.m as usize {
            return Err(Error::ElementLength {
                expected: self.m as usize,
                got: coeffs.len(),
            });
        }
        Ok(coeffs
            .iter()
            .enumerate()
            .fold(FieldElem::ZERO, |a, (i, &c)| a.with_digit(i as u32, c)))
    }

    /// The length-`m` coefficient sequence.
    pub fn coeffs(&self, a: FieldElem) -> Vec<Gf3> {
        (0..self.m).map(|i| a.digit(i)).collect()
    }

    pub fn constant(&self, c: Gf3) -> FieldElem {
        FieldElem::ONE.scale(c)
    }

    /// Text form `c0,c1,...,c_{m-1}`.
    pub fn format_elem(&self, a: FieldElem) -> String {
        (0..self.m)
            .map(|i| a.digit(i).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_elem(&self, text: &str) -> Result<FieldElem> {
        let p = crate::text::parse_list(text)?;
        let n = text.split(',').count();
        if n != self.m as usize {
            return Err(Error::ElementLength {
                expected: self.m as usize,
                got: n,
            });
        }
        Ok(self.from_poly(&p))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        a.add(b)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        a.sub(b)
    }

    #[inline]
    fn mul_x(&self, a: FieldElem) -> FieldElem {
        let top = self.m;
        let shifted = FieldElem {
            lo: (a.lo << 1) & self.mask(),
            hi: (a.hi << 1) & self.mask(),
        };
        match ((a.lo >> (top - 1)) & 1, (a.hi >> (top - 1)) & 1) {
            (1, _) => shifted.add(self.x_pow_m),
            (_, 1) => shifted.sub(self.x_pow_m),
            _ => shifted,
        }
    }

    /// Shift-and-add multiplication modulo the field modulus.
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        let mut cur = a;
        let mut bits = b.lo | b.hi;
        let mut i = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                if (b.lo >> i) & 1 == 1 {
                    acc = acc.add(cur);
                } else {
                    acc = acc.sub(cur);
                }
            }
            bits >>= 1;
            i += 1;
            if bits != 0 {
                cur = self.mul_x(cur);
            }
        }
        acc
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// Frobenius map `a ↦ a^3`.
    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.mul(self.square(a), a)
    }

    /// `a^(3^d)`.
    pub fn frobenius_iter(&self, a: FieldElem, d: u32) -> FieldElem {
        (0..d).fold(a, |acc, _| self.frobenius(acc))
    }

    /// Multiplicative inverse by extended Euclid against the modulus.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (g, s, _) = a.to_poly().ext_gcd(&self.modulus)?;
        debug_assert!(g.is_one());
        Ok(self.from_poly(&s))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.is_zero() {
            return if e == 0 {
                FieldElem::ONE
            } else {
                FieldElem::ZERO
            };
        }
        PowPlan::new(e % self.order).apply(self, a)
    }

    /// `α^i`, with `i` reduced modulo the group order.
    pub fn exp_of_generator(&self, i: i64) -> FieldElem {
        let i = i.rem_euclid(self.order as i64) as u64;
        match self.tables() {
            Some(t) => t.exp[i as usize],
            None => self.pow(self.generator, i),
        }
    }

    /// Discrete logarithm to base `α`; `None` for zero.
    pub fn log(&self, a: FieldElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        match self.tables() {
            Some(t) => Some(t.log[a.key(self.m) as usize] as u64),
            None => {
                let mut cur = FieldElem::ONE;
                for i in 0..self.order {
                    if cur == a {
                        return Some(i);
                    }
                    cur = self.mul(cur, self.generator);
                }
                None
            }
        }
    }

    fn tables(&self) -> Option<&LogTables> {
        self.tables
            .get_or_init(|| {
                (self.m <= LOG_TABLE_MAX_M).then(|| {
                    let mut exp = Vec::with_capacity(self.order as usize);
                    let mut log = vec![u32::MAX; 1 << (2 * self.m)];
                    let mut cur = FieldElem::ONE;
                    for i in 0..self.order {
                        exp.push(cur);
                        log[cur.key(self.m) as usize] = i as u32;
                        cur = self.mul(cur, self.generator);
                    }
                    LogTables { exp, log }
                })
            })
            .as_ref()
    }

    /// True iff `a` has multiplicative order exactly `3^m - 1`.
    pub fn is_primitive(&self, a: FieldElem) -> bool {
        if a.is_zero() {
            return false;
        }
        prime_factors(self.order)
            .into_iter()
            .all(|q| self.pow(a, self.order / q) != FieldElem::ONE)
    }

    /// Every element once, in ascending base-3 order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size()).map(FieldElem::from_index)
    }

    /// The `idx`-th element in enumeration order.
    pub fn element_at(&self, idx: u64) -> FieldElem {
        FieldElem::from_index(idx)
    }
}

/// Binary addition chain for a fixed exponent, reused across an element scan.
#[derive(Clone, Debug)]
pub struct PowPlan {
    exponent: u64,
}

impl PowPlan {
    pub fn new(exponent: u64) -> Self {
        PowPlan { exponent }
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `a^exponent`, left-to-right square-and-multiply (`0^0 = 1`).
    pub fn apply(&self, ctx: &FieldCtx, a: FieldElem) -> FieldElem {
        let e = self.exponent;
        if e == 0 {
            return FieldElem::ONE;
        }
        let mut acc = a;
        for i in (0..63 - e.leading_zeros()).rev() {
            acc = ctx.square(acc);
            if (e >> i) & 1 == 1 {
                acc = ctx.mul(acc, a);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bitsliced_addition_matches_mod3() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                let s = FieldElem::ONE
                    .scale(Gf3::new(a))
                    .add(FieldElem::ONE.scale(Gf3::new(b)));
                assert_eq!(s.digit(0), Gf3::new(a + b));
            }
        }
    }

    #[test]
    fn m1_generator_is_minus_one() {
        let f = FieldCtx::build(1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.generator(), FieldElem::TWO);
        assert_eq!(f.modulus(), &Poly::from_u8s(&[1, 1]));
    }

    #[test]
    fn m4_generator_order() {
        let f = FieldCtx::build(4).unwrap();
        let a = f.generator();
        assert_eq!(f.order(), 80);
        assert_eq!(f.pow(a, 80), FieldElem::ONE);
        assert_ne!(f.pow(a, 40), FieldElem::ONE);
        assert_ne!(f.pow(a, 16), FieldElem::ONE);
        assert!(f.modulus().is_irreducible().unwrap());
    }

    #[test]
    fn m6_cofactor_checks() {
        let f = FieldCtx::build(6).unwrap();
        assert_eq!(f.order(), 728);
        assert_eq!(prime_factors(728), vec![2, 7, 13]);
        for q in [2, 7, 13] {
            assert_ne!(f.pow(f.generator(), 728 / q), FieldElem::ONE);
        }
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert_eq!(FieldCtx::build(0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(
            FieldCtx::build(21).unwrap_err(),
            Error::DegreeOutOfRange(21)
        );
    }

    #[test]
    fn modulus_is_first_primitive_in_order() {
        for m in 2..=5 {
            let f = FieldCtx::build(m).unwrap();
            let base = 3u128.pow(m);
            for low in 0..base {
                let cand = Poly::from_index(base + low);
                if cand == *f.modulus() {
                    break;
                }
                let ok =
                    cand.is_irreducible().unwrap() && FieldCtx::with_modulus(cand.clone()).is_ok();
                assert!(!ok, "{cand} precedes {}", f.modulus());
            }
        }
    }

    #[test]
    fn arithmetic_identities() {
        let f = FieldCtx::build(5).unwrap();
        let a = f.generator();
        for x in f.elements().take(50) {
            assert_eq!(f.add(x, FieldElem::ZERO), x);
            assert_eq!(f.mul(x, FieldElem::ONE), x);
        }
        assert_eq!(f.mul(a, f.pow(a, f.order() - 1)), FieldElem::ONE);
        assert_eq!(f.inv(FieldElem::ONE).unwrap(), FieldElem::ONE);
        assert_eq!(f.inv(FieldElem::TWO).unwrap(), FieldElem::TWO);
        assert_eq!(f.inv(a).unwrap(), f.pow(a, f.order() - 1));
        assert_eq!(f.inv(FieldElem::ZERO), Err(Error::ZeroInverse));
        assert_eq!(f.pow(FieldElem::ZERO, 0), FieldElem::ONE);
        assert_eq!(f.pow(FieldElem::ZERO, 5), FieldElem::ZERO);
        assert_eq!(f.pow(a, 0), FieldElem::ONE);
        assert_eq!(f.pow(a, f.order()), FieldElem::ONE);
    }

    #[test]
    fn mul_agrees_with_polynomial_reduction() {
        let f = FieldCtx::build(7).unwrap();
        for i in (0..f.size()).step_by(97) {
            for j in (0..f.size()).step_by(131) {
                let (a, b) = (FieldElem::from_index(i), FieldElem::from_index(j));
                let want = f.from_poly(&(a.to_poly() * b.to_poly()));
                assert_eq!(f.mul(a, b), want);
            }
        }
    }

    #[test]
    fn exp_of_generator_is_a_bijection() {
        for m in 1..=6 {
            let f = FieldCtx::build(m).unwrap();
            assert_eq!(f.exp_of_generator(0), FieldElem::ONE);
            assert_eq!(f.exp_of_generator(f.order() as i64), FieldElem::ONE);
            assert_eq!(f.exp_of_generator(-1), f.inv(f.generator()).unwrap());
            let mut seen: Vec<_> = (0..f.order() as i64)
                .map(|i| f.exp_of_generator(i))
                .collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len() as u64, f.order());
            assert!(!seen.contains(&FieldElem::ZERO));
            for i in 0..f.order() {
                assert_eq!(f.log(f.exp_of_generator(i as i64)), Some(i));
            }
        }
    }

    #[test]
    fn log_without_tables_matches() {
        let f = FieldCtx::build(11).unwrap();
        let a = f.exp_of_generator(12345);
        assert_eq!(f.log(a), Some(12345));
    }

    #[test]
    fn enumeration_is_complete_and_ordered() {
        let f1 = FieldCtx::build(1).unwrap();
        let v: Vec<_> = f1.elements().collect();
        assert_eq!(v, vec![FieldElem::ZERO, FieldElem::ONE, FieldElem::TWO]);
        let f2 = FieldCtx::build(2).unwrap();
        let mut v: Vec<_> = f2.elements().collect();
        assert_eq!(v.len(), 9);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        v.dedup();
        assert_eq!(v.len(), 9);
        let f4 = FieldCtx::build(4).unwrap();
        let powers = f4
            .elements()
            .filter(|&x| (0..80).any(|i| f4.exp_of_generator(i) == x))
            .count();
        assert_eq!(f4.elements().count(), 81);
        assert_eq!(powers, 80);
    }

    #[test]
    fn every_element_is_fixed_by_full_frobenius() {
        for m in 1..=6 {
            let f = FieldCtx::build(m).unwrap();
            for x in f.elements() {
                assert_eq!(f.frobenius_iter(x, m), x);
            }
        }
    }

    #[test]
    fn elem_text_form() {
        let f = FieldCtx::build(4).unwrap();
        let a = f.generator();
        assert_eq!(f.format_elem(a), "0,1,0,0");
        assert_eq!(f.parse_elem("0,1,0,0").unwrap(), a);
        assert!(f.parse_elem("0,1,0").is_err());
        assert_eq!(f.coeffs(a).len(), 4);
        assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        assert!(f.from_coeffs(&[Gf3::ONE]).is_err());
    }

    fn field_axioms(m: u32, cases: usize) {
        use rand::{Rng, SeedableRng};
        let f = FieldCtx::build(m).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(m as u64);
        for _ in 0..cases {
            let [a, b, c] = [(); 3].map(|_| FieldElem::from_index(rng.gen_range(0..f.size())));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(
                f.frobenius(f.add(a, b)),
                f.add(f.frobenius(a), f.frobenius(b))
            );
            assert_eq!(
                f.frobenius(f.mul(a, b)),
                f.mul(f.frobenius(a), f.frobenius(b))
            );
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        for m in [2, 4, 6] {
            field_axioms(m, 10_000);
        }
    }

    proptest! {
        #[test]
        fn pow_of_frobenius_power(idx in 0u64..729, h in 0u32..6, j in 0u64..2000) {
            let f = FieldCtx::build(6).unwrap();
            let x = FieldElem::from_index(idx);
            let lhs = f.pow(x, 3u64.pow(h) * j);
            let rhs = f.pow(f.frobenius_iter(x, h), j);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
