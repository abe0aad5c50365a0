//! Dense univariate polynomials over GF(3).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf3::Gf3;

/// A polynomial over GF(3), stored in ascending degree order.
///
/// `coeffs[i]` is the coefficient of `x^i`. The vector never ends in a zero
/// coefficient; the zero polynomial is the empty vector and has degree `None`,
/// which orders below every `Some(d)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Gf3>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Gf3>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from ascending residues; values are reduced mod 3.
    pub fn from_u8s(coeffs: &[u8]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Gf3::new(c)).collect())
    }

    /// Builds a polynomial from signed ascending coefficients (`-1 ↦ 2`).
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Gf3::from_i64(c)).collect())
    }

    /// Builds `Σ c·x^d` from `(degree, signed coefficient)` terms.
    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        let top = terms.iter().map(|t| t.0).max().map_or(0, |d| d + 1);
        let mut coeffs = vec![Gf3::ZERO; top];
        for &(d, c) in terms {
            coeffs[d] = coeffs[d] + Gf3::from_i64(c);
        }
        Poly::new(coeffs)
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Gf3::ONE)
    }

    pub fn x() -> Self {
        Poly::monomial(Gf3::ONE, 1)
    }

    pub fn constant(c: Gf3) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Gf3, degree: usize) -> Self {
        let mut coeffs = vec![Gf3::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Gf3] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Gf3 {
        self.coeffs.get(i).copied().unwrap_or(Gf3::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Gf3::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Gf3 {
        self.coeffs.last().copied().unwrap_or(Gf3::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Gf3::ONE
    }

    pub fn scale(&self, c: Gf3) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Splits off the leading coefficient: `self = unit · monic`.
    ///
    /// The zero polynomial returns `(0, 0)`.
    pub fn monic_parts(&self) -> (Gf3, Poly) {
        let lead = self.leading();
        match lead.inv() {
            Some(inv) => (lead, self.scale(inv)),
            None => (Gf3::ZERO, Poly::zero()),
        }
    }

    pub fn monic(&self) -> Poly {
        self.monic_parts().1
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Gf3::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn eval(&self, x: Gf3) -> Gf3 {
        self.coeffs
            .iter()
            .rev()
            .fold(Gf3::ZERO, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * Gf3::new((i % 3) as u8))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^3`. In characteristic 3 this only spreads the coefficients.
    pub fn cube(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Gf3::ZERO; 3 * self.coeffs.len() - 2];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[3 * i] = c;
        }
        Poly { coeffs }
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = divisor.leading().inv().expect("normalized divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Gf3::ZERO; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd] * lead_inv;
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j] - c * d;
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `g = s·self + t·other`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.leading().inv().expect("nonzero gcd");
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn powmod(&self, mut e: u128, modulus: &Poly) -> Result<Poly> {
        check_modulus(modulus)?;
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one().rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// `self^(3^d) mod modulus`, by `d` successive cubings.
    pub fn frobenius_power(&self, d: u32, modulus: &Poly) -> Result<Poly> {
        check_modulus(modulus)?;
        let mut acc = self.rem(modulus)?;
        for _ in 0..d {
            acc = acc.cube().rem(modulus)?;
        }
        Ok(acc)
    }

    /// Rabin's test: `x^(3^n) ≡ x (mod f)` and `gcd(x^(3^(n/p)) - x, f) = 1`
    /// for every prime `p | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::ConstantPolynomial),
        };
        if n == 1 {
            return Ok(true);
        }
        let x = Poly::x();
        // x^(3^k) mod f for k = 0..=n
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.rem(self)?);
        for k in 1..=n {
            let next = frob[k - 1].cube().rem(self)?;
            frob.push(next);
        }
        if frob[n] != frob[0] {
            return Ok(false);
        }
        for p in prime_factors(n as u64) {
            let k = n / p as usize;
            let g = (&frob[k] - &x).gcd(self)?;
            if !g.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Base-3 value `Σ c_i 3^i`, the canonical enumeration index. `None` on overflow.
    pub fn index(&self) -> Option<u128> {
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(3)?.checked_add(c.value() as u128)?;
        }
        Some(acc)
    }

    /// Inverse of [`Poly::index`].
    pub fn from_index(mut idx: u128) -> Poly {
        let mut coeffs = Vec::new();
        while idx > 0 {
            coeffs.push(Gf3::new((idx % 3) as u8));
            idx /= 3;
        }
        Poly::new(coeffs)
    }
}

fn check_modulus(modulus: &Poly) -> Result<()> {
    match modulus.degree() {
        Some(d) if d >= 1 => Ok(()),
        _ => Err(Error::BadModulus),
    }
}

/// Distinct prime divisors of `n`, ascending, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Canonical order: by degree, then by base-3 value (highest coefficient first).
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_coeffs(a: &[Gf3], b: &[Gf3], negate_b: bool) -> Poly {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(Gf3::ZERO);
        let y = b.get(i).copied().unwrap_or(Gf3::ZERO);
        out.push(if negate_b { x - y } else { x + y });
    }
    Poly::new(out)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut acc = vec![0u8; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a.value() * b.value()) % 3;
            }
        }
        Poly::new(acc.into_iter().map(Gf3::new).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(Gf3::TWO)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}
