//! Complete factorization over GF(3): squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3::Gf3;
use crate::poly::Poly;

/// Seed used by [`factor`] so factorizations are reproducible.
pub const DEFAULT_SEED: u64 = 0;

/// `unit · Π factor^multiplicity`, factors monic irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Gf3,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (f, k)| {
                acc * f.pow(*k as u64)
            })
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, k)| f.degree().unwrap_or(0) * *k as usize)
            .sum()
    }

    pub fn multiplicity(&self, f: &Poly) -> u32 {
        let target = f.monic();
        self.factors
            .iter()
            .find(|(g, _)| *g == target)
            .map_or(0, |(_, k)| *k)
    }

    /// Builds a factorization from arbitrary (possibly non-monic) factors,
    /// folding leading coefficients into the unit and merging repeats.
    pub fn from_parts(unit: Gf3, parts: impl IntoIterator<Item = (Poly, u32)>) -> Self {
        let mut unit = unit;
        let mut merged: BTreeMap<Poly, u32> = BTreeMap::new();
        for (p, k) in parts {
            let (lead, monic) = p.monic_parts();
            for _ in 0..k {
                unit = unit * lead;
            }
            if monic.is_one() {
                continue;
            }
            *merged.entry(monic).or_default() += k;
        }
        Factorization {
            unit,
            factors: merged.into_iter().collect(),
        }
    }
}

/// Serializable view: `{unit, factors: [{poly, multiplicity}]}` with human-form polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub poly: String,
    pub multiplicity: u32,
}

impl Factorization {
    pub fn entries(&self) -> Vec<FactorEntry> {
        self.factors
            .iter()
            .map(|(p, k)| FactorEntry {
                poly: p.to_string(),
                multiplicity: *k,
            })
            .collect()
    }
}

/// Factors `f` with the default seed.
pub fn factor(f: &Poly) -> Result<Factorization> {
    factor_with_seed(f, DEFAULT_SEED)
}

pub fn factor_with_seed(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::FactorZero);
    }
    let (unit, monic) = f.monic_parts();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    for (sqf, mult) in squarefree(&monic)? {
        for (block, d) in distinct_degree(&sqf)? {
            for irr in equal_degree(&block, d, &mut rng)? {
                parts.push((irr, mult));
            }
        }
    }
    Ok(Factorization::from_parts(unit, parts))
}

/// `f^(1/3)` for a polynomial in `x^3` (valid because `c^3 = c` in GF(3)).
fn cube_root(f: &Poly) -> Poly {
    Poly::new(f.coeffs().iter().step_by(3).copied().collect())
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime squarefree
/// parts with multiplicities.
pub fn squarefree(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let df = f.derivative();
    if df.is_zero() {
        for (p, k) in squarefree(&cube_root(f))? {
            out.push((p, k * 3));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&df)?;
    let mut w = f.divrem(&c)?.0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let fac = w.divrem(&y)?.0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w)?.0;
    }
    if !c.is_one() {
        for (p, k) in squarefree(&cube_root(&c))? {
            out.push((p, k * 3));
        }
    }
    Ok(out)
}

/// Splits a squarefree monic polynomial into products of irreducibles sharing a degree.
pub fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::x();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.cube().rem(&rest)?;
        let g = (&h - &x).gcd(&rest)?;
        if !g.is_one() {
            rest = rest.divrem(&g)?.0;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    Ok(out)
}

fn random_poly(rng: &mut ChaCha8Rng, below: usize) -> Poly {
    Poly::new((0..below).map(|_| Gf3::new(rng.gen_range(0..3))).collect())
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = f.degree().ok_or(Error::FactorZero)?;
    if n == d {
        return Ok(vec![f.monic()]);
    }
    loop {
        let a = random_poly(rng, n);
        if a.is_constant() {
            continue;
        }
        let g = a.gcd(f)?;
        if !g.is_one() {
            return split_on(f, &g, d, rng);
        }
        // a^((3^d - 1)/2) = Π_{i<d} a^(3^i)
        let mut t = a.rem(f)?;
        let mut acc = Poly::one();
        for _ in 0..d {
            acc = (&acc * &t).rem(f)?;
            t = t.cube().rem(f)?;
        }
        let g = (&acc - &Poly::one()).gcd(f)?;
        if !g.is_one() && g.degree() != f.degree() {
            return split_on(f, &g, d, rng);
        }
    }
}

fn split_on(f: &Poly, g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let other = f.divrem(g)?.0;
    let mut out = equal_degree(g, d, rng)?;
    out.extend(equal_degree(&other, d, rng)?);
    Ok(out)
}
