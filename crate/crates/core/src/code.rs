//! The cyclic code `C(1,e)` with generator `m_1(x)·m_e(x)`, its parity-check
//! columns, a brute-force search for codewords of weight ≤ 3, and the
//! sphere-packing bound.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{coset, minimal_polynomial};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::gf3::Gf3;
use crate::poly::Poly;

/// Largest `m` the weight-≤3 search runs at by default.
pub const SEARCH_DEFAULT_MAX_M: u32 = 8;
/// Hard ceiling for the weight-≤3 search, reachable with an explicit opt-in.
pub const SEARCH_LONG_MAX_M: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub m: u32,
    pub e: u64,
    /// `3^m - 1`.
    pub n: u64,
    pub generator: Poly,
    pub k: u64,
}

fn check_exponent(ctx: &FieldCtx, e: u64) -> Result<()> {
    let max = ctx.order() - 1;
    if (1..=max).contains(&e) {
        Ok(())
    } else {
        Err(Error::ExponentOutOfRange { e, max })
    }
}

/// Builds `C(1,e)`; rejects `e` conjugate to 1.
pub fn build_code(ctx: &FieldCtx, e: u64) -> Result<CodeSpec> {
    check_exponent(ctx, e)?;
    let c1 = coset(1, 3, ctx.m())?;
    if c1.contains(e) {
        return Err(Error::ConjugateExponent {
            e,
            coset: c1.members,
        });
    }
    let generator = minimal_polynomial(ctx, 1)? * minimal_polynomial(ctx, e as i64)?;
    let n = ctx.order();
    let k = n - generator.degree().unwrap_or(0) as u64;
    Ok(CodeSpec {
        m: ctx.m(),
        e,
        n,
        generator,
        k,
    })
}

impl CodeSpec {
    /// True iff the generator divides `word`; `word` must have degree `< n`.
    pub fn is_codeword(&self, word: &Poly) -> bool {
        debug_assert!(word.degree().is_none_or(|d| (d as u64) < self.n));
        word.rem(&self.generator)
            .expect("generator is nonzero")
            .is_zero()
    }
}

/// Column `j` of the parity-check matrix is `(α^j, α^(e·j))`.
pub fn parity_check_columns(ctx: &FieldCtx, e: u64) -> Vec<(FieldElem, FieldElem)> {
    let n = ctx.order();
    (0..n)
        .map(|j| {
            let j = j as i64;
            let ej = ((e as u128 * j as u128) % n as u128) as i64;
            (ctx.exp_of_generator(j), ctx.exp_of_generator(ej))
        })
        .collect()
}

/// `(Σ c_j α^j, Σ c_j α^(e·j))` for a sparse word.
pub fn syndrome(ctx: &FieldCtx, e: u64, word: &[(u64, Gf3)]) -> (FieldElem, FieldElem) {
    let n = ctx.order();
    word.iter()
        .fold((FieldElem::ZERO, FieldElem::ZERO), |(s0, s1), &(j, c)| {
            let ej = ((e as u128 * j as u128) % n as u128) as i64;
            (
                s0.add(ctx.exp_of_generator(j as i64).scale(c)),
                s1.add(ctx.exp_of_generator(ej).scale(c)),
            )
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightVerdict {
    #[serde(rename = "no_word_below_4")]
    NoWordBelow4,
    Found,
}

/// Outcome of the weight-≤3 search. A found word is given as `(position, value)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightWitness {
    pub verdict: WeightVerdict,
    pub word: Option<Vec<(u64, Gf3)>>,
}

impl WeightWitness {
    pub fn weight(&self) -> Option<usize> {
        self.word.as_ref().map(Vec::len)
    }

    fn found(word: Vec<(u64, Gf3)>) -> Self {
        WeightWitness {
            verdict: WeightVerdict::Found,
            word: Some(word),
        }
    }
}

/// Scales a column so its first nonzero GF(3) coordinate is 1. Returns the
/// normalized pair and the scalar applied.
fn normalize(u: FieldElem, v: FieldElem) -> ((FieldElem, FieldElem), Gf3) {
    let lead = u
        .first_nonzero()
        .or_else(|| v.first_nonzero())
        .unwrap_or(Gf3::ONE);
    ((u.scale(lead), v.scale(lead)), lead)
}

/// Refuses searches beyond the default budget unless `allow_long` is set.
pub fn check_search_budget(m: u32, allow_long: bool) -> Result<()> {
    let n = 3u64.pow(m.min(SEARCH_LONG_MAX_M + 1)) - 1;
    let lookups = n * (n - 1) / 2 * 4;
    if m > SEARCH_LONG_MAX_M {
        return Err(Error::InvalidParameters(format!(
            "weight search supports m ≤ {SEARCH_LONG_MAX_M}"
        )));
    }
    if m > SEARCH_DEFAULT_MAX_M && !allow_long {
        return Err(Error::InvalidParameters(format!(
            "m = {m} needs about {lookups} pair lookups; pass --allow-long to run it"
        )));
    }
    Ok(())
}

/// Estimated lookups performed by [`min_weight_leq3_search`] at degree `m`.
pub fn search_pair_lookups(m: u32) -> u64 {
    let n = 3u64.pow(m) - 1;
    n * (n - 1) / 2 * 4
}

/// Exhaustive search for a nonzero codeword of weight ≤ 3.
///
/// Weight 1 and 2 words are column collisions after normalization; weight 3
/// words are found by looking up `-(λ1·c_i + λ2·c_j)` for every pair `i < j`,
/// keeping hits with index above `j`. The reported witness is the one with the
/// lowest `(i, j)` pair, independent of the thread count.
pub fn min_weight_leq3_search(ctx: &FieldCtx, e: u64) -> Result<WeightWitness> {
    check_exponent(ctx, e)?;
    let m = ctx.m();
    if m > SEARCH_LONG_MAX_M {
        return Err(Error::InvalidParameters(format!(
            "weight search supports m ≤ {SEARCH_LONG_MAX_M}"
        )));
    }
    let cols = parity_check_columns(ctx, e);
    let n = cols.len();

    // weight 1: a zero column
    if let Some(j) = cols.iter().position(|c| c.0.is_zero() && c.1.is_zero()) {
        return Ok(WeightWitness::found(vec![(j as u64, Gf3::ONE)]));
    }

    // Membership table keyed by the normalized first coordinate. Every column
    // has a nonzero first coordinate, and each normalized value is shared by
    // exactly the columns j and j + n/2.
    const EMPTY: u32 = u32::MAX;
    let mut table = vec![[EMPTY; 2]; 1usize << (2 * m)];
    let mut normed = Vec::with_capacity(n);
    for (j, &(u, v)) in cols.iter().enumerate() {
        let (nc, _) = normalize(u, v);
        normed.push(nc);
        let slot = &mut table[nc.0.key(m) as usize];
        if slot[0] == EMPTY {
            slot[0] = j as u32;
        } else {
            slot[1] = j as u32;
        }
    }

    // weight 2: two columns equal up to a scalar
    for (i, &(u, v)) in cols.iter().enumerate() {
        let nc = normed[i];
        for &j in &table[nc.0.key(m) as usize] {
            if j != EMPTY && j as usize > i && normed[j as usize] == nc {
                // λ·c_j = c_i for λ = u_i / u_j ∈ {1, 2}
                let lambda = if cols[j as usize].0 == u {
                    Gf3::ONE
                } else {
                    Gf3::TWO
                };
                debug_assert_eq!(cols[j as usize].1.scale(lambda), v);
                return Ok(WeightWitness::found(vec![
                    (i as u64, Gf3::ONE),
                    (j as u64, -lambda),
                ]));
            }
        }
    }

    // weight 3
    let lambdas = [Gf3::ONE, Gf3::TWO];
    let hit = (0..n).into_par_iter().find_map_first(|i| {
        let (ui, vi) = cols[i];
        for j in i + 1..n {
            let (uj, vj) = cols[j];
            for &l1 in &lambdas {
                for &l2 in &lambdas {
                    let tu = ui.scale(l1).add(uj.scale(l2)).neg();
                    if tu.is_zero() {
                        continue;
                    }
                    let tv = vi.scale(l1).add(vj.scale(l2)).neg();
                    let (nt, _) = normalize(tu, tv);
                    for &k in &table[nt.0.key(m) as usize] {
                        if k == EMPTY || (k as usize) <= j || normed[k as usize] != nt {
                            continue;
                        }
                        // λ3·c_k = t
                        let l3 = if cols[k as usize].0 == tu {
                            Gf3::ONE
                        } else {
                            Gf3::TWO
                        };
                        return Some(vec![(i as u64, l1), (j as u64, l2), (k as u64, l3)]);
                    }
                }
            }
        }
        None
    });

    Ok(match hit {
        Some(word) => WeightWitness::found(word),
        None => WeightWitness {
            verdict: WeightVerdict::NoWordBelow4,
            word: None,
        },
    })
}

/// `Σ_{i ≤ t} C(n, i)·(q - 1)^i`, the Hamming ball volume.
pub fn ball_size(n: u64, t: u64, q: u64) -> BigUint {
    let mut total = BigUint::from(0u32);
    let mut term = BigUint::from(1u32); // C(n,i)(q-1)^i
    for i in 0..=t.min(n) {
        if i > 0 {
            term = term * (n - i + 1) * (q - 1) / i;
        }
        total += &term;
    }
    total
}

/// Whether `q^k · V(n, ⌊(d-1)/2⌋) ≤ q^n`.
pub fn sphere_packing_admits(n: u64, k: u64, d: u64, q: u64) -> bool {
    let t = d.saturating_sub(1) / 2;
    ball_size(n, t, q) <= BigUint::from(q).pow((n - k) as u32)
}

/// Largest `d ≥ 1` allowed by the sphere-packing bound for an `[n, k]` code over `q` symbols.
pub fn sphere_packing_max_d(n: u64, k: u64, q: u64) -> Result<u64> {
    if !(1..=n).contains(&k) || q < 2 || n - k > u32::MAX as u64 {
        return Err(Error::InvalidParameters(format!(
            "sphere packing needs 1 ≤ k ≤ n and q ≥ 2 (n = {n}, k = {k}, q = {q})"
        )));
    }
    let budget = BigUint::from(q).pow((n - k) as u32);
    let mut total = BigUint::from(1u32);
    let mut term = BigUint::from(1u32);
    let mut t = 0;
    // k ≥ 1 means the ball of radius n never fits
    while t < n {
        let i = t + 1;
        term = term * (n - i + 1) * (q - 1) / i;
        total += &term;
        if total > budget {
            break;
        }
        t = i;
    }
    Ok(2 * t + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_code_examples() {
        let ctx4 = FieldCtx::build(4).unwrap();
        let c = build_code(&ctx4, 14).unwrap();
        assert_eq!((c.n, c.k), (80, 72));
        assert_eq!(c.generator.degree(), Some(8));
        let xn1 = &Poly::monomial(Gf3::ONE, 80) - &Poly::one();
        assert!(xn1.rem(&c.generator).unwrap().is_zero());
        assert_eq!(
            build_code(&ctx4, 3),
            Err(Error::ConjugateExponent {
                e: 3,
                coset: vec![1, 3, 9, 27]
            })
        );
        assert!(matches!(
            build_code(&ctx4, 80),
            Err(Error::ExponentOutOfRange { .. })
        ));
        assert!(matches!(
            build_code(&ctx4, 0),
            Err(Error::ExponentOutOfRange { .. })
        ));
        let ctx6 = FieldCtx::build(6).unwrap();
        let c = build_code(&ctx6, 86).unwrap();
        assert_eq!((c.n, c.k), (728, 716));
    }

    #[test]
    fn small_coset_gives_larger_dimension() {
        // e = 10 at m = 4: C_10 = {10, 30}, so deg g = 4 + 2
        let ctx = FieldCtx::build(4).unwrap();
        let c = build_code(&ctx, 10).unwrap();
        assert_eq!(c.k, 80 - 6);
    }

    #[test]
    fn columns() {
        let ctx = FieldCtx::build(4).unwrap();
        let cols = parity_check_columns(&ctx, 14);
        assert_eq!(cols.len(), 80);
        assert_eq!(cols[0], (FieldElem::ONE, FieldElem::ONE));
        assert!(cols.iter().all(|c| !c.0.is_zero() && !c.1.is_zero()));
        let code = build_code(&ctx, 14).unwrap();
        let word: Vec<(u64, Gf3)> = code
            .generator
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| (j as u64, c))
            .collect();
        assert_eq!(
            syndrome(&ctx, 14, &word),
            (FieldElem::ZERO, FieldElem::ZERO)
        );
    }

    #[test]
    fn codeword_membership() {
        use rand::{Rng, SeedableRng};
        let ctx = FieldCtx::build(4).unwrap();
        let code = build_code(&ctx, 14).unwrap();
        assert!(code.is_codeword(&code.generator));
        assert!(!code.is_codeword(&Poly::one()));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a: Vec<u8> = (0..72).map(|_| rng.gen_range(0..3)).collect();
            let b: Vec<u8> = (0..72).map(|_| rng.gen_range(0..3)).collect();
            let wa = &Poly::from_u8s(&a) * &code.generator;
            let wb = &Poly::from_u8s(&b) * &code.generator;
            assert!(code.is_codeword(&wa));
            assert!(code.is_codeword(&(&wa + &wb)));
            let perturbed = &wa + &Poly::monomial(Gf3::ONE, rng.gen_range(0..80));
            assert!(!code.is_codeword(&perturbed));
        }
    }

    #[test]
    fn weight_search_optimal_instance() {
        let ctx = FieldCtx::build(4).unwrap();
        let w = min_weight_leq3_search(&ctx, 14).unwrap();
        assert_eq!(w.verdict, WeightVerdict::NoWordBelow4);
        assert!(w.word.is_none());
    }

    #[test]
    fn odd_exponent_gives_weight_two() {
        let ctx = FieldCtx::build(4).unwrap();
        let w = min_weight_leq3_search(&ctx, 7).unwrap();
        assert_eq!(w.verdict, WeightVerdict::Found);
        let word = w.word.unwrap();
        assert_eq!(word.len(), 2);
        assert_eq!(syndrome(&ctx, 7, &word), (FieldElem::ZERO, FieldElem::ZERO));
    }

    /// Independent brute force over all supports of size ≤ 3 with leading value 1.
    fn brute_force_has_light_word(ctx: &FieldCtx, e: u64) -> bool {
        let n = ctx.order();
        let vals = [Gf3::ONE, Gf3::TWO];
        let zero = (FieldElem::ZERO, FieldElem::ZERO);
        for i in 0..n {
            for j in i + 1..n {
                for &b in &vals {
                    if syndrome(ctx, e, &[(i, Gf3::ONE), (j, b)]) == zero {
                        return true;
                    }
                    for k in j + 1..n {
                        for &c in &vals {
                            if syndrome(ctx, e, &[(i, Gf3::ONE), (j, b), (k, c)]) == zero {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn search_agrees_with_brute_force_at_m3() {
        let ctx = FieldCtx::build(3).unwrap();
        let c1 = coset(1, 3, 3).unwrap();
        for e in 1..26 {
            if c1.contains(e) {
                continue;
            }
            let w = min_weight_leq3_search(&ctx, e).unwrap();
            let brute = brute_force_has_light_word(&ctx, e);
            assert_eq!(w.verdict == WeightVerdict::Found, brute, "e = {e}");
            if let Some(word) = &w.word {
                assert!(word.iter().all(|(_, c)| !c.is_zero()));
                assert_eq!(syndrome(&ctx, e, word), (FieldElem::ZERO, FieldElem::ZERO));
            }
        }
    }

    #[test]
    fn search_budget() {
        assert!(check_search_budget(8, false).is_ok());
        assert!(check_search_budget(9, false).is_err());
        assert!(check_search_budget(10, true).is_ok());
        assert!(check_search_budget(11, true).is_err());
        assert_eq!(search_pair_lookups(4), 80 * 79 / 2 * 4);
    }

    #[test]
    fn sphere_packing_examples() {
        // V(80,1) = 161 ≤ 6561 < V(80,2) = 12801
        assert_eq!(ball_size(80, 1, 3), BigUint::from(161u32));
        assert_eq!(ball_size(80, 2, 3), BigUint::from(12801u32));
        assert_eq!(sphere_packing_max_d(80, 72, 3).unwrap(), 4);
        assert_eq!(sphere_packing_max_d(80, 80, 3).unwrap(), 2);
        assert_eq!(sphere_packing_max_d(728, 716, 3).unwrap(), 4);
        assert_eq!(sphere_packing_max_d(6560, 6544, 3).unwrap(), 4);
        assert_eq!(sphere_packing_max_d(59048, 59028, 3).unwrap(), 4);
        assert!(sphere_packing_admits(80, 72, 4, 3));
        assert!(!sphere_packing_admits(80, 72, 5, 3));
        // binary Hamming [7,4] is perfect: d = 3 meets the bound, max d reported 4
        assert_eq!(sphere_packing_max_d(7, 4, 2).unwrap(), 4);
        assert!(sphere_packing_max_d(5, 0, 3).is_err());
        assert!(sphere_packing_max_d(5, 6, 3).is_err());
        assert!(sphere_packing_max_d(5, 2, 1).is_err());
    }

    #[test]
    fn sphere_packing_matches_direct_evaluation() {
        // oracle: evaluate the inequality for each d directly
        for (n, k) in [(8u64, 4u64), (26, 20), (80, 72), (13, 10), (10, 1)] {
            let direct = (1..=2 * n + 2)
                .filter(|&d| sphere_packing_admits(n, k, d, 3))
                .max()
                .unwrap();
            assert_eq!(sphere_packing_max_d(n, k, 3).unwrap(), direct, "({n},{k})");
        }
    }
}
