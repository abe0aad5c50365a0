//! Exact checks of the polynomial identities behind C2 and C3 for the
//! `e = 3^h + 5` families.
//!
//! For C2 a solution `θ ∉ GF(3)` satisfies `θ^(3^h) = f(θ)/g(θ)`; applying the
//! Frobenius `3^h` again gives `θ^(3^(2h)) = F(θ)/G(θ)`. With `2h = m` this is
//! `θ·G - F = 0`, with `2h = m + 2` it is `θ^9·G - F = 0`. C3 works the same
//! way with `k/l` and `K/L`. Each left-hand side is compared against a
//! transcribed product of irreducibles and against the in-house factorization.

use serde::{Deserialize, Serialize};

use crate::factor::{factor, FactorEntry, Factorization};
use crate::gf3::Gf3;
use crate::poly::Poly;
use crate::text::parse_human;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rhs {
    Product(Factorization),
    Poly(Poly),
}

impl Rhs {
    pub fn expand(&self) -> Poly {
        match self {
            Rhs::Product(f) => f.expand(),
            Rhs::Poly(p) => p.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub lhs: Poly,
    pub rhs: Rhs,
    /// `lhs = unit · rhs` when the check passes.
    pub unit: Option<Gf3>,
    /// Factorization computed by [`factor`] for product identities.
    pub engine: Option<Factorization>,
    pub status: Status,
    pub detail: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn lhs_degree(&self) -> Option<usize> {
        self.lhs.degree()
    }

    pub fn rhs_degree(&self) -> Option<usize> {
        self.rhs.expand().degree()
    }
}

/// `lhs = u · rhs` for a nonzero `u ∈ GF(3)`?
fn unit_between(lhs: &Poly, rhs: &Poly) -> Option<Gf3> {
    [Gf3::ONE, Gf3::TWO]
        .into_iter()
        .find(|&u| rhs.scale(u) == *lhs)
}

fn equality_check(id: &'static str, lhs: Poly, rhs: Poly) -> IdentityCheck {
    let unit = unit_between(&lhs, &rhs);
    let detail = unit.is_none().then(|| {
        let u = lhs.leading() * rhs.leading().inv().unwrap_or(Gf3::ONE);
        format!("lhs - {u}·rhs = {}", &lhs - &rhs.scale(u))
    });
    IdentityCheck {
        id,
        lhs,
        rhs: Rhs::Poly(rhs),
        unit,
        engine: None,
        status: if unit.is_some() {
            Status::Pass
        } else {
            Status::Fail
        },
        detail,
    }
}

/// Compares `lhs` with a transcribed product: equality up to a unit, every
/// listed factor irreducible, and the factor engine reproducing the multiset.
fn product_check(id: &'static str, lhs: Poly, fixture: &[(&str, u32)]) -> IdentityCheck {
    let expected = fixture_product(fixture);
    let rhs = expected.expand();
    let mut problems = Vec::new();

    let unit = unit_between(&lhs, &rhs);
    if unit.is_none() {
        let u = lhs.leading() * rhs.leading().inv().unwrap_or(Gf3::ONE);
        problems.push(format!("lhs - {u}·product = {}", &lhs - &rhs.scale(u)));
    }
    for (p, _) in &expected.factors {
        if !p.is_irreducible().unwrap_or(false) {
            problems.push(format!("listed factor {p} is reducible"));
        }
    }
    let engine = factor(&lhs).ok();
    match &engine {
        Some(fz) if fz.factors == expected.factors => {}
        Some(fz) => problems.push(format!(
            "factor engine gives {}",
            render_factors(&fz.factors)
        )),
        None => problems.push("lhs is zero".into()),
    }
    IdentityCheck {
        id,
        lhs,
        rhs: Rhs::Product(expected),
        unit,
        engine,
        status: if problems.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        detail: (!problems.is_empty()).then(|| problems.join("; ")),
    }
}

fn fixture_product(fixture: &[(&str, u32)]) -> Factorization {
    Factorization::from_parts(
        Gf3::ONE,
        fixture
            .iter()
            .map(|&(s, k)| (parse_human(s).expect("fixture parses"), k)),
    )
}

fn render_factors(factors: &[(Poly, u32)]) -> String {
    factors
        .iter()
        .map(|(p, k)| match k {
            1 => format!("({p})"),
            _ => format!("({p})^{k}"),
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Reference factorizations of the four left-hand sides.
pub mod fixtures {
    pub const C2_CASE1: &[(&str, u32)] = &[
        ("x", 3),
        ("x+1", 1),
        ("x-1", 1),
        ("x^6+x^3-x+1", 1),
        ("x^6-x^5+x^3+1", 1),
        ("x^6-x^5-x^3-x+1", 1),
    ];
    pub const C2_CASE2: &[(&str, u32)] = &[
        ("x", 1),
        ("x+1", 1),
        ("x-1", 1),
        ("x^4+x^3-x^2-x-1", 1),
        ("x^4+x^3+x^2-x-1", 1),
        ("x^6-x^5+x^4-x^3+x^2-x+1", 1),
        ("x^8+x^7+x^6-x^4+x^2+x+1", 1),
        ("x^8+x^7-x^6-x^2+x+1", 1),
    ];
    pub const C3_CASE1: &[(&str, u32)] =
        &[("x-1", 5), ("x^2+x-1", 2), ("x^2-x-1", 2), ("x^2+1", 2)];
    pub const C3_CASE2: &[(&str, u32)] = &[
        ("x-1", 1),
        ("x^2+1", 1),
        ("x^2+x-1", 1),
        ("x^2-x-1", 1),
        ("x^3-x+1", 1),
        ("x^3-x-1", 1),
        ("x^3+x^2-x+1", 1),
        ("x^3-x^2+x+1", 1),
        ("x^3+x^2-1", 1),
        ("x^3-x^2+1", 1),
    ];
    /// The degree-6 factor of the C2 case-2 product with `x^7 = -1`.
    pub const C2_CASE2_SEXTIC: &str = "x^6-x^5+x^4-x^3+x^2-x+1";
    /// The pair whose only common root is 0.
    pub const C2_CASE2_GCD_PAIR: (&str, &str) = ("x^5-x^2-1", "x^5+x^3-x^2-1");
}

fn hp(s: &str) -> Poly {
    parse_human(s).expect("literal parses")
}

/// `f(θ) = θ^5 - θ^4 + θ^3 + θ^2 - θ`, `g(θ) = θ^4 - θ^3 - θ^2 + θ - 1`.
pub fn c2_polys() -> (Poly, Poly) {
    (hp("x^5-x^4+x^3+x^2-x"), hp("x^4-x^3-x^2+x-1"))
}

/// `F = f^5 - f^4 g + f^3 g^2 + f^2 g^3 - f g^4`,
/// `G = f^4 g - f^3 g^2 - f^2 g^3 + f g^4 - g^5`.
pub fn c2_compose_from(f: &Poly, g: &Poly) -> (Poly, Poly) {
    let fp: Vec<Poly> = (0..=5).map(|i| f.pow(i)).collect();
    let gp: Vec<Poly> = (0..=5).map(|i| g.pow(i)).collect();
    let t = |i: usize, j: usize| &fp[i] * &gp[j];
    let big_f = t(5, 0) - t(4, 1) + t(3, 2) + t(2, 3) - t(1, 4);
    let big_g = t(4, 1) - t(3, 2) - t(2, 3) + t(1, 4) - t(0, 5);
    (big_f, big_g)
}

pub fn c2_compose() -> (Poly, Poly) {
    let (f, g) = c2_polys();
    c2_compose_from(&f, &g)
}

/// `k(θ) = θ^4 + θ^2 - θ + 1`, `l(θ) = θ^4 - θ^3 + θ^2 + 1`.
pub fn c3_polys() -> (Poly, Poly) {
    (hp("x^4+x^2-x+1"), hp("x^4-x^3+x^2+1"))
}

/// `K = k^4 + k^2 l^2 - k l^3 + l^4`, `L = k^4 - k^3 l + k^2 l^2 + l^4`.
pub fn c3_compose_from(k: &Poly, l: &Poly) -> (Poly, Poly) {
    let kp: Vec<Poly> = (0..=4).map(|i| k.pow(i)).collect();
    let lp: Vec<Poly> = (0..=4).map(|i| l.pow(i)).collect();
    let t = |i: usize, j: usize| &kp[i] * &lp[j];
    let big_k = t(4, 0) + t(2, 2) - t(1, 3) + t(0, 4);
    let big_l = t(4, 0) - t(3, 1) + t(2, 2) + t(0, 4);
    (big_k, big_l)
}

pub fn c3_compose() -> (Poly, Poly) {
    let (k, l) = c3_polys();
    c3_compose_from(&k, &l)
}

/// `θ^s · G - F` for the given `f, g`.
pub fn c2_lhs(f: &Poly, g: &Poly, shift: usize) -> Poly {
    let (big_f, big_g) = c2_compose_from(f, g);
    big_g.shift(shift) - big_f
}

pub fn c3_lhs(k: &Poly, l: &Poly, shift: usize) -> Poly {
    let (big_k, big_l) = c3_compose_from(k, l);
    big_l.shift(shift) - big_k
}

/// `θ·G - F` against the case-1 product, for caller-supplied `f, g`.
pub fn c2_case1_check(f: &Poly, g: &Poly) -> IdentityCheck {
    product_check("c2-case1", c2_lhs(f, g, 1), fixtures::C2_CASE1)
}

pub fn verify_c2_case1() -> IdentityCheck {
    let (f, g) = c2_polys();
    c2_case1_check(&f, &g)
}

/// `θ^9·G - F` against the case-2 product, plus the sextic-factor steps:
/// `x^7 ≡ -1`, `x^(3^4) ≡ -x^4`, and no common root of the gcd pair with it.
pub fn verify_c2_case2() -> IdentityCheck {
    let (f, g) = c2_polys();
    let mut check = product_check("c2-case2", c2_lhs(&f, &g, 9), fixtures::C2_CASE2);
    let mut problems = Vec::new();
    if !step_x7_is_minus_one().passed() {
        problems.push("x^7 is not -1 modulo the sextic factor".to_string());
    }
    if !step_frobenius_x4().passed() {
        problems.push("x^81 is not -x^4 modulo the sextic factor".to_string());
    }
    let sextic = hp(fixtures::C2_CASE2_SEXTIC);
    let (a, b) = fixtures::C2_CASE2_GCD_PAIR;
    let common = hp(a).gcd(&hp(b)).expect("nonzero pair");
    let shared = common.gcd(&sextic).expect("nonzero");
    if !shared.is_one() {
        problems.push(format!("gcd pair shares {shared} with the sextic factor"));
    }
    if !problems.is_empty() {
        check.status = Status::Fail;
        let mut detail: Vec<String> = check.detail.take().into_iter().collect();
        detail.extend(problems);
        check.detail = Some(detail.join("; "));
    }
    check
}

pub fn c3_case1_check(k: &Poly, l: &Poly) -> IdentityCheck {
    product_check("c3-case1", c3_lhs(k, l, 1), fixtures::C3_CASE1)
}

pub fn verify_c3_case1() -> IdentityCheck {
    let (k, l) = c3_polys();
    c3_case1_check(&k, &l)
}

pub fn verify_c3_case2() -> IdentityCheck {
    let (k, l) = c3_polys();
    product_check("c3-case2", c3_lhs(&k, &l, 9), fixtures::C3_CASE2)
}

/// `θ·g - f = θ^3`.
pub fn step_theta_g_minus_f() -> IdentityCheck {
    let (f, g) = c2_polys();
    equality_check("step-theta-g-minus-f", g.shift(1) - f, hp("x^3"))
}

/// `θ·l - k = (θ - 1)^5` up to a unit.
pub fn step_theta_l_minus_k() -> IdentityCheck {
    let (k, l) = c3_polys();
    equality_check("step-theta-l-minus-k", l.shift(1) - k, hp("x-1").pow(5))
}

/// `(θ^3·l - k)(θ + 1) = θ^8 - 1`.
pub fn step_theta8() -> IdentityCheck {
    let (k, l) = c3_polys();
    equality_check(
        "step-theta8-minus-1",
        (l.shift(3) - k) * hp("x+1"),
        hp("x^8-1"),
    )
}

/// `x^7 ≡ -1` modulo the sextic factor.
pub fn step_x7_is_minus_one() -> IdentityCheck {
    let sextic = hp(fixtures::C2_CASE2_SEXTIC);
    let lhs = Poly::x()
        .powmod(7, &sextic)
        .expect("sextic is a valid modulus");
    equality_check("step-x7-is-minus-1", lhs, hp("-1"))
}

/// `x^(3^4) ≡ -x^4` modulo the sextic factor.
pub fn step_frobenius_x4() -> IdentityCheck {
    let sextic = hp(fixtures::C2_CASE2_SEXTIC);
    let lhs = Poly::x()
        .frobenius_power(4, &sextic)
        .expect("sextic is a valid modulus");
    equality_check("step-frobenius-x4", lhs, hp("-x^4"))
}

/// The full registry in fixed order: four product identities, then five steps.
pub fn run_all() -> Vec<IdentityCheck> {
    vec![
        verify_c2_case1(),
        verify_c2_case2(),
        verify_c3_case1(),
        verify_c3_case2(),
        step_theta_g_minus_f(),
        step_theta_l_minus_k(),
        step_theta8(),
        step_x7_is_minus_one(),
        step_frobenius_x4(),
    ]
}

/// Whether `p` has a root in GF(3^m), via `deg gcd(x^(3^m) - x, p) > 0`.
pub fn has_root_in_extension(p: &Poly, m: u32) -> bool {
    if p.is_constant() {
        return false;
    }
    let frob = Poly::x()
        .frobenius_power(m, p)
        .expect("non-constant modulus");
    let g = (&frob - &Poly::x()).gcd(p).expect("p is nonzero");
    !g.is_one()
}

/// Every listed factor of the four products.
pub fn listed_factors() -> Vec<Poly> {
    let mut out: Vec<Poly> = [
        fixtures::C2_CASE1,
        fixtures::C2_CASE2,
        fixtures::C3_CASE1,
        fixtures::C3_CASE2,
    ]
    .iter()
    .flat_map(|fx| fx.iter().map(|(s, _)| hp(s)))
    .collect();
    out.sort();
    out.dedup();
    out
}

/// Serializable row of an identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityRecord {
    pub id: String,
    pub status: Status,
    pub lhs_degree: Option<usize>,
    pub rhs_degree: Option<usize>,
    pub unit: Option<u8>,
    pub factors: Option<Vec<FactorEntry>>,
    pub detail: Option<String>,
}

impl From<&IdentityCheck> for IdentityRecord {
    fn from(c: &IdentityCheck) -> Self {
        IdentityRecord {
            id: c.id.to_string(),
            status: c.status,
            lhs_degree: c.lhs_degree(),
            rhs_degree: c.rhs_degree(),
            unit: c.unit.map(Gf3::value),
            factors: c.engine.as_ref().map(Factorization::entries),
            detail: c.detail.clone(),
        }
    }
}
