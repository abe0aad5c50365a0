//! The C1–C3 characterization of optimal `C(1,e)` and the exponent families it is
//! applied to.
//!
//! A code `C(1,e)` with `e ∉ C_1` and `|C_e| = m` has parameters
//! `[3^m - 1, 3^m - 1 - 2m, 4]` exactly when
//! - C1: `e` is even,
//! - C2: `(x+1)^e - x^e - 1 = 0` has only the solution `x = 0` in GF(3^m),
//! - C3: `(x+1)^e + x^e + 1 = 0` has only the solution `x = 1`.
//!
//! C2 and C3 are decided here by scanning every field element.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{build_code, sphere_packing_max_d};
use crate::cyclotomic::{coset, gcd};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem, PowPlan};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Optimal,
    NotOptimal,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Optimal => "optimal",
            Verdict::NotOptimal => "not_optimal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub m: u32,
    pub e: u64,
    pub h: Option<u32>,
    pub c1: bool,
    /// `e` lies in the coset of 1.
    pub in_c1: bool,
    pub coset_size: usize,
    /// `e ∉ C_1` and `|C_e| = m`.
    pub coset_ok: bool,
    /// `gcd(e, 3^m - 1)`.
    pub gcd_value: u64,
    pub c2_solutions: Vec<FieldElem>,
    pub c3_solutions: Vec<FieldElem>,
    pub verdict: Verdict,
    pub parameters: Option<CodeParameters>,
    pub modulus: Poly,
}

impl ConditionReport {
    pub fn c2_holds(&self) -> bool {
        self.c2_solutions == [FieldElem::ZERO]
    }

    pub fn c3_holds(&self) -> bool {
        self.c3_solutions == [FieldElem::ONE]
    }

    /// Names of the failing requirements, in the order coset, C1, C2, C3.
    pub fn failed_conditions(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.coset_ok {
            out.push("coset");
        }
        if !self.c1 {
            out.push("C1");
        }
        if !self.c2_holds() {
            out.push("C2");
        }
        if !self.c3_holds() {
            out.push("C3");
        }
        out
    }
}

pub fn check_c1(e: u64) -> bool {
    e.is_multiple_of(2)
}

/// Solutions of `(x+1)^e + sign·x^e + sign = 0`, sorted in enumeration order.
fn scan(ctx: &FieldCtx, e: u64, plus: bool) -> Vec<FieldElem> {
    let plan = PowPlan::new(e);
    let sols: BTreeSet<FieldElem> = (0..ctx.size())
        .into_par_iter()
        .filter_map(|idx| {
            let x = ctx.element_at(idx);
            let a = plan.apply(ctx, x.add(FieldElem::ONE));
            let b = plan.apply(ctx, x);
            let lhs = if plus {
                a.add(b).add(FieldElem::ONE)
            } else {
                a.sub(b).sub(FieldElem::ONE)
            };
            lhs.is_zero().then_some(x)
        })
        .collect();
    sols.into_iter().collect()
}

/// All `x` with `(x+1)^e - x^e - 1 = 0`.
pub fn check_c2(ctx: &FieldCtx, e: u64) -> Vec<FieldElem> {
    scan(ctx, e, false)
}

/// All `x` with `(x+1)^e + x^e + 1 = 0`.
pub fn check_c3(ctx: &FieldCtx, e: u64) -> Vec<FieldElem> {
    scan(ctx, e, true)
}

/// The steps of `gcd(3^h + 5, 3^m - 1) = 2` for the two open-problem cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GcdChain {
    pub m: u32,
    pub h: u32,
    pub e: u64,
    /// 24 when `h = m/2` (since `3^m - 1 - (3^h+5)(3^h-5) = 24`), 16 when
    /// `h = (m+2)/2` (since `9(3^m - 1) - (3^h+5)(3^h-5) = 16`).
    pub reduced_modulus: u64,
    pub e_mod_8: u64,
    pub gcd_reduced: u64,
    pub gcd: u64,
}

impl GcdChain {
    pub fn holds(&self) -> bool {
        self.gcd == 2 && self.gcd_reduced == 2 && self.e_mod_8 == 6
    }
}

pub fn gcd_chain_check(m: u32, h: u32) -> Result<GcdChain> {
    if !m.is_multiple_of(2) || !(4..=crate::field::MAX_M).contains(&m) {
        return Err(Error::Constraint(format!(
            "m = {m} must be even, 4 ≤ m ≤ 20"
        )));
    }
    let reduced_modulus = match (m % 4, h) {
        (0, h) if h == m / 2 => 24,
        (2, h) if h == (m + 2) / 2 => 16,
        _ => {
            return Err(Error::Constraint(format!(
                "h = {h} is not the open-problem exponent for m = {m}"
            )))
        }
    };
    let e = 3u64.pow(h) + 5;
    let n = 3u64.pow(m) - 1;
    let q = 3i128.pow(h);
    let residue = if reduced_modulus == 24 {
        n as i128 - (q + 5) * (q - 5)
    } else {
        9 * n as i128 - (q + 5) * (q - 5)
    };
    if residue != reduced_modulus as i128 {
        return Err(Error::Internal(format!("gcd reduction gave {residue}")));
    }
    Ok(GcdChain {
        m,
        h,
        e,
        reduced_modulus,
        e_mod_8: e % 8,
        gcd_reduced: gcd(e, reduced_modulus),
        gcd: gcd(e, n),
    })
}

/// Assembles the coset facts, C1, C2 and C3 for `C(1,e)` over `ctx`.
pub fn verify_optimality(ctx: &FieldCtx, e: u64) -> Result<ConditionReport> {
    verify_with_h(ctx, e, None)
}

pub fn verify_with_h(ctx: &FieldCtx, e: u64, h: Option<u32>) -> Result<ConditionReport> {
    let n = ctx.order();
    let m = ctx.m();
    if !(1..n).contains(&e) {
        return Err(Error::ExponentOutOfRange { e, max: n - 1 });
    }
    let c1 = check_c1(e);
    let in_c1 = coset(1, 3, m)?.contains(e);
    let coset_size = coset(e as i64, 3, m)?.len();
    let coset_ok = !in_c1 && coset_size == m as usize;
    let c2_solutions = check_c2(ctx, e);
    let c3_solutions = check_c3(ctx, e);
    let mut report = ConditionReport {
        m,
        e,
        h,
        c1,
        in_c1,
        coset_size,
        coset_ok,
        gcd_value: gcd(e, n),
        c2_solutions,
        c3_solutions,
        verdict: Verdict::NotOptimal,
        parameters: None,
        modulus: ctx.modulus().clone(),
    };
    if report.failed_conditions().is_empty() {
        let code = build_code(ctx, e)?;
        if code.k != n - 2 * m as u64 {
            return Err(Error::Internal(format!(
                "dimension {} differs from n - 2m for e = {e}",
                code.k
            )));
        }
        let d = sphere_packing_max_d(n, code.k, 3)?;
        report.verdict = Verdict::Optimal;
        report.parameters = Some(CodeParameters { n, k: code.k, d });
    }
    Ok(report)
}

/// `(h, e = 3^h + 5)` with `h = m/2` for `m ≡ 0 (mod 4)` and `h = (m+2)/2` for `m ≡ 2 (mod 4)`.
pub fn open_problem_exponent(m: u32) -> Result<(u32, u64)> {
    if !m.is_multiple_of(2) || m < 4 {
        return Err(Error::Constraint(format!(
            "m = {m} must be even and at least 4"
        )));
    }
    if m > crate::field::MAX_M {
        return Err(Error::DegreeOutOfRange(m));
    }
    let h = if m.is_multiple_of(4) {
        m / 2
    } else {
        (m + 2) / 2
    };
    Ok((h, 3u64.pow(h) + 5))
}

/// The three readings of the offset `E` in `e = E + 3^h + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OffsetReading {
    /// `(3^m - 1) / 2`
    HalfOrder,
    /// `(3^(m-1) - 1) / 2`
    HalfPrevMinus,
    /// `(3^(m-1) + 1) / 2`
    HalfPrevPlus,
}

impl OffsetReading {
    pub const ALL: [OffsetReading; 3] = [
        OffsetReading::HalfOrder,
        OffsetReading::HalfPrevMinus,
        OffsetReading::HalfPrevPlus,
    ];

    pub fn value(self, m: u32) -> u64 {
        match self {
            OffsetReading::HalfOrder => (3u64.pow(m) - 1) / 2,
            OffsetReading::HalfPrevMinus => (3u64.pow(m - 1) - 1) / 2,
            OffsetReading::HalfPrevPlus => 3u64.pow(m - 1).div_ceil(2),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OffsetReading::HalfOrder => "(3^m-1)/2",
            OffsetReading::HalfPrevMinus => "(3^(m-1)-1)/2",
            OffsetReading::HalfPrevPlus => "(3^(m-1)+1)/2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `e = 3^h + 5`, even `m`, `h` fixed by `m mod 4`.
    OpenProblem,
    /// `e = 3^h + 5`, odd `m`, `2h ≡ ±1 (mod m)`.
    ConclusionA,
    /// `e = 3^h + 13`, odd `m`, `2h ≡ ±1 (mod m)`.
    ConclusionB,
    /// `e = E + 3^h + 1`, odd `m`, `2h`, `3h` or `4h ≡ ±1 (mod m)`, every reading of `E`.
    ConclusionC,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::OpenProblem => "open-problem",
            Family::ConclusionA => "concl-A",
            Family::ConclusionB => "concl-B",
            Family::ConclusionC => "concl-C",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        [
            Family::OpenProblem,
            Family::ConclusionA,
            Family::ConclusionB,
            Family::ConclusionC,
        ]
        .into_iter()
        .find(|f| f.name() == s)
    }
}

/// One generated exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    /// `A`, `B`, `C:<reading>` or `open-problem`.
    pub tag: String,
    pub h: u32,
    pub e: u64,
    pub reading: Option<OffsetReading>,
}

fn solves_pm_one(k: u32, h: u32, m: u32) -> bool {
    let r = (k as u64 * h as u64) % m as u64;
    r == 1 || r == m as u64 - 1
}

fn check_conclusion_m(m: u32) -> Result<()> {
    if m.is_multiple_of(2) || m < 5 || m.is_multiple_of(3) {
        return Err(Error::Constraint(format!(
            "m = {m} must be odd, at least 5, and coprime to 3"
        )));
    }
    if m > crate::field::MAX_M {
        return Err(Error::DegreeOutOfRange(m));
    }
    Ok(())
}

/// Exponents of the odd-`m` families A, B and C, ordered by family, then `h`, then reading.
pub fn conclusion_families(m: u32) -> Result<Vec<FamilyMember>> {
    check_conclusion_m(m)?;
    let n = 3u64.pow(m) - 1;
    let mut out = Vec::new();
    let hs_2: Vec<u32> = (0..m).filter(|&h| solves_pm_one(2, h, m)).collect();
    for &h in &hs_2 {
        out.push(FamilyMember {
            tag: "A".into(),
            h,
            e: (3u64.pow(h) + 5) % n,
            reading: None,
        });
    }
    for &h in &hs_2 {
        out.push(FamilyMember {
            tag: "B".into(),
            h,
            e: (3u64.pow(h) + 13) % n,
            reading: None,
        });
    }
    for h in (0..m).filter(|&h| (2..=4).any(|k| solves_pm_one(k, h, m))) {
        for reading in OffsetReading::ALL {
            out.push(FamilyMember {
                tag: format!("C:{}", reading.label()),
                h,
                e: (reading.value(m) + 3u64.pow(h) + 1) % n,
                reading: Some(reading),
            });
        }
    }
    Ok(out)
}

/// Members of `family` at degree `m`.
pub fn family_members(family: Family, m: u32) -> Result<Vec<FamilyMember>> {
    match family {
        Family::OpenProblem => {
            let (h, e) = open_problem_exponent(m)?;
            Ok(vec![FamilyMember {
                tag: family.name().into(),
                h,
                e,
                reading: None,
            }])
        }
        Family::ConclusionA | Family::ConclusionB | Family::ConclusionC => {
            let prefix = match family {
                Family::ConclusionA => "A",
                Family::ConclusionB => "B",
                _ => "C",
            };
            Ok(conclusion_families(m)?
                .into_iter()
                .filter(|f| f.tag.starts_with(prefix))
                .collect())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyResult {
    pub member: FamilyMember,
    pub report: ConditionReport,
}

/// Runs [`verify_with_h`] on every member of `family` for each `m`.
pub fn verify_family(ms: &[u32], family: Family) -> Result<Vec<FamilyResult>> {
    let mut out = Vec::new();
    for &m in ms {
        let members = family_members(family, m)?;
        let ctx = FieldCtx::build(m)?;
        for member in members {
            let report = verify_with_h(&ctx, member.e, Some(member.h))?;
            out.push(FamilyResult { member, report });
        }
    }
    Ok(out)
}

/// Per-`(m, reading)` summary of family C verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReadingSummary {
    pub m: u32,
    pub reading: OffsetReading,
    pub label: String,
    /// `(h, e, verdict)` per generated exponent.
    pub verdicts: Vec<(u32, u64, Verdict)>,
    /// Every `h` received the same verdict.
    pub uniform: bool,
    pub all_optimal: bool,
}

pub fn summarize_family_c(results: &[FamilyResult]) -> Vec<ReadingSummary> {
    let mut ms: Vec<u32> = results.iter().map(|r| r.report.m).collect();
    ms.dedup();
    let mut out = Vec::new();
    for m in ms {
        for reading in OffsetReading::ALL {
            let verdicts: Vec<(u32, u64, Verdict)> = results
                .iter()
                .filter(|r| r.report.m == m && r.member.reading == Some(reading))
                .map(|r| (r.member.h, r.member.e, r.report.verdict))
                .collect();
            if verdicts.is_empty() {
                continue;
            }
            let uniform = verdicts.windows(2).all(|w| w[0].2 == w[1].2);
            let all_optimal = verdicts.iter().all(|v| v.2 == Verdict::Optimal);
            out.push(ReadingSummary {
                m,
                reading,
                label: reading.label().into(),
                verdicts,
                uniform,
                all_optimal,
            });
        }
    }
    out
}

/// Optimal exponents among the even `e` in `range`, reported by coset leader.
pub fn search_optimal(ctx: &FieldCtx, range: std::ops::RangeInclusive<u64>) -> Result<Vec<u64>> {
    let n = ctx.order();
    let lo = (*range.start()).max(1);
    let hi = (*range.end()).min(n - 1);
    let mut leaders = BTreeSet::new();
    for e in (lo..=hi).filter(|e| e % 2 == 0) {
        leaders.insert(coset(e as i64, 3, ctx.m())?.leader);
    }
    let mut out = Vec::new();
    for leader in leaders {
        if verify_optimality(ctx, leader)?.verdict == Verdict::Optimal {
            out.push(leader);
        }
    }
    Ok(out)
}
