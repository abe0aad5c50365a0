//! Run reports and their text, JSON and CSV serializations.
//!
//! JSON output is deterministic: fields are emitted in declaration order,
//! maps are ordered, and wall time is only included when requested.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::WeightVerdict;
use crate::conditions::{CodeParameters, ConditionReport, GcdChain, ReadingSummary, Verdict};
use crate::factor::FactorEntry;
use crate::field::FieldCtx;
use crate::identities::{IdentityRecord, Status};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One `(m, e)` verdict, in the documented JSON schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionRecord {
    pub m: u32,
    pub e: u64,
    pub h: Option<u32>,
    pub c1: bool,
    pub coset_ok: bool,
    pub gcd: u64,
    pub c2_solutions: Vec<String>,
    pub c3_solutions: Vec<String>,
    pub verdict: Verdict,
    pub parameters: Option<CodeParameters>,
    pub modulus: String,
}

impl From<&ConditionReport> for ConditionRecord {
    fn from(r: &ConditionReport) -> Self {
        let fmt = |v: &[crate::FieldElem]| -> Vec<String> {
            v.iter()
                .map(|x| {
                    (0..r.m)
                        .map(|i| x.digit(i).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect()
        };
        ConditionRecord {
            m: r.m,
            e: r.e,
            h: r.h,
            c1: r.c1,
            coset_ok: r.coset_ok,
            gcd: r.gcd_value,
            c2_solutions: fmt(&r.c2_solutions),
            c3_solutions: fmt(&r.c3_solutions),
            verdict: r.verdict,
            parameters: r.parameters,
            modulus: r.modulus.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpherePackingRecord {
    pub n: u64,
    pub k: u64,
    pub admits_d4: bool,
    pub admits_d5: bool,
    pub max_d: u64,
}

/// A single check outcome inside a [`RunReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckResult {
    #[serde(rename_all = "camelCase")]
    FieldInfo {
        m: u32,
        modulus: String,
        order: u64,
        order_prime_factors: Vec<u64>,
        generator: String,
        primitive: bool,
    },
    #[serde(rename_all = "camelCase")]
    Coset {
        p: u64,
        m: u32,
        j: i64,
        leader: u64,
        members: Vec<u64>,
        size: usize,
    },
    #[serde(rename_all = "camelCase")]
    CosetLemma {
        p: u64,
        m: u32,
        checked: u64,
        violations: Vec<u64>,
    },
    #[serde(rename_all = "camelCase")]
    MinPoly {
        m: u32,
        i: i64,
        coset: Vec<u64>,
        poly: String,
        degree: usize,
        irreducible: bool,
    },
    #[serde(rename_all = "camelCase")]
    Code {
        m: u32,
        e: u64,
        n: u64,
        k: u64,
        generator: String,
        generator_degree: usize,
    },
    Condition {
        tag: Option<String>,
        #[serde(flatten)]
        record: ConditionRecord,
    },
    GcdChain(GcdChain),
    FamilyC(ReadingSummary),
    #[serde(rename_all = "camelCase")]
    Mindist {
        m: u32,
        e: u64,
        n: u64,
        k: u64,
        verdict: WeightVerdict,
        /// `(position, value)` of a light codeword.
        witness: Option<Vec<(u64, u8)>>,
        sphere_packing: SpherePackingRecord,
        derivation: String,
    },
    #[serde(rename_all = "camelCase")]
    Factor {
        poly: String,
        unit: u8,
        factors: Vec<FactorEntry>,
        irreducible: Option<bool>,
    },
    Identity(IdentityRecord),
    #[serde(rename_all = "camelCase")]
    Search {
        m: u32,
        from: u64,
        to: u64,
        optimal_leaders: Vec<u64>,
    },
}

impl CheckResult {
    pub fn condition(report: &ConditionReport, tag: Option<String>) -> Self {
        CheckResult::Condition {
            tag,
            record: report.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ModulusRecord {
    pub m: u32,
    pub modulus: String,
}

impl From<&FieldCtx> for ModulusRecord {
    fn from(ctx: &FieldCtx) -> Self {
        ModulusRecord {
            m: ctx.m(),
            modulus: ctx.modulus().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub command: String,
    pub arguments: BTreeMap<String, String>,
    pub version: String,
    pub moduli: Vec<ModulusRecord>,
    pub results: Vec<CheckResult>,
    /// Human-readable notes, such as flagged discrepancies.
    pub notes: Vec<String>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            arguments: BTreeMap::new(),
            version: VERSION.into(),
            moduli: Vec::new(),
            results: Vec::new(),
            notes: Vec::new(),
            passed: true,
            wall_time_ms: None,
        }
    }

    pub fn arg(mut self, key: &str, value: impl ToString) -> Self {
        self.arguments.insert(key.into(), value.to_string());
        self
    }

    pub fn add_modulus(&mut self, ctx: &FieldCtx) {
        let rec = ModulusRecord::from(ctx);
        if !self.moduli.contains(&rec) {
            self.moduli.push(rec);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn from_name(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            "csv" | "csv-row" => Some(Format::Csv),
            _ => None,
        }
    }
}

pub fn emit_report(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
        Format::Csv => render_csv(report),
    }
}

pub const CSV_HEADER: &str = "tag,m,h,e,verdict,n,k,d,c1,cosetOk,gcd,c2Count,c3Count,modulus";

/// One row per condition result; other result kinds are skipped.
pub fn render_csv(report: &RunReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.results {
        if let CheckResult::Condition { tag, record } = r {
            let (n, k, d) = record
                .parameters
                .map_or((String::new(), String::new(), String::new()), |p| {
                    (p.n.to_string(), p.k.to_string(), p.d.to_string())
                });
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                csv_field(tag.as_deref().unwrap_or("")),
                record.m,
                record.h.map_or(String::new(), |h| h.to_string()),
                record.e,
                record.verdict,
                n,
                k,
                d,
                record.c1,
                record.coset_ok,
                record.gcd,
                record.c2_solutions.len(),
                record.c3_solutions.len(),
                csv_field(&record.modulus),
            );
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (ternopt {})", report.command, report.version);
    for m in &report.moduli {
        let _ = writeln!(out, "field GF(3^{}) modulus {}", m.m, m.modulus);
    }
    for r in &report.results {
        render_result_text(&mut out, r);
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    if let Some(ms) = report.wall_time_ms {
        let _ = writeln!(out, "wall time: {ms} ms");
    }
    let _ = writeln!(
        out,
        "result: {}",
        if report.passed { "PASS" } else { "FAIL" }
    );
    out
}

fn render_result_text(out: &mut String, r: &CheckResult) {
    match r {
        CheckResult::FieldInfo {
            m,
            modulus,
            order,
            order_prime_factors,
            generator,
            primitive,
        } => {
            let _ = writeln!(
                out,
                "GF(3^{m}): modulus {modulus}, order {order} (primes {order_prime_factors:?})"
            );
            let _ = writeln!(out, "generator {generator} primitive={primitive}");
        }
        CheckResult::Coset {
            p,
            m,
            j,
            leader,
            members,
            size,
        } => {
            let _ = writeln!(
                out,
                "C_{j} mod {p}^{m}-1: leader {leader}, size {size}, members {members:?}"
            );
        }
        CheckResult::CosetLemma {
            p,
            m,
            checked,
            violations,
        } => {
            let _ = writeln!(
                out,
                "coset size lemma p={p} m={m}: {checked} exponents with gcd 2, {} violations",
                violations.len()
            );
        }
        CheckResult::MinPoly {
            m,
            i,
            coset,
            poly,
            degree,
            irreducible,
        } => {
            let _ = writeln!(out, "m_{i}(x) over GF(3^{m}) = {poly} (degree {degree}, irreducible={irreducible}, coset {coset:?})");
        }
        CheckResult::Code {
            m,
            e,
            n,
            k,
            generator,
            generator_degree,
        } => {
            let _ = writeln!(
                out,
                "C(1,{e}) m={m}: [n={n}, k={k}], deg g = {generator_degree}"
            );
            let _ = writeln!(out, "g(x) = {generator}");
        }
        CheckResult::Condition { tag, record } => {
            let label = tag
                .as_deref()
                .map(|t| format!("[{t}] "))
                .unwrap_or_default();
            let params = record
                .parameters
                .map(|p| format!(" [{}, {}, {}]", p.n, p.k, p.d))
                .unwrap_or_default();
            let h = record.h.map(|h| format!(" h={h}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{label}m={}{h} e={}: {}{params}  C1={} coset={} gcd={} |C2 sols|={} |C3 sols|={}",
                record.m,
                record.e,
                record.verdict,
                record.c1,
                record.coset_ok,
                record.gcd,
                record.c2_solutions.len(),
                record.c3_solutions.len(),
            );
        }
        CheckResult::GcdChain(g) => {
            let _ = writeln!(
                out,
                "gcd(3^{}+5, 3^{}-1) = gcd({}, {}) = {} (e mod 8 = {}) = {}",
                g.h, g.m, g.e, g.reduced_modulus, g.gcd_reduced, g.e_mod_8, g.gcd
            );
        }
        CheckResult::FamilyC(s) => {
            let vs: Vec<String> = s
                .verdicts
                .iter()
                .map(|(h, e, v)| format!("h={h}:e={e}:{v}"))
                .collect();
            let _ = writeln!(
                out,
                "family C m={} E={}: uniform={} all_optimal={} [{}]",
                s.m,
                s.label,
                s.uniform,
                s.all_optimal,
                vs.join(" ")
            );
        }
        CheckResult::Mindist {
            m,
            e,
            n,
            k,
            verdict,
            witness,
            sphere_packing,
            derivation,
        } => {
            let verdict = match verdict {
                WeightVerdict::NoWordBelow4 => "no_word_below_4",
                WeightVerdict::Found => "found",
            };
            let _ = writeln!(
                out,
                "C(1,{e}) m={m} [n={n}, k={k}]: weight<=3 search {verdict}"
            );
            if let Some(w) = witness {
                let _ = writeln!(out, "witness (position, value): {w:?}");
            }
            let _ = writeln!(
                out,
                "sphere packing: d=4 admitted={}, d=5 admitted={}, max d={}",
                sphere_packing.admits_d4, sphere_packing.admits_d5, sphere_packing.max_d
            );
            let _ = writeln!(out, "{derivation}");
        }
        CheckResult::Factor {
            poly,
            unit,
            factors,
            irreducible,
        } => {
            let body: String = factors
                .iter()
                .map(|f| match f.multiplicity {
                    1 => format!("({})", f.poly),
                    k => format!("({})^{k}", f.poly),
                })
                .collect();
            let _ = writeln!(out, "{poly} = {unit}·{body}");
            if let Some(irr) = irreducible {
                let _ = writeln!(out, "irreducible: {irr}");
            }
        }
        CheckResult::Identity(rec) => {
            let st = match rec.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            let deg = |d: Option<usize>| d.map_or("-inf".to_string(), |d| d.to_string());
            let _ = writeln!(
                out,
                "{:<24} {:<5} deg lhs {:>3} rhs {:>3} unit {}",
                rec.id,
                st,
                deg(rec.lhs_degree),
                deg(rec.rhs_degree),
                rec.unit.map_or("-".into(), |u| u.to_string())
            );
            if let Some(d) = &rec.detail {
                let _ = writeln!(out, "    {d}");
            }
        }
        CheckResult::Search {
            m,
            from,
            to,
            optimal_leaders,
        } => {
            let _ = writeln!(
                out,
                "m={m} even e in {from}..{to}: {} optimal coset leaders {optimal_leaders:?}",
                optimal_leaders.len()
            );
        }
    }
}
