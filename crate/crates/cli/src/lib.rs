//! `ternopt` command-line dispatch.
//!
//! Exit codes: `0` all checks passed, `1` a verification came back
//! `not_optimal` or failed, `2` usage or input error.

use std::ffi::OsString;
use std::sync::OnceLock;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ternopt_core::code::{
    build_code, check_search_budget, min_weight_leq3_search, search_pair_lookups,
    sphere_packing_admits, sphere_packing_max_d, WeightVerdict,
};
use ternopt_core::conditions::{
    gcd_chain_check, search_optimal, summarize_family_c, verify_optimality, verify_with_h, Family,
    Verdict,
};
use ternopt_core::cyclotomic::{coset, coset_size_lemma_check, minimal_polynomial};
use ternopt_core::identities::{run_all, Status};
use ternopt_core::poly::prime_factors;
use ternopt_core::report::{CheckResult, SpherePackingRecord};
use ternopt_core::{emit_report, factor, parse_poly, FieldCtx, Format, RunReport};

/// Environment variable holding the worker thread count.
pub const WORKERS_ENV: &str = "TERNOPT_WORKERS";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ternopt",
    version,
    about = "Verify optimality of ternary cyclic codes C(1,e)"
)]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    format: OutFormat,
    /// Write the report to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<std::path::PathBuf>,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    #[value(alias = "csv-row")]
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Modulus, order and generator of GF(3^m).
    FieldInfo {
        #[arg(long)]
        m: u32,
    },
    /// The p-cyclotomic coset of j modulo p^m - 1.
    Coset {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        /// Also check that every e with gcd(e, p^m - 1) = 2 has a coset of size m.
        #[arg(long)]
        lemma: bool,
    },
    /// Minimal polynomial of α^i over GF(3).
    Minpoly {
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
    },
    /// Generator polynomial and dimension of C(1,e).
    Code {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u64,
    },
    /// Decide optimality of C(1,e) from conditions C1–C3.
    Verify {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u64,
    },
    /// Verify every exponent of a named family.
    Family {
        #[arg(long, value_parser = ["open-problem", "concl-A", "concl-B", "concl-C"])]
        name: String,
        #[arg(long, value_delimiter = ',', required = true)]
        m_list: Vec<u32>,
    },
    /// Exhaustive search for codewords of weight ≤ 3.
    Mindist {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u64,
        /// Permit the search above m = 8.
        #[arg(long)]
        allow_long: bool,
    },
    /// Factor a polynomial over GF(3).
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Check the polynomial identities behind the optimal families.
    Identities,
    /// Report every optimal even e (by coset leader).
    Search {
        #[arg(long)]
        m: u32,
        #[arg(long, value_parser = parse_range)]
        e_range: Option<(u64, u64)>,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// Runs the command line and prints its output. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = execute(argv);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

/// Runs the command line, capturing output.
pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    if let Err(msg) = init_workers() {
        return Outcome::usage(msg);
    }

    let start = Instant::now();
    let mut report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    if cli.out.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    let code = if report.passed { EXIT_PASS } else { EXIT_FAIL };
    let text = emit_report(&report, cli.out.format.into());
    match &cli.out.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::usage(format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

fn init_workers() -> Result<(), String> {
    static INIT: OnceLock<Result<(), String>> = OnceLock::new();
    INIT.get_or_init(|| {
        let Ok(v) = std::env::var(WORKERS_ENV) else {
            return Ok(());
        };
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            format!("error: {WORKERS_ENV} must be a positive integer, got {v:?}\n")
        })?;
        // a pool may already exist when embedded; keep it
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
        Ok(())
    })
    .clone()
}

fn dispatch(cmd: &Command) -> ternopt_core::Result<RunReport> {
    match cmd {
        Command::FieldInfo { m } => field_info(*m),
        Command::Coset { p, m, j, lemma } => coset_cmd(*p, *m, *j, *lemma),
        Command::Minpoly { m, i } => minpoly_cmd(*m, *i),
        Command::Code { m, e } => code_cmd(*m, *e),
        Command::Verify { m, e } => verify_cmd(*m, *e),
        Command::Family { name, m_list } => family_cmd(name, m_list),
        Command::Mindist { m, e, allow_long } => mindist_cmd(*m, *e, *allow_long),
        Command::Factor { poly } => factor_cmd(poly),
        Command::Identities => Ok(identities_cmd()),
        Command::Search { m, e_range } => search_cmd(*m, *e_range),
    }
}

fn field_info(m: u32) -> ternopt_core::Result<RunReport> {
    let ctx = FieldCtx::build(m)?;
    let mut rep = RunReport::new("field-info").arg("m", m);
    rep.add_modulus(&ctx);
    let g = ctx.generator();
    rep.results.push(CheckResult::FieldInfo {
        m,
        modulus: ctx.modulus().to_string(),
        order: ctx.order(),
        order_prime_factors: prime_factors(ctx.order()),
        generator: ctx.format_elem(g),
        primitive: ctx.is_primitive(g),
    });
    rep.passed = ctx.is_primitive(g);
    Ok(rep)
}

fn coset_cmd(p: u64, m: u32, j: i64, lemma: bool) -> ternopt_core::Result<RunReport> {
    let c = coset(j, p, m)?;
    let mut rep = RunReport::new("coset").arg("p", p).arg("m", m).arg("j", j);
    rep.results.push(CheckResult::Coset {
        p,
        m,
        j,
        leader: c.leader,
        size: c.len(),
        members: c.members,
    });
    if lemma {
        rep = rep.arg("lemma", true);
        let r = coset_size_lemma_check(p, m)?;
        rep.passed = r.holds();
        rep.results.push(CheckResult::CosetLemma {
            p,
            m,
            checked: r.checked,
            violations: r.violations,
        });
    }
    Ok(rep)
}

fn minpoly_cmd(m: u32, i: i64) -> ternopt_core::Result<RunReport> {
    let ctx = FieldCtx::build(m)?;
    let p = minimal_polynomial(&ctx, i)?;
    let mut rep = RunReport::new("minpoly").arg("m", m).arg("i", i);
    rep.add_modulus(&ctx);
    let irreducible = p.is_irreducible()?;
    rep.passed = irreducible;
    rep.results.push(CheckResult::MinPoly {
        m,
        i,
        coset: coset(i, 3, m)?.members,
        degree: p.degree().unwrap_or(0),
        poly: p.to_string(),
        irreducible,
    });
    Ok(rep)
}

fn code_cmd(m: u32, e: u64) -> ternopt_core::Result<RunReport> {
    let ctx = FieldCtx::build(m)?;
    let code = build_code(&ctx, e)?;
    let mut rep = RunReport::new("code").arg("m", m).arg("e", e);
    rep.add_modulus(&ctx);
    rep.results.push(CheckResult::Code {
        m,
        e,
        n: code.n,
        k: code.k,
        generator_degree: code.generator.degree().unwrap_or(0),
        generator: code.generator.to_string(),
    });
    Ok(rep)
}

fn verify_cmd(m: u32, e: u64) -> ternopt_core::Result<RunReport> {
    let ctx = FieldCtx::build(m)?;
    let r = verify_optimality(&ctx, e)?;
    let mut rep = RunReport::new("verify").arg("m", m).arg("e", e);
    rep.add_modulus(&ctx);
    rep.passed = r.verdict == Verdict::Optimal;
    let failed = r.failed_conditions();
    if !failed.is_empty() {
        rep.notes
            .push(format!("failed conditions: {}", failed.join(", ")));
    }
    rep.results.push(CheckResult::condition(&r, None));
    Ok(rep)
}

fn family_cmd(name: &str, ms: &[u32]) -> ternopt_core::Result<RunReport> {
    let family = Family::from_name(name)
        .ok_or_else(|| ternopt_core::Error::InvalidParameters(format!("unknown family {name}")))?;
    let list = ms.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let mut rep = RunReport::new("family")
        .arg("name", name)
        .arg("m-list", list);

    let mut results = Vec::new();
    for &m in ms {
        let members = ternopt_core::conditions::family_members(family, m)?;
        let ctx = FieldCtx::build(m)?;
        rep.add_modulus(&ctx);
        if family == Family::OpenProblem {
            let chain = gcd_chain_check(m, members[0].h)?;
            if !chain.holds() {
                rep.passed = false;
                rep.notes.push(format!("gcd chain fails at m = {m}"));
            }
            rep.results.push(CheckResult::GcdChain(chain));
        }
        // members are independent; rayon keeps the collected order
        use rayon::prelude::*;
        let reports = members
            .par_iter()
            .map(|mem| verify_with_h(&ctx, mem.e, Some(mem.h)))
            .collect::<ternopt_core::Result<Vec<_>>>()?;
        for (member, report) in members.into_iter().zip(reports) {
            rep.results
                .push(CheckResult::condition(&report, Some(member.tag.clone())));
            results.push(ternopt_core::conditions::FamilyResult { member, report });
        }
    }

    if family == Family::ConclusionC {
        let summaries = summarize_family_c(&results);
        for &m in ms {
            let at_m: Vec<_> = summaries.iter().filter(|s| s.m == m).collect();
            if !at_m.iter().any(|s| s.all_optimal) {
                rep.passed = false;
                rep.notes.push(format!(
                    "DISCREPANCY m = {m}: no reading of E yields optimal codes for every h"
                ));
            }
            if !at_m.iter().any(|s| s.uniform) {
                rep.notes.push(format!(
                    "DISCREPANCY m = {m}: no reading of E gives a verdict uniform in h"
                ));
            }
            for s in at_m.iter().filter(|s| !s.uniform) {
                let bad: Vec<String> = s
                    .verdicts
                    .iter()
                    .filter(|v| v.2 != Verdict::Optimal)
                    .map(|(h, e, _)| format!("h={h} e={e}"))
                    .collect();
                rep.notes.push(format!(
                    "DISCREPANCY m = {m}, E = {}: verdict varies with h; not optimal at {}",
                    s.label,
                    bad.join(", ")
                ));
            }
        }
        rep.results
            .extend(summaries.into_iter().map(CheckResult::FamilyC));
    } else {
        for r in &results {
            if r.report.verdict != Verdict::Optimal {
                rep.passed = false;
                rep.notes.push(format!(
                    "m = {} e = {} ({}) is not optimal: failed {}",
                    r.report.m,
                    r.report.e,
                    r.member.tag,
                    r.report.failed_conditions().join(", ")
                ));
            }
        }
    }
    Ok(rep)
}

fn mindist_cmd(m: u32, e: u64, allow_long: bool) -> ternopt_core::Result<RunReport> {
    check_search_budget(m, allow_long)?;
    let ctx = FieldCtx::build(m)?;
    let code = build_code(&ctx, e)?;
    let w = min_weight_leq3_search(&ctx, e)?;
    let (n, k) = (code.n, code.k);
    let sp = SpherePackingRecord {
        n,
        k,
        admits_d4: sphere_packing_admits(n, k, 4, 3),
        admits_d5: sphere_packing_admits(n, k, 5, 3),
        max_d: sphere_packing_max_d(n, k, 3)?,
    };
    let derivation = match (w.verdict, sp.max_d) {
        (WeightVerdict::NoWordBelow4, 4) => {
            "no codeword of weight <= 3 and sphere packing excludes d >= 5, so d = 4 (optimal)"
                .to_string()
        }
        (WeightVerdict::NoWordBelow4, d) => format!("d >= 4 and sphere packing allows d <= {d}"),
        (WeightVerdict::Found, _) => format!(
            "a codeword of weight {} exists, so d <= {}",
            w.weight().unwrap_or(0),
            w.weight().unwrap_or(0)
        ),
    };
    let mut rep = RunReport::new("mindist").arg("m", m).arg("e", e);
    if allow_long {
        rep = rep.arg("allow-long", true);
    }
    rep.add_modulus(&ctx);
    rep.notes
        .push(format!("about {} pair lookups", search_pair_lookups(m)));
    rep.passed = w.verdict == WeightVerdict::NoWordBelow4 && sp.max_d == 4;
    rep.results.push(CheckResult::Mindist {
        m,
        e,
        n,
        k,
        verdict: w.verdict,
        witness: w
            .word
            .map(|word| word.into_iter().map(|(i, c)| (i, c.value())).collect()),
        sphere_packing: sp,
        derivation,
    });
    Ok(rep)
}

fn factor_cmd(text: &str) -> ternopt_core::Result<RunReport> {
    let p = parse_poly(text)?;
    let f = factor(&p)?;
    let mut rep = RunReport::new("factor").arg("poly", text);
    let irreducible = match p.degree() {
        Some(d) if d >= 1 => Some(p.is_irreducible()?),
        _ => None,
    };
    if f.expand() != p {
        rep.passed = false;
        rep.notes
            .push("product of factors does not reproduce the input".into());
    }
    rep.results.push(CheckResult::Factor {
        poly: p.to_string(),
        unit: f.unit.value(),
        factors: f.entries(),
        irreducible,
    });
    Ok(rep)
}

fn identities_cmd() -> RunReport {
    let mut rep = RunReport::new("identities");
    for check in run_all() {
        if check.status == Status::Fail {
            rep.passed = false;
        }
        rep.results.push(CheckResult::Identity((&check).into()));
    }
    rep
}

fn search_cmd(m: u32, range: Option<(u64, u64)>) -> ternopt_core::Result<RunReport> {
    let ctx = FieldCtx::build(m)?;
    let (from, to) = range.unwrap_or((1, ctx.order() - 1));
    let leaders = search_optimal(&ctx, from..=to)?;
    let mut rep = RunReport::new("search")
        .arg("m", m)
        .arg("e-range", format!("{from}..{to}"));
    rep.add_modulus(&ctx);
    rep.results.push(CheckResult::Search {
        m,
        from,
        to,
        optimal_leaders: leaders,
    });
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..40"), Ok((2, 40)));
        assert_eq!(parse_range("2..=40"), Ok((2, 40)));
        assert!(parse_range("40..2").is_err());
        assert!(parse_range("x..2").is_err());
        assert!(parse_range("12").is_err());
    }
}
