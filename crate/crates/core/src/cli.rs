//! The `pineq` command line. [`run`] returns the process exit code:
//! 0 on success, 1 when a check fails, 2 on usage or domain errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::asymptotics::{self, constants, reference_rows};
use crate::cache::{Counter, DiskCache};
use crate::error::{Error, Result};
use crate::injections::InjectionSuite;
use crate::partition::{CountingFn, DeltaVariant};
use crate::range::ParamRange;
use crate::verifier::{
    check_chain, check_identity, check_table_closed_forms, scan_family, ChainId, FamilyId, IdentityId,
    InequalityFamily, Status, TableId, VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pineq", version, about = "Exact restricted partition counts, inequality scans and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CacheArgs {
    /// Cache directory (default: $PARTITION_CACHE_DIR, else .partition-cache/)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Skip the disk cache
    #[arg(long)]
    no_cache: bool,
    /// Recompute every cache hit and fail on mismatch
    #[arg(long)]
    verify_cache: bool,
    /// Count by brute-force enumeration instead of DP
    #[arg(long)]
    oracle: bool,
}

impl CacheArgs {
    fn counter(&self) -> Result<Counter> {
        if self.oracle {
            return Ok(Counter::oracle());
        }
        let counter = Counter::dp();
        if self.no_cache {
            return Ok(counter);
        }
        let disk = DiskCache::new(DiskCache::resolve_dir(self.cache_dir.as_deref()))?;
        Ok(counter.with_disk(disk).verify_disk(self.verify_cache))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Values of one counting function
    Count {
        /// q, Q, Qminus, Qminusminus, rho, G, or a full descriptor such as `parts:m=5;r=1,4;x=;u=`
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        d: Option<u64>,
        /// `a`; for rho, the number of residue classes
        #[arg(long)]
        a: Option<u64>,
        /// Scale of rho's T-set (default 1)
        #[arg(long)]
        l: Option<u64>,
        /// A single n or a range `lo..hi`
        #[arg(long)]
        n: ParamRange,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Scan an inequality family over finite ranges
    Scan {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        d: ParamRange,
        /// Required for general_a_* families
        #[arg(long)]
        a: Option<ParamRange>,
        #[arg(long)]
        n: ParamRange,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Report elapsed_ms as 0 for byte-stable output
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Run an identity, table or injection suite
    Verify {
        /// Identity (euler, rr1, rr2, schur, glaisher_consistency, monotonicity, delta_chain, scaling,
        /// d2_series, interval_bounds, boundary_counts_minus3, boundary_counts_minus4), table
        /// (s_vs_t5, minusminus_vs_scaled_t) or injection suite (phi_s_to_t5, glaisher_mod, phi_d2)
        #[arg(long)]
        suite: String,
        /// Upper bound N, or an n range for phi_s_to_t5
        #[arg(long)]
        n: Option<ParamRange>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 50)]
        i_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        no_timing: bool,
    },
    /// Evaluate each link of a reduction chain
    Chain {
        #[arg(long)]
        chain: ChainId,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// CSV of d, alpha_d, A_d, M_d (reference rows unless --d is given)
    Asym {
        #[arg(long)]
        d: Option<ParamRange>,
    },
    /// CSV of lhs(n) - rhs(n) for two counting-function descriptors
    Trend {
        #[arg(long)]
        lhs: CountingFn,
        #[arg(long)]
        rhs: CountingFn,
        #[arg(long)]
        n_max: usize,
    },
}

/// Parses `args` (including the program name) and executes the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CacheMismatch { .. } | Error::InvariantViolation(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn counting_fn(name: &str, d: Option<u64>, a: Option<u64>, l: Option<u64>) -> Result<CountingFn> {
    if name.contains(':') {
        return name.parse();
    }
    let need = |v: Option<u64>, flag: &str| {
        v.ok_or_else(|| Error::Domain(format!("--fn {name} needs --{flag}")))
    };
    let residue = |variant| -> Result<CountingFn> { Ok(CountingFn::Residue { variant, d: need(d, "d")?, a: need(a, "a")? }) };
    let f = match name {
        "q" => CountingFn::Gap { d: need(d, "d")?, a: need(a, "a")? },
        "Q" => residue(DeltaVariant::Plain)?,
        "Qminus" => residue(DeltaVariant::Minus)?,
        "Qminusminus" => residue(DeltaVariant::MinusMinus)?,
        "rho" => CountingFn::ScaledT { d: need(d, "d")?, classes: need(a, "a")?, scale: l.unwrap_or(1) },
        "G" => CountingFn::YeeG { d: need(d, "d")? },
        other => return name.parse().map_err(|_| Error::Parse(format!("unknown --fn `{other}`; expected q, Q, Qminus, Qminusminus, rho, G or a descriptor"))),
    };
    f.part_set()?;
    Ok(f)
}

fn emit_report(report: &mut VerificationReport, format: Format, no_timing: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if no_timing {
        report.elapsed_ms = 0;
    }
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(report)?)?,
        Format::Csv => report.write_csv(&mut *out)?,
    }
    writeln!(
        err,
        "{}: {} ({} points checked, {} violations)",
        report.family,
        report.status,
        report.checked,
        report.violations.len()
    )?;
    Ok(if report.status == Status::Fail { EXIT_FAIL } else { EXIT_OK })
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Count { function, d, a, l, n, format, cache } => {
            let f = counting_fn(&function, d, a, l)?;
            let counter = cache.counter()?;
            let table = counter.table(&f, n.max() as usize)?;
            let ns = n.values();
            match format {
                None if ns.len() == 1 => writeln!(out, "{}", table[ns[0] as usize])?,
                None | Some(Format::Csv) => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["n", "count"])?;
                    for n in ns {
                        w.write_record([n.to_string(), table[n as usize].to_string()])?;
                    }
                    w.flush()?;
                }
                Some(Format::Json) => {
                    let counts: Vec<_> =
                        ns.iter().map(|&n| json!({ "n": n, "count": table[n as usize].to_string() })).collect();
                    let doc = json!({ "function": f.to_string(), "counts": counts });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Scan { family, d, a, n, workers, format, no_timing, cache } => {
            let family = InequalityFamily::new(family, d, a, n)?;
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
            let mut report = scan_family(&family, &cache.counter()?, workers)?;
            emit_report(&mut report, format, no_timing, out, err)
        }
        Command::Verify { suite, n, d, a, k, i_max, format, no_timing } => {
            let mut report = verify_suite(&suite, n, d, a, k, i_max)?;
            emit_report(&mut report, format, no_timing, out, err)
        }
        Command::Chain { chain, d, a, n, format } => {
            let report = check_chain(chain, d, a, n)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["link", "lhs_label", "lhs", "relation", "rhs_label", "rhs", "holds"])?;
                    for (i, l) in report.links.iter().enumerate() {
                        let rel = if l.relation == crate::verifier::Relation::Ge { ">=" } else { "=" };
                        w.write_record([
                            (i + 1).to_string(),
                            l.lhs_label.clone(),
                            l.lhs.to_string(),
                            rel.to_string(),
                            l.rhs_label.clone(),
                            l.rhs.to_string(),
                            l.holds.to_string(),
                        ])?;
                    }
                    w.flush()?;
                }
            }
            Ok(if report.all_hold() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Asym { d } => {
            let rows = match d {
                None => reference_rows(),
                Some(range) => {
                    if range.min() == 0 {
                        return Err(Error::Domain("asym needs d >= 1".into()));
                    }
                    range.values().into_iter().map(constants).collect::<Result<_>>()?
                }
            };
            for r in rows.iter().filter(|r| r.boundary_sensitive) {
                writeln!(err, "warning: M_{} is boundary-sensitive (pi^2/(3A_d) within 1e-8 of an integer)", r.d)?;
            }
            asymptotics::write_constants_csv(&rows, &mut *out)?;
            Ok(EXIT_OK)
        }
        Command::Trend { lhs, rhs, n_max } => {
            asymptotics::write_trend_csv(&lhs, &rhs, n_max, &mut *out)?;
            writeln!(err, "note: finite-range values only; no limit is certified")?;
            Ok(EXIT_OK)
        }
    }
}

fn verify_suite(
    suite: &str,
    n: Option<ParamRange>,
    d: Option<u64>,
    a: Option<u64>,
    k: Option<u64>,
    i_max: usize,
) -> Result<VerificationReport> {
    let n_max = n.as_ref().map(ParamRange::max);
    if let Ok(table) = suite.parse::<TableId>() {
        return match table {
            TableId::SVsT5 => check_table_closed_forms(table, d.unwrap_or(31), 0, i_max),
            TableId::MinusMinusVsScaledT => {
                let a = a.unwrap_or(5);
                let d = d.unwrap_or_else(|| (a << (a + 3)) - a);
                check_table_closed_forms(table, d, a, i_max)
            }
        };
    }
    if let Ok(default) = suite.parse::<InjectionSuite>() {
        let suite = match default {
            InjectionSuite::SToT5 { d: d0, n_lo, n_hi } => {
                let (lo, hi) = n.as_ref().map_or((n_lo, n_hi), |r| (r.min(), r.max()));
                InjectionSuite::SToT5 { d: d.unwrap_or(d0), n_lo: lo, n_hi: hi }
            }
            InjectionSuite::Glaisher { n_max: m } => InjectionSuite::Glaisher { n_max: n_max.unwrap_or(m) },
            InjectionSuite::PhiD2 { m_max } => InjectionSuite::PhiD2 { m_max: n_max.unwrap_or(m_max) },
        };
        let report = VerificationReport::from((suite.name(), suite.run()?));
        return Ok(match suite {
            InjectionSuite::SToT5 { d, n_lo, n_hi } => report.with_range("d", d).with_range("n", format!("{n_lo}..{n_hi}")),
            InjectionSuite::Glaisher { n_max } => report.with_range("n", format!("0..{n_max}")),
            InjectionSuite::PhiD2 { m_max } => report.with_range("m", format!("0..{m_max}")),
        });
    }
    let k = match (suite, a) {
        ("interval_bounds", _) => Some(k.unwrap_or_else(|| (1u64 << (a.unwrap_or(5) + 3)) - 1)),
        _ => k,
    };
    let a = if suite == "interval_bounds" { Some(a.unwrap_or(5)) } else { a };
    let id = IdentityId::parse_with(suite, d, a, k)?;
    check_identity(id, n_max.unwrap_or(500) as usize)
}
