use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tautrel::cache::TableCache;
use tautrel::coeffs::{
    check_bernoulli_q_identity, check_diagonal_generating_function, check_g_closed_forms, check_q0_equation,
    check_q_series_equation, check_table_identities, p_series, IdentityReport,
};
use tautrel::exact::bernoulli_table;
use tautrel::output::{alpha_rows, bernoulli_rows, c_rows, p_rows, q_rows, render_csv, render_json, TableKind};
use tautrel::relations::{check_leading_coefficients, crosscheck_pipelines, faber_json, faber_solve, scan_nonvanishing};
use tautrel::tautring::{extract_psi_relation, extract_relation_with, ExtractOptions};
use tautrel::Error;

/// Exact coefficient tables and κ-class relations for the tautological ring
/// of M_g.
///
/// Exit status: 0 on success, 1 when a mathematical check fails, 2 on a
/// usage error.
#[derive(Parser, Debug)]
#[command(name = "tautrel", version)]
struct Cli {
    /// Directory for cached coefficient tables.
    #[arg(long, global = true, env = "TAUTREL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a coefficient table.
    Coeffs {
        #[arg(long, value_enum)]
        table: Table,
        /// Largest index (orders (k, k) for alpha). 0..=400.
        #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(0..=400))]
        max_k: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run exact identity checks; exits 1 on the first failing suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Truncation order (largest genus for crosscheck). 1..=200.
        #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(1..=200))]
        order: i64,
    },
    /// Print the relation for (g, d, b) as JSON; a vanishing relation has no terms.
    Relation {
        #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(2..=200))]
        g: i64,
        #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(2..=200))]
        d: i64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0, value_parser = clap::value_parser!(i64).range(0..=200))]
        b: i64,
        /// The ψ-κ relation in degree g+2-2d instead (b is ignored).
        #[arg(long)]
        psi: bool,
        /// Keep κ_0 as a symbol (key "k0") instead of substituting 2g-2.
        #[arg(long)]
        keep_kappa0: bool,
    },
    /// Express κ_a, [g/3] < a <= g-2, through lower κ-classes.
    ///
    /// Genera 2 and 3 give an empty list.
    Faber {
        #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(2..=60))]
        g: i64,
        /// Rewrite every expression in κ_1 ... κ_[g/3] only.
        #[arg(long)]
        rewrite: bool,
    },
    /// Check nonvanishing of the leading coefficients for a <= max-a.
    Scan {
        #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(1..=400))]
        max_a: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Table {
    Q,
    C,
    Alpha,
    P,
    Bernoulli,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Ode,
    Genfunc,
    Crosscheck,
    All,
}

enum Failure {
    Math(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RelationOutOfRange { .. }
            | Error::InvalidArgument(_)
            | Error::Inadmissible(_)
            | Error::Cache(_) => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    let cache = TableCache::new(cli.cache_dir)?;
    match cli.command {
        Command::Coeffs { table, max_k, format } => cmd_coeffs(&cache, table, max_k as usize, format, out),
        Command::Verify { suite, order } => cmd_verify(&cache, suite, order as usize, out),
        Command::Relation {
            g,
            d,
            b,
            psi,
            keep_kappa0,
        } => {
            let k = (g as usize).max(1);
            let q = cache.q_table(k)?;
            let c = cache.c_table(k)?;
            let rel = if psi {
                extract_psi_relation(g, d, &q, &c)?
            } else {
                let opts = ExtractOptions {
                    keep_kappa0,
                    ..Default::default()
                };
                extract_relation_with(g, d, b, &q, &c, opts)?
            };
            out.push_str(&rel.to_json());
            out.push('\n');
            Ok(())
        }
        Command::Faber { g, rewrite } => {
            let k = g as usize;
            let q = cache.q_table(k)?;
            let c = cache.c_table(k)?;
            let exprs = faber_solve(g, &q, &c)?;
            out.push_str(&faber_json(&exprs, rewrite));
            out.push('\n');
            Ok(())
        }
        Command::Scan { max_a } => {
            let a = max_a as usize;
            let q = cache.q_table(a)?;
            let c = cache.c_table(a)?;
            let report = scan_nonvanishing(a, &q, &c)?;
            out.push_str(&report.to_json());
            out.push('\n');
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Math(format!("{} nonvanishing checks failed", report.failures.len())))
            }
        }
    }
}

fn cmd_coeffs(cache: &TableCache, table: Table, k: usize, format: Format, out: &mut String) -> Result<(), Failure> {
    let (kind, rows) = match table {
        Table::Q => (TableKind::Q, q_rows(&cache.q_table(k)?, k)),
        Table::C => (TableKind::C, c_rows(&cache.c_table(k)?, k)),
        Table::Alpha => (TableKind::Alpha, alpha_rows(&cache.alpha_table(k)?, k)),
        Table::P => (TableKind::P, p_rows(k)),
        Table::Bernoulli => (TableKind::Bernoulli, bernoulli_rows(&bernoulli_table(k), k)),
    };
    match format {
        Format::Csv => out.push_str(&render_csv(&rows, kind.two_index())),
        Format::Json => {
            out.push_str(&render_json(&rows));
            out.push('\n');
        }
    }
    Ok(())
}

fn report_lines(report: &IdentityReport, out: &mut String) -> Result<(), Failure> {
    for check in &report.checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {}: {} ({} checked)\n", check.name, check.detail, check.checked));
    }
    match report.first_failure() {
        None => Ok(()),
        Some(f) => {
            let at = match f.j {
                Some(j) => format!("({},{})", f.k, j),
                None => format!("{}", f.k),
            };
            Err(Failure::Math(format!(
                "{} fails at {at}: expected {}, got {}",
                f.identity, f.expected, f.actual
            )))
        }
    }
}

fn cmd_verify(cache: &TableCache, suite: Suite, n: usize, out: &mut String) -> Result<(), Failure> {
    let all = suite == Suite::All;
    if all || suite == Suite::Identities {
        let q = cache.q_table(n)?;
        let c = cache.c_table(n)?;
        let bern = bernoulli_table(n + 1);
        let mut report = check_table_identities(&q, &c, &bern, n)?;
        report.extend(check_q0_equation(&q, n)?);
        report.extend(check_q_series_equation(&q, n.min(20))?);
        report.extend(check_bernoulli_q_identity(&q, &bern, n)?);
        report_lines(&report, out)?;
    }
    if all || suite == Suite::Genfunc {
        let c = cache.c_table(n)?;
        report_lines(&check_diagonal_generating_function(&c, n)?, out)?;
        let p = p_series(n);
        for k in 1..=n.min(3) {
            out.push_str(&format!("p_{k} = {} matched\n", p.coeff(k).map_err(Failure::from)?));
        }
    }
    if all || suite == Suite::Ode {
        report_lines(&check_g_closed_forms(n)?, out)?;
        let m = n.max(2);
        out.push_str(&format!("alpha vs closed-form: match through ({m},{m})\n"));
    }
    if all || suite == Suite::Crosscheck {
        let g_max = (n as i64).max(2);
        let k = g_max as usize;
        let q = cache.q_table(k)?;
        let c = cache.c_table(k)?;
        let alpha = cache.alpha_table(k)?;
        let cross = crosscheck_pipelines(g_max, 4, &q, &c, &alpha)?;
        let lead = check_leading_coefficients(g_max, 5, &q, &c)?;
        for (name, rep) in [("pipelines", &cross), ("leading_coefficients", &lead)] {
            let status = if rep.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {name}: g <= {g_max} ({} checked)\n", rep.checked));
        }
        for (g, d, r) in &cross.b0_general_ratios {
            out.push_str(&format!("b=0 general/simple ratio at (g,d)=({g},{d}): {r}\n"));
        }
        if let Some(f) = cross.failures.first().or(lead.failures.first()) {
            return Err(Failure::Math(f.clone()));
        }
    }
    Ok(())
}
