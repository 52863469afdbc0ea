//! Command-line front end.
//!
//! Exit status: 0 when every requested verdict passes, 1 when a verdict
//! fails, 2 on usage or computation errors (including size-guard refusals).

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::cartan::CartanType;
use crate::error::Error;
use crate::kostant::{enumerate_abelian_ideals, module_of_ideal};
use crate::verify::{
    default_pathway, single_cell, verify_conjecture, PathwayChoice, VerifyOptions,
};

#[derive(Parser)]
#[command(
    name = "cdsw",
    version,
    about = "Exact verification of the single-invariant-generator conjecture for small-rank simple Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full verification for one type and emit the report.
    Verify {
        /// Cartan type, e.g. A1, A2, B2, C3, G2.
        #[arg(long = "type")]
        cartan_type: String,
        /// Pathway: "direct" or "b-tensor-b" (default: per-type choice).
        #[arg(long)]
        pathway: Option<String>,
        /// Limit the bidegree table to p, q <= N (default: dual Coxeter number).
        #[arg(long)]
        max_bidegree: Option<usize>,
        /// Write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override every size guard.
        #[arg(long)]
        force: bool,
    },
    /// List the abelian ideals of the Borel subalgebra.
    AbelianIdeals {
        #[arg(long = "type")]
        cartan_type: String,
    },
    /// Dimensions of a single bidegree slice: ambient, ideal, invariants.
    Hilbert {
        #[arg(long = "type")]
        cartan_type: String,
        /// Bidegree as "P,Q".
        #[arg(long)]
        pq: String,
        #[arg(long)]
        pathway: Option<String>,
        #[arg(long)]
        force: bool,
    },
    /// Run the exact property suites.
    Selftest,
}

fn parse_type(s: &str) -> Result<CartanType, Error> {
    s.parse::<CartanType>()
}

fn parse_pathway(s: Option<&str>, ct: CartanType) -> Result<PathwayChoice, Error> {
    match s {
        None => Ok(default_pathway(ct)),
        Some(p) => PathwayChoice::parse(p)
            .ok_or_else(|| Error::InvalidCartanType(format!("unknown pathway '{p}'"))),
    }
}

/// Entry point taking raw arguments; returns the process exit status.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own usage text; --help/--version exit cleanly.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::Verify { cartan_type, pathway, max_bidegree, out, force } => {
            let ct = parse_type(&cartan_type)?;
            let pw = parse_pathway(pathway.as_deref(), ct)?;
            let opts = VerifyOptions { max_bidegree, force, ..VerifyOptions::default() };
            let report = verify_conjecture(ct, pw, &opts)?;
            print!("{}", report.render_text());
            if let Some(path) = out {
                std::fs::write(&path, report.to_json_string())
                    .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?;
                println!("report written to {}", path.display());
            }
            Ok(if report.passes() { 0 } else { 1 })
        }
        Cmd::AbelianIdeals { cartan_type } => {
            let ct = parse_type(&cartan_type)?;
            let alg = crate::cache::load_or_build(ct)?;
            let rs = &alg.root_system;
            let ideals = enumerate_abelian_ideals(rs)?;
            println!("{} abelian ideals for {ct} (2^rank = {})", ideals.len(), 1 << rs.rank);
            for a in &ideals {
                let desc = module_of_ideal(rs, a)?;
                let roots: Vec<String> =
                    a.roots.iter().map(|&r| rs.root_name(&rs.positive_roots[r])).collect();
                println!(
                    "  size {}: {{{}}}  highest weight {:?}  module dimension {}",
                    a.size(),
                    roots.join(", "),
                    desc.highest_weight,
                    desc.dimension
                );
            }
            Ok(0)
        }
        Cmd::Hilbert { cartan_type, pq, pathway, force } => {
            let ct = parse_type(&cartan_type)?;
            let pw = parse_pathway(pathway.as_deref(), ct)?;
            let (p, q) = parse_pq(&pq)?;
            let opts = VerifyOptions { force, ..VerifyOptions::default() };
            let cell = single_cell(ct, p, q, pw, &opts)?;
            println!("type {ct} pathway {} bidegree ({p},{q})", pw.as_str());
            println!("  dim ambient             {}", cell.dim_ambient);
            match cell.dim_ideal {
                Some(d) => println!("  dim ideal slice         {d}"),
                None => println!("  dim ideal slice         skipped (size guard)"),
            }
            println!("  dim invariants          {}", cell.dim_invariants);
            println!("  dim invariants-in-ideal {}", cell.dim_invariants_in_ideal);
            println!("  dim quotient invariants {}", cell.quotient_invariants());
            Ok(0)
        }
        Cmd::Selftest => {
            let results = crate::selftest::run_all()?;
            let mut ok = true;
            for r in &results {
                println!("{} - {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
                ok &= r.passed;
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn parse_pq(s: &str) -> Result<(usize, usize), Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidCartanType(format!("--pq expects 'P,Q', got '{s}'")));
    }
    let p = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidCartanType(format!("bad P in '{s}'")))?;
    let q = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidCartanType(format!("bad Q in '{s}'")))?;
    Ok((p, q))
}
