//! Command implementations behind the `anosov` binary. Each command returns
//! the process exit code: 0 success, 1 verification failure, 2 invalid input
//! or parse error, 3 construction failure, 4 decomposition scope exceeded.

use anosov_core::cert::{
    quotient_certificate, read_certificate_file, verify_certificate, write_certificate_file,
};
use anosov_core::error::CoreError;
use anosov_core::families::{self, FamilyKind};
use anosov_core::lie::{basis_aligned_decomposition, center, derived_subalgebra, type_of};
use anosov_core::poly::IntPolynomial;
use anosov_core::units::{make_unit, search_units, SpectrumWord};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_CONSTRUCTION_FAILED: i32 = 3;
pub const EXIT_SCOPE_EXCEEDED: i32 = 4;

#[derive(Parser)]
#[command(
    name = "anosov",
    about = "Construct and verify integer certificates for hyperbolic automorphisms of nilpotent Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Human,
    Machine,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build a family member from unit polynomials and write its certificate.
    Construct {
        #[arg(long)]
        family: String,
        /// First unit polynomial, e.g. "x^2-3x+1".
        #[arg(long)]
        f: String,
        /// Second unit polynomial.
        #[arg(long)]
        g: String,
        /// Third unit polynomial (three-unit families only).
        #[arg(long)]
        h: Option<String>,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },
    /// Re-run every exact check on a certificate file.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },
    /// Enumerate units of a given degree within a coefficient bound.
    SearchUnits {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        bound: i64,
        /// Partner unit polynomial for joint validation.
        #[arg(long)]
        pair_with: Option<String>,
        /// Words for the joint validation, e.g. "1,1" or "1,1;-1,1".
        #[arg(long)]
        words: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },
    /// Print dimensions, type, step and decomposition evidence for a file.
    Info {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },
    /// Write the quotient by the last layer as an algebra-only certificate.
    Quotient { path: PathBuf, out: PathBuf },
}

fn exit_code_for(err: &CoreError) -> i32 {
    match err {
        CoreError::InvalidInput(_)
        | CoreError::NotAUnit(_)
        | CoreError::NotIrreducible(_)
        | CoreError::Parse(_) => EXIT_INVALID_INPUT,
        CoreError::NotHyperbolic(_) | CoreError::PrecisionFailure(_) => EXIT_CONSTRUCTION_FAILED,
        CoreError::ScopeExceeded(_) => EXIT_SCOPE_EXCEEDED,
        CoreError::ConstructionBug(_) | CoreError::NotNilpotent(_) => EXIT_VERIFY_FAILED,
    }
}

fn parse_poly(s: &str) -> Result<IntPolynomial, CoreError> {
    s.parse()
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Construct {
            family,
            f,
            g,
            h,
            out,
            format,
        } => cmd_construct(&family, &f, &g, h.as_deref(), &out, format),
        Command::Verify { path, format } => cmd_verify(&path, format),
        Command::SearchUnits {
            degree,
            bound,
            pair_with,
            words,
            format,
        } => cmd_search_units(
            degree,
            bound,
            pair_with.as_deref(),
            words.as_deref(),
            format,
        ),
        Command::Info { path, format } => cmd_info(&path, format),
        Command::Quotient { path, out } => cmd_quotient(&path, &out),
    }
}

fn fail(err: &CoreError) -> i32 {
    eprintln!("error: {err}");
    exit_code_for(err)
}

fn type_string(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|n| n.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn cmd_construct(
    family: &str,
    f: &str,
    g: &str,
    h: Option<&str>,
    out: &std::path::Path,
    format: ReportFormat,
) -> i32 {
    let kind: FamilyKind = match family.parse() {
        Ok(k) => k,
        Err(e) => return fail(&e),
    };
    let mut polys = Vec::new();
    for s in [Some(f), Some(g), h].into_iter().flatten() {
        match parse_poly(s) {
            Ok(p) => polys.push(p),
            Err(e) => return fail(&e),
        }
    }
    let cert = match families::build(kind, &polys) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let report = verify_certificate(&cert);
    if !report.passed() {
        for finding in &report.findings {
            eprintln!("finding: {}: {}", finding.check, finding.detail);
        }
        return EXIT_VERIFY_FAILED;
    }
    if let Err(e) = write_certificate_file(&cert, out) {
        return fail(&e);
    }
    let dim = cert.algebra.dim();
    let typ = type_of(&cert.algebra).expect("verified algebra has a type");
    match format {
        ReportFormat::Human => {
            println!("family: {}", cert.family);
            println!("dim {dim}, type {}", type_string(&typ));
            if let Some(system) = &cert.system {
                for unit in &system.units {
                    println!(
                        "unit {} (degree {}, margin {:.6})",
                        unit.min_poly, unit.degree, unit.circle_margin
                    );
                }
                for (word, verdict) in system.words.iter().zip(&system.verdicts) {
                    println!(
                        "word {word}: off circle, margin {:.6}",
                        verdict.numeric_margin
                    );
                }
            }
            println!("margin: {:.6}", cert.margins.min);
            for check in &report.checks_passed {
                println!("check {check}: pass");
            }
            println!("wrote {}", out.display());
        }
        ReportFormat::Machine => {
            println!("family={}", cert.family);
            println!("dim={dim}");
            println!("type={}", type_string(&typ));
            println!("margin={}", cert.margins.min);
            for check in &report.checks_passed {
                println!("check.{check}=pass");
            }
            println!("out={}", out.display());
        }
    }
    EXIT_OK
}

pub fn cmd_verify(path: &std::path::Path, format: ReportFormat) -> i32 {
    let cert = match read_certificate_file(path) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let report = verify_certificate(&cert);
    match format {
        ReportFormat::Human => {
            for check in &report.checks_passed {
                println!("check {check}: pass");
            }
            for finding in &report.findings {
                println!("check {}: FAIL ({})", finding.check, finding.detail);
            }
            println!("semisimple: {}", report.semisimple);
            if report.unverified_degree {
                println!("note: unverified-degree (irreducibility beyond exact scope)");
            }
            println!("verdict: {}", if report.passed() { "PASS" } else { "FAIL" });
        }
        ReportFormat::Machine => {
            for check in &report.checks_passed {
                println!("check.{check}=pass");
            }
            for finding in &report.findings {
                println!("check.{}=fail", finding.check);
            }
            println!("semisimple={}", report.semisimple);
            println!("unverified_degree={}", report.unverified_degree);
            println!("verdict={}", if report.passed() { "pass" } else { "fail" });
        }
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn parse_words(s: &str, units: usize) -> Result<Vec<SpectrumWord>, CoreError> {
    let mut words = Vec::new();
    for chunk in s.split(';') {
        let exps: Result<Vec<i64>, _> = chunk
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| CoreError::Parse(format!("bad word component {t:?}")))
            })
            .collect();
        let exps = exps?;
        if exps.len() != units {
            return Err(CoreError::Parse(format!(
                "word {chunk:?} must have {units} exponents"
            )));
        }
        words.push(SpectrumWord(exps));
    }
    Ok(words)
}

pub fn cmd_search_units(
    degree: usize,
    bound: i64,
    pair_with: Option<&str>,
    words: Option<&str>,
    format: ReportFormat,
) -> i32 {
    let constraints = match (pair_with, words) {
        (Some(poly), words) => {
            let partner = match parse_poly(poly).and_then(|p| make_unit(&p)) {
                Ok(u) => u,
                Err(e) => return fail(&e),
            };
            let words = match words {
                Some(w) => match parse_words(w, 2) {
                    Ok(w) => w,
                    Err(e) => return fail(&e),
                },
                None => vec![SpectrumWord::new(&[1, 1])],
            };
            Some(vec![(partner, words)])
        }
        (None, _) => None,
    };
    let found = match search_units(degree, bound, constraints.as_deref()) {
        Ok(u) => u,
        // Degree cap violations are an input problem for this command.
        Err(e @ CoreError::ScopeExceeded(_)) => {
            eprintln!("error: {e}");
            return EXIT_INVALID_INPUT;
        }
        Err(e) => return fail(&e),
    };
    match format {
        ReportFormat::Human => {
            println!(
                "{} unit(s) of degree {degree}, |coeff| <= {bound}:",
                found.len()
            );
            for u in &found {
                println!("  {}  margin {:.6}", u.min_poly, u.circle_margin);
            }
        }
        ReportFormat::Machine => {
            println!("count={}", found.len());
            for u in &found {
                println!("unit={} margin={}", u.min_poly, u.circle_margin);
            }
        }
    }
    EXIT_OK
}

pub fn cmd_info(path: &std::path::Path, format: ReportFormat) -> i32 {
    let cert = match read_certificate_file(path) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let alg = &cert.algebra;
    let typ = type_of(alg).expect("loaded algebra is nilpotent");
    let center_dim = center(alg).rank();
    let derived_dim = derived_subalgebra(alg).rank();
    let decomposition = basis_aligned_decomposition(alg);
    match format {
        ReportFormat::Human => {
            println!("family: {}", cert.family);
            println!("dim: {}", alg.dim());
            println!("type: {}", type_string(&typ));
            println!("step: {}", alg.step());
            println!("center dim: {center_dim}");
            println!("derived dim: {derived_dim}");
            match &decomposition {
                Ok(None) => println!("indecomposable (basis-aligned search, exhaustive)"),
                Ok(Some((s, t))) => println!(
                    "decomposes: {} + {} (basis-aligned search, exhaustive)",
                    index_set(s),
                    index_set(t)
                ),
                Err(e) => println!("decomposition: {e}"),
            }
        }
        ReportFormat::Machine => {
            println!("family={}", cert.family);
            println!("dim={}", alg.dim());
            println!("type={}", type_string(&typ));
            println!("step={}", alg.step());
            println!("center_dim={center_dim}");
            println!("derived_dim={derived_dim}");
            match &decomposition {
                Ok(None) => println!("decomposition=none"),
                Ok(Some((s, t))) => {
                    println!("decomposition={}|{}", index_list(s), index_list(t))
                }
                Err(_) => println!("decomposition=scope-exceeded"),
            }
        }
    }
    match decomposition {
        Err(e @ CoreError::ScopeExceeded(_)) => exit_code_for(&e),
        Err(e) => fail(&e),
        Ok(_) => EXIT_OK,
    }
}

fn index_set(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn index_list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
    parts.join(",")
}

pub fn cmd_quotient(path: &std::path::Path, out: &std::path::Path) -> i32 {
    let cert = match read_certificate_file(path) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    match quotient_certificate(&cert) {
        Ok(quotient) => {
            if let Err(e) = write_certificate_file(&quotient, out) {
                return fail(&e);
            }
            let typ = type_of(&quotient.algebra).expect("quotient is nilpotent");
            println!(
                "quotient: dim {}, type {} -> {}",
                quotient.algebra.dim(),
                type_string(&typ),
                out.display()
            );
            EXIT_OK
        }
        Err(e) => fail(&e),
    }
}
