use clap::{Args, Parser, Subcommand};
use krall::krall::{NamedParams, Theorem};
use krall::moments::{IpKind, IpParams};
use krall::rational::{parse_rational, Rational};
use krall::report::{self, Report};
use std::process::ExitCode;
use std::time::Instant;

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn theorem(s: &str) -> Result<Theorem, String> {
    Theorem::parse(s).ok_or_else(|| {
        let names: Vec<_> = Theorem::ALL.iter().map(|t| t.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn ip_kind(s: &str) -> Result<IpKind, String> {
    IpKind::parse(s).ok_or_else(|| {
        let names: Vec<_> = IpKind::ALL.iter().map(|t| t.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

/// Exact verification of Krall-type constructions. Rationals are "p/q".
#[derive(Parser)]
#[command(name = "krall", version)]
struct Cli {
    /// Print the JSON report instead of the text summary
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Params {
    #[arg(long, value_parser = rational, default_value = "1")]
    a: Rational,
    #[arg(long, value_parser = rational, default_value = "0")]
    c: Rational,
    #[arg(long = "big-n", visible_alias = "N", value_parser = rational, default_value = "0")]
    big_n: Rational,
    #[arg(long, value_parser = rational, default_value = "0")]
    alpha: Rational,
    #[arg(long, value_parser = rational, default_value = "0")]
    beta: Rational,
    /// Rescaled Koornwinder mass K
    #[arg(long, value_parser = rational, default_value = "1")]
    mass: Rational,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    nmax: usize,
}

impl Params {
    fn named(&self) -> NamedParams {
        NamedParams {
            k: self.k,
            a: self.a.clone(),
            c: self.c.clone(),
            big_n: self.big_n.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            mass: self.mass.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every catalog D-operator of a family against its series
    VerifyDops {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        p: Params,
    },
    /// Build a named construction and verify it
    Krall {
        #[arg(long, value_parser = theorem)]
        theorem: Theorem,
        #[command(flatten)]
        p: Params,
        /// Also check orthogonality under the target measure
        #[arg(long)]
        ortho: bool,
        /// Also report the banded recurrence
        #[arg(long)]
        band: bool,
    },
    /// Casorati determinant identity for Charlier polynomials
    Casorati {
        #[command(flatten)]
        p: Params,
    },
    /// Inner-product lemma for a transformed measure
    IpLemma {
        #[arg(long, value_parser = ip_kind)]
        kind: IpKind,
        #[command(flatten)]
        p: Params,
    },
    /// Print beta_n, gamma_n, lambda_n and q_n
    Table {
        #[arg(long, value_parser = theorem)]
        theorem: Theorem,
        #[command(flatten)]
        p: Params,
    },
    /// Print the operator D_q as JSON
    DumpOperator {
        #[arg(long, value_parser = theorem)]
        theorem: Theorem,
        #[command(flatten)]
        p: Params,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("KRALL_WORKERS").ok().and_then(|v| v.parse().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    let result: krall::Result<Option<Report>> = match &cli.cmd {
        Cmd::VerifyDops { family, p } => {
            report::family_from_flags(family, &p.a, &p.c, &p.big_n, &p.alpha, &p.beta)
                .and_then(|spec| report::verify_dops_report(&spec, p.nmax))
                .map(Some)
        }
        Cmd::Krall { theorem, p, ortho, band } => {
            report::krall_report(*theorem, &p.named(), p.nmax, *ortho, *band).map(Some)
        }
        Cmd::Casorati { p } => report::casorati_report(&p.a, p.k, p.nmax).map(Some),
        Cmd::IpLemma { kind, p } => {
            let ip = IpParams {
                k: p.k,
                a: p.a.clone(),
                c: p.c.clone(),
                alpha: p.alpha.clone(),
                big_n: p.big_n.clone(),
            };
            report::ip_report(*kind, &ip, p.nmax).map(Some)
        }
        Cmd::Table { theorem, p } => report::table(*theorem, &p.named(), p.nmax).map(|(text, json)| {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&json).expect("json"));
            } else {
                print!("{text}");
            }
            None
        }),
        Cmd::DumpOperator { theorem, p } => report::dump_operator(*theorem, &p.named()).map(|s| {
            println!("{s}");
            None
        }),
    };
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(rep)) => {
            let ok = rep.passed();
            if cli.json {
                let env = rep.seal(start.elapsed().as_secs_f64() * 1e3);
                println!("{}", serde_json::to_string_pretty(&env).expect("json"));
            } else {
                print!("{}", rep.to_text());
                eprintln!("elapsed {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(report::exit_code_for(&e) as u8)
        }
    }
}
