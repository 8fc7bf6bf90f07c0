//! `littleadj`: graded multiplicities in the exterior algebra of the little
//! adjoint module, with table reproduction and verification suites.
//!
//! Exit codes: 0 success, 1 mathematical disagreement, 2 usage or gate error.

mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use littleadj::characters::{exterior_powers, little_adjoint_character};
use littleadj::gradedmult::{gm_by_method, routes_agree, GradedMultiplicity, Method};
use littleadj::verify::{self, Suite};
use littleadj::{Error, Family, RootSystem, Weight};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "littleadj",
    version,
    about = "Graded multiplicities of the little adjoint module"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct TypeArgs {
    /// Root system family: B, C, F or G.
    #[arg(long = "type", value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    rank: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded multiplicity of the trivial or little adjoint module.
    Gm {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum)]
        lambda: Lambda,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Allow brute force on modules of dimension up to 44.
        #[arg(long)]
        long: bool,
    },
    /// Special exponents and the partition of special heights.
    Exponents {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Irreducible constituents of one exterior power of the little adjoint module.
    Decompose {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        power: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        long: bool,
    },
    /// Special-height tables for C3..C6, F4 and G2.
    Tables {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
        /// Include F4 in the brute-force and symbolic suites.
        #[arg(long)]
        long: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Lambda {
    Trivial,
    LittleAdjoint,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Closed,
    Bruteforce,
    Ct,
    FormulaT,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Closed => vec![Method::Closed],
            MethodArg::Bruteforce => vec![Method::Bruteforce],
            MethodArg::Ct => vec![Method::ConstantTerm],
            MethodArg::FormulaT => vec![Method::FormulaT],
            MethodArg::All => vec![
                Method::Closed,
                Method::Bruteforce,
                Method::ConstantTerm,
                Method::FormulaT,
            ],
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Disagreement,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

const BRUTEFORCE_DIM: usize = 30;
const BRUTEFORCE_DIM_LONG: usize = 44;

fn bruteforce_gate(rs: &RootSystem, long: bool) -> Result<(), String> {
    let d = rs.little_adjoint_dim();
    let cap = if long {
        BRUTEFORCE_DIM_LONG
    } else {
        BRUTEFORCE_DIM
    };
    if d <= cap {
        Ok(())
    } else if d <= BRUTEFORCE_DIM_LONG {
        Err(format!(
            "brute force on a {d}-dimensional module needs --long (default limit {BRUTEFORCE_DIM})"
        ))
    } else {
        Err(format!(
            "brute force on a {d}-dimensional module is out of reach (limit {BRUTEFORCE_DIM_LONG})"
        ))
    }
}

fn root_system(ty: TypeArgs) -> Result<RootSystem, Failure> {
    Ok(RootSystem::from_family(ty.family, ty.rank)?)
}

fn cmd_gm(
    ty: TypeArgs,
    lambda: Lambda,
    method: MethodArg,
    format: Format,
    long: bool,
) -> Result<(), Failure> {
    let rs = root_system(ty)?;
    let lam = match lambda {
        Lambda::Trivial => Weight::zero(rs.rank()),
        Lambda::LittleAdjoint => rs.root_weight(rs.theta_s()),
    };
    let single = method != MethodArg::All;
    let mut results: Vec<GradedMultiplicity> = Vec::new();
    let mut skipped: Vec<(Method, String)> = Vec::new();
    for m in method.methods() {
        let gate = if m == Method::Bruteforce {
            bruteforce_gate(&rs, long)
        } else {
            Ok(())
        };
        let outcome = gate.and_then(|_| gm_by_method(&rs, &lam, m).map_err(|e| e.to_string()));
        match outcome {
            Ok(g) => results.push(g),
            Err(msg) if single => return Err(Failure::Usage(msg)),
            Err(msg) => skipped.push((m, msg)),
        }
    }
    let agree = routes_agree(&results);
    print!(
        "{}",
        output::gm(&rs, &results, &skipped, single, agree, format)
    );
    if agree {
        Ok(())
    } else {
        Err(Failure::Disagreement)
    }
}

fn cmd_decompose(ty: TypeArgs, power: usize, format: Format, long: bool) -> Result<(), Failure> {
    let rs = root_system(ty)?;
    let d = rs.little_adjoint_dim();
    if power > d {
        return Err(Failure::Usage(format!(
            "power {power} exceeds the module dimension {d}"
        )));
    }
    bruteforce_gate(&rs, long).map_err(Failure::Usage)?;
    let ext = exterior_powers(&rs, &little_adjoint_character(&rs))?;
    let layer = ext.decompose_layer(&rs, power)?;
    print!("{}", output::decomposition(&rs, &layer, format));
    Ok(())
}

fn cmd_verify(suite: Suite, long: bool, format: Format) -> Result<(), Failure> {
    let reports = verify::run(suite, long);
    print!("{}", output::verify(&reports, format));
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Disagreement)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gm {
            ty,
            lambda,
            method,
            format,
            long,
        } => cmd_gm(ty, lambda, method, format, long),
        Command::Exponents { ty, format } => {
            let rs = root_system(ty)?;
            print!("{}", output::exponents(&rs, format));
            Ok(())
        }
        Command::Decompose {
            ty,
            power,
            format,
            long,
        } => cmd_decompose(ty, power, format, long),
        Command::Tables { format } => {
            print!("{}", output::tables(format));
            Ok(())
        }
        Command::Verify {
            suite,
            long,
            format,
        } => cmd_verify(suite, long, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
