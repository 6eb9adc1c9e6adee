//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 inadmissible input, 3 certificate
//! failure, 4 search-space overflow.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::assembly::{
    self, assemble, audit_no_parabolic, certify, fundamental_domain_csv, limit_points, limit_set_csv, Certificate,
    Layout, ParabolicAudit,
};
use crate::census::{self, big_count, CensusError, CensusRecord};
use crate::epimorphisms::{build_conformal_epi, build_extended_epi, rank_extended_schottky, verify_epi, EpiError, KernelReport};
use crate::handlebody::{
    boundary_orbifold, fixed_locus_conformal, fixed_locus_extended, quotient_descriptor, FixedLocusEntry,
    OrbifoldSignature, QuotientDescriptor,
};
use crate::signature::{AnySignature, FactorKind, SignatureError};
use crate::tolerance::{DEFAULT_MARGIN, DEFAULT_SAMPLES};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "zn-schottky", version, about = "Z_n-Schottky groups: census, construction and verification")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count topological types.
    Census {
        #[command(subcommand)]
        which: CensusCommand,
    },
    /// Count Schottky subgroup classes of a cyclic group of prime order.
    Subgroups {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        m: u64,
        /// Count orbits directly instead of using the closed formula.
        #[arg(long)]
        brute_force: bool,
        /// Also identify tuples differing by a common unit (brute force only).
        #[arg(long, requires = "brute_force")]
        global_units: bool,
    },
    /// Build the group of a signature and optionally certify it.
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        signature: String,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_name = "PATH")]
        emit_limit_set: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        emit_domain: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
        #[arg(long, default_value_t = Layout::default().spacing)]
        spacing: f64,
        #[arg(long, default_value_t = Layout::default().radius)]
        radius: f64,
    },
    /// Construct the epimorphism onto the cyclic group and check its kernel.
    Epi {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        signature: String,
    },
    /// Fixed-point locus of the induced handlebody map.
    FixedLocus {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        signature: String,
    },
    /// Rank of the orientation-preserving half of an extended Schottky group.
    RankExtended {
        /// Reflections, imaginary reflections, glides, loxodromics, real groups.
        #[arg(long, value_delimiter = ',', required = true)]
        counts: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        gammas: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CensusCommand {
    Conformal {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        g: u64,
    },
    ExtendedZ2 {
        #[arg(long)]
        g: u64,
    },
    PrimeActions {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        g: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Inadmissible(String),
    Certificate(String),
    Overflow(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Inadmissible(_) => 2,
            CliError::Certificate(_) => 3,
            CliError::Overflow(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Inadmissible(m) | CliError::Certificate(m) | CliError::Overflow(m) => m,
        }
    }
}

impl From<SignatureError> for CliError {
    fn from(e: SignatureError) -> Self {
        match e {
            SignatureError::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Inadmissible(e.to_string()),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::SearchSpaceTooLarge { .. } => CliError::Overflow(e.to_string()),
            CensusError::NotPrime(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<EpiError> for CliError {
    fn from(e: EpiError) -> Self {
        match e {
            EpiError::SearchSpaceTooLarge { .. } => CliError::Overflow(e.to_string()),
            EpiError::Signature(s) => s.into(),
            _ => CliError::Inadmissible(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Z2Report {
    pub g: u64,
    pub count: usize,
    pub tuples: Vec<[u64; 6]>,
    #[serde(with = "big_count")]
    pub formula_value: BigUint,
    pub formula_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeSignatureRow {
    pub m: u64,
    pub a: u64,
    pub b: u64,
    #[serde(with = "big_count")]
    pub classes: BigUint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeActionsReport {
    pub p: u64,
    pub g: u64,
    #[serde(with = "big_count")]
    pub count: BigUint,
    pub signatures: Vec<PrimeSignatureRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub p: u64,
    pub b: u64,
    pub m: u64,
    pub method: String,
    pub global_units: bool,
    #[serde(with = "big_count")]
    pub count: BigUint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorRow {
    pub kind: FactorKind,
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorRow {
    pub name: String,
    pub reversing: bool,
    /// `a, b, c, d` as `[re, im]` pairs.
    pub entries: [[f64; 2]; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub signature: String,
    pub factors: Vec<FactorRow>,
    pub generators: Vec<GeneratorRow>,
    pub relators: Vec<String>,
    pub certificate: Option<Certificate>,
    pub audit: Option<ParabolicAudit>,
    pub limit_points: Option<usize>,
    pub limit_points_at_infinity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpiReport {
    pub modulus: u64,
    pub generators: Vec<String>,
    pub exponents: Vec<u64>,
    pub reversing: Vec<bool>,
    pub kernel: KernelReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedLocusOutput {
    pub order: u64,
    pub entries: Vec<FixedLocusEntry>,
    pub totals: FixedLocusEntry,
    pub quotient: Option<QuotientDescriptor>,
    pub boundary_orbifold: Option<OrbifoldSignature>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub counts: Vec<u64>,
    pub gammas: Vec<u64>,
    pub rank: i64,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let (result, deferred) = match execute(&cli) {
        Ok(out) => (out, None),
        Err(Outcome::Fail(e)) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
        Err(Outcome::WithOutput(out, e)) => (out, Some(e)),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &result).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{result}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return 1;
    }
    match deferred {
        Some(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
        None => 0,
    }
}

/// A failure, possibly with a report that is still worth printing.
enum Outcome {
    Fail(CliError),
    WithOutput(String, CliError),
}

impl<E: Into<CliError>> From<E> for Outcome {
    fn from(e: E) -> Self {
        Outcome::Fail(e.into())
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Outcome> {
    std::fs::write(path, text).map_err(|e| Outcome::Fail(CliError::Usage(format!("cannot write {}: {e}", path.display()))))
}

fn execute(cli: &Cli) -> Result<String, Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Census { which } => census_command(which, format),
        Command::Subgroups { p, b, m, brute_force, global_units } => {
            let count = if *brute_force {
                BigUint::from(census::subgroup_classes_bruteforce(*p, *b, *m, *global_units)?)
            } else {
                census::subgroup_classes(*p, *b, *m)?
            };
            let report = SubgroupReport {
                p: *p,
                b: *b,
                m: *m,
                method: if *brute_force { "brute-force" } else { "formula" }.into(),
                global_units: *global_units,
                count,
            };
            Ok(match format {
                Format::Json => to_json(&report),
                Format::Csv => format!(
                    "p,b,m,method,global_units,count\n{},{},{},{},{},{}\n",
                    report.p, report.b, report.m, report.method, report.global_units, report.count
                ),
            })
        }
        Command::Construct { n, signature, verify, emit_limit_set, emit_domain, depth, samples, margin, spacing, radius } => {
            let sig = AnySignature::parse(*n, signature)?;
            let layout = Layout { spacing: *spacing, radius: *radius };
            let asm = assemble(&sig, layout).map_err(|e| match e {
                assembly::AssemblyError::InadmissibleSignature(m) => CliError::Inadmissible(m),
                other => CliError::Certificate(other.to_string()),
            })?;
            let mut report = construct_report(&sig, &asm);
            let mut failure = None;
            if *verify {
                let cert = certify(&asm, *samples, *margin);
                if let Some(bad) = cert.steps.iter().find(|s| !s.passed) {
                    failure = Some(CliError::Certificate(format!(
                        "certificate failed at step {}: {}",
                        bad.step,
                        bad.detail.clone().unwrap_or_default()
                    )));
                } else {
                    let audit = audit_no_parabolic(&asm, *depth, *margin);
                    if let Some(w) = audit.suspects.first() {
                        failure = Some(CliError::Certificate(format!("parabolic suspect: {w}")));
                    }
                    report.audit = Some(audit);
                }
                report.certificate = Some(cert);
            }
            if let Some(path) = emit_limit_set {
                let points = limit_points(&asm, *depth);
                let (csv, infinite) = limit_set_csv(&points);
                write_file(path, &csv)?;
                report.limit_points = Some(points.len() - infinite);
                report.limit_points_at_infinity = Some(infinite);
            }
            if let Some(path) = emit_domain {
                write_file(path, &fundamental_domain_csv(&asm, *samples))?;
            }
            let text = match format {
                Format::Json => to_json(&report),
                Format::Csv => generators_csv(&report),
            };
            match failure {
                Some(e) => Err(Outcome::WithOutput(text, e)),
                None => Ok(text),
            }
        }
        Command::Epi { n, signature } => {
            let sig = AnySignature::parse(*n, signature)?;
            let phi = match &sig {
                AnySignature::Conformal(s) => build_conformal_epi(s)?,
                AnySignature::Extended(s) => build_extended_epi(s)?,
            };
            let kernel = verify_epi(&sig, &phi);
            let report = EpiReport {
                modulus: phi.modulus,
                generators: phi.generators,
                exponents: phi.exponents,
                reversing: phi.reversing,
                kernel,
            };
            Ok(match format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut out = String::from("generator,exponent,reversing\n");
                    for ((g, e), r) in report.generators.iter().zip(&report.exponents).zip(&report.reversing) {
                        let _ = writeln!(out, "{g},{e},{r}");
                    }
                    out
                }
            })
        }
        Command::FixedLocus { n, signature } => {
            let sig = AnySignature::parse(*n, signature)?;
            let inadmissible = |e: crate::handlebody::HandlebodyError| CliError::Inadmissible(e.to_string());
            let output = match &sig {
                AnySignature::Conformal(s) => {
                    let report = fixed_locus_conformal(s).map_err(inadmissible)?;
                    FixedLocusOutput {
                        order: report.order,
                        totals: report.totals(),
                        entries: report.entries,
                        quotient: Some(quotient_descriptor(s).map_err(inadmissible)?),
                        boundary_orbifold: Some(boundary_orbifold(s)),
                    }
                }
                AnySignature::Extended(s) => {
                    let report = fixed_locus_extended(s).map_err(inadmissible)?;
                    FixedLocusOutput {
                        order: report.order,
                        totals: report.totals(),
                        entries: report.entries,
                        quotient: None,
                        boundary_orbifold: None,
                    }
                }
            };
            Ok(match format {
                Format::Json => to_json(&output),
                Format::Csv => {
                    let mut out = String::from("power,arcs,loops,points,discs,surfaces\n");
                    for e in &output.entries {
                        let _ = writeln!(out, "{},{},{},{},{},{}", e.power, e.arcs, e.loops, e.points, e.discs, e.surfaces);
                    }
                    out
                }
            })
        }
        Command::RankExtended { counts, gammas } => {
            if counts.len() != 5 {
                return Err(CliError::Usage(format!("--counts takes 5 values, got {}", counts.len())).into());
            }
            let gammas: Vec<u64> = gammas
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("bad rank {s:?}"))))
                .collect::<Result<_, _>>()?;
            let rank = rank_extended_schottky(counts[0], counts[1], counts[2], counts[3], counts[4], &gammas)?;
            let report = RankReport { counts: counts.clone(), gammas, rank };
            Ok(match format {
                Format::Json => to_json(&report),
                Format::Csv => format!("rank\n{}\n", report.rank),
            })
        }
    }
}

fn census_command(which: &CensusCommand, format: Format) -> Result<String, Outcome> {
    match which {
        CensusCommand::Conformal { n, g } => {
            if *n < 2 {
                return Err(CliError::Usage("--n must be at least 2".into()).into());
            }
            let rec: CensusRecord = census::admissible_signatures(*n, *g);
            Ok(match format {
                Format::Json => to_json(&rec),
                Format::Csv => census::census_csv(&rec),
            })
        }
        CensusCommand::ExtendedZ2 { g } => {
            let rec = census::extended_z2_signatures(*g);
            let check = census::extended_z2_count_formula(*g);
            if !check.agrees_with_enumeration {
                eprintln!(
                    "warning: closed formula gives {} but enumeration finds {} signatures at g = {}",
                    check.value, rec.count, g
                );
            }
            let report = Z2Report {
                g: rec.g,
                count: rec.count,
                tuples: rec.tuples.clone(),
                formula_value: check.value,
                formula_agrees: check.agrees_with_enumeration,
            };
            Ok(match format {
                Format::Json => to_json(&report),
                Format::Csv => census::z2_csv(&rec),
            })
        }
        CensusCommand::PrimeActions { p, g } => {
            let mut signatures = Vec::new();
            for (m, a, b) in census::prime_signatures(*p, *g)? {
                signatures.push(PrimeSignatureRow { m, a, b, classes: census::subgroup_classes(*p, b, m)? });
            }
            let count = census::prime_actions_count(*p, *g)?;
            let report = PrimeActionsReport { p: *p, g: *g, count, signatures };
            Ok(match format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut out = String::from("p,g,m,a,b,classes\n");
                    for s in &report.signatures {
                        let _ = writeln!(out, "{},{},{},{},{},{}", p, g, s.m, s.a, s.b, s.classes);
                    }
                    out
                }
            })
        }
    }
}

fn construct_report(sig: &AnySignature, asm: &assembly::Assembly) -> ConstructReport {
    let signature = match sig {
        AnySignature::Conformal(s) => s.to_string(),
        AnySignature::Extended(s) => s.to_string(),
    };
    let factors = asm
        .factors
        .iter()
        .map(|f| {
            let c = f.localization.0.finite().unwrap_or_default();
            FactorRow { kind: f.kind.clone(), center: [c.re, c.im], radius: f.localization.1 }
        })
        .collect();
    let generators = asm
        .generators
        .iter()
        .map(|(name, g)| GeneratorRow {
            name: name.clone(),
            reversing: g.is_reversing(),
            entries: g.entries().map(|z| [z.re, z.im]),
        })
        .collect();
    let relators = asm.presentation.relators.iter().map(|r| asm.presentation.word_to_string(r)).collect();
    ConstructReport {
        signature,
        factors,
        generators,
        relators,
        certificate: None,
        audit: None,
        limit_points: None,
        limit_points_at_infinity: None,
    }
}

fn generators_csv(report: &ConstructReport) -> String {
    let mut out = String::from("name,reversing,a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im\n");
    for g in &report.generators {
        let _ = write!(out, "{},{}", g.name, g.reversing);
        for [re, im] in g.entries {
            let _ = write!(out, ",{re:.16e},{im:.16e}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["zn-schottky", "census"]), 1);
        assert_eq!(run(["zn-schottky", "subgroups", "--p", "5", "--b", "1", "--m", "1", "--global-units"]), 1);
        assert_eq!(run(["zn-schottky", "construct", "--n", "2", "--signature", "m=x"]), 1);
        assert_eq!(run(["zn-schottky", "--help"]), 0);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["zn-schottky", "construct", "--n", "2", "--signature", "m=0,a=0,b=0"]), 2);
        assert_eq!(run(["zn-schottky", "epi", "--n", "4", "--signature", "m=0,a=0,b=2;2"]), 2);
        assert_eq!(
            run(["zn-schottky", "subgroups", "--p", "7", "--b", "9", "--m", "9", "--brute-force"]),
            4
        );
        let overlap = ["zn-schottky", "construct", "--n", "3", "--signature", "m=0,a=2,b=", "--verify", "--spacing", "0.9", "--radius", "0.5"];
        assert_eq!(run(overlap), 0);
        assert_eq!(run(["zn-schottky", "rank-extended", "--counts", "0,0,0,1,0"]), 2);
        assert_eq!(run(["zn-schottky", "rank-extended", "--counts", "1,0,0,1,1", "--gammas", "2"]), 0);
    }
}
