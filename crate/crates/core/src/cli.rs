//! Command-line front end.
//!
//! Exit status: 0 success, 1 a mathematical check failed, 2 bad invocation
//! or unreadable input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::checks;
use crate::classical::{
    dimension_formula, family_relations, matrix, reduced_basis, ClassicalError, Family, FamilySpec,
};
use crate::composition::{self, CompositionError, Mode};
use crate::kacmoody::{build_relations, CartanData, KacMoodyError};
use crate::parse::{parse_poly, parse_presentation, ParseError};
use crate::rewrite::{RelationSet, RewriteError};

pub const THREADS_VAR: &str = "SUPERLIE_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    KacMoody(#[from] KacMoodyError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Composition(#[from] CompositionError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Debug, Parser)]
#[command(name = "superlie", version, about = "Groebner-Shirshov bases for Lie superalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Lie,
    Assoc,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Lie => Mode::Lie,
            ModeArg::Assoc => Mode::Associative,
        }
    }
}

/// Where the relation set comes from. Exactly one source is required.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Presentation file: `letter <name> <parity> <rank>` lines, then `rel <poly>` lines.
    #[arg(long, value_name = "FILE")]
    pub presentation: Option<PathBuf>,
    /// Cartan data file; uses the Kac-Moody relations W and S±.
    #[arg(long, value_name = "FILE")]
    pub cartan: Option<PathBuf>,
    /// Classical family (sl, b, b0, c, d); uses its explicit relation system.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complete a relation set, printing each adjoined relation.
    Complete {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
        #[arg(long, value_enum, default_value = "lie")]
        mode: ModeArg,
    },
    /// Check that every composition reduces to zero.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "lie")]
        mode: ModeArg,
    },
    /// Reduce an element to normal form.
    Nf {
        #[command(flatten)]
        source: Source,
        /// Element, e.g. `[e2 [e2 e1]] - 2 e1e2`.
        #[arg(long)]
        element: String,
        /// Complete the relation set up to this degree before reducing.
        #[arg(long)]
        complete: Option<usize>,
        /// Reduce with Lie normal forms instead of associative ones.
        #[arg(long)]
        lie: bool,
    },
    /// List reduced super-LS monomials, or reduced words of the enveloping algebra.
    Basis {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
        /// Count reduced words of the enveloping algebra per degree.
        #[arg(long)]
        enveloping: bool,
    },
    /// Verify the explicit relation system of a classical family.
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: usize,
        /// Also run the matrix check for C(n), which is skipped by default.
        #[arg(long)]
        force_matrices: bool,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, default_value_t = checks::DEFAULT_SEED)]
        seed: u64,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn family_spec(family: &str, m: Option<usize>, n: usize) -> Result<FamilySpec, CliError> {
    let family: Family = family.parse()?;
    let m = match (family, m) {
        (Family::B0 | Family::C, _) => 0,
        (_, Some(m)) => m,
        (_, None) => return Err(CliError::Usage(format!("--m is required for family {family}"))),
    };
    Ok(FamilySpec::new(family, m, n)?)
}

impl Source {
    pub fn load(&self) -> Result<RelationSet, CliError> {
        let given = [self.presentation.is_some(), self.cartan.is_some(), self.family.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if given != 1 {
            return Err(CliError::Usage(
                "give exactly one of --presentation, --cartan, --family".to_string(),
            ));
        }
        if let Some(path) = &self.presentation {
            let p = parse_presentation(&read(path)?).map_err(|source| CliError::Parse {
                path: path.display().to_string(),
                source,
            })?;
            return RelationSet::from_polys(&p.alphabet, &p.relations)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())));
        }
        if let Some(path) = &self.cartan {
            let c = CartanData::parse(&read(path)?)?;
            let pres = build_relations(&c)?;
            return Ok(RelationSet::from_polys(&pres.alphabet, &pres.all_relations()).expect("valid relations"));
        }
        let family = self.family.as_deref().expect("checked above");
        let n = self
            .n
            .ok_or_else(|| CliError::Usage("--n is required with --family".to_string()))?;
        Ok(family_relations(&family_spec(family, self.m, n)?)?.set)
    }
}

/// Sets the worker count from the environment, if given.
pub fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
        // Fails only if a global pool already exists, which is harmless here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    Ok(())
}

/// Runs a parsed command, writing to `out`. Returns the exit status.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    configure_threads()?;
    let w = |out: &mut dyn Write, s: String| {
        out.write_all(s.as_bytes()).expect("write to output");
    };
    match cli.command {
        Command::Complete {
            source,
            max_degree,
            mode,
        } => {
            let s = source.load()?;
            let c = composition::complete(&s, mode.into(), max_degree as usize)?;
            for p in &c.added {
                let deg = p.leading_word().map_or(0, |u| u.len());
                w(out, format!("REL {deg} {}\n", p.format(s.alphabet())));
            }
            w(out, format!("FIXPOINT {}\n", c.fixpoint));
            Ok(0)
        }
        Command::Check { source, mode } => {
            let s = source.load()?;
            let report = composition::is_closed(&s, mode.into())?;
            w(out, report.render(s.alphabet()));
            Ok(if report.is_closed() { 0 } else { 1 })
        }
        Command::Nf {
            source,
            element,
            complete,
            lie,
        } => {
            let mut s = source.load()?;
            if let Some(d) = complete {
                s = composition::complete(&s, Mode::Associative, d)?.set;
            }
            let p = parse_poly(&element, s.alphabet()).map_err(|source| CliError::Parse {
                path: "element".to_string(),
                source,
            })?;
            let nf = if lie {
                s.normal_form_lie(&p)?.poly
            } else {
                s.normal_form_assoc(&p)
            };
            w(out, format!("{}\n", nf.format(s.alphabet())));
            Ok(0)
        }
        Command::Basis {
            source,
            max_degree,
            enveloping,
        } => {
            let s = source.load()?;
            if enveloping {
                for (k, c) in s.count_reduced_words(max_degree as usize).iter().enumerate() {
                    w(out, format!("DEG {k} {c}\n"));
                }
            } else {
                let basis = s.enumerate_reduced_super_ls_monomials(max_degree as usize);
                for t in &basis {
                    w(out, format!("MONO {}\n", t.format(s.alphabet())));
                }
                w(out, format!("BASIS {}\n", basis.len()));
            }
            Ok(0)
        }
        Command::Verify {
            family,
            m,
            n,
            force_matrices,
        } => {
            let f = family_spec(&family, m, n)?;
            let rel = family_relations(&f)?;
            let mut ok = true;
            for mode in [Mode::Lie, Mode::Associative] {
                let report = composition::is_closed(&rel.set, mode)?;
                ok &= report.is_closed();
                w(out, report.render(rel.alphabet()));
            }
            let basis = reduced_basis(&rel).len();
            let dim = dimension_formula(&f);
            ok &= basis == dim;
            w(out, format!("BASIS {basis}\nDIM {dim}\n"));
            let m = matrix::verify_by_matrices(&rel, force_matrices);
            ok &= m.skipped || m.ok();
            w(out, format!("MATRIX {}\n", m.verdict()));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Selftest { seed } => {
            let lines = checks::run_all(seed);
            for l in &lines {
                w(out, format!("{l}\n"));
            }
            Ok(if lines.iter().all(|l| l.passed) { 0 } else { 1 })
        }
    }
}

/// Parses arguments and runs; clap usage errors exit with status 2.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
