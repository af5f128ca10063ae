//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 usage or parse error,
//! 3 insufficient precision.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebroid;
use crate::arith::MultiIndex;
use crate::dual::{self, coproduct, DualBasis};
use crate::expr::{parse_h, Expr};
use crate::lie::LieAlgebra;
use crate::phase::{identities, prec_stamp, PhaseSpace};
use crate::report::{Report, Status};
use crate::series::{matrix_identities_check, MatrixSeries, EXACT};
use crate::weyl;
use crate::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "liephase", version, about = "Truncated phase spaces of Lie type and their Hopf algebroid checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Algebra {
    /// Built-in algebra: abelian:N, heisenberg3, sl2, solvable2, kappa:N
    #[arg(long, short = 'b')]
    pub builtin: Option<String>,
    /// Definition file (TOML, or JSON)
    #[arg(long, short = 'f', conflicts_with = "builtin")]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    Phi,
    Phitilde,
    #[value(name = "O")]
    O,
    #[value(name = "Oinv")]
    Oinv,
    Realization,
    Dualbasis,
    Coproduct,
    Antipode,
    Multiply,
    Blackleft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Appendix,
    Theorem1,
    Theorem2,
    Theorem3,
    Lemma,
    Coring,
    Bialgebroid,
    Hopf,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check antisymmetry and the Jacobi identity
    Validate {
        /// Definition file (alternative to --file)
        path: Option<PathBuf>,
        #[command(flatten)]
        alg: Algebra,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print one object in canonical form with its precision
    Compute {
        #[arg(value_enum)]
        object: Object,
        /// Expressions or indices the object needs
        args: Vec<String>,
        #[command(flatten)]
        alg: Algebra,
        /// Truncation order
        #[arg(short = 'N', long = "prec", default_value_t = 4)]
        n: i64,
    },
    /// Run verification suites
    Verify {
        #[command(flatten)]
        alg: Algebra,
        #[arg(short = 'N', long = "prec", default_value_t = 6)]
        n: i64,
        /// Test order for tensor identities and monomial ranges
        #[arg(short = 'M', long = "order", default_value_t = 2)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Include wall times (output is then not reproducible)
        #[arg(long)]
        times: bool,
    },
}

/// Captured result of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_PASS, stdout, stderr: String::new() }
    }

    fn err(e: &Error) -> Self {
        let code = match e {
            Error::Precision { .. } => EXIT_PRECISION,
            Error::Parse { .. } | Error::Domain(_) | Error::Io(_) => EXIT_USAGE,
            Error::Invalid(_) => EXIT_FAIL,
        };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}

fn load(alg: &Algebra, path: Option<&PathBuf>) -> Result<LieAlgebra, Error> {
    match (&alg.builtin, alg.file.as_ref().or(path)) {
        (Some(name), None) => LieAlgebra::builtin(name),
        (None, Some(p)) => LieAlgebra::from_file(p),
        (Some(_), Some(_)) => Err(Error::Domain("give either --builtin or a file, not both".into())),
        (None, None) => Err(Error::Domain("no Lie algebra given; use --builtin NAME or --file PATH".into())),
    }
}

pub fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Validate { path, alg, format } => validate(alg, path.as_ref(), *format),
        Command::Compute { object, args, alg, n } => match compute(*object, args, alg, *n) {
            Ok(s) => Outcome::ok(s),
            Err(e) => Outcome::err(&e),
        },
        Command::Verify { alg, n, m, suite, format, times } => verify(alg, *n, *m, *suite, *format, *times),
    }
}

fn validate(alg: &Algebra, path: Option<&PathBuf>, format: Format) -> Outcome {
    let l = match load(alg, path) {
        Ok(l) => l,
        Err(e) => return Outcome::err(&e),
    };
    let v = l.validate();
    let code = if v.is_ok() { EXIT_PASS } else { EXIT_FAIL };
    let stdout = match format {
        Format::Text => match &v {
            Ok(()) => format!("valid: {} (dim {})\n", l.label(), l.dim()),
            Err(w) => format!("invalid: {}: {w}\n", l.label()),
        },
        Format::Json => {
            let j = serde_json::json!({
                "algebra": l.label(),
                "dim": l.dim(),
                "valid": v.is_ok(),
                "witness": v.err().map(|w| w.to_string()),
            });
            format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
        }
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn need_args(object: Object, args: &[String], k: usize) -> Result<(), Error> {
    if args.len() != k {
        return Err(Error::Domain(format!(
            "`{}` takes {k} argument(s), got {}",
            object.to_possible_value().expect("value").get_name(),
            args.len()
        )));
    }
    Ok(())
}

fn matrix(name: &str, m: &MatrixSeries) -> String {
    format!("{name} {}\n{}\n", prec_stamp(m.prec()), m.render())
}

/// Multi-index from `1,0,2` or from a PBW monomial such as `x1 x3^2`.
fn multi_index(src: &str, n: usize) -> Result<MultiIndex, Error> {
    if src.contains(',') || src.chars().all(|c| c.is_ascii_digit()) {
        let exps: Vec<u32> = src
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::Parse { line: 1, col: 1, msg: format!("bad exponent list `{src}`") })?;
        if exps.len() != n {
            return Err(Error::Domain(format!("exponent list needs {n} entries")));
        }
        return Ok(MultiIndex::from_vec(exps));
    }
    let u = crate::pbw::UEnv::new(LieAlgebra::abelian(n));
    let v = Expr::parse(src)?.eval_u(&u)?;
    let mut it = v.iter();
    match (it.next(), it.next()) {
        (Some((k, c)), None) if num_traits::One::is_one(c) => Ok(k.clone()),
        _ => Err(Error::Domain(format!("`{src}` is not a single monomial"))),
    }
}

fn compute(object: Object, args: &[String], alg: &Algebra, n: i64) -> Result<String, Error> {
    if n < 0 {
        return Err(Error::Domain("N must be nonnegative".into()));
    }
    let l = load(alg, None)?;
    if let Err(w) = l.validate() {
        return Err(Error::Invalid(w.to_string()));
    }
    let dim = l.dim();
    let ps = PhaseSpace::new(l.clone(), n);
    Ok(match object {
        Object::Phi => matrix("phi", ps.phi()),
        Object::Phitilde => matrix("phitilde", ps.phi_tilde()),
        Object::O => matrix("O", ps.o()),
        Object::Oinv => matrix("Oinv", ps.o_inv()),
        Object::Realization => {
            need_args(object, args, 1)?;
            let a = Expr::parse(&args[0])?.eval_u(ps.u_left())?;
            let w = weyl::phi_realize(&l, n, &a)?;
            format!("{}\n", w.to_phase().render_stamped())
        }
        Object::Dualbasis => {
            need_args(object, args, 1)?;
            let k = multi_index(&args[0], dim)?;
            let level = k.degree();
            if (level as i64) > n {
                return Err(Error::precision(level as i64, n));
            }
            let db = DualBasis::new(&ps, level)?;
            let e = db.element(&k);
            format!("{}\n{}\n", e.render(), prec_stamp(e.prec()))
        }
        Object::Coproduct => {
            need_args(object, args, 1)?;
            let e = Expr::parse(&args[0])?;
            match e.eval_series(dim, EXACT) {
                Ok(p) => {
                    let db = DualBasis::new(&ps, n as u32)?;
                    format!("{}\n", coproduct(&ps, &db, &p, n as u32, n as u32)?.render_stamped())
                }
                Err(_) => {
                    let h = parse_h(&ps, &args[0])?;
                    let each = (h.prec().min(n) / 2) as u32;
                    let t = algebroid::delta_l(&ps, &h, each)?;
                    format!("{}\n{}\n", t.render(), prec_stamp(t.prec()))
                }
            }
        }
        Object::Antipode => {
            need_args(object, args, 1)?;
            format!("{}\n", ps.antipode(&parse_h(&ps, &args[0])?).render_stamped())
        }
        Object::Multiply => {
            need_args(object, args, 2)?;
            let (a, b) = (parse_h(&ps, &args[0])?, parse_h(&ps, &args[1])?);
            format!("{}\n", ps.mul(&a, &b).render_stamped())
        }
        Object::Blackleft => {
            need_args(object, args, 2)?;
            let h = parse_h(&ps, &args[0])?;
            let f = Expr::parse(&args[1])?.eval_u(ps.u_left())?;
            format!("{}\n", ps.black_left(&h, &f)?.render())
        }
    })
}

/// Runs the selected suites.
pub fn run_suites(ps: &PhaseSpace, m: u32, suite: Suite) -> Report {
    let n = ps.prec();
    let l = ps.lie();
    let all = suite == Suite::All;
    let mut r = Report::new();
    if all || suite == Suite::Appendix {
        r.extend(matrix_identities_check(l, n));
        r.extend(weyl::appendix_suite(l, n, n.clamp(0, 5) as u32));
        if l.is_abelian() {
            r.extend(weyl::abelian_oracle(ps, m));
        }
    }
    if all || suite == Suite::Theorem1 {
        r.extend(identities::theorem1(ps));
    }
    if all || suite == Suite::Theorem2 {
        r.extend(identities::theorem2(ps, m));
    }
    if all || suite == Suite::Theorem3 {
        r.extend(identities::theorem3(ps, m));
    }
    if all || suite == Suite::Lemma {
        let level = (m as i64 + 1).min(n).max(0) as u32;
        r.extend(dual::lemma_suite(ps, level));
        let each = m.min((n.max(0) / 2) as u32);
        r.extend(dual::coproduct_suite(ps, each, each));
    }
    if all || suite == Suite::Coring {
        r.extend(identities::bimodule(ps, m));
        r.extend(identities::counit_values(ps));
        r.extend(algebroid::coring_suite(ps, m));
    }
    if all || suite == Suite::Bialgebroid {
        r.extend(algebroid::bialgebroid_suite(ps, m));
    }
    if all || suite == Suite::Hopf {
        r.extend(algebroid::hopf_suite(ps, m));
    }
    r
}

fn verify(alg: &Algebra, n: i64, m: u32, suite: Suite, format: Format, times: bool) -> Outcome {
    if n < 0 {
        return Outcome::err(&Error::Domain("N must be nonnegative".into()));
    }
    let l = match load(alg, None) {
        Ok(l) => l,
        Err(e) => return Outcome::err(&e),
    };
    if let Err(w) = l.validate() {
        return Outcome { code: EXIT_FAIL, stdout: String::new(), stderr: format!("invalid: {w}\n") };
    }
    let ps = PhaseSpace::new(l, n);
    let mut report = run_suites(&ps, m, suite);
    for o in &mut report.checks {
        if let (Status::Precision, Some(s)) = (o.status, o.shortfall) {
            let w = o.witness.take().unwrap_or_default();
            o.witness = Some(format!("{w}; try N >= {}", n + s));
        }
        if !times {
            o.millis = 0;
        }
    }
    let code = if report.all_passed() {
        EXIT_PASS
    } else if report.checks.iter().any(|o| o.status == Status::Fail) {
        EXIT_FAIL
    } else {
        EXIT_PRECISION
    };
    let stdout = match format {
        Format::Text => report.render_text(times),
        Format::Json => format!("{}\n", report.render_json()),
    };
    Outcome { code, stdout, stderr: String::new() }
}
