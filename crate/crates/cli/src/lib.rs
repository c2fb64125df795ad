//! Argument parsing and report rendering for the `cnx` binary.

use std::ffi::OsString;
use std::io::Write;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cnx_core::charmodel::{
    enhanced_character, flag_character, is_count, poincare, point_count_sn, GradedChar, Space, VarietyDescriptor,
};
use cnx_core::oracle::{count_points_with, is_prime, CountOptions, VarietyFamily, DEFAULT_BUDGET};
use cnx_core::series::{betti_zeta, coh_series, groupoid_series, stable_betti, weil_zeta_from_eigendata};
use cnx_core::verify::{run_suite, Suite};

#[derive(Parser, Debug)]
#[command(name = "cnx", version, about = "Cohomology and point counts of commuting-matrix moduli spaces")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Poincaré polynomial (or series) in the signed convention sum dim H^i (-u)^i.
    Poincare(PoincareArgs),
    /// Graded character in the Schur and power-sum bases.
    Char(CharArgs),
    /// Generating series and their product formulas.
    Series(SeriesArgs),
    /// Brute-force count of commuting matrix tuples over F_p.
    Count(CountArgs),
    /// Point count predicted by the character formula.
    Points(PointsArgs),
    /// Run a self-check suite; exits nonzero on any failure.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpaceArg {
    Cn,
    Sn,
    Coh,
    Flag,
    Bgln,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Cn => Space::Cn,
            SpaceArg::Sn => Space::Sn,
            SpaceArg::Coh => Space::Coh,
            SpaceArg::Flag => Space::Flag,
            SpaceArg::Bgln => Space::BGLn,
        }
    }
}

#[derive(Args, Debug)]
struct PoincareArgs {
    #[arg(long, value_enum)]
    space: SpaceArg,
    /// Builtin (point, affine, torus, punctured, p1) or descriptor file.
    #[arg(long, default_value = "point")]
    variety: String,
    #[arg(short = 'n')]
    n: usize,
    /// Print absolute values of coefficients (display only).
    #[arg(long)]
    abs: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["flag", "variety"]))]
struct CharArgs {
    /// Character of the flag variety GL_n / T_n.
    #[arg(long, value_name = "N")]
    flag: Option<usize>,
    /// Character of X^n for this variety.
    #[arg(long, requires = "n")]
    variety: Option<String>,
    #[arg(short = 'n')]
    n: Option<usize>,
    /// Keep Frobenius eigenvalues, specialized at this field size.
    #[arg(short = 'q')]
    q: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesKind {
    Betti,
    Coh,
    Groupoid,
    Stable,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    kind: SeriesKind,
    #[arg(long, default_value = "torus")]
    variety: String,
    #[arg(long, default_value_t = 5)]
    t_order: usize,
    #[arg(long, default_value_t = 20)]
    u_order: usize,
    #[arg(short = 'q')]
    q: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Affine,
    Torus,
    Punctured,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Number of commuting matrices (affine and torus families).
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Matrix size.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
    /// Points removed from the line (punctured family).
    #[arg(long, value_delimiter = ',')]
    avoid: Vec<u64>,
    /// Maximum number of candidate tuples.
    #[arg(long, env = "CNX_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct PointsArgs {
    #[arg(long)]
    variety: String,
    #[arg(short = 'n')]
    n: usize,
    #[arg(short = 'q')]
    q: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Pointcounts,
    Characters,
    Poincare,
    Series,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Pointcounts => Suite::PointCounts,
            SuiteArg::Characters => Suite::Characters,
            SuiteArg::Poincare => Suite::Poincare,
            SuiteArg::Series => Suite::Series,
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(short = 'q')]
    q: Option<u64>,
    #[arg(long, env = "CNX_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and diagnostics to `err`. Returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            if e
                .downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            {
                return 0;
            }
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn load(variety: &str) -> anyhow::Result<VarietyDescriptor> {
    VarietyDescriptor::lookup(variety).with_context(|| format!("loading variety `{variety}`"))
}

fn check_field(q: u64) -> anyhow::Result<()> {
    if !is_prime(q) {
        bail!("field size {q} must be prime");
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Poincare(a) => {
            let v = load(&a.variety)?.betti();
            let p = poincare(&v, a.n, a.space.into())?;
            if a.abs {
                writeln!(err, "warning: --abs shows |coefficients|; the computed values use the signed convention (-u)^i")?;
                let num = p.num().abs_coeffs().render("u");
                if p.is_polynomial() {
                    writeln!(out, "{num}")?;
                } else {
                    writeln!(out, "({num})/({})", p.den().abs_coeffs().render("u"))?;
                }
            } else {
                writeln!(out, "{}", p.render("u"))?;
            }
        }
        Command::Char(a) => {
            let ch: GradedChar = match (a.flag, a.variety) {
                (Some(n), _) => flag_character(n)?,
                (None, Some(variety)) => {
                    let d = load(&variety)?;
                    let v = match a.q {
                        Some(q) => d.resolve(Some(q))?,
                        None => d.betti(),
                    };
                    enhanced_character(&v, a.n.unwrap_or(0))
                }
                (None, None) => bail!("one of --flag or --variety is required"),
            };
            writeln!(out, "{}", ch.to_schur().render())?;
            writeln!(out, "{}", ch.value.render())?;
        }
        Command::Series(a) => return series(a, out, err),
        Command::Count(a) => {
            check_field(a.q)?;
            let family = match a.family {
                FamilyArg::Affine => VarietyFamily::AffineSpace { dim: a.dim },
                FamilyArg::Torus => VarietyFamily::Torus { dim: a.dim },
                FamilyArg::Punctured => VarietyFamily::punctured(a.avoid)?,
            };
            let options = CountOptions {
                budget: a.budget,
                parallel: true,
            };
            let count = count_points_with(&family, a.n, a.q, &options)?;
            writeln!(out, "{family} n={} q={}: {count}", a.n, a.q)?;
        }
        Command::Points(a) => {
            check_field(a.q)?;
            let d = load(&a.variety)?;
            let v = d.resolve(Some(a.q))?;
            let value = point_count_sn(&v, a.n, a.q)?;
            if d.curve {
                writeln!(out, "point count: {value}")?;
            } else {
                writeln!(out, "formula value: {value}")?;
                writeln!(err, "note: `{}` is not marked as a smooth curve; this is |S_n(X)(F_q)|, not necessarily |C_n(X)(F_q)|", d.name)?;
            }
            if !is_count(&value) {
                writeln!(err, "warning: {value} is not a nonnegative integer; check the eigenvalue data")?;
            }
        }
        Command::Verify(a) => {
            let checks = run_suite(a.suite.into(), a.q, a.budget)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
            return Ok(i32::from(failed > 0));
        }
    }
    Ok(0)
}

fn series(a: SeriesArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let d = load(&a.variety)?;
    match a.kind {
        SeriesKind::Betti => {
            let z = betti_zeta(&d.betti(), a.t_order);
            writeln!(out, "power | P_u(Sym^n X)")?;
            for (n, c) in z.coeffs().iter().enumerate() {
                writeln!(out, "t^{n} | {c}")?;
            }
        }
        SeriesKind::Coh => {
            let report = coh_series(&d.betti(), a.t_order, a.u_order)?;
            writeln!(out, "{report}")?;
            return Ok(i32::from(!report.is_equal()));
        }
        SeriesKind::Groupoid => {
            let Some(q) = a.q else {
                bail!("--kind groupoid needs -q");
            };
            check_field(q)?;
            if !d.curve {
                writeln!(err, "warning: `{}` is not marked as a smooth curve; the product formula is not expected to hold", d.name)?;
            }
            let v = d.resolve(Some(q))?;
            writeln!(out, "zeta: {}", weil_zeta_from_eigendata(&v, q).render("t"))?;
            let report = groupoid_series(&v, q, a.t_order)?;
            writeln!(out, "{report}")?;
            return Ok(i32::from(!report.is_equal()));
        }
        SeriesKind::Stable => {
            let s = stable_betti(&d.betti(), a.u_order)?;
            writeln!(out, "{} + O(u^{})", s.poly.render("u"), s.u_order + 1)?;
            writeln!(out, "stable from n = {}", s.stable_from)?;
        }
    }
    Ok(0)
}
