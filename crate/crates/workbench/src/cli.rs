//! The `irred` command line.
//!
//! Exit codes: 0 on success, 1 for usage or input errors, 2 when a
//! verification suite fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use irreducibles::extremal::{build_p, maximize_on_simplex_with, DEFAULT_SEED};
use irreducibles::group::FiniteAbelianGroup;
use irreducibles::rational::to_f64;
use irreducibles::types::{davenport, enumerate_irreducible_types, maximal_types};
use irreducibles::{ClassOrdering, Ideal, QuadElement, QuadField, Rational, SimplexPoint, TypeVec};
use serde::Serialize;
use serde_json::json;

use crate::experiments::{
    build_extremal_ideal, landau_check, max_nu_scan, mertens_by_class, progression_experiment, FieldProgression,
};
use crate::report::{write_reports, ExperimentReport, Format, Parameters};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "irred", version, about = "Irreducible elements in imaginary quadratic fields")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphaBasis {
    /// `a,b` is `(a + b√d)/2` when `d ≡ 1 (mod 4)` and `a + b√d` otherwise.
    Sqrt,
    /// `a,b` is `a + b·ω`.
    Omega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupEmit {
    D,
    Types,
    Maximal,
    P,
    M,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Landau,
    Mertens,
    Progression,
    MaxNu,
    ExtremalIdeal,
    Elements,
    Ideals,
}

#[derive(Debug, clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct Progression {
    /// Modulus: `n` for the ideal `(n)`, or an HNF triple `a,b,c`.
    #[arg(long)]
    modulus: Option<String>,
    /// Residue `a,b`, read according to `--alpha-basis`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, value_enum, default_value_t = AlphaBasis::Sqrt)]
    alpha_basis: AlphaBasis,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Davenport constant, irreducible and maximal types, P and M of a group.
    Group {
        /// Invariant factors `d_1,…,d_k` with `d_i | d_{i+1}`.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        invariants: Vec<u64>,
        #[arg(long, value_enum, ignore_case = true, default_value_t = GroupEmit::All)]
        emit: GroupEmit,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Class group, class ordering and reduced forms of `Q(√d)`.
    Field {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Also list prime ideals of norm at most this bound, one JSON per line.
        #[arg(long)]
        primes: Option<u64>,
    },
    /// `D` and `M` for the class group, or `C'` and `L` for a progression.
    Constants {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[command(flatten)]
        progression: Progression,
        /// Include the intermediate data.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run one experiment and print its report.
    Count {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, value_enum)]
        experiment: Experiment,
        #[command(flatten)]
        progression: Progression,
        #[arg(long, value_delimiter = ',')]
        xgrid: Vec<u64>,
        /// Weights `γ` for the extremal ideal.
        #[arg(long, value_delimiter = ',')]
        gamma: Vec<f64>,
        /// `log X` for the extremal ideal.
        #[arg(long)]
        log_x: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant suites; exits with 2 on any failure.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Landau, Mertens and (with a modulus) progression reports, merged.
    Report {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[command(flatten)]
        progression: Progression,
        #[arg(long, value_delimiter = ',')]
        xgrid: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn parse_ints(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().with_context(|| format!("not an integer: {p:?}")))
        .collect()
}

pub fn parse_modulus(k: &QuadField, s: &str) -> anyhow::Result<Ideal> {
    let v = parse_ints(s)?;
    let ideal = match v[..] {
        [n] if n > 0 => Ideal::rational(n),
        [a, b, c] if a > 0 && c > 0 && a % c == 0 && b % c == 0 && (0..a).contains(&b) => Ideal { a, b, c },
        _ => bail!("modulus must be a positive integer n or an HNF triple a,b,c"),
    };
    if !k.ring().is_ideal(&ideal) {
        bail!("{s} is not an ideal of Q(sqrt({}))", k.d());
    }
    Ok(ideal)
}

pub fn parse_alpha(k: &QuadField, s: &str, basis: AlphaBasis) -> anyhow::Result<QuadElement> {
    let [a, b] = parse_ints(s)?[..] else {
        bail!("alpha must be a pair a,b");
    };
    let e = match basis {
        AlphaBasis::Omega => QuadElement::new(a, b),
        AlphaBasis::Sqrt if k.ring().trace == 1 => {
            if (a - b) % 2 != 0 {
                bail!("(a + b sqrt(d))/2 needs a and b of equal parity");
            }
            QuadElement::new((a - b) / 2, b)
        }
        AlphaBasis::Sqrt => QuadElement::new(a, b),
    };
    if e.is_zero() {
        bail!("alpha must be nonzero");
    }
    Ok(e)
}

fn progression_inputs(k: &QuadField, p: &Progression) -> anyhow::Result<Option<(Ideal, QuadElement)>> {
    match (&p.modulus, &p.alpha) {
        (Some(m), Some(a)) => Ok(Some((parse_modulus(k, m)?, parse_alpha(k, a, p.alpha_basis)?))),
        (None, None) => Ok(None),
        _ => bail!("--modulus and --alpha go together"),
    }
}

/// Decimal rendering rounded to 12 significant digits, without trailing zeros.
pub fn format_real(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let digits = 11 - v.abs().log10().floor() as i32;
    let s = format!("{:.*}", digits.max(0) as usize, v);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

#[derive(Serialize)]
struct Monomial<'a> {
    exponents: &'a [u32],
    coeff: RationalJson,
}

#[derive(Serialize)]
struct RationalJson {
    num: i128,
    den: i128,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

fn emit_json(stdout: &mut dyn Write, v: &impl Serialize) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *stdout, v)?;
    writeln!(stdout)?;
    Ok(())
}

fn group_command(invariants: Vec<u64>, emit: GroupEmit, seed: u64, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let g = FiniteAbelianGroup::new(invariants)?;
    let ord = ClassOrdering::canonical(&g);
    let h = ord.h();
    let dav = davenport(&g);
    let maximal = maximal_types(&ord);
    let types_json = |ts: &mut dyn Iterator<Item = &TypeVec>| ts.map(|t| t.counts().to_vec()).collect::<Vec<_>>();
    let p = build_p(&maximal)?;
    let solve = || maximize_on_simplex_with(&p, h, irreducibles::extremal::DEFAULT_RANDOM_STARTS, seed);
    match emit {
        GroupEmit::D => writeln!(stdout, "{}", dav.d)?,
        GroupEmit::M => writeln!(stdout, "{}", format_real(solve()?.m))?,
        GroupEmit::Types => emit_json(stdout, &types_json(&mut enumerate_irreducible_types(&ord).iter()))?,
        GroupEmit::Maximal => emit_json(stdout, &types_json(&mut maximal.iter()))?,
        GroupEmit::P => {
            let monomials: Vec<Monomial> = p
                .monomials()
                .iter()
                .map(|m| Monomial {
                    exponents: &m.exponents,
                    coeff: (&m.coeff).into(),
                })
                .collect();
            emit_json(stdout, &monomials)?
        }
        GroupEmit::All => {
            let r = solve()?;
            let classes: Vec<_> = ord.classes().iter().map(|c| c.coords().to_vec()).collect();
            let irreducible = enumerate_irreducible_types(&ord);
            emit_json(
                stdout,
                &json!({
                    "invariant_factors": g.invariant_factors(),
                    "h": h,
                    "classes": classes,
                    "D": dav.d,
                    "davenport_witness": dav.witness.iter().map(|w| w.coords().to_vec()).collect::<Vec<_>>(),
                    "irreducible_types": types_json(&mut irreducible.iter()),
                    "maximal_types": types_json(&mut maximal.iter()),
                    "M": r.m,
                    "argmax": r.argmax.coords(),
                    "kkt_residual": r.kkt_residual,
                    "seed": r.seed,
                }),
            )?
        }
    }
    Ok(())
}

fn field_command(d: i64, primes: Option<u64>, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let k = QuadField::new(d)?;
    let ord = k.ordering();
    let classes: Vec<_> = (1..=k.class_number())
        .map(|pos| {
            let f = k.class_forms()[pos - 1];
            json!({
                "position": pos,
                "element": ord.class(pos).coords(),
                "form": [f.a, f.b, f.c],
            })
        })
        .collect();
    emit_json(
        stdout,
        &json!({
            "d": d,
            "disc": k.disc(),
            "class_number": k.class_number(),
            "invariant_factors": k.class_group().invariant_factors(),
            "unit_count": k.unit_count(),
            "classes": classes,
        }),
    )?;
    if let Some(x) = primes {
        for p in crate::experiments::prime_stream(&k, x)? {
            emit_json(stdout, &p)?;
        }
    }
    Ok(())
}

fn constants_command(d: i64, prog: &Progression, all: bool, seed: u64, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let k = QuadField::new(d)?;
    let Some((m, alpha)) = progression_inputs(&k, prog)? else {
        let ord = k.ordering();
        let dav = davenport(k.class_group());
        let p = build_p(&maximal_types(ord))?;
        let r = maximize_on_simplex_with(&p, ord.h(), irreducibles::extremal::DEFAULT_RANDOM_STARTS, seed)?;
        return emit_json(stdout, &json!({ "h": ord.h(), "D": dav.d, "M": r.m }));
    };
    let fp = FieldProgression::new(&k, &m, alpha)?;
    if fp.is_degenerate() {
        bail!("alpha and the modulus share a nontrivial principal divisor; at most one irreducible qualifies");
    }
    let c = fp.constants()?;
    if all {
        emit_json(
            stdout,
            &json!({
                "C_prime": RationalJson::from(&c.c_prime),
                "L": c.l,
                "type_sum": RationalJson::from(&c.type_sum),
                "tau_prime": fp.tau_prime.counts(),
                "g": fp.g,
                "norm_g": fp.g.norm(),
                "phi": RationalJson::from(&fp.instance.phi),
                "maximal_types": c.maximal_types.iter().map(|t| t.counts().to_vec()).collect::<Vec<_>>(),
                "C_prime_f64": to_f64(&c.c_prime),
            }),
        )
    } else {
        emit_json(stdout, &json!({ "C_prime": RationalJson::from(&c.c_prime), "L": c.l }))
    }
}

fn require_grid(xgrid: &[u64]) -> anyhow::Result<()> {
    if xgrid.is_empty() {
        bail!("--xgrid is required");
    }
    Ok(())
}

fn with_output(output: &Output, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> anyhow::Result<()>) -> anyhow::Result<()> {
    match &output.out {
        Some(path) => {
            let mut file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            f(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn counts_report(
    k: &QuadField,
    experiment: Experiment,
    m: Ideal,
    alpha: QuadElement,
    xgrid: &[u64],
) -> anyhow::Result<ExperimentReport> {
    let (name, series) = match experiment {
        Experiment::Elements => ("elements", "elements"),
        _ => ("ideals", "ideals"),
    };
    let mut r = ExperimentReport::new(
        name,
        Parameters {
            d: k.d(),
            modulus: Some(m),
            alpha: Some(alpha),
            x_grid: xgrid.to_vec(),
        },
        0,
    );
    for &x in xgrid {
        let c = match experiment {
            Experiment::Elements => irreducibles::quadfield::count_progression_elements(k, x, &m, alpha)?,
            _ => irreducibles::quadfield::count_progression_ideals(k, x, &m, alpha)?,
        };
        r.push(series, x, c as f64, None);
    }
    Ok(r)
}

fn json_only(output: &Output) -> anyhow::Result<()> {
    if output.format != Format::Json {
        bail!("this experiment only has JSON output");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn count_command(
    d: i64,
    experiment: Experiment,
    prog: &Progression,
    xgrid: &[u64],
    gamma: &[f64],
    log_x: Option<f64>,
    output: &Output,
    stdout: &mut dyn Write,
) -> anyhow::Result<()> {
    let k = QuadField::new(d)?;
    let inputs = progression_inputs(&k, prog)?;
    let trivial = || (Ideal::UNIT, QuadElement::ONE);
    match experiment {
        Experiment::ExtremalIdeal => {
            json_only(output)?;
            let log_x = log_x.ok_or_else(|| anyhow!("--log-x is required"))?;
            let gamma = SimplexPoint::new(gamma.to_vec(), k.class_number() as f64)?;
            let e = build_extremal_ideal(&k, log_x, &gamma)?;
            let nu = k.nu(&e.ideal)?;
            with_output(output, stdout, |w| emit_json(w, &json!({ "extremal": e, "nu": nu })))
        }
        Experiment::MaxNu => {
            json_only(output)?;
            require_grid(xgrid)?;
            let scans = xgrid.iter().map(|&x| max_nu_scan(&k, x)).collect::<Result<Vec<_>, _>>()?;
            with_output(output, stdout, |w| emit_json(w, &scans))
        }
        Experiment::Mertens => {
            require_grid(xgrid)?;
            let t = mertens_by_class(&k, xgrid)?;
            with_output(output, stdout, |w| match output.format {
                Format::Json => emit_json(w, &t),
                Format::Csv => write_reports(&[t.to_report()], Format::Csv, w),
            })
        }
        Experiment::Landau => {
            require_grid(xgrid)?;
            let r = landau_check(&k, xgrid)?;
            with_output(output, stdout, |w| write_reports(&[r], output.format, w))
        }
        Experiment::Progression => {
            require_grid(xgrid)?;
            let (m, alpha) = inputs.unwrap_or_else(trivial);
            let r = progression_experiment(&k, &m, alpha, xgrid)?;
            with_output(output, stdout, |w| write_reports(&[r], output.format, w))
        }
        Experiment::Elements | Experiment::Ideals => {
            require_grid(xgrid)?;
            let (m, alpha) = inputs.unwrap_or_else(trivial);
            let r = counts_report(&k, experiment, m, alpha, xgrid)?;
            with_output(output, stdout, |w| write_reports(&[r], output.format, w))
        }
    }
}

fn report_command(
    d: i64,
    prog: &Progression,
    xgrid: &[u64],
    seed: u64,
    output: &Output,
    stdout: &mut dyn Write,
) -> anyhow::Result<()> {
    require_grid(xgrid)?;
    let k = QuadField::new(d)?;
    let mut reports = vec![landau_check(&k, xgrid)?, mertens_by_class(&k, xgrid)?.to_report()];
    if let Some((m, alpha)) = progression_inputs(&k, prog)? {
        reports.push(progression_experiment(&k, &m, alpha, xgrid)?);
    }
    for r in &mut reports {
        r.seed = seed;
    }
    with_output(output, stdout, |w| write_reports(&reports, output.format, w))
}

fn execute(command: Command, stdout: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Group { invariants, emit, seed } => group_command(invariants, emit, seed, stdout)?,
        Command::Field { d, primes } => field_command(d, primes, stdout)?,
        Command::Constants {
            d,
            progression,
            all,
            seed,
        } => constants_command(d, &progression, all, seed, stdout)?,
        Command::Count {
            d,
            experiment,
            progression,
            xgrid,
            gamma,
            log_x,
            output,
        } => count_command(d, experiment, &progression, &xgrid, &gamma, log_x, &output, stdout)?,
        Command::Verify { seed } => {
            let outcomes = verify::run_all(seed);
            for o in &outcomes {
                writeln!(stdout, "{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail)?;
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Report {
            d,
            progression,
            xgrid,
            seed,
            output,
        } => report_command(d, &progression, &xgrid, seed, &output, stdout)?,
    }
    Ok(EXIT_OK)
}
