//! The `rm5` command line. Exit codes: 0 success, 1 domain error or failed
//! check, 2 usage error.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rm5_core::arith::{hilbert_symbol, Rational, Sqrt5};
use rm5_core::experiments::{run_pd_experiment, ExperimentParams, ICProvider};
use rm5_core::families::{
    brumer_family_curve, brumer_family_gh, invariants_match, mestre_family_curve, mestre_family_gh,
};
use rm5_core::invariants::{
    clebsch_from_coeffs, clebsch_from_ic, igusa_clebsch_from_sextic, normalize_ic, FieldTag, IgusaClebsch,
};
use rm5_core::mestre::{conic_rational_point, conic_solvability, diagonalize, ConicSolvability};
use rm5_core::models::{describe, model_from_point, Model, ModelRequest};
use rm5_core::moduli::{classify, ClassifyInput, MNPoint};
use rm5_core::poly::MultiPoly;
use rm5_core::qf_reduce::{
    disc_reduce_partial, disc_reduce_square, forms_equivalent_over_q, partial_change, rediscover_rm5_chain,
    replace_index, replay_infinity_chain, replay_rm5_chain, search_degree_reduction, simple_degree_reduce,
    vector_string, Ansatz, BasisChange, RatFunc, ReductionTranscript, StageOp,
};

use crate::formats::{load, save, to_text, Curve, CurveFile, IcProviderFile, QfFile};
use crate::literal::parse_rational;

#[derive(Debug, Parser)]
#[command(name = "rm5", version, about = "Genus-2 curves with real multiplication by the order of discriminant 5")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Q,
    Q5,
}

impl FieldArg {
    fn tag(self) -> FieldTag {
        match self {
            FieldArg::Q => FieldTag::Rational,
            FieldArg::Q5 => FieldTag::RationalSqrt5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Chain {
    Rm5,
    Infinity,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized Igusa-Clebsch and Clebsch invariants of a curve file.
    Invariants {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
    },
    /// Case of the moduli classification for a point.
    Classify(ClassifyArgs),
    /// Weierstrass model for an (m, n) point.
    Model {
        #[arg(long, num_args = 2, value_names = ["M", "N"], allow_hyphen_values = true, required = true)]
        mn: Vec<String>,
        #[arg(long, value_enum)]
        field: FieldArg,
        /// Solution (u, v) of u^2 - 5 v^2 = -(m^2 - 5 n^2 - 5).
        #[arg(long, num_args = 2, value_names = ["U", "V"], allow_hyphen_values = true)]
        witness: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rational points on conics and equivalence of forms over Q.
    Conic(ConicArgs),
    /// One reduction step on a quadratic form file.
    Reduce(ReduceArgs),
    /// Replays a stored reduction chain and checks every stage.
    Replay {
        #[arg(long, value_enum)]
        chain: Chain,
        /// Also rerun the generic searches on the rm5 chain.
        #[arg(long)]
        rediscover: bool,
    },
    /// Curves from the explicit one-parameter families.
    Family {
        #[command(flatten)]
        which: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equivalence experiment between specialized conics and x1^2 - D x2^2 - p_D x3^2.
    Experiment {
        #[arg(long)]
        pd: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        height: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        ic_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "point")]
pub struct PointArgs {
    #[arg(long, num_args = 2, value_names = ["M", "N"], allow_hyphen_values = true)]
    mn: Option<Vec<String>>,
    #[arg(long, num_args = 2, value_names = ["G", "H"], allow_hyphen_values = true)]
    gh: Option<Vec<String>>,
    #[arg(long, num_args = 4, value_names = ["I2", "I4", "I6", "I10"], allow_hyphen_values = true)]
    ic: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    point: PointArgs,
    /// With --gh, the z coordinate; otherwise its existence is tested.
    #[arg(long, requires = "gh", allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, value_enum)]
    field: FieldArg,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ConicArgs {
    #[arg(long, value_name = "FILE")]
    solve: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["FILE1", "FILE2"])]
    equivalent: Option<Vec<PathBuf>>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "operation")]
pub struct ReduceOp {
    /// Lower the degree of the TARGET diagonal entry (1-based).
    #[arg(long, value_name = "TARGET")]
    degree: Option<usize>,
    /// Remove G^2 from the discriminant.
    #[arg(long, value_name = "G")]
    disc_square: Option<String>,
    /// Remove G from the discriminant using R isotropic vectors mod G.
    #[arg(long, num_args = 2, value_names = ["G", "R"])]
    disc_partial: Option<Vec<String>>,
    /// Translate coefficient variables, VAR=VALUE.
    #[arg(long, value_name = "VAR=VALUE", num_args = 1.., allow_hyphen_values = true)]
    shift: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long)]
    qf: PathBuf,
    #[command(flatten)]
    op: ReduceOp,
    /// Coordinate degrees of the search vector, comma separated.
    #[arg(long, value_delimiter = ',')]
    ansatz: Option<Vec<u32>>,
    /// Variable of the search vector's coordinates.
    #[arg(long)]
    ansatz_var: Option<String>,
    /// Largest coordinate degree tried when no ansatz is given.
    #[arg(long, default_value_t = 2)]
    max_degree: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    transcript: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FamilyArgs {
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    mestre: Option<Vec<String>>,
    #[arg(long, num_args = 3, value_names = ["B", "C", "D"], allow_hyphen_values = true)]
    brumer: Option<Vec<String>>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

fn domain(e: impl Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn rationals(xs: &[String]) -> Result<Vec<Rational>, CliError> {
    xs.iter().map(|s| parse_rational(s).map_err(usage)).collect()
}

fn io(e: std::io::Error) -> CliError {
    CliError::Domain(e.to_string())
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = e.print();
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            1
        }
    }
}

pub fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Invariants { curve, field } => invariants(&curve, field, out),
        Command::Classify(a) => classify_cmd(&a, out),
        Command::Model { mn, field, witness, out: path } => model(&mn, field, witness.as_deref(), path.as_deref(), out),
        Command::Conic(a) => conic(&a, out),
        Command::Reduce(a) => reduce(&a, out),
        Command::Replay { chain, rediscover } => replay(chain, rediscover, out),
        Command::Family { which, out: path } => family(&which, path.as_deref(), out),
        Command::Experiment { pd, samples, height, seed, ic_file, out: path } => {
            let params = ExperimentParams { d: pd, samples, height, seed };
            experiment(params, ic_file.as_deref(), path.as_deref(), out)
        }
    }
}

/// Normalized over `Q` when every entry is rational.
fn ic_line(ic: &IgusaClebsch<Sqrt5>) -> (String, String) {
    let rational: Option<Vec<Rational>> = ic.to_array().iter().map(|x| x.as_rational().cloned()).collect();
    match rational {
        Some(r) => {
            let n = normalize_ic(&IgusaClebsch::from_array([r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone()]));
            (n.to_string(), clebsch_from_ic(&n).to_string())
        }
        None => (format!("{ic} (not rational, unnormalized)"), clebsch_from_ic(ic).to_string()),
    }
}

fn invariants(path: &Path, field: Option<FieldArg>, out: &mut dyn Write) -> Result<i32, CliError> {
    let file: CurveFile = load(path).map_err(domain)?;
    let mut curve = Curve::from_file(&file).map_err(domain)?;
    if let Some(f) = field {
        curve = curve.over(f.tag()).map_err(domain)?;
    }
    let model = curve.to_sqrt5();
    let ic = igusa_clebsch_from_sextic(&model).map_err(domain)?;
    let (ic_text, clebsch_text) = ic_line(&ic);
    writeln!(out, "field: {}", curve.field().short_name()).map_err(io)?;
    writeln!(out, "curve: y^2 = {}", model).map_err(io)?;
    writeln!(out, "igusa-clebsch: {}", ic_text).map_err(io)?;
    writeln!(out, "clebsch: {}", clebsch_text).map_err(io)?;
    writeln!(out, "clebsch of the model: {}", clebsch_from_coeffs(model.coeffs())).map_err(io)?;
    Ok(0)
}

fn classify_cmd(a: &ClassifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = &a.point;
    let input = if let Some(mn) = &p.mn {
        let v = rationals(mn)?;
        ClassifyInput::MN(MNPoint::new(v[0].clone(), v[1].clone()))
    } else if let Some(gh) = &p.gh {
        let v = rationals(gh)?;
        let z = a.z.as_deref().map(parse_rational).transpose().map_err(usage)?;
        ClassifyInput::GH { g: v[0].clone(), h: v[1].clone(), z }
    } else if let Some(ic) = &p.ic {
        let v = rationals(ic)?;
        ClassifyInput::IC(IgusaClebsch::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
    } else {
        return Err(usage("one of --mn, --gh, --ic is required"));
    };
    let class = classify(&input, a.field.tag()).map_err(domain)?;
    write!(out, "{class}").map_err(io)?;
    Ok(0)
}

fn model_curve(model: &Model) -> Curve {
    match model {
        Model::Rational { model, .. } => Curve::Rational(model.clone()),
        Model::Sqrt5(model) => Curve::Sqrt5(model.clone()),
    }
}

fn emit_curve(curve: &Curve, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => {
            save(p, &curve.to_file()).map_err(domain)?;
            writeln!(out, "curve file: {}", p.display()).map_err(io)
        }
        None => write!(out, "{}", to_text(&curve.to_file())).map_err(io),
    }
}

fn model(
    mn: &[String],
    field: FieldArg,
    witness: Option<&[String]>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let v = rationals(mn)?;
    let mut req = ModelRequest::new(v[0].clone(), v[1].clone(), field.tag());
    if let Some(w) = witness {
        let w = rationals(w)?;
        req.witness = Some((w[0].clone(), w[1].clone()));
    }
    let model = model_from_point(&req).map_err(domain)?;
    writeln!(out, "{}", describe(&model)).map_err(io)?;
    // model_from_point refuses models whose invariants differ from the point's
    writeln!(out, "invariant roundtrip: PASS").map_err(io)?;
    emit_curve(&model_curve(&model), path, out)?;
    Ok(0)
}

fn conic(a: &ConicArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(path) = &a.solve {
        let file: QfFile = load(path).map_err(domain)?;
        let q = file.to_rational().map_err(domain)?;
        if q.rows() != 3 {
            return Err(domain("a conic needs a 3x3 Gram matrix"));
        }
        match conic_solvability(&q).map_err(domain)? {
            ConicSolvability::Solvable => {
                let p = conic_rational_point(&q).map_err(domain)?;
                writeln!(out, "solvable").map_err(io)?;
                writeln!(out, "point: ({} : {} : {})", p[0], p[1], p[2]).map_err(io)?;
                writeln!(out, "value at point: {}", q.quad(&p)).map_err(io)?;
            }
            ConicSolvability::Unsolvable(place) => {
                let (_, d) = diagonalize(&q);
                let a = -(&d[0] * &d[2]);
                let b = -(&d[1] * &d[2]);
                let s = hilbert_symbol(&a, &b, &place).map_err(domain)?;
                writeln!(out, "unsolvable").map_err(io)?;
                writeln!(out, "diagonal: ({}, {}, {})", d[0], d[1], d[2]).map_err(io)?;
                writeln!(out, "certificate: ({}, {})_{} = {}", a, b, place, s).map_err(io)?;
            }
        }
        return Ok(0);
    }
    let Some(files) = &a.equivalent else {
        return Err(usage("one of --solve, --equivalent is required"));
    };
    let load_form = |p: &PathBuf| -> Result<_, CliError> {
        let f: QfFile = load(p).map_err(domain)?;
        f.to_rational().map_err(domain)
    };
    let (q1, q2) = (load_form(&files[0])?, load_form(&files[1])?);
    let eq = forms_equivalent_over_q(&q1, &q2).map_err(domain)?;
    writeln!(out, "equivalent: {eq}").map_err(io)?;
    Ok(0)
}

fn parse_poly(s: &str) -> Result<MultiPoly, CliError> {
    MultiPoly::parse(s).map_err(|e| usage(format!("`{s}`: {e}")))
}

fn reduce(a: &ReduceArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let file: QfFile = load(&a.qf).map_err(domain)?;
    let q = file.to_form().map_err(domain)?;
    let n = q.dim();
    let var = match &a.ansatz_var {
        Some(v) => v.clone(),
        None => q.vars().first().cloned().ok_or_else(|| usage("form has no coefficient variables"))?,
    };
    let ansatz = |default: Vec<u32>| -> Result<Ansatz, CliError> {
        let degs = a.ansatz.clone().unwrap_or(default);
        if degs.len() != n {
            return Err(usage(format!("ansatz needs {n} degrees")));
        }
        Ok(Ansatz::dense(&[var.as_str()], &degs))
    };
    let not_found = || domain("no reducing vector found");
    let op = &a.op;
    let (annotation, step) = if let Some(t) = op.degree {
        if t == 0 || t > n {
            return Err(usage(format!("target must lie in 1..={n}")));
        }
        let found = match &a.ansatz {
            Some(_) => simple_degree_reduce(&q, t - 1, &ansatz(vec![0; n])?).map_err(domain)?,
            None => search_degree_reduction(&q, t - 1, &var, a.max_degree).map_err(domain)?,
        };
        let (v, _) = found.ok_or_else(not_found)?;
        let note = format!("degree reduction of entry {t} with v = {}", vector_string(&v));
        let change = BasisChange::replace(n, t - 1, v, MultiPoly::one(), "degree reduction").map_err(domain)?;
        (note, StageOp::Basis { change, scale: RatFunc::one() })
    } else if let Some(g) = &op.disc_square {
        let g = parse_poly(g)?;
        let (v, _) = disc_reduce_square(&q, &g, &ansatz(vec![0; n])?).map_err(domain)?.ok_or_else(not_found)?;
        let j = replace_index(&v).ok_or_else(not_found)?;
        let note = format!("remove ({g})^2 with v = {}", vector_string(&v));
        let change = BasisChange::replace(n, j, v, g, "discriminant reduction (square)").map_err(domain)?;
        (note, StageOp::Basis { change, scale: RatFunc::one() })
    } else if let Some(gr) = &op.disc_partial {
        let g = parse_poly(&gr[0])?;
        let r: usize = gr[1].parse().map_err(|_| usage(format!("bad count `{}`", gr[1])))?;
        let (vs, _) = disc_reduce_partial(&q, &g, r).map_err(domain)?.ok_or_else(not_found)?;
        let shown: Vec<String> =
            vs.iter().map(|v| vector_string(&v.iter().cloned().map(MultiPoly::constant).collect::<Vec<_>>())).collect();
        let note = format!("remove {g} with isotropic vectors {}", shown.join(" "));
        let change = partial_change(n, &g, &vs).map_err(domain)?;
        (note, StageOp::Basis { change, scale: RatFunc::new(MultiPoly::one(), g) })
    } else if let Some(shifts) = &op.shift {
        let mut parsed = Vec::new();
        for s in shifts {
            let (v, c) = s.split_once('=').ok_or_else(|| usage(format!("expected VAR=VALUE, got `{s}`")))?;
            parsed.push((v.trim().to_string(), parse_rational(c).map_err(usage)?));
        }
        ("shift of coefficient variables".to_string(), StageOp::Shift { shifts: parsed })
    } else {
        return Err(usage("an operation is required"));
    };
    let mut tr = ReductionTranscript::new("reduce", q, &format!("input {}", a.qf.display()));
    tr.push("Q2", &annotation, step).map_err(domain)?;
    tr.verify().map_err(domain)?;
    let reduced = QfFile::from_form(tr.current());
    match &a.out {
        Some(p) => save(p, &reduced).map_err(domain)?,
        None => write!(out, "{}", to_text(&reduced)).map_err(io)?,
    }
    match &a.transcript {
        Some(p) => std::fs::write(p, tr.to_string()).map_err(io)?,
        None => write!(out, "{tr}").map_err(io)?,
    }
    Ok(0)
}

fn replay(chain: Chain, rediscover: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let tr = match chain {
        Chain::Rm5 => replay_rm5_chain(),
        Chain::Infinity => replay_infinity_chain(),
    }
    .map_err(domain)?;
    let consistent = tr.verify();
    writeln!(out, "# rm5 replay").map_err(io)?;
    writeln!(out, "version: {}", env!("CARGO_PKG_VERSION")).map_err(io)?;
    write!(out, "{tr}").map_err(io)?;
    if let Err(e) = &consistent {
        writeln!(out, "recomputation: FAIL ({e})").map_err(io)?;
    }
    if rediscover {
        if chain != Chain::Rm5 {
            return Err(usage("--rediscover applies to the rm5 chain"));
        }
        writeln!(out).map_err(io)?;
        writeln!(out, "# rediscovery").map_err(io)?;
        for r in rediscover_rm5_chain().map_err(domain)? {
            let found = r.found.as_deref().unwrap_or("none");
            let verdict = if r.matches { "same" } else { "different" };
            writeln!(out, "{}: found {} expected {} ({})", r.step, found, r.expected, verdict).map_err(io)?;
        }
    }
    Ok(if tr.passed() && consistent.is_ok() { 0 } else { 1 })
}

fn family(a: &FamilyArgs, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let (curve, (g, h)) = if let Some(ab) = &a.mestre {
        let v = rationals(ab)?;
        (
            mestre_family_curve(&v[0], &v[1]).map_err(domain)?,
            mestre_family_gh(&v[0], &v[1]).map_err(domain)?,
        )
    } else if let Some(bcd) = &a.brumer {
        let v = rationals(bcd)?;
        (
            brumer_family_curve(&v[0], &v[1], &v[2]).map_err(domain)?,
            brumer_family_gh(&v[0], &v[1], &v[2]).map_err(domain)?,
        )
    } else {
        return Err(usage("one of --mestre, --brumer is required"));
    };
    let verdict = invariants_match(&curve, &g, &h);
    writeln!(out, "curve: y^2 = {curve}").map_err(io)?;
    writeln!(out, "(g, h) = ({g}, {h})").map_err(io)?;
    let ok = verdict == Some(true);
    writeln!(out, "invariant match: {}", if ok { "PASS" } else { "FAIL" }).map_err(io)?;
    emit_curve(&Curve::Rational(curve), path, out)?;
    Ok(if ok { 0 } else { 1 })
}

fn experiment(
    params: ExperimentParams,
    ic_file: Option<&Path>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let provider: Option<ICProvider> = match ic_file {
        Some(p) => {
            let f: IcProviderFile = load(p).map_err(domain)?;
            Some(f.to_provider(&p.display().to_string()).map_err(domain)?)
        }
        None => None,
    };
    let report = run_pd_experiment(params, provider.as_ref()).map_err(domain)?;
    let text = report.to_string();
    write!(out, "{text}").map_err(io)?;
    if let Some(p) = path {
        std::fs::write(p, &text).map_err(io)?;
    }
    // failures for D other than 5 are observations, not errors
    Ok(if params.d == 5 && !report.failures().is_empty() { 1 } else { 0 })
}
