//! Command-line front end. Exit codes: 0 success, 1 violations or failed
//! checks, 2 IO and parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::assembly::{diagnose, edge_defects, validate_assembly, Assembly, Diagnosis};
use crate::curvature::{curvature_at, model_chart, random_points, CurvatureReport, Point, DEFAULT_STEP};
use crate::error::Error;
use crate::examples::{
    branched_cover_invariants, build_m, build_mprime, build_z, dg_h_piece, hirzebruch_cusped, RandomFamily,
};
use crate::flat_catalog::{catalog, FlatLetter};
use crate::pieces::Piece;
use crate::rational;
use crate::report::{render, table, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "chisig", version, about = "Euler characteristic and signature of glued 4-manifolds")]
pub struct Cli {
    /// Print the JSON schemas for pieces and assemblies and exit.
    #[arg(long, global = true)]
    pub schema: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Seed for random generation.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance for curvature checks.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Flat 3-manifold catalog with Seifert data and eta values.
    Catalog,
    /// Validate a piece and print its signatures.
    Piece {
        #[arg(long)]
        input: PathBuf,
    },
    /// Validate and diagnose an assembly.
    Assemble {
        #[arg(long)]
        input: PathBuf,
    },
    /// Named families and seeded random assemblies.
    Examples {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<i64>,
        /// Population for `--family random`.
        #[arg(long, value_enum, default_value = "mixed")]
        random: RandomKind,
    },
    /// Curvature of a model metric at given or random points.
    Curvature {
        #[arg(long)]
        model: String,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Number of seeded random points (seed defaults to 0).
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
    },
    /// Geography table over named families.
    Report {
        /// `all` or a comma-separated list of M, Mprime, Z.
        #[arg(long, default_value = "all")]
        families: String,
        #[arg(long, default_value_t = 6)]
        n_max: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "M")]
    M,
    #[value(name = "Mprime")]
    Mprime,
    #[value(name = "Z")]
    Z,
    /// Cusped piece `X_n`.
    #[value(name = "X")]
    X,
    /// Piece `H_n`.
    #[value(name = "H")]
    H,
    /// Branched cover bookkeeping for even `n`.
    #[value(name = "branched")]
    Branched,
    #[value(name = "random")]
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RandomKind {
    Real,
    Holzapfel,
    Mixed,
    Complex,
}

impl From<RandomKind> for RandomFamily {
    fn from(k: RandomKind) -> RandomFamily {
        match k {
            RandomKind::Real => RandomFamily::Real,
            RandomKind::Holzapfel => RandomFamily::Holzapfel,
            RandomKind::Mixed => RandomFamily::Mixed,
            RandomKind::Complex => RandomFamily::Complex,
        }
    }
}

/// Outcome of a subcommand before it is turned into an exit code.
enum Failure {
    /// Reader went away (`chisig ... | head`).
    Closed,
    Io(String),
    Violations(Vec<String>),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Validation(v) => Failure::Violations(v.iter().map(ToString::to_string).collect()),
            Error::Io(_) | Error::Json(_) => Failure::Io(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_IO } else { EXIT_OK };
        }
    };
    run_cli(&cli, out, err)
}

pub fn run_cli(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = dispatch(cli, out);
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAIL,
        Err(Failure::Closed) => EXIT_OK,
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_IO
        }
        Err(Failure::Violations(list)) => {
            for v in list {
                let _ = writeln!(err, "violation: {v}");
            }
            EXIT_FAIL
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAIL
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    if !(cli.tolerance > 0.0 && cli.tolerance.is_finite()) {
        return Err(Failure::Io(format!("tolerance must be positive, got {}", cli.tolerance)));
    }
    if cli.schema {
        emit(out, &(serde_json::to_string_pretty(&schemas()).expect("static json") + "\n"))?;
        return Ok(true);
    }
    let Some(command) = &cli.command else {
        return Err(Failure::Io("no subcommand given (try --help)".into()));
    };
    let format = |default| cli.format.unwrap_or(default);
    match command {
        Command::Catalog => cmd_catalog(out, format(OutputFormat::Table)),
        Command::Piece { input } => cmd_piece(out, input, format(OutputFormat::Table)),
        Command::Assemble { input } => cmd_assemble(out, input, format(OutputFormat::Table)),
        Command::Examples { family, m, n, random } => {
            cmd_examples(out, *family, *m, *n, (*random).into(), cli.seed, format(OutputFormat::Table))
        }
        Command::Curvature { model, point, points, step } => cmd_curvature(
            out,
            model,
            point.as_deref(),
            *points,
            *step,
            cli.seed.unwrap_or(0),
            cli.tolerance,
            format(OutputFormat::Table),
        ),
        Command::Report { families, n_max } => cmd_report(out, families, *n_max, format(OutputFormat::Csv)),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| match e.kind() {
        std::io::ErrorKind::BrokenPipe => Failure::Closed,
        _ => Failure::Io(e.to_string()),
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn cmd_catalog(out: &mut dyn Write, format: OutputFormat) -> Outcome {
    let rows: Vec<Value> = catalog()
        .iter()
        .map(|t| {
            json!({
                "letter": t.letter.to_string(),
                "eta": rational::to_json(&t.eta_reference),
                "admits_orientation_reversal": t.admits_orientation_reversal,
                "presentations": t.seifert_presentations.iter().map(|s| json!({
                    "seifert": s.to_string(),
                    "euler_number": rational::to_json(&s.euler_number()),
                    "orbifold_euler_characteristic": rational::to_json(&s.orbifold_euler_characteristic()),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let text = match format {
        OutputFormat::Json => pretty(&rows),
        OutputFormat::Csv | OutputFormat::Table => {
            let mut body = Vec::new();
            for t in catalog() {
                for s in &t.seifert_presentations {
                    body.push([
                        t.letter.to_string(),
                        s.to_string(),
                        rational::display(&s.euler_number()),
                        rational::display(&s.orbifold_euler_characteristic()),
                        rational::display(&t.eta_reference),
                        t.admits_orientation_reversal.to_string(),
                    ]);
                }
            }
            let header = ["letter", "seifert", "e+sum_r", "chi_orb", "eta", "reversible"];
            if format == OutputFormat::Csv {
                let mut s = header.join(",") + "\n";
                for r in &body {
                    s += &(r.iter().map(|c| format!("\"{c}\"")).collect::<Vec<_>>().join(",") + "\n");
                }
                s
            } else {
                table(&header, &body)
            }
        }
    };
    emit(out, &text)?;
    debug_assert!(FlatLetter::ALL.len() == catalog().len());
    Ok(true)
}

fn cmd_piece(out: &mut dyn Write, input: &Path, format: OutputFormat) -> Outcome {
    let piece: Piece = read_json(input)?;
    let violations: Vec<String> = piece.validate().iter().map(ToString::to_string).collect();
    let sigma_top = piece.sigma_top().ok();
    let text = match format {
        OutputFormat::Json => pretty(&json!({
            "label": piece.label,
            "geometry": piece.geometry,
            "orientation": piece.orientation,
            "chi": piece.chi,
            "sigma_l2": rational::to_json(&piece.sigma_l2()),
            "sigma_top": sigma_top.as_ref().map(rational::to_json),
            "violations": violations,
        })),
        _ => format!(
            "label={} geometry={} chi={} sigma_l2={} sigma_top={}\n",
            piece.label,
            piece.geometry,
            piece.chi,
            rational::display(&piece.sigma_l2()),
            sigma_top.as_ref().map_or("unsupported".into(), rational::display)
        ),
    };
    emit(out, &text)?;
    if violations.is_empty() {
        Ok(true)
    } else {
        Err(Failure::Violations(violations))
    }
}

fn diagnosis_text(d: &Diagnosis, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => pretty(d),
        OutputFormat::Table => d.summary_line() + "\n",
        OutputFormat::Csv => render(vec![d.clone()], OutputFormat::Csv),
    }
}

fn cmd_assemble(out: &mut dyn Write, input: &Path, format: OutputFormat) -> Outcome {
    let a: Assembly = read_json(input)?;
    let violations = validate_assembly(&a);
    if !violations.is_empty() {
        return Err(Failure::Violations(violations.iter().map(ToString::to_string).collect()));
    }
    let d = diagnose(&a)?;
    if format == OutputFormat::Json {
        let defects = edge_defects(&a)
            .map(|v| {
                v.iter()
                    .map(|e| {
                        json!({
                            "edge": e.edge,
                            "defects": [rational::to_json(&e.first), rational::to_json(&e.second)],
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .ok();
        emit(out, &pretty(&json!({ "diagnosis": d, "edge_defects": defects })))?;
    } else {
        emit(out, &diagnosis_text(&d, format))?;
    }
    Ok(true)
}

fn need<T>(v: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure::Io(format!("this family needs --{flag}")))
}

fn cmd_examples(
    out: &mut dyn Write,
    family: Family,
    m: Option<usize>,
    n: Option<i64>,
    random: RandomFamily,
    seed: Option<u64>,
    format: OutputFormat,
) -> Outcome {
    let assembly = match family {
        Family::M => build_m(need(m, "m")?)?,
        Family::Mprime => build_mprime(need(m, "m")?)?,
        Family::Z => build_z(need(n, "n")?)?,
        Family::Random => random.generate(need(seed, "seed")?),
        Family::X | Family::H => {
            let n = need(n, "n")?;
            let p = if family == Family::X { hirzebruch_cusped(n)? } else { dg_h_piece(n)? };
            let sigma_top = p.sigma_top()?;
            let text = match format {
                OutputFormat::Json => pretty(&json!({
                    "piece": p,
                    "sigma_l2": rational::to_json(&p.sigma_l2()),
                    "sigma_top": rational::to_json(&sigma_top),
                })),
                _ => format!(
                    "label={} chi={} cusps={} sigma_l2={} sigma_top={}\n",
                    p.label,
                    p.chi,
                    p.cusps.len(),
                    rational::display(&p.sigma_l2()),
                    rational::display(&sigma_top)
                ),
            };
            emit(out, &text)?;
            return Ok(p.is_valid());
        }
        Family::Branched => {
            let r = branched_cover_invariants(need(n, "n")?)?;
            let text = match format {
                OutputFormat::Json => pretty(&r),
                _ => format!(
                    "n={} chi={} c1_squared={} L={}x({}) R={}x({}) RL={} logbmy_defect={} minus_L_squared={} {}\n",
                    r.n,
                    r.chi,
                    r.c1_squared,
                    r.l_components,
                    r.l_self_intersection,
                    r.r_components,
                    rational::display(&r.r_self_intersection),
                    r.rl_intersection,
                    r.logbmy_defect,
                    r.minus_l_squared,
                    if r.saturated() && r.general_type() { "PASS" } else { "FAIL" }
                ),
            };
            emit(out, &text)?;
            return Ok(r.saturated() && r.general_type());
        }
    };
    let d = diagnose(&assembly)?;
    let text = match format {
        OutputFormat::Json => pretty(&json!({ "assembly": assembly, "diagnosis": d })),
        _ => diagnosis_text(&d, format),
    };
    emit(out, &text)?;
    Ok(true)
}

/// Expected values per model; `None` entries are not checked.
struct ModelExpectation {
    scalar: f64,
    wplus2: Option<f64>,
    wminus2: Option<f64>,
    ric0sq: f64,
    balanced: bool,
}

fn expectation(model: &str) -> Option<ModelExpectation> {
    let e = |scalar, wplus2, wminus2, ric0sq, balanced| ModelExpectation { scalar, wplus2, wminus2, ric0sq, balanced };
    Some(match model {
        "F4" => e(-3.0, Some(0.375), Some(0.375), 2.25, true),
        "H4" => e(-12.0, Some(0.0), Some(0.0), 0.0, true),
        "H3xE1" => e(-6.0, Some(0.0), Some(0.0), 3.0, true),
        "H2xE2" => e(-2.0, None, None, 1.0, true),
        "H2xH2" => e(-4.0, None, None, 0.0, true),
        "CH2" => e(-24.0, Some(24.0), Some(0.0), 0.0, false),
        _ => return None,
    })
}

fn check(r: &CurvatureReport, e: &ModelExpectation, tol: f64) -> bool {
    let near = |a: f64, b: f64| (a - b).abs() <= tol;
    near(r.scalar, e.scalar)
        && near(r.traceless_ricci_norm2, e.ric0sq)
        && e.wplus2.is_none_or(|w| near(r.wplus_norm2, w))
        && e.wminus2.is_none_or(|w| near(r.wminus_norm2, w))
        && (!e.balanced || near(r.wplus_norm2, r.wminus_norm2))
}

fn parse_point(text: &str) -> std::result::Result<Point, Failure> {
    let coords: Vec<f64> = text
        .split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Failure::Io(format!("bad --point {text:?}: {e}")))?;
    coords.try_into().map_err(|v: Vec<f64>| Failure::Io(format!("--point needs 4 coordinates, got {}", v.len())))
}

#[allow(clippy::too_many_arguments)]
fn cmd_curvature(
    out: &mut dyn Write,
    model: &str,
    point: Option<&str>,
    points: Option<usize>,
    step: f64,
    seed: u64,
    tol: f64,
    format: OutputFormat,
) -> Outcome {
    let chart = model_chart(model).map_err(|e| Failure::Io(e.to_string()))?;
    let expected = expectation(model).expect("every model chart has constants");
    let mut pts = Vec::new();
    if let Some(p) = point {
        pts.push(parse_point(p)?);
    }
    if let Some(k) = points {
        pts.extend(random_points(&chart, k, seed));
    }
    if pts.is_empty() {
        pts.push(chart.base_point());
    }
    let reports = pts.iter().map(|p| curvature_at(&chart, p, step)).collect::<crate::error::Result<Vec<_>>>()?;
    let verdicts: Vec<bool> = reports.iter().map(|r| check(r, &expected, tol)).collect();
    let all = verdicts.iter().all(|&v| v);
    let text = match format {
        OutputFormat::Json => pretty(&json!({
            "model": model,
            "tolerance": tol,
            "reports": reports,
            "pass": verdicts,
        })),
        OutputFormat::Csv => {
            let mut s = String::from(
                "x0,x1,x2,x3,scalar,wplus2,wminus2,ric0sq,chi_density,sigma_density,delta_plus,delta_minus,pass\n",
            );
            for (r, v) in reports.iter().zip(&verdicts) {
                s += &format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.point[0],
                    r.point[1],
                    r.point[2],
                    r.point[3],
                    r.scalar,
                    r.wplus_norm2,
                    r.wminus_norm2,
                    r.traceless_ricci_norm2,
                    r.chi_density,
                    r.sigma_density,
                    r.delta_plus_density,
                    r.delta_minus_density,
                    v
                );
            }
            s
        }
        OutputFormat::Table => {
            let mut s = String::new();
            for (r, v) in reports.iter().zip(&verdicts) {
                s += &format!(
                    "scalar={:.6} wplus2={:.6} wminus2={:.6} ric0sq={:.6} {}\n",
                    r.scalar + 0.0,
                    r.wplus_norm2 + 0.0,
                    r.wminus_norm2 + 0.0,
                    r.traceless_ricci_norm2 + 0.0,
                    if *v { "PASS" } else { "FAIL" }
                );
            }
            if reports.len() > 1 {
                s += &format!(
                    "{model}: {}/{} points {}\n",
                    verdicts.iter().filter(|&&v| v).count(),
                    verdicts.len(),
                    if all { "PASS" } else { "FAIL" }
                );
            }
            s
        }
    };
    emit(out, &text.replace("-0.000000", "0.000000"))?;
    Ok(all)
}

fn cmd_report(out: &mut dyn Write, families: &str, n_max: i64, format: OutputFormat) -> Outcome {
    let wanted: Vec<String> = if families.trim() == "all" {
        vec!["M".into(), "Mprime".into(), "Z".into()]
    } else {
        families.split(',').map(|s| s.trim().to_string()).collect()
    };
    let mut assemblies = Vec::new();
    for f in &wanted {
        match f.as_str() {
            "M" => (1..=n_max.max(0) as usize).try_for_each(|m| build_m(m).map(|a| assemblies.push(a)))?,
            "Mprime" => (1..=n_max.max(0) as usize).try_for_each(|m| build_mprime(m).map(|a| assemblies.push(a)))?,
            "Z" => (2..=n_max).try_for_each(|n| build_z(n).map(|a| assemblies.push(a)))?,
            other => return Err(Failure::Io(format!("unknown family {other:?} (expected M, Mprime, Z or all)"))),
        }
    }
    let diagnoses = assemblies.iter().map(diagnose).collect::<crate::error::Result<Vec<_>>>()?;
    emit(out, &render(diagnoses, format))?;
    Ok(true)
}

/// JSON schemas of the input documents.
pub fn schemas() -> Value {
    let boundary = json!({
        "oneOf": [
            {"type": "object", "required": ["flat"], "properties": {"flat": {
                "type": "object", "required": ["letter", "sign"],
                "properties": {"letter": {"enum": ["A", "B", "C", "D", "E", "F"]}, "sign": {"enum": [1, -1]}}}}},
            {"type": "object", "required": ["nil_torus"], "properties": {"nil_torus": {
                "type": "object", "required": ["euler"], "properties": {"euler": {"type": "integer"}}}}},
            {"type": "object", "required": ["nil_klein"], "properties": {"nil_klein": {
                "type": "object", "required": ["k", "sign"],
                "properties": {"k": {"type": "integer", "not": {"const": 0}}, "sign": {"enum": [1, -1]}}}}}
        ]
    });
    let piece = json!({
        "type": "object",
        "required": ["geometry", "orientation", "chi", "cusps"],
        "additionalProperties": false,
        "properties": {
            "geometry": {"enum": ["real_hyperbolic", "complex_hyperbolic", "f4", "h3xe1", "h2xe2", "h2xh2", "sltilde_x_e1"]},
            "orientation": {"enum": [1, -1]},
            "chi": {"type": "integer"},
            "cusps": {"type": "array", "items": boundary},
            "label": {"type": "string"}
        }
    });
    let assembly = json!({
        "type": "object",
        "required": ["pieces"],
        "additionalProperties": false,
        "properties": {
            "pieces": {"type": "array", "minItems": 1, "items": {"$ref": "#/piece"}},
            "edges": {"type": "array", "items": {
                "type": "array", "minItems": 4, "maxItems": 4,
                "items": {"type": "integer", "minimum": 0},
                "description": "[piece, cusp, piece, cusp]"}},
            "label": {"type": "string"}
        }
    });
    json!({"piece": piece, "assembly": assembly})
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("chisig").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn z_two_line() {
        let (code, out, _) = call(&["examples", "--family", "Z", "--n", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("chi=160 sigma=32 slack=64 classification=Strict"), "{out}");
    }

    #[test]
    fn f4_point_line() {
        let (code, out, _) = call(&["curvature", "--model", "F4", "--point", "0,1,0,0"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "scalar=-3.000000 wplus2=0.375000 wminus2=0.375000 ric0sq=2.250000 PASS");
    }

    #[test]
    fn every_model_passes_its_constants() {
        for model in crate::curvature::MODEL_NAMES {
            let (code, out, err) = call(&["curvature", "--model", model, "--points", "3", "--seed", "5"]);
            assert_eq!(code, 0, "{model}: {out}{err}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["piece", "--input", "/nonexistent.json"]).0, 2);
        assert_eq!(call(&["curvature", "--model", "S4"]).0, 2);
        assert_eq!(call(&["examples", "--family", "random"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["--tolerance", "0", "catalog"]).0, 2);
        assert_eq!(call(&["catalog"]).0, 0);
        assert_eq!(call(&["--schema"]).0, 0);
    }

    #[test]
    fn report_is_deterministic() {
        let a = call(&["report", "--families", "all", "--n-max", "3"]);
        let b = call(&["report", "--families", "all", "--n-max", "3"]);
        assert_eq!(a, b);
        assert!(a.1.starts_with("label,chi,sigma,slack,classification\n"));
        assert_eq!(a.1.lines().count(), 1 + 3 + 3 + 2);
    }
}
