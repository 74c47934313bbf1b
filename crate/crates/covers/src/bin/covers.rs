//! Command-line entry point: exact knot/cover computations with JSON output.
//!
//! Exit codes: 0 success, 64 usage/unknown command, 65 invalid input,
//! 70 mathematical inconsistency.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use covers::complex::{self, branch_curves, Rep};
use covers::corpus;
use covers::diagram::{ArcDiagram, EmbeddedLink};
use covers::dihedral::{coloring_to_rep, fox_colorings};
use covers::predict::{
    euler_of_cover, intersection_form_descriptor, signature_of_cover, BaseData, BranchData,
    PredictError,
};
use covers::scene::systems;
use covers::seifert::seifert_matrix_c;
use covers::signatures::tl_map;
use covers::twobridge::{enumerate_admissible, AdmissibleRecord, Family, FamilyPoint};
use covers::xi::{xi_invariance_check, xi_p, XiError};
use covers::{rat_string, Rat};
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_SOFTWARE: u8 = 70;

#[derive(Parser)]
#[command(
    name = "covers",
    about = "Exact computation with dihedral branched covers of knots",
    disable_help_subcommand = true
)]
struct Cli {
    /// List the bundled corpus knots and exit.
    #[arg(long)]
    corpus: bool,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fox p-colorings of a knot diagram.
    Colorings {
        /// `corpus:NAME` or a diagram JSON file.
        input: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Knot determinant |Δ(−1)|.
    Det { input: String },
    /// Characteristic-knot classes mod p for the slice families.
    Charknots(CharknotsArgs),
    /// Tristram–Levine signatures at p-th roots of unity.
    Tl {
        /// `corpus:NAME` of a two-bridge knot (alternative to --e).
        input: Option<String>,
        /// Two-bridge coefficients e1,e2,… (alternative to INPUT).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        e: Option<Vec<i64>>,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Pairwise linking numbers of branch curves in the irregular dihedral
    /// p-fold cover.
    Linking {
        input: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Signature defect Ξ_p of a singularity, from a bundled curve system.
    Xi {
        /// One of: trefoil, k1-case1, k1-case2.
        #[arg(long)]
        system: String,
        /// Index of a single realization to evaluate (default: verify all
        /// same-class realizations agree and report the common value).
        #[arg(long)]
        realization: Option<usize>,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Signature and Euler characteristic of a branched cover (Eqs. 1–2).
    Predict(PredictArgs),
    /// Enumerate p-admissible members of the slice families K₁, K₂.
    EnumerateSlice {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        bound: i64,
    },
    /// Reproduce the admissibility table: case of every K₁/K₂ member with
    /// |a|,|b| ≤ bound.
    ReproduceAppendixA {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
}

#[derive(Args)]
struct CharknotsArgs {
    /// k1 or k2.
    #[arg(long)]
    family: String,
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    #[arg(long, default_value_t = 3)]
    p: u64,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, allow_hyphen_values = true)]
    sigma_x: i64,
    #[arg(long, allow_hyphen_values = true)]
    chi_x: i64,
    #[arg(long, allow_hyphen_values = true)]
    chi_b: i64,
    #[arg(long, allow_hyphen_values = true)]
    e_b: i64,
    /// Singularity defects Ξ_p(α₁),…, as integers or "n/d" rationals.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "")]
    xi: Vec<String>,
    /// Treat the intersection form as even (default odd).
    #[arg(long)]
    even: bool,
}

/// Errors carrying their intended exit code.
struct CliError {
    code: u8,
    message: String,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError { code: EX_DATAERR, message: msg.into() }
}

fn inconsistent(msg: impl Into<String>) -> CliError {
    CliError { code: EX_SOFTWARE, message: msg.into() }
}

/// Print JSON to stdout; a closed pipe (e.g. `covers … | head`) is not an
/// error.
fn emit(v: &Value) {
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).unwrap());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(EX_USAGE)
                }
            };
        }
    };
    if cli.corpus {
        let list: Vec<Value> = corpus::entries()
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "aliases": e.aliases,
                    "two_bridge": e.e,
                    "det": e.det.to_string(),
                })
            })
            .collect();
        emit(&Value::Array(list));
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = cli.cmd else {
        eprintln!("no command given; see --help");
        return ExitCode::from(EX_USAGE);
    };
    match run(cmd) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Resolve `corpus:NAME` or a JSON file to a diagram; the embedded form is
/// kept when available (needed by cover constructions).
fn load_input(input: &str) -> Result<(ArcDiagram, Option<EmbeddedLink>), CliError> {
    if let Some(name) = input.strip_prefix("corpus:") {
        let entry = corpus::find(name).ok_or_else(|| invalid(format!("unknown corpus knot {name:?}")))?;
        return Ok((entry.diagram(), entry.embedded()));
    }
    let text = std::fs::read_to_string(input).map_err(|e| invalid(format!("{input}: {e}")))?;
    if let Ok(link) = covers::diagram::embedded_from_json(&text) {
        let diag = link.arc_diagram();
        return Ok((diag, Some(link)));
    }
    let diag = ArcDiagram::from_json(&text).map_err(|e| invalid(format!("{input}: {e}")))?;
    Ok((diag, None))
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let mk = |v: &str| covers::Int::from_str(v.trim()).map_err(|_| invalid(format!("bad rational {s:?}")));
    match s.split_once('/') {
        None => Ok(Rat::from_integer(mk(s)?)),
        Some((n, d)) => {
            let den = mk(d)?;
            if den == covers::Int::from(0) {
                return Err(invalid(format!("bad rational {s:?}")));
            }
            Ok(Rat::new(mk(n)?, den))
        }
    }
}

fn run(cmd: Cmd) -> Result<Value, CliError> {
    match cmd {
        Cmd::Colorings { input, p } => {
            let (diag, _) = load_input(&input)?;
            let cols = fox_colorings(&diag, p).map_err(|e| invalid(e.to_string()))?;
            let nontrivial = cols.iter().any(|c| !c.is_trivial());
            Ok(json!({
                "p": p,
                "count": cols.len(),
                "admits_dihedral_cover": nontrivial,
                "colorings": cols.iter().map(|c| c.colors.clone()).collect::<Vec<_>>(),
            }))
        }
        Cmd::Det { input } => {
            let (diag, _) = load_input(&input)?;
            Ok(json!({ "det": covers::dihedral::determinant(&diag).to_string() }))
        }
        Cmd::Charknots(a) => {
            let family = match a.family.to_ascii_lowercase().as_str() {
                "k1" => Family::K1,
                "k2" => Family::K2,
                other => return Err(invalid(format!("unknown family {other:?}"))),
            };
            if a.p != 3 {
                return Err(invalid("characteristic-class tables are available for p = 3 only"));
            }
            if a.a == 0 || a.b == 0 {
                return Err(invalid("family parameters must be nonzero"));
            }
            let pt = FamilyPoint::new(family, a.a, a.b);
            let record = AdmissibleRecord::from_point(&pt);
            let class = covers::twobridge::p3_characteristic_class(&pt)
                .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            // cross-check against the kernel of the symmetrized Seifert form
            if let Some(cls) = &class {
                let spec = pt.spec().map_err(|e| invalid(e.to_string()))?;
                let sd = seifert_matrix_c(&spec.e).map_err(|e| inconsistent(e.to_string()))?;
                let kernel = covers::seifert::characteristic_classes(&sd.symmetrized(), 3);
                let want: Vec<covers::Int> =
                    cls.iter().map(|s| covers::Int::from_str(s).unwrap()).collect();
                let hit = kernel.iter().any(|k| classes_parallel_mod3(k, &want));
                if !hit {
                    return Err(inconsistent("table class is not in the mod-3 kernel"));
                }
            }
            Ok(json!({ "record": serde_json::to_value(&record).unwrap(), "class_mod_3": class }))
        }
        Cmd::Tl { input, e, p } => {
            let e = match (input, e) {
                (Some(_), Some(_)) => return Err(invalid("give either INPUT or --e, not both")),
                (None, Some(e)) => e,
                (Some(name), None) => {
                    let (_, _) = load_input(&name)?; // validates the name
                    let Some(name) = name.strip_prefix("corpus:") else {
                        return Err(invalid("tl needs two-bridge data; use corpus:NAME or --e"));
                    };
                    corpus::find(name)
                        .and_then(|c| c.e)
                        .ok_or_else(|| invalid("this corpus knot has no two-bridge Seifert data"))?
                }
                (None, None) => return Err(invalid("give INPUT or --e")),
            };
            let sd = seifert_matrix_c(&e).map_err(|e| invalid(e.to_string()))?;
            let map = tl_map(&sd, p).map_err(|e| invalid(e.to_string()))?;
            let sum: i64 = map.values().sum();
            Ok(json!({
                "p": p,
                "signatures": map,
                "sum": sum,
            }))
        }
        Cmd::Linking { input, p } => {
            let (diag, embedded) = load_input(&input)?;
            let link = embedded.ok_or_else(|| {
                invalid("linking needs an embedded diagram (corpus knot or embedded JSON)")
            })?;
            let cols = fox_colorings(&diag, p).map_err(|e| invalid(e.to_string()))?;
            let col = cols
                .iter()
                .find(|c| !c.is_trivial())
                .ok_or_else(|| invalid(format!("knot admits no irregular dihedral {p}-fold cover")))?;
            let rep = Rep::from_dihedral(&coloring_to_rep(col).map_err(|e| invalid(e.to_string()))?);
            let cc = complex::lift(&link, &rep).map_err(|e| inconsistent(e.to_string()))?;
            let curves = branch_curves(&cc);
            let n = curves.len();
            let mut matrix = vec![vec![Value::Null; n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    match complex::linking(&cc, &curves[i], &curves[j]) {
                        Ok(r) => matrix[i][j] = Value::String(rat_string(&r.value)),
                        Err(complex::ComplexError::NotNullhomologous) => {}
                        Err(e) => return Err(inconsistent(e.to_string())),
                    }
                }
            }
            Ok(json!({
                "p": p,
                "curves": curves
                    .iter()
                    .map(|c| json!({
                        "base_component": c.base_component,
                        "branching_index": c.branching_index,
                    }))
                    .collect::<Vec<_>>(),
                "linking": matrix,
            }))
        }
        Cmd::Xi { system, realization, p } => {
            let specs = match system.to_ascii_lowercase().as_str() {
                "trefoil" => systems::trefoil_realizations(),
                "k1-case1" => systems::k1_case1_realizations(),
                "k1-case2" => systems::k1_case2_realizations(),
                other => return Err(invalid(format!("unknown system {other:?}"))),
            };
            let report = match realization {
                Some(i) => {
                    let spec = specs.get(i).ok_or_else(|| {
                        invalid(format!("system has {} realizations", specs.len()))
                    })?;
                    xi_p(spec, None, p)
                }
                None => {
                    // verify all realizations of the same class agree
                    let same: Vec<_> = specs
                        .iter()
                        .filter(|s| s.curves[0].class == specs[0].curves[0].class)
                        .cloned()
                        .collect();
                    xi_invariance_check(&same, None, p)
                }
            };
            let report = report.map_err(|e| match e {
                XiError::UnsupportedPrime | XiError::NoCurves | XiError::NotCharacteristic => {
                    invalid(e.to_string())
                }
                other => inconsistent(other.to_string()),
            })?;
            Ok(serde_json::to_value(&report).unwrap())
        }
        Cmd::Predict(a) => {
            let base = BaseData { sigma_x: a.sigma_x, chi_x: a.chi_x, simply_connected: true };
            let singularities = a
                .xi
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>, _>>()?;
            let branch = BranchData { chi_b: a.chi_b, e_b: a.e_b, singularities };
            let map_err = |e: PredictError| match e {
                PredictError::BadPrime(_) | PredictError::BadEuler(_) => invalid(e.to_string()),
                other => inconsistent(other.to_string()),
            };
            let chi_y = euler_of_cover(a.p, &base, &branch).map_err(map_err)?;
            let sigma_y = signature_of_cover(a.p, &base, &branch).map_err(map_err)?;
            let descriptor = intersection_form_descriptor(sigma_y, chi_y, !a.even).map_err(map_err)?;
            Ok(json!({
                "sigma_Y": sigma_y,
                "chi_Y": chi_y,
                "rank": descriptor.rank,
                "descriptor": serde_json::to_value(&descriptor).unwrap(),
            }))
        }
        Cmd::EnumerateSlice { p, bound } => {
            let pts = enumerate_admissible(p, bound).map_err(|e| invalid(e.to_string()))?;
            let records: Vec<AdmissibleRecord> = pts.iter().map(AdmissibleRecord::from_point).collect();
            Ok(serde_json::to_value(&records).unwrap())
        }
        Cmd::ReproduceAppendixA { p, bound } => {
            if p != 3 {
                return Err(invalid("the admissibility case table is for p = 3"));
            }
            if bound < 1 {
                return Err(invalid("bound must be ≥ 1"));
            }
            let mut rows = Vec::new();
            for family in [Family::K1, Family::K2] {
                for a in -bound..=bound {
                    for b in -bound..=bound {
                        if a == 0 || b == 0 {
                            continue;
                        }
                        let pt = FamilyPoint::new(family, a, b);
                        rows.push(serde_json::to_value(AdmissibleRecord::from_point(&pt)).unwrap());
                    }
                }
            }
            Ok(json!({ "p": p, "bound": bound, "rows": rows }))
        }
    }
}

/// Whether two vectors over (ℤ/3)⁶ are nonzero scalar multiples of each other.
fn classes_parallel_mod3(a: &[covers::Int], b: &[covers::Int]) -> bool {
    use num_traits::ToPrimitive;
    let red = |v: &[covers::Int]| -> Vec<i64> {
        v.iter().map(|x| (x % 3i64).to_i64().unwrap().rem_euclid(3)).collect()
    };
    let (a, b) = (red(a), red(b));
    (1..3).any(|s| a.iter().zip(&b).all(|(x, y)| (s * x - y).rem_euclid(3) == 0))
}
