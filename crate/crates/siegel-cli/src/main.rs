//! `siegel` — command-line front end for the exact half-plane toolkit.
//!
//! Loads structures, maps and automorphisms from JSON files, runs the
//! verification and reconstruction pipelines, and emits exact reports
//! (rationals as `"p/q"` strings) in JSON or a short text summary.
//!
//! Exit status: 0 all checks pass, 1 a check fails, 2 parse error,
//! 3 validation error, 4 internal invariant breach (never expected).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use siegel_core::autgroup::Automorphism;
use siegel_core::boundary::{origin, rho_at, Point};
use siegel_core::error::MapError;
use siegel_core::jets::{
    extract_jet2, normalize_basepoints, reconstruct, verify_constraints, verify_extension,
    ReconstructError,
};
use siegel_core::levi::levi_matrix;
use siegel_core::maps::{
    check_boundary_invariance, check_component_system, check_cr_on_boundary, check_form,
    check_pseudoholomorphic, PolyMap, ResidualReport,
};
use siegel_core::sample::{
    max_on_boundary_samples, max_on_samples, rng_from_seed, SAMPLE_TOLERANCE,
};
use siegel_core::serial::{
    self, automorphism_from_json, automorphism_to_json, complex_to_json, factored_view_to_json,
    form_report_to_json, jet_to_json, levi_report_to_json, map_from_json, map_to_json,
    model_structure_from_json, point_from_json, point_to_json, residual_report_to_json,
    simple_structure_to_json, structure_report_to_json, trace_to_json, SerialError,
};
use siegel_core::structures::{verify_structure_matrix, ModelStructure, SimpleModelStructure};

const EXIT_PASS: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "siegel",
    version,
    about = "Exact verification toolkit for model structures on the Siegel half-plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for the report
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapCheckKind {
    All,
    Pseudoholomorphic,
    ComponentSystem,
    Boundary,
    Cr,
    Form,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the defining identities of a structure file (or of an explicit
    /// complexified matrix file with fields n, matrix)
    StructureVerify {
        #[arg(long)]
        structure: PathBuf,
    },
    /// Print the boundary frame fields of a structure and verify them
    Frame {
        #[arg(long)]
        structure: PathBuf,
    },
    /// Levi matrix and strict-pseudoconvexity verdict at a boundary point
    Levi {
        #[arg(long)]
        structure: PathBuf,
        /// Boundary point: "origin" or a path to a point file
        #[arg(long, default_value = "origin")]
        at: String,
    },
    /// Run verification checks on a map
    MapCheck {
        #[arg(long)]
        structure: PathBuf,
        /// Target structure (defaults to the source structure)
        #[arg(long)]
        target_structure: Option<PathBuf>,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, default_value_t = MapCheckKind::All)]
        check: MapCheckKind,
        /// Truncate the map to this total degree before checking
        #[arg(long)]
        order: Option<u32>,
        /// Floating cross-check: sample each exact-zero residual this many times
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Validate an automorphism file against all group constraints
    AutVerify {
        #[arg(long)]
        aut: PathBuf,
        /// Cross-check the embedded B against a structure file
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Compose two automorphisms (left file applied after the right one)
    AutCompose {
        #[arg(long = "aut", num_args = 1, required = true)]
        auts: Vec<PathBuf>,
    },
    /// Apply an automorphism to a point
    AutApply {
        #[arg(long)]
        aut: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Extract the order-two jet data of a map fixing the origin
    JetExtract {
        #[arg(long)]
        map: PathBuf,
        /// Truncate the map to this total degree before extracting
        #[arg(long)]
        order: Option<u32>,
    },
    /// Run the constraint chain and rebuild the matching automorphism
    Reconstruct {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Truncate the map to this total degree before reconstructing
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Full pipeline: base-point normalization, constraint chain,
    /// reconstruction, and full-map comparison
    Extend {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Source base point ("origin" or a point file)
        #[arg(long, default_value = "origin")]
        at_p: String,
        /// Target base point (defaults to the image of the source point)
        #[arg(long)]
        at_q: Option<String>,
        /// Truncate the map to this total degree before running the chain
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Outcome {
    report: Value,
    summary: Vec<String>,
    exit: u8,
}

enum CliError {
    Parse(String),
    Validation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) => m,
        }
    }
}

impl From<SerialError> for CliError {
    fn from(e: SerialError) -> Self {
        match e {
            SerialError::Json(_) | SerialError::Format { .. } | SerialError::Algebra(_) => {
                CliError::Parse(e.to_string())
            }
            SerialError::Structure(_) | SerialError::Automorphism(_) => {
                CliError::Validation(e.to_string())
            }
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("cannot parse {}: {e}", path.display())))
}

fn load_model_structure(path: &Path) -> Result<ModelStructure, CliError> {
    Ok(model_structure_from_json(&read_json(path)?)?)
}

fn load_simple_structure(path: &Path) -> Result<SimpleModelStructure, CliError> {
    let model = load_model_structure(path)?;
    model
        .as_simple()
        .map_err(|e| CliError::Validation(format!("structure must be simple: {e}")))
}

fn load_map(path: &Path) -> Result<PolyMap, CliError> {
    Ok(map_from_json(&read_json(path)?)?)
}

fn load_map_with_order(path: &Path, order: Option<u32>) -> Result<PolyMap, CliError> {
    let f = load_map(path)?;
    Ok(match order {
        None => f,
        Some(k) => PolyMap::truncated(f.dim(), f.components().to_vec(), k),
    })
}

fn load_point(spec: &str, n: usize) -> Result<Point, CliError> {
    if spec == "origin" {
        return Ok(origin(n));
    }
    let value = read_json(Path::new(spec))?;
    let point = point_from_json(&value, "point")?;
    if point.len() != n {
        return Err(CliError::Validation(format!(
            "point has dimension {}, expected {n}",
            point.len()
        )));
    }
    Ok(point)
}

/// Floating cross-check of a residual report: raw residuals whose claim
/// lives on the boundary sample there, plain identities sample anywhere.
fn sample_report(report: &ResidualReport, samples: usize, seed: u64) -> Value {
    let mut rng = rng_from_seed(seed);
    let mut max = 0.0f64;
    for e in &report.entries {
        let m = if e.reduced.is_some() {
            max_on_boundary_samples(&e.residual, samples, &mut rng)
        } else {
            max_on_samples(&e.residual, samples, &mut rng)
        };
        max = max.max(m);
    }
    json!({
        "samples": samples,
        "seed": seed,
        "max_magnitude": max,
        "tolerance": SAMPLE_TOLERANCE,
        "agrees": !report.pass || max < SAMPLE_TOLERANCE,
    })
}

fn map_error_to_cli(e: MapError) -> CliError {
    CliError::Validation(e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn push_residual_check(
    checks: &mut Vec<(String, Value, bool)>,
    sampling: &mut Vec<Value>,
    sample: Option<usize>,
    seed: u64,
    name: &str,
    result: Result<ResidualReport, MapError>,
) -> Result<bool, CliError> {
    let report = result.map_err(map_error_to_cli)?;
    let pass = report.pass;
    if let Some(count) = sample {
        sampling.push(json!({
            "check": name,
            "result": sample_report(&report, count, seed),
        }));
    }
    checks.push((name.to_string(), residual_report_to_json(&report), pass));
    Ok(pass)
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::StructureVerify { structure } => {
            let value = read_json(structure)?;
            let report = if value.get("matrix").is_some() {
                let obj = value
                    .as_object()
                    .ok_or_else(|| CliError::Parse("expected an object".into()))?;
                let n = obj
                    .get("n")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| CliError::Parse("matrix file needs an integer n".into()))?
                    as usize;
                let matrix = serial::poly_matrix_from_json(n, &obj["matrix"], "matrix")?;
                verify_structure_matrix(n, &matrix)
            } else {
                model_structure_from_json(&value)?.verify()
            };
            let pass = report.pass();
            let mut summary = vec![format!(
                "structure-verify: {}",
                if pass { "PASS" } else { "FAIL" }
            )];
            for f in &report.failures {
                summary.push(format!(
                    "  entry ({}, {}) fails {}: found {}, expected {}",
                    f.row, f.col, f.check, f.found, f.expected
                ));
            }
            Ok(Outcome {
                report: structure_report_to_json(&report),
                summary,
                exit: if pass { EXIT_PASS } else { EXIT_CHECK_FAILED },
            })
        }

        Command::Frame { structure } => {
            let model = load_model_structure(structure)?;
            let n = model.dim();
            let frame = model.tangent_frame();
            let rho = siegel_core::Poly::rho(n);
            let mut tangency = true;
            let mut eigen = true;
            for l in &frame.l_fields {
                tangency &= l.apply_to(&rho).is_zero();
                let jl = siegel_core::levi::apply_j(&model, l);
                eigen &= jl == l.scale(&siegel_core::ComplexRational::i());
            }
            tangency &= frame.t_field.apply_to(&rho).is_zero();
            let field_json = |f: &siegel_core::levi::VectorField| -> Value {
                Value::Array(f.components().iter().map(serial::poly_to_json).collect())
            };
            let report = json!({
                "n": n,
                "l_fields": frame.l_fields.iter().map(&field_json).collect::<Vec<_>>(),
                "t_field": field_json(&frame.t_field),
                "alphas": frame.alphas.iter().map(serial::poly_to_json).collect::<Vec<_>>(),
                "betas": frame.betas.iter().map(serial::poly_to_json).collect::<Vec<_>>(),
                "checks": { "tangency": tangency, "eigenvector": eigen },
            });
            let pass = tangency && eigen;
            Ok(Outcome {
                report,
                summary: vec![format!(
                    "frame: {} fields, tangency {}, eigenvector {}",
                    n - 1,
                    if tangency { "PASS" } else { "FAIL" },
                    if eigen { "PASS" } else { "FAIL" }
                )],
                exit: if pass { EXIT_PASS } else { EXIT_INTERNAL },
            })
        }

        Command::Levi { structure, at } => {
            let model = load_model_structure(structure)?;
            let point = load_point(at, model.dim())?;
            let rho = rho_at(&point);
            if !rho.is_zero() {
                return Err(CliError::Validation(format!(
                    "point is off the boundary: rho = {rho}"
                )));
            }
            let report =
                levi_matrix(&model, &point).map_err(|e| CliError::Validation(e.to_string()))?;
            let positive = report.positive;
            Ok(Outcome {
                report: levi_report_to_json(&report),
                summary: vec![format!(
                    "levi: verdict {}",
                    if positive {
                        "positive (strictly pseudoconvex)"
                    } else {
                        "NOT positive"
                    }
                )],
                exit: if positive {
                    EXIT_PASS
                } else {
                    EXIT_CHECK_FAILED
                },
            })
        }

        Command::MapCheck {
            structure,
            target_structure,
            map,
            check,
            order,
            sample,
            seed,
        } => {
            let source = load_model_structure(structure)?;
            let target = match target_structure {
                Some(p) => load_model_structure(p)?,
                None => source.clone(),
            };
            let f = load_map_with_order(map, *order)?;
            let mut checks: Vec<(String, Value, bool)> = Vec::new();
            let mut sampling: Vec<Value> = Vec::new();
            let run_ph = matches!(check, MapCheckKind::All | MapCheckKind::Pseudoholomorphic);
            let run_cs = matches!(check, MapCheckKind::All | MapCheckKind::ComponentSystem);
            let run_bd = matches!(check, MapCheckKind::All | MapCheckKind::Boundary);
            let run_cr = matches!(check, MapCheckKind::All | MapCheckKind::Cr);
            let run_form = matches!(check, MapCheckKind::All | MapCheckKind::Form);
            if run_ph {
                push_residual_check(
                    &mut checks,
                    &mut sampling,
                    *sample,
                    *seed,
                    "pseudo-holomorphic",
                    check_pseudoholomorphic(&source, &target, &f),
                )?;
            }
            if run_cs {
                match source.as_simple() {
                    Ok(simple) => {
                        push_residual_check(
                            &mut checks,
                            &mut sampling,
                            *sample,
                            *seed,
                            "component-system",
                            check_component_system(&simple, &f),
                        )?;
                    }
                    Err(e) if *check == MapCheckKind::ComponentSystem => {
                        return Err(CliError::Validation(format!(
                            "component system needs a simple structure: {e}"
                        )));
                    }
                    Err(_) => {}
                }
            }
            let boundary_ok = if run_bd || run_cr {
                let report = check_boundary_invariance(&f).map_err(map_error_to_cli)?;
                let pass = report.pass;
                if run_bd {
                    if let Some(count) = sample {
                        sampling.push(json!({
                            "check": "boundary-invariance",
                            "result": sample_report(&report, *count, *seed),
                        }));
                    }
                    checks.push((
                        "boundary-invariance".to_string(),
                        residual_report_to_json(&report),
                        pass,
                    ));
                }
                pass
            } else {
                true
            };
            if run_cr {
                if boundary_ok {
                    push_residual_check(
                        &mut checks,
                        &mut sampling,
                        *sample,
                        *seed,
                        "cr-on-boundary",
                        check_cr_on_boundary(&source, &target, &f),
                    )?;
                } else {
                    checks.push((
                        "cr-on-boundary".to_string(),
                        json!({
                            "check": "cr-on-boundary",
                            "pass": false,
                            "note": "precondition failed: map does not preserve the boundary",
                        }),
                        false,
                    ));
                }
            }
            if run_form {
                let report = check_form(&f);
                checks.push((
                    "form".to_string(),
                    form_report_to_json(&report),
                    report.pass,
                ));
            }
            let all_pass = checks.iter().all(|(_, _, p)| *p);
            let summary = checks
                .iter()
                .map(|(name, _, p)| format!("{name}: {}", if *p { "PASS" } else { "FAIL" }))
                .collect();
            let report = json!({
                "checks": checks.iter().map(|(name, v, _)| json!({"name": name, "report": v})).collect::<Vec<_>>(),
                "pass": all_pass,
                "sampling": if sampling.is_empty() { Value::Null } else { Value::Array(sampling) },
            });
            Ok(Outcome {
                report,
                summary,
                exit: if all_pass {
                    EXIT_PASS
                } else {
                    EXIT_CHECK_FAILED
                },
            })
        }

        Command::AutVerify { aut, structure } => {
            let value = read_json(aut)?;
            match automorphism_from_json(&value) {
                Ok(g) => {
                    if let Some(path) = structure {
                        let s = load_simple_structure(path)?;
                        if s != *g.structure() {
                            return Err(CliError::Validation(
                                "automorphism B differs from the given structure".into(),
                            ));
                        }
                    }
                    Ok(Outcome {
                        report: json!({
                            "valid": true,
                            "automorphism": automorphism_to_json(&g),
                            "factored_view": factored_view_to_json(&g.factored_view()),
                            "fixes_minus_one": g.fixes_minus_one(),
                        }),
                        summary: vec!["aut-verify: PASS (all constraints hold)".into()],
                        exit: EXIT_PASS,
                    })
                }
                Err(SerialError::Automorphism(e)) => Ok(Outcome {
                    report: json!({ "valid": false, "error": e.to_string() }),
                    summary: vec![format!("aut-verify: FAIL ({e})")],
                    exit: EXIT_CHECK_FAILED,
                }),
                Err(e) => Err(e.into()),
            }
        }

        Command::AutCompose { auts } => {
            if auts.len() != 2 {
                return Err(CliError::Validation(
                    "aut-compose needs exactly two --aut files".into(),
                ));
            }
            let g1 = automorphism_from_json(&read_json(&auts[0])?)?;
            let g2 = automorphism_from_json(&read_json(&auts[1])?)?;
            let composed = g1
                .compose(&g2)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            Ok(Outcome {
                report: json!({
                    "automorphism": automorphism_to_json(&composed),
                    "factored_view": factored_view_to_json(&composed.factored_view()),
                }),
                summary: vec![format!(
                    "aut-compose: c = {}",
                    siegel_core::scalar::rational_string(composed.scale())
                )],
                exit: EXIT_PASS,
            })
        }

        Command::AutApply { aut, at } => {
            let g = automorphism_from_json(&read_json(aut)?)?;
            let point = load_point(at, g.dim())?;
            let image = g.apply(&point);
            let rho_in = rho_at(&point);
            let rho_out = rho_at(&image);
            Ok(Outcome {
                report: json!({
                    "input": point_to_json(&point),
                    "output": point_to_json(&image),
                    "rho_input": complex_to_json(&rho_in),
                    "rho_output": complex_to_json(&rho_out),
                }),
                summary: vec![format!(
                    "aut-apply: image computed, rho scales to {rho_out}"
                )],
                exit: EXIT_PASS,
            })
        }

        Command::JetExtract { map, order } => {
            let f = load_map_with_order(map, *order)?;
            let jet = extract_jet2(&f).map_err(|e| CliError::Validation(e.to_string()))?;
            let normal = jet.is_linear_normal_form();
            Ok(Outcome {
                report: jet_to_json(&jet),
                summary: vec![format!(
                    "jet-extract: order-2 data extracted; linear normal form: {normal}"
                )],
                exit: EXIT_PASS,
            })
        }

        Command::Reconstruct {
            structure,
            map,
            order,
            sample,
            seed,
        } => {
            let s = load_simple_structure(structure)?;
            let f = load_map_with_order(map, *order)?;
            match reconstruct(&f, &s) {
                Ok((g, trace)) => {
                    let mut report = json!({
                        "automorphism": automorphism_to_json(&g),
                        "factored_view": factored_view_to_json(&g.factored_view()),
                        "trace": trace_to_json(&trace),
                    });
                    if let Some(count) = sample {
                        let model = s.to_model();
                        let ph = check_pseudoholomorphic(&model, &model, &g.as_polymap())
                            .map_err(map_error_to_cli)?;
                        report["sampling"] = sample_report(&ph, *count, *seed);
                    }
                    Ok(Outcome {
                        report,
                        summary: vec![
                            "reconstruct: PASS (all trace steps hold)".into(),
                            format!("  c = {}", siegel_core::scalar::rational_string(g.scale())),
                        ],
                        exit: EXIT_PASS,
                    })
                }
                Err(ReconstructError::Precondition(e)) => Err(CliError::Validation(e.to_string())),
                Err(ReconstructError::ConstraintsFailed(trace)) => {
                    let failed = trace.failed_step().map(|s| s.step.name().to_string());
                    Ok(Outcome {
                        report: json!({ "trace": trace_to_json(&trace) }),
                        summary: vec![format!(
                            "reconstruct: FAIL at step {}",
                            failed.unwrap_or_else(|| "unknown".into())
                        )],
                        exit: EXIT_CHECK_FAILED,
                    })
                }
                Err(ReconstructError::NotAutomorphism { trace, source }) => Ok(Outcome {
                    report: json!({
                        "trace": trace_to_json(&trace),
                        "error": source.to_string(),
                    }),
                    summary: vec![format!("reconstruct: FAIL (not a group element: {source})")],
                    exit: EXIT_CHECK_FAILED,
                }),
            }
        }

        Command::Extend {
            structure,
            map,
            at_p,
            at_q,
            order,
            sample,
            seed,
        } => {
            let s = load_simple_structure(structure)?;
            let f = load_map_with_order(map, *order)?;
            let n = f.dim();
            let p = load_point(at_p, n)?;
            let q = match at_q {
                Some(spec) => load_point(spec, n)?,
                None => f.eval(&p),
            };
            let normalized = normalize_basepoints(&f, &p, &q, &s)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let form = check_form(&normalized);
            let trace = verify_constraints(&normalized, &s)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            if !trace.pass() {
                let failed = trace.failed_step().map(|st| st.step.name().to_string());
                return Ok(Outcome {
                    report: json!({
                        "form": form_report_to_json(&form),
                        "trace": trace_to_json(&trace),
                    }),
                    summary: vec![format!(
                        "extend: FAIL at step {}",
                        failed.unwrap_or_else(|| "unknown".into())
                    )],
                    exit: EXIT_CHECK_FAILED,
                });
            }
            let (g, trace) = match reconstruct(&normalized, &s) {
                Ok(pair) => pair,
                Err(ReconstructError::NotAutomorphism { trace, source }) => {
                    return Ok(Outcome {
                        report: json!({
                            "form": form_report_to_json(&form),
                            "trace": trace_to_json(&trace),
                            "error": source.to_string(),
                        }),
                        summary: vec![format!("extend: FAIL (not a group element: {source})")],
                        exit: EXIT_CHECK_FAILED,
                    });
                }
                Err(e) => return Err(CliError::Validation(e.to_string())),
            };
            let extension = verify_extension(&normalized, &g);
            // the automorphism extending the original map
            let psi_p = Automorphism::translation(s.clone(), p.clone())
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let psi_q = Automorphism::translation(s.clone(), q.clone())
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let conjugated = psi_q
                .compose(&g)
                .and_then(|h| h.compose(&psi_p.invert()))
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let extends = extension.extends();
            let mut report = json!({
                "normalized_map": map_to_json(&normalized),
                "form": form_report_to_json(&form),
                "trace": trace_to_json(&trace),
                "automorphism": automorphism_to_json(&g),
                "extension": serial::extension_to_json(&extension.verdict),
                "extending_automorphism": automorphism_to_json(&conjugated),
                "structure": simple_structure_to_json(&s),
            });
            if let Some(count) = sample {
                let bd = check_boundary_invariance(&normalized).map_err(map_error_to_cli)?;
                report["sampling"] = sample_report(&bd, *count, *seed);
            }
            Ok(Outcome {
                report,
                summary: vec![format!(
                    "extend: {}",
                    if extends {
                        "PASS (map extends to a group element)"
                    } else {
                        "FAIL (full-map disagreement)"
                    }
                )],
                exit: if extends {
                    EXIT_PASS
                } else {
                    EXIT_CHECK_FAILED
                },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli)));
    match result {
        Ok(Ok(outcome)) => {
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&outcome.report).expect("reports serialize")
                    );
                }
                Format::Text => {
                    for line in &outcome.summary {
                        println!("{line}");
                    }
                }
            }
            ExitCode::from(outcome.exit)
        }
        Ok(Err(err)) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            eprintln!("internal invariant breach: {message}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
