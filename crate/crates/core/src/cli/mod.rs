//! Command-line front end. Every command is a thin composition of library
//! calls; the output is a JSON document with sorted keys and floats in
//! `{:.11e}` form (12 significant digits) so that runs diff byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::algebra::{catalog, describe_brackets, lower_central_series, AlgebraId, Mat5};
use crate::derivations::{derivation_space, lemma_free_parameters};
use crate::errata::{errata_for, Topic};
use crate::frames::{Branch, Coeff, FrameCoefficients};
use crate::moduli::{gram_to_gl, milnor_frame, reduce_canonical, InnerProduct, REDUCTION_TOL};
use crate::ricci::{closed_form_ricci, published_closed_form_ricci, ricci_nilpotent, ricci_of_metric};
use crate::solver::{
    check_conditions, published_conditions, solve_attempts, verify_solution, ConditionReport, PrescribedTensor,
    Solution, VERIFY_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNSOLVABLE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "nilmetric",
    version,
    about = "Left-invariant metrics and prescribed Ricci curvature on 5-dimensional nilpotent Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the nine algebras with their brackets.
    Algebras,
    /// Derivation algebra: null-space basis and dimension.
    Derive { id: String },
    /// Reduce the metric of a Gram matrix to its representative.
    Reduce {
        id: String,
        #[arg(long)]
        gram: PathBuf,
    },
    /// Milnor frame and coefficients of a Gram matrix.
    Frame {
        id: String,
        #[arg(long)]
        gram: PathBuf,
    },
    /// Ricci matrix by the brute-force formula and the closed form.
    Ricci {
        id: String,
        #[arg(long, conflicts_with = "gram", required_unless_present = "gram")]
        coeffs: Option<String>,
        #[arg(long)]
        gram: Option<PathBuf>,
        /// `first` or `second` (A4,1+A1 only).
        #[arg(long)]
        branch: Option<String>,
    },
    /// Conditions and solution of Ric = t²T.
    Solve {
        /// Algebra id; with --batch it defaults each file's `algebra` field.
        id: Option<String>,
        #[arg(long, conflicts_with = "batch", required_unless_present = "batch")]
        tensor: Option<PathBuf>,
        /// Solve every `*.json` file of a directory, sorted by name.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Residual ‖Ric(coeffs) − t²T‖∞ of a candidate solution.
    Verify {
        id: String,
        #[arg(long)]
        tensor: PathBuf,
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        branch: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<(i32, Value), InputError>;

/// Runs the CLI on `args` (including the program name). `tolerance`
/// overrides the verification threshold; the binary reads it from the
/// `TOLERANCE` environment variable.
pub fn run<I, S>(args: I, tolerance: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let tol = match tolerance.map(str::parse::<f64>) {
        None => VERIFY_TOL,
        Some(Ok(t)) if t > 0.0 && t.is_finite() => t,
        Some(_) => {
            return Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!(
                    "error: TOLERANCE must be a positive number, got `{}`\n",
                    tolerance.unwrap_or("")
                ),
            }
        }
    };
    match dispatch(cli.command, tol) {
        Ok((code, doc)) => Outcome {
            code,
            stdout: render(&doc),
            stderr: String::new(),
        },
        Err(InputError(msg)) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
    s.push('\n');
    s
}

/// A float in exponent form with 12 significant digits; `-0` prints as `0`
/// and non-finite values as strings.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let text = format!("{x:.11e}");
    Value::Number(serde_json::from_str(&text).expect("exponent literal"))
}

fn matrix(m: &Mat5) -> Value {
    Value::Array(
        (0..5)
            .map(|r| Value::Array((0..5).map(|c| num(m[(r, c)])).collect()))
            .collect(),
    )
}

fn named(map: &std::collections::BTreeMap<String, f64>) -> Value {
    Value::Object(map.iter().map(|(k, v)| (k.clone(), num(*v))).collect())
}

fn coefficients(c: &FrameCoefficients) -> Value {
    Value::Object(
        c.entries()
            .into_iter()
            .map(|(k, v)| (k.name().to_string(), num(v)))
            .collect(),
    )
}

fn branch_value(b: Option<Branch>) -> Value {
    b.map_or(Value::Null, |b| Value::String(b.name().into()))
}

fn errata(id: AlgebraId, topics: &[Topic]) -> Value {
    Value::Array(
        topics
            .iter()
            .flat_map(|&t| errata_for(id, t))
            .map(|e| Value::String(e.key.into()))
            .collect(),
    )
}

fn header(command: &str, id: Option<AlgebraId>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.into()));
    if let Some(id) = id {
        m.insert("algebra".into(), Value::String(id.name().into()));
    }
    m
}

fn parse_id(s: &str) -> Result<AlgebraId, InputError> {
    Ok(s.parse::<AlgebraId>()?)
}

fn parse_branch(s: Option<&str>) -> Result<Option<Branch>, InputError> {
    match s.map(|s| s.trim().to_ascii_lowercase()) {
        None => Ok(None),
        Some(s) if s == "first" || s == "1" => Ok(Some(Branch::First)),
        Some(s) if s == "second" || s == "2" => Ok(Some(Branch::Second)),
        Some(s) => Err(InputError(format!("unknown branch `{s}` (expected first or second)"))),
    }
}

/// `alpha=1,beta=-0.5` → coefficient list.
fn parse_coeffs(s: &str) -> Result<Vec<(Coeff, f64)>, InputError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| InputError(format!("expected name=value, got `{p}`")))?;
            let c = Coeff::from_name(k).ok_or_else(|| InputError(format!("unknown coefficient `{}`", k.trim())))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| InputError(format!("`{}` is not a number", v.trim())))?;
            Ok((c, v))
        })
        .collect()
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn as_f64(v: &Value, what: &str) -> Result<f64, InputError> {
    v.as_f64().ok_or_else(|| InputError(format!("{what} is not a number")))
}

/// Reads the 5×5 `matrix` field (row-major, rows labelled 1..5 in messages).
fn read_matrix(doc: &Value, path: &Path) -> Result<Mat5, InputError> {
    let rows = doc
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| InputError(format!("{}: missing 5×5 `matrix` array", path.display())))?;
    if rows.len() != 5 {
        return Err(InputError(format!(
            "{}: `matrix` has {} rows, expected 5",
            path.display(),
            rows.len()
        )));
    }
    let mut m = Mat5::zeros();
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|a| a.len() == 5)
            .ok_or_else(|| InputError(format!("{}: row {} must have 5 entries", path.display(), r + 1)))?;
        for (c, x) in row.iter().enumerate() {
            m[(r, c)] = as_f64(x, &format!("{}: entry ({},{})", path.display(), r + 1, c + 1))?;
        }
    }
    Ok(m)
}

fn read_gram(path: &Path) -> Result<InnerProduct, InputError> {
    let doc = read_json(path)?;
    Ok(InnerProduct::new(read_matrix(&doc, path)?)?)
}

/// A tensor file holds `algebra`, and either `matrix` or a `names` map of
/// letter entries (with optional `branch`).
fn read_tensor(path: &Path, id: Option<AlgebraId>) -> Result<PrescribedTensor, InputError> {
    let doc = read_json(path)?;
    let file_id = doc.get("algebra").and_then(Value::as_str).map(parse_id).transpose()?;
    let id = match (id, file_id) {
        (Some(a), Some(b)) if a != b => {
            return Err(InputError(format!(
                "{}: file is for {} but {} was requested",
                path.display(),
                b.name(),
                a.name()
            )))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(InputError(format!("{}: no algebra given", path.display()))),
    };
    let tensor = if doc.get("matrix").is_some() {
        PrescribedTensor::new(id, read_matrix(&doc, path)?)
    } else if let Some(names) = doc.get("names").and_then(Value::as_object) {
        let branch = parse_branch(doc.get("branch").and_then(Value::as_str))?;
        let vals = names
            .iter()
            .map(|(k, v)| Ok((k.as_str(), as_f64(v, &format!("{}: entry `{k}`", path.display()))?)))
            .collect::<Result<Vec<_>, InputError>>()?;
        PrescribedTensor::from_named(id, branch, &vals)
    } else {
        return Err(InputError(format!("{}: expected `matrix` or `names`", path.display())));
    };
    tensor.map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn report(r: &ConditionReport) -> Value {
    let sections = r
        .sections
        .iter()
        .map(|s| {
            json!({
                "branch": branch_value(s.branch),
                "applicable": s.applicable,
                "satisfied": s.satisfied(),
                "items": s.items.iter().map(|i| json!({
                    "name": i.name,
                    "satisfied": i.satisfied,
                    "residual": num(i.residual),
                })).collect::<Vec<_>>(),
                "derived_quantities": named(&s.derived_quantities),
            })
        })
        .collect::<Vec<_>>();
    json!({ "satisfied": r.satisfied(), "sections": sections })
}

fn solution(s: &Solution) -> Value {
    json!({
        "coefficients": coefficients(&s.coeffs),
        "t": num(s.t),
        "residual": num(s.residual),
        "sufficiency_only": s.sufficiency_only,
        "branch": branch_value(s.branch),
        "family": "(s*coefficients, s*t) for every s > 0",
    })
}

fn dispatch(cmd: Command, tol: f64) -> CmdResult {
    match cmd {
        Command::Algebras => {
            let rows = catalog()
                .iter()
                .map(|e| {
                    json!({
                        "id": e.id.slug(),
                        "name": e.name,
                        "brackets": describe_brackets(&e.sc),
                        "lower_central_series": lower_central_series(&e.sc),
                    })
                })
                .collect::<Vec<_>>();
            let mut doc = header("algebras", None);
            doc.insert("algebras".into(), Value::Array(rows));
            Ok((EXIT_OK, Value::Object(doc)))
        }
        Command::Derive { id } => {
            let id = parse_id(&id)?;
            let space = derivation_space(&id.structure_constants());
            let mut doc = header("derive", Some(id));
            doc.insert("dimension".into(), json!(space.dimension));
            doc.insert("free_parameters".into(), json!(lemma_free_parameters(id)));
            doc.insert("basis".into(), Value::Array(space.basis.iter().map(matrix).collect()));
            doc.insert("errata".into(), errata(id, &[Topic::Derivations]));
            Ok((EXIT_OK, Value::Object(doc)))
        }
        Command::Reduce { id, gram } => {
            let id = parse_id(&id)?;
            let s = read_gram(&gram)?;
            let g = gram_to_gl(&s)?;
            let red = reduce_canonical(id, &g)?;
            let mut doc = header("reduce", Some(id));
            doc.insert("input".into(), json!({ "gram": matrix(s.gram()) }));
            doc.insert(
                "representative".into(),
                json!({
                    "branch": branch_value(red.rep.branch),
                    "entries": named(&red.rep.entries),
                    "matrix": matrix(&red.rep.matrix),
                    "pattern_residual": num(red.rep.pattern_residual),
                    "in_published_family": red.rep.pattern_residual <= REDUCTION_TOL,
                }),
            );
            doc.insert(
                "reduction".into(),
                json!({
                    "phi": matrix(&red.phi),
                    "q": matrix(&red.q),
                    "scale": num(red.scale),
                }),
            );
            doc.insert("errata".into(), errata(id, &[Topic::Reduction]));
            Ok((EXIT_OK, Value::Object(doc)))
        }
        Command::Frame { id, gram } => {
            let id = parse_id(&id)?;
            let s = read_gram(&gram)?;
            let frame = milnor_frame(id, &s)?;
            let mut doc = header("frame", Some(id));
            doc.insert("input".into(), json!({ "gram": matrix(s.gram()) }));
            doc.insert("coefficients".into(), coefficients(&frame.coeffs));
            doc.insert("branch".into(), branch_value(frame.coeffs.case_tag));
            doc.insert("eta".into(), num(frame.eta));
            doc.insert("frame".into(), matrix(&frame.v));
            doc.insert(
                "orthonormality_defect".into(),
                num(frame.orthonormality_defect(s.gram())),
            );
            doc.insert("errata".into(), errata(id, &[Topic::Reduction]));
            Ok((EXIT_OK, Value::Object(doc)))
        }
        Command::Ricci {
            id,
            coeffs,
            gram,
            branch,
        } => {
            let id = parse_id(&id)?;
            let mut doc = header("ricci", Some(id));
            let frame_coeffs = if let Some(text) = coeffs {
                let c = FrameCoefficients::new(id, parse_branch(branch.as_deref())?, &parse_coeffs(&text)?)?;
                doc.insert("input".into(), json!({ "coefficients": coefficients(&c) }));
                c
            } else {
                let path = gram.expect("clap enforces --coeffs or --gram");
                let s = read_gram(&path)?;
                let (ric, v, eta) = ricci_of_metric(id, &s)?;
                doc.insert("input".into(), json!({ "gram": matrix(s.gram()) }));
                doc.insert("frame".into(), matrix(&v));
                doc.insert("eta".into(), num(eta));
                match milnor_frame(id, &s) {
                    Ok(f) => f.coeffs,
                    Err(e) => {
                        // outside the published family: only the oracle applies
                        doc.insert("brute_force".into(), matrix(&ric.m));
                        doc.insert("closed_form".into(), Value::Null);
                        doc.insert("closed_form_unavailable".into(), Value::String(e.to_string()));
                        doc.insert("errata".into(), errata(id, &[Topic::Reduction, Topic::Ricci]));
                        return Ok((EXIT_OK, Value::Object(doc)));
                    }
                }
            };
            let oracle = ricci_nilpotent(&crate::frames::frame_structure_constants(&frame_coeffs)?);
            let closed = closed_form_ricci(&frame_coeffs)?;
            let printed = published_closed_form_ricci(&frame_coeffs)?;
            doc.insert("coefficients".into(), coefficients(&frame_coeffs));
            doc.insert("brute_force".into(), matrix(&oracle.m));
            doc.insert("closed_form".into(), matrix(&closed.m));
            doc.insert("max_discrepancy".into(), num(oracle.max_diff(&closed)));
            doc.insert("printed_form_discrepancy".into(), num(oracle.max_diff(&printed)));
            doc.insert("scalar_curvature".into(), num(oracle.trace()));
            doc.insert("errata".into(), errata(id, &[Topic::Ricci]));
            Ok((EXIT_OK, Value::Object(doc)))
        }
        Command::Solve { id, tensor, batch } => {
            let id = id.as_deref().map(parse_id).transpose()?;
            match (tensor, batch) {
                (Some(path), _) => {
                    let t = read_tensor(&path, id)?;
                    let (code, body) = solve_document(&t, tol);
                    let mut doc = header("solve", Some(t.id));
                    doc.extend(body);
                    Ok((code, Value::Object(doc)))
                }
                (None, Some(dir)) => solve_batch(&dir, id, tol),
                (None, None) => Err(InputError("either --tensor or --batch is required".into())),
            }
        }
        Command::Verify {
            id,
            tensor,
            coeffs,
            t,
            branch,
        } => {
            let id = parse_id(&id)?;
            let tensor = read_tensor(&tensor, Some(id))?;
            let c = FrameCoefficients::new(id, parse_branch(branch.as_deref())?, &parse_coeffs(&coeffs)?)?;
            let sol = Solution {
                branch: c.case_tag,
                coeffs: c,
                t,
                residual: 0.0,
                sufficiency_only: false,
            };
            let residual = verify_solution(&sol, &tensor);
            let ok = residual <= tol;
            let mut doc = header("verify", Some(id));
            doc.insert(
                "input".into(),
                json!({ "tensor": matrix(&tensor.m), "coefficients": coefficients(&sol.coeffs), "t": num(t) }),
            );
            doc.insert("residual".into(), num(residual));
            doc.insert("tolerance".into(), num(tol));
            doc.insert("verified".into(), Value::Bool(ok));
            Ok((if ok { EXIT_OK } else { EXIT_UNSOLVABLE }, Value::Object(doc)))
        }
    }
}

fn solve_document(t: &PrescribedTensor, tol: f64) -> (i32, Map<String, Value>) {
    let attempts = solve_attempts(t, tol);
    let found = attempts.iter().find_map(|a| a.outcome.as_ref().ok());
    let mut doc = Map::new();
    doc.insert(
        "input".into(),
        json!({ "tensor": matrix(&t.m), "named": named(&t.named) }),
    );
    doc.insert("conditions".into(), report(&check_conditions(t)));
    doc.insert("published_conditions".into(), report(&published_conditions(t)));
    doc.insert(
        "attempts".into(),
        Value::Array(
            attempts
                .iter()
                .map(|a| {
                    json!({
                        "branch": branch_value(a.branch),
                        "result": match &a.outcome {
                            Ok(_) => "solved".to_string(),
                            Err(e) => e.to_string(),
                        },
                    })
                })
                .collect(),
        ),
    );
    doc.insert("solution".into(), found.map_or(Value::Null, solution));
    doc.insert(
        "status".into(),
        Value::String(if found.is_some() { "solvable" } else { "unsolvable" }.into()),
    );
    doc.insert("tolerance".into(), num(tol));
    doc.insert("errata".into(), errata(t.id, &[Topic::Conditions]));
    (if found.is_some() { EXIT_OK } else { EXIT_UNSOLVABLE }, doc)
}

fn solve_batch(dir: &Path, id: Option<AlgebraId>, tol: f64) -> CmdResult {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| InputError(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    // library calls are pure, so the files are solved concurrently
    let results: Vec<(i32, Value)> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| {
                scope.spawn(move || {
                    let name = path
                        .file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_default();
                    match read_tensor(path, id) {
                        Ok(t) => {
                            let (code, mut body) = solve_document(&t, tol);
                            body.insert("file".into(), Value::String(name));
                            body.insert("algebra".into(), Value::String(t.id.name().into()));
                            (code, Value::Object(body))
                        }
                        Err(InputError(msg)) => (EXIT_INPUT, json!({ "file": name, "error": msg })),
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread")).collect()
    });
    let code = results.iter().map(|r| r.0).fold(EXIT_OK, |acc, c| match (acc, c) {
        (EXIT_INPUT, _) | (_, EXIT_INPUT) => EXIT_INPUT,
        (EXIT_UNSOLVABLE, _) | (_, EXIT_UNSOLVABLE) => EXIT_UNSOLVABLE,
        _ => EXIT_OK,
    });
    let mut doc = header("solve", id);
    doc.insert("batch".into(), Value::String(dir.display().to_string()));
    doc.insert(
        "results".into(),
        Value::Array(results.into_iter().map(|r| r.1).collect()),
    );
    Ok((code, Value::Object(doc)))
}
