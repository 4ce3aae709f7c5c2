//! Command line front end.
//!
//! Subcommands read JSON from standard input (or `--input`) and write to
//! standard output (or `--output`). Most emit a report object with stable
//! fields `command`, `verdict`, `witnesses` and `timings_ms`; identical
//! inputs produce byte-identical reports apart from the timings. Three
//! subcommands emit raw payloads instead: `gen` the fixture JSON, `fill`
//! the surface JSON when a filling exists, and `export-dot` DOT text.
//!
//! Exit codes: 0 when the verdict is affirmative, 1 when a check fails,
//! 2 on usage errors (bad flags, malformed or mismatched input), 3 when a
//! library invariant is breached.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::actions::{
    bicycle_check, invariant_simplex_search, orbit_of_vertex, triangle_surface, verify_action,
    verify_xu_properties, ActionError, ActionSpec, BicycleOutcome, TriangleSurfaceOutcome,
};
use crate::complex::{FlagComplex, LargenessCheck, SystolicVerdict, DEFAULT_PI1_BUDGET};
use crate::disc::DiscTriangulation;
use crate::filling::{fill_minimal, FillResult};
use crate::fixtures::{Fixture, FixtureFamily, FixtureSpec};
use crate::io::{
    to_dot, ActionJson, ComplexJson, DiscJson, LabeledSurfaceJson, SurfaceJson,
};
use crate::swaps::{edge_swap, swap_effect_report, SwapError, SwapMove};

#[derive(Parser)]
#[command(
    name = "systolic-lab",
    about = "Systolicity checks, disc fillings, defect accounting, group actions and edge swaps on finite flag complexes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Read input from a file instead of standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Omit witnesses from reports.
    #[arg(long, global = true)]
    quiet: bool,
    /// Budget for bounded procedures: simple-connectivity steps, filling
    /// area, or group enumeration size, depending on the subcommand.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a fixture and write its JSON.
    Gen {
        #[arg(value_enum)]
        family: Family,
        /// Size parameter for the cycle-based families.
        #[arg(long)]
        n: Option<usize>,
        /// Radius for hex-patch.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Check connectivity, simple connectivity and 6-largeness of all links.
    CheckSystolic,
    /// Look for embedded chordless cycles shorter than k.
    KLarge {
        #[arg(long)]
        k: usize,
    },
    /// Search a minimal filling of an embedded cycle.
    Fill {
        /// Boundary cycle as comma-separated vertex labels.
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<String>,
    },
    /// Sum the defects over a triangulated disc.
    GaussBonnet,
    /// Defects of one vertex, along a boundary path, or of every vertex.
    Defect {
        #[arg(long)]
        vertex: Option<String>,
        /// Boundary path as comma-separated vertex labels.
        #[arg(long, value_delimiter = ',')]
        path: Option<Vec<String>>,
    },
    /// Invariance set of an involution and its four structural clauses.
    InvarianceSet {
        /// Action JSON file.
        #[arg(long)]
        action: PathBuf,
        /// Generator name of the involution.
        #[arg(long)]
        generator: String,
    },
    /// Orbit of a vertex under a verified action.
    Orbit {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        seed: String,
    },
    /// Dihedral orbit dichotomy: simplex case or chordless cycle case.
    Bicycle {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        seed: String,
    },
    /// Search for a clique stabilized setwise by every generator.
    FixedSimplex {
        #[arg(long)]
        action: PathBuf,
    },
    /// Equivariant triangle surface for an action of three involutions.
    TriangleSurface {
        #[arg(long)]
        action: PathBuf,
    },
    /// Apply a boundary edge swap to a labeled surface.
    Swap {
        /// Ambient complex JSON file.
        #[arg(long)]
        ambient: PathBuf,
        /// Move as four comma-separated disc labels: p,q,m,m'.
        #[arg(long = "move", value_delimiter = ',', required = true)]
        mv: Vec<String>,
    },
    /// Write the 1-skeleton in DOT format.
    ExportDot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    ChordedWheel,
    DoubleCycle,
    Wheel,
    HexPatch,
    SpecialSurface,
    BicycleComplex,
}

impl Family {
    fn fixture(self) -> FixtureFamily {
        match self {
            Family::ChordedWheel => FixtureFamily::ChordedWheel,
            Family::DoubleCycle => FixtureFamily::DoubleCycle,
            Family::Wheel => FixtureFamily::Wheel,
            Family::HexPatch => FixtureFamily::HexPatch,
            Family::SpecialSurface => FixtureFamily::SpecialSurface,
            Family::BicycleComplex => FixtureFamily::BicycleComplex,
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: u8,
}

#[derive(Serialize)]
struct Report {
    command: String,
    verdict: String,
    witnesses: Vec<Value>,
    timings_ms: BTreeMap<String, u128>,
}

struct Ctx {
    command: &'static str,
    quiet: bool,
    budget: Option<usize>,
    started: Instant,
}

impl Ctx {
    fn report(&self, verdict: &str, witnesses: Vec<Value>, exit: u8) -> (String, u8) {
        let report = Report {
            command: self.command.to_string(),
            verdict: verdict.to_string(),
            witnesses: if self.quiet { Vec::new() } else { witnesses },
            timings_ms: BTreeMap::from([(
                "total".to_string(),
                self.started.elapsed().as_millis(),
            )]),
        };
        (pretty(&report), exit)
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut rendered = serde_json::to_string_pretty(value).expect("report serializes");
    rendered.push('\n');
    rendered
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Gen { .. } => "gen",
        Command::CheckSystolic => "check-systolic",
        Command::KLarge { .. } => "k-large",
        Command::Fill { .. } => "fill",
        Command::GaussBonnet => "gauss-bonnet",
        Command::Defect { .. } => "defect",
        Command::InvarianceSet { .. } => "invariance-set",
        Command::Orbit { .. } => "orbit",
        Command::Bicycle { .. } => "bicycle",
        Command::FixedSimplex { .. } => "fixed-simplex",
        Command::TriangleSurface { .. } => "triangle-surface",
        Command::Swap { .. } => "swap",
        Command::ExportDot => "export-dot",
    }
}

fn needs_input(command: &Command) -> bool {
    !matches!(command, Command::Gen { .. })
}

/// The library runs sequentially, so any positive cap is honored; the
/// variable is still validated to keep misconfigurations loud.
fn validate_thread_cap() -> Result<(), String> {
    match std::env::var("SYSTOLIC_LAB_THREADS") {
        Ok(raw) => match raw.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(()),
            _ => Err(format!(
                "SYSTOLIC_LAB_THREADS must be a positive integer, got {raw:?}"
            )),
        },
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(format!("SYSTOLIC_LAB_THREADS is not valid unicode: {e}")),
    }
}

fn parse_complex(input: &str) -> Result<FlagComplex, String> {
    let json: ComplexJson =
        serde_json::from_str(input).map_err(|e| format!("complex JSON: {e}"))?;
    json.to_complex().map_err(|e| e.to_string())
}

fn parse_disc(input: &str) -> Result<DiscTriangulation, String> {
    let json: DiscJson = serde_json::from_str(input).map_err(|e| format!("disc JSON: {e}"))?;
    json.to_disc().map_err(|e| e.to_string())
}

fn read_action(x: &FlagComplex, path: &PathBuf) -> Result<ActionSpec, String> {
    let raw = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let json: ActionJson =
        serde_json::from_str(&raw).map_err(|e| format!("action JSON: {e}"))?;
    json.to_spec(x).map_err(|e| e.to_string())
}

/// Runs a parsed invocation against the given input text. Returns the
/// output body and exit code, or a usage-error message.
fn dispatch(cli: &Cli, input: &str) -> Result<(String, u8), String> {
    let ctx = Ctx {
        command: command_name(&cli.command),
        quiet: cli.quiet,
        budget: cli.budget,
        started: Instant::now(),
    };
    match &cli.command {
        Command::Gen { family, n, r } => {
            let spec = FixtureSpec { family: family.fixture(), parameter: n.or(*r) };
            let fixture = spec.build().map_err(|e| e.to_string())?;
            let body = match fixture {
                Fixture::Complex(x) => pretty(&ComplexJson::from_complex(&x)),
                Fixture::Disc(d) => pretty(&DiscJson::from_disc(&d)),
            };
            Ok((body, 0))
        }
        Command::CheckSystolic => {
            let x = parse_complex(input)?;
            let budget = ctx.budget.unwrap_or(DEFAULT_PI1_BUDGET);
            let (verdict, witnesses, exit) = match x.check_systolic(budget) {
                SystolicVerdict::Systolic => ("systolic", vec![], 0),
                SystolicVerdict::Disconnected => ("disconnected", vec![], 1),
                SystolicVerdict::NotLocally6Large { vertex, link_cycle } => (
                    "not-locally-6-large",
                    vec![json!({
                        "vertex": x.label(vertex),
                        "link_cycle": x.labels_of(&link_cycle.vertices),
                    })],
                    1,
                ),
                SystolicVerdict::NotSimplyConnected(obstruction) => (
                    "not-simply-connected",
                    vec![json!({ "obstruction": format!("{obstruction:?}") })],
                    1,
                ),
                SystolicVerdict::Unknown => (
                    "unknown",
                    vec![json!({ "detail": "simple-connectivity budget exhausted" })],
                    1,
                ),
            };
            Ok(ctx.report(verdict, witnesses, exit))
        }
        Command::KLarge { k } => {
            let x = parse_complex(input)?;
            match x.is_k_large(*k).map_err(|e| e.to_string())? {
                LargenessCheck::KLarge => Ok(ctx.report("k-large", vec![], 0)),
                LargenessCheck::Chordless(cycle) => Ok(ctx.report(
                    "chordless-cycle-found",
                    vec![json!({ "cycle": x.labels_of(&cycle.vertices) })],
                    1,
                )),
            }
        }
        Command::Fill { cycle } => {
            let x = parse_complex(input)?;
            let ids = cycle
                .iter()
                .map(|l| x.require_vertex(l))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            match fill_minimal(&x, &ids, ctx.budget).map_err(|e| e.to_string())? {
                FillResult::Filled(surface) => {
                    Ok((pretty(&SurfaceJson::from_surface(&x, &surface)), 0))
                }
                FillResult::NoFilling => {
                    Ok(ctx.report("no-filling", vec![json!({ "cycle": cycle })], 1))
                }
                FillResult::BudgetExhausted => {
                    Ok(ctx.report("budget-exhausted", vec![json!({ "cycle": cycle })], 1))
                }
            }
        }
        Command::GaussBonnet => {
            let disc = parse_disc(input)?;
            let sum = disc.gauss_bonnet_sum();
            if sum == 6 {
                Ok(ctx.report("gauss-bonnet-holds", vec![json!({ "sum": sum })], 0))
            } else {
                Ok(ctx.report("gauss-bonnet-violated", vec![json!({ "sum": sum })], 3))
            }
        }
        Command::Defect { vertex, path } => {
            let disc = parse_disc(input)?;
            let witnesses = match (vertex, path) {
                (Some(_), Some(_)) => {
                    return Err("choose one of --vertex and --path".to_string())
                }
                (Some(v), None) => {
                    let defect = disc.defect_by_name(v).map_err(|e| e.to_string())?;
                    vec![json!({ "vertex": v, "defect": defect })]
                }
                (None, Some(p)) => {
                    let sum = disc.defect_along_names(p).map_err(|e| e.to_string())?;
                    vec![json!({ "path": p, "defect_sum": sum })]
                }
                (None, None) => disc
                    .labels()
                    .iter()
                    .enumerate()
                    .map(|(i, l)| json!({ "vertex": l, "defect": disc.defect(i) }))
                    .collect(),
            };
            Ok(ctx.report("computed", witnesses, 0))
        }
        Command::InvarianceSet { action, generator } => {
            let x = parse_complex(input)?;
            let spec = read_action(&x, action)?;
            let u = spec.generator(generator).map_err(|e| e.to_string())?;
            let report = verify_xu_properties(&x, u).map_err(|e| e.to_string())?;
            let witnesses = vec![json!({
                "vertices": report.vertices,
                "ambient_systolic": report.ambient_systolic,
                "violations": report
                    .violations
                    .iter()
                    .map(|v| format!("{v:?}"))
                    .collect::<Vec<_>>(),
            })];
            if report.is_ok() {
                Ok(ctx.report("xu-holds", witnesses, 0))
            } else {
                Ok(ctx.report("xu-violated", witnesses, 1))
            }
        }
        Command::Orbit { action, seed } => {
            let x = parse_complex(input)?;
            let spec = read_action(&x, action)?;
            verify_action(&x, &spec).map_err(|e| e.to_string())?;
            let id = x.require_vertex(seed).map_err(|e| e.to_string())?;
            let mut orbit = x.labels_of(&orbit_of_vertex(&spec, id));
            orbit.sort();
            Ok(ctx.report("computed", vec![json!({ "seed": seed, "orbit": orbit })], 0))
        }
        Command::Bicycle { action, seed } => {
            let x = parse_complex(input)?;
            let spec = read_action(&x, action)?;
            let id = x.require_vertex(seed).map_err(|e| e.to_string())?;
            let report = match bicycle_check(&x, &spec, id) {
                Ok(report) => report,
                Err(ActionError::GroupEnumerationBudgetExceeded { budget }) => {
                    return Ok(ctx.report(
                        "budget-exhausted",
                        vec![json!({ "budget": budget })],
                        1,
                    ))
                }
                Err(ActionError::HypothesisViolated(detail)) => {
                    return Ok(ctx.report(
                        "hypothesis-violated",
                        vec![json!({ "detail": detail })],
                        1,
                    ))
                }
                Err(e) => return Err(e.to_string()),
            };
            let base = json!({ "n": report.n, "n_within_bound": report.n_within_bound });
            match report.outcome {
                BicycleOutcome::SimplexCase { simplex } => Ok(ctx.report(
                    "simplex-case",
                    vec![base, json!({ "simplex": x.labels_of(&simplex) })],
                    0,
                )),
                BicycleOutcome::CycleCase { cycle, witness, sigma } => Ok(ctx.report(
                    "cycle-case",
                    vec![
                        base,
                        json!({
                            "cycle": x.labels_of(&cycle),
                            "witness": x.label(witness),
                            "sigma": x.labels_of(&sigma),
                        }),
                    ],
                    0,
                )),
                BicycleOutcome::Violation { clause, detail } => Ok(ctx.report(
                    "violation",
                    vec![base, json!({ "clause": clause, "detail": detail })],
                    1,
                )),
            }
        }
        Command::FixedSimplex { action } => {
            let x = parse_complex(input)?;
            let spec = read_action(&x, action)?;
            match invariant_simplex_search(&x, &spec, ctx.budget) {
                Ok(Some(simplex)) => Ok(ctx.report(
                    "invariant-simplex",
                    vec![json!({ "simplex": x.labels_of(&simplex) })],
                    0,
                )),
                Ok(None) => Ok(ctx.report("none", vec![], 1)),
                Err(ActionError::GroupEnumerationBudgetExceeded { budget }) => {
                    Ok(ctx.report("budget-exhausted", vec![json!({ "budget": budget })], 1))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::TriangleSurface { action } => {
            let x = parse_complex(input)?;
            let spec = read_action(&x, action)?;
            match triangle_surface(&x, &spec, ctx.budget) {
                Ok(TriangleSurfaceOutcome::DegenerateAtVertex { vertex, invariant_simplex }) => {
                    Ok(ctx.report(
                        "degenerate-at-vertex",
                        vec![json!({
                            "vertex": x.label(vertex),
                            "invariant_simplex": x.labels_of(&invariant_simplex),
                        })],
                        0,
                    ))
                }
                Ok(TriangleSurfaceOutcome::Spanned { corners, sides, surface }) => {
                    let corner_labels: Vec<&str> =
                        corners.iter().map(|&c| x.label(c)).collect();
                    let side_labels: Vec<Vec<String>> =
                        sides.iter().map(|s| x.labels_of(s)).collect();
                    Ok(ctx.report(
                        "spanned",
                        vec![json!({
                            "corners": corner_labels,
                            "sides": side_labels,
                            "surface": SurfaceJson::from_surface(&x, &surface),
                        })],
                        0,
                    ))
                }
                Err(ActionError::HypothesisViolated(detail)) => Ok(ctx.report(
                    "hypothesis-violated",
                    vec![json!({ "detail": detail })],
                    1,
                )),
                Err(ActionError::EmptyIntersection { first, second }) => Ok(ctx.report(
                    "empty-intersection",
                    vec![json!({ "first": first, "second": second })],
                    1,
                )),
                Err(ActionError::GroupEnumerationBudgetExceeded { budget }) => {
                    Ok(ctx.report("budget-exhausted", vec![json!({ "budget": budget })], 1))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Swap { ambient, mv } => {
            let raw = fs::read_to_string(ambient)
                .map_err(|e| format!("cannot read {}: {e}", ambient.display()))?;
            let ambient_json: ComplexJson =
                serde_json::from_str(&raw).map_err(|e| format!("complex JSON: {e}"))?;
            let x = ambient_json.to_complex().map_err(|e| e.to_string())?;
            let labeled_json: LabeledSurfaceJson =
                serde_json::from_str(input).map_err(|e| format!("surface JSON: {e}"))?;
            let before = labeled_json.to_labeled(&x).map_err(|e| e.to_string())?;
            if mv.len() != 4 {
                return Err(format!("--move needs four labels p,q,m,m', got {}", mv.len()));
            }
            let disc = before.disc();
            let mut idx = [0usize; 4];
            for (slot, label) in idx.iter_mut().zip(mv) {
                *slot = disc.index_of(label).map_err(|e| e.to_string())?;
            }
            let mv = SwapMove { p: idx[0], q: idx[1], m: idx[2], m_prime: idx[3] };
            let after = match edge_swap(&x, &before, &mv) {
                Ok(after) => after,
                Err(SwapError::MoveInvalid(detail)) => {
                    return Ok(ctx.report(
                        "move-invalid",
                        vec![json!({ "detail": detail })],
                        1,
                    ))
                }
                Err(SwapError::MissingAmbientEdge(a, b)) => {
                    return Ok(ctx.report(
                        "missing-ambient-edge",
                        vec![json!({ "a": a, "b": b })],
                        1,
                    ))
                }
                Err(e) => {
                    return Ok(ctx.report(
                        "internal-error",
                        vec![json!({ "detail": e.to_string() })],
                        3,
                    ))
                }
            };
            let effect = match swap_effect_report(&before, &after, &mv) {
                Ok(effect) => effect,
                Err(e) => {
                    return Ok(ctx.report(
                        "internal-error",
                        vec![json!({ "detail": e.to_string() })],
                        3,
                    ))
                }
            };
            let witnesses = vec![
                json!({ "surface": LabeledSurfaceJson::from_labeled(&x, &after) }),
                json!({
                    "swapped_side": format!("{:?}", effect.swapped),
                    "side_defects_before": effect.side_defects_before,
                    "side_defects_after": effect.side_defects_after,
                    "corner_defects_before": effect.corner_defects_before,
                    "corner_defects_after": effect.corner_defects_after,
                    "violations": effect
                        .violations
                        .iter()
                        .map(|v| format!("{v:?}"))
                        .collect::<Vec<_>>(),
                }),
            ];
            if effect.violations.is_empty() {
                Ok(ctx.report("swapped", witnesses, 0))
            } else {
                Ok(ctx.report("effect-violated", witnesses, 3))
            }
        }
        Command::ExportDot => {
            let x = parse_complex(input)?;
            Ok((to_dot(&x), 0))
        }
    }
}

fn usage(message: String) -> CliOutcome {
    CliOutcome { stdout: String::new(), stderr: format!("error: {message}\n"), exit: 2 }
}

fn execute_parsed(cli: Cli, stdin: &str) -> CliOutcome {
    if let Err(message) = validate_thread_cap() {
        return usage(message);
    }
    let input = match &cli.input {
        Some(path) => match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
        },
        None => stdin.to_string(),
    };
    match dispatch(&cli, &input) {
        Ok((body, exit)) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &body) {
                    return usage(format!("cannot write {}: {e}", path.display()));
                }
                CliOutcome { stdout: String::new(), stderr: String::new(), exit }
            } else {
                CliOutcome { stdout: body, stderr: String::new(), exit }
            }
        }
        Err(message) => usage(message),
    }
}

/// Parses and runs an argument vector against the given input text.
/// This is `run` without process-global side effects, usable from tests.
pub fn execute<I, T>(args: I, stdin: &str) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute_parsed(cli, stdin),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                CliOutcome { stdout: String::new(), stderr: rendered, exit: 2 }
            } else {
                // Help and version requests.
                CliOutcome { stdout: rendered, stderr: String::new(), exit: 0 }
            }
        }
    }
}

/// Process entry point: reads standard input when the subcommand needs it
/// and no --input file is given, then prints the outcome.
pub fn run() -> std::process::ExitCode {
    let cli = match Cli::try_parse_from(std::env::args_os()) {
        Ok(cli) => cli,
        Err(e) => {
            e.print().expect("render clap message");
            let exit = if e.use_stderr() { 2 } else { 0 };
            return std::process::ExitCode::from(exit);
        }
    };
    let stdin_data = if needs_input(&cli.command) && cli.input.is_none() {
        let mut buf = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
            eprintln!("error: cannot read standard input: {e}");
            return std::process::ExitCode::from(2);
        }
        buf
    } else {
        String::new()
    };
    let outcome = execute_parsed(cli, &stdin_data);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::ExitCode::from(outcome.exit)
}
