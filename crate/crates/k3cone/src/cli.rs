//! Command-line front end with deterministic, machine-readable output.
//!
//! Exit codes: 0 success; 1 the computation succeeded but the answer is
//! negative (no certificate, failed validation, contradiction found); 2
//! usage or input errors; 3 internal errors. All numeric output is exact;
//! `--json` payloads are schema-stable across runs.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::catalog::{self, Catalog};
use crate::cone::{self, ChamberComplex, RationalCone};
use crate::error::{Error, Result};
use crate::lattice::{bigint_to_json, GramLattice};
use crate::linalg::{self, IntVector};
use crate::roots::{self, Root};
use crate::surface::{
    classify_contraction, fixed_component_analysis, k3_riemann_roch, ContractionDescriptor,
    HirzebruchModel, K3Class,
};
use crate::vinberg::{self, Verdict, VinbergBudget};

/// Outcome of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn negative(stdout: String) -> Self {
        CommandResult {
            exit_code: 1,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        CommandResult {
            exit_code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "k3cone",
    version,
    about = "Exact computations on hyperbolic lattices, Weyl chambers, and rational cones",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice inspection
    Lattice {
        #[command(subcommand)]
        command: LatticeCmd,
    },
    /// (-2)-root enumeration
    Roots {
        #[command(subcommand)]
        command: RootsCmd,
    },
    /// 2-reflectivity decision
    Vinberg {
        #[command(subcommand)]
        command: VinbergCmd,
    },
    /// Polyhedral cone calculus
    Cone {
        #[command(subcommand)]
        command: ConeCmd,
    },
    /// Surface intersection arithmetic
    Surface {
        #[command(subcommand)]
        command: SurfaceCmd,
    },
    /// Fano-mirror fact catalog
    Catalog {
        #[command(subcommand)]
        command: CatalogCmd,
    },
}

#[derive(Args, Debug)]
struct LatticeSource {
    /// Lattice definition file (JSON with `label` and `blocks` or `gram`)
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Inline block tokens: U, E8MINUS, DIAG(n)
    #[arg(long, num_args = 1.., conflicts_with = "lattice")]
    blocks: Vec<String>,
}

impl LatticeSource {
    fn load(&self) -> Result<GramLattice> {
        match (&self.lattice, self.blocks.is_empty()) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)?;
                GramLattice::from_definition_str(&text)
            }
            (None, false) => GramLattice::from_blocks(&self.blocks, None),
            (None, true) => Err(Error::Parse(
                "provide a lattice via --lattice <file> or --blocks <tokens>".into(),
            )),
        }
    }
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Rank, signature and determinant
    Info {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum RootsCmd {
    /// All roots with pairing 0..=max-level against the controlling vector
    Enum {
        #[command(flatten)]
        source: LatticeSource,
        /// Controlling vector, comma-separated integers
        #[arg(long)]
        v0: String,
        #[arg(long, default_value_t = 0)]
        max_level: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum VinbergCmd {
    /// Build a fundamental chamber and test the finite-volume certificate
    Run {
        #[command(flatten)]
        source: LatticeSource,
        /// Controlling vector, comma-separated; searched for when omitted
        #[arg(long)]
        v0: Option<String>,
        #[arg(long, default_value_t = VinbergBudget::default().max_walls)]
        max_walls: usize,
        #[arg(long, default_value_t = VinbergBudget::default().max_level)]
        max_level: u64,
        #[arg(long, default_value_t = VinbergBudget::default().max_candidates)]
        max_candidates: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ConeCmd {
    /// Dual cone of the input cone
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Faces of one codimension
    Faces {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        codim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Orbit partition of cones under integer matrix generators
    Orbits {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Chamber-complex consistency checks
    ValidateComplex {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SurfaceCmd {
    /// Intersection numbers and the fixed-component table on F_n
    Hirzebruch {
        #[arg(long, conflicts_with = "scan")]
        n: Option<u64>,
        /// Inclusive range `a..b` of values of n
        #[arg(long)]
        scan: Option<String>,
        /// Optional class a,b to pair with --y
        #[arg(long, requires = "y")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        y: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// h^0 of a nef and big class on a K3 surface
    Rr {
        /// Self-intersection L^2 (even, positive)
        #[arg(long)]
        lsq: i64,
        #[arg(long)]
        json: bool,
    },
    /// Which extremal contraction types survive
    Classify {
        #[arg(long = "type")]
        mori_type: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// All entries and the summary record
    List {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// One entry in full
    Show {
        label: String,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the Vinberg decision against every entry with a lattice
    CrossCheck {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = VinbergBudget::default().max_walls)]
        max_walls: usize,
        #[arg(long, default_value_t = VinbergBudget::default().max_level)]
        max_level: u64,
        #[arg(long, default_value_t = VinbergBudget::default().max_candidates)]
        max_candidates: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Routes argv to the subcommands; never panics on user input.
pub fn dispatch<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version through the error path
            let rendered = e.render().to_string();
            return if e.exit_code() == 0 {
                CommandResult {
                    exit_code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                CommandResult::usage(rendered)
            };
        }
    };
    match run_command(cli.command) {
        Ok(result) => result,
        Err(err) => CommandResult::usage(format!("error: {err}\n")),
    }
}

fn parse_csv_vector(s: &str) -> Result<IntVector> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: `{t}`")))
        })
        .collect()
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("expected `a..b`, got `{s}`")))?;
    let a = a
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad range start `{a}`")))?;
    let b = b
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad range end `{b}`")))?;
    if a > b {
        return Err(Error::Parse(format!("empty range `{s}`")));
    }
    Ok((a, b))
}

fn render(value: &Value, json: bool, text: String) -> String {
    if json {
        let mut s = serde_json::to_string(value).expect("valid JSON value");
        s.push('\n');
        s
    } else {
        text
    }
}

fn vector_text(v: &[BigInt]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

fn load_catalog_opt(path: &Option<PathBuf>) -> Result<Catalog> {
    match path {
        Some(p) => catalog::load_catalog(p),
        None => catalog::load_default_catalog(),
    }
}

fn run_command(command: Command) -> Result<CommandResult> {
    match command {
        Command::Lattice { command } => run_lattice(command),
        Command::Roots { command } => run_roots(command),
        Command::Vinberg { command } => run_vinberg_cmd(command),
        Command::Cone { command } => run_cone(command),
        Command::Surface { command } => run_surface(command),
        Command::Catalog { command } => run_catalog(command),
    }
}

fn run_lattice(command: LatticeCmd) -> Result<CommandResult> {
    match command {
        LatticeCmd::Info { source, json } => {
            let lattice = source.load()?;
            let sig = lattice.signature();
            let det = lattice.determinant();
            let mut obj = Map::new();
            obj.insert("determinant".into(), bigint_to_json(&det));
            if let Some(label) = lattice.label() {
                obj.insert("label".into(), Value::String(label.to_string()));
            }
            obj.insert("rank".into(), Value::Number((lattice.rank() as u64).into()));
            let mut sig_obj = Map::new();
            sig_obj.insert(
                "negative".into(),
                Value::Number((sig.negative as u64).into()),
            );
            sig_obj.insert(
                "positive".into(),
                Value::Number((sig.positive as u64).into()),
            );
            obj.insert("signature".into(), Value::Object(sig_obj));
            let text = format!(
                "label: {}\nrank: {}\nsignature: ({}, {})\ndeterminant: {}\n",
                lattice.label().unwrap_or("-"),
                lattice.rank(),
                sig.positive,
                sig.negative,
                det
            );
            Ok(CommandResult::ok(render(&Value::Object(obj), json, text)))
        }
    }
}

fn run_roots(command: RootsCmd) -> Result<CommandResult> {
    match command {
        RootsCmd::Enum {
            source,
            v0,
            max_level,
            json,
        } => {
            let lattice = source.load()?;
            let v0 = parse_csv_vector(&v0)?;
            let mut levels = Vec::new();
            let mut text = String::new();
            for level in 0..=max_level {
                let level = linalg::int(level as i64);
                let roots = roots::enumerate_roots_at_level(&lattice, &v0, &level)?;
                let coords: Vec<IntVector> = roots.into_iter().map(Root::into_coords).collect();
                text.push_str(&format!("level {}: {} roots\n", level, coords.len()));
                for c in &coords {
                    text.push_str(&format!("  {}\n", vector_text(c)));
                }
                let mut obj = Map::new();
                obj.insert("level".into(), bigint_to_json(&level));
                obj.insert("roots".into(), cone::vectors_to_json(&coords));
                levels.push(Value::Object(obj));
            }
            let mut out = Map::new();
            out.insert("levels".into(), Value::Array(levels));
            out.insert(
                "v0".into(),
                Value::Array(v0.iter().map(bigint_to_json).collect()),
            );
            Ok(CommandResult::ok(render(&Value::Object(out), json, text)))
        }
    }
}

fn run_vinberg_cmd(command: VinbergCmd) -> Result<CommandResult> {
    match command {
        VinbergCmd::Run {
            source,
            v0,
            max_walls,
            max_level,
            max_candidates,
            json,
        } => {
            let lattice = source.load()?;
            let v0 = v0.map(|s| parse_csv_vector(&s)).transpose()?;
            let budget = VinbergBudget {
                max_walls,
                max_level,
                max_candidates,
            };
            let result = vinberg::run_vinberg(&lattice, v0.as_deref(), &budget)?;

            let mut progress = String::new();
            for log in &result.transcript {
                progress.push_str(&format!(
                    "level {}: {} candidates, {} roots, {} accepted\n",
                    log.level, log.candidates_enumerated, log.roots_found, log.accepted
                ));
            }

            let mut obj = match result.to_value() {
                Value::Object(obj) => obj,
                _ => unreachable!("vinberg result serializes to an object"),
            };
            let mut budget_obj = Map::new();
            budget_obj.insert(
                "max_candidates".into(),
                Value::Number(max_candidates.into()),
            );
            budget_obj.insert("max_level".into(), Value::Number(max_level.into()));
            budget_obj.insert("max_walls".into(), Value::Number((max_walls as u64).into()));
            obj.insert("budget".into(), Value::Object(budget_obj));

            let mut text = format!("verdict: {}\n", result.verdict.as_str());
            text.push_str(&format!("v0: {}\n", vector_text(&result.v0)));
            text.push_str(&format!("walls ({}):\n", result.walls.len()));
            for w in &result.walls {
                text.push_str(&format!("  {}\n", vector_text(w)));
            }
            if let Some(rays) = &result.chamber_rays {
                text.push_str(&format!("chamber rays ({}):\n", rays.len()));
                for r in rays {
                    text.push_str(&format!("  {}\n", vector_text(r)));
                }
            }
            for note in &result.notes {
                text.push_str(&format!("note: {note}\n"));
            }

            let stdout = render(&Value::Object(obj), json, text);
            let exit_code = match result.verdict {
                Verdict::TwoReflective => 0,
                Verdict::NotDetected => 1,
            };
            Ok(CommandResult {
                exit_code,
                stdout,
                stderr: progress,
            })
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run_cone(command: ConeCmd) -> Result<CommandResult> {
    match command {
        ConeCmd::Dual { input, json } => {
            let cone = RationalCone::from_value(&read_json(&input)?)?;
            let dual = cone.dual();
            let text = format!(
                "ambient_dim: {}\nrays:\n{}facets:\n{}",
                dual.ambient_dim(),
                dual.rays()
                    .iter()
                    .map(|r| format!("  {}\n", vector_text(r)))
                    .collect::<String>(),
                dual.facets()
                    .iter()
                    .map(|f| format!("  {}\n", vector_text(f)))
                    .collect::<String>(),
            );
            Ok(CommandResult::ok(render(&dual.to_value(), json, text)))
        }
        ConeCmd::Faces { input, codim, json } => {
            let cone = RationalCone::from_value(&read_json(&input)?)?;
            let faces = cone.faces(codim)?;
            let mut arr = Vec::new();
            let mut text = format!("{} faces of codimension {}\n", faces.len(), codim);
            for face in &faces {
                let rays: Vec<IntVector> = face
                    .incident_rays
                    .iter()
                    .map(|&i| cone.rays()[i].clone())
                    .collect();
                text.push_str(&format!(
                    "dim {}: active facets {:?}, rays {}\n",
                    face.dim,
                    face.active_facets,
                    rays.iter()
                        .map(|r| vector_text(r))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
                let mut obj = Map::new();
                obj.insert(
                    "active_facets".into(),
                    Value::Array(
                        face.active_facets
                            .iter()
                            .map(|&f| Value::Number((f as u64).into()))
                            .collect(),
                    ),
                );
                obj.insert("dim".into(), Value::Number((face.dim as u64).into()));
                obj.insert("rays".into(), cone::vectors_to_json(&rays));
                arr.push(Value::Object(obj));
            }
            let mut out = Map::new();
            out.insert("codim".into(), Value::Number((codim as u64).into()));
            out.insert("faces".into(), Value::Array(arr));
            Ok(CommandResult::ok(render(&Value::Object(out), json, text)))
        }
        ConeCmd::Orbits { input, json } => {
            let value = read_json(&input)?;
            let obj = value
                .as_object()
                .ok_or_else(|| Error::Parse("orbit input must be a JSON object".into()))?;
            let faces: Vec<RationalCone> = obj
                .get("faces")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("orbit input needs a `faces` array".into()))?
                .iter()
                .map(RationalCone::from_value)
                .collect::<Result<_>>()?;
            let generators: Vec<Vec<IntVector>> = obj
                .get("generators")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("orbit input needs a `generators` array".into()))?
                .iter()
                .map(cone::json_to_vectors)
                .collect::<Result<_>>()?;
            let word_budget = obj.get("word_budget").and_then(Value::as_u64).unwrap_or(16) as usize;
            let partition = cone::orbit_faces(&faces, &generators, word_budget)?;
            let mut arr = Vec::new();
            let mut text = format!("{} orbit classes\n", partition.classes.len());
            for class in &partition.classes {
                text.push_str(&format!(
                    "inputs {:?} complete={}\n",
                    class.input_indices, class.complete
                ));
                let mut o = Map::new();
                o.insert("complete".into(), Value::Bool(class.complete));
                o.insert(
                    "inputs".into(),
                    Value::Array(
                        class
                            .input_indices
                            .iter()
                            .map(|&i| Value::Number((i as u64).into()))
                            .collect(),
                    ),
                );
                arr.push(Value::Object(o));
            }
            let mut out = Map::new();
            out.insert("classes".into(), Value::Array(arr));
            out.insert(
                "discovered".into(),
                Value::Number((partition.discovered as u64).into()),
            );
            Ok(CommandResult::ok(render(&Value::Object(out), json, text)))
        }
        ConeCmd::ValidateComplex { input, json } => {
            let complex = ChamberComplex::from_value(&read_json(&input)?)?;
            let report = cone::validate_chamber_complex(&complex)?;
            let mut obj = Map::new();
            obj.insert(
                "bad_adjacencies".into(),
                Value::Array(
                    report
                        .bad_adjacencies
                        .iter()
                        .map(|(i, j, why)| {
                            let mut o = Map::new();
                            o.insert("chambers".into(), serde_json::json!([i, j]));
                            o.insert("reason".into(), Value::String(why.clone()));
                            Value::Object(o)
                        })
                        .collect(),
                ),
            );
            obj.insert(
                "interior_overlaps".into(),
                Value::Array(
                    report
                        .interior_overlaps
                        .iter()
                        .map(|(i, j, witness)| {
                            let mut o = Map::new();
                            o.insert("chambers".into(), serde_json::json!([i, j]));
                            o.insert(
                                "witness".into(),
                                Value::Array(witness.iter().map(bigint_to_json).collect()),
                            );
                            Value::Object(o)
                        })
                        .collect(),
                ),
            );
            obj.insert(
                "missing_shared_ray".into(),
                Value::Array(
                    report
                        .missing_shared_ray
                        .iter()
                        .map(|&i| Value::Number((i as u64).into()))
                        .collect(),
                ),
            );
            obj.insert("passed".into(), Value::Bool(report.passed()));
            let mut text = format!("passed: {}\n", report.passed());
            for i in &report.missing_shared_ray {
                text.push_str(&format!("chamber {i} does not contain the shared ray\n"));
            }
            for (i, j, witness) in &report.interior_overlaps {
                text.push_str(&format!(
                    "chambers {i} and {j} overlap in the interior (witness {})\n",
                    vector_text(witness)
                ));
            }
            for (i, j, why) in &report.bad_adjacencies {
                text.push_str(&format!("adjacency ({i}, {j}) invalid: {why}\n"));
            }
            let stdout = render(&Value::Object(obj), json, text);
            Ok(if report.passed() {
                CommandResult::ok(stdout)
            } else {
                CommandResult::negative(stdout)
            })
        }
    }
}

fn hirzebruch_row(n: u64) -> Value {
    let model = HirzebruchModel::new(n);
    let analysis = fixed_component_analysis(n);
    let mut obj = Map::new();
    let mut classes = Map::new();
    let pair =
        |c: &(BigInt, BigInt)| Value::Array(vec![bigint_to_json(&c.0), bigint_to_json(&c.1)]);
    classes.insert("C0".into(), pair(&model.c0()));
    classes.insert("C1".into(), pair(&model.c1()));
    classes.insert("antiK".into(), pair(&model.anti_canonical()));
    classes.insert("f".into(), pair(&model.fiber()));
    obj.insert("classes".into(), Value::Object(classes));
    obj.insert(
        "minus_k_dot_c0".into(),
        bigint_to_json(&analysis.minus_k_dot_c0),
    );
    obj.insert(
        "multiplicity_of_c0_in_base_locus".into(),
        Value::String(
            analysis
                .multiplicity_of_c0_in_base_locus
                .as_str()
                .to_string(),
        ),
    );
    obj.insert("n".into(), Value::Number(n.into()));
    obj.insert(
        "residual_dot_c0".into(),
        bigint_to_json(&analysis.residual_dot_c0),
    );
    obj.insert(
        "smooth_k3_cover_possible".into(),
        Value::Bool(analysis.smooth_k3_cover_possible),
    );
    Value::Object(obj)
}

fn hirzebruch_text(n: u64) -> String {
    let analysis = fixed_component_analysis(n);
    format!(
        "n={}: -K.C0={} residual.C0={} multiplicity={} smooth_K3_cover_possible={}\n",
        n,
        analysis.minus_k_dot_c0,
        analysis.residual_dot_c0,
        analysis.multiplicity_of_c0_in_base_locus.as_str(),
        analysis.smooth_k3_cover_possible
    )
}

fn run_surface(command: SurfaceCmd) -> Result<CommandResult> {
    match command {
        SurfaceCmd::Hirzebruch {
            n,
            scan,
            x,
            y,
            json,
        } => {
            if let Some(range) = scan {
                let (a, b) = parse_range(&range)?;
                let rows: Vec<Value> = (a..=b).map(hirzebruch_row).collect();
                let text: String = (a..=b).map(hirzebruch_text).collect();
                let mut out = Map::new();
                out.insert("rows".into(), Value::Array(rows));
                return Ok(CommandResult::ok(render(&Value::Object(out), json, text)));
            }
            let n = n.ok_or_else(|| Error::Parse("provide --n <n> or --scan a..b".into()))?;
            let mut row = hirzebruch_row(n);
            let mut text = hirzebruch_text(n);
            if let (Some(x), Some(y)) = (x, y) {
                let xv = parse_csv_vector(&x)?;
                let yv = parse_csv_vector(&y)?;
                if xv.len() != 2 || yv.len() != 2 {
                    return Err(Error::Parse("classes on F_n are pairs a,b".into()));
                }
                let model = HirzebruchModel::new(n);
                let product = model.intersect(
                    &(xv[0].clone(), xv[1].clone()),
                    &(yv[0].clone(), yv[1].clone()),
                );
                text.push_str(&format!("product: {product}\n"));
                row.as_object_mut()
                    .expect("row is an object")
                    .insert("product".into(), bigint_to_json(&product));
            }
            Ok(CommandResult::ok(render(&row, json, text)))
        }
        SurfaceCmd::Rr { lsq, json } => {
            let class = K3Class {
                self_intersection: linalg::int(lsq),
                nef_and_big: true,
            };
            let h0 = k3_riemann_roch(&class)?;
            let mut obj = Map::new();
            obj.insert("h0".into(), bigint_to_json(&h0));
            obj.insert("l_squared".into(), Value::Number(lsq.into()));
            let text = format!("h0 = {h0}\n");
            Ok(CommandResult::ok(render(&Value::Object(obj), json, text)))
        }
        SurfaceCmd::Classify { mori_type, json } => {
            let verdict = classify_contraction(&ContractionDescriptor::new(mori_type)?)?;
            let mut obj = Map::new();
            obj.insert("allowed".into(), Value::Bool(verdict.allowed));
            obj.insert("reason".into(), Value::String(verdict.reason.clone()));
            obj.insert("type".into(), Value::Number(mori_type.into()));
            let text = format!(
                "type {}: {}\nreason: {}\n",
                mori_type,
                if verdict.allowed {
                    "allowed"
                } else {
                    "excluded"
                },
                verdict.reason
            );
            Ok(CommandResult::ok(render(&Value::Object(obj), json, text)))
        }
    }
}

fn run_catalog(command: CatalogCmd) -> Result<CommandResult> {
    match command {
        CatalogCmd::List { catalog, json } => {
            let cat = load_catalog_opt(&catalog)?;
            let mut arr = Vec::new();
            let mut text = String::new();
            for e in &cat.entries {
                text.push_str(&format!(
                    "{}: galois_trivial={} status={} lattice={}\n",
                    e.label,
                    e.galois_trivial,
                    e.status,
                    if e.lattice.is_some() { "yes" } else { "no" }
                ));
                let mut o = Map::new();
                o.insert("galois_trivial".into(), Value::Bool(e.galois_trivial));
                o.insert("has_lattice".into(), Value::Bool(e.lattice.is_some()));
                o.insert("label".into(), Value::String(e.label.clone()));
                o.insert(
                    "status".into(),
                    Value::String(e.status.as_str().to_string()),
                );
                arr.push(Value::Object(o));
            }
            text.push_str(&format!(
                "summary: total={} excluded={} infinite={}\n",
                cat.summary.total, cat.summary.excluded, cat.summary.infinite
            ));
            let mut out = Map::new();
            out.insert("entries".into(), Value::Array(arr));
            let mut s = Map::new();
            s.insert(
                "excluded".into(),
                Value::Number(cat.summary.excluded.into()),
            );
            s.insert(
                "infinite".into(),
                Value::Number(cat.summary.infinite.into()),
            );
            s.insert("total".into(), Value::Number(cat.summary.total.into()));
            out.insert("summary".into(), Value::Object(s));
            Ok(CommandResult::ok(render(&Value::Object(out), json, text)))
        }
        CatalogCmd::Show {
            label,
            catalog,
            json,
        } => {
            let cat = load_catalog_opt(&catalog)?;
            let entry = cat.find(&label)?;
            let mut obj = Map::new();
            obj.insert("galois_trivial".into(), Value::Bool(entry.galois_trivial));
            obj.insert("label".into(), Value::String(entry.label.clone()));
            if let Some(lat) = &entry.lattice {
                obj.insert("lattice".into(), lat.to_definition_value());
            }
            obj.insert("provenance".into(), Value::String(entry.provenance.clone()));
            obj.insert(
                "status".into(),
                Value::String(entry.status.as_str().to_string()),
            );
            let mut text = format!(
                "label: {}\ngalois_trivial: {}\nstatus: {}\nprovenance: {}\n",
                entry.label, entry.galois_trivial, entry.status, entry.provenance
            );
            if let Some(lat) = &entry.lattice {
                let sig = lat.signature();
                text.push_str(&format!(
                    "lattice: rank {} signature ({}, {}) determinant {}\n",
                    lat.rank(),
                    sig.positive,
                    sig.negative,
                    lat.determinant()
                ));
            }
            Ok(CommandResult::ok(render(&Value::Object(obj), json, text)))
        }
        CatalogCmd::CrossCheck {
            catalog,
            max_walls,
            max_level,
            max_candidates,
            json,
        } => {
            let cat = load_catalog_opt(&catalog)?;
            let budget = VinbergBudget {
                max_walls,
                max_level,
                max_candidates,
            };
            let report = catalog::cross_check(&cat, &budget)?;
            let mut arr = Vec::new();
            let mut text = String::new();
            for line in &report.lines {
                text.push_str(&format!(
                    "{}: {}{}\n",
                    line.label,
                    line.finding.as_str(),
                    line.verdict
                        .map(|v| format!(" (verdict {})", v.as_str()))
                        .unwrap_or_default()
                ));
                let mut o = Map::new();
                o.insert(
                    "finding".into(),
                    Value::String(line.finding.as_str().to_string()),
                );
                o.insert("label".into(), Value::String(line.label.clone()));
                o.insert(
                    "verdict".into(),
                    match line.verdict {
                        Some(v) => Value::String(v.as_str().to_string()),
                        None => Value::Null,
                    },
                );
                arr.push(Value::Object(o));
            }
            let contradictions = report.contradictions();
            text.push_str(&format!("contradictions: {contradictions}\n"));
            let mut out = Map::new();
            out.insert(
                "contradictions".into(),
                Value::Number((contradictions as u64).into()),
            );
            out.insert("results".into(), Value::Array(arr));
            let stdout = render(&Value::Object(out), json, text);
            Ok(if contradictions == 0 {
                CommandResult::ok(stdout)
            } else {
                CommandResult::negative(stdout)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandResult {
        dispatch(std::iter::once("k3cone").chain(args.iter().copied()))
    }

    #[test]
    fn lattice_info_blocks() {
        let r = run(&["lattice", "info", "--blocks", "U"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.stdout.contains("rank: 2"));
        assert!(r.stdout.contains("signature: (1, 1)"));
        assert!(r.stdout.contains("determinant: -1"));
    }

    #[test]
    fn lattice_info_json_deterministic() {
        let a = run(&["lattice", "info", "--blocks", "DIAG(-4)", "U", "--json"]);
        let b = run(&["lattice", "info", "--blocks", "DIAG(-4)", "U", "--json"]);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["rank"], serde_json::json!(3));
    }

    #[test]
    fn vinberg_run_u_json() {
        let r = run(&["vinberg", "run", "--blocks", "U", "--v0", "1,1", "--json"]);
        assert_eq!(r.exit_code, 0);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["verdict"], serde_json::json!("TWO_REFLECTIVE"));
        assert_eq!(v["walls"], serde_json::json!([[1, -1]]));
        assert_eq!(v["chamber_rays"], serde_json::json!([[0, 1], [1, 1]]));
    }

    #[test]
    fn usage_errors_exit_two() {
        let r = run(&["nonsense"]);
        assert_eq!(r.exit_code, 2);
        assert!(!r.stderr.is_empty());
        let r = run(&["lattice", "info"]);
        assert_eq!(r.exit_code, 2);
        let r = run(&["lattice", "info", "--blocks", "DIAG(0)"]);
        assert_eq!(r.exit_code, 2);
    }

    #[test]
    fn surface_scan_table() {
        let r = run(&["surface", "hirzebruch", "--scan", "0..6", "--json"]);
        assert_eq!(r.exit_code, 0);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[5]["minus_k_dot_c0"], serde_json::json!(-3));
        assert_eq!(rows[5]["residual_dot_c0"], serde_json::json!(-1));
        assert_eq!(
            rows[5]["smooth_k3_cover_possible"],
            serde_json::json!(false)
        );
    }

    #[test]
    fn surface_rr_and_classify() {
        let r = run(&["surface", "rr", "--lsq", "8", "--json"]);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["h0"], serde_json::json!(6));
        let r = run(&["surface", "rr", "--lsq", "7"]);
        assert_eq!(r.exit_code, 2);
        let r = run(&["surface", "classify", "--type", "6", "--json"]);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["allowed"], serde_json::json!(true));
        let r = run(&["surface", "classify", "--type", "8", "--json"]);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["allowed"], serde_json::json!(false));
    }

    #[test]
    fn catalog_list_and_show() {
        let r = run(&["catalog", "list", "--json"]);
        assert_eq!(r.exit_code, 0);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["summary"]["total"], serde_json::json!(105));
        assert_eq!(v["entries"].as_array().unwrap().len(), 14);
        let r = run(&["catalog", "show", "X4 in P^4"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.stdout.contains("rank 19"));
        let r = run(&["catalog", "show", "no-such-label"]);
        assert_eq!(r.exit_code, 2);
    }
}
