//! Argument parsing and the subcommands.
//!
//! Results go to standard output as JSON (compact unless `--pretty`) or as
//! text. Exit codes: 0 success, 1 domain error with a JSON reason, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;

use braidwork_core::{
    apply, boundary_invariants, germ_data, homology, list_applicable, qhd_check, qhd_diagram, qhd_script, run_script,
    scott_diagram, validate, verify_trace, Arrangement, Direction, MoveInstance, MoveKind, Trace,
};
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::input::{self, InputError};
use crate::render::{render, RenderSpec};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "braidwork", version, about = "Braided wiring diagrams: boundaries, moves, homology")]
pub struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a diagram and print its canonical form.
    Parse { input: String },
    /// Check well-formedness; exit 1 with the violations if any.
    Validate { input: String },
    /// Front, back or closed boundary braid with closure invariants.
    Boundary {
        #[arg(long, conflicts_with_all = ["back", "closed"])]
        front: bool,
        #[arg(long, conflicts_with = "closed")]
        back: bool,
        /// The boundary braid `back⁻¹ · front` (default).
        #[arg(long)]
        closed: bool,
        /// Print only the braid word.
        #[arg(long)]
        text: bool,
        input: String,
    },
    /// Garside normal form of a word (with --strands) or of a diagram's boundary.
    Nf {
        #[arg(long)]
        strands: Option<usize>,
        /// Diagram file, or with --strands a word such as "s1 s2'" ("-" reads stdin).
        input: String,
    },
    /// Closure invariants and homology counts.
    Invariants { input: String },
    /// Homology of the disk arrangement.
    Homology {
        /// Free points, NAME=COUNT; repeatable.
        #[arg(long = "free", value_name = "NAME=COUNT")]
        free: Vec<String>,
        input: String,
    },
    /// Rational-homology-disk check against the germ data of G_{k,n}.
    QhdCheck {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long = "free", value_name = "NAME=COUNT")]
        free: Vec<String>,
        input: String,
    },
    /// Apply or list moves.
    Move {
        #[command(subcommand)]
        action: MoveCommand,
    },
    /// Replay and verify move scripts.
    Script {
        #[command(subcommand)]
        action: ScriptCommand,
    },
    /// Generate family diagrams and scripts.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Render a diagram as SVG.
    Render {
        input: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long)]
        snapshot_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Dir {
    Fwd,
    Bwd,
}

#[derive(Debug, Subcommand)]
pub enum MoveCommand {
    /// Apply one move instance and print the result.
    Apply {
        input: String,
        /// Move kind, e.g. M4.
        #[arg(long, required_unless_present = "instance")]
        kind: Option<String>,
        #[arg(long, default_value = "")]
        variant: String,
        #[arg(long, default_value_t = 0)]
        pos: usize,
        /// Comma-separated integers.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
        #[arg(long, value_enum, default_value_t = Dir::Fwd)]
        dir: Dir,
        /// A whole instance as JSON, or a path to one.
        #[arg(long, conflicts_with = "kind")]
        instance: Option<String>,
        /// Skip the boundary check.
        #[arg(long)]
        no_verify: bool,
    },
    /// List the instances applicable at a position (all positions if omitted).
    List {
        input: String,
        #[arg(long)]
        pos: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScriptCommand {
    /// Replay a script on a diagram; prints the trace and its verdict.
    Run { diagram: String, script: String },
    /// Re-verify a trace file.
    Verify { trace: String },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Scott {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        json: bool,
    },
    Qhd {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Run the odd-m generator, which must still pass every gate.
        #[arg(long)]
        allow_experimental: bool,
        #[arg(long)]
        json: bool,
    },
    Script {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
}

pub enum Output {
    Json(Value),
    Text(String),
}

pub enum Failure {
    Usage(String),
    Domain { error: String, reason: String, extra: Value },
}

impl Failure {
    fn domain(error: &str, reason: impl ToString) -> Self {
        Failure::Domain { error: error.into(), reason: reason.to_string(), extra: Value::Null }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Empty => Failure::Usage("empty input".into()),
            InputError::Io { .. } => Failure::domain("io", e),
            _ => Failure::domain("input", e),
        }
    }
}

type Outcome = Result<Output, Failure>;

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let pretty = cli.pretty;
    let sub = subcommand_name(&cli.command);
    let show = |v: &Value| if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    let mut out = std::io::stdout().lock();
    match execute(cli.command) {
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{}", show(&v).expect("JSON value"));
            0
        }
        Ok(Output::Text(s)) => {
            let _ = write!(out, "{s}");
            0
        }
        Err(Failure::Usage(msg)) => {
            let mut cmd = Cli::command();
            cmd.build();
            let usage = cmd.find_subcommand_mut(sub).map(|c| c.render_usage()).unwrap_or_else(|| cmd.render_usage());
            eprintln!("error: {msg}\n\n{usage}");
            2
        }
        Err(Failure::Domain { error, reason, extra }) => {
            let mut v = json!({ "error": error, "reason": reason });
            report::merge(&mut v, extra);
            let _ = writeln!(out, "{}", show(&v).expect("JSON value"));
            1
        }
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Parse { .. } => "parse",
        Command::Validate { .. } => "validate",
        Command::Boundary { .. } => "boundary",
        Command::Nf { .. } => "nf",
        Command::Invariants { .. } => "invariants",
        Command::Homology { .. } => "homology",
        Command::QhdCheck { .. } => "qhd-check",
        Command::Move { .. } => "move",
        Command::Script { .. } => "script",
        Command::Gen { .. } => "gen",
        Command::Render { .. } => "render",
        Command::Serve { .. } => "serve",
    }
}

fn valid(input: &str) -> Result<Arrangement, Failure> {
    let a = input::load_arrangement(input)?;
    let violations = validate(a.diagram());
    if let Some(first) = violations.first() {
        return Err(Failure::Domain {
            error: "invalid diagram".into(),
            reason: first.to_string(),
            extra: json!({ "valid": false, "violations": violations }),
        });
    }
    Ok(a)
}

fn with_free(a: Arrangement, free: &[String]) -> Result<Arrangement, Failure> {
    let mut pairs = a.named_free_points();
    for item in free {
        let (name, count) = item
            .split_once(['=', ':'])
            .ok_or_else(|| Failure::Usage(format!("bad --free `{item}`, expected NAME=COUNT")))?;
        let count = count.parse().map_err(|_| Failure::Usage(format!("bad count in --free `{item}`")))?;
        pairs.insert(name.to_string(), count);
    }
    Arrangement::with_named_free_points(a.diagram().clone(), pairs).map_err(|e| Failure::domain("input", e))
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Parse { input } => {
            let a = input::load_arrangement(&input)?;
            let d = a.diagram();
            Ok(Output::Json(json!({
                "strands": d.strands(),
                "components": d.chart().names(),
                "elements": d.len(),
                "free_points": a.named_free_points(),
                "dsl": input::arrangement_to_text(&a),
                "hash": d.hash(),
                "diagram": d,
            })))
        }
        Command::Validate { input } => {
            valid(&input)?;
            Ok(Output::Json(json!({ "valid": true, "violations": [] })))
        }
        Command::Boundary { front, back, text, input, .. } => {
            let a = valid(&input)?;
            let d = a.diagram();
            let b = boundary_invariants(d).map_err(|e| Failure::domain("invalid diagram", e))?;
            let (which, word) = if front {
                ("front", &b.front)
            } else if back {
                ("back", &b.back)
            } else {
                ("closed", &b.boundary)
            };
            if text {
                return Ok(Output::Text(format!("{word}\n")));
            }
            let mut v = json!({ "which": which });
            report::merge(&mut v, report::braid_block(word));
            v["nf_hash"] = json!(word.normal_form().hash());
            v["invariants"] = report::closure_block(d, &b);
            Ok(Output::Json(v))
        }
        Command::Nf { strands, input } => {
            let word = match strands {
                Some(n) => {
                    let text = if input == "-" { input::read_source("-")? } else { input.clone() };
                    input::braid_from_text(n, &text).map_err(|e| Failure::domain("input", e))?
                }
                None => {
                    let a = valid(&input)?;
                    braidwork_core::boundary_braid(a.diagram()).map_err(|e| Failure::domain("invalid diagram", e))?
                }
            };
            let nf = word.normal_form();
            let mut v = serde_json::to_value(&nf).expect("normal form serializes");
            report::merge(
                &mut v,
                json!({ "canonical": nf.canonical_text(), "hash": nf.hash(), "word": nf.to_word().to_string() }),
            );
            Ok(Output::Json(v))
        }
        Command::Invariants { input } => {
            let a = valid(&input)?;
            let mut v = report::invariants(&a).map_err(|e| Failure::domain("invalid diagram", e))?;
            v["boundary_hash"] = v["nf_hash"].clone();
            Ok(Output::Json(v))
        }
        Command::Homology { free, input } => {
            let a = with_free(valid(&input)?, &free)?;
            let h = homology(&a).map_err(|e| Failure::domain("homology", e))?;
            Ok(Output::Json(report::homology_block(&h)))
        }
        Command::QhdCheck { k, n, free, input } => {
            let a = with_free(valid(&input)?, &free)?;
            let g = germ_data(k, n).map_err(|e| Failure::domain("parameter", e))?;
            let v = qhd_check(&a, &g).map_err(|e| Failure::domain("qhd-check", e))?;
            Ok(Output::Json(serde_json::to_value(&v).expect("verdict serializes")))
        }
        Command::Move { action } => move_command(action),
        Command::Script { action } => script_command(action),
        Command::Gen { what } => gen_command(what),
        Command::Render { input, out } => {
            let a = valid(&input)?;
            let svg = render(&a, &RenderSpec::default()).map_err(|e| Failure::domain("invalid diagram", e))?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &svg).map_err(|e| Failure::domain("io", e))?;
                    Ok(Output::Json(json!({ "written": path, "bytes": svg.len() })))
                }
                None => Ok(Output::Text(svg)),
            }
        }
        Command::Serve { port, host, snapshot_dir } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::domain("io", e))?;
            rt.block_on(crate::server::serve(SocketAddr::new(host, port), snapshot_dir))
                .map_err(|e| Failure::domain("io", e))?;
            Ok(Output::Text(String::new()))
        }
    }
}

fn parse_kind(kind: &str) -> Result<MoveKind, Failure> {
    serde_json::from_value(Value::String(kind.to_uppercase()))
        .map_err(|_| Failure::Usage(format!("unknown move kind `{kind}`")))
}

fn parse_params(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("bad parameter `{t}`"))))
        .collect()
}

fn move_command(action: MoveCommand) -> Outcome {
    match action {
        MoveCommand::Apply { input, kind, variant, pos, params, dir, instance, no_verify } => {
            let a = valid(&input)?;
            let inst = match instance {
                Some(text) => {
                    let text = if text.trim_start().starts_with('{') { text } else { input::read_source(&text)? };
                    serde_json::from_str::<MoveInstance>(&text).map_err(|e| Failure::domain("input", e))?
                }
                None => {
                    let kind = parse_kind(kind.as_deref().unwrap_or_default())?;
                    let dir = match dir {
                        Dir::Fwd => Direction::Fwd,
                        Dir::Bwd => Direction::Bwd,
                    };
                    MoveInstance::new(kind, &variant, pos, &parse_params(&params)?, dir)
                }
            };
            let before = report::boundary_hash(a.diagram());
            let r = apply(a.diagram(), &inst, !no_verify).map_err(|e| Failure::Domain {
                error: "move failed".into(),
                reason: e.to_string(),
                extra: json!({ "instance": inst }),
            })?;
            let next = a.with_diagram(r.diagram.clone());
            let after = report::boundary_hash(next.diagram());
            Ok(Output::Json(json!({
                "instance": inst,
                "description": inst.to_string(),
                "guarantee": r.guarantee,
                "conjugator": r.conjugator.as_ref().map(ToString::to_string),
                "verified": r.verified,
                "dsl": input::arrangement_to_text(&next),
                "hash": next.diagram().hash(),
                "previous_boundary_hash": before,
                "boundary_hash": after,
                "boundary_unchanged": before == after,
            })))
        }
        MoveCommand::List { input, pos } => {
            let a = valid(&input)?;
            let d = a.diagram();
            if let Some(p) = pos.filter(|&p| p > d.len()) {
                return Err(Failure::domain("bad position", format!("position {p} is past the last element ({})", d.len())));
            }
            let positions: Vec<usize> = pos.map_or_else(|| (0..=d.len()).collect(), |p| vec![p]);
            let list: Vec<MoveInstance> = positions.into_iter().flat_map(|p| list_applicable(d, p)).collect();
            let descriptions: Vec<String> = list.iter().map(ToString::to_string).collect();
            Ok(Output::Json(json!({ "pos": pos, "moves": list, "descriptions": descriptions })))
        }
    }
}

fn script_command(action: ScriptCommand) -> Outcome {
    match action {
        ScriptCommand::Run { diagram, script } => {
            let a = valid(&diagram)?;
            let script = input::script_from_text(&input::read_source(&script)?)?;
            let trace = run_script(a.diagram(), &script).map_err(|e| Failure::Domain {
                error: "script failed".into(),
                reason: e.to_string(),
                extra: json!({ "step": e.step }),
            })?;
            let verdict = verify_trace(&trace);
            let mut v = serde_json::to_value(&trace).expect("trace serializes");
            v["verdict"] = json!(verdict);
            v["boundary_hash"] = json!(report::boundary_hash(&trace.final_diagram));
            Ok(Output::Json(v))
        }
        ScriptCommand::Verify { trace } => {
            let t: Trace = serde_json::from_str(&input::read_source(&trace)?).map_err(|e| Failure::domain("input", e))?;
            if verify_trace(&t) {
                Ok(Output::Json(json!({ "verdict": true, "steps": t.steps.len() })))
            } else {
                Err(Failure::Domain {
                    error: "trace does not verify".into(),
                    reason: "a replayed step, hash or conjugator differs from the record".into(),
                    extra: json!({ "verdict": false }),
                })
            }
        }
    }
}

fn gen_command(what: GenCommand) -> Outcome {
    let family = |r: Result<braidwork_core::FamilyDiagram, _>, as_json: bool| -> Outcome {
        let f = r.map_err(|e: braidwork_core::FamilyError| Failure::domain("generator", e))?;
        if as_json {
            Ok(Output::Json(serde_json::to_value(&f).expect("family diagram serializes")))
        } else {
            Ok(Output::Text(input::arrangement_to_text(&f.arrangement)))
        }
    };
    match what {
        GenCommand::Scott { k, json } => family(scott_diagram(k), json),
        GenCommand::Qhd { k, allow_experimental, json } => family(qhd_diagram(k, allow_experimental), json),
        GenCommand::Script { k } => {
            let s = qhd_script(k).map_err(|e| Failure::domain("generator", e))?;
            Ok(Output::Json(serde_json::to_value(&s).expect("script serializes")))
        }
    }
}
