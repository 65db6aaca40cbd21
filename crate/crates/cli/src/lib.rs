//! Command dispatch for the `sombor` binary.
//!
//! Exit codes: `0` success, `1` a counterexample was found, `2` usage or
//! validation error, `3` enumeration cap exceeded.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sombor_core::construct::{alternating_greedy_all, alternating_greedy_one, AlternatingTree};
use sombor_core::indices::{
    check_exchange_condition, exchange_margin, rf_index, sombor_condition_sign,
};
use sombor_core::oracle::{
    extremal_report, greedy_tree_for, local_min_check, sweep_verify, ExtremalReport, OracleError,
    DEFAULT_CAP,
};
use sombor_core::{canonical_form, DegreeSequence, EdgeFunction, InternalDegreeSequence, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Counterexample = 1,
    Usage = 2,
    CapExceeded = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    Edges,
    Dot,
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "sombor",
    version,
    about = "Extremal trees of the Sombor index for a degree sequence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct SequenceArgs {
    /// Degree sequence, e.g. "3 2 2 1 1 1" or "[3,2,2,1,1,1]"
    pub sequence: String,
    /// Read SEQUENCE as internal degrees only; leaves are added
    #[arg(long)]
    pub internal: bool,
}

#[derive(Debug, Args, Clone)]
pub struct IndexArg {
    /// Edge function: sombor, minus_sombor, product or sum
    #[arg(long = "index", alias = "f", default_value = "sombor")]
    pub index: String,
}

#[derive(Debug, Args, Clone)]
pub struct OracleArgs {
    /// Largest number of labeled trees a single enumeration may visit
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the greedy tree
    Greedy {
        #[command(flatten)]
        input: SequenceArgs,
        #[command(flatten)]
        index: IndexArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Edges)]
        format: OutputFormat,
    },
    /// Build alternating greedy trees
    Altgreedy {
        #[command(flatten)]
        input: SequenceArgs,
        #[command(flatten)]
        index: IndexArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Edges)]
        format: OutputFormat,
        /// Emit every tie variant instead of the deterministic one
        #[arg(long)]
        all: bool,
    },
    /// Evaluate an index on a tree read from an edge-list file ("-" for stdin)
    Index {
        /// Edge-list file, or "-" for stdin
        file: PathBuf,
        #[command(flatten)]
        index: IndexArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Compare both constructions with the exhaustive extrema
    Verify {
        #[command(flatten)]
        input: SequenceArgs,
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Verify every tree degree sequence up to a vertex count
    Sweep {
        /// Largest vertex count
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Check the exchange condition of an edge function on a grid
    Condition {
        #[command(flatten)]
        index: IndexArg,
        /// Largest degree value x, y, a, b take on the grid
        #[arg(long, default_value_t = 50)]
        grid: u32,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Look for an index-lowering degree-preserving edge switch
    SwitchScan {
        /// Degree sequence whose greedy tree is scanned
        #[arg(required_unless_present = "tree")]
        sequence: Option<String>,
        /// Read SEQUENCE as internal degrees only; leaves are added
        #[arg(long)]
        internal: bool,
        /// Scan the tree in this edge-list file instead
        #[arg(long, conflicts_with = "sequence")]
        tree: Option<PathBuf>,
        #[command(flatten)]
        index: IndexArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

/// Validated command with its inputs resolved.
#[derive(Debug, Clone)]
pub enum RunConfig {
    Greedy {
        sequence: DegreeSequence,
        f: EdgeFunction,
        format: OutputFormat,
    },
    Altgreedy {
        sequence: DegreeSequence,
        f: EdgeFunction,
        format: OutputFormat,
        all: bool,
    },
    Index {
        tree: Tree,
        f: EdgeFunction,
        format: OutputFormat,
    },
    Verify {
        sequence: DegreeSequence,
        f: EdgeFunction,
        cap: u64,
        format: OutputFormat,
    },
    Sweep {
        n_max: usize,
        f: EdgeFunction,
        cap: u64,
        format: OutputFormat,
    },
    Condition {
        f: EdgeFunction,
        grid_max: u32,
        format: OutputFormat,
    },
    SwitchScan {
        tree: Tree,
        f: EdgeFunction,
        format: OutputFormat,
    },
}

/// Usage or validation failure, reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

fn usage(message: impl ToString) -> UsageError {
    UsageError(message.to_string())
}

fn resolve_sequence(text: &str, internal: bool) -> Result<DegreeSequence, UsageError> {
    if internal {
        InternalDegreeSequence::parse(text)
            .and_then(|i| i.complete())
            .map_err(usage)
    } else {
        DegreeSequence::parse(text).map_err(usage)
    }
}

fn read_tree(path: &PathBuf) -> Result<Tree, UsageError> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(usage)?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    Tree::parse_edge_list(&text).map_err(usage)
}

fn edge_function(arg: &IndexArg) -> Result<EdgeFunction, UsageError> {
    EdgeFunction::from_name(&arg.index).map_err(usage)
}

fn configure_jobs(jobs: Option<usize>) -> Result<(), UsageError> {
    if let Some(jobs) = jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be positive"));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    Ok(())
}

impl RunConfig {
    pub fn from_command(command: Command) -> Result<Self, UsageError> {
        Ok(match command {
            Command::Greedy {
                input,
                index,
                format,
            } => RunConfig::Greedy {
                sequence: resolve_sequence(&input.sequence, input.internal)?,
                f: edge_function(&index)?,
                format,
            },
            Command::Altgreedy {
                input,
                index,
                format,
                all,
            } => RunConfig::Altgreedy {
                sequence: resolve_sequence(&input.sequence, input.internal)?,
                f: edge_function(&index)?,
                format,
                all,
            },
            Command::Index {
                file,
                index,
                format,
            } => RunConfig::Index {
                tree: read_tree(&file)?,
                f: edge_function(&index)?,
                format,
            },
            Command::Verify {
                input,
                index,
                oracle,
                format,
            } => {
                configure_jobs(oracle.jobs)?;
                RunConfig::Verify {
                    sequence: resolve_sequence(&input.sequence, input.internal)?,
                    f: edge_function(&index)?,
                    cap: oracle.cap,
                    format,
                }
            }
            Command::Sweep {
                n_max,
                index,
                oracle,
                format,
            } => {
                if n_max < 2 {
                    return Err(usage("--n-max must be at least 2"));
                }
                configure_jobs(oracle.jobs)?;
                RunConfig::Sweep {
                    n_max,
                    f: edge_function(&index)?,
                    cap: oracle.cap,
                    format,
                }
            }
            Command::Condition {
                index,
                grid,
                jobs,
                format,
            } => {
                if grid < 2 {
                    return Err(usage("--grid must be at least 2"));
                }
                configure_jobs(jobs)?;
                RunConfig::Condition {
                    f: edge_function(&index)?,
                    grid_max: grid,
                    format,
                }
            }
            Command::SwitchScan {
                sequence,
                internal,
                tree,
                index,
                format,
            } => {
                let tree = match (tree, sequence) {
                    (Some(path), _) => read_tree(&path)?,
                    (None, Some(text)) => greedy_tree_for(&resolve_sequence(&text, internal)?),
                    (None, None) => return Err(usage("a sequence or --tree is required")),
                };
                RunConfig::SwitchScan {
                    tree,
                    f: edge_function(&index)?,
                    format,
                }
            }
        })
    }
}

fn yes(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct TreeRecord<'a> {
    sequence: &'a DegreeSequence,
    index: &'a str,
    value: f64,
    form: String,
    edges: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a sombor_core::ConstructionTrace>,
}

fn render_tree(
    out: &mut String,
    label: &str,
    tree: &Tree,
    sequence: &DegreeSequence,
    f: &EdgeFunction,
    format: OutputFormat,
    trace: Option<&sombor_core::ConstructionTrace>,
) {
    let value = rf_index(tree, f);
    match format {
        OutputFormat::Edges => {
            let _ = writeln!(out, "# {label}: {} {value:.6}", f.name());
            out.push_str(&tree.to_edge_list());
            out.push('\n');
        }
        OutputFormat::Dot => {
            let _ = writeln!(out, "// {label}: {} {value:.6}", f.name());
            out.push_str(&tree.to_dot());
            out.push('\n');
        }
        OutputFormat::Text => {
            let _ = writeln!(out, "{label}");
            let _ = writeln!(out, "  sequence: {sequence}");
            let _ = writeln!(out, "  {}: {value:.6}", f.name());
            let _ = writeln!(out, "  form: {}", canonical_form(tree));
            let edges: Vec<String> = tree
                .edges()
                .iter()
                .map(|(u, v)| format!("{u}-{v}"))
                .collect();
            let _ = writeln!(out, "  edges: {}", edges.join(" "));
        }
        OutputFormat::Structured => {
            let record = TreeRecord {
                sequence,
                index: f.name(),
                value,
                form: canonical_form(tree).to_string(),
                edges: tree.to_edge_list(),
                trace,
            };
            out.push_str(&serde_json::to_string(&record).expect("serializable"));
            out.push('\n');
        }
    }
}

fn verdict_line(r: &ExtremalReport) -> String {
    format!(
        "min {:.6} attained by greedy: {}; max {:.6} attained by alternating greedy: {}",
        r.min_value,
        yes(r.greedy_attains_min),
        r.max_value,
        yes(r.alt_greedy_attains_max)
    )
}

fn render_report(out: &mut String, r: &ExtremalReport) {
    let _ = writeln!(out, "sequence: {}", r.sequence);
    let _ = writeln!(out, "index: {}", r.index_name);
    let _ = writeln!(out, "labeled trees: {}", r.labeled_count);
    let _ = writeln!(out, "unlabeled trees: {}", r.unlabeled_count);
    for t in &r.argmin {
        let _ = writeln!(out, "argmin: {} {:.6}", t.form, t.value);
    }
    for t in &r.argmax {
        let _ = writeln!(out, "argmax: {} {:.6}", t.form, t.value);
    }
    let _ = writeln!(out, "greedy: {} {:.6}", r.greedy_form, r.greedy_value);
    for a in &r.alt_greedy_values {
        let _ = writeln!(
            out,
            "alternating greedy: {} {:.6} attains max: {}",
            a.form,
            a.value,
            yes(a.attains_max)
        );
    }
    let _ = writeln!(out, "{}", verdict_line(r));
}

fn oracle_status(err: &OracleError) -> Status {
    match err {
        OracleError::CapExceeded { .. } => Status::CapExceeded,
        OracleError::Construct(_) => Status::Usage,
    }
}

/// Executes `config`, writing all regular output to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<Status> {
    let mut buf = String::new();
    let status = match config {
        RunConfig::Greedy {
            sequence,
            f,
            format,
        } => {
            let tree = greedy_tree_for(sequence);
            render_tree(&mut buf, "greedy tree", &tree, sequence, f, *format, None);
            Status::Success
        }
        RunConfig::Altgreedy {
            sequence,
            f,
            format,
            all,
        } => {
            let internal = sequence.internal_degrees();
            let trees: Vec<AlternatingTree> = if sequence.n() == 1 {
                let tree = Tree::single_vertex();
                vec![AlternatingTree {
                    form: canonical_form(&tree),
                    tree,
                    trace: Default::default(),
                }]
            } else if *all {
                match alternating_greedy_all(&internal) {
                    Ok(trees) => trees,
                    Err(e) => {
                        writeln!(err, "error: {e}")?;
                        return Ok(Status::CapExceeded);
                    }
                }
            } else {
                vec![alternating_greedy_one(&internal)]
            };
            for (i, alt) in trees.iter().enumerate() {
                let label = format!("alternating greedy tree {}/{}", i + 1, trees.len());
                render_tree(
                    &mut buf,
                    &label,
                    &alt.tree,
                    sequence,
                    f,
                    *format,
                    Some(&alt.trace),
                );
            }
            Status::Success
        }
        RunConfig::Index { tree, f, format } => {
            let value = rf_index(tree, f);
            match format {
                OutputFormat::Structured => {
                    let record = serde_json::json!({
                        "index": f.name(),
                        "value": value,
                        "n": tree.n(),
                        "sequence": tree.degrees(),
                        "form": canonical_form(tree).to_string(),
                    });
                    let _ = writeln!(buf, "{record}");
                }
                _ => {
                    let _ = writeln!(buf, "{}: {value:.6}", f.name());
                }
            }
            Status::Success
        }
        RunConfig::Verify {
            sequence,
            f,
            cap,
            format,
        } => match extremal_report(sequence, f, *cap) {
            Ok(report) => {
                if *format == OutputFormat::Structured {
                    let _ = writeln!(
                        buf,
                        "{}",
                        serde_json::to_string(&report).expect("serializable")
                    );
                } else {
                    render_report(&mut buf, &report);
                }
                if report.verified() {
                    Status::Success
                } else {
                    Status::Counterexample
                }
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                oracle_status(&e)
            }
        },
        RunConfig::Sweep {
            n_max,
            f,
            cap,
            format,
        } => match sweep_verify(*n_max, f, *cap) {
            Ok(summary) => {
                for r in &summary.reports {
                    if *format == OutputFormat::Structured {
                        let _ =
                            writeln!(buf, "{}", serde_json::to_string(r).expect("serializable"));
                    } else {
                        let _ = writeln!(
                            buf,
                            "n={} [{}] {}",
                            r.sequence.n(),
                            r.sequence,
                            verdict_line(r)
                        );
                    }
                }
                let failures = summary.failures();
                let summary_record = serde_json::json!({
                    "summary": {
                        "n_max": n_max,
                        "index": f.name(),
                        "sequences": summary.reports.len(),
                        "greedy_failures": summary.greedy_failures(),
                        "alternating_failures": summary.alternating_failures(),
                        "failed_sequences": failures.iter().map(|r| r.sequence.to_string()).collect::<Vec<_>>(),
                    }
                });
                if *format == OutputFormat::Structured {
                    let _ = writeln!(buf, "{summary_record}");
                } else {
                    let _ = writeln!(
                        buf,
                        "sequences: {}; greedy failures: {}; alternating failures: {}",
                        summary.reports.len(),
                        summary.greedy_failures(),
                        summary.alternating_failures()
                    );
                    for r in &failures {
                        let _ = writeln!(buf, "FAILED [{}]", r.sequence);
                    }
                }
                if failures.is_empty() {
                    Status::Success
                } else {
                    Status::Counterexample
                }
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                oracle_status(&e)
            }
        },
        RunConfig::Condition {
            f,
            grid_max,
            format,
        } => {
            let report = check_exchange_condition(f, *grid_max);
            let closed_form_agrees =
                (f.name() == "minus_sombor").then(|| closed_form_agreement(f, *grid_max));
            if *format == OutputFormat::Structured {
                let mut value = serde_json::to_value(&report).expect("serializable");
                if let Some(agrees) = closed_form_agrees {
                    value["closed_form_agrees"] = agrees.into();
                }
                let _ = writeln!(buf, "{value}");
            } else {
                let _ = writeln!(buf, "function: {}", report.function);
                let _ = writeln!(buf, "grid: {}", report.grid_max);
                let _ = writeln!(buf, "quadruples: {}", report.quadruples_checked);
                if let Some((x, y, a, b)) = report.witness {
                    let margin = exchange_margin(f, x, y, a, b);
                    let _ = writeln!(buf, "witness: x={x} y={y} a={a} b={b} margin={margin:.3e}");
                }
                if let Some((x, y, a, b)) = report.strict_witness {
                    let margin = exchange_margin(f, x, y, a, b);
                    let _ = writeln!(
                        buf,
                        "strict witness: x={x} y={y} a={a} b={b} margin={margin:.3e}"
                    );
                }
                if let Some(agrees) = closed_form_agrees {
                    let _ = writeln!(buf, "closed form agrees: {}", yes(agrees));
                }
                let _ = writeln!(
                    buf,
                    "holds: {}, strict: {}",
                    yes(report.holds),
                    yes(report.strict_holds)
                );
            }
            if report.holds && report.strict_holds && closed_form_agrees != Some(false) {
                Status::Success
            } else {
                Status::Counterexample
            }
        }
        RunConfig::SwitchScan { tree, f, format } => {
            let report = local_min_check(tree, f);
            if *format == OutputFormat::Structured {
                let _ = writeln!(
                    buf,
                    "{}",
                    serde_json::to_string(&report).expect("serializable")
                );
            } else {
                let _ = writeln!(buf, "sequence: {}", tree.degrees());
                let _ = writeln!(buf, "{}: {:.6}", f.name(), report.value);
                let _ = writeln!(buf, "valid switches: {}", report.valid_switches);
                if let Some((s, value)) = &report.improving {
                    let _ = writeln!(
                        buf,
                        "improving switch: {}-{} {}-{} {:?} -> {value:.6}",
                        s.first.0, s.first.1, s.second.0, s.second.1, s.pattern
                    );
                }
                let _ = writeln!(buf, "local minimum: {}", yes(report.is_local_min));
            }
            if report.is_local_min {
                Status::Success
            } else {
                Status::Counterexample
            }
        }
    };
    out.write_all(buf.as_bytes())?;
    Ok(status)
}

/// Whether the floating check on `f` and the exact integer sign agree on
/// every quadruple of the grid, for both the weak and the strict form.
pub fn closed_form_agreement(f: &EdgeFunction, grid_max: u32) -> bool {
    use sombor_core::TOLERANCE;
    use std::cmp::Ordering;
    for x in 1..=grid_max {
        for y in 1..=x {
            for a in 1..=grid_max {
                for b in 1..=a {
                    let margin = exchange_margin(f, x, y, a, b);
                    let sign = sombor_condition_sign(x, y, a, b);
                    if (margin >= -TOLERANCE) != (sign != Ordering::Less)
                        || (margin > TOLERANCE) != (sign == Ordering::Greater)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Status::Usage as i32
            } else {
                0
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let config = match RunConfig::from_command(cli.command) {
        Ok(config) => config,
        Err(UsageError(message)) => {
            let _ = writeln!(err, "error: {message}");
            return Status::Usage as i32;
        }
    };
    match run(&config, out, err) {
        Ok(status) => status as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Status::Usage as i32
        }
    }
}
