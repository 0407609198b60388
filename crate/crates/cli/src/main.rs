use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fclosure::closure::{Closure, ProbeSpec};
use fclosure::completion::{verify_semicompletion, SemiCompletion, DEFAULT_PATH_LIMIT};
use fclosure::diagram::format_diagram;
use fclosure::hardness::{encode, GroupPresentation};
use fclosure::rewriting::{format_system, CAP_ENV};
use fclosure::stallings::{format_core, parse_core, Core, Rejection, Verdict};
use fclosure::thompson::{
    format_element, format_generators, parse_element, parse_f_word, parse_generators, TreeDiagram,
};

const SCHEMA: u32 = 1;

/// Closed subgroups of Thompson's group F via diagram groups.
#[derive(Parser)]
#[command(name = "fclosure", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect elements of F.
    #[command(subcommand)]
    Element(ElementCmd),
    /// Build the core of a subgroup and test membership in its closure.
    #[command(subcommand)]
    Core(CoreCmd),
    /// Build and verify the semi-completion of a core system.
    #[command(subcommand)]
    Completion(CompletionCmd),
    /// Generators, factorization and distortion of the closure.
    #[command(subcommand)]
    Closure(ClosureCmd),
    /// Encode a group presentation as a tree rewriting system.
    #[command(subcommand)]
    Hardness(HardnessCmd),
    /// Same as `closure probe`.
    Probe(ProbeArgs),
}

#[derive(Args)]
struct ElementInput {
    /// Element file with one `u -> v` branch pair per line.
    #[arg(short, long, conflicts_with = "word", required_unless_present = "word")]
    element: Option<PathBuf>,
    /// A word in the standard generators, such as `x0 X1 x2^2`.
    #[arg(short, long)]
    word: Option<String>,
}

#[derive(Subcommand)]
enum ElementCmd {
    /// Branch pairs and the piecewise-linear table of an element.
    Show(ElementInput),
}

#[derive(Subcommand)]
enum CoreCmd {
    /// Fold the generators of a subgroup into its core.
    Build {
        /// Generator file: elements separated by `---` lines.
        #[arg(short, long)]
        generators: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a Graphviz rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide whether an element lies in the closure.
    Member {
        #[arg(short, long)]
        core: PathBuf,
        #[command(flatten)]
        input: ElementInput,
    },
}

#[derive(Subcommand)]
enum CompletionCmd {
    /// Semi-complete a core system and verify the result.
    Build {
        #[arg(short, long)]
        core: PathBuf,
        /// Where to write the rules of `P′`.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Longest path enumerated by the divisor checks.
        #[arg(short = 'L', long)]
        length: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_PATH_LIMIT)]
        path_limit: usize,
    },
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(short, long)]
    core: PathBuf,
    /// Number of samples.
    #[arg(short = 'n', long, default_value_t = 1000)]
    samples: usize,
    /// Longest product of generators sampled.
    #[arg(long, default_value_t = 10)]
    max_length: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Length cap for derivation searches.
    #[arg(long)]
    cap: Option<usize>,
    /// Write the JSON report here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ClosureCmd {
    /// The generating set of the closure.
    Gens {
        #[arg(short, long)]
        core: PathBuf,
        /// Where to write the generators as branch pairs.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the loop diagrams over `P′`.
        #[arg(long)]
        loops: Option<PathBuf>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Write an element of the closure as a word in the generators.
    Factorize {
        #[arg(short, long)]
        core: PathBuf,
        #[command(flatten)]
        input: ElementInput,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Compare factorization length with diagram size on random elements.
    Probe(ProbeArgs),
}

#[derive(Subcommand)]
enum HardnessCmd {
    /// Balance, positivize and tree-encode a presentation.
    Encode {
        /// Presentation file: `gens: a b` and `rel: a b A B` lines.
        #[arg(short, long)]
        presentation: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write `{}`", path.display()))
}

fn load_core(path: &Path) -> Result<Core> {
    parse_core(&read(path)?).with_context(|| format!("invalid core file `{}`", path.display()))
}

fn load_element(input: &ElementInput) -> Result<TreeDiagram> {
    match (&input.element, &input.word) {
        (Some(path), _) => parse_element(&read(path)?)
            .with_context(|| format!("invalid element file `{}`", path.display())),
        (None, Some(w)) => parse_f_word(w).with_context(|| format!("invalid word `{w}`")),
        (None, None) => bail!("an element file or a word is required"),
    }
}

fn load_closure(path: &Path, cap: Option<usize>) -> Result<Closure> {
    let core = load_core(path)?;
    let sc = SemiCompletion::new(&core)
        .with_context(|| format!("semi-completion of `{}`", path.display()))?;
    Closure::new(&sc, cap).with_context(|| format!("closure of `{}`", path.display()))
}

/// Text or JSON output of one command.
struct Report {
    text: String,
    json: Value,
}

fn element(cmd: ElementCmd) -> Result<Report> {
    let ElementCmd::Show(input) = cmd;
    let g = load_element(&input)?;
    let pl = g.pl_map();
    let pieces: Vec<Value> = pl
        .pieces()
        .iter()
        .map(|p| json!({"breakpoint": p.start.to_string(), "value": p.value.to_string(), "slope_log2": p.slope_log2}))
        .collect();
    Ok(Report {
        text: format!("{}\n{pl}", format_element(&g)),
        json: json!({"carets": g.carets(), "branch_pairs": format_element(&g), "pieces": pieces}),
    })
}

fn core(cmd: CoreCmd) -> Result<Report> {
    match cmd {
        CoreCmd::Build {
            generators,
            output,
            dot,
        } => {
            let gens = parse_generators(&read(&generators)?)
                .with_context(|| format!("invalid generator file `{}`", generators.display()))?;
            let c = Core::build(&gens)?;
            let text = format_core(&c);
            if let Some(path) = &output {
                write(path, &text)?;
            }
            if let Some(path) = &dot {
                write(path, &c.to_dot())?;
            }
            let (v, e, f) = (c.vertex_count(), c.edges().len(), c.cells().len());
            Ok(Report {
                text: match output {
                    Some(_) => format!("vertices {v}, edges {e}, cells {f}\n"),
                    None => text,
                },
                json: json!({"vertices": v, "edges": e, "cells": f, "stats": c.stats(), "rules": rules(c.system())}),
            })
        }
        CoreCmd::Member { core, input } => {
            let c = load_core(&core)?;
            let g = load_element(&input)?;
            Ok(match c.membership(&g)? {
                Verdict::Accepted(d) => Report {
                    text: "true\n".into(),
                    json: json!({"member": true, "cells": d.cell_count()}),
                },
                Verdict::Rejected(r) => Report {
                    text: format!("false\n{}\n", describe(&r)),
                    json: json!({"member": false, "rejection": r}),
                },
            })
        }
    }
}

fn describe(r: &Rejection) -> String {
    match r {
        Rejection::NoRule { half, cell, label } => {
            format!("no rule has right-hand side `{label}` (cell {cell} of the {half:?} half)")
                .to_lowercase()
        }
        Rejection::BottomMismatch { positive, negative } => {
            format!("the halves end in different paths: `{positive}` and `{negative}`")
        }
    }
}

fn rules(rs: &fclosure::rewriting::RewritingSystem) -> Vec<String> {
    (0..rs.rules().len()).map(|i| rs.format_rule(i)).collect()
}

fn completion(cmd: CompletionCmd) -> Result<Report> {
    let CompletionCmd::Build {
        core,
        output,
        length,
        path_limit,
    } = cmd;
    let c = load_core(&core)?;
    let sc = SemiCompletion::new(&c)?;
    let report = verify_semicompletion(&sc, length, path_limit)?;
    if let Some(path) = &output {
        write(path, &format_system(sc.combined()))?;
    }
    if let Some(failed) = report.checks.iter().find(|c| !c.passed && !c.skipped) {
        bail!(
            "check `{}` failed on `{}`: {}",
            failed.name,
            core.display(),
            failed
                .counterexample
                .as_deref()
                .unwrap_or("no counterexample recorded")
        );
    }
    let mut text = String::new();
    for check in &report.checks {
        let status = if check.skipped { "skipped" } else { "ok" };
        text.push_str(&format!(
            "{:<16} {status} ({} checked)\n",
            check.name, check.checked
        ));
    }
    if output.is_none() {
        text.push_str(&format_system(sc.combined()));
    }
    Ok(Report {
        text,
        json: json!({
            "r_iota": sc.r_iota().len(),
            "r_tau": sc.r_tau().len(),
            "rules": rules(sc.combined()),
            "verification": report,
        }),
    })
}

fn probe(args: ProbeArgs) -> Result<Report> {
    let cl = load_closure(&args.core, args.cap)?;
    let spec = ProbeSpec {
        samples: args.samples,
        max_length: args.max_length,
        seed: args.seed,
    };
    let report = cl.distortion_probe(&spec)?;
    let body = serde_json::to_string_pretty(&report)? + "\n";
    let text = format!(
        "samples {}, generators {}, max ratio {:.4}, bound violations {}\n",
        report.samples.len(),
        report.generators,
        report.max_ratio,
        report.violations
    );
    if let Some(path) = &args.output {
        write(path, &body)?;
    }
    if report.violations > 0 {
        bail!(
            "bound |word| <= 3N violated by {} samples",
            report.violations
        );
    }
    Ok(Report {
        text,
        json: serde_json::to_value(&report)?,
    })
}

fn closure(cmd: ClosureCmd) -> Result<Report> {
    match cmd {
        ClosureCmd::Gens {
            core,
            output,
            loops,
            cap,
        } => {
            let cl = load_closure(&core, cap)?;
            let elements: Vec<TreeDiagram> = cl
                .generators_y()
                .iter()
                .map(|y| y.element.clone())
                .collect();
            if let Some(path) = &output {
                write(path, &format_generators(&elements))?;
            }
            if let Some(path) = &loops {
                let text: Vec<String> = cl
                    .generators_x()
                    .iter()
                    .map(|x| format_diagram(&x.loop_diagram))
                    .collect();
                write(path, &text.join("---\n"))?;
            }
            let s = cl.stats();
            let mut text = format!("X {}, Y {}, bound m+f-n {}\n", s.x, s.y, s.bound);
            for x in cl.generators_x() {
                text.push_str(&format!(
                    "x{}: {}\n",
                    x.index,
                    cl.combined().format_rule(x.rule)
                ));
            }
            if output.is_none() && !elements.is_empty() {
                text.push_str(&format_generators(&elements));
            }
            let gens: Vec<Value> = cl
                .generators_x()
                .iter()
                .zip(&elements)
                .map(|(x, g)| json!({"index": x.index, "rule": cl.combined().format_rule(x.rule), "element": format_element(g)}))
                .collect();
            Ok(Report {
                text,
                json: json!({"stats": s, "generators": gens}),
            })
        }
        ClosureCmd::Factorize { core, input, cap } => {
            let cl = load_closure(&core, cap)?;
            let g = load_element(&input)?;
            let f = cl.factorize_element(&g)?;
            if !f.bound_holds {
                bail!(
                    "bound |word| <= 3N violated: {} letters for {} cells",
                    f.word.len(),
                    f.cells
                );
            }
            Ok(Report {
                text: format!(
                    "{}\nlength {}, cells {}, bound holds\n",
                    f.word,
                    f.word.len(),
                    f.cells
                ),
                json: json!({"word": f.word.to_string(), "length": f.word.len(), "cells": f.cells, "bound_holds": f.bound_holds}),
            })
        }
        ClosureCmd::Probe(args) => probe(args),
    }
}

fn hardness(cmd: HardnessCmd) -> Result<Report> {
    let HardnessCmd::Encode {
        presentation,
        output,
    } = cmd;
    let gp = GroupPresentation::parse(&read(&presentation)?)
        .with_context(|| format!("invalid presentation `{}`", presentation.display()))?;
    let enc = encode(&gp)?;
    let text = format_system(&enc.system);
    if let Some(path) = &output {
        write(path, &text)?;
    }
    let relations: Vec<String> = enc
        .presentation
        .relations
        .iter()
        .map(|(lhs, rhs)| {
            format!(
                "{} = a{rhs}",
                lhs.iter()
                    .map(|g| format!("a{g}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        })
        .collect();
    Ok(Report {
        text: match output {
            Some(_) => format!(
                "letters {}, rules {}\n",
                enc.system.alphabet_size(),
                enc.system.rules().len()
            ),
            None => text,
        },
        json: json!({
            "letters": enc.system.alphabet_size(),
            "rules": rules(&enc.system),
            "relations": relations,
        }),
    })
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Element(c) => element(c),
        Command::Core(c) => core(c),
        Command::Completion(c) => completion(c),
        Command::Closure(c) => closure(c),
        Command::Hardness(c) => hardness(c),
        Command::Probe(a) => probe(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.json;
    if let Ok(v) = std::env::var(CAP_ENV) {
        if v.trim().parse::<usize>().map_or(true, |c| c == 0) {
            eprintln!("error: {CAP_ENV} must be a positive integer, got `{v}`");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(report) => {
            if as_json {
                let mut body = report.json;
                if let Value::Object(map) = &mut body {
                    map.insert("schema".into(), json!(SCHEMA));
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&body).expect("serializable report")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
