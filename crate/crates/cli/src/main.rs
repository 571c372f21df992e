use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sga_core::algebra::parse_word;
use sga_core::builders::{self, DigraphSkeleton, SftSpec};
use sga_core::io::{self, IoError};
use sga_core::ktheory::{self, K0Result};
use sga_core::props::{self, Bounds, CHECK_NAMES};
use sga_core::rep::{show_projection, BlockMode, RepModel};
use sga_core::{Algebra, ElementId, Leg, Rational, Semigraph};

/// Environment variable holding the worker thread count.
const THREADS_VAR: &str = "SGA_THREADS";

/// Atoms whose expansion would exceed this many `(1 − Q_t)` factors are
/// printed in product form.
const MAX_EXPANDED_FACTORS: usize = 12;

#[derive(Parser)]
#[command(name = "sga", version, about = "Finite k-semigraphs and their *-algebras")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Block family of the representation model.
    #[arg(long, global = true, value_enum, default_value_t = Blocks::All)]
    blocks: Blocks,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Blocks {
    All,
    Antichains,
}

impl From<Blocks> for BlockMode {
    fn from(b: Blocks) -> Self {
        match b {
            Blocks::All => BlockMode::AllSubsets,
            Blocks::Antichains => BlockMode::Antichains,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a semigraph document.
    Validate { file: PathBuf },
    /// Summarise a semigraph.
    Info { file: PathBuf },
    /// Normal form of a token word such as "a* b".
    Nf { file: PathBuf, word: String },
    /// Minimal common extensions of two elements.
    Mce {
        file: PathBuf,
        x: String,
        y: String,
        /// Work in the unitisation; "1" names the unit.
        #[arg(long)]
        unital: bool,
    },
    /// Dimension of the algebra.
    Dim { file: PathBuf },
    /// K-theory through the atoms of the projection ring.
    K0 { file: PathBuf },
    /// Run one checker or the whole suite.
    Check {
        file: PathBuf,
        /// Checker name; all checkers when omitted.
        name: Option<String>,
        /// Uniform enumeration bound.
        #[arg(long)]
        bounds: Option<usize>,
    },
    /// Dump the block model.
    Blocks {
        file: PathBuf,
        /// Dump the operator of this token word instead of the generators.
        #[arg(long)]
        word: Option<String>,
    },
    /// Build a semigraph.
    Build {
        #[command(subcommand)]
        builder: Builder,
        /// Output file; standard output when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Builder {
    /// One vertex with n loops, words up to the cut length.
    Zeta {
        #[arg(long)]
        loops: usize,
        #[arg(long)]
        cut: usize,
    },
    /// Path semigraph of a digraph.
    Path(PathArgs),
    /// Shift of finite type.
    Sft(SftArgs),
    /// Product of two semigraphs.
    Product { left: PathBuf, right: PathBuf },
    /// Segment closure of a subset.
    Close {
        file: PathBuf,
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        subset: Vec<String>,
    },
}

#[derive(Args)]
struct PathArgs {
    #[arg(long = "vertex", required = true)]
    vertices: Vec<String>,
    /// Edge as id:source:range.
    #[arg(long = "edge")]
    edges: Vec<String>,
    #[arg(long)]
    cut: usize,
}

#[derive(Args)]
struct SftArgs {
    /// Comma-separated symbols.
    #[arg(long, value_delimiter = ',', required = true)]
    alphabet: Vec<String>,
    /// Forbidden word; symbols separated by '.', or one symbol per character.
    #[arg(long = "forbid")]
    forbidden: Vec<String>,
    #[arg(long)]
    cut: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            report_error(&e, cli.json);
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = value.parse().with_context(|| format!("{THREADS_VAR}={value:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn report_error(e: &anyhow::Error, json: bool) {
    match (e.downcast_ref::<IoError>(), json) {
        (Some(io_err), true) => print_line(&serde_json::to_string_pretty(&io_err.document()).unwrap()),
        (Some(IoError::Invalid(report)), false) => {
            eprintln!("invalid semigraph:");
            for v in &report.violations {
                eprintln!("  {v}");
            }
        }
        (_, true) => print_line(&json!({"error": "failure", "message": format!("{e:#}")}).to_string()),
        _ => eprintln!("error: {e:#}"),
    }
}

fn load(path: &Path) -> Result<Semigraph> {
    Ok(io::read_file(path)?)
}

/// Writes one line to standard output; a closed pipe is not an error.
fn print_line(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn emit(cli: &Cli, value: Value, text: impl FnOnce() -> String) {
    if cli.json {
        print_line(&serde_json::to_string_pretty(&value).unwrap());
    } else {
        print_line(&text());
    }
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Validate { file } => {
            let sg = load(file)?;
            emit(cli, json!({"valid": true, "elements": sg.len(), "rank": sg.rank()}), || {
                format!("valid: {} elements, rank {}", sg.len(), sg.rank())
            });
        }
        Command::Info { file } => info(cli, &load(file)?),
        Command::Nf { file, word } => {
            let sg = load(file)?;
            let nf = Algebra::new(&sg).parse_normal_form::<Rational>(word)?;
            let shown = nf.display(&sg).to_string();
            let terms: Vec<Value> = nf
                .terms()
                .map(|(w, c)| json!({"word": w.display(&sg).to_string(), "coefficient": c.to_string()}))
                .collect();
            emit(cli, json!({"normal_form": shown, "terms": terms}), || shown.clone());
        }
        Command::Mce { file, x, y, unital } => mce(cli, &load(file)?, x, y, *unital)?,
        Command::Dim { file } => {
            let sg = load(file)?;
            let model = RepModel::new(&sg, cli.blocks.into())?;
            let dim = model.algebra_dimension();
            emit(cli, json!({"dimension": dim, "model_dimension": model.dim()}), || format!("dimension: {dim}"));
        }
        Command::K0 { file } => {
            let sg = load(file)?;
            let res = ktheory::k0(&sg)?;
            k0_output(cli, &sg, &res);
        }
        Command::Check { file, name, bounds } => return check(cli, &load(file)?, name.as_deref(), *bounds),
        Command::Blocks { file, word } => blocks(cli, &load(file)?, word.as_deref())?,
        Command::Build { builder, output } => {
            let sg = build(builder)?;
            match output {
                Some(path) => io::write_file(path, &sg)?,
                None => print_line(&io::serialize(&sg)),
            }
        }
    }
    Ok(true)
}

fn info(cli: &Cli, sg: &Semigraph) {
    let elements: Vec<Value> = sg
        .ids()
        .map(|x| {
            json!({
                "id": sg.name(x),
                "degree": sg.degree(x).coords(),
                "source": sg.name(sg.source(x)),
                "range": sg.name(sg.range(x)),
            })
        })
        .collect();
    let products = sg.ids().flat_map(|x| sg.ids().filter(move |&y| sg.product(x, y).is_some())).count();
    let vertices: Vec<&str> = sg.vertices().iter().map(|&v| sg.name(v)).collect();
    emit(
        cli,
        json!({
            "rank": sg.rank(),
            "elements": sg.len(),
            "vertices": vertices,
            "defined_products": products,
            "fingerprint": format!("{:016x}", sg.fingerprint()),
            "table": elements,
        }),
        || {
            let mut out = format!(
                "rank: {}\nelements: {}\nvertices: {}\ndefined products: {products}",
                sg.rank(),
                sg.len(),
                vertices.join(", ")
            );
            for x in sg.ids() {
                out += &format!(
                    "\n  {}  degree {}  source {}  range {}",
                    sg.name(x),
                    sg.degree(x),
                    sg.name(sg.source(x)),
                    sg.name(sg.range(x))
                );
            }
            out
        },
    );
}

fn mce(cli: &Cli, sg: &Semigraph, x: &str, y: &str, unital: bool) -> Result<()> {
    let pairs: Vec<(String, String)> = if unital {
        let leg = |s: &str| -> Result<Leg> {
            if s == "1" {
                return Ok(Leg::Unit);
            }
            let e = sg.lookup(s)?;
            if sg.is_vertex(e) {
                bail!("{s} has degree 0 and is not in the unitisation");
            }
            Ok(Leg::Elem(e))
        };
        sg.min_common_extensions_unital(leg(x)?, leg(y)?)
            .into_iter()
            .map(|(a, b)| (sg.leg_name(a).to_string(), sg.leg_name(b).to_string()))
            .collect()
    } else {
        let (ex, ey) = (sg.lookup(x)?, sg.lookup(y)?);
        sg.min_common_extensions(ex, ey).iter().map(|&(a, b)| (sg.name(a).to_string(), sg.name(b).to_string())).collect()
    };
    let value = json!({
        "x": x,
        "y": y,
        "extensions": pairs.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
    });
    emit(cli, value, || {
        if pairs.is_empty() {
            format!("no common extensions of {x} and {y}")
        } else {
            pairs.iter().map(|(a, b)| format!("({a}, {b})")).collect::<Vec<_>>().join("\n")
        }
    });
    Ok(())
}

fn atom_text(sg: &Semigraph, atom: &ktheory::Atom) -> String {
    let source = atom.top.source(sg);
    let outside: Vec<ElementId> = sg
        .ids()
        .filter(|&t| atom.support.binary_search(&t).is_err() && Some(sg.source(t)) == source)
        .collect();
    if outside.len() <= MAX_EXPANDED_FACTORS {
        return atom.element::<Rational>(sg).display(sg).to_string();
    }
    let mut out = show_projection(sg, &atom.top);
    for t in outside {
        out += &format!("·(1 - Q_{{{}}})", sg.name(t));
    }
    out
}

fn k0_output(cli: &Cli, sg: &Semigraph, res: &K0Result) {
    let atoms: Vec<(String, Vec<String>)> =
        res.atoms.iter().map(|a| (atom_text(sg, a), a.support_names(sg))).collect();
    let incidence: Vec<(String, &Vec<usize>)> = sg.ids().map(|t| (sg.name(t).to_string(), &res.incidence[t.index()])).collect();
    let value = json!({
        "rank": res.rank,
        "k1": res.k1,
        "atoms": atoms.iter().enumerate().map(|(i, (e, s))| json!({"index": i, "element": e, "support": s})).collect::<Vec<_>>(),
        "incidence": incidence.iter().map(|(t, a)| json!({"generator": t, "atoms": a})).collect::<Vec<_>>(),
    });
    emit(cli, value, || {
        let mut out = format!("K0 rank: {}, K1: {}\natoms:", res.rank, res.k1);
        for (i, (e, s)) in atoms.iter().enumerate() {
            out += &format!("\n  [{i}] {e}    below Q_t for t in {{{}}}", s.join(", "));
        }
        out += "\nincidence:";
        for (t, a) in &incidence {
            let idx: Vec<String> = a.iter().map(|i| i.to_string()).collect();
            out += &format!("\n  [Q_{{{t}}}] = {}", if idx.is_empty() { "0".to_string() } else { idx.iter().map(|i| format!("[{i}]")).collect::<Vec<_>>().join(" + ") });
        }
        out
    });
}

fn check(cli: &Cli, sg: &Semigraph, name: Option<&str>, bounds: Option<usize>) -> Result<bool> {
    let bounds = bounds.map(Bounds::uniform).unwrap_or_default();
    let model = RepModel::new(sg, cli.blocks.into())?;
    let reports = match name {
        None => props::run_suite(&model, bounds),
        Some(n) => vec![props::run_named(&model, n, bounds)
            .ok_or_else(|| anyhow!("unknown checker {n:?}; expected one of {}", CHECK_NAMES.join(", ")))?],
    };
    let passed = reports.iter().all(|r| r.passed());
    emit(cli, json!({"passed": passed, "reports": reports}), || {
        let lines: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
        lines.join("\n")
    });
    Ok(passed)
}

fn blocks(cli: &Cli, sg: &Semigraph, word: Option<&str>) -> Result<()> {
    let model = RepModel::new(sg, cli.blocks.into())?;
    let names = |xs: &[ElementId]| xs.iter().map(|&x| sg.name(x).to_string()).collect::<Vec<_>>();
    let mut records = Vec::new();
    match word {
        Some(w) => {
            let tokens = parse_word(sg, w)?;
            let op = model.letter_product::<Rational>(&tokens);
            for (b, entries) in op.block_entries(&model) {
                let block = &model.blocks()[b];
                records.push(json!({
                    "block": block.label_names(sg),
                    "basis": names(&block.basis),
                    "word": w,
                    "entries": entries.iter().map(|(r, c, v)| json!([r, c, v.to_integer().to_string().parse::<i64>().ok()])).collect::<Vec<_>>(),
                }));
            }
        }
        None => {
            for (b, block) in model.blocks().iter().enumerate() {
                let generators: Vec<Value> = sg
                    .edges()
                    .map(|t| {
                        let entries: Vec<[usize; 3]> = model
                            .generator_map(t, b)
                            .iter()
                            .enumerate()
                            .filter_map(|(c, r)| r.map(|r| [r, c, 1]))
                            .collect();
                        json!({"generator": sg.name(t), "entries": entries})
                    })
                    .collect();
                records.push(json!({"block": block.label_names(sg), "basis": names(&block.basis), "generators": generators}));
            }
        }
    }
    let value = json!({"dimension": model.dim(), "blocks": records});
    emit(cli, value.clone(), || {
        let mut out = format!("model dimension: {}", model.dim());
        for r in value["blocks"].as_array().unwrap() {
            out += &format!("\nblock {} basis [{}]", r["block"].as_str().unwrap(), join_strings(&r["basis"]));
            if let Some(gens) = r["generators"].as_array() {
                for g in gens {
                    out += &format!("\n  {}: {}", g["generator"].as_str().unwrap(), triples(&g["entries"]));
                }
            } else {
                out += &format!("\n  {}: {}", r["word"].as_str().unwrap(), triples(&r["entries"]));
            }
        }
        out
    });
    Ok(())
}

fn join_strings(v: &Value) -> String {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect::<Vec<_>>().join(", ")
}

fn triples(v: &Value) -> String {
    let items: Vec<String> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|t| format!("({} {} {})", t[0], t[1], t[2]))
        .collect();
    if items.is_empty() {
        "0".to_string()
    } else {
        items.join(" ")
    }
}

fn split_word(text: &str) -> Vec<String> {
    if text.contains('.') {
        text.split('.').map(str::to_string).collect()
    } else {
        text.chars().map(|c| c.to_string()).collect()
    }
}

fn build(builder: &Builder) -> Result<Semigraph> {
    Ok(match builder {
        Builder::Zeta { loops, cut } => {
            if *loops == 0 || *cut == 0 {
                bail!("--loops and --cut must be at least 1");
            }
            builders::build_zeta(*loops, *cut)
        }
        Builder::Path(args) => {
            let vertices: Vec<&str> = args.vertices.iter().map(String::as_str).collect();
            let mut skeleton = DigraphSkeleton::new(&vertices);
            for e in &args.edges {
                let parts: Vec<&str> = e.split(':').collect();
                let [id, source, range] = parts[..] else { bail!("edge {e:?} is not of the form id:source:range") };
                skeleton = skeleton.edge(id, source, range);
            }
            skeleton.check().map_err(|e| anyhow!(e))?;
            if args.cut == 0 {
                bail!("--cut must be at least 1");
            }
            builders::build_path(&skeleton, args.cut)
        }
        Builder::Sft(args) => {
            let spec = SftSpec {
                alphabet: args.alphabet.clone(),
                forbidden: args.forbidden.iter().map(|w| split_word(w)).collect(),
                cut: args.cut,
            };
            spec.check().map_err(|e| anyhow!(e))?;
            builders::build_sft(&spec)
        }
        Builder::Product { left, right } => builders::build_product(&load(left)?, &load(right)?),
        Builder::Close { file, subset } => {
            let sg = load(file)?;
            let ids = subset.iter().map(|s| sg.lookup(s)).collect::<Result<Vec<_>, _>>()?;
            builders::close_subset(&sg, &ids)
        }
    })
}
