//! `chromberge`: compute invariants, run verification suites, enumerate structures and
//! scan for positivity counterexamples.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 precondition or size-bound violation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chromberge::decomp::{cover_polynomial, linear_breakdown, path_cycle_x0};
use chromberge::invariants::{
    chromatic_poly, chromatic_sym, redei_berge, redei_berge_poly, redei_berge_qsym, w_redei, y_chromatic,
};
use chromberge::json::{
    breakdown_doc, digraph_from_json, digraph_to_json, graph_from_json, ncsym_doc, poly_doc, poset_from_json,
    poset_to_json, qsym_doc, sym_doc, to_pretty, ExpansionDoc,
};
use chromberge::structures::{
    enumerate_irreducible_nuio, enumerate_labeled_posets, enumerate_posets_iso, tournaments,
};
use chromberge::verify::{self, Config, SearchTarget, Suite};
use chromberge::{
    combinat::int_partitions, BiPolynomial, Digraph, Error, Exec, Graph, NCSymBasis, QSymBasis, SymBasis,
    UniPolynomial,
};

#[derive(Parser)]
#[command(name = "chromberge", version, about = "Chromatic and Redei-Berge symmetric functions, exactly")]
struct Cli {
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of the structure in a JSON file.
    Compute {
        kind: Kind,
        #[arg(long = "in")]
        input: PathBuf,
        /// m, e, p, h, s for Sym/NCSym; M, F for QSym (U and X only).
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// A file path, or `json`/`table` as a format shorthand.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        unsafe_bounds: bool,
        /// Print only failing instances and the summary.
        #[arg(long)]
        failures_only: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Stream structures one per line with a count footer.
    Enumerate {
        kind: EnumKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Scan sizes `from..=n` for counterexamples or collisions.
    Search {
        target: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Linear breakdown of a digraph into bags of sticks.
    Breakdown {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "X")]
    X,
    #[value(name = "U")]
    U,
    #[value(name = "Y")]
    Y,
    #[value(name = "W")]
    W,
    ChromaticPoly,
    RbPoly,
    CoverPoly,
    XiX0,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Posets,
    PosetsIso,
    NuioIrreducible,
    Tournaments,
    Bags,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() { 2 } else { 3 },
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

/// `--out` doubles as a format switch when it names one.
struct Sink {
    path: Option<PathBuf>,
    format: Format,
}

impl Sink {
    fn new(out: Option<String>, format: Option<Format>, default: Format) -> Self {
        match out.as_deref() {
            Some("json") => Sink { path: None, format: format.unwrap_or(Format::Json) },
            Some("table") => Sink { path: None, format: format.unwrap_or(Format::Table) },
            Some(p) => Sink { path: Some(p.into()), format: format.unwrap_or(default) },
            None => Sink { path: None, format: format.unwrap_or(default) },
        }
    }

    fn write(&self, text: &str) -> Result<(), Failure> {
        let mut body = text.to_string();
        if !body.ends_with('\n') {
            body.push('\n');
        }
        match &self.path {
            Some(p) => fs::write(p, body).map_err(|e| input_error(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let result = match cli.command {
        Command::Compute { kind, input, basis, format, out } => {
            compute(kind, &input, basis.as_deref(), Sink::new(out, format, Format::Json))
        }
        Command::Verify { suite, n, seed, unsafe_bounds, failures_only, out } => {
            run_verify(&suite, n, seed, unsafe_bounds, failures_only, exec, Sink::new(out, None, Format::Table))
        }
        Command::Enumerate { kind, n, out } => enumerate(kind, n, exec, Sink::new(out, None, Format::Table)),
        Command::Search { target, n, from, out } => search(&target, from.unwrap_or(n), n, exec, Sink::new(out, None, Format::Json)),
        Command::Breakdown { input, format, out } => breakdown(&input, Sink::new(out, format, Format::Json)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// The parsed contents of a structure file.
enum Structure {
    Graph(Graph),
    Digraph(Digraph),
    Poset(chromberge::Poset),
}

fn read_structure(path: &PathBuf) -> Result<Structure, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| input_error(format!("{}: invalid JSON: {e}", path.display())))?;
    let has = |k: &str| value.get(k).is_some();
    if has("edges") {
        Ok(Structure::Graph(graph_from_json(&text)?))
    } else if has("arcs") {
        Ok(Structure::Digraph(digraph_from_json(&text)?))
    } else if has("strict") {
        Ok(Structure::Poset(poset_from_json(&text)?))
    } else {
        Err(input_error(format!(
            "{}: expected one of the fields \"edges\" (graph), \"arcs\" (digraph) or \"strict\" (poset)",
            path.display()
        )))
    }
}

/// Graph-side invariants take `inc(P)` for a poset; digraph-side ones take `D_P`.
fn as_graph(s: &Structure) -> Result<Graph, Failure> {
    match s {
        Structure::Graph(g) => Ok(g.clone()),
        Structure::Poset(p) => Ok(p.inc()),
        Structure::Digraph(_) => Err(Failure {
            code: 3,
            message: "this invariant needs a graph or a poset, not a digraph".into(),
        }),
    }
}

fn as_digraph(s: &Structure) -> Result<Digraph, Failure> {
    match s {
        Structure::Digraph(x) => Ok(x.clone()),
        Structure::Poset(p) => Ok(p.digraph()),
        Structure::Graph(_) => Err(Failure {
            code: 3,
            message: "this invariant needs a digraph or a poset, not a graph".into(),
        }),
    }
}

enum BasisChoice {
    Sym(SymBasis),
    QSym(QSymBasis),
}

fn parse_basis(basis: Option<&str>) -> Result<BasisChoice, Failure> {
    let b = basis.unwrap_or("m");
    if let Ok(q) = b.parse::<QSymBasis>() {
        return Ok(BasisChoice::QSym(q));
    }
    Ok(BasisChoice::Sym(b.parse::<SymBasis>()?))
}

fn expansion_table(doc: &ExpansionDoc) -> String {
    let width = doc.terms.iter().map(|t| t.key.chars().count()).max().unwrap_or(0).max(3);
    let mut out = format!("degree {} basis {}\n", doc.degree, doc.basis);
    out.push_str(&format!("{:<width$}  coeff\n", "key"));
    for t in &doc.terms {
        out.push_str(&format!("{:<width$}  {}\n", t.key, t.coeff));
    }
    out
}

fn render_expansion(doc: &ExpansionDoc, format: Format) -> String {
    match format {
        Format::Json => to_pretty(doc),
        Format::Table => expansion_table(doc),
    }
}

fn render_poly(p: &UniPolynomial, format: Format) -> String {
    match format {
        Format::Json => to_pretty(&poly_doc(p)),
        Format::Table => p.to_string(),
    }
}

fn render_bipoly(p: &BiPolynomial, format: Format) -> String {
    match format {
        Format::Json => {
            let terms: Vec<Value> = p
                .terms()
                .iter()
                .map(|((i, j), c)| json!({"m": i, "n": j, "coeff": c.to_string()}))
                .collect();
            to_pretty(&json!({"polynomial": p.to_string(), "terms": terms}))
        }
        Format::Table => p.to_string(),
    }
}

fn compute(kind: Kind, input: &PathBuf, basis: Option<&str>, sink: Sink) -> Outcome {
    let s = read_structure(input)?;
    let text = match kind {
        Kind::X | Kind::U => {
            let choice = parse_basis(basis)?;
            let sym = if matches!(kind, Kind::X) {
                chromatic_sym(&as_graph(&s)?)
            } else {
                redei_berge(&as_digraph(&s)?)
            };
            let doc = match choice {
                BasisChoice::Sym(b) => sym_doc(&sym.to_basis(b)),
                BasisChoice::QSym(b) => {
                    let q = if matches!(kind, Kind::U) {
                        redei_berge_qsym(&as_digraph(&s)?)
                    } else {
                        sym.embed_in_qsym()
                    };
                    qsym_doc(&q.to_basis(b))
                }
            };
            render_expansion(&doc, sink.format)
        }
        Kind::Y | Kind::W => {
            let b: NCSymBasis = basis.unwrap_or("m").parse()?;
            let f = if matches!(kind, Kind::Y) {
                y_chromatic(&as_graph(&s)?)
            } else {
                w_redei(&as_digraph(&s)?)
            };
            render_expansion(&ncsym_doc(&f.to_basis(b)), sink.format)
        }
        Kind::ChromaticPoly => render_poly(&chromatic_poly(&as_graph(&s)?), sink.format),
        Kind::RbPoly => render_poly(&redei_berge_poly(&as_digraph(&s)?), sink.format),
        Kind::CoverPoly => render_bipoly(&cover_polynomial(&as_digraph(&s)?)?, sink.format),
        Kind::XiX0 => {
            let b = match parse_basis(basis)? {
                BasisChoice::Sym(b) => b,
                BasisChoice::QSym(_) => return Err(input_error("xi-x0 is reported in a Sym basis")),
            };
            let f = path_cycle_x0(&as_digraph(&s)?)?;
            render_expansion(&sym_doc(&f.to_basis(b)), sink.format)
        }
    };
    sink.write(&text)?;
    Ok(0)
}

fn run_verify(
    suite: &str,
    n: Option<usize>,
    seed: u64,
    unsafe_bounds: bool,
    failures_only: bool,
    exec: Exec,
    sink: Sink,
) -> Outcome {
    let suite: Suite = suite.parse()?;
    let cfg = Config {
        n: n.unwrap_or(suite.default_n()),
        seed,
        exec,
        unsafe_bounds,
    };
    let report = verify::run(suite, &cfg)?;
    sink.write(report.render(failures_only).trim_end())?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn enumerate(kind: EnumKind, n: usize, exec: Exec, sink: Sink) -> Outcome {
    let lines: Vec<String> = match kind {
        EnumKind::Posets => enumerate_labeled_posets(n)?.iter().map(poset_to_json).collect(),
        EnumKind::PosetsIso => enumerate_posets_iso(n, exec)?.iter().map(poset_to_json).collect(),
        EnumKind::NuioIrreducible => enumerate_irreducible_nuio(n)?.iter().map(poset_to_json).collect(),
        EnumKind::Tournaments => tournaments(n)?.iter().map(digraph_to_json).collect(),
        EnumKind::Bags => {
            if n > 16 {
                return Err(Error::Precondition("bag enumeration is limited to n ≤ 16".into()).into());
            }
            int_partitions(n)
                .iter()
                .map(|l| digraph_to_json(&Digraph::bag_of_sticks(l)))
                .collect()
        }
    };
    let mut text = lines.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    text.push_str(&format!("# count: {}", lines.len()));
    sink.write(&text)?;
    Ok(0)
}

fn search(target: &str, from: usize, to: usize, exec: Exec, sink: Sink) -> Outcome {
    let target: SearchTarget = target.parse()?;
    if from > to {
        return Err(input_error(format!("--from {from} exceeds --n {to}")));
    }
    let mut findings = Vec::new();
    for n in from..=to {
        for f in verify::search(target, n, exec)? {
            findings.push(json!({"n": n, "structures": f.structures, "detail": f.detail}));
        }
    }
    let doc = json!({"target": target.name(), "from": from, "to": to, "findings": findings});
    sink.write(&to_pretty(&doc))?;
    Ok(0)
}

fn breakdown(input: &PathBuf, sink: Sink) -> Outcome {
    let x = as_digraph(&read_structure(input)?)?;
    let b = linear_breakdown(&x)?;
    let text = match sink.format {
        Format::Json => to_pretty(&breakdown_doc(&b)),
        Format::Table => {
            let grouped = b.grouped();
            let width = grouped.keys().map(|l| l.to_string().len()).max().unwrap_or(0).max(6);
            let mut t = format!("{:<width$}  coeff\n", "lambda");
            for (l, c) in grouped {
                t.push_str(&format!("{:<width$}  {c}\n", l.to_string()));
            }
            t
        }
    };
    sink.write(&text)?;
    Ok(0)
}
