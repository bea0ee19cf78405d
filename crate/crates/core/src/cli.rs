//! Command-line front end.
//!
//! Exit codes: 0 success, 1 proven negative (infeasible or invalid), 2 input
//! or parse error, 3 resource limit (time budget or capacity).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certificate::{verify, Certificate};
use crate::constructions::{
    design_sharpness, evans_sharpness, ham_g1, ham_g2, ham_g3, lemma31_sharp, lemma42_sharp, mols_sharpness,
    triangle_extremal, triangle_large_t, Family,
};
use crate::deficiency::{
    brute_max_edges, factor_deficiency, ham_deficiency, ham_max_edges, ore_bound, triangle_max_edges,
    witness_classes, Property,
};
use crate::embed::{embed_design, embed_mols, EmbedMode, EmbedOptions, EmbedTrace};
use crate::error::{Error, Result};
use crate::format::{
    parse_certificate, parse_design, parse_graph, parse_latin, parse_mols, write_certificate, write_design,
    write_document, write_graph, write_latin, write_mols, Document,
};
use crate::graph::Graph;
use crate::latin::{cliques_to_mols, validate_mols};
use crate::search::Limits;

#[derive(Debug, Parser)]
#[command(name = "deficiency", version, about = "Design embeddings and graph deficiency")]
pub struct Cli {
    /// Worker threads for enumeration (0 = one per core).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for randomized modes. Every current mode is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Time budget per exact search, in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    time_budget: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Embed a partial structure into a complete one.
    #[command(subcommand)]
    Embed(EmbedKind),
    /// Exact deficiency of a graph.
    #[command(subcommand)]
    Deficiency(DeficiencyKind),
    /// Closed-form maximum edge counts.
    #[command(subcommand)]
    Bound(BoundKind),
    /// Emit an extremal or sharpness construction.
    Extremal {
        /// ham-G1|ham-G2|ham-G3|triangle-odd|triangle-even|triangle-large-t take `n t`;
        /// design-sharpness `n k inner`; mols-sharpness `n k x`; evans `n`;
        /// lemma31-sharp and lemma42-sharp `k s`.
        family: Family,
        params: Vec<usize>,
        /// Write the document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive oracles.
    #[command(subcommand)]
    Oracle(OracleKind),
    /// Check a certificate against a graph.
    Verify {
        kind: CertKind,
        graph: PathBuf,
        certificate: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum EmbedKind {
    Design(EmbedArgs),
    Latin(EmbedArgs),
    Mols(EmbedArgs),
}

#[derive(Debug, Args)]
struct EmbedArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::MinimizeOrder)]
    mode: Mode,
    /// Largest number of added points or symbols to try.
    #[arg(long)]
    max_extra: Option<usize>,
    /// Write the completed structure here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the decomposition certificate here.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Write the graph the certificate decomposes here.
    #[arg(long)]
    host: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    MinimizeOrder,
    PaperConstants,
}

#[derive(Debug, Subcommand)]
enum DeficiencyKind {
    Ham {
        graph: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    Triangle {
        graph: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum BoundKind {
    Ham { n: usize, t: usize },
    Triangle { n: usize, t: usize },
    Ore { n: usize },
}

#[derive(Debug, Subcommand)]
enum OracleKind {
    MaxEdges {
        property: Property,
        n: usize,
        t: usize,
        #[arg(long, default_value_t = crate::deficiency::BRUTE_DEFAULT_LIMIT)]
        limit: usize,
        /// Also count isomorphism classes of extremal graphs.
        #[arg(long)]
        classes: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CertKind {
    Decomposition,
    Factor,
    Cycle,
    Paths,
}

impl clap::builder::ValueParserFactory for Family {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Family>().map_err(|e| e.to_string()))
    }
}

impl clap::builder::ValueParserFactory for Property {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Property>().map_err(|e| e.to_string()))
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible { .. } => 1,
        Error::Input(_) | Error::Parse { .. } => 2,
        Error::Budget { .. } | Error::Capacity { .. } => 3,
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start thread pool: {e}");
            return 2;
        }
    };
    let mut out = Vec::new();
    let result = pool.install(|| dispatch(&cli, &mut out));
    let _ = stdout.write_all(&out);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut Vec<u8>, line: impl AsRef<str>) {
    out.extend_from_slice(line.as_ref().as_bytes());
    out.push(b'\n');
}

fn limits(cli: &Cli) -> Result<Limits> {
    match cli.time_budget {
        None => Ok(Limits::default()),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Limits::with_time(Duration::from_secs_f64(s))),
        Some(s) => Err(Error::input(format!("time budget must be positive, got {s}"))),
    }
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Result<i32> {
    let limits = limits(cli)?;
    match &cli.command {
        Command::Embed(kind) => embed(kind, limits, out),
        Command::Deficiency(kind) => deficiency(kind, limits, out),
        Command::Bound(kind) => bound(kind, out),
        Command::Extremal { family, params, out: path } => extremal(*family, params, path.as_deref(), limits, out),
        Command::Oracle(OracleKind::MaxEdges {
            property,
            n,
            t,
            limit,
            classes,
        }) => oracle(*property, *n, *t, *limit, *classes, out),
        Command::Verify {
            kind,
            graph,
            certificate,
        } => verify_cmd(*kind, graph, certificate, out),
    }
}

fn embed_options(args: &EmbedArgs, limits: Limits) -> EmbedOptions {
    EmbedOptions {
        mode: match args.mode {
            Mode::MinimizeOrder => EmbedMode::MinimizeOrder,
            Mode::PaperConstants => EmbedMode::PaperConstants,
        },
        max_extra: args.max_extra,
        limits,
    }
}

fn trace_lines(out: &mut Vec<u8>, trace: &EmbedTrace) {
    let outcomes: Vec<String> = trace
        .attempts
        .iter()
        .map(|a| format!("{}:{:?}", a.order, a.outcome).to_lowercase())
        .collect();
    emit(out, format!("attempts={}", outcomes.join(",")));
    emit(out, format!("exhaustive={}", trace.is_exhaustive()));
}

fn embed(kind: &EmbedKind, limits: Limits, out: &mut Vec<u8>) -> Result<i32> {
    let (args, doc_text, cert, host, summary) = match kind {
        EmbedKind::Design(args) => {
            let f = parse_design(&read(&args.input)?)?;
            let emb = embed_design(&f, &embed_options(args, limits))?;
            let blocks = emb.completed.blocks().len();
            let summary = format!("order={} t={} blocks={blocks}", emb.order, emb.t);
            trace_lines(out, &emb.trace);
            let text = write_design(emb.completed.as_partial());
            (args, text, emb.certificate, emb.host, summary)
        }
        EmbedKind::Latin(args) | EmbedKind::Mols(args) => {
            let fam = if matches!(kind, EmbedKind::Latin(_)) {
                validate_mols(vec![parse_latin(&read(&args.input)?)?])?
            } else {
                parse_mols(&read(&args.input)?)?
            };
            let emb = embed_mols(&fam, fam.len() + 2, &embed_options(args, limits))?;
            let summary = format!("order={} t={} cells={}", emb.order, emb.t, emb.order * emb.order);
            trace_lines(out, &emb.trace);
            let text = if matches!(kind, EmbedKind::Latin(_)) {
                write_latin(&emb.completed.squares()[0])
            } else {
                write_mols(&emb.completed)
            };
            (args, text, emb.certificate, emb.host, summary)
        }
    };
    match &args.out {
        Some(path) => write_file(path, &doc_text)?,
        None => out.extend_from_slice(doc_text.as_bytes()),
    }
    if let Some(path) = &args.cert {
        write_file(path, &write_certificate(&cert))?;
    }
    if let Some(path) = &args.host {
        write_file(path, &write_graph(&host))?;
    }
    emit(out, summary);
    Ok(0)
}

fn deficiency(kind: &DeficiencyKind, limits: Limits, out: &mut Vec<u8>) -> Result<i32> {
    let t = match kind {
        DeficiencyKind::Ham { graph, cap } => {
            let g = parse_graph(&read(graph)?)?;
            emit(out, format!("n={} edges={}", g.order(), g.edge_count()));
            ham_deficiency(&g, cap.unwrap_or(g.order().max(2)))?
        }
        DeficiencyKind::Triangle { graph, cap } => {
            let g = parse_graph(&read(graph)?)?;
            emit(out, format!("n={} edges={}", g.order(), g.edge_count()));
            factor_deficiency(&g, 3, cap.unwrap_or(2 * g.order() + 2), &limits)?
        }
    };
    emit(out, format!("deficiency={t}"));
    emit(out, t.to_string());
    Ok(0)
}

fn bound(kind: &BoundKind, out: &mut Vec<u8>) -> Result<i32> {
    let value = match *kind {
        BoundKind::Ham { n, t } => {
            let b = ham_max_edges(n, t)?;
            emit(out, format!("n={n} t={t} parity={} regime={}", b.parity.as_str(), b.regime.as_str()));
            b.max_edges
        }
        BoundKind::Triangle { n, t } => {
            let b = triangle_max_edges(n, t)?;
            emit(out, format!("n={n} t={t} k={} proven_regime={}", b.k, b.proven_regime));
            Some(b.max_edges)
        }
        BoundKind::Ore { n } => Some(ore_bound(n)?),
    };
    let shown = value.map_or_else(|| "none".to_string(), |v| v.to_string());
    emit(out, format!("max_edges={shown}"));
    emit(out, shown);
    Ok(0)
}

fn params<const N: usize>(family: Family, p: &[usize], names: [&str; N]) -> Result<[usize; N]> {
    p.try_into()
        .map_err(|_| Error::input(format!("{family} takes {N} parameters: {}", names.join(" "))))
}

fn extremal(family: Family, p: &[usize], path: Option<&Path>, limits: Limits, out: &mut Vec<u8>) -> Result<i32> {
    let mut notes = Vec::new();
    let doc = match family {
        Family::HamG1 | Family::HamG2 | Family::HamG3 => {
            let [n, t] = params(family, p, ["n", "t"])?;
            let build = match family {
                Family::HamG1 => ham_g1,
                Family::HamG2 => ham_g2,
                _ => ham_g3,
            };
            Document::Graph(build(n, t)?)
        }
        Family::TriangleOdd | Family::TriangleEven => {
            let [n, t] = params(family, p, ["n", "t"])?;
            if (t % 2 == 1) != (family == Family::TriangleOdd) {
                return Err(Error::input(format!("{family} needs t of matching parity, got {t}")));
            }
            Document::Graph(triangle_extremal(n, t)?)
        }
        Family::TriangleLargeT => {
            let [n, t] = params(family, p, ["n", "t"])?;
            Document::Graph(triangle_large_t(n, t)?)
        }
        Family::DesignSharpness => {
            let [n, k, size] = params(family, p, ["n", "k", "inner"])?;
            let d = design_sharpness(n, k, size, &limits)?;
            notes.push(format!(
                "hub={} inner={} requested_inner={} leftover={} forced_extra={}",
                d.hub,
                d.inner.len(),
                d.requested_inner,
                d.leftover.len(),
                d.forced_extra
            ));
            Document::Design(d.design)
        }
        Family::MolsSharpness => {
            let [n, k, x] = params(family, p, ["n", "k", "x"])?;
            let s = mols_sharpness(n, k, x, &limits)?;
            notes.push(format!(
                "hub={} x={} requested_x={} forced_extra={}",
                s.hub, s.x, s.requested_x, s.forced_extra
            ));
            Document::Mols(cliques_to_mols(&s.family)?)
        }
        Family::Evans => {
            let [n] = params(family, p, ["n"])?;
            Document::Latin(evans_sharpness(n)?)
        }
        Family::Lemma31Sharp => {
            let [k, s] = params(family, p, ["k", "s"])?;
            let inst = lemma31_sharp(k, s)?;
            notes.push(format!("k={k} s_set=0..{s} removed={}", inst.removed.len()));
            Document::Graph(inst.graph.without_edges(inst.removed.pairs()))
        }
        Family::Lemma42Sharp => {
            let [k, s] = params(family, p, ["k", "s"])?;
            let inst = lemma42_sharp(k, s)?;
            let size = inst.graph.balanced_size().unwrap_or(0);
            notes.push(format!("k={k} part_size={size} s_per_part={s} removed={}", inst.removed.len()));
            Document::Graph(inst.graph.graph().without_edges(inst.removed.pairs()))
        }
    };
    let text = write_document(&doc);
    match path {
        Some(path) => write_file(path, &text)?,
        None => out.extend_from_slice(text.as_bytes()),
    }
    emit(out, format!("family={family}"));
    for n in notes {
        emit(out, n);
    }
    Ok(0)
}

fn edge_list(g: &Graph) -> String {
    g.edges().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(",")
}

fn oracle(property: Property, n: usize, t: usize, limit: usize, classes: bool, out: &mut Vec<u8>) -> Result<i32> {
    let r = brute_max_edges(n, t, property, limit)?;
    emit(out, format!("property={} n={n} t={t}", property.as_str()));
    if let Some(w) = &r.witness {
        emit(out, format!("witness={}", edge_list(w)));
    }
    if let (true, Some(m)) = (classes, r.max_edges) {
        let found = witness_classes(n, t, property, m, limit)?;
        emit(out, format!("classes={}", found.len()));
    }
    let shown = r.max_edges.map_or_else(|| "none".to_string(), |v| v.to_string());
    emit(out, format!("max_edges={shown}"));
    emit(out, shown);
    Ok(0)
}

fn verify_cmd(kind: CertKind, graph: &Path, cert: &Path, out: &mut Vec<u8>) -> Result<i32> {
    let g = parse_graph(&read(graph)?)?;
    let c = parse_certificate(&read(cert)?)?;
    let matches = matches!(
        (kind, &c),
        (CertKind::Decomposition, Certificate::Decomposition { .. })
            | (CertKind::Factor, Certificate::Factor { .. })
            | (CertKind::Cycle, Certificate::HamCycle(_))
            | (CertKind::Paths, Certificate::PathCover(_))
    );
    if !matches {
        return Err(Error::input(format!("certificate file holds a {}", c.kind())));
    }
    match verify(&g, &c)?.violation() {
        None => {
            emit(out, "valid=true");
            Ok(0)
        }
        Some(v) => {
            emit(out, "valid=false");
            emit(out, format!("violation={v}"));
            Ok(1)
        }
    }
}
