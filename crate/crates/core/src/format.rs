//! Line-oriented text formats. Every document starts with a header line
//! naming its kind; `#` lines and blank lines are ignored on input.
//! Latin symbols are written 1-indexed, everything else 0-indexed.

use std::fmt::Write as _;

use crate::certificate::Certificate;
use crate::designs::{validate_partial_design, PartialDesign};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::latin::{validate_mols, MolsFamily, PartialLatinSquare};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Graph(Graph),
    Design(PartialDesign),
    Latin(PartialLatinSquare),
    Mols(MolsFamily),
    Certificate(Certificate),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Graph(_) => "graph",
            Document::Design(_) => "design",
            Document::Latin(_) => "latin",
            Document::Mols(_) => "mols",
            Document::Certificate(c) => c.kind(),
        }
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.order());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_design(d: &PartialDesign) -> String {
    let mut out = format!("design {} {}\n", d.order(), d.block_size());
    for b in d.blocks() {
        out.push_str(&join(b));
        out.push('\n');
    }
    out
}

fn write_rows(out: &mut String, sq: &PartialLatinSquare) {
    for row in sq.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|c| c.map_or_else(|| "*".to_string(), |s| (s + 1).to_string()))
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

pub fn write_latin(sq: &PartialLatinSquare) -> String {
    let mut out = format!("latin {}\n", sq.order());
    write_rows(&mut out, sq);
    out
}

pub fn write_mols(fam: &MolsFamily) -> String {
    let mut out = format!("mols {} {}\n", fam.order(), fam.len());
    for (i, sq) in fam.squares().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_rows(&mut out, sq);
    }
    out
}

pub fn write_certificate(c: &Certificate) -> String {
    let lines: Vec<&Vec<usize>>;
    let mut out = match c {
        Certificate::Decomposition { k, cliques } | Certificate::Factor { k, cliques } => {
            lines = cliques.iter().collect();
            format!("{} {k} {}\n", c.kind(), cliques.len())
        }
        Certificate::HamCycle(seq) => {
            lines = vec![seq];
            format!("cycle {}\n", seq.len())
        }
        Certificate::PathCover(paths) => {
            lines = paths.iter().collect();
            format!("paths {}\n", paths.len())
        }
    };
    for l in lines {
        out.push_str(&join(l));
        out.push('\n');
    }
    out
}

pub fn write_document(doc: &Document) -> String {
    match doc {
        Document::Graph(g) => write_graph(g),
        Document::Design(d) => write_design(d),
        Document::Latin(sq) => write_latin(sq),
        Document::Mols(f) => write_mols(f),
        Document::Certificate(c) => write_certificate(c),
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next significant line as (1-based number, trimmed content).
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim();
            self.last = i + 1;
            if !line.is_empty() && !line.starts_with('#') {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let last = self.last;
        self.next().ok_or_else(|| parse_err(last + 1, format!("unexpected end of input, expected {what}")))
    }

    fn finish(&mut self) -> Result<()> {
        match self.next() {
            Some((line, _)) => Err(parse_err(line, "unexpected trailing content")),
            None => Ok(()),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, content: &str) -> Result<Vec<usize>> {
    content
        .split_whitespace()
        .map(|tok| tok.parse().map_err(|_| parse_err(line, format!("expected a non-negative integer, found {tok:?}"))))
        .collect()
}

fn exactly(line: usize, content: &str, count: usize, what: &str) -> Result<Vec<usize>> {
    let xs = numbers(line, content)?;
    if xs.len() != count {
        return Err(parse_err(line, format!("expected {count} {what}, found {}", xs.len())));
    }
    Ok(xs)
}

/// Attach a line number to validator failures.
fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Input(m) => parse_err(line, m),
        other => other,
    })
}

/// Parse any document, dispatching on the header word.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = Lines::new(text);
    let (hl, header) = lines.expect("a header line")?;
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or_default();
    let args = numbers(hl, &words.collect::<Vec<_>>().join(" "))?;
    let arity = |n: usize| -> Result<()> {
        if args.len() != n {
            return Err(parse_err(hl, format!("header `{kind}` takes {n} numbers, found {}", args.len())));
        }
        Ok(())
    };
    let doc = match kind {
        "graph" => {
            arity(1)?;
            let n = args[0];
            let mut edges = Vec::new();
            while let Some((l, c)) = lines.next() {
                let e = exactly(l, c, 2, "vertices")?;
                if e[0] >= e[1] || e[1] >= n {
                    return Err(parse_err(l, format!("edge {} {} needs u < v < {n}", e[0], e[1])));
                }
                edges.push((e[0], e[1]));
            }
            Document::Graph(at_line(hl, Graph::from_edges(n, edges))?)
        }
        "design" => {
            arity(2)?;
            let (n, k) = (args[0], args[1]);
            at_line(hl, validate_partial_design(n, k, Vec::new()))?;
            let mut blocks = Vec::new();
            while let Some((l, c)) = lines.next() {
                let b = exactly(l, c, k, "points")?;
                at_line(l, validate_partial_design(n, k, vec![b.clone()]))?;
                blocks.push(b);
            }
            Document::Design(at_line(hl, validate_partial_design(n, k, blocks))?)
        }
        "latin" => {
            arity(1)?;
            let sq = parse_square(&mut lines, args[0], hl)?;
            lines.finish()?;
            Document::Latin(sq)
        }
        "mols" => {
            arity(2)?;
            let squares = (0..args[1])
                .map(|_| parse_square(&mut lines, args[0], hl))
                .collect::<Result<Vec<_>>>()?;
            lines.finish()?;
            Document::Mols(at_line(hl, validate_mols(squares))?)
        }
        "decomposition" | "factor" => {
            arity(2)?;
            let (k, count) = (args[0], args[1]);
            let cliques = (0..count)
                .map(|_| lines.expect("a clique").and_then(|(l, c)| exactly(l, c, k, "vertices")))
                .collect::<Result<Vec<_>>>()?;
            lines.finish()?;
            Document::Certificate(if kind == "factor" {
                Certificate::Factor { k, cliques }
            } else {
                Certificate::Decomposition { k, cliques }
            })
        }
        "cycle" => {
            arity(1)?;
            let seq = if args[0] == 0 {
                Vec::new()
            } else {
                let (l, c) = lines.expect("the cycle")?;
                exactly(l, c, args[0], "vertices")?
            };
            lines.finish()?;
            Document::Certificate(Certificate::HamCycle(seq))
        }
        "paths" => {
            arity(1)?;
            let paths = (0..args[0])
                .map(|_| lines.expect("a path").and_then(|(l, c)| numbers(l, c)))
                .collect::<Result<Vec<_>>>()?;
            lines.finish()?;
            Document::Certificate(Certificate::PathCover(paths))
        }
        other => return Err(parse_err(hl, format!("unknown header {other:?}"))),
    };
    Ok(doc)
}

fn parse_square(lines: &mut Lines<'_>, n: usize, hl: usize) -> Result<PartialLatinSquare> {
    let mut cells = Vec::with_capacity(n * n);
    let mut first = hl;
    for i in 0..n {
        let (l, c) = lines.expect("a square row")?;
        if i == 0 {
            first = l;
        }
        let row: Vec<&str> = c.split_whitespace().collect();
        if row.len() != n {
            return Err(parse_err(l, format!("expected {n} cells, found {}", row.len())));
        }
        for tok in row {
            cells.push(match tok {
                "*" => None,
                _ => match tok.parse::<usize>() {
                    Ok(s) if (1..=n).contains(&s) => Some(s - 1),
                    _ => return Err(parse_err(l, format!("expected `*` or a symbol in 1..={n}, found {tok:?}"))),
                },
            });
        }
    }
    at_line(first, PartialLatinSquare::new(n, cells))
}

macro_rules! typed_parser {
    ($name:ident, $variant:ident, $ty:ty, $what:literal) => {
        pub fn $name(text: &str) -> Result<$ty> {
            match parse_document(text)? {
                Document::$variant(x) => Ok(x),
                other => Err(Error::input(format!(concat!("expected a ", $what, ", found {}"), other.kind()))),
            }
        }
    };
}

typed_parser!(parse_graph, Graph, Graph, "graph");
typed_parser!(parse_design, Design, PartialDesign, "design");
typed_parser!(parse_latin, Latin, PartialLatinSquare, "latin square");
typed_parser!(parse_mols, Mols, MolsFamily, "mols family");
typed_parser!(parse_certificate, Certificate, Certificate, "certificate");
