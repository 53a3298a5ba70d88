//! Line-oriented text formats.
//!
//! Files use 1-based ids and `#` comments; memory uses 0-based ids. Convex
//! and biconvex models number A first, then B, when a GL extension or CDS
//! file refers to their vertices.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cds::{BiconvexModel, CdsFamily, ConvexModel, IntervalModel};
use crate::gl::{GlPartition, TraceEvent};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::verify::{VerificationReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invariant violated at line {line}: {msg}")]
    Invariant { line: usize, msg: String },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "syntax",
            ParseError::Invariant { .. } => "invariant",
        }
    }
}

type PResult<T> = Result<T, ParseError>;

fn syntax<T>(line: usize, msg: impl Into<String>) -> PResult<T> {
    Err(ParseError::Syntax { line, msg: msg.into() })
}

fn invariant<T>(line: usize, msg: impl Into<String>) -> PResult<T> {
    Err(ParseError::Invariant { line, msg: msg.into() })
}

/// Graph or class model heading a bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Graph(Graph),
    Interval(IntervalModel),
    Convex(ConvexModel),
    Biconvex(BiconvexModel),
}

impl Source {
    pub fn graph(&self) -> Graph {
        match self {
            Source::Graph(g) => g.clone(),
            Source::Interval(m) => m.graph(),
            Source::Convex(m) => m.graph(),
            Source::Biconvex(m) => m.graph(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Source::Graph(g) => g.n(),
            Source::Interval(m) => m.n(),
            Source::Convex(m) => m.n(),
            Source::Biconvex(m) => m.convex.n(),
        }
    }

    /// Header keyword.
    pub fn kind(&self) -> &'static str {
        match self {
            Source::Graph(_) => "gl",
            Source::Interval(_) => "interval",
            Source::Convex(_) => "convex",
            Source::Biconvex(_) => "biconvex",
        }
    }
}

/// Terminals and demands in block order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlExtension {
    pub terminals: Vec<VertexId>,
    pub demands: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceBundle {
    pub source: Source,
    pub gl: Option<GlExtension>,
    pub cds: Option<Vec<VertexSet>>,
}

/// Non-comment lines split into tokens, with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> PResult<T> {
    tok.parse().or_else(|_| syntax(line, format!("bad {what} '{tok}'")))
}

fn arity(line: usize, toks: &[&str], want: usize) -> PResult<()> {
    if toks.len() != want {
        return syntax(
            line,
            format!("'{}' takes {} fields, found {}", toks[0], want - 1, toks.len() - 1),
        );
    }
    Ok(())
}

/// 1-based id in `1..=n` to 0-based.
fn id(line: usize, tok: &str, n: usize, what: &str) -> PResult<usize> {
    let v: usize = num(line, tok, what)?;
    if v == 0 || v > n {
        return invariant(line, format!("{what} {v} out of range 1..{n}"));
    }
    Ok(v - 1)
}

/// Parses a bundle: one `p` header with its body, then optional `k`/`t`
/// lines, then optional `c`/`s` lines.
pub fn parse_bundle(text: &str) -> PResult<InstanceBundle> {
    let mut it = lines(text).peekable();
    let Some((hl, header)) = it.next() else {
        return syntax(1, "missing 'p' header");
    };
    if header[0] != "p" || header.len() < 2 {
        return syntax(hl, "expected 'p <kind> ...' header");
    }
    let mut last = hl;
    let source = match header[1] {
        "gl" => {
            arity(hl, &header, 4)?;
            let n: usize = num(hl, header[2], "vertex count")?;
            let m: usize = num(hl, header[3], "edge count")?;
            let mut edges = Vec::with_capacity(m);
            let mut seen = std::collections::BTreeSet::new();
            while let Some((l, toks)) = it.next_if(|(_, t)| t[0] == "e") {
                arity(l, &toks, 3)?;
                let u = id(l, toks[1], n, "vertex")?;
                let v = id(l, toks[2], n, "vertex")?;
                if u == v {
                    return invariant(l, format!("self-loop at {}", u + 1));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return invariant(l, format!("duplicate edge {} {}", u + 1, v + 1));
                }
                edges.push((u, v));
                last = l;
            }
            if edges.len() != m {
                return invariant(last, format!("header declares {m} edges, found {}", edges.len()));
            }
            Source::Graph(Graph::from_edges(n, edges).expect("edges checked above"))
        }
        "interval" => {
            arity(hl, &header, 3)?;
            let n: usize = num(hl, header[2], "interval count")?;
            let mut ivs: Vec<Option<(i64, i64)>> = vec![None; n];
            while let Some((l, toks)) = it.next_if(|(_, t)| t[0] == "i") {
                arity(l, &toks, 4)?;
                let v = id(l, toks[1], n, "interval")?;
                let lo: i64 = num(l, toks[2], "endpoint")?;
                let hi: i64 = num(l, toks[3], "endpoint")?;
                if lo > hi {
                    return invariant(l, format!("interval {} has left {lo} > right {hi}", v + 1));
                }
                if ivs[v].replace((lo, hi)).is_some() {
                    return invariant(l, format!("interval {} given twice", v + 1));
                }
                last = l;
            }
            if let Some(v) = ivs.iter().position(Option::is_none) {
                return invariant(last, format!("interval {} missing", v + 1));
            }
            let m = IntervalModel::new(ivs.into_iter().map(Option::unwrap).collect())
                .or_else(|e| invariant(last, e.to_string()))?;
            Source::Interval(m)
        }
        kind @ ("convex" | "biconvex") => {
            arity(hl, &header, 5)?;
            let na: usize = num(hl, header[2], "A size")?;
            let nb: usize = num(hl, header[3], "B size")?;
            let m: usize = num(hl, header[4], "edge count")?;
            let mut edges = Vec::with_capacity(m);
            while let Some((l, toks)) = it.next_if(|(_, t)| t[0] == "e") {
                arity(l, &toks, 3)?;
                edges.push((id(l, toks[1], na, "A vertex")?, id(l, toks[2], nb, "B vertex")?));
                last = l;
            }
            if edges.len() != m {
                return invariant(last, format!("header declares {m} edges, found {}", edges.len()));
            }
            let cm = ConvexModel::from_edges(na, nb, &edges).or_else(|e| invariant(last, e.to_string()))?;
            if kind == "convex" {
                Source::Convex(cm)
            } else {
                Source::Biconvex(BiconvexModel::new(cm).or_else(|e| invariant(last, e.to_string()))?)
            }
        }
        other => return syntax(hl, format!("unknown kind '{other}'")),
    };
    let n = source.n();
    let gl = match it.next_if(|(_, t)| t[0] == "k") {
        Some((kl, toks)) => Some(parse_gl_body(kl, &toks, &mut it, n)?),
        None => None,
    };
    let cds = match it.next_if(|(_, t)| t[0] == "c") {
        Some((cl, toks)) => Some(parse_sets_body(cl, &toks, &mut it, n, "s")?),
        None => None,
    };
    if let Some((l, toks)) = it.next() {
        return syntax(l, format!("unexpected '{}' line", toks[0]));
    }
    Ok(InstanceBundle { source, gl, cds })
}

fn parse_gl_body<'a>(
    kl: usize,
    ktoks: &[&str],
    it: &mut std::iter::Peekable<impl Iterator<Item = (usize, Vec<&'a str>)>>,
    n: usize,
) -> PResult<GlExtension> {
    arity(kl, ktoks, 2)?;
    let k: usize = num(kl, ktoks[1], "k")?;
    if k == 0 {
        return invariant(kl, "k must be at least 1");
    }
    let mut terminals = Vec::with_capacity(k);
    let mut demands = Vec::with_capacity(k);
    let mut used = VertexSet::new(n);
    let mut last = kl;
    while let Some((l, toks)) = it.next_if(|(_, t)| t[0] == "t") {
        arity(l, &toks, 3)?;
        let c = id(l, toks[1], n, "terminal")?;
        let d: usize = num(l, toks[2], "demand")?;
        if d == 0 {
            return invariant(l, "demand must be at least 1");
        }
        if !used.insert(c) {
            return invariant(l, format!("terminal {} repeated", c + 1));
        }
        terminals.push(c);
        demands.push(d);
        last = l;
    }
    if terminals.len() != k {
        return invariant(last, format!("declared {k} terminals, found {}", terminals.len()));
    }
    let total: usize = demands.iter().sum();
    if total != n {
        return invariant(last, format!("demands sum to {total}, graph has {n} vertices"));
    }
    Ok(GlExtension { terminals, demands })
}

/// Indexed vertex lists `<tag> <i> <v...>`, each index `1..=k` exactly once.
fn parse_sets_body<'a>(
    hl: usize,
    htoks: &[&str],
    it: &mut std::iter::Peekable<impl Iterator<Item = (usize, Vec<&'a str>)>>,
    n: usize,
    tag: &str,
) -> PResult<Vec<VertexSet>> {
    arity(hl, htoks, 2)?;
    let k: usize = num(hl, htoks[1], "set count")?;
    parse_indexed_sets(hl, k, it, n, tag)
}

fn parse_indexed_sets<'a>(
    start: usize,
    k: usize,
    it: &mut std::iter::Peekable<impl Iterator<Item = (usize, Vec<&'a str>)>>,
    n: usize,
    tag: &str,
) -> PResult<Vec<VertexSet>> {
    let mut sets: Vec<Option<VertexSet>> = vec![None; k];
    let mut last = start;
    while let Some((l, toks)) = it.next_if(|(_, t)| t[0] == tag) {
        if toks.len() < 2 {
            return syntax(l, format!("'{tag}' needs an index"));
        }
        let i = id(l, toks[1], k, "set index")?;
        let mut s = VertexSet::new(n);
        for tok in &toks[2..] {
            let v = id(l, tok, n, "vertex")?;
            if !s.insert(v) {
                return invariant(l, format!("vertex {} repeated in set {}", v + 1, i + 1));
            }
        }
        if sets[i].replace(s).is_some() {
            return invariant(l, format!("set {} given twice", i + 1));
        }
        last = l;
    }
    if let Some(i) = sets.iter().position(Option::is_none) {
        return invariant(last, format!("set {} missing", i + 1));
    }
    Ok(sets.into_iter().map(Option::unwrap).collect())
}

/// Standalone `c <k>` / `s <i> <v...>` file over `n` vertices.
pub fn parse_cds(text: &str, n: usize) -> PResult<Vec<VertexSet>> {
    let mut it = lines(text).peekable();
    let Some((cl, toks)) = it.next() else {
        return syntax(1, "missing 'c' line");
    };
    if toks[0] != "c" {
        return syntax(cl, "expected 'c <k>'");
    }
    let sets = parse_sets_body(cl, &toks, &mut it, n, "s")?;
    if let Some((l, toks)) = it.next() {
        return syntax(l, format!("unexpected '{}' line", toks[0]));
    }
    Ok(sets)
}

/// `v <i> <v...>` lines over `n` vertices; the block count is the number of lines.
pub fn parse_partition(text: &str, n: usize) -> PResult<GlPartition> {
    let k = lines(text).count();
    let mut it = lines(text).peekable();
    let blocks = parse_indexed_sets(1, k, &mut it, n, "v")?;
    if let Some((l, toks)) = it.next() {
        return syntax(l, format!("unexpected '{}' line", toks[0]));
    }
    Ok(GlPartition { blocks })
}

pub fn parse_trace(text: &str) -> PResult<Vec<TraceEvent>> {
    lines(text)
        .map(|(l, toks)| {
            let field = |i: usize| -> PResult<usize> {
                let v: usize = num(l, toks[i], "id")?;
                if v == 0 {
                    return invariant(l, "ids are 1-based");
                }
                Ok(v - 1)
            };
            match toks[0] {
                "PLACE" => {
                    arity(l, &toks, 3)?;
                    Ok(TraceEvent::Place {
                        vertex: field(1)?,
                        set: field(2)?,
                    })
                }
                "STEAL" => {
                    arity(l, &toks, 4)?;
                    Ok(TraceEvent::Steal {
                        vertex: field(1)?,
                        from: field(2)?,
                        to: field(3)?,
                    })
                }
                "EMIT" => {
                    arity(l, &toks, 3)?;
                    Ok(TraceEvent::Emit {
                        set: field(1)?,
                        tree: field(2)?,
                    })
                }
                other => syntax(l, format!("unknown event '{other}'")),
            }
        })
        .collect()
}

/// Reads the `OK` / `FAIL <rule-id> <detail>` form back; ids are not kept.
pub fn parse_report(text: &str) -> PResult<VerificationReport> {
    let mut report = VerificationReport::default();
    let mut saw_ok = false;
    for (l, toks) in lines(text) {
        match toks[0] {
            "OK" if toks.len() == 1 => saw_ok = true,
            "FAIL" if toks.len() >= 2 => report.violations.push(Violation {
                rule: rule_id(toks[1]).ok_or_else(|| ParseError::Syntax {
                    line: l,
                    msg: format!("unknown rule '{}'", toks[1]),
                })?,
                detail: toks[2..].join(" "),
                ids: vec![],
            }),
            _ => return syntax(l, "expected 'OK' or 'FAIL <rule-id> <detail>'"),
        }
    }
    if saw_ok == !report.violations.is_empty() {
        if saw_ok {
            return invariant(1, "report mixes OK and FAIL lines");
        }
        return syntax(1, "empty report");
    }
    Ok(report)
}

fn rule_id(s: &str) -> Option<&'static str> {
    const RULES: [&str; 9] = [
        "vertex-missing",
        "vertex-duplicated",
        "vertex-out-of-range",
        "block-count",
        "size-mismatch",
        "terminal-missing",
        "disconnected",
        "not-dominating",
        "empty-block",
    ];
    RULES.into_iter().find(|r| *r == s)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p gl {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write_interval(m: &IntervalModel) -> String {
    let mut out = format!("p interval {}\n", m.n());
    for (v, &(l, r)) in m.intervals.iter().enumerate() {
        writeln!(out, "i {} {l} {r}", v + 1).unwrap();
    }
    out
}

fn write_bipartite(kind: &str, m: &ConvexModel) -> String {
    let mut edges = m.edge_list();
    edges.sort_unstable();
    let mut out = format!("p {kind} {} {} {}\n", m.na, m.nb, edges.len());
    for (a, b) in edges {
        writeln!(out, "e {} {}", a + 1, b + 1).unwrap();
    }
    out
}

pub fn write_convex(m: &ConvexModel) -> String {
    write_bipartite("convex", m)
}

pub fn write_biconvex(m: &BiconvexModel) -> String {
    write_bipartite("biconvex", &m.convex)
}

pub fn write_source(s: &Source) -> String {
    match s {
        Source::Graph(g) => write_graph(g),
        Source::Interval(m) => write_interval(m),
        Source::Convex(m) => write_convex(m),
        Source::Biconvex(m) => write_biconvex(m),
    }
}

pub fn write_gl_extension(ext: &GlExtension) -> String {
    let mut out = format!("k {}\n", ext.terminals.len());
    for (c, d) in ext.terminals.iter().zip(&ext.demands) {
        writeln!(out, "t {} {d}", c + 1).unwrap();
    }
    out
}

fn write_sets(tag: &str, sets: &[VertexSet]) -> String {
    let mut out = String::new();
    for (i, s) in sets.iter().enumerate() {
        write!(out, "{tag} {}", i + 1).unwrap();
        for v in s.iter() {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_cds(sets: &[VertexSet]) -> String {
    format!("c {}\n{}", sets.len(), write_sets("s", sets))
}

pub fn write_cds_family(f: &CdsFamily) -> String {
    write_cds(&f.sets)
}

pub fn write_partition(p: &GlPartition) -> String {
    write_sets("v", &p.blocks)
}

pub fn write_bundle(b: &InstanceBundle) -> String {
    let mut out = write_source(&b.source);
    if let Some(ext) = &b.gl {
        out.push_str(&write_gl_extension(ext));
    }
    if let Some(cds) = &b.cds {
        out.push_str(&write_cds(cds));
    }
    out
}

pub fn write_trace(events: &[TraceEvent]) -> String {
    let mut out = String::new();
    for ev in events {
        match *ev {
            TraceEvent::Place { vertex, set } => writeln!(out, "PLACE {} {}", vertex + 1, set + 1),
            TraceEvent::Steal { vertex, from, to } => writeln!(out, "STEAL {} {} {}", vertex + 1, from + 1, to + 1),
            TraceEvent::Emit { set, tree } => writeln!(out, "EMIT {} {}", set + 1, tree + 1),
        }
        .unwrap();
    }
    out
}

pub fn write_report(r: &VerificationReport) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn path_graph_example() {
        let b = parse_bundle("p gl 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(b.source, Source::Graph(Graph::path(3)));
        assert!(b.gl.is_none() && b.cds.is_none());
    }

    #[test]
    fn comments_anywhere() {
        let text = "# head\np gl 3 2 # trailing\n\n e 1 2\n#mid\ne 2 3\nk 1 # one block\nt 2 3\n";
        let b = parse_bundle(text).unwrap();
        assert_eq!(write_bundle(&b), "p gl 3 2\ne 1 2\ne 2 3\nk 1\nt 2 3\n");
    }

    #[test]
    fn demand_sum_must_match() {
        let err = parse_bundle("p gl 3 2\ne 1 2\ne 2 3\nk 2\nt 1 1\nt 2 1\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Invariant {
                line: 6,
                msg: "demands sum to 2, graph has 3 vertices".into()
            }
        );
    }

    #[test]
    fn line_numbered_errors() {
        assert!(matches!(
            parse_bundle("p gl 3 1\ne 1 1\n"),
            Err(ParseError::Invariant { line: 2, .. })
        ));
        assert!(matches!(
            parse_bundle("p gl 3 2\ne 1 2\ne 2 1\n"),
            Err(ParseError::Invariant { line: 3, .. })
        ));
        assert!(matches!(
            parse_bundle("p gl 3 1\ne 1 x\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_bundle("p gl 3 2\ne 1 2\n"),
            Err(ParseError::Invariant { line: 2, .. })
        ));
        assert!(matches!(
            parse_bundle("p gl 3 0\nk 1\nt 4 3\n"),
            Err(ParseError::Invariant { line: 3, .. })
        ));
        assert!(matches!(
            parse_bundle("p gl 3 0\nk 1\nt 1 0\n"),
            Err(ParseError::Invariant { line: 3, .. })
        ));
        assert!(matches!(
            parse_bundle("p tree 3\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(parse_bundle(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_bundle("p gl 2 0\nz 1\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn class_models() {
        let b = parse_bundle("p interval 2\ni 2 3 5\ni 1 0 3\n").unwrap();
        assert_eq!(
            b.source,
            Source::Interval(IntervalModel::new(vec![(0, 3), (3, 5)]).unwrap())
        );
        assert!(parse_bundle("p interval 2\ni 1 0 3\n").is_err());
        assert!(parse_bundle("p interval 1\ni 1 4 3\n").is_err());
        let b = parse_bundle("p convex 2 1 2\ne 2 1\ne 1 1\nk 1\nt 3 3\n").unwrap();
        assert_eq!(b.source.graph().m(), 2);
        assert_eq!(b.gl.unwrap().terminals, vec![2]);
        assert!(parse_bundle("p convex 3 1 2\ne 1 1\ne 3 1\n").is_err());
        // a2 sees b1 and b3 only
        let bad = "p biconvex 3 3 5\ne 1 1\ne 2 1\ne 3 2\ne 2 3\ne 3 3\n";
        assert!(parse_bundle(&bad.replace("biconvex", "convex")).is_ok());
        assert!(matches!(parse_bundle(bad), Err(ParseError::Invariant { .. })));
    }

    #[test]
    fn sets_and_partitions() {
        let sets = parse_cds("c 2\ns 2 3 4\ns 1 1 2 # first\n", 4).unwrap();
        assert_eq!(write_cds(&sets), "c 2\ns 1 1 2\ns 2 3 4\n");
        assert!(parse_cds("c 2\ns 1 1\n", 4).is_err());
        assert!(parse_cds("c 1\ns 1 1 1\n", 4).is_err());
        assert!(parse_cds("c 1\ns 1 5\n", 4).is_err());
        let p = parse_partition("v 1 1\nv 2 2 3\n", 3).unwrap();
        assert_eq!(write_partition(&p), "v 1 1\nv 2 2 3\n");
        assert!(parse_partition("v 1 1\nv 1 2 3\n", 3).is_err());
    }

    #[test]
    fn trace_and_report_round_trip() {
        let ev = vec![
            TraceEvent::Place { vertex: 0, set: 1 },
            TraceEvent::Steal {
                vertex: 3,
                from: 1,
                to: 0,
            },
            TraceEvent::Emit { set: 0, tree: 2 },
        ];
        let text = write_trace(&ev);
        assert_eq!(text, "PLACE 1 2\nSTEAL 4 2 1\nEMIT 1 3\n");
        assert_eq!(parse_trace(&text).unwrap(), ev);
        let ok = VerificationReport::default();
        assert_eq!(parse_report(&write_report(&ok)).unwrap(), ok);
        let fail = parse_report("FAIL disconnected block 2 is not connected\n").unwrap();
        assert_eq!(write_report(&fail), "FAIL disconnected block 2 is not connected\n");
        assert!(parse_report("FAIL made-up x\n").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..25).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..60).prop_map(move |pairs| {
                let mut seen = std::collections::BTreeSet::new();
                let edges: Vec<_> = pairs
                    .into_iter()
                    .filter(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
                    .collect();
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn graph_round_trip(g in arb_graph()) {
            let text = write_graph(&g);
            let back = parse_bundle(&text).unwrap();
            prop_assert_eq!(&back.source, &Source::Graph(g));
            prop_assert_eq!(write_bundle(&back), text);
        }

        #[test]
        fn interval_round_trip(iv in proptest::collection::vec((-50i64..50, 0i64..20), 1..30)) {
            let m = IntervalModel::new(iv.into_iter().map(|(l, w)| (l, l + w)).collect()).unwrap();
            let text = write_interval(&m);
            let back = parse_bundle(&text).unwrap();
            prop_assert_eq!(back.source, Source::Interval(m));
        }

        #[test]
        fn convex_round_trip(na in 1usize..12, spans in proptest::collection::vec((0usize..12, 0usize..12), 1..12)) {
            let ranges = spans.iter().map(|&(a, w)| { let l = a % na; l..(l + w % (na - l) + 1) }).collect();
            let m = ConvexModel::new(na, spans.len(), ranges).unwrap();
            let text = write_convex(&m);
            let back = parse_bundle(&text).unwrap();
            prop_assert_eq!(&back.source, &Source::Convex(m));
            prop_assert_eq!(write_bundle(&back), text);
        }

        #[test]
        fn bundle_round_trip(g in arb_graph(), seed in any::<u64>()) {
            let n = g.n();
            let k = 1 + (seed as usize) % n;
            let inst = crate::gen::gen_gl_extension(&g, k, seed, None).unwrap();
            let sets: Vec<VertexSet> = (0..k).map(|i| VertexSet::from_iter(n, (0..n).filter(|v| v % k == i))).collect();
            let b = InstanceBundle {
                source: Source::Graph(g),
                gl: Some(GlExtension { terminals: inst.terminals, demands: inst.demands }),
                cds: Some(sets),
            };
            let text = write_bundle(&b);
            prop_assert_eq!(parse_bundle(&text).unwrap(), b);
        }
    }
}
