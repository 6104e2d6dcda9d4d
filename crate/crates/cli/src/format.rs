//! Line-oriented instance, cut and mapping files.
//!
//! Instance grammar (ids are 1-indexed, `c` starts a comment line):
//!
//! ```text
//! p dmc <vertex|edge> <n> <m>
//! n <id> <cost> [<weight>]          vertex flavor, one per node
//! a <u> <v>                         vertex flavor
//! a <u> <v> <cost> [<weight>]       edge flavor
//! d <s> <t>                         explicit demand, or
//! t <L>                             threshold demands (vertex flavor only)
//! ```
//!
//! Nodes without an `n` line cost 1. Weights are all-or-nothing per file in
//! canonical output; a missing weight on a weighted file reads as 0.
//! Parallel arcs in the edge flavor are merged: costs add up, the weight is
//! the smaller one.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use multicut_core::reductions::PullBackRule;
use multicut_core::{
    CutSet, Demands, DirectedGraph, Flavor, Instance, ReductionKind, ReductionMapping,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    /// 1-based line number; 0 for whole-file problems.
    pub line: usize,
    pub reason: String,
}

fn err<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        reason: reason.into(),
    })
}

struct Tokens<'a> {
    line: usize,
    iter: std::str::SplitAsciiWhitespace<'a>,
}

impl<'a> Tokens<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Self {
            line,
            iter: text.split_ascii_whitespace(),
        }
    }

    fn word(&mut self, what: &str) -> Result<&'a str, ParseError> {
        match self.iter.next() {
            Some(w) => Ok(w),
            None => err(self.line, format!("missing {what}")),
        }
    }

    fn count(&mut self, what: &str) -> Result<usize, ParseError> {
        let w = self.word(what)?;
        w.parse().or_else(|_| {
            err(
                self.line,
                format!("{what} `{w}` is not a nonnegative integer"),
            )
        })
    }

    /// A 1-indexed id in `1..=n`, returned 0-indexed.
    fn id(&mut self, what: &str, n: usize) -> Result<usize, ParseError> {
        let v = self.count(what)?;
        if v == 0 || v > n {
            return err(self.line, format!("{what} {v} outside 1..={n}"));
        }
        Ok(v - 1)
    }

    fn number(&mut self, what: &str) -> Result<f64, ParseError> {
        let w = self.word(what)?;
        match w.parse::<f64>() {
            Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
            _ => err(
                self.line,
                format!("{what} `{w}` is not a finite nonnegative number"),
            ),
        }
    }

    fn optional_number(&mut self, what: &str) -> Result<Option<f64>, ParseError> {
        match self.iter.clone().next() {
            Some(_) => self.number(what).map(Some),
            None => Ok(None),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.iter.next() {
            Some(w) => err(self.line, format!("unexpected token `{w}`")),
            None => Ok(()),
        }
    }
}

/// Lines that carry content, with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let Some((pline, header)) = lines.next() else {
        return err(0, "missing `p dmc` line");
    };
    let mut tok = Tokens::new(pline, header);
    if tok.word("problem line")? != "p" || tok.word("format")? != "dmc" {
        return err(pline, "first line must be `p dmc <vertex|edge> <n> <m>`");
    }
    let flavor = match tok.word("flavor")? {
        "vertex" => Flavor::Vertex,
        "edge" => Flavor::Edge,
        other => return err(pline, format!("unknown flavor `{other}`")),
    };
    let n = tok.count("node count")?;
    let m = tok.count("arc count")?;
    tok.end()?;

    let mut node_cost = vec![None; n];
    let mut node_weight: Vec<Option<f64>> = vec![None; n];
    // Edge flavor: (u, v) -> (cost, weight).
    let mut arcs: BTreeMap<(usize, usize), (f64, Option<f64>)> = BTreeMap::new();
    let mut arc_lines = 0;
    let mut pairs = Vec::new();
    let mut threshold: Option<f64> = None;
    let mut demand_line = 0;
    for (ln, line) in lines {
        let mut tok = Tokens::new(ln, line);
        match tok.word("line kind")? {
            "p" => return err(ln, "duplicate `p` line"),
            "n" => {
                if flavor != Flavor::Vertex {
                    return err(ln, "`n` lines belong to the vertex flavor");
                }
                let v = tok.id("node", n)?;
                if node_cost[v].is_some() {
                    return err(ln, format!("node {} listed twice", v + 1));
                }
                node_cost[v] = Some(tok.number("cost")?);
                node_weight[v] = tok.optional_number("weight")?;
            }
            "a" => {
                let u = tok.id("tail", n)?;
                let v = tok.id("head", n)?;
                if u == v {
                    return err(ln, format!("self-loop at node {}", u + 1));
                }
                arc_lines += 1;
                match flavor {
                    Flavor::Vertex => {
                        arcs.insert((u, v), (1.0, None));
                    }
                    Flavor::Edge => {
                        let cost = tok.number("cost")?;
                        let weight = tok.optional_number("weight")?;
                        let entry = arcs.entry((u, v)).or_insert((0.0, weight));
                        entry.0 += cost;
                        entry.1 = match (entry.1, weight) {
                            (Some(a), Some(b)) => Some(a.min(b)),
                            (a, b) => a.or(b),
                        };
                    }
                }
            }
            "d" => {
                if threshold.is_some() {
                    return err(ln, "`d` and `t` demand lines cannot be mixed");
                }
                let s = tok.id("source", n)?;
                let t = tok.id("target", n)?;
                if s == t {
                    return err(ln, "demand endpoints must differ");
                }
                pairs.push((s, t));
                demand_line = ln;
            }
            "t" => {
                if !pairs.is_empty() {
                    return err(ln, "`d` and `t` demand lines cannot be mixed");
                }
                if threshold.is_some() {
                    return err(ln, "more than one `t` line");
                }
                if flavor != Flavor::Vertex {
                    return err(ln, "threshold demands need the vertex flavor");
                }
                let l = tok.number("threshold")?;
                if l <= 0.0 {
                    return err(ln, "threshold must be positive");
                }
                threshold = Some(l);
                demand_line = ln;
            }
            other => return err(ln, format!("unknown line kind `{other}`")),
        }
        tok.end()?;
    }
    if arc_lines != m {
        return err(
            pline,
            format!("header declares {m} arcs, found {arc_lines}"),
        );
    }
    let graph = DirectedGraph::new(n, arcs.keys().copied()).or_else(|e| err(0, e.to_string()))?;
    let (costs, weights) = match flavor {
        Flavor::Vertex => {
            let costs = node_cost.iter().map(|c| c.unwrap_or(1.0)).collect();
            let weights = node_weight
                .iter()
                .any(Option::is_some)
                .then(|| node_weight.iter().map(|w| w.unwrap_or(0.0)).collect());
            (costs, weights)
        }
        Flavor::Edge => {
            // BTreeMap order matches the graph's canonical arc order.
            let costs = arcs.values().map(|a| a.0).collect();
            let weights = arcs
                .values()
                .any(|a| a.1.is_some())
                .then(|| arcs.values().map(|a| a.1.unwrap_or(0.0)).collect());
            (costs, weights)
        }
    };
    let demands = match threshold {
        Some(l) => Demands::Threshold(l),
        None => Demands::Pairs(pairs),
    };
    Instance::new(graph, flavor, costs, weights, demands)
        .or_else(|e| err(demand_line, e.to_string()))
}

pub fn flavor_name(flavor: Flavor) -> &'static str {
    match flavor {
        Flavor::Vertex => "vertex",
        Flavor::Edge => "edge",
    }
}

/// Canonical text: header, nodes by id, arcs in canonical order, demands
/// sorted. Floats use the shortest representation that parses back exactly.
pub fn serialize(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p dmc {} {} {}",
        flavor_name(inst.flavor),
        g.node_count(),
        g.arc_count()
    );
    let weight = |i: usize| inst.weights.as_ref().map(|w| w[i]);
    match inst.flavor {
        Flavor::Vertex => {
            for v in 0..g.node_count() {
                let _ = write!(out, "n {} {}", v + 1, inst.costs[v]);
                if let Some(w) = weight(v) {
                    let _ = write!(out, " {w}");
                }
                out.push('\n');
            }
            for &(u, v) in g.arcs() {
                let _ = writeln!(out, "a {} {}", u + 1, v + 1);
            }
        }
        Flavor::Edge => {
            for (i, &(u, v)) in g.arcs().iter().enumerate() {
                let _ = write!(out, "a {} {} {}", u + 1, v + 1, inst.costs[i]);
                if let Some(w) = weight(i) {
                    let _ = write!(out, " {w}");
                }
                out.push('\n');
            }
        }
    }
    match &inst.demands {
        Demands::Threshold(l) => {
            let _ = writeln!(out, "t {l}");
        }
        Demands::Pairs(pairs) => {
            let mut pairs = pairs.clone();
            pairs.sort_unstable();
            pairs.dedup();
            for (s, t) in pairs {
                let _ = writeln!(out, "d {} {}", s + 1, t + 1);
            }
        }
    }
    out
}

/// Cut file: one `x <v>` line per node, or `x <u> <v>` per arc.
pub fn serialize_cut(inst: &Instance, cut: &CutSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "c cost {}", cut.cost);
    for &e in &cut.elements {
        match inst.flavor {
            Flavor::Vertex => {
                let _ = writeln!(out, "x {}", e + 1);
            }
            Flavor::Edge => {
                let (u, v) = inst.graph.arc(e);
                let _ = writeln!(out, "x {} {}", u + 1, v + 1);
            }
        }
    }
    out
}

pub fn parse_cut(text: &str, inst: &Instance) -> Result<CutSet, ParseError> {
    let n = inst.node_count();
    let mut elements = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut tok = Tokens::new(ln, line);
        if tok.word("line kind")? != "x" {
            return err(ln, "cut files hold only `x` lines");
        }
        let e = match inst.flavor {
            Flavor::Vertex => tok.id("node", n)?,
            Flavor::Edge => {
                let u = tok.id("tail", n)?;
                let v = tok.id("head", n)?;
                match inst.graph.arc_index(u, v) {
                    Some(a) => a,
                    None => return err(ln, format!("no arc ({}, {})", u + 1, v + 1)),
                }
            }
        };
        tok.end()?;
        elements.push(e);
    }
    CutSet::new(inst, elements).or_else(|e| err(0, e.to_string()))
}

fn rule_name(rule: PullBackRule) -> &'static str {
    match rule {
        PullBackRule::Any => "any",
        PullBackRule::AllCopies => "all-copies",
    }
}

/// Mapping sidecar. Elements are 1-indexed node ids, or 1-indexed positions
/// in the canonical arc order for the edge flavor.
///
/// ```text
/// k <kind> <any|all-copies>
/// m <transformed-element> <original-element>
/// x <original-element>          preprocessed cut
/// ```
pub fn serialize_map(mapping: &ReductionMapping) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k {} {}", mapping.kind.name(), rule_name(mapping.rule));
    for (e, origins) in mapping.origin.iter().enumerate() {
        for &o in origins {
            let _ = writeln!(out, "m {} {}", e + 1, o + 1);
        }
    }
    for &o in &mapping.preprocessed_cut {
        let _ = writeln!(out, "x {}", o + 1);
    }
    out
}

/// Rebuilds a mapping from its sidecar and the transformed instance. The
/// original element count bounds the ids on the right of `m` lines.
pub fn parse_map(
    text: &str,
    transformed: Instance,
    original_elements: usize,
) -> Result<ReductionMapping, ParseError> {
    let size = transformed.element_count();
    let mut header = None;
    let mut origin = vec![Vec::new(); size];
    let mut pre = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut tok = Tokens::new(ln, line);
        match tok.word("line kind")? {
            "k" => {
                if header.is_some() {
                    return err(ln, "duplicate `k` line");
                }
                let name = tok.word("reduction kind")?;
                let kind = ReductionKind::from_name(name)
                    .map_or_else(|| err(ln, format!("unknown reduction `{name}`")), Ok)?;
                let rule = match tok.word("pull-back rule")? {
                    "any" => PullBackRule::Any,
                    "all-copies" => PullBackRule::AllCopies,
                    other => return err(ln, format!("unknown pull-back rule `{other}`")),
                };
                header = Some((kind, rule));
            }
            "m" => {
                let e = tok.id("transformed element", size)?;
                let o = tok.id("original element", original_elements)?;
                origin[e].push(o);
            }
            "x" => pre.push(tok.id("original element", original_elements)?),
            other => return err(ln, format!("unknown line kind `{other}`")),
        }
        tok.end()?;
    }
    let Some((kind, rule)) = header else {
        return err(0, "missing `k` line");
    };
    Ok(ReductionMapping {
        kind,
        transformed,
        origin,
        rule,
        preprocessed_cut: pre,
    })
}
