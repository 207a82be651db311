//! Text formats: edge lists, colorings and DOT export.
//!
//! Edge list:
//!
//! ```text
//! 3 2
//! names
//! a
//! b
//! c
//! 0 1
//! 1 2
//! ```
//!
//! The `names` section is optional (vertices are then called `0..n`).
//! Blank lines and `#` comments are ignored. A coloring file holds one
//! `vertexName color` line per vertex with colors starting at 1.

use std::fmt::Write as _;

use crate::coloring::Coloring;
use crate::digraph::Digraph;
use crate::error::{OcnError, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn bad(line: usize, msg: impl std::fmt::Display) -> OcnError {
    OcnError::Input(format!("line {line}: {msg}"))
}

fn two_numbers(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut num = || -> Result<usize> {
        let w = it.next().ok_or_else(|| bad(line, "expected two integers"))?;
        w.parse().map_err(|_| bad(line, format!("`{w}` is not a non-negative integer")))
    };
    let pair = (num()?, num()?);
    if it.next().is_some() {
        return Err(bad(line, "expected exactly two integers"));
    }
    Ok(pair)
}

pub fn parse_edgelist(text: &str) -> Result<Digraph> {
    let mut lines = content_lines(text).peekable();
    let (line, header) = lines.next().ok_or_else(|| OcnError::Input("empty edge list".into()))?;
    let (n, m) = two_numbers(line, header)?;
    let names = if lines.peek().is_some_and(|&(_, l)| l == "names") {
        lines.next();
        let mut names = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, name) = lines.next().ok_or_else(|| OcnError::Input(format!("expected {n} names")))?;
            if name.split_whitespace().count() != 1 {
                return Err(bad(line, "vertex names may not contain whitespace"));
            }
            names.push(name.to_string());
        }
        names
    } else {
        (0..n).map(|i| i.to_string()).collect()
    };
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines.next().ok_or_else(|| OcnError::Input(format!("expected {m} arcs")))?;
        arcs.push(two_numbers(line, text)?);
    }
    if let Some((line, _)) = lines.next() {
        return Err(bad(line, "unexpected content after the last arc"));
    }
    let g = Digraph::with_names(names, arcs)?;
    if g.arc_count() != m {
        return Err(OcnError::Input(format!("arc list contains duplicates ({} distinct of {m})", g.arc_count())));
    }
    Ok(g)
}

pub fn write_edgelist(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.arc_count());
    if !g.has_default_names() {
        out.push_str("names\n");
        for name in g.names() {
            out.push_str(name);
            out.push('\n');
        }
    }
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses `vertexName color` lines; every vertex must appear exactly once.
pub fn parse_coloring(text: &str, g: &Digraph) -> Result<Coloring> {
    let index: std::collections::HashMap<&str, usize> =
        g.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut colors: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for (line, text) in content_lines(text) {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [name, color] = fields[..] else {
            return Err(bad(line, "expected `vertexName color`"));
        };
        let v = *index.get(name).ok_or_else(|| bad(line, format!("unknown vertex `{name}`")))?;
        let c: usize = color
            .parse()
            .ok()
            .filter(|&c| c >= 1)
            .ok_or_else(|| bad(line, format!("`{color}` is not a color (colors start at 1)")))?;
        if colors[v].replace(c - 1).is_some() {
            return Err(bad(line, format!("vertex `{name}` colored twice")));
        }
    }
    if let Some(v) = colors.iter().position(Option::is_none) {
        return Err(OcnError::Input(format!("vertex `{}` has no color", g.name(v))));
    }
    Ok(Coloring::new(colors.into_iter().map(Option::unwrap).collect()))
}

pub fn write_coloring(g: &Digraph, c: &Coloring) -> String {
    let mut out = String::new();
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "{} {}", g.name(v), c.color(v) + 1);
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering; with a coloring every vertex label shows its color.
pub fn to_dot(g: &Digraph, coloring: Option<&Coloring>) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.vertex_count() {
        match coloring {
            Some(c) => {
                let _ = writeln!(out, "  {} [label={}];", dot_id(g.name(v)), dot_id(&format!("{}:{}", g.name(v), c.color(v) + 1)));
            }
            None => {
                let _ = writeln!(out, "  {};", dot_id(g.name(v)));
            }
        }
    }
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "  {} -> {};", dot_id(g.name(u)), dot_id(g.name(v)));
    }
    out.push_str("}\n");
    out
}
