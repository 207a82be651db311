//! The binary integer program for the oriented chromatic number, written in
//! LP text format, and an enumerative check of the model against the
//! definition of an oriented coloring.
//!
//! Variables are `y_j` (color `j` is used) and `x_i_j` (vertex `i` gets
//! color `j`), with vertices and colors numbered from 1 in the output.

use std::fmt::Write as _;

use crate::coloring::{verify_oriented_coloring, Coloring};
use crate::digraph::Digraph;
use crate::error::{OcnError, Result};

/// Largest vertex count accepted by [`enumerate_check`].
pub const MAX_ENUMERATE_N: usize = 6;

/// A variable of the model, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Y(usize),
    X(usize, usize),
}

impl Var {
    pub fn name(&self) -> String {
        match *self {
            Var::Y(j) => format!("y_{}", j + 1),
            Var::X(i, j) => format!("x_{}_{}", i + 1, j + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Eq,
    Le,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    Assignment,
    ArcColor,
    ArcPair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub group: Group,
    /// coefficients of distinct variables, in order of first appearance
    pub terms: Vec<(i64, Var)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    fn new(name: String, group: Group, raw: impl IntoIterator<Item = (i64, Var)>, sense: Sense, rhs: i64) -> Self {
        let mut terms: Vec<(i64, Var)> = Vec::new();
        for (c, v) in raw {
            match terms.iter_mut().find(|(_, w)| *w == v) {
                Some(t) => t.0 += c,
                None => terms.push((c, v)),
            }
        }
        Constraint { name, group, terms, sense, rhs }
    }

    fn holds(&self, value: impl Fn(Var) -> i64) -> bool {
        let lhs: i64 = self.terms.iter().map(|&(c, v)| c * value(v)).sum();
        match self.sense {
            Sense::Eq => lhs == self.rhs,
            Sense::Le => lhs <= self.rhs,
        }
    }
}

/// The model for one digraph: minimize the number of used colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipModel {
    pub n: usize,
    pub constraints: Vec<Constraint>,
}

impl BipModel {
    /// Builds the model; fails when `g` has opposite arcs.
    pub fn new(g: &Digraph) -> Result<Self> {
        g.ensure_oriented()?;
        let n = g.vertex_count();
        let arcs: Vec<(usize, usize)> = g.arcs().collect();
        let mut constraints = Vec::new();
        for i in 0..n {
            constraints.push(Constraint::new(
                format!("assign_{}", i + 1),
                Group::Assignment,
                (0..n).map(|j| (1, Var::X(i, j))),
                Sense::Eq,
                1,
            ));
        }
        for (e, &(u, v)) in arcs.iter().enumerate() {
            for j in 0..n {
                constraints.push(Constraint::new(
                    format!("arc_{}_{}", e + 1, j + 1),
                    Group::ArcColor,
                    [(1, Var::X(u, j)), (1, Var::X(v, j)), (-1, Var::Y(j))],
                    Sense::Le,
                    0,
                ));
            }
        }
        // arcs (u,v) and (x,y) may not run between the same two classes in
        // opposite directions: not both c(v) = c(x) = j and c(u) = c(y) = j'
        for (e1, &(u, v)) in arcs.iter().enumerate() {
            for (e2, &(x, y)) in arcs.iter().enumerate().skip(e1 + 1) {
                for j in 0..n {
                    for j2 in (0..n).filter(|&j2| j2 != j) {
                        constraints.push(Constraint::new(
                            format!("pair_{}_{}_{}_{}", e1 + 1, e2 + 1, j + 1, j2 + 1),
                            Group::ArcPair,
                            [(1, Var::X(v, j)), (1, Var::X(x, j)), (1, Var::X(u, j2)), (1, Var::X(y, j2))],
                            Sense::Le,
                            3,
                        ));
                    }
                }
            }
        }
        Ok(BipModel { n, constraints })
    }

    /// `y_1..y_n` followed by `x_i_j` in row-major order.
    pub fn variables(&self) -> impl Iterator<Item = Var> + '_ {
        let n = self.n;
        (0..n).map(Var::Y).chain((0..n).flat_map(move |i| (0..n).map(move |j| Var::X(i, j))))
    }

    pub fn count(&self, group: Group) -> usize {
        self.constraints.iter().filter(|c| c.group == group).count()
    }

    /// Whether the 0-based coloring (with `y_j` = color `j` is used)
    /// satisfies every constraint.
    pub fn satisfied_by(&self, colors: &[usize]) -> bool {
        let value = |v: Var| match v {
            Var::Y(j) => colors.contains(&j) as i64,
            Var::X(i, j) => (colors[i] == j) as i64,
        };
        self.constraints.iter().all(|c| c.holds(value))
    }

    /// The model in LP text format.
    pub fn to_lp(&self) -> String {
        let mut out = String::from("Minimize\n");
        let obj: Vec<(i64, Var)> = (0..self.n).map(|j| (1, Var::Y(j))).collect();
        write_row(&mut out, "obj", &obj, "");
        out.push_str("Subject To\n");
        for c in &self.constraints {
            let tail = match c.sense {
                Sense::Eq => format!(" = {}", c.rhs),
                Sense::Le => format!(" <= {}", c.rhs),
            };
            write_row(&mut out, &c.name, &c.terms, &tail);
        }
        out.push_str("Binary\n");
        let mut line = String::new();
        for v in self.variables() {
            if line.len() > 70 {
                let _ = writeln!(out, "{line}");
                line.clear();
            }
            line.push(' ');
            line.push_str(&v.name());
        }
        if !line.is_empty() {
            let _ = writeln!(out, "{line}");
        }
        out.push_str("End\n");
        out
    }
}

/// One named row, wrapped before a term once a line passes 70 characters.
fn write_row(out: &mut String, name: &str, terms: &[(i64, Var)], tail: &str) {
    let mut line = format!(" {name}:");
    for (k, &(c, v)) in terms.iter().enumerate() {
        let sign = match (k, c < 0) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => "+ ",
            (_, true) => "- ",
        };
        let coef = if c.abs() == 1 { String::new() } else { format!("{} ", c.abs()) };
        let term = format!(" {sign}{coef}{}", v.name());
        if line.len() + term.len() > 70 {
            let _ = writeln!(out, "{line}");
            line = String::from("  ");
        }
        line.push_str(&term);
    }
    let _ = writeln!(out, "{line}{tail}");
}

/// The model of `g` in LP text format.
pub fn emit_bip(g: &Digraph) -> Result<String> {
    Ok(BipModel::new(g)?.to_lp())
}

fn for_each_assignment(n: usize, r: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut colors = vec![0; n];
    loop {
        if !f(&colors) {
            return false;
        }
        let mut i = 0;
        while i < n && colors[i] + 1 == r {
            colors[i] = 0;
            i += 1;
        }
        if i == n {
            return true;
        }
        colors[i] += 1;
    }
}

fn check_size(g: &Digraph, r: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > MAX_ENUMERATE_N {
        return Err(OcnError::TooLarge { what: "vertex count", size: n, limit: MAX_ENUMERATE_N });
    }
    if r > n.max(1) {
        return Err(OcnError::Input(format!("at most {n} colors for {n} vertices, got {r}")));
    }
    Ok(())
}

/// Whether, over all maps from the vertices to `r` colors, the model holds
/// exactly for the oriented colorings.
pub fn enumerate_check(g: &Digraph, r: usize) -> Result<bool> {
    check_size(g, r)?;
    let model = BipModel::new(g)?;
    let mut err = None;
    let agrees = for_each_assignment(g.vertex_count(), r, |colors| {
        match verify_oriented_coloring(g, &Coloring::new(colors.to_vec())) {
            Ok(v) => v.is_none() == model.satisfied_by(colors),
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(agrees),
    }
}

/// The smallest objective value `Σ y_j` over all feasible 0/1 points, by
/// enumerating the colorings with colors `0..n`.
pub fn enumerate_min_objective(g: &Digraph) -> Result<usize> {
    let n = g.vertex_count();
    check_size(g, n)?;
    let model = BipModel::new(g)?;
    let mut best = n;
    for_each_assignment(n, n.max(1), |colors| {
        if model.satisfied_by(colors) {
            let mut used = colors.to_vec();
            used.sort_unstable();
            used.dedup();
            best = best.min(used.len());
        }
        true
    });
    Ok(best)
}
