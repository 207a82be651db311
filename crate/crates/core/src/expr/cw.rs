//! Directed clique-width expressions in prefix form:
//! `V(name,label)`, `U(x,y)`, `A(a,b,x)` (arcs from label `a` to label `b`)
//! and `R(a,b,x)` (relabel `a` to `b`).
//!
//! Nodes are stored in post-order like the binary expressions: children
//! precede parents, the root is last and leaves appear left to right.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::lexer::{tokenize, unexpected, Cursor, Tok};
use crate::digraph::Digraph;
use crate::error::{OcnError, Pos, Result};

/// Largest label accepted anywhere.
pub const MAX_LABEL: u16 = 16;

pub type Label = u16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CwNode {
    Create { name: String, label: Label },
    Union(usize, usize),
    AddArcs { from: Label, to: Label, child: usize },
    Relabel { from: Label, to: Label, child: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CwExpr {
    nodes: Vec<CwNode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CwStats {
    /// largest label used
    pub k: Label,
    pub creates: usize,
    pub unions: usize,
    pub add_arcs: usize,
    pub relabels: usize,
}

impl CwExpr {
    pub fn create(name: impl Into<String>, label: Label) -> Self {
        CwExpr { nodes: vec![CwNode::Create { name: name.into(), label }] }
    }

    pub fn union(left: CwExpr, right: CwExpr) -> Result<Self> {
        let shift = left.nodes.len();
        let mut nodes = left.nodes;
        nodes.extend(right.nodes.into_iter().map(|n| n.shifted(shift)));
        let (l, r) = (shift - 1, nodes.len() - 1);
        nodes.push(CwNode::Union(l, r));
        let e = CwExpr { nodes };
        let mut seen = HashSet::new();
        if let Some(dup) = e.leaf_names().find(|n| !seen.insert(*n)) {
            return Err(OcnError::DuplicateName { name: dup.to_string(), pos: None });
        }
        Ok(e)
    }

    pub fn add_arcs(mut self, from: Label, to: Label) -> Self {
        let child = self.root();
        self.nodes.push(CwNode::AddArcs { from, to, child });
        self
    }

    pub fn relabel(mut self, from: Label, to: Label) -> Self {
        let child = self.root();
        self.nodes.push(CwNode::Relabel { from, to, child });
        self
    }

    pub(crate) fn from_nodes_unchecked(nodes: Vec<CwNode>) -> Self {
        CwExpr { nodes }
    }

    pub fn nodes(&self) -> &[CwNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn leaf_names(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().filter_map(|n| match n {
            CwNode::Create { name, .. } => Some(name.as_str()),
            _ => None,
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_names().count()
    }

    /// Checks labels and reports the label count and operation counts.
    pub fn validate(&self) -> Result<CwStats> {
        let mut s = CwStats::default();
        let check = |l: Label| {
            if l == 0 || l > MAX_LABEL {
                Err(OcnError::InvalidCwOp(format!("label {l} outside 1..={MAX_LABEL}")))
            } else {
                Ok(l)
            }
        };
        for n in &self.nodes {
            match *n {
                CwNode::Create { label, .. } => {
                    s.k = s.k.max(check(label)?);
                    s.creates += 1;
                }
                CwNode::Union(..) => s.unions += 1,
                CwNode::AddArcs { from, to, .. } | CwNode::Relabel { from, to, .. } => {
                    s.k = s.k.max(check(from)?).max(check(to)?);
                    let (kind, sym) = match n {
                        CwNode::AddArcs { .. } => {
                            s.add_arcs += 1;
                            ("arc insertion", 'A')
                        }
                        _ => {
                            s.relabels += 1;
                            ("relabeling", 'R')
                        }
                    };
                    if from == to {
                        return Err(OcnError::InvalidCwOp(format!(
                            "{kind} {sym}({from},{to}) needs two distinct labels"
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    /// Canonical prefix text, e.g. `A(1,2,U(V(x,1),V(y,2)))`.
    pub fn to_text(&self) -> String {
        enum Step<'a> {
            Node(usize),
            Text(&'a str),
        }
        let mut out = String::new();
        let mut stack = vec![Step::Node(self.root())];
        while let Some(step) = stack.pop() {
            match step {
                Step::Text(t) => out.push_str(t),
                Step::Node(i) => match &self.nodes[i] {
                    CwNode::Create { name, label } => {
                        out.push_str(&format!("V({name},{label})"));
                    }
                    CwNode::Union(l, r) => {
                        out.push_str("U(");
                        stack.push(Step::Text(")"));
                        stack.push(Step::Node(*r));
                        stack.push(Step::Text(","));
                        stack.push(Step::Node(*l));
                    }
                    CwNode::AddArcs { from, to, child } | CwNode::Relabel { from, to, child } => {
                        let op = if matches!(self.nodes[i], CwNode::AddArcs { .. }) { 'A' } else { 'R' };
                        out.push_str(&format!("{op}({from},{to},"));
                        stack.push(Step::Text(")"));
                        stack.push(Step::Node(*child));
                    }
                },
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_cw(text)
    }
}

impl CwNode {
    fn shifted(self, by: usize) -> Self {
        match self {
            CwNode::Union(l, r) => CwNode::Union(l + by, r + by),
            CwNode::AddArcs { from, to, child } => CwNode::AddArcs { from, to, child: child + by },
            CwNode::Relabel { from, to, child } => CwNode::Relabel { from, to, child: child + by },
            leaf => leaf,
        }
    }
}

impl fmt::Display for CwExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn cw_validate(e: &CwExpr) -> Result<CwStats> {
    e.validate()
}

enum Frame {
    Union(Option<usize>),
    Unary { arcs: bool, from: Label, to: Label },
    Paren,
}

fn parse_label(cur: &mut Cursor) -> Result<Label> {
    let (w, pos) = cur.word("a label")?;
    let value: u64 = w.parse().map_err(|_| OcnError::Syntax { pos, msg: format!("`{w}` is not a label") })?;
    if value == 0 || value > u64::from(MAX_LABEL) {
        return Err(OcnError::LabelOutOfRange { label: value, max: MAX_LABEL as usize, pos });
    }
    Ok(value as Label)
}

/// Parses prefix clique-width syntax with an explicit stack; rejects
/// repeated vertex names, labels outside `1..=16` and `A`/`R` with equal labels.
pub fn parse_cw(text: &str) -> Result<CwExpr> {
    let mut cur = Cursor::new(tokenize(text, &[])?);
    let mut nodes: Vec<CwNode> = Vec::new();
    let mut names: HashMap<String, Pos> = HashMap::new();
    let mut frames: Vec<Frame> = Vec::new();
    loop {
        let t = cur.next();
        let done = match &t.tok {
            Tok::LParen => {
                frames.push(Frame::Paren);
                continue;
            }
            Tok::Word(w) if w == "V" => {
                cur.expect(Tok::LParen, "`(`")?;
                let (name, pos) = cur.word("a vertex name")?;
                cur.expect(Tok::Comma, "`,`")?;
                let label = parse_label(&mut cur)?;
                cur.expect(Tok::RParen, "`)`")?;
                if names.insert(name.clone(), pos).is_some() {
                    return Err(OcnError::DuplicateName { name, pos: Some(pos) });
                }
                nodes.push(CwNode::Create { name, label });
                nodes.len() - 1
            }
            Tok::Word(w) if w == "U" => {
                cur.expect(Tok::LParen, "`(`")?;
                frames.push(Frame::Union(None));
                continue;
            }
            Tok::Word(w) if w == "A" || w == "R" => {
                let arcs = w == "A";
                cur.expect(Tok::LParen, "`(`")?;
                let from = parse_label(&mut cur)?;
                cur.expect(Tok::Comma, "`,`")?;
                let to = parse_label(&mut cur)?;
                cur.expect(Tok::Comma, "`,`")?;
                if from == to {
                    return Err(OcnError::Syntax {
                        pos: t.pos,
                        msg: format!("{w}({from},{to}) needs two distinct labels"),
                    });
                }
                frames.push(Frame::Unary { arcs, from, to });
                continue;
            }
            _ => return Err(unexpected(&t, "`V(`, `U(`, `A(`, `R(` or `(`")),
        };
        // a node is complete; close every frame it finishes
        let mut done = done;
        loop {
            match frames.last_mut() {
                None => {
                    cur.finish()?;
                    return Ok(CwExpr { nodes });
                }
                Some(Frame::Union(first @ None)) => {
                    cur.expect(Tok::Comma, "`,`")?;
                    *first = Some(done);
                    break;
                }
                Some(Frame::Union(Some(left))) => {
                    let left = *left;
                    cur.expect(Tok::RParen, "`)`")?;
                    frames.pop();
                    nodes.push(CwNode::Union(left, done));
                }
                Some(Frame::Unary { arcs, from, to }) => {
                    let (arcs, from, to) = (*arcs, *from, *to);
                    cur.expect(Tok::RParen, "`)`")?;
                    frames.pop();
                    nodes.push(if arcs {
                        CwNode::AddArcs { from, to, child: done }
                    } else {
                        CwNode::Relabel { from, to, child: done }
                    });
                }
                Some(Frame::Paren) => {
                    cur.expect(Tok::RParen, "`)`")?;
                    frames.pop();
                    continue;
                }
            }
            done = nodes.len() - 1;
        }
    }
}

/// Evaluates `e`, returning the digraph (vertex `k` is the `k`-th leaf) and
/// every vertex's final label.
///
/// Inserting an arc that already exists is a no-op; inserting one opposite
/// to an existing arc is an error.
pub fn eval_cw(e: &CwExpr) -> Result<(Digraph, Vec<Label>)> {
    e.validate()?;
    let names: Vec<String> = e.leaf_names().map(str::to_string).collect();
    let mut labels: Vec<Label> = Vec::with_capacity(names.len());
    let mut arcs: HashSet<(usize, usize)> = HashSet::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut spans: Vec<(usize, usize)> = Vec::with_capacity(e.nodes.len());
    for n in &e.nodes {
        let span = match *n {
            CwNode::Create { label, .. } => {
                labels.push(label);
                (labels.len() - 1, 1)
            }
            CwNode::Union(l, r) => (spans[l].0, spans[l].1 + spans[r].1),
            CwNode::Relabel { from, to, child } => {
                let (s, len) = spans[child];
                for l in &mut labels[s..s + len] {
                    if *l == from {
                        *l = to;
                    }
                }
                (s, len)
            }
            CwNode::AddArcs { from, to, child } => {
                let (s, len) = spans[child];
                let range = s..s + len;
                let tails: Vec<usize> = range.clone().filter(|&v| labels[v] == from).collect();
                let heads: Vec<usize> = range.filter(|&v| labels[v] == to).collect();
                for &u in &tails {
                    for &v in &heads {
                        if arcs.contains(&(v, u)) {
                            return Err(OcnError::OppositeArcs {
                                op: format!("A({from},{to})"),
                                from: names[u].clone(),
                                to: names[v].clone(),
                            });
                        }
                        if arcs.insert((u, v)) {
                            order.push((u, v));
                        }
                    }
                }
                (s, len)
            }
        };
        spans.push(span);
    }
    let g = Digraph::with_names(names, order)?;
    Ok((g, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_constructor_syntax() {
        let e = parse_cw("R(2,1, A(1,2, U(V(x,1), V(y,2))))").unwrap();
        let expected = CwExpr::union(CwExpr::create("x", 1), CwExpr::create("y", 2))
            .unwrap()
            .add_arcs(1, 2)
            .relabel(2, 1);
        assert_eq!(e, expected);
        assert_eq!(e.to_text(), "R(2,1,A(1,2,U(V(x,1),V(y,2))))");
        assert_eq!(parse_cw("((V(x,1)))").unwrap(), CwExpr::create("x", 1));
    }

    #[test]
    fn evaluation() {
        let (g, labels) = eval_cw(&parse_cw("A(1,2, U(V(x,1), V(y,2)))").unwrap()).unwrap();
        assert_eq!(g.arcs().collect::<Vec<_>>(), [(0, 1)]);
        assert_eq!(labels, [1, 2]);
        let (_, labels) = eval_cw(&parse_cw("R(2,1, A(1,2, U(V(x,1), V(y,2))))").unwrap()).unwrap();
        assert_eq!(labels, [1, 1]);
        // repeated insertion is idempotent
        let (g, _) = eval_cw(&parse_cw("A(1,2,A(1,2, U(V(x,1), V(y,2))))").unwrap()).unwrap();
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn opposite_arcs_are_rejected() {
        let err = eval_cw(&parse_cw("A(2,1, A(1,2, U(V(x,1),V(y,2))))").unwrap()).unwrap_err();
        assert_eq!(
            err,
            OcnError::OppositeArcs { op: "A(2,1)".into(), from: "y".into(), to: "x".into() }
        );
    }

    #[test]
    fn validation() {
        assert!(matches!(parse_cw("A(1,1,V(x,1))"), Err(OcnError::Syntax { .. })));
        let built = CwExpr::create("x", 1).add_arcs(1, 1);
        assert!(matches!(cw_validate(&built), Err(OcnError::InvalidCwOp(_))));
        assert!(matches!(cw_validate(&CwExpr::create("x", 0)), Err(OcnError::InvalidCwOp(_))));
        assert!(matches!(parse_cw("V(x,0)"), Err(OcnError::LabelOutOfRange { label: 0, .. })));
        assert!(matches!(parse_cw("V(x,17)"), Err(OcnError::LabelOutOfRange { label: 17, .. })));
        let stats = cw_validate(&parse_cw("R(2,3,A(1,2,U(V(x,1),V(y,2))))").unwrap()).unwrap();
        assert_eq!(
            stats,
            CwStats { k: 3, creates: 2, unions: 1, add_arcs: 1, relabels: 1 }
        );
    }

    #[test]
    fn syntax_errors_and_duplicates() {
        assert!(matches!(parse_cw("U(V(x,1))"), Err(OcnError::Syntax { .. })));
        assert!(matches!(parse_cw("V(x,1) V(y,1)"), Err(OcnError::Syntax { .. })));
        assert!(matches!(parse_cw("W(x,1)"), Err(OcnError::Syntax { .. })));
        assert!(matches!(
            parse_cw("U(V(x,1),V(x,2))"),
            Err(OcnError::DuplicateName { .. })
        ));
        assert!(CwExpr::union(CwExpr::create("x", 1), CwExpr::create("x", 1)).is_err());
        // label keywords are fine as vertex names
        assert!(parse_cw("U(V(V,1),V(U,2))").is_ok());
    }

    #[test]
    fn deep_nesting() {
        let mut text = "V(x0,1)".to_string();
        for i in 1..20_000 {
            text = format!("U({text},V(x{i},1))");
        }
        let e = parse_cw(&text).unwrap();
        assert_eq!(e.leaf_count(), 20_000);
        assert_eq!(e.to_text(), text);
    }
}
