//! Binary expression trees shared by di-co and msp expressions.
//!
//! Nodes live in one vector in post-order: the children of node `i` have
//! smaller indices, the root is last, and leaves appear left to right. The
//! `k`-th leaf is vertex `k` of the evaluated digraph, and every subtree
//! covers a contiguous run of nodes and of vertices.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use super::lexer::{tokenize, unexpected, Cursor, Tok};
use crate::error::{OcnError, Pos, Result};

/// The two composition operators of a language; `TIGHT` binds more strongly.
pub trait OpPair: Copy + Eq + Hash + fmt::Debug + 'static {
    const LOOSE: Self;
    const TIGHT: Self;
    fn symbol(self) -> char;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinNode<O> {
    Leaf(String),
    Op(O, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinExpr<O> {
    nodes: Vec<BinNode<O>>,
}

impl<O: OpPair> BinExpr<O> {
    pub fn leaf(name: impl Into<String>) -> Self {
        BinExpr { nodes: vec![BinNode::Leaf(name.into())] }
    }

    /// `left op right`; fails if the operands share a vertex name.
    pub fn combine(op: O, left: Self, right: Self) -> Result<Self> {
        let shift = left.nodes.len();
        let mut nodes = left.nodes;
        nodes.reserve(right.nodes.len() + 1);
        nodes.extend(right.nodes.into_iter().map(|n| match n {
            BinNode::Op(o, l, r) => BinNode::Op(o, l + shift, r + shift),
            leaf => leaf,
        }));
        let (l, r) = (shift - 1, nodes.len() - 1);
        nodes.push(BinNode::Op(op, l, r));
        let e = BinExpr { nodes };
        e.check_names()?;
        Ok(e)
    }

    /// Accepts nodes already in canonical post-order.
    pub fn from_postorder(nodes: Vec<BinNode<O>>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(OcnError::Input("empty expression".into()));
        }
        let mut size = vec![0usize; nodes.len()];
        for (i, n) in nodes.iter().enumerate() {
            size[i] = match *n {
                BinNode::Leaf(_) => 1,
                BinNode::Op(_, l, r) => {
                    // right subtree ends just before i, left subtree just before that
                    if r + 1 != i || l >= r || l + size[r] != r {
                        return Err(OcnError::Input(format!("node {i} is not in post-order")));
                    }
                    1 + size[l] + size[r]
                }
            };
        }
        if size[nodes.len() - 1] != nodes.len() {
            return Err(OcnError::Input("nodes do not form a single tree".into()));
        }
        let e = BinExpr { nodes };
        e.check_names()?;
        Ok(e)
    }

    fn check_names(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for name in self.leaf_names() {
            if seen.insert(name, ()).is_some() {
                return Err(OcnError::DuplicateName { name: name.to_string(), pos: None });
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[BinNode<O>] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn leaf_names(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().filter_map(|n| match n {
            BinNode::Leaf(name) => Some(name.as_str()),
            BinNode::Op(..) => None,
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_names().count()
    }

    /// For every node, the first vertex of its subtree and the subtree's vertex count.
    pub fn vertex_spans(&self) -> Vec<(usize, usize)> {
        let mut spans: Vec<(usize, usize)> = Vec::with_capacity(self.nodes.len());
        let mut next = 0;
        for n in &self.nodes {
            let span = match *n {
                BinNode::Leaf(_) => {
                    next += 1;
                    (next - 1, 1)
                }
                BinNode::Op(_, l, r) => (spans[l].0, spans[l].1 + spans[r].1),
            };
            spans.push(span);
        }
        spans
    }

    /// Number of nodes in each subtree.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let s = match *n {
                BinNode::Leaf(_) => 1,
                BinNode::Op(_, l, r) => 1 + size[l] + size[r],
            };
            size.push(s);
        }
        size
    }

    /// The subexpression rooted at `node`.
    pub fn subexpr(&self, node: usize) -> Self {
        let start = node + 1 - self.subtree_sizes()[node];
        let nodes = self.nodes[start..=node]
            .iter()
            .map(|n| match n {
                BinNode::Op(o, l, r) => BinNode::Op(*o, l - start, r - start),
                leaf => leaf.clone(),
            })
            .collect();
        BinExpr { nodes }
    }

    /// Fully parenthesized text, e.g. `((a > b) + c)`.
    pub fn to_text(&self) -> String {
        enum Step {
            Node(usize),
            Text(&'static str),
            Sym(char),
        }
        let mut out = String::new();
        let mut stack = vec![Step::Node(self.root())];
        while let Some(step) = stack.pop() {
            match step {
                Step::Text(t) => out.push_str(t),
                Step::Sym(c) => {
                    out.push(' ');
                    out.push(c);
                    out.push(' ');
                }
                Step::Node(i) => match &self.nodes[i] {
                    BinNode::Leaf(name) => out.push_str(name),
                    BinNode::Op(o, l, r) => {
                        stack.push(Step::Text(")"));
                        stack.push(Step::Node(*r));
                        stack.push(Step::Sym(o.symbol()));
                        stack.push(Step::Node(*l));
                        stack.push(Step::Text("("));
                    }
                },
            }
        }
        out
    }

    /// Parses infix text: names, the two operator symbols and parentheses.
    /// Both operators are left-associative and `TIGHT` binds more strongly.
    pub fn parse(text: &str) -> Result<Self> {
        let toks = tokenize(text, &[O::LOOSE.symbol(), O::TIGHT.symbol()])?;
        parse_infix::<O>(Cursor::new(toks))
    }
}

impl<O: OpPair> fmt::Display for BinExpr<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

enum Pending<O> {
    Op(O),
    Open,
}

fn precedence<O: OpPair>(op: O) -> u8 {
    if op == O::TIGHT {
        2
    } else {
        1
    }
}

fn reduce<O: OpPair>(nodes: &mut Vec<BinNode<O>>, operands: &mut Vec<usize>, op: O) {
    let right = operands.pop().expect("operand present");
    let left = operands.pop().expect("operand present");
    nodes.push(BinNode::Op(op, left, right));
    operands.push(nodes.len() - 1);
}

/// Operator-precedence parse with explicit stacks, so nesting depth is
/// bounded only by memory. Reductions emit nodes in post-order.
fn parse_infix<O: OpPair>(mut cur: Cursor) -> Result<BinExpr<O>> {
    let mut nodes: Vec<BinNode<O>> = Vec::new();
    let mut names: HashMap<String, Pos> = HashMap::new();
    let mut operands: Vec<usize> = Vec::new();
    let mut pending: Vec<Pending<O>> = Vec::new();
    let ops = [O::LOOSE, O::TIGHT];
    loop {
        // operand position
        let t = cur.next();
        match t.tok {
            Tok::LParen => {
                pending.push(Pending::Open);
                continue;
            }
            Tok::Word(name) => {
                if names.insert(name.clone(), t.pos).is_some() {
                    return Err(OcnError::DuplicateName { name, pos: Some(t.pos) });
                }
                nodes.push(BinNode::Leaf(name));
                operands.push(nodes.len() - 1);
            }
            _ => return Err(unexpected(&t, "a vertex name or `(`")),
        }
        // operator position
        loop {
            let t = cur.next();
            match t.tok {
                Tok::Sym(c) => {
                    let op = *ops.iter().find(|o| o.symbol() == c).expect("lexer only emits known symbols");
                    while let Some(Pending::Op(top)) = pending.last() {
                        if precedence(*top) < precedence(op) {
                            break;
                        }
                        let top = *top;
                        pending.pop();
                        reduce(&mut nodes, &mut operands, top);
                    }
                    pending.push(Pending::Op(op));
                    break;
                }
                Tok::RParen => loop {
                    match pending.pop() {
                        Some(Pending::Op(op)) => reduce(&mut nodes, &mut operands, op),
                        Some(Pending::Open) => break,
                        None => return Err(unexpected(&t, "an operator or end of input")),
                    }
                },
                Tok::End => {
                    while let Some(p) = pending.pop() {
                        match p {
                            Pending::Op(op) => reduce(&mut nodes, &mut operands, op),
                            Pending::Open => return Err(unexpected(&t, "`)`")),
                        }
                    }
                    debug_assert_eq!(operands.len(), 1);
                    return Ok(BinExpr { nodes });
                }
                _ => {
                    let want = if pending.iter().any(|p| matches!(p, Pending::Open)) {
                        "an operator or `)`"
                    } else {
                        "an operator or end of input"
                    };
                    return Err(unexpected(&t, want));
                }
            }
        }
    }
}
