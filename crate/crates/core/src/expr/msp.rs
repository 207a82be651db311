//! Msp-expressions: parallel composition `|` and series composition `*`.

use super::tree::{BinExpr, BinNode, OpPair};
use crate::digraph::Digraph;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MspOp {
    Parallel,
    /// arcs from every sink of the left operand to every source of the right
    Series,
}

impl OpPair for MspOp {
    const LOOSE: Self = MspOp::Parallel;
    const TIGHT: Self = MspOp::Series;

    fn symbol(self) -> char {
        match self {
            MspOp::Parallel => '|',
            MspOp::Series => '*',
        }
    }
}

pub type MspExpr = BinExpr<MspOp>;
pub type MspNode = BinNode<MspOp>;

pub fn parse_msp(text: &str) -> Result<MspExpr> {
    MspExpr::parse(text)
}

/// Sources and sinks of every subexpression, computed bottom-up.
#[cfg(test)]
pub(crate) fn terminal_sets(e: &MspExpr) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(e.nodes().len());
    let mut next = 0;
    for n in e.nodes() {
        let sets = match *n {
            BinNode::Leaf(_) => {
                next += 1;
                (vec![next - 1], vec![next - 1])
            }
            BinNode::Op(MspOp::Parallel, l, r) => {
                let mut sources = out[l].0.clone();
                sources.extend_from_slice(&out[r].0);
                let mut sinks = out[l].1.clone();
                sinks.extend_from_slice(&out[r].1);
                (sources, sinks)
            }
            BinNode::Op(MspOp::Series, l, r) => (out[l].0.clone(), out[r].1.clone()),
        };
        out.push(sets);
    }
    out
}

/// The msp-digraph defined by `e`; vertex `k` is the `k`-th leaf.
pub fn eval_msp(e: &MspExpr) -> Digraph {
    let mut arcs = Vec::new();
    // (sources, sinks) per node; each child is consumed exactly once
    let mut sets: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(e.nodes().len());
    let mut next = 0;
    for n in e.nodes() {
        let here = match *n {
            BinNode::Leaf(_) => {
                next += 1;
                (vec![next - 1], vec![next - 1])
            }
            BinNode::Op(op, l, r) => {
                let (mut lsrc, mut lsnk) = std::mem::take(&mut sets[l]);
                let (rsrc, rsnk) = std::mem::take(&mut sets[r]);
                match op {
                    MspOp::Parallel => {
                        lsrc.extend(rsrc);
                        lsnk.extend(rsnk);
                        (lsrc, lsnk)
                    }
                    MspOp::Series => {
                        arcs.extend(lsnk.iter().flat_map(|&u| rsrc.iter().map(move |&v| (u, v))));
                        (lsrc, rsnk)
                    }
                }
            }
        };
        sets.push(here);
    }
    Digraph::with_names(e.leaf_names().map(str::to_string).collect(), arcs)
        .expect("leaf names are unique")
}
