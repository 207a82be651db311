//! Translations of di-co and msp expressions into clique-width expressions.

use super::cw::{CwExpr, CwNode, Label};
use super::dico::{DicoExpr, DicoOp};
use super::msp::{MspExpr, MspOp};
use super::tree::{BinExpr, BinNode, OpPair};

#[derive(Clone, Copy)]
enum Step {
    Arcs(Label, Label),
    Relabel(Label, Label),
}

/// How one binary operator is rendered: relabelings applied to the right
/// operand before the union, then the steps applied after it.
struct Rule {
    right: &'static [(Label, Label)],
    after: &'static [Step],
}

fn translate<O: OpPair>(e: &BinExpr<O>, leaf_label: Label, rule: impl Fn(O) -> Rule) -> CwExpr {
    enum Frame {
        Visit(usize),
        Wrap(usize),
        Finish(usize),
    }
    let src = e.nodes();
    let mut out: Vec<CwNode> = Vec::with_capacity(src.len() * 4);
    let mut done: Vec<usize> = Vec::new();
    let mut stack = vec![Frame::Visit(e.root())];
    let push = |out: &mut Vec<CwNode>, step: Step| {
        let child = out.len() - 1;
        out.push(match step {
            Step::Arcs(from, to) => CwNode::AddArcs { from, to, child },
            Step::Relabel(from, to) => CwNode::Relabel { from, to, child },
        });
    };
    while let Some(f) = stack.pop() {
        match f {
            Frame::Visit(i) => match &src[i] {
                BinNode::Leaf(name) => {
                    out.push(CwNode::Create { name: name.clone(), label: leaf_label });
                    done.push(out.len() - 1);
                }
                BinNode::Op(_, l, r) => {
                    stack.push(Frame::Finish(i));
                    stack.push(Frame::Wrap(i));
                    stack.push(Frame::Visit(*r));
                    stack.push(Frame::Visit(*l));
                }
            },
            Frame::Wrap(i) => {
                let BinNode::Op(op, ..) = src[i] else { unreachable!() };
                for &(from, to) in rule(op).right {
                    push(&mut out, Step::Relabel(from, to));
                }
                *done.last_mut().expect("right operand") = out.len() - 1;
            }
            Frame::Finish(i) => {
                let BinNode::Op(op, ..) = src[i] else { unreachable!() };
                let r = done.pop().expect("right operand");
                let l = done.pop().expect("left operand");
                out.push(CwNode::Union(l, r));
                for &step in rule(op).after {
                    push(&mut out, step);
                }
                done.push(out.len() - 1);
            }
        }
    }
    CwExpr::from_nodes_unchecked(out)
}

/// A 2-label expression for the oriented co-graph of `e`.
///
/// Leaves get label 1; `X > Y` becomes `R(2,1,A(1,2,U(X,R(1,2,Y))))`.
pub fn dico_to_cw2(e: &DicoExpr) -> CwExpr {
    translate(e, 1, |op| match op {
        DicoOp::Union => Rule { right: &[], after: &[] },
        DicoOp::Order => Rule {
            right: &[(1, 2)],
            after: &[Step::Arcs(1, 2), Step::Relabel(2, 1)],
        },
    })
}

// Labels used for msp-digraphs. Every vertex is tagged by whether it is a
// source and whether it is a sink of the subexpression built so far.
const SRC_SNK: Label = 1;
const SNK: Label = 2;
const SRC: Label = 3;
const INNER: Label = 4;
const SRC_SNK2: Label = 5;
const SNK2: Label = 6;
const SRC2: Label = 7;

/// A 7-label expression for the msp-digraph of `e`.
///
/// For `X * Y` the terminal labels of `Y` are moved to a second copy, arcs
/// go from the sinks of `X` to the sources of `Y`, and then the sources of
/// `X` and the sinks of `Y` become the terminals of the result.
pub fn msp_to_cw7(e: &MspExpr) -> CwExpr {
    translate(e, SRC_SNK, |op| match op {
        MspOp::Parallel => Rule { right: &[], after: &[] },
        MspOp::Series => Rule {
            right: &[(SRC_SNK, SRC_SNK2), (SNK, SNK2), (SRC, SRC2)],
            after: &[
                Step::Arcs(SRC_SNK, SRC_SNK2),
                Step::Arcs(SRC_SNK, SRC2),
                Step::Arcs(SNK, SRC_SNK2),
                Step::Arcs(SNK, SRC2),
                Step::Relabel(SRC_SNK, SRC),
                Step::Relabel(SNK, INNER),
                Step::Relabel(SRC_SNK2, SNK),
                Step::Relabel(SNK2, SNK),
                Step::Relabel(SRC2, INNER),
            ],
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::cw::eval_cw;
    use crate::expr::dico::{eval_dico, parse_dico};
    use crate::expr::msp::{eval_msp, parse_msp};

    #[test]
    fn dico_translation_shape() {
        let cw = dico_to_cw2(&parse_dico("a > b").unwrap());
        assert_eq!(cw.to_text(), "R(2,1,A(1,2,U(V(a,1),R(1,2,V(b,1)))))");
        assert_eq!(cw.validate().unwrap().k, 2);
    }

    #[test]
    fn dico_translation_evaluates_to_same_digraph() {
        let e = parse_dico("(v1 > v3) > (v2 + v4)").unwrap();
        let (g, labels) = eval_cw(&dico_to_cw2(&e)).unwrap();
        assert_eq!(g, eval_dico(&e));
        assert!(labels.iter().all(|&l| l == 1));
    }

    #[test]
    fn msp_translation_of_single_arc() {
        let (g, labels) = eval_cw(&msp_to_cw7(&parse_msp("a * b").unwrap())).unwrap();
        assert_eq!(g.arcs().collect::<Vec<_>>(), [(0, 1)]);
        assert_eq!(labels, [SRC, SNK]);
    }

    #[test]
    fn msp_translation_tracks_terminals() {
        let e = parse_msp("(v1*((v2*v3)|v4))*v5 | x * (y | z)").unwrap();
        let cw = msp_to_cw7(&e);
        assert!(cw.validate().unwrap().k <= 7);
        let (g, labels) = eval_cw(&cw).unwrap();
        let h = eval_msp(&e);
        assert_eq!(g, h);
        let (sources, sinks) = h.sources_sinks();
        for (v, &label) in labels.iter().enumerate() {
            let expected = match (sources.contains(&v), sinks.contains(&v)) {
                (true, true) => SRC_SNK,
                (true, false) => SRC,
                (false, true) => SNK,
                (false, false) => INNER,
            };
            assert_eq!(label, expected, "vertex {}", h.name(v));
        }
    }
}
