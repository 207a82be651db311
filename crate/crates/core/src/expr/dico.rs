//! Di-co-expressions: disjoint union `+` and order composition `>`.

use super::tree::{BinExpr, BinNode, OpPair};
use crate::digraph::Digraph;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DicoOp {
    /// disjoint union, no new arcs
    Union,
    /// every vertex of the left operand gets an arc to every vertex of the right
    Order,
}

impl OpPair for DicoOp {
    const LOOSE: Self = DicoOp::Union;
    const TIGHT: Self = DicoOp::Order;

    fn symbol(self) -> char {
        match self {
            DicoOp::Union => '+',
            DicoOp::Order => '>',
        }
    }
}

pub type DicoExpr = BinExpr<DicoOp>;
pub type DicoNode = BinNode<DicoOp>;

pub fn parse_dico(text: &str) -> Result<DicoExpr> {
    DicoExpr::parse(text)
}

/// The oriented co-graph defined by `e`; vertex `k` is the `k`-th leaf.
pub fn eval_dico(e: &DicoExpr) -> Digraph {
    let spans = e.vertex_spans();
    let mut arcs = Vec::new();
    for n in e.nodes() {
        if let BinNode::Op(DicoOp::Order, l, r) = *n {
            let (ls, ln) = spans[l];
            let (rs, rn) = spans[r];
            arcs.extend((ls..ls + ln).flat_map(|u| (rs..rs + rn).map(move |v| (u, v))));
        }
    }
    Digraph::with_names(e.leaf_names().map(str::to_string).collect(), arcs)
        .expect("leaf names are unique")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_two() {
        let e = parse_dico("(v1 > v3) > (v2 + v4)").unwrap();
        let expected = DicoExpr::combine(
            DicoOp::Order,
            DicoExpr::combine(DicoOp::Order, DicoExpr::leaf("v1"), DicoExpr::leaf("v3")).unwrap(),
            DicoExpr::combine(DicoOp::Union, DicoExpr::leaf("v2"), DicoExpr::leaf("v4")).unwrap(),
        )
        .unwrap();
        assert_eq!(e, expected);
        assert_eq!(e.to_text(), "((v1 > v3) > (v2 + v4))");
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_dico("a + b > c + d").unwrap();
        assert_eq!(e.to_text(), "((a + (b > c)) + d)");
        let e = parse_dico("a > b > c").unwrap();
        assert_eq!(e.to_text(), "((a > b) > c)");
    }

    #[test]
    fn evaluates_example_two() {
        let g = eval_dico(&parse_dico("(v1 > v3) > (v2 + v4)").unwrap());
        let named: Vec<(&str, &str)> = g.arcs().map(|(u, v)| (g.name(u), g.name(v))).collect();
        assert_eq!(
            named,
            [("v1", "v3"), ("v1", "v2"), ("v1", "v4"), ("v3", "v2"), ("v3", "v4")]
        );
        assert!(g.is_transitive() && g.is_acyclic());
    }

    #[test]
    fn small_evaluations() {
        let g = eval_dico(&parse_dico("a > b").unwrap());
        assert_eq!(g.arcs().collect::<Vec<_>>(), [(0, 1)]);
        let g = eval_dico(&parse_dico("a + b").unwrap());
        assert_eq!((g.vertex_count(), g.arc_count()), (2, 0));
    }

    #[test]
    fn reports_errors_with_position() {
        match parse_dico("a >\n  (b + a)") {
            Err(crate::OcnError::DuplicateName { name, pos }) => {
                assert_eq!(name, "a");
                assert_eq!(pos.map(|p| (p.line, p.col)), Some((2, 8)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_dico("a > "), Err(crate::OcnError::Syntax { .. })));
        assert!(matches!(parse_dico("(a > b"), Err(crate::OcnError::Syntax { .. })));
        assert!(matches!(parse_dico("a * b"), Err(crate::OcnError::Syntax { .. })));
    }

    #[test]
    fn comments_and_whitespace() {
        let e = parse_dico("# header\n a>b # trailing\n+c").unwrap();
        assert_eq!(e.to_text(), "((a > b) + c)");
    }

    #[test]
    fn long_chains_do_not_recurse() {
        let text: Vec<String> = (0..50_000).map(|i| format!("v{i}")).collect();
        let e = parse_dico(&text.join(" > ")).unwrap();
        assert_eq!(e.leaf_count(), 50_000);
        assert_eq!(parse_dico(&e.to_text()).unwrap(), e);
    }
}
