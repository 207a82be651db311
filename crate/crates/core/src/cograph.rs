//! Oriented co-graphs: the exact recursion over di-co-expressions and a
//! brute-force membership test by forbidden induced subdigraphs.

use crate::coloring::Coloring;
use crate::digraph::Digraph;
use crate::error::{OcnError, Result};
use crate::expr::dico::{DicoExpr, DicoOp};
use crate::expr::tree::BinNode;

/// Default vertex limit for [`find_cograph_obstruction`].
pub const DEFAULT_COGRAPH_CAP: usize = 50;

/// χ_o of the digraph of `e` and an optimal coloring.
///
/// A union takes the larger value of its operands and reuses their colors;
/// an order composition adds them, shifting the right operand's colors past
/// the left operand's.
pub fn cograph_ocn(e: &DicoExpr) -> (usize, Coloring) {
    let nodes = e.nodes();
    let mut chi: Vec<usize> = Vec::with_capacity(nodes.len());
    for n in nodes {
        chi.push(match *n {
            BinNode::Leaf(_) => 1,
            BinNode::Op(DicoOp::Union, l, r) => chi[l].max(chi[r]),
            BinNode::Op(DicoOp::Order, l, r) => chi[l] + chi[r],
        });
    }
    let mut offset = vec![0; nodes.len()];
    let mut colors = Vec::with_capacity(e.leaf_count());
    for i in (0..nodes.len()).rev() {
        if let BinNode::Op(op, l, r) = nodes[i] {
            offset[l] = offset[i];
            offset[r] = offset[i] + if op == DicoOp::Order { chi[l] } else { 0 };
        }
    }
    for (i, n) in nodes.iter().enumerate() {
        if let BinNode::Leaf(_) = n {
            colors.push(offset[i]);
        }
    }
    (chi[e.root()], Coloring::new(colors))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForbiddenKind {
    /// two opposite arcs
    OppositePair,
    /// induced directed path on three vertices
    Path3,
    /// directed triangle
    Cycle3,
    /// the orientation `a -> b <- c -> d` of a path on four vertices
    N,
}

/// An induced subdigraph that rules out membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forbidden {
    pub kind: ForbiddenKind,
    pub vertices: Vec<usize>,
}

fn induced_arcs(g: &Digraph, vs: &[usize]) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate() {
            if i != j && g.has_arc(u, v) {
                arcs.push((i, j));
            }
        }
    }
    arcs
}

fn classify3(arcs: &[(usize, usize)]) -> Option<ForbiddenKind> {
    let has = |a, b| arcs.contains(&(a, b));
    for (a, b) in arcs.iter().copied() {
        for c in 0..3 {
            if c != a && c != b && has(b, c) {
                if has(c, a) {
                    return Some(ForbiddenKind::Cycle3);
                }
                if !has(a, c) {
                    return Some(ForbiddenKind::Path3);
                }
            }
        }
    }
    None
}

fn is_n(arcs: &[(usize, usize)]) -> bool {
    if arcs.len() != 3 {
        return false;
    }
    // the middle arc's tail has out-degree 2 and its head in-degree 2
    let outdeg = |v| arcs.iter().filter(|a| a.0 == v).count();
    let indeg = |v| arcs.iter().filter(|a| a.1 == v).count();
    arcs.iter().any(|&(c, b)| {
        outdeg(c) == 2 && indeg(b) == 2 && {
            let a = arcs.iter().find(|x| x.1 == b && x.0 != c).map(|x| x.0);
            let d = arcs.iter().find(|x| x.0 == c && x.1 != b).map(|x| x.1);
            matches!((a, d), (Some(a), Some(d)) if a != d)
        }
    })
}

/// Searches all vertex sets of size at most four for ↔P2, →P3, →C3 or N.
pub fn find_cograph_obstruction(g: &Digraph, cap: usize) -> Result<Option<Forbidden>> {
    let n = g.vertex_count();
    if n > cap {
        return Err(OcnError::TooLarge { what: "vertex count", size: n, limit: cap });
    }
    let found = |kind, vertices: Vec<usize>| Ok(Some(Forbidden { kind, vertices }));
    if let Some((u, v)) = g.opposite_pair() {
        return found(ForbiddenKind::OppositePair, vec![u.min(v), u.max(v)]);
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Some(kind) = classify3(&induced_arcs(g, &[a, b, c])) {
                    return found(kind, vec![a, b, c]);
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if is_n(&induced_arcs(g, &[a, b, c, d])) {
                        return found(ForbiddenKind::N, vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn is_oriented_cograph(g: &Digraph) -> Result<bool> {
    Ok(find_cograph_obstruction(g, DEFAULT_COGRAPH_CAP)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::dico::{eval_dico, parse_dico};

    #[test]
    fn recursion_values() {
        let (chi, c) = cograph_ocn(&parse_dico("(v1 > v3) > (v2 + v4)").unwrap());
        assert_eq!(chi, 3);
        assert_eq!(c.as_slice(), [0, 1, 2, 2]);
        assert_eq!(cograph_ocn(&parse_dico("a + b").unwrap()).0, 1);
        assert_eq!(cograph_ocn(&parse_dico("a > b > c > d > e").unwrap()).0, 5);
    }

    #[test]
    fn forbidden_subdigraphs() {
        let p3 = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            find_cograph_obstruction(&p3, 50).unwrap(),
            Some(Forbidden { kind: ForbiddenKind::Path3, vertices: vec![0, 1, 2] })
        );
        let c3 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(find_cograph_obstruction(&c3, 50).unwrap().unwrap().kind, ForbiddenKind::Cycle3);
        let n = Digraph::from_arcs(4, [(0, 1), (2, 1), (2, 3)]).unwrap();
        assert_eq!(find_cograph_obstruction(&n, 50).unwrap().unwrap().kind, ForbiddenKind::N);
        let both = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            find_cograph_obstruction(&both, 50).unwrap().unwrap().kind,
            ForbiddenKind::OppositePair
        );
        // an alternating path with arcs in the other phase is still N
        let n2 = Digraph::from_arcs(4, [(1, 0), (1, 2), (3, 2)]).unwrap();
        assert_eq!(find_cograph_obstruction(&n2, 50).unwrap().unwrap().kind, ForbiddenKind::N);
    }

    #[test]
    fn members() {
        let g = eval_dico(&parse_dico("(v1 > v3) > (v2 + v4)").unwrap());
        assert!(is_oriented_cograph(&g).unwrap());
        let tc = Digraph::from_arcs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_oriented_cograph(&tc).unwrap());
        assert!(is_oriented_cograph(&Digraph::empty(51)).is_err());
    }
}
