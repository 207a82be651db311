//! Exhaustive oriented coloring by backtracking, the ground truth for small
//! digraphs.
//!
//! Vertices are colored one at a time. For every ordered pair of colors the
//! search counts the arcs currently running between the two classes, so a
//! new vertex only needs its already-colored neighbours checked: its color
//! must differ from theirs and must not create an arc opposite to a counted
//! one. A vertex may open at most one new color beyond those in use.

use crate::coloring::Coloring;
use crate::digraph::Digraph;
use crate::error::{OcnError, Result};

/// Default vertex limit for [`ocn_exact`].
pub const DEFAULT_MAX_N: usize = 30;

struct Search<'a> {
    r: usize,
    order: &'a [usize],
    // for the vertex at position i: (position of an earlier neighbour, arc leaves the new vertex)
    back: Vec<Vec<(usize, bool)>>,
    color_at: Vec<usize>,
    // count[a * r + b] = arcs from class a to class b
    count: Vec<u32>,
    nodes: u64,
}

impl Search<'_> {
    fn arc_slot(&self, i: usize, k: usize, c: usize) -> (usize, usize) {
        let r = self.r;
        let (j, outgoing) = self.back[i][k];
        let d = self.color_at[j];
        // (slot of the new arc, slot of the arc opposite to it)
        if outgoing {
            (c * r + d, d * r + c)
        } else {
            (d * r + c, c * r + d)
        }
    }

    /// Gives position `i` color `c` if that keeps the coloring oriented.
    /// Arcs are counted one by one, so two new arcs of the same vertex
    /// conflict with each other as well.
    fn try_place(&mut self, i: usize, c: usize) -> bool {
        for k in 0..self.back[i].len() {
            let (j, _) = self.back[i][k];
            let (slot, opposite) = self.arc_slot(i, k, c);
            if self.color_at[j] == c || self.count[opposite] != 0 {
                self.unplace_first(i, c, k);
                return false;
            }
            self.count[slot] += 1;
        }
        true
    }

    fn unplace_first(&mut self, i: usize, c: usize, upto: usize) {
        for k in 0..upto {
            let (slot, _) = self.arc_slot(i, k, c);
            self.count[slot] -= 1;
        }
    }

    fn run(&mut self, i: usize, used: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        self.nodes += 1;
        for c in 0..(used + 1).min(self.r) {
            if !self.try_place(i, c) {
                continue;
            }
            self.color_at[i] = c;
            if self.run(i + 1, used.max(c + 1)) {
                return true;
            }
            self.unplace_first(i, c, self.back[i].len());
        }
        false
    }
}

/// Vertices by descending total degree, ties broken by index.
fn degree_order(g: &Digraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    let deg = |v: usize| g.out_neighbors(v).len() + g.in_neighbors(v).len();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg(v)), v));
    order
}

/// Statistics of one decision run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
}

/// An oriented coloring with at most `r` colors, if one exists.
pub fn ocn_decide(g: &Digraph, r: usize) -> Result<Option<Coloring>> {
    ocn_decide_with_stats(g, r).map(|(c, _)| c)
}

pub fn ocn_decide_with_stats(g: &Digraph, r: usize) -> Result<(Option<Coloring>, SearchStats)> {
    g.ensure_oriented()?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok((Some(Coloring::new(Vec::new())), SearchStats::default()));
    }
    if r == 0 {
        return Ok((None, SearchStats::default()));
    }
    let order = degree_order(g);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let out = g.out_neighbors(v).iter().map(|&w| (pos[w], true));
            let inn = g.in_neighbors(v).iter().map(|&w| (pos[w], false));
            out.chain(inn).filter(|&(j, _)| j < i).collect()
        })
        .collect();
    let mut s = Search {
        r,
        order: &order,
        back,
        color_at: vec![0; n],
        count: vec![0; r * r],
        nodes: 0,
    };
    let found = s.run(0, 0);
    let stats = SearchStats { nodes: s.nodes };
    if !found {
        return Ok((None, stats));
    }
    let mut colors = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        colors[v] = s.color_at[i];
    }
    Ok((Some(Coloring::new(colors)), stats))
}

/// The oriented chromatic number with an optimal coloring, for digraphs of
/// at most [`DEFAULT_MAX_N`] vertices.
pub fn ocn_exact(g: &Digraph) -> Result<(usize, Coloring)> {
    ocn_exact_with_limit(g, DEFAULT_MAX_N)
}

/// As [`ocn_exact`] with an explicit vertex limit.
///
/// The search starts at the chromatic number of the underlying graph when
/// that is cheap to get and otherwise at 1.
pub fn ocn_exact_with_limit(g: &Digraph, max_n: usize) -> Result<(usize, Coloring)> {
    g.ensure_oriented()?;
    let n = g.vertex_count();
    if n > max_n {
        return Err(OcnError::TooLarge { what: "vertex count", size: n, limit: max_n });
    }
    let start = g.und_chromatic_number(max_n.min(crate::digraph::MAX_UND_VERTICES)).unwrap_or(1);
    // r = n always succeeds, since distinct colors reproduce g itself
    for r in start.max(1)..=n.max(1) {
        if let Some(c) = ocn_decide(g, r)? {
            return Ok((c.used_colors(), c));
        }
    }
    unreachable!("{n} colors always suffice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_oriented_coloring;

    fn cycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn small_cycles() {
        assert!(ocn_decide(&cycle(5), 4).unwrap().is_none());
        let c = ocn_decide(&cycle(5), 5).unwrap().unwrap();
        assert_eq!(c.used_colors(), 5);
        assert!(ocn_decide(&cycle(4), 3).unwrap().is_none());
        assert!(is_oriented_coloring(&cycle(4), &ocn_decide(&cycle(4), 4).unwrap().unwrap()));
    }

    #[test]
    fn exact_values() {
        let p = |n: usize| Digraph::from_arcs(n, (1..n).map(|i| (i - 1, i))).unwrap();
        assert_eq!(ocn_exact(&p(1)).unwrap().0, 1);
        assert_eq!(ocn_exact(&p(2)).unwrap().0, 2);
        assert_eq!(ocn_exact(&p(3)).unwrap().0, 3);
        assert_eq!(ocn_exact(&cycle(3)).unwrap().0, 3);
        assert_eq!(ocn_exact(&Digraph::empty(0)).unwrap().0, 0);
    }

    #[test]
    fn rejects_non_oriented_and_large() {
        let g = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert!(matches!(ocn_decide(&g, 2), Err(OcnError::NotOriented { .. })));
        assert!(matches!(ocn_exact(&Digraph::empty(31)), Err(OcnError::TooLarge { .. })));
        assert_eq!(ocn_exact_with_limit(&Digraph::empty(40), 40).unwrap().0, 1);
    }
}
