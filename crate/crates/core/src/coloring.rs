//! Oriented colorings: validation, color graphs, greedy coloring, the optimal
//! coloring of transitive DAGs, bound reports and the perfect-order check.
//!
//! Colors are 0-based in memory and 1-based in every text format.

use std::collections::{BTreeSet, HashMap};

use crate::digraph::{Digraph, UndirectedGraph, DEFAULT_UND_CAP};
use crate::error::{OcnError, Result};

/// Vertex `i` gets color `colors[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colors
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors.
    pub fn used_colors(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    /// Renames colors to `0..used` in order of first appearance.
    pub fn compacted(&self) -> Coloring {
        let mut map = HashMap::new();
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                let next = map.len();
                *map.entry(c).or_insert(next)
            })
            .collect();
        Coloring { colors }
    }
}

/// Why a coloring is not an oriented coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Both ends of the arc share a color.
    MonochromaticArc((usize, usize)),
    /// The two arcs run between the same color classes in opposite directions.
    OppositeArcs((usize, usize), (usize, usize)),
}

/// The digraph on colors induced by a coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorGraph {
    pub colors: BTreeSet<usize>,
    pub arcs: BTreeSet<(usize, usize)>,
}

impl ColorGraph {
    pub fn is_oriented(&self) -> bool {
        self.arcs.iter().all(|&(a, b)| a != b && !self.arcs.contains(&(b, a)))
    }
}

fn check_total(g: &Digraph, c: &Coloring) -> Result<()> {
    if c.len() != g.vertex_count() {
        return Err(OcnError::InvalidColoring(format!(
            "coloring covers {} vertices, digraph has {}",
            c.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Checks both conditions of an oriented coloring.
///
/// Returns `Ok(None)` for a valid coloring and the first violation (in arc
/// order) otherwise.
pub fn verify_oriented_coloring(g: &Digraph, c: &Coloring) -> Result<Option<Violation>> {
    g.ensure_oriented()?;
    check_total(g, c)?;
    let mut first_arc: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for (u, v) in g.arcs() {
        let (cu, cv) = (c.color(u), c.color(v));
        if cu == cv {
            return Ok(Some(Violation::MonochromaticArc((u, v))));
        }
        if let Some(&other) = first_arc.get(&(cv, cu)) {
            return Ok(Some(Violation::OppositeArcs(other, (u, v))));
        }
        first_arc.entry((cu, cv)).or_insert((u, v));
    }
    Ok(None)
}

pub fn is_oriented_coloring(g: &Digraph, c: &Coloring) -> bool {
    matches!(verify_oriented_coloring(g, c), Ok(None))
}

pub fn build_color_graph(g: &Digraph, c: &Coloring) -> Result<ColorGraph> {
    if let Some(v) = verify_oriented_coloring(g, c)? {
        return Err(OcnError::InvalidColoring(format!("{v:?}")));
    }
    Ok(ColorGraph {
        colors: c.as_slice().iter().copied().collect(),
        arcs: g.arcs().map(|(u, v)| (c.color(u), c.color(v))).collect(),
    })
}

/// Each vertex, in `order`, takes the smallest color unused by its already
/// colored neighbors.
pub fn greedy_coloring(gu: &UndirectedGraph, order: &[usize]) -> Result<Coloring> {
    let n = gu.vertex_count();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(OcnError::Input("order is not a permutation of the vertices".into()));
    }
    let mut colors = vec![usize::MAX; n];
    let mut taken = Vec::new();
    for &v in order {
        taken.clear();
        taken.resize(gu.neighbors(v).len() + 1, false);
        for &w in gu.neighbors(v) {
            if colors[w] < taken.len() {
                taken[colors[w]] = true;
            }
        }
        colors[v] = taken.iter().position(|&t| !t).expect("one slot stays free");
    }
    Ok(Coloring::new(colors))
}

/// Optimal oriented coloring of a transitive acyclic digraph: greedy along
/// the smallest-index topological order. Colors strictly increase along arcs.
pub fn transitive_dag_coloring(g: &Digraph) -> Result<Coloring> {
    g.ensure_oriented()?;
    let order = g.topological_order().ok_or(OcnError::Cyclic)?;
    if let Some((u, v, w)) = g.transitivity_violation() {
        return Err(OcnError::NotTransitive(u, v, w));
    }
    greedy_coloring(&g.underlying(), &order)
}

/// A bound on the oriented chromatic number together with where it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub value: usize,
    pub source: BoundSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    /// chromatic number of the underlying graph
    UnderlyingChromatic,
    /// longest path plus one, valid for acyclic digraphs
    LongestPath,
    /// maximum degree plus one, valid for transitive acyclic digraphs
    MaxDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub lower: Option<Bound>,
    pub upper_dag: Option<Bound>,
    pub upper_trans_dag: Option<Bound>,
}

pub fn bounds(g: &Digraph) -> BoundReport {
    bounds_with_cap(g, DEFAULT_UND_CAP)
}

/// Bounds whose preconditions hold for `g`; the others are `None`.
pub fn bounds_with_cap(g: &Digraph, cap: usize) -> BoundReport {
    let lower = g
        .und_chromatic_number(cap)
        .ok()
        .map(|value| Bound { value, source: BoundSource::UnderlyingChromatic });
    let acyclic = g.is_acyclic();
    let upper_dag = acyclic
        .then(|| g.longest_path_length().ok())
        .flatten()
        .map(|l| Bound { value: l + 1, source: BoundSource::LongestPath });
    let upper_trans_dag = (acyclic && g.is_transitive())
        .then(|| Bound { value: g.degrees().max_degree + 1, source: BoundSource::MaxDegree });
    BoundReport { lower, upper_dag, upper_trans_dag }
}

/// Looks for an induced path `a-b-c-d` with `pos(a) < pos(b) < pos(c)` and
/// `pos(d) < pos(c)`; none exists iff greedy coloring along `order` is
/// optimal on every induced subgraph.
pub fn find_perfect_order_obstruction(
    gu: &UndirectedGraph,
    order: &[usize],
) -> Result<Option<[usize; 4]>> {
    let n = gu.vertex_count();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(OcnError::Input("order is not a permutation of the vertices".into()));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(OcnError::Input("order is not a permutation of the vertices".into()));
    }
    for a in 0..n {
        for &b in gu.neighbors(a) {
            if pos[a] > pos[b] {
                continue;
            }
            for &c in gu.neighbors(b) {
                if c == a || pos[b] > pos[c] || gu.has_edge(a, c) {
                    continue;
                }
                for &d in gu.neighbors(c) {
                    if d == b || d == a || pos[d] > pos[c] || gu.has_edge(b, d) || gu.has_edge(a, d)
                    {
                        continue;
                    }
                    return Ok(Some([a, b, c, d]));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Digraph {
        Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn tt(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn verify_directed_p3() {
        let g = p3();
        assert_eq!(
            verify_oriented_coloring(&g, &Coloring::new(vec![0, 1, 0])).unwrap(),
            Some(Violation::OppositeArcs((0, 1), (1, 2)))
        );
        assert_eq!(verify_oriented_coloring(&g, &Coloring::new(vec![0, 1, 2])).unwrap(), None);
        assert_eq!(
            verify_oriented_coloring(&g, &Coloring::new(vec![0, 0, 1])).unwrap(),
            Some(Violation::MonochromaticArc((0, 1)))
        );
    }

    #[test]
    fn verify_rejects_bad_inputs() {
        let two_cycle = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert!(matches!(
            verify_oriented_coloring(&two_cycle, &Coloring::new(vec![0, 1])),
            Err(OcnError::NotOriented { .. })
        ));
        assert!(verify_oriented_coloring(&p3(), &Coloring::new(vec![0, 1])).is_err());
    }

    #[test]
    fn color_graphs() {
        let cg = build_color_graph(&p3(), &Coloring::new(vec![1, 2, 3])).unwrap();
        assert_eq!(cg.arcs, [(1, 2), (2, 3)].into_iter().collect());
        assert!(cg.is_oriented());
        let single = build_color_graph(&Digraph::empty(1), &Coloring::new(vec![0])).unwrap();
        assert_eq!((single.colors.len(), single.arcs.len()), (1, 0));
        assert!(build_color_graph(&p3(), &Coloring::new(vec![0, 1, 0])).is_err());
    }

    #[test]
    fn greedy_examples() {
        let path = UndirectedGraph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(greedy_coloring(&path, &[0, 1, 2]).unwrap().as_slice(), [0, 1, 0]);
        let k3 = UndirectedGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert_eq!(greedy_coloring(&k3, &order).unwrap().used_colors(), 3);
        }
        let g = tt(4);
        let c = greedy_coloring(&g.underlying(), &g.topological_order().unwrap()).unwrap();
        assert_eq!(c.used_colors(), 4);
        assert!(greedy_coloring(&k3, &[0, 0, 1]).is_err());
    }

    #[test]
    fn transitive_dags() {
        for n in 1..7 {
            assert_eq!(transitive_dag_coloring(&tt(n)).unwrap().used_colors(), n);
        }
        let path4 = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let closed = path4.transitive_closure();
        let c = transitive_dag_coloring(&closed).unwrap();
        assert_eq!(c.used_colors(), closed.longest_path_length().unwrap() + 1);
        assert!(closed.arcs().all(|(u, v)| c.color(u) < c.color(v)));
        assert!(matches!(transitive_dag_coloring(&path4), Err(OcnError::NotTransitive(0, 1, 2))));
        let c3 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(transitive_dag_coloring(&c3), Err(OcnError::Cyclic));
    }

    #[test]
    fn bound_reports() {
        let c5 = Digraph::from_arcs(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let b = bounds(&c5);
        assert_eq!(b.lower.unwrap().value, 3);
        assert!(b.upper_dag.is_none() && b.upper_trans_dag.is_none());
        let b = bounds(&tt(5));
        assert_eq!(b.lower.unwrap().value, 5);
        assert_eq!(b.upper_dag.unwrap().value, 5);
        assert_eq!(b.upper_trans_dag.unwrap().value, 5);
        assert_eq!(b.upper_trans_dag.unwrap().source, BoundSource::MaxDegree);
        assert!(bounds(&Digraph::empty(30)).lower.is_none());
    }

    #[test]
    fn perfect_order_obstructions() {
        let p4 = UndirectedGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        // a=0 b=1 c=2 d=3 with order a,b,d,c
        assert_eq!(find_perfect_order_obstruction(&p4, &[0, 1, 3, 2]).unwrap(), Some([0, 1, 2, 3]));
        assert_eq!(find_perfect_order_obstruction(&p4, &[0, 1, 2, 3]).unwrap(), None);
        let k4 = UndirectedGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2), (0, 3), (1, 3)]);
        assert_eq!(find_perfect_order_obstruction(&k4, &[3, 1, 0, 2]).unwrap(), None);
    }

    #[test]
    fn compaction_keeps_partition() {
        let c = Coloring::new(vec![5, 2, 5, 0]).compacted();
        assert_eq!(c.as_slice(), [0, 1, 0, 2]);
        assert_eq!(c.used_colors(), 3);
    }
}
