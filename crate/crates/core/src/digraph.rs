//! Simple loop-free digraphs on dense vertex indices, their underlying
//! undirected graphs, and the structural predicates the solvers rely on.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{OcnError, Result};

/// Default vertex bound for the exact undirected chromatic/clique routines.
pub const DEFAULT_UND_CAP: usize = 20;

/// Hard limit of the bitset representation used by the exact undirected routines.
pub const MAX_UND_VERTICES: usize = 128;

const BITMATRIX_LIMIT: usize = 64;

/// A finite digraph without loops or repeated arcs.
///
/// Vertices are `0..n`; every vertex carries a display name. Values are
/// immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<String>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arc_count: usize,
    // row u, bit v <=> arc (u,v); only kept for n <= 64
    bits: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub max_degree: usize,
    pub in_degree: Vec<usize>,
    pub out_degree: Vec<usize>,
}

impl Digraph {
    /// Builds a digraph on `n` vertices named `0..n`.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_names((0..n).map(|i| i.to_string()).collect(), arcs)
    }

    /// Builds a digraph whose vertex `i` is called `names[i]`.
    ///
    /// Duplicate arcs are merged; self-loops, out-of-range endpoints and
    /// repeated names are rejected.
    pub fn with_names(
        names: Vec<String>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = names.len();
        {
            let mut seen = std::collections::HashSet::with_capacity(n);
            for name in &names {
                if !seen.insert(name.as_str()) {
                    return Err(OcnError::InvalidGraph(format!("duplicate vertex name `{name}`")));
                }
            }
        }
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(OcnError::InvalidGraph(format!(
                    "arc ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(OcnError::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            out[u].push(v);
        }
        let mut inn = vec![Vec::new(); n];
        let mut arc_count = 0;
        for (u, succ) in out.iter_mut().enumerate() {
            succ.sort_unstable();
            succ.dedup();
            arc_count += succ.len();
            for &v in succ.iter() {
                inn[v].push(u);
            }
        }
        let bits = (n <= BITMATRIX_LIMIT).then(|| {
            out.iter()
                .map(|succ| succ.iter().fold(0u64, |row, &v| row | (1 << v)))
                .collect()
        });
        Ok(Digraph { names, out, inn, arc_count, bits })
    }

    pub fn empty(n: usize) -> Self {
        Self::from_arcs(n, std::iter::empty()).expect("arcless digraph is well-formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True when vertex `i` is named `i` for all vertices.
    pub fn has_default_names(&self) -> bool {
        self.names.iter().enumerate().all(|(i, n)| *n == i.to_string())
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, succ)| succ.iter().map(move |&v| (u, v)))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        match &self.bits {
            Some(rows) => rows[u] >> v & 1 == 1,
            None => self.out[u].binary_search(&v).is_ok(),
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// True iff no pair of opposite arcs exists.
    pub fn is_oriented(&self) -> bool {
        self.opposite_pair().is_none()
    }

    /// First pair `(u,v)` with `u < v` such that both `(u,v)` and `(v,u)` are arcs.
    pub fn opposite_pair(&self) -> Option<(usize, usize)> {
        self.arcs().find(|&(u, v)| u < v && self.has_arc(v, u))
    }

    pub fn ensure_oriented(&self) -> Result<()> {
        match self.opposite_pair() {
            Some((u, v)) => Err(OcnError::NotOriented { u, v }),
            None => Ok(()),
        }
    }

    pub fn underlying(&self) -> UndirectedGraph {
        UndirectedGraph::from_edges(self.vertex_count(), self.arcs())
    }

    /// A topological order breaking ties by smallest index, or `None` if the
    /// digraph has a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = self.inn.iter().map(Vec::len).collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(u)) = ready.pop() {
            order.push(u);
            for &v in &self.out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(Reverse(v));
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Reachability digraph: arc `(u,v)` iff `v != u` is reachable from `u`.
    pub fn transitive_closure(&self) -> Digraph {
        let n = self.vertex_count();
        let mut arcs = Vec::new();
        let mut seen = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            seen[s] = s;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.out[u] {
                    if seen[v] != s {
                        seen[v] = s;
                        arcs.push((s, v));
                        queue.push_back(v);
                    }
                }
            }
        }
        // a vertex on a cycle reaches itself; that is not an arc
        arcs.retain(|&(u, v)| u != v);
        Digraph::with_names(self.names.clone(), arcs).expect("closure of a well-formed digraph")
    }

    /// First arcs `(u,v),(v,w)` with `u != w` lacking the shortcut `(u,w)`.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for (u, v) in self.arcs() {
            for &w in &self.out[v] {
                if w != u && !self.has_arc(u, w) {
                    return Some((u, v, w));
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_violation().is_none()
    }

    /// Number of arcs on a longest directed path.
    pub fn longest_path_length(&self) -> Result<usize> {
        let order = self.topological_order().ok_or(OcnError::Cyclic)?;
        let mut len = vec![0usize; self.vertex_count()];
        for &u in &order {
            for &v in &self.out[u] {
                len[v] = len[v].max(len[u] + 1);
            }
        }
        Ok(len.into_iter().max().unwrap_or(0))
    }

    pub fn degrees(&self) -> DegreeReport {
        let in_degree: Vec<usize> = self.inn.iter().map(Vec::len).collect();
        let out_degree: Vec<usize> = self.out.iter().map(Vec::len).collect();
        let max_degree =
            in_degree.iter().zip(&out_degree).map(|(i, o)| i + o).max().unwrap_or(0);
        DegreeReport { max_degree, in_degree, out_degree }
    }

    /// Sources (indegree 0) and sinks (outdegree 0), each ascending.
    pub fn sources_sinks(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.vertex_count();
        let sources = (0..n).filter(|&v| self.inn[v].is_empty()).collect();
        let sinks = (0..n).filter(|&v| self.out[v].is_empty()).collect();
        (sources, sinks)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    ///
    /// Fails when the two name tables overlap.
    pub fn disjoint_union(&self, other: &Digraph) -> Result<Digraph> {
        let shift = self.vertex_count();
        let names = self.names.iter().chain(&other.names).cloned().collect();
        let arcs = self.arcs().chain(other.arcs().map(|(u, v)| (u + shift, v + shift)));
        Digraph::with_names(names, arcs)
    }

    /// Induced subdigraph on `subset`, vertices renumbered in the given order.
    pub fn induced(&self, subset: &[usize]) -> Result<Digraph> {
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in subset.iter().enumerate() {
            if v >= self.vertex_count() {
                return Err(OcnError::InvalidGraph(format!("vertex {v} out of range")));
            }
            if pos[v] != usize::MAX {
                return Err(OcnError::InvalidGraph(format!("vertex {v} repeated")));
            }
            pos[v] = i;
        }
        let names = subset.iter().map(|&v| self.names[v].clone()).collect();
        let arcs = subset.iter().flat_map(|&u| {
            let pos = &pos;
            self.out[u]
                .iter()
                .filter(move |&&v| pos[v] != usize::MAX)
                .map(move |&v| (pos[u], pos[v]))
        });
        Digraph::with_names(names, arcs)
    }

    /// Same arcs, new names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Digraph> {
        if names.len() != self.vertex_count() {
            return Err(OcnError::InvalidGraph("name table has the wrong length".into()));
        }
        Digraph::with_names(names, self.arcs())
    }

    /// Exact chromatic number of the underlying undirected graph.
    pub fn und_chromatic_number(&self, cap: usize) -> Result<usize> {
        self.underlying().chromatic_number(cap)
    }

    /// Exact clique number of the underlying undirected graph.
    pub fn und_clique_number(&self, cap: usize) -> Result<usize> {
        self.underlying().clique_number(cap)
    }
}

/// Simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<usize>>,
}

impl UndirectedGraph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n && u != v, "edge {{{u},{v}}} invalid for n={n}");
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
            nb.dedup();
        }
        UndirectedGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u,v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn bit_rows(&self, cap: usize) -> Result<Vec<u128>> {
        let n = self.vertex_count();
        let limit = cap.min(MAX_UND_VERTICES);
        if n > limit {
            return Err(OcnError::TooLarge { what: "vertex count", size: n, limit });
        }
        Ok(self.adj.iter().map(|nb| nb.iter().fold(0u128, |m, &v| m | 1 << v)).collect())
    }

    /// Exact chromatic number by DSatur branch and bound.
    pub fn chromatic_number(&self, cap: usize) -> Result<usize> {
        let rows = self.bit_rows(cap)?;
        Ok(ChromaticSearch::run(&rows))
    }

    /// Exact clique number by Bron–Kerbosch with pivoting.
    pub fn clique_number(&self, cap: usize) -> Result<usize> {
        let rows = self.bit_rows(cap)?;
        let all = if rows.len() == 128 { u128::MAX } else { (1u128 << rows.len()) - 1 };
        let mut best = 0;
        bron_kerbosch(&rows, 0, all, 0, &mut best);
        Ok(best)
    }
}

fn bron_kerbosch(rows: &[u128], size: usize, mut cand: u128, mut excl: u128, best: &mut usize) {
    if cand == 0 {
        if excl == 0 {
            *best = (*best).max(size);
        }
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    let pivot = (cand | excl).trailing_zeros() as usize;
    let mut branch = cand & !rows[pivot];
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        branch &= branch - 1;
        bron_kerbosch(rows, size + 1, cand & rows[v], excl & rows[v], best);
        cand &= !(1 << v);
        excl |= 1 << v;
    }
}

struct ChromaticSearch<'a> {
    rows: &'a [u128],
    color: Vec<usize>,
    // forbidden[c]: vertices adjacent to some vertex of color c
    forbidden: Vec<u128>,
    best: usize,
}

impl<'a> ChromaticSearch<'a> {
    fn run(rows: &'a [u128]) -> usize {
        let n = rows.len();
        if n == 0 {
            return 0;
        }
        let mut search = ChromaticSearch {
            rows,
            color: vec![usize::MAX; n],
            forbidden: Vec::new(),
            best: n,
        };
        let mut clique = 0;
        bron_kerbosch(rows, 0, if n == 128 { u128::MAX } else { (1u128 << n) - 1 }, 0, &mut clique);
        search.branch(0, 0, clique);
        search.best
    }

    fn branch(&mut self, colored: usize, used: usize, lower: usize) {
        if used >= self.best || self.best == lower {
            return;
        }
        let n = self.rows.len();
        if colored == n {
            self.best = used;
            return;
        }
        // max saturation, then max degree, then lowest index
        let mut pick = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in 0..n {
            if self.color[v] != usize::MAX {
                continue;
            }
            let sat = self.forbidden[..used].iter().filter(|&&f| f >> v & 1 == 1).count();
            let deg = self.rows[v].count_ones() as usize;
            if pick == usize::MAX || (sat, deg) > key {
                pick = v;
                key = (sat, deg);
            }
        }
        let v = pick;
        for c in 0..=used {
            if c == used {
                if used + 1 >= self.best {
                    break;
                }
                self.forbidden.push(0);
            } else if self.forbidden[c] >> v & 1 == 1 {
                continue;
            }
            let saved = self.forbidden[c];
            self.forbidden[c] |= self.rows[v];
            self.color[v] = c;
            self.branch(colored + 1, used.max(c + 1), lower);
            self.color[v] = usize::MAX;
            self.forbidden[c] = saved;
            if c == used {
                self.forbidden.pop();
            }
            if self.best == lower {
                return;
            }
        }
    }
}
