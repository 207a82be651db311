//! Oriented coloring of msp-digraphs.
//!
//! A digraph has an oriented `k`-coloring exactly when it maps into some
//! tournament on `k` vertices. For a fixed target tournament `T`, a
//! subexpression passes upwards the colors of its sources and the colors
//! that every sink color has an arc to: a series composition needs the
//! source colors of the right operand inside the second set of the left
//! one, and a parallel composition intersects the second sets. Only pairs
//! with inclusion-minimal sources and maximal second set are kept.
//! [`msp_ocn`] runs this recursion for the tournaments of order
//! `1, ..., 6` until one admits a mapping. Every msp-digraph maps into the
//! Paley tournament on seven vertices, so when all of them fail the answer
//! is 7 and [`paley_coloring`] is a witness.
//!
//! The [`states`] submodule carries full color graphs instead, and
//! [`paley_coloring`] / [`und_3coloring`] are the direct constructions.

pub mod states;

pub use states::{msp_states, msp_states_labeled, states_ocn, MspState, MspTable};

use crate::coloring::Coloring;
use crate::expr::msp::{MspExpr, MspOp};
use crate::expr::tree::BinNode;
use crate::tournament::{tournaments, Tournament};

/// Colors of the sources, and colors every sink color has an arc to.
type Ends = (u8, u8);

struct Mapping {
    sets: Vec<Vec<Ends>>,
    from: Vec<Vec<(u32, u32)>>,
    max_set_size: usize,
}

/// Collects candidate pairs once each, in order of first appearance.
///
/// A pair `(l, a)` is packed as `l | !a << k`, so that one pair beats
/// another exactly when its packed bits are a subset of the other's.
struct Candidates {
    k: usize,
    stamp: Vec<u32>,
    round: u32,
    cand: Vec<(u16, (u32, u32))>,
    kept: Vec<u16>,
}

impl Candidates {
    fn new(k: usize) -> Self {
        Candidates { k, stamp: vec![0; 1 << (2 * k)], round: 0, cand: Vec::new(), kept: Vec::new() }
    }

    fn start(&mut self) {
        self.round += 1;
        self.cand.clear();
    }

    fn push(&mut self, (l, a): Ends, p: (u32, u32)) {
        let full = (1u16 << self.k) - 1;
        let key = l as u16 | (!(a as u16) & full) << self.k;
        if self.stamp[key as usize] != self.round {
            self.stamp[key as usize] = self.round;
            self.cand.push((key, p));
        }
    }

    /// The pairs not beaten by another one with fewer sources and more
    /// allowed colors, with their provenance.
    fn minimal(&mut self) -> (Vec<Ends>, Vec<(u32, u32)>) {
        self.cand.sort_unstable_by_key(|&(x, _)| x.count_ones());
        self.kept.clear();
        let mut from = Vec::new();
        for &(x, p) in &self.cand {
            let beaten = self.kept.chunks(16).any(|c| c.iter().fold(false, |acc, &x0| acc | (x0 & !x == 0)));
            if !beaten {
                self.kept.push(x);
                from.push(p);
            }
        }
        let full = (1u16 << self.k) - 1;
        let sets = self.kept.iter().map(|&x| ((x & full) as u8, (!(x >> self.k) & full) as u8)).collect();
        (sets, from)
    }
}

/// The recursion for one target; stops at the first subexpression that
/// admits no mapping, reporting the largest set seen.
fn map_into(e: &MspExpr, t: &Tournament, traceback: bool) -> Result<Mapping, usize> {
    let k = t.k;
    let nodes = e.nodes();
    let mut sets: Vec<Vec<Ends>> = Vec::with_capacity(nodes.len());
    let mut from: Vec<Vec<(u32, u32)>> = Vec::with_capacity(nodes.len());
    let mut max_set_size = k;
    let mut cands = Candidates::new(k);
    // series scratch: per set of allowed colors after the left operand, the
    // second sets the right operand can then pass on
    let mut reach: Vec<Vec<(u8, u32)>> = vec![Vec::new(); 1 << k];
    let mut reach_round = vec![0u32; 1 << k];
    for (node, n) in nodes.iter().enumerate() {
        let (set, prov) = match *n {
            BinNode::Leaf(_) => ((0..k).map(|c| (1u8 << c, t.out[c])).collect(), Vec::new()),
            BinNode::Op(op, l, r) => {
                cands.start();
                match op {
                    MspOp::Parallel => {
                        for (i, &(l1, a1)) in sets[l].iter().enumerate() {
                            for (j, &(l2, a2)) in sets[r].iter().enumerate() {
                                cands.push((l1 | l2, a1 & a2), (i as u32, j as u32));
                            }
                        }
                    }
                    MspOp::Series => {
                        let stamp = node as u32 + 1;
                        for (i, &(l1, m)) in sets[l].iter().enumerate() {
                            let m = m as usize;
                            if reach_round[m] != stamp {
                                reach_round[m] = stamp;
                                reach[m].clear();
                                for (j, &(l2, a2)) in sets[r].iter().enumerate() {
                                    if l2 as usize & !m == 0 && !reach[m].iter().any(|&(a0, _)| a2 & !a0 == 0) {
                                        reach[m].retain(|&(a0, _)| a0 & !a2 != 0);
                                        reach[m].push((a2, j as u32));
                                    }
                                }
                            }
                            for &(a2, j) in &reach[m] {
                                cands.push((l1, a2), (i as u32, j));
                            }
                        }
                    }
                }
                if !traceback {
                    sets[l] = Vec::new();
                    sets[r] = Vec::new();
                }
                let (set, prov) = cands.minimal();
                (set, if traceback { prov } else { Vec::new() })
            }
        };
        if set.is_empty() {
            return Err(max_set_size);
        }
        max_set_size = max_set_size.max(set.len());
        sets.push(set);
        from.push(prov);
    }
    Ok(Mapping { sets, from, max_set_size })
}

fn read_coloring(e: &MspExpr, m: &Mapping) -> Coloring {
    let nodes = e.nodes();
    let mut chosen = vec![0u32; nodes.len()];
    for i in (0..nodes.len()).rev() {
        if let BinNode::Op(_, l, r) = nodes[i] {
            (chosen[l], chosen[r]) = m.from[i][chosen[i] as usize];
        }
    }
    let colors = nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| matches!(n, BinNode::Leaf(_)))
        .map(|(i, _)| m.sets[i][chosen[i] as usize].0.trailing_zeros() as usize)
        .collect();
    Coloring::new(colors).compacted()
}

/// Result of the msp engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MspSolution {
    pub chi: usize,
    /// optimal coloring, when requested
    pub coloring: Option<Coloring>,
    /// the tournament the digraph was mapped into
    pub target: Tournament,
    /// target tournaments tried, including the successful one
    pub targets_tried: usize,
    /// largest number of `(sources, sinks)` pairs kept at a node
    pub max_set_size: usize,
}

/// Runs the engine; without `witness` only the sets of live nodes are kept.
///
/// When no tournament of order at most 6 admits a mapping the answer is 7,
/// and the witness is [`paley_coloring`].
pub fn msp_solve(e: &MspExpr, witness: bool) -> MspSolution {
    let mut tried = 0;
    let mut max_set_size = 0;
    for k in 1..=6 {
        for t in tournaments(k) {
            tried += 1;
            match map_into(e, t, witness) {
                Ok(m) => {
                    return MspSolution {
                        chi: k,
                        coloring: witness.then(|| read_coloring(e, &m)),
                        target: *t,
                        targets_tried: tried,
                        max_set_size: max_set_size.max(m.max_set_size),
                    }
                }
                Err(size) => max_set_size = max_set_size.max(size),
            }
        }
    }
    MspSolution {
        chi: 7,
        coloring: witness.then(|| paley_coloring(e)),
        target: Tournament::paley7(),
        targets_tried: tried,
        max_set_size,
    }
}

/// Oriented chromatic number of the msp-digraph of `e` and an optimal coloring.
pub fn msp_ocn(e: &MspExpr) -> (usize, Coloring) {
    let s = msp_solve(e, true);
    (s.chi, s.coloring.expect("requested"))
}

/// Oriented chromatic number only.
pub fn msp_ocn_value(e: &MspExpr) -> usize {
    msp_solve(e, false).chi
}

/// Colors `0` for every leaf, pushed through the affine maps
/// `p(x) = kx mod m` (left of a series) and `q(x) = kx + 1 mod m` (right),
/// composed from the root downwards.
fn affine_coloring(e: &MspExpr, k: usize, m: usize) -> Coloring {
    let nodes = e.nodes();
    // map x -> a x + b
    let mut map = vec![(1usize, 0usize); nodes.len()];
    for i in (0..nodes.len()).rev() {
        if let BinNode::Op(op, l, r) = nodes[i] {
            let (a, b) = map[i];
            match op {
                MspOp::Parallel => {
                    map[l] = (a, b);
                    map[r] = (a, b);
                }
                MspOp::Series => {
                    map[l] = (a * k % m, b);
                    map[r] = (a * k % m, (a + b) % m);
                }
            }
        }
    }
    let colors = nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| matches!(n, BinNode::Leaf(_)))
        .map(|(i, _)| map[i].1)
        .collect();
    Coloring::new(colors)
}

/// An oriented coloring with at most seven colors whose color graph lies in
/// the Paley tournament on `0..7`; sources get color 0 and sinks colors in `{0, 1, 5}`.
pub fn paley_coloring(e: &MspExpr) -> Coloring {
    affine_coloring(e, 4, 7)
}

/// A proper coloring of the underlying graph with at most three colors.
pub fn und_3coloring(e: &MspExpr) -> Coloring {
    affine_coloring(e, 2, 3)
}
