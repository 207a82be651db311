//! Oriented coloring over directed clique-width expressions.
//!
//! A state describes one way of coloring the vertices built so far with
//! colors `0..r`: for each color the set of labels carried by vertices of
//! that color, and the arcs of the color graph. The four operations act on
//! states directly, so the final set decides whether `r` colors suffice.

use rustc_hash::FxHashSet;

use crate::error::{OcnError, Result};
use crate::expr::cw::{cw_validate, eval_cw, CwExpr, CwNode, Label};
use crate::tournament::{permute_groups, tournaments, Tournament};

/// Largest number of colors a state can hold.
pub const MAX_CW_COLORS: usize = 8;

/// Per-color label sets (bit `a - 1` for label `a`) and color-graph arcs
/// (bit `8 * c1 + c2` for the arc `c1 -> c2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CwState {
    labels: [u16; MAX_CW_COLORS],
    arcs: u64,
}

fn label_bit(a: Label) -> u16 {
    1 << (a - 1)
}

/// Transpose of an 8x8 bit matrix stored row-major in a `u64`.
fn transpose(mut x: u64) -> u64 {
    let mut t = (x ^ (x >> 7)) & 0x00AA_00AA_00AA_00AA;
    x ^= t ^ (t << 7);
    t = (x ^ (x >> 14)) & 0x0000_CCCC_0000_CCCC;
    x ^= t ^ (t << 14);
    t = (x ^ (x >> 28)) & 0x0000_0000_F0F0_F0F0;
    x ^ t ^ (t << 28)
}

impl CwState {
    fn create(c: usize, a: Label) -> Self {
        let mut labels = [0; MAX_CW_COLORS];
        labels[c] = label_bit(a);
        CwState { labels, arcs: 0 }
    }

    /// Labels carried by vertices of color `c`.
    pub fn labels(&self, c: usize) -> impl Iterator<Item = Label> + '_ {
        (1..=16).filter(move |&a| self.labels[c] & label_bit(a) != 0)
    }

    pub fn is_used(&self, c: usize) -> bool {
        self.labels[c] != 0
    }

    pub fn used_colors(&self) -> usize {
        self.labels.iter().filter(|&&l| l != 0).count()
    }

    pub fn has_arc(&self, c1: usize, c2: usize) -> bool {
        self.arcs >> (8 * c1 + c2) & 1 == 1
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..64).filter(|i| self.arcs >> i & 1 == 1).map(|i| (i / 8, i % 8))
    }

    /// No loops and no opposite arcs.
    pub fn is_oriented(&self) -> bool {
        self.arcs & transpose(self.arcs) == 0
    }

    fn union(&self, other: &CwState) -> Option<CwState> {
        let mut labels = self.labels;
        for (l, o) in labels.iter_mut().zip(other.labels) {
            *l |= o;
        }
        let s = CwState { labels, arcs: self.arcs | other.arcs };
        s.is_oriented().then_some(s)
    }

    fn add_arcs(&self, a: Label, b: Label) -> Option<CwState> {
        let (mut from, mut to) = (0u8, 0u8);
        for c in 0..MAX_CW_COLORS {
            from |= ((self.labels[c] & label_bit(a) != 0) as u8) << c;
            to |= ((self.labels[c] & label_bit(b) != 0) as u8) << c;
        }
        // a color holding both labels would get an arc inside its own class
        if from & to != 0 {
            return None;
        }
        let mut new = 0u64;
        for c in 0..MAX_CW_COLORS {
            if from >> c & 1 == 1 {
                new |= (to as u64) << (8 * c);
            }
        }
        if transpose(new) & self.arcs != 0 {
            return None;
        }
        Some(CwState { labels: self.labels, arcs: self.arcs | new })
    }

    fn relabel(&self, a: Label, b: Label) -> CwState {
        let mut labels = self.labels;
        for l in labels.iter_mut() {
            if *l & label_bit(a) != 0 {
                *l = (*l & !label_bit(a)) | label_bit(b);
            }
        }
        CwState { labels, arcs: self.arcs }
    }

    fn permuted(&self, map: &[usize; MAX_CW_COLORS]) -> CwState {
        let mut labels = [0; MAX_CW_COLORS];
        for c in 0..MAX_CW_COLORS {
            labels[map[c]] = self.labels[c];
        }
        let mut arcs = 0;
        for (c1, c2) in self.arcs() {
            arcs |= 1 << (8 * map[c1] + map[c2]);
        }
        CwState { labels, arcs }
    }

    /// Smallest state among the color renamings that list colors by
    /// decreasing (labels, out-degree, in-degree).
    fn canonical(&self) -> CwState {
        let key = |c: usize| {
            let row = (self.arcs >> (8 * c) & 0xff).count_ones();
            let col = (transpose(self.arcs) >> (8 * c) & 0xff).count_ones();
            (self.labels[c], row, col)
        };
        let mut order: Vec<usize> = (0..MAX_CW_COLORS).collect();
        order.sort_by_key(|&c| std::cmp::Reverse(key(c)));
        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=MAX_CW_COLORS {
            if i == MAX_CW_COLORS || key(order[i]) != key(order[start]) {
                // unused colors carry nothing, so one order is enough
                if self.labels[order[start]] != 0 {
                    groups.push((start, i));
                }
                start = i;
            }
        }
        let mut best = None::<CwState>;
        permute_groups(&mut order, &groups, 0, &mut |order| {
            let mut map = [0; MAX_CW_COLORS];
            for (new, &old) in order.iter().enumerate() {
                map[old] = new;
            }
            let s = self.permuted(&map);
            if best.is_none_or(|b| s < b) {
                best = Some(s);
            }
        });
        best.expect("at least one order")
    }
}

/// Every state obtained from `s` by renaming its colors within `0..r`.
fn placements(s: &CwState, r: usize) -> Vec<CwState> {
    let used: Vec<usize> = (0..MAX_CW_COLORS).filter(|&c| s.is_used(c)).collect();
    let mut out = FxHashSet::default();
    let mut map = [usize::MAX; MAX_CW_COLORS];
    fn rec(s: &CwState, used: &[usize], i: usize, r: usize, map: &mut [usize; MAX_CW_COLORS], taken: u8, out: &mut FxHashSet<CwState>) {
        if i == used.len() {
            let mut full = *map;
            let mut free = (0..MAX_CW_COLORS).filter(|&c| taken >> c & 1 == 0);
            for (c, m) in full.iter_mut().enumerate() {
                if s.labels[c] == 0 {
                    *m = free.next().expect("a permutation");
                }
            }
            out.insert(s.permuted(&full));
            return;
        }
        for t in 0..r {
            if taken >> t & 1 == 0 {
                map[used[i]] = t;
                rec(s, used, i + 1, r, map, taken | 1 << t, out);
            }
        }
    }
    rec(s, &used, 0, r, &mut map, 0, &mut out);
    out.into_iter().collect()
}

/// How states are stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CwMode {
    /// every state as it arises
    #[default]
    Literal,
    /// one representative per renaming of the colors; a union tries every
    /// placement of the right operand's colors
    Canonical,
}

/// The states of the root for a fixed number of colors.
#[derive(Debug, Clone)]
pub struct CwStateSet {
    pub r: usize,
    /// largest label of the expression
    pub k: usize,
    states: Vec<CwState>,
    /// largest set seen at any node
    pub max_states: usize,
}

impl CwStateSet {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CwState> {
        self.states.iter()
    }

    /// `r (r + k)`, the base-2 logarithm of the size bound.
    pub fn bound_log2(&self) -> usize {
        self.r * (self.r + self.k)
    }

    /// Whether `size` states respect the bound `2^{r(r+k)}`.
    pub fn within_bound(&self, size: usize) -> bool {
        self.bound_log2() >= usize::BITS as usize || size <= 1 << self.bound_log2()
    }

    pub fn min_used(&self) -> Option<usize> {
        self.states.iter().map(CwState::used_colors).min()
    }
}

#[derive(Debug, Clone, Copy)]
enum Unary {
    Arcs(Label, Label),
    Relabel(Label, Label),
}

/// A node whose set is stored: the root and the operands of unions. Its
/// set comes from a creation or a union followed by a run of unary
/// operations, applied state by state without storing the sets between.
struct Step {
    node: usize,
    base: Option<(usize, usize)>,
    label: Label,
    chain: Vec<Unary>,
}

fn plan(e: &CwExpr) -> Vec<Step> {
    let nodes = e.nodes();
    let mut stored = vec![false; nodes.len()];
    stored[e.root()] = true;
    for n in nodes {
        if let CwNode::Union(l, r) = *n {
            stored[l] = true;
            stored[r] = true;
        }
    }
    let mut steps = Vec::new();
    for (i, &st) in stored.iter().enumerate() {
        if !st {
            continue;
        }
        let mut chain = Vec::new();
        let mut j = i;
        loop {
            match nodes[j] {
                CwNode::Create { label, .. } => {
                    chain.reverse();
                    steps.push(Step { node: i, base: None, label, chain });
                    break;
                }
                CwNode::Union(l, r) => {
                    chain.reverse();
                    steps.push(Step { node: i, base: Some((l, r)), label: 0, chain });
                    break;
                }
                CwNode::AddArcs { from, to, child } => {
                    chain.push(Unary::Arcs(from, to));
                    j = child;
                }
                CwNode::Relabel { from, to, child } => {
                    chain.push(Unary::Relabel(from, to));
                    j = child;
                }
            }
        }
    }
    steps
}

/// Runs `plan(e)` with the given state operations; stops early when a set
/// is empty. `on_set` sees the size of every stored set.
fn run<S: Copy + Eq + std::hash::Hash>(
    e: &CwExpr,
    create: impl Fn(Label) -> Vec<S>,
    expand_right: impl Fn(Vec<S>) -> Vec<S>,
    union: impl Fn(&S, &S) -> Option<S>,
    unary: impl Fn(&S, Unary) -> Option<S>,
    reduce: impl Fn(Vec<S>) -> Vec<S>,
    mut on_set: impl FnMut(usize),
) -> Vec<S> {
    let mut sets: Vec<Vec<S>> = vec![Vec::new(); e.nodes().len()];
    let mut seen = FxHashSet::default();
    let apply = |s: S, chain: &[Unary]| chain.iter().try_fold(s, |s, &u| unary(&s, u));
    for step in plan(e) {
        seen.clear();
        match step.base {
            None => seen.extend(create(step.label).into_iter().filter_map(|s| apply(s, &step.chain))),
            Some((l, r)) => {
                let a = std::mem::take(&mut sets[l]);
                let b = expand_right(std::mem::take(&mut sets[r]));
                for s1 in &a {
                    seen.extend(b.iter().filter_map(|s2| union(s1, s2)).filter_map(|s| apply(s, &step.chain)));
                }
            }
        }
        on_set(seen.len());
        if seen.is_empty() {
            return Vec::new();
        }
        sets[step.node] = reduce(seen.drain().collect());
    }
    std::mem::take(&mut sets[e.root()])
}

/// Root states with `r` colors.
pub fn cw_states(e: &CwExpr, r: usize) -> Result<CwStateSet> {
    cw_states_with(e, r, CwMode::Literal)
}

/// As [`cw_states`]. Only the sets of the root and of union operands are
/// stored, and `max_states` is the largest of those.
pub fn cw_states_with(e: &CwExpr, r: usize, mode: CwMode) -> Result<CwStateSet> {
    let stats = cw_validate(e)?;
    if r == 0 || r > MAX_CW_COLORS {
        return Err(OcnError::Input(format!("number of colors must be in 1..={MAX_CW_COLORS}, got {r}")));
    }
    let canonical = mode == CwMode::Canonical;
    let norm = |s: CwState| if canonical { s.canonical() } else { s };
    let mut max_states = 0;
    let mut states = run(
        e,
        |label| (0..r).map(|c| norm(CwState::create(c, label))).collect(),
        |b| if canonical { b.iter().flat_map(|s| placements(s, r)).collect() } else { b },
        |s1, s2| s1.union(s2).map(norm),
        |s, u| match u {
            Unary::Arcs(a, b) => s.add_arcs(a, b).map(norm),
            Unary::Relabel(a, b) => Some(norm(s.relabel(a, b))),
        },
        |set| set,
        |len| max_states = max_states.max(len),
    );
    states.sort_unstable();
    Ok(CwStateSet { r, k: stats.k as usize, states, max_states })
}

/// Whether `r` colors suffice, and the fewest colors used by a root state,
/// by the tournament engine.
pub fn cw_ocn_at_most(e: &CwExpr, r: usize) -> Result<(bool, Option<usize>)> {
    cw_ocn_at_most_with(e, r, CwEngine::Tournaments)
}

/// As [`cw_ocn_at_most`]. When `r` colors suffice the fewest used colors
/// is the oriented chromatic number, whatever `r` is.
pub fn cw_ocn_at_most_with(e: &CwExpr, r: usize, engine: CwEngine) -> Result<(bool, Option<usize>)> {
    match engine {
        CwEngine::States(mode) => {
            let set = cw_states_with(e, r, mode)?;
            Ok((!set.is_empty(), set.min_used()))
        }
        CwEngine::Tournaments => {
            if r == 0 || r > MAX_CW_COLORS {
                return Err(OcnError::Input(format!("number of colors must be in 1..={MAX_CW_COLORS}, got {r}")));
            }
            for q in 1..=r {
                if maps_into_some(e, q)? {
                    return Ok((true, Some(q)));
                }
            }
            Ok((false, None))
        }
    }
}

/// Whether the digraph of `e` maps into some tournament of order `r`.
/// Tournaments with more even scores are tried first.
fn maps_into_some(e: &CwExpr, r: usize) -> Result<bool> {
    let mut ts: Vec<&Tournament> = tournaments(r).iter().collect();
    ts.sort_by_key(|t| (0..r).map(|a| t.out[a].count_ones().pow(2)).sum::<u32>());
    for t in ts {
        if cw_maps_into(e, t)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Drops every state whose label sets all contain those of another state:
/// the smaller one passes every later test the larger one passes.
fn minimal_label_sets(mut set: Vec<CwState>) -> Vec<CwState> {
    set.sort_unstable_by_key(|s| s.labels.iter().map(|l| l.count_ones()).sum::<u32>());
    let mut kept: Vec<CwState> = Vec::new();
    for s in set {
        if !kept.iter().any(|k| k.labels.iter().zip(&s.labels).all(|(a, b)| a & !b == 0)) {
            kept.push(s);
        }
    }
    kept
}

/// Fewest colors used by a mapping of the digraph of `e` into `t`, if any.
///
/// The arcs of the color graph are forced to be arcs of `t`, so a state
/// only keeps the label sets of each color.
pub fn cw_maps_into(e: &CwExpr, t: &Tournament) -> Result<Option<usize>> {
    cw_validate(e)?;
    let k = t.k;
    let root = run(
        e,
        |label| (0..k).map(|c| CwState::create(c, label)).collect(),
        |b| b,
        |s1, s2| Some(CwState { labels: std::array::from_fn(|c| s1.labels[c] | s2.labels[c]), arcs: 0 }),
        |s, u| match u {
            Unary::Arcs(from, to) => {
                let (mut tails, mut heads) = (0u8, 0u8);
                for (c, l) in s.labels.iter().enumerate() {
                    tails |= ((l & label_bit(from) != 0) as u8) << c;
                    heads |= ((l & label_bit(to) != 0) as u8) << c;
                }
                let ok = tails & heads == 0 && (0..k).all(|c| tails >> c & 1 == 0 || heads & !t.out[c] == 0);
                ok.then_some(*s)
            }
            Unary::Relabel(a, b) => Some(s.relabel(a, b)),
        },
        minimal_label_sets,
        |_| {},
    );
    Ok(root.iter().map(CwState::used_colors).min())
}

/// How [`cw_ocn_with`] decides each number of colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwEngine {
    /// full states with color graphs, see [`cw_states_with`]
    States(CwMode),
    /// one run of [`cw_maps_into`] per tournament of the order
    Tournaments,
}

/// Result of [`cw_ocn_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwSolution {
    pub chi: usize,
    /// color counts tried, ending with the feasible one
    pub tried: Vec<usize>,
    /// largest state set seen in any run (states engine only)
    pub max_states: usize,
}

/// The oriented chromatic number of the digraph of `e`, by the tournament engine.
pub fn cw_ocn(e: &CwExpr) -> Result<usize> {
    cw_ocn_with(e, CwEngine::Tournaments).map(|s| s.chi)
}

/// Tries `r = χ(underlying graph), ...` until `r` colors suffice.
pub fn cw_ocn_with(e: &CwExpr, engine: CwEngine) -> Result<CwSolution> {
    let (g, _) = eval_cw(e)?;
    let start = g.und_chromatic_number(crate::digraph::MAX_UND_VERTICES).unwrap_or(1).max(1);
    let mut tried = Vec::new();
    let mut max_states = 0;
    for r in start..=MAX_CW_COLORS {
        tried.push(r);
        let min_used = match engine {
            CwEngine::States(mode) => {
                let set = cw_states_with(e, r, mode)?;
                max_states = max_states.max(set.max_states);
                set.min_used()
            }
            // r is below every feasible order so far, so a mapping uses all r colors
            CwEngine::Tournaments => maps_into_some(e, r)?.then_some(r),
        };
        if let Some(chi) = min_used {
            return Ok(CwSolution { chi, tried, max_states });
        }
    }
    Err(OcnError::TooLarge { what: "oriented chromatic number", size: MAX_CW_COLORS + 1, limit: MAX_CW_COLORS })
}
