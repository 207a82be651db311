//! The state recursion over msp-expressions.
//!
//! A state is a triple `(H, L, R)`: an oriented color graph `H` on a subset
//! of the seven colors `0..7`, the colors `L` of the sources and the colors
//! `R` of the sinks. The set of states of a subexpression is closed under
//! renaming colors, so [`msp_states`] keeps one representative per renaming
//! class, with its colors renamed to `0..k`. Two operands are combined by
//! trying every way the colors of the right representative can coincide
//! with colors of the left one. The fewest colors at the root is the
//! oriented chromatic number, and [`states_ocn`] reads an optimal coloring
//! back through the recorded renamings.
//!
//! [`msp_states_labeled`] is the same recursion over literal states. Both
//! enumerate every color graph a subexpression admits, which grows quickly
//! with the expression; the engine in the parent module is the one meant
//! for large inputs.

use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use crate::coloring::Coloring;
use crate::expr::msp::{MspExpr, MspOp};
use crate::expr::tree::BinNode;
use crate::tournament::permute_groups;

/// Number of colors available to the states.
pub const COLORS: usize = 7;

/// Color renaming: color `c` becomes `map[c]`.
pub type ColorMap = [u8; COLORS];

/// One state; color sets are bit masks over `0..7`, arc `(a, b)` is bit `7a + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MspState {
    pub arcs: u64,
    pub used: u8,
    /// colors of the sources
    pub sources: u8,
    /// colors of the sinks
    pub sinks: u8,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

fn transpose(arcs: u64) -> u64 {
    bits(arcs).fold(0, |t, bit| t | 1 << (bit % COLORS * COLORS + bit / COLORS))
}

fn map_mask(mask: u8, map: &ColorMap) -> u8 {
    bits(u64::from(mask)).fold(0, |m, c| m | 1 << map[c])
}

impl MspState {
    pub fn leaf(color: usize) -> Self {
        let bit = 1u8 << color;
        MspState { arcs: 0, used: bit, sources: bit, sinks: bit }
    }

    pub fn color_count(&self) -> usize {
        self.used.count_ones() as usize
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.arcs >> (a * COLORS + b) & 1 == 1
    }

    pub fn arc_list(&self) -> Vec<(usize, usize)> {
        bits(self.arcs).map(|b| (b / COLORS, b % COLORS)).collect()
    }

    /// No loops and no pair of opposite arcs.
    pub fn is_oriented(&self) -> bool {
        self.arcs & transpose(self.arcs) == 0
    }

    pub fn relabel(&self, map: &ColorMap) -> MspState {
        let arcs = bits(self.arcs)
            .fold(0u64, |a, b| a | 1 << (map[b / COLORS] as usize * COLORS + map[b % COLORS] as usize));
        MspState {
            arcs,
            used: map_mask(self.used, map),
            sources: map_mask(self.sources, map),
            sinks: map_mask(self.sinks, map),
        }
    }

    /// Parallel composition; `None` if the united color graph is not oriented.
    pub fn parallel(&self, o: &MspState) -> Option<MspState> {
        let s = MspState {
            arcs: self.arcs | o.arcs,
            used: self.used | o.used,
            sources: self.sources | o.sources,
            sinks: self.sinks | o.sinks,
        };
        s.is_oriented().then_some(s)
    }

    /// Series composition: adds every arc from a sink color of `self` to a
    /// source color of `o`. A color in both sets yields a loop and is rejected.
    pub fn series(&self, o: &MspState) -> Option<MspState> {
        let s = MspState {
            arcs: self.arcs | o.arcs | cross_arcs(self.sinks, o.sources),
            used: self.used | o.used,
            sources: self.sources,
            sinks: o.sinks,
        };
        s.is_oriented().then_some(s)
    }

    fn combine(&self, op: MspOp, o: &MspState) -> Option<MspState> {
        match op {
            MspOp::Parallel => self.parallel(o),
            MspOp::Series => self.series(o),
        }
    }
}

/// Arc mask of `from × to`.
fn cross_arcs(from: u8, to: u8) -> u64 {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(1 << 14);
        for f in 0..128u64 {
            for g in 0..128u64 {
                t.push(bits(f).flat_map(|a| bits(g).map(move |b| 1u64 << (a * COLORS + b))).sum());
            }
        }
        t
    });
    table[usize::from(from) << 7 | usize::from(to)]
}

/// Canonical representative of the renaming class of a state on colors
/// `0..k`, and the renaming that produces it.
///
/// Colors are first split by an invariant refined from their own roles and
/// the classes of their neighbours; only orders within equal classes are
/// tried, and the smallest resulting state wins.
pub fn canonicalize(s: &MspState) -> (MspState, ColorMap) {
    let k = s.color_count();
    debug_assert_eq!(s.used, ((1u16 << k) - 1) as u8);
    let mut class = [0u64; COLORS];
    for (c, cl) in class.iter_mut().enumerate().take(k) {
        let out = (s.arcs >> (c * COLORS) & 0x7f).count_ones() as u64;
        let inn = (0..k).filter(|&a| s.has_arc(a, c)).count() as u64;
        *cl = u64::from(s.sources >> c & 1) | u64::from(s.sinks >> c & 1) << 1 | out << 2 | inn << 5;
    }
    let mut classes = rank(&mut class, k);
    loop {
        let mut sig = [0u64; COLORS];
        for c in 0..k {
            let (mut outv, mut inv) = (0u64, 0u64);
            for (d, &cd) in class.iter().enumerate().take(k) {
                if s.has_arc(c, d) {
                    outv += 1 << (3 * cd);
                }
                if s.has_arc(d, c) {
                    inv += 1 << (3 * cd);
                }
            }
            sig[c] = class[c] | outv << 3 | inv << 27;
        }
        let refined = rank(&mut sig, k);
        if refined == classes {
            break;
        }
        class = sig;
        classes = refined;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| class[c]);
    let mut best: Option<(MspState, ColorMap)> = None;
    let mut consider = |order: &[usize]| {
        let mut map = [0u8; COLORS];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new as u8;
        }
        let t = s.relabel(&map);
        if best.as_ref().is_none_or(|(b, _)| t < *b) {
            best = Some((t, map));
        }
    };
    if classes == k {
        consider(&order);
    } else {
        let groups: Vec<(usize, usize)> = {
            let mut g = Vec::new();
            let mut start = 0;
            for i in 1..=k {
                if i == k || class[order[i]] != class[order[start]] {
                    g.push((start, i));
                    start = i;
                }
            }
            g
        };
        permute_groups(&mut order, &groups, 0, &mut consider);
    }
    best.expect("at least one order")
}

/// Replaces each value by its rank among the distinct values; returns the
/// number of distinct values.
fn rank(v: &mut [u64; COLORS], k: usize) -> usize {
    let mut sorted: Vec<u64> = v[..k].to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for x in v[..k].iter_mut() {
        *x = sorted.binary_search(x).expect("present") as u64;
    }
    sorted.len()
}

/// How one representative was produced: indices of the child
/// representatives, the renaming of the right child's colors into the
/// combined state, and the renaming of the combined state into the
/// representative. The left child's colors enter the combined state unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub left: u32,
    pub right: u32,
    pub right_map: ColorMap,
    pub canon: ColorMap,
}

/// Representatives of every node, or only of the root in count-only mode.
#[derive(Debug, Clone)]
pub struct MspTable {
    pub states: Vec<Vec<MspState>>,
    pub from: Vec<Vec<Provenance>>,
    /// largest number of representatives at any node
    pub max_set_size: usize,
    root: usize,
}

impl MspTable {
    pub fn root_states(&self) -> &[MspState] {
        &self.states[self.root]
    }

    /// Fewest colors over the root states.
    pub fn min_colors(&self) -> usize {
        self.root_states().iter().map(MspState::color_count).min().expect("a root state always exists")
    }

    /// All literal states on colors `0..7` represented at `node`.
    pub fn expanded(&self, node: usize) -> Vec<MspState> {
        let mut out: Vec<MspState> = self.states[node].iter().flat_map(orbit).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Every state obtained by mapping the colors `0..k` of `s` injectively into `0..7`.
pub fn orbit(s: &MspState) -> Vec<MspState> {
    let k = s.color_count();
    let mut out = Vec::new();
    let mut map = [0u8; COLORS];
    fn rec(s: &MspState, k: usize, i: usize, taken: u8, map: &mut ColorMap, out: &mut Vec<MspState>) {
        if i == k {
            out.push(s.relabel(map));
            return;
        }
        for c in 0..COLORS as u8 {
            if taken >> c & 1 == 0 {
                map[i] = c;
                rec(s, k, i + 1, taken | 1 << c, map, out);
            }
        }
    }
    rec(s, k, 0, 0, &mut map, &mut out);
    out
}

struct Merger<'a> {
    op: MspOp,
    left: &'a MspState,
    right: &'a MspState,
    k1: usize,
    k2: usize,
}

impl Merger<'_> {
    /// Calls `f` for every injective renaming of the right state's colors
    /// that sends each color either to a left color or to a fresh color
    /// `k1, k1 + 1, ...` (fresh colors in increasing order), within seven colors.
    fn for_each(&self, f: &mut impl FnMut(&ColorMap)) {
        let mut map = [0u8; COLORS];
        self.rec(0, 0, self.k1, &mut map, f);
    }

    fn rec(&self, x: usize, taken: u8, fresh: usize, map: &mut ColorMap, f: &mut impl FnMut(&ColorMap)) {
        if x == self.k2 {
            f(map);
            return;
        }
        for y in 0..self.k1 {
            if taken >> y & 1 == 0 && self.compatible(x, y, map) {
                map[x] = y as u8;
                self.rec(x + 1, taken | 1 << y, fresh, map, f);
            }
        }
        if fresh < COLORS {
            map[x] = fresh as u8;
            self.rec(x + 1, taken, fresh + 1, map, f);
        }
    }

    /// Cheap early test for sending right color `x` onto left color `y`:
    /// arcs between `x` and already placed colors must not oppose left arcs.
    fn compatible(&self, x: usize, y: usize, map: &ColorMap) -> bool {
        let l = self.left;
        for (x2, &y2) in map.iter().enumerate().take(x) {
            let y2 = y2 as usize;
            if y2 >= self.k1 {
                continue;
            }
            if (self.right.has_arc(x, x2) && l.has_arc(y2, y)) || (self.right.has_arc(x2, x) && l.has_arc(y, y2)) {
                return false;
            }
        }
        // a source color of the right operand may not be a sink color of the left
        !(self.op == MspOp::Series && self.right.sources >> x & 1 == 1 && l.sinks >> y & 1 == 1)
    }
}

/// Options of [`msp_states_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MspOptions {
    /// Keep every node's representatives and provenance so a coloring can be
    /// read back; otherwise child sets are dropped as soon as they are used.
    pub traceback: bool,
}

impl Default for MspOptions {
    fn default() -> Self {
        MspOptions { traceback: true }
    }
}

pub fn msp_states(e: &MspExpr) -> MspTable {
    msp_states_with(e, MspOptions::default())
}

pub fn msp_states_with(e: &MspExpr, opts: MspOptions) -> MspTable {
    let nodes = e.nodes();
    let mut states: Vec<Vec<MspState>> = Vec::with_capacity(nodes.len());
    let mut from: Vec<Vec<Provenance>> = Vec::with_capacity(nodes.len());
    let mut max_set_size = 1;
    let mut index: FxHashMap<MspState, u32> = FxHashMap::default();
    for n in nodes {
        let (set, prov) = match *n {
            BinNode::Leaf(_) => (vec![MspState::leaf(0)], Vec::new()),
            BinNode::Op(op, l, r) => {
                index.clear();
                let mut set = Vec::new();
                let mut prov = Vec::new();
                for (i, s1) in states[l].iter().enumerate() {
                    for (j, s2) in states[r].iter().enumerate() {
                        let m = Merger { op, left: s1, right: s2, k1: s1.color_count(), k2: s2.color_count() };
                        m.for_each(&mut |map| {
                            let Some(t) = s1.combine(op, &s2.relabel(map)) else { return };
                            let (c, canon) = canonicalize(&t);
                            index.entry(c).or_insert_with(|| {
                                set.push(c);
                                prov.push(Provenance { left: i as u32, right: j as u32, right_map: *map, canon });
                                (set.len() - 1) as u32
                            });
                        });
                    }
                }
                if !opts.traceback {
                    // each child feeds exactly one parent
                    states[l] = Vec::new();
                    states[r] = Vec::new();
                    prov = Vec::new();
                }
                (set, prov)
            }
        };
        max_set_size = max_set_size.max(set.len());
        states.push(set);
        from.push(prov);
    }
    MspTable { states, from, max_set_size, root: e.root() }
}

/// Oriented chromatic number of the msp-digraph of `e` and an optimal coloring.
pub fn states_ocn(e: &MspExpr) -> (usize, Coloring) {
    let table = msp_states(e);
    let witness = traceback(e, &table);
    (table.min_colors(), witness)
}

fn traceback(e: &MspExpr, table: &MspTable) -> Coloring {
    let nodes = e.nodes();
    let root = e.root();
    let best = table.states[root]
        .iter()
        .enumerate()
        .min_by_key(|(_, s)| s.color_count())
        .map(|(i, _)| i)
        .expect("a root state always exists");
    // chosen representative and the actual color of each of its colors
    let mut chosen = vec![(0u32, [0u8; COLORS]); nodes.len()];
    chosen[root] = (best as u32, [0, 1, 2, 3, 4, 5, 6]);
    for i in (0..nodes.len()).rev() {
        if let BinNode::Op(_, l, r) = nodes[i] {
            let (s, actual) = chosen[i];
            let p = table.from[i][s as usize];
            let through = |c: u8| actual[p.canon[c as usize] as usize];
            chosen[l] = (p.left, std::array::from_fn(|c| through(c as u8)));
            chosen[r] = (p.right, std::array::from_fn(|c| through(p.right_map[c])));
        }
    }
    let colors = nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| matches!(n, BinNode::Leaf(_)))
        .map(|(i, _)| chosen[i].1[0] as usize)
        .collect();
    Coloring::new(colors)
}

/// The recursion over literal states on colors `0..7`, without any
/// reduction. Returns every node's state set; intended for small inputs.
pub fn msp_states_labeled(e: &MspExpr) -> Vec<Vec<MspState>> {
    let nodes = e.nodes();
    let mut states: Vec<Vec<MspState>> = Vec::with_capacity(nodes.len());
    for n in nodes {
        let set = match *n {
            BinNode::Leaf(_) => (0..COLORS).map(MspState::leaf).collect(),
            BinNode::Op(op, l, r) => {
                let mut set: Vec<MspState> = states[l]
                    .iter()
                    .flat_map(|s1| states[r].iter().filter_map(move |s2| s1.combine(op, s2)))
                    .collect();
                set.sort_unstable();
                set.dedup();
                set
            }
        };
        states.push(set);
    }
    states
}
