//! Small tournaments used as coloring targets.
//!
//! A digraph has an oriented `k`-coloring exactly when it maps
//! homomorphically into a tournament on `k` vertices, so the engines for
//! expression classes test the non-isomorphic tournaments of each order.

use std::sync::OnceLock;

/// Largest order for which all tournaments are enumerated.
pub const MAX_ENUMERATED: usize = 8;

/// A tournament on `0..k` (`k <= 8`); bit `b` of `out[a]` is the arc `a -> b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tournament {
    pub k: usize,
    pub out: [u8; 8],
}

impl Tournament {
    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.out[a] >> b & 1 == 1
    }

    /// Arcs `(a, b)` with `a < b` oriented forwards exactly when bit `i` of
    /// `code` is set, pairs taken in lexicographic order.
    fn from_code(k: usize, code: u32) -> Self {
        let mut out = [0u8; 8];
        let mut i = 0;
        for a in 0..k {
            for b in a + 1..k {
                if code >> i & 1 == 1 {
                    out[a] |= 1 << b;
                } else {
                    out[b] |= 1 << a;
                }
                i += 1;
            }
        }
        Tournament { k, out }
    }

    fn relabel(&self, map: &[usize]) -> Self {
        let mut out = [0u8; 8];
        for a in 0..self.k {
            for b in 0..self.k {
                if self.has_arc(a, b) {
                    out[map[a]] |= 1 << map[b];
                }
            }
        }
        Tournament { k: self.k, out }
    }

    fn score(&self, a: usize) -> u32 {
        self.out[a].count_ones()
    }

    /// Smallest relabeling among those listing vertices by decreasing score.
    fn canonical(&self) -> Self {
        let mut order: Vec<usize> = (0..self.k).collect();
        order.sort_by_key(|&a| std::cmp::Reverse(self.score(a)));
        let mut best: Option<Tournament> = None;
        let groups: Vec<(usize, usize)> = {
            let mut g = Vec::new();
            let mut start = 0;
            for i in 1..=self.k {
                if i == self.k || self.score(order[i]) != self.score(order[start]) {
                    g.push((start, i));
                    start = i;
                }
            }
            g
        };
        permute_groups(&mut order, &groups, 0, &mut |order| {
            let mut map = [0usize; 8];
            for (new, &old) in order.iter().enumerate() {
                map[old] = new;
            }
            let t = self.relabel(&map[..self.k]);
            if best.is_none_or(|b| t < b) {
                best = Some(t);
            }
        });
        best.expect("at least one order")
    }

    /// The Paley tournament: `a -> b` iff `(b - a) mod 7` is 1, 2 or 4.
    pub fn paley7() -> Self {
        let mut out = [0u8; 8];
        for (a, row) in out.iter_mut().enumerate().take(7) {
            for d in [1, 2, 4] {
                *row |= 1 << ((a + d) % 7);
            }
        }
        Tournament { k: 7, out }
    }
}

/// Calls `f` with every order obtained by permuting `order` within each group.
pub(crate) fn permute_groups(order: &mut [usize], groups: &[(usize, usize)], g: usize, f: &mut impl FnMut(&[usize])) {
    let Some(&(start, end)) = groups.get(g) else {
        f(order);
        return;
    };
    fn rec(order: &mut [usize], groups: &[(usize, usize)], g: usize, lo: usize, end: usize, f: &mut impl FnMut(&[usize])) {
        if lo + 1 >= end {
            permute_groups(order, groups, g + 1, f);
            return;
        }
        for i in lo..end {
            order.swap(lo, i);
            rec(order, groups, g, lo + 1, end, f);
            order.swap(lo, i);
        }
    }
    rec(order, groups, g, start, end, f);
}

/// One tournament per isomorphism class on `k <= 8` vertices.
///
/// Orders up to 5 come from all arc orientations; larger ones add a vertex
/// to each class of the order below in every possible way, since deleting
/// a vertex always leaves a tournament of that order.
pub fn tournaments(k: usize) -> &'static [Tournament] {
    assert!(k <= MAX_ENUMERATED, "tournaments are enumerated up to order {MAX_ENUMERATED}");
    static CACHE: [OnceLock<Vec<Tournament>>; MAX_ENUMERATED + 1] = [const { OnceLock::new() }; MAX_ENUMERATED + 1];
    CACHE[k].get_or_init(|| {
        let mut all: Vec<Tournament> = if k <= 5 {
            let pairs = k * k.saturating_sub(1) / 2;
            (0..1u32 << pairs).map(|c| Tournament::from_code(k, c).canonical()).collect()
        } else {
            let new = k - 1;
            tournaments(new)
                .iter()
                .flat_map(|t| {
                    (0..1u16 << new).map(move |outs| {
                        let mut out = t.out;
                        for a in 0..new {
                            if outs >> a & 1 == 1 {
                                out[new] |= 1 << a;
                            } else {
                                out[a] |= 1 << new;
                            }
                        }
                        Tournament { k, out }.canonical()
                    })
                })
                .collect()
        };
        all.sort_unstable();
        all.dedup();
        all
    })
}
