#![allow(dead_code)]

use ocn_core::Digraph;

/// Whether `colors` is an oriented coloring, straight from the definition:
/// no arc inside a class, and no two arcs between the same two classes in
/// opposite directions.
pub fn is_oriented_by_definition(g: &Digraph, colors: &[usize]) -> bool {
    let arcs: Vec<(usize, usize)> = g.arcs().collect();
    if arcs.iter().any(|&(u, v)| colors[u] == colors[v]) {
        return false;
    }
    for &(u, v) in &arcs {
        for &(x, y) in &arcs {
            if colors[v] == colors[x] && colors[u] == colors[y] {
                return false;
            }
        }
    }
    true
}

/// Oriented chromatic number by trying every set partition of the vertices
/// (restricted growth strings), smallest block count first.
pub fn brute_ocn(g: &Digraph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let mut best = n;
    let mut colors = vec![0usize; n];
    fn rec(g: &Digraph, i: usize, used: usize, colors: &mut Vec<usize>, best: &mut usize) {
        if used >= *best {
            return;
        }
        if i == colors.len() {
            if is_oriented_by_definition(g, colors) {
                *best = used;
            }
            return;
        }
        for c in 0..=used {
            colors[i] = c;
            rec(g, i + 1, used.max(c + 1), colors, best);
        }
    }
    rec(g, 1, 1, &mut colors, &mut best);
    best
}

pub fn arc_set(g: &Digraph) -> Vec<(String, String)> {
    let mut a: Vec<(String, String)> = g.arcs().map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string())).collect();
    a.sort();
    a
}
