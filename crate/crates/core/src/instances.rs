//! Named digraphs and expressions, and seeded random generators.
//!
//! Random generators draw from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded
//! with `seed_from_u64`, whose output is fixed by its specification, so a
//! seed yields the same instance on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::error::{OcnError, Result};
use crate::expr::dico::{parse_dico, DicoExpr, DicoOp};
use crate::expr::msp::{parse_msp, MspExpr, MspOp};
use crate::expr::tree::{BinExpr, BinNode, OpPair};

pub const EX2: &str = "(v1 > v3) > (v2 + v4)";
pub const EX3_X1: &str = "(v1*((v2*v3)|v4))*v5";
pub const EX3_X2: &str = "(v1*(((v2*v3)*v4)|v5))*v6";
pub const EX5_X1: &str = "v1 * (v2 | v3 * v4) * v5 * v6";
pub const EX5_X2: &str = "w1 * (w2 | w3 * (w4 | w5 * w6)) * w7";
pub const EX6: &str = "v1 * (v2 | v3 * (v4 | v5 * v6)) * (v7 | (v8 | v9 * v10) * (v11 | v12 * v13)) \
* (v14 | (v15 | (v16 | v17 * v18) * (v19 | v20 * v21)) * (v22 | (v23 | v24 * v25) * v26)) * v27";

/// Names accepted by [`gen_named`] with their parameter counts.
pub const NAMES: &[(&str, usize)] = &[
    ("path", 1),
    ("cycle", 1),
    ("knm", 2),
    ("tt", 1),
    ("paley7", 0),
    ("M", 1),
    ("Mprime", 1),
    ("ex2", 0),
    ("ex3-x1", 0),
    ("ex3-x2", 0),
    ("ex5-x1", 0),
    ("ex5-x2", 0),
    ("ex6", 0),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Digraph(Digraph),
    Dico(DicoExpr),
    Msp(MspExpr),
}

impl Instance {
    pub fn to_digraph(&self) -> Digraph {
        match self {
            Instance::Digraph(g) => g.clone(),
            Instance::Dico(e) => crate::expr::eval_dico(e),
            Instance::Msp(e) => crate::expr::eval_msp(e),
        }
    }
}

fn params_err(name: &str, msg: &str) -> OcnError {
    OcnError::Input(format!("{name}: {msg}"))
}

/// Builds a named instance; `params` are the integer arguments, e.g.
/// `gen_named("knm", &[2, 3])`.
pub fn gen_named(name: &str, params: &[usize]) -> Result<Instance> {
    let Some(&(_, arity)) = NAMES.iter().find(|(n, _)| *n == name) else {
        let known: Vec<&str> = NAMES.iter().map(|(n, _)| *n).collect();
        return Err(OcnError::Input(format!("unknown instance `{name}` (known: {})", known.join(", "))));
    };
    if params.len() != arity {
        return Err(params_err(name, &format!("expects {arity} parameter(s), got {}", params.len())));
    }
    let p = |i: usize| params[i];
    Ok(match name {
        "path" => {
            let n = p(0);
            if n == 0 {
                return Err(params_err(name, "needs n >= 1"));
            }
            Instance::Digraph(path(n))
        }
        "cycle" => {
            if p(0) < 3 {
                return Err(params_err(name, "needs n >= 3"));
            }
            Instance::Digraph(cycle(p(0)))
        }
        "knm" => {
            if p(0) == 0 || p(1) == 0 {
                return Err(params_err(name, "needs n, m >= 1"));
            }
            Instance::Digraph(complete_bipartite(p(0), p(1)))
        }
        "tt" => {
            if p(0) == 0 {
                return Err(params_err(name, "needs n >= 1"));
            }
            Instance::Digraph(transitive_tournament(p(0)))
        }
        "paley7" => Instance::Digraph(paley7()),
        "M" => Instance::Msp(m_expr(p(0))?),
        "Mprime" => Instance::Msp(mprime_expr(p(0))?),
        "ex2" => Instance::Dico(parse_dico(EX2)?),
        "ex3-x1" => Instance::Msp(parse_msp(EX3_X1)?),
        "ex3-x2" => Instance::Msp(parse_msp(EX3_X2)?),
        "ex5-x1" => Instance::Msp(parse_msp(EX5_X1)?),
        "ex5-x2" => Instance::Msp(parse_msp(EX5_X2)?),
        "ex6" => Instance::Msp(parse_msp(EX6)?),
        _ => unreachable!(),
    })
}

/// Directed path `0 -> 1 -> ... -> n-1`.
pub fn path(n: usize) -> Digraph {
    Digraph::from_arcs(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

/// Directed cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Digraph {
    Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// All arcs from `0..n` to `n..n+m`.
pub fn complete_bipartite(n: usize, m: usize) -> Digraph {
    Digraph::from_arcs(n + m, (0..n).flat_map(|u| (n..n + m).map(move |v| (u, v)))).expect("valid")
}

/// Arc `(i, j)` for every `i < j`.
pub fn transitive_tournament(n: usize) -> Digraph {
    Digraph::from_arcs(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
}

/// `v1 > v2 > ... > vn`.
pub fn transitive_tournament_dico(n: usize) -> DicoExpr {
    let text: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    parse_dico(&text.join(" > ")).expect("valid expression")
}

/// Arc `(u, v)` iff `(v - u) mod 7` is a nonzero square mod 7.
pub fn paley7() -> Digraph {
    Digraph::from_arcs(7, (0..7).flat_map(|u| [1, 2, 4].map(|d| (u, (u + d) % 7)))).expect("valid")
}

/// Shape of one recursive step, expressed on copies `0..copies` of the previous level.
enum Step {
    /// `(M | M) | (M * M)`
    M,
    /// `M' | (M' * M')`
    Mprime,
}

const MAX_LEVEL_LEAVES: usize = 1 << 24;

fn recursive_family(step: Step, i: usize) -> Result<MspExpr> {
    let base: usize = match step {
        Step::M => 4,
        Step::Mprime => 3,
    };
    let leaves = base.checked_pow(i as u32).filter(|&l| l <= MAX_LEVEL_LEAVES).ok_or(OcnError::TooLarge {
        what: "leaf count",
        size: usize::MAX,
        limit: MAX_LEVEL_LEAVES,
    })?;
    let mut nodes: Vec<BinNode<MspOp>> = Vec::with_capacity(2 * leaves);
    let mut next = 0;
    // emits level `i` in post-order and returns its root index
    fn emit(step: &Step, i: usize, nodes: &mut Vec<BinNode<MspOp>>, next: &mut usize) -> usize {
        if i == 0 {
            *next += 1;
            nodes.push(BinNode::Leaf(format!("v{next}")));
            return nodes.len() - 1;
        }
        match step {
            Step::M => {
                let a = emit(step, i - 1, nodes, next);
                let b = emit(step, i - 1, nodes, next);
                nodes.push(BinNode::Op(MspOp::Parallel, a, b));
                let ab = nodes.len() - 1;
                let c = emit(step, i - 1, nodes, next);
                let d = emit(step, i - 1, nodes, next);
                nodes.push(BinNode::Op(MspOp::Series, c, d));
                let cd = nodes.len() - 1;
                nodes.push(BinNode::Op(MspOp::Parallel, ab, cd));
            }
            Step::Mprime => {
                let a = emit(step, i - 1, nodes, next);
                let b = emit(step, i - 1, nodes, next);
                let c = emit(step, i - 1, nodes, next);
                nodes.push(BinNode::Op(MspOp::Series, b, c));
                let bc = nodes.len() - 1;
                nodes.push(BinNode::Op(MspOp::Parallel, a, bc));
            }
        }
        nodes.len() - 1
    }
    emit(&step, i, &mut nodes, &mut next);
    BinExpr::from_postorder(nodes)
}

/// `M_0` is one vertex and `M_i = M_{i-1} | M_{i-1} | (M_{i-1} * M_{i-1})`;
/// `4^i` vertices named `v1..` left to right.
pub fn m_expr(i: usize) -> Result<MspExpr> {
    recursive_family(Step::M, i)
}

/// `M'_0` is one vertex and `M'_i = M'_{i-1} | (M'_{i-1} * M'_{i-1})`; `3^i` vertices.
pub fn mprime_expr(i: usize) -> Result<MspExpr> {
    recursive_family(Step::Mprime, i)
}

/// A random binary expression over leaves `v1..vn`: every inner node splits
/// its leaves at a uniformly random point and picks its operator by a fair
/// coin. Built with an explicit stack, so `n` may be large.
pub fn random_expr<O: OpPair>(n: usize, seed: u64) -> BinExpr<O> {
    assert!(n >= 1, "an expression needs at least one leaf");
    enum Task<O> {
        Build(usize),
        Join(O),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<BinNode<O>> = Vec::with_capacity(2 * n);
    let mut done: Vec<usize> = Vec::new();
    let mut tasks = vec![Task::Build(n)];
    let mut next = 0;
    while let Some(t) = tasks.pop() {
        match t {
            Task::Build(1) => {
                next += 1;
                nodes.push(BinNode::Leaf(format!("v{next}")));
                done.push(nodes.len() - 1);
            }
            Task::Build(k) => {
                let left = rng.gen_range(1..k);
                let op = if rng.gen_bool(0.5) { O::LOOSE } else { O::TIGHT };
                tasks.push(Task::Join(op));
                tasks.push(Task::Build(k - left));
                tasks.push(Task::Build(left));
            }
            Task::Join(op) => {
                let r = done.pop().expect("right operand");
                let l = done.pop().expect("left operand");
                nodes.push(BinNode::Op(op, l, r));
                done.push(nodes.len() - 1);
            }
        }
    }
    BinExpr::from_postorder(nodes).expect("generated in post-order with fresh names")
}

pub fn random_msp(n: usize, seed: u64) -> MspExpr {
    random_expr::<MspOp>(n, seed)
}

pub fn random_dico(n: usize, seed: u64) -> DicoExpr {
    random_expr::<DicoOp>(n, seed)
}

/// Each pair `i < j` becomes the arc `(i, j)` with probability `p`.
pub fn random_dag(n: usize, p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = p.clamp(0.0, 1.0);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                arcs.push((i, j));
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("forward arcs only")
}

/// Transitive closure of [`random_dag`].
pub fn random_transitive_dag(n: usize, p: f64, seed: u64) -> Digraph {
    random_dag(n, p, seed).transitive_closure()
}
