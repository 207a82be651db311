use std::fmt;

use thiserror::Error;

/// Position of a syntax problem inside an input text (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OcnError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },

    #[error("duplicate vertex name `{name}`{}", at(.pos))]
    DuplicateName { name: String, pos: Option<Pos> },

    #[error("label {label} out of range at {pos} (labels are 1..={max})")]
    LabelOutOfRange { label: u64, max: usize, pos: Pos },

    #[error("invalid clique-width operation: {0}")]
    InvalidCwOp(String),

    #[error("digraph is not oriented: arcs ({u},{v}) and ({v},{u}) both present")]
    NotOriented { u: usize, v: usize },

    #[error("expression does not define an oriented graph: {op} creates arc {from}->{to} opposite to an existing arc")]
    OppositeArcs { op: String, from: String, to: String },

    #[error("digraph has a directed cycle")]
    Cyclic,

    #[error("digraph is not transitive: arcs ({0},{1}) and ({1},{2}) without ({0},{2})")]
    NotTransitive(usize, usize, usize),

    #[error("instance too large: {what} is {size}, limit is {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },

    #[error("invalid digraph: {0}")]
    InvalidGraph(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid input: {0}")]
    Input(String),
}

fn at(pos: &Option<Pos>) -> String {
    pos.map(|p| format!(" at {p}")).unwrap_or_default()
}

pub type Result<T, E = OcnError> = std::result::Result<T, E>;
