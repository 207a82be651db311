//! Expression languages: di-co (`+`, `>`), msp (`|`, `*`) and directed
//! clique-width (`V`, `U`, `A`, `R`).

pub mod cw;
pub mod dico;
mod lexer;
pub mod msp;
pub mod translate;
pub mod tree;

pub use cw::{cw_validate, eval_cw, parse_cw, CwExpr, CwNode, CwStats, Label, MAX_LABEL};
pub use dico::{eval_dico, parse_dico, DicoExpr, DicoNode, DicoOp};
pub use msp::{eval_msp, parse_msp, MspExpr, MspNode, MspOp};
pub use translate::{dico_to_cw2, msp_to_cw7};
pub use tree::{BinExpr, BinNode, OpPair};
