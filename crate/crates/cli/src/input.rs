use std::path::Path;

use ocn_core::expr::{eval_cw, eval_dico, eval_msp, parse_cw, parse_dico, parse_msp, CwExpr, DicoExpr, MspExpr};
use ocn_core::io::parse_edgelist;
use ocn_core::Digraph;

use crate::{CliError, InputArgs, Lang};

/// A loaded input: a raw digraph or an expression in one of the languages.
#[derive(Debug, Clone)]
pub enum Input {
    Digraph(Digraph),
    Dico(DicoExpr),
    Msp(MspExpr),
    Cw(CwExpr),
}

impl Input {
    pub fn parse(text: &str, lang: Option<Lang>) -> Result<Self, CliError> {
        Ok(match lang {
            None => Input::Digraph(parse_edgelist(text)?),
            Some(Lang::Dico) => Input::Dico(parse_dico(text)?),
            Some(Lang::Msp) => Input::Msp(parse_msp(text)?),
            Some(Lang::Cw) => Input::Cw(parse_cw(text)?),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Input::Digraph(_) => "digraph",
            Input::Dico(_) => "dico",
            Input::Msp(_) => "msp",
            Input::Cw(_) => "cw",
        }
    }

    /// The digraph the input denotes.
    pub fn digraph(&self) -> Result<Digraph, CliError> {
        Ok(match self {
            Input::Digraph(g) => g.clone(),
            Input::Dico(e) => eval_dico(e),
            Input::Msp(e) => eval_msp(e),
            Input::Cw(e) => eval_cw(e)?.0,
        })
    }

    /// The expression as text, when the input is one.
    pub fn expr_text(&self) -> Option<String> {
        match self {
            Input::Digraph(_) => None,
            Input::Dico(e) => Some(e.to_text()),
            Input::Msp(e) => Some(e.to_text()),
            Input::Cw(e) => Some(e.to_text()),
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Reads `--input` or `--expr`; a file is an edge list unless `--lang` is given.
pub fn load(args: &InputArgs) -> Result<Input, CliError> {
    match (&args.input, &args.expr) {
        (Some(path), None) => Input::parse(&read_file(path)?, args.lang),
        (None, Some(text)) => Input::parse(text, args.lang),
        _ => Err(CliError::Usage("give exactly one of --input and --expr".into())),
    }
}
