use crate::error::{OcnError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Word(String),
    LParen,
    RParen,
    Comma,
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'')
}

/// Splits expression text into tokens. `#` starts a comment running to the
/// end of the line; `symbols` lists the operator characters of the language.
pub(crate) fn tokenize(text: &str, symbols: &[char]) -> Result<Vec<Token>, OcnError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        let tok = if is_word_char(c) {
            let mut w = String::new();
            while let Some(&c) = chars.peek().filter(|&&c| is_word_char(c)) {
                w.push(c);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Word(w), pos });
            continue;
        } else {
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                c if symbols.contains(&c) => Tok::Sym(c),
                c => {
                    return Err(OcnError::Syntax { pos, msg: format!("unexpected character `{c}`") })
                }
            }
        };
        chars.next();
        col += 1;
        out.push(Token { tok, pos });
    }
    out.push(Token { tok: Tok::End, pos: Pos { line, col } });
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<Token>,
    at: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Self {
        Cursor { toks, at: 0 }
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::End {
            self.at += 1;
        }
        t
    }

    pub fn expect(&mut self, want: Tok, what: &str) -> Result<Pos, OcnError> {
        let t = self.next();
        if t.tok == want {
            Ok(t.pos)
        } else {
            Err(unexpected(&t, what))
        }
    }

    pub fn word(&mut self, what: &str) -> Result<(String, Pos), OcnError> {
        match self.next() {
            Token { tok: Tok::Word(w), pos } => Ok((w, pos)),
            t => Err(unexpected(&t, what)),
        }
    }

    pub fn finish(&mut self) -> Result<(), OcnError> {
        let t = self.next();
        if t.tok == Tok::End {
            Ok(())
        } else {
            Err(unexpected(&t, "end of input"))
        }
    }
}

pub(crate) fn unexpected(t: &Token, what: &str) -> OcnError {
    let found = match &t.tok {
        Tok::Word(w) => format!("`{w}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    };
    OcnError::Syntax { pos: t.pos, msg: format!("expected {what}, found {found}") }
}
