use crate::error::{Error, Pos, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(usize),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Eq,
    Dot,
    Bang,
    Amp,
    Bar,
    Arrow,
    MapsTo,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Eq => "=",
            Tok::Dot => ".",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::MapsTo => "|->",
            _ => "",
        }
    }
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits a document into tokens. `//` starts a comment running to the end of the line.
pub fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let peek = |k: usize| chars.get(i + k).copied();
        let (tok, len) = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => (None, 1),
            '/' if peek(1) == Some('/') => {
                let mut n = 0;
                while i + n < chars.len() && chars[i + n] != '\n' {
                    n += 1;
                }
                (None, n)
            }
            '{' => (Some(Tok::LBrace), 1),
            '}' => (Some(Tok::RBrace), 1),
            '(' => (Some(Tok::LParen), 1),
            ')' => (Some(Tok::RParen), 1),
            '[' => (Some(Tok::LBracket), 1),
            ']' => (Some(Tok::RBracket), 1),
            ',' => (Some(Tok::Comma), 1),
            ';' => (Some(Tok::Semi), 1),
            ':' => (Some(Tok::Colon), 1),
            '=' => (Some(Tok::Eq), 1),
            '.' => (Some(Tok::Dot), 1),
            '!' => (Some(Tok::Bang), 1),
            '&' => (Some(Tok::Amp), 1),
            '|' if peek(1) == Some('-') && peek(2) == Some('>') => (Some(Tok::MapsTo), 3),
            '|' => (Some(Tok::Bar), 1),
            '-' if peek(1) == Some('>') => (Some(Tok::Arrow), 2),
            c if c.is_ascii_digit() => {
                let mut n = 0;
                while i + n < chars.len() && chars[i + n].is_ascii_digit() {
                    n += 1;
                }
                let s: String = chars[i..i + n].iter().collect();
                let v = s.parse().map_err(|_| Error::Syntax {
                    pos,
                    msg: format!("number {s} is too large"),
                })?;
                (Some(Tok::Num(v)), n)
            }
            c if is_ident_start(c) => {
                let mut n = 0;
                while i + n < chars.len() && is_ident_char(chars[i + n]) {
                    n += 1;
                }
                (Some(Tok::Ident(chars[i..i + n].iter().collect())), n)
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        if let Some(t) = tok {
            out.push((t, pos));
        }
        i += len;
        col += len;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
