use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::diagnostic::{Diagnostic, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Lower(String),
    Upper(String),
    Int(i64),
    Char(char),
    // keywords
    Let,
    In,
    If,
    Then,
    Else,
    Case,
    Of,
    Match,
    With,
    Rec,
    Forall,
    Data,
    TypeKw,
    Send,
    Receive,
    Select,
    Fork,
    New,
    // punctuation
    Arrow,
    Lolli,
    FatArrow,
    DoubleColon,
    Colon,
    Semi,
    Comma,
    Dot,
    Bang,
    Question,
    Plus,
    Minus,
    Star,
    Slash,
    Amp,
    AndAnd,
    OrOr,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eq,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    Backslash,
    Bar,
    Underscore,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Char(c) => format!("{c:?}"),
            Tok::Eof => String::from("end of declaration"),
            other => format!("`{}`", other.spelling()),
        }
    }

    fn spelling(&self) -> &'static str {
        match self {
            Tok::Let => "let",
            Tok::In => "in",
            Tok::If => "if",
            Tok::Then => "then",
            Tok::Else => "else",
            Tok::Case => "case",
            Tok::Of => "of",
            Tok::Match => "match",
            Tok::With => "with",
            Tok::Rec => "rec",
            Tok::Forall => "forall",
            Tok::Data => "data",
            Tok::TypeKw => "type",
            Tok::Send => "send",
            Tok::Receive => "receive",
            Tok::Select => "select",
            Tok::Fork => "fork",
            Tok::New => "new",
            Tok::Arrow => "->",
            Tok::Lolli => "-o",
            Tok::FatArrow => "=>",
            Tok::DoubleColon => "::",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Bang => "!",
            Tok::Question => "?",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Amp => "&",
            Tok::AndAnd => "&&",
            Tok::OrOr => "||",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Eq => "=",
            Tok::EqEq => "==",
            Tok::NotEq => "/=",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::Backslash => "\\",
            Tok::Bar => "|",
            Tok::Underscore => "_",
            Tok::Lower(_) | Tok::Upper(_) | Tok::Int(_) | Tok::Char(_) | Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "let" => Tok::Let,
        "in" => Tok::In,
        "if" => Tok::If,
        "then" => Tok::Then,
        "else" => Tok::Else,
        "case" => Tok::Case,
        "of" => Tok::Of,
        "match" => Tok::Match,
        "with" => Tok::With,
        "rec" => Tok::Rec,
        "forall" => Tok::Forall,
        "data" => Tok::Data,
        "type" => Tok::TypeKw,
        "send" => Tok::Send,
        "receive" => Tok::Receive,
        "select" => Tok::Select,
        "fork" => Tok::Fork,
        "new" => Tok::New,
        "_" => Tok::Underscore,
        _ => return None,
    })
}

struct Cursor<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn peek3(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos::new(self.line, self.col)
    }
}

/// Splits source text into tokens. `--` starts a line comment and `{- -}`
/// a (nestable) block comment.
pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor {
        chars: src.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let pos = cur.pos();
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '-' && cur.peek2() == Some('-') {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        if c == '{' && cur.peek2() == Some('-') {
            skip_block_comment(&mut cur, pos)?;
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                digits.push(d);
                cur.bump();
            }
            let n = digits.parse::<i64>().map_err(|_| {
                Diagnostic::error(pos, format!("integer literal {digits} out of range"))
            })?;
            out.push(Token {
                tok: Tok::Int(n),
                pos,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(d) = cur.peek().filter(|&d| is_ident_char(d)) {
                word.push(d);
                cur.bump();
            }
            let tok = if let Some(k) = keyword(&word) {
                k
            } else if word.starts_with(|c: char| c.is_uppercase()) {
                Tok::Upper(word)
            } else {
                Tok::Lower(word)
            };
            out.push(Token { tok, pos });
            continue;
        }
        if c == '\'' {
            cur.bump();
            let ch = match cur.bump() {
                Some('\\') => match cur.bump() {
                    Some('n') => '\n',
                    Some('t') => '\t',
                    Some('\\') => '\\',
                    Some('\'') => '\'',
                    Some('0') => '\0',
                    other => {
                        return Err(Diagnostic::error(
                            pos,
                            format!("unknown escape sequence {other:?} in character literal"),
                        ))
                    }
                },
                Some('\n') | None => {
                    return Err(Diagnostic::error(pos, "unterminated character literal"))
                }
                Some(ch) => ch,
            };
            if cur.bump() != Some('\'') {
                return Err(Diagnostic::error(pos, "unterminated character literal"));
            }
            out.push(Token {
                tok: Tok::Char(ch),
                pos,
            });
            continue;
        }
        let next = cur.peek2();
        let (tok, len) = match (c, next) {
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('-', Some('o')) if !cur.peek3().is_some_and(is_ident_char) => (Tok::Lolli, 2),
            ('=', Some('>')) => (Tok::FatArrow, 2),
            ('=', Some('=')) => (Tok::EqEq, 2),
            (':', Some(':')) => (Tok::DoubleColon, 2),
            ('&', Some('&')) => (Tok::AndAnd, 2),
            ('|', Some('|')) => (Tok::OrOr, 2),
            ('/', Some('=')) => (Tok::NotEq, 2),
            ('<', Some('=')) => (Tok::Le, 2),
            ('>', Some('=')) => (Tok::Ge, 2),
            (':', _) => (Tok::Colon, 1),
            (';', _) => (Tok::Semi, 1),
            (',', _) => (Tok::Comma, 1),
            ('.', _) => (Tok::Dot, 1),
            ('!', _) => (Tok::Bang, 1),
            ('?', _) => (Tok::Question, 1),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('/', _) => (Tok::Slash, 1),
            ('&', _) => (Tok::Amp, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('=', _) => (Tok::Eq, 1),
            ('<', _) => (Tok::Lt, 1),
            ('>', _) => (Tok::Gt, 1),
            ('\\', _) => (Tok::Backslash, 1),
            ('|', _) => (Tok::Bar, 1),
            _ => {
                return Err(Diagnostic::error(
                    pos,
                    format!("unexpected character {c:?}"),
                ))
            }
        };
        for _ in 0..len {
            cur.bump();
        }
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: cur.pos(),
    });
    Ok(out)
}

fn skip_block_comment(cur: &mut Cursor<'_>, start: Pos) -> Result<(), Diagnostic> {
    cur.bump();
    cur.bump();
    let mut depth = 1;
    while depth > 0 {
        match cur.bump() {
            Some('{') if cur.peek() == Some('-') => {
                cur.bump();
                depth += 1;
            }
            Some('-') if cur.peek() == Some('}') => {
                cur.bump();
                depth -= 1;
            }
            Some(_) => {}
            None => return Err(Diagnostic::error(start, "unterminated block comment")),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn arrows_and_lollipop() {
        assert_eq!(
            toks("a -> b -o c"),
            vec![
                Tok::Lower("a".into()),
                Tok::Arrow,
                Tok::Lower("b".into()),
                Tok::Lolli,
                Tok::Lower("c".into()),
                Tok::Eof
            ]
        );
        // `-one` is subtraction of a variable, not a linear arrow
        assert_eq!(toks("x -one")[1], Tok::Minus);
    }

    #[test]
    fn comments_and_positions() {
        let ts = lex("-- hello\n  foo {- nested {- -} -} 'c'").unwrap();
        assert_eq!(ts[0].tok, Tok::Lower("foo".into()));
        assert_eq!(ts[0].pos, Pos::new(2, 3));
        assert_eq!(ts[1].tok, Tok::Char('c'));
    }

    #[test]
    fn bad_character() {
        let err = lex("x $ y").unwrap_err();
        assert_eq!(err.pos, Pos::new(1, 3));
    }
}
