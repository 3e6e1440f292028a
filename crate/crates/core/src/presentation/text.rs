//! Line-oriented text format.
//!
//! ```text
//! # comment
//! gp 6 9 : 3 4 -3 2
//! rel s1^6 s2 s1^-6 s2^-1
//! rel (s1 s2^-1)^3; rel s2^4
//! ```
//!
//! Declarations are separated by newlines or `;`. At most one `gp` line is
//! allowed; without one, the `rel` lines form a plain presentation.

use super::{GpParams, Presentation, Word};
use crate::error::{ParseError, ParseErrorKind, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Colon,
    Caret,
    LParen,
    RParen,
    Semi,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    err(line, column, ParseErrorKind::Syntax(msg.into()))
}

/// Tokens of one physical line, terminated by `End`.
fn tokenize_line(text: &str, line: usize) -> std::result::Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            ':' => Some(Tok::Colon),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line, column });
            i += 1;
        } else if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || ((c == '-' || c == '+') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse::<i64>()
                .map_err(|_| syntax(line, column, format!("integer `{s}` out of range")))?;
            out.push(Token { tok: Tok::Int(n), line, column });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Ident(s), line, column });
        } else {
            return Err(syntax(line, column, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { tok: Tok::End, line, column: chars.len() + 1 });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn at_decl_end(&self) -> bool {
        matches!(self.peek().tok, Tok::Semi | Tok::End)
    }

    fn int(&mut self, what: &str) -> std::result::Result<(i64, Token), ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok((n, t)),
            _ => Err(syntax(t.line, t.column, format!("expected {what}"))),
        }
    }

    fn exponent(&mut self) -> std::result::Result<i64, ParseError> {
        if self.peek().tok != Tok::Caret {
            return Ok(1);
        }
        self.next();
        let (k, t) = self.int("integer exponent after `^`")?;
        if k == 0 {
            return Err(err(t.line, t.column, ParseErrorKind::ZeroExponent));
        }
        Ok(k)
    }

    /// `word := atom+`, stopping at `)`, `;` or end of line.
    fn word(&mut self) -> std::result::Result<Word, ParseError> {
        let mut out = Word::empty();
        let mut atoms = 0;
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Ident(name) => {
                    self.next();
                    let gen = match name.as_str() {
                        "s1" => 1,
                        "s2" => 2,
                        _ => {
                            return Err(err(
                                t.line,
                                t.column,
                                ParseErrorKind::UnknownGenerator(name.clone()),
                            ))
                        }
                    };
                    let k = self.exponent()?;
                    out = out.concat(&Word::power(gen, k));
                }
                Tok::LParen => {
                    self.next();
                    let inner = if self.peek().tok == Tok::RParen {
                        Word::empty()
                    } else {
                        self.word()?
                    };
                    let close = self.next();
                    if close.tok != Tok::RParen {
                        return Err(syntax(close.line, close.column, "expected `)`"));
                    }
                    let k = self.exponent()?;
                    out = out.concat(&inner.pow(k));
                }
                _ => break,
            }
            atoms += 1;
        }
        if atoms == 0 {
            let t = self.peek();
            return Err(syntax(t.line, t.column, "expected a generator or `(`"));
        }
        Ok(out)
    }
}

/// Parses the text format. Errors carry 1-based line and column.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut tokens = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let mut toks = tokenize_line(line, idx + 1)?;
        // Line ends act as declaration separators.
        let last = toks.last_mut().expect("End token");
        last.tok = Tok::Semi;
        tokens.extend(toks);
    }
    let (line, column) = tokens.last().map_or((1, 1), |t| (t.line, t.column));
    tokens.push(Token { tok: Tok::End, line, column });

    let mut parser = Parser { tokens, pos: 0 };
    let mut params: Option<GpParams> = None;
    let mut rels: Vec<Word> = Vec::new();
    loop {
        let t = parser.next();
        match &t.tok {
            Tok::End => break,
            Tok::Semi => continue,
            Tok::Ident(kw) if kw == "gp" => {
                if params.is_some() {
                    return Err(syntax(t.line, t.column, "more than one `gp` declaration").into());
                }
                let (p, pt) = parser.int("p")?;
                let (q, qt) = parser.int("q")?;
                for (v, tok) in [(p, &pt), (q, &qt)] {
                    if v <= 0 {
                        return Err(syntax(tok.line, tok.column, "p and q must be positive").into());
                    }
                }
                let colon = parser.next();
                if colon.tok != Tok::Colon {
                    return Err(syntax(colon.line, colon.column, "expected `:`").into());
                }
                let mut v = [0i64; 4];
                for (n, slot) in v.iter_mut().enumerate() {
                    let (x, _) = parser.int(&format!("4 integers after `:`, found {n}"))?;
                    *slot = x;
                }
                params = Some(GpParams::new(p as u64, q as u64, v[0], v[1], v[2], v[3])?);
            }
            Tok::Ident(kw) if kw == "rel" => {
                rels.push(parser.word()?);
            }
            _ => {
                return Err(syntax(t.line, t.column, "expected `gp` or `rel`").into());
            }
        }
        if !parser.at_decl_end() {
            let t = parser.peek();
            return Err(syntax(t.line, t.column, "unexpected token after declaration").into());
        }
    }

    match params {
        Some(mut params) => {
            for r in rels {
                params = params.with_extra(r);
            }
            Presentation::family(params)
        }
        None => {
            if rels.is_empty() {
                return Err(syntax(line, column, "empty presentation").into());
            }
            Presentation::from_relators(rels)
        }
    }
}

/// Prints a presentation so that `parse_presentation` gives it back.
pub fn format_presentation(pres: &Presentation) -> String {
    let mut lines = Vec::new();
    let extras: &[Word] = match pres.params() {
        Some(g) => {
            lines.push(format!("gp {} {} : {} {} {} {}", g.p, g.q, g.i1, g.j1, g.i2, g.j2));
            &g.extra_relators
        }
        None => pres.relators(),
    };
    lines.extend(extras.iter().map(|w| format!("rel {w}")));
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn parse_err(text: &str) -> ParseError {
        match parse_presentation(text) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn gp_line() {
        let pres = parse_presentation("gp 6 9 : 3 4 -3 2").unwrap();
        let params = pres.params().unwrap();
        assert_eq!((params.p, params.q), (6, 9));
        assert_eq!(params.tuple(), (3, 4, 3, 2));
    }

    #[test]
    fn plain_relators() {
        let pres = parse_presentation("rel s1^6; rel s2^9; rel (s1 s2)^2").unwrap();
        assert!(pres.params().is_none());
        assert_eq!(pres.relators().len(), 3);
        assert_eq!((pres.declared_p(), pres.declared_q()), (6, 9));
    }

    #[test]
    fn arity_error() {
        let e = parse_err("gp 6 9 : 3 4 -3");
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.line, 1);
    }

    #[test]
    fn unknown_generator_position() {
        let e = parse_err("rel s1^2\nrel s2 s3");
        assert_eq!(e.kind, ParseErrorKind::UnknownGenerator("s3".into()));
        assert_eq!((e.line, e.column), (2, 8));
    }

    #[test]
    fn zero_exponent() {
        let e = parse_err("rel s1^0");
        assert_eq!(e.kind, ParseErrorKind::ZeroExponent);
        assert_eq!((e.line, e.column), (1, 8));
    }

    #[test]
    fn comments_and_nesting() {
        let text = "# header\ngp 18 9 : 15 4 9 2  # central\nrel ((s1^3)^2 s2 s1^-6) s2^-1\n";
        let pres = parse_presentation(text).unwrap();
        assert_eq!(pres.relators().len(), 6);
    }

    #[test]
    fn round_trip() {
        for text in [
            "gp 6 9 : 3 4 -3 2",
            "gp 18 9 : 15 4 9 2\nrel s1^6 s2 s1^-6 s2^-1",
            "rel s1^4; rel s2^3; rel s1 s2 s1 s2",
            "rel s1^2; rel s2^2; rel (s1 s2^-1)^3",
        ] {
            let pres = parse_presentation(text).unwrap();
            let again = parse_presentation(&format_presentation(&pres)).unwrap();
            assert_eq!(pres, again, "{text}");
        }
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        let e = parse_err("gp 6 9 : 3 4 -3 2 7");
        assert_eq!(e.column, 19);
    }
}
