use std::fmt;

use super::Formula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: expected one of {{{}}}, found {}",
            self.offset,
            self.expected.join(", "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(String),
    Zero,
    One,
    Not,
    Circ,
    Bullet,
    Delta,
    Fuse,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Var(v) => format!("variable `{v}`"),
            Tok::End => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Var(_) => "variable",
            Tok::Zero => "0",
            Tok::One => "1",
            Tok::Not => "~",
            Tok::Circ => "O",
            Tok::Bullet => "#",
            Tok::Delta => "D",
            Tok::Fuse => "&",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Imp => "->",
            Tok::Iff => "<->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::End => "end of input",
        }
    }
}

const ATOM_START: &[&str] = &["variable", "0", "1", "(", "~", "O", "#", "D"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let rest = &text[at..];
        let fixed: &[(&str, Tok)] = &[
            ("<->", Tok::Iff),
            ("->", Tok::Imp),
            ("/\\", Tok::And),
            ("\\/", Tok::Or),
            ("0\u{304}", Tok::Zero),
            ("1\u{304}", Tok::One),
            ("¬", Tok::Not),
            ("○", Tok::Circ),
            ("•", Tok::Bullet),
            ("Δ", Tok::Delta),
            ("△", Tok::Delta),
            ("∧", Tok::And),
            ("∨", Tok::Or),
            ("→", Tok::Imp),
            ("↔", Tok::Iff),
            ("~", Tok::Not),
            ("O", Tok::Circ),
            ("#", Tok::Bullet),
            ("D", Tok::Delta),
            ("&", Tok::Fuse),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("0", Tok::Zero),
            ("1", Tok::One),
        ];
        if let Some((sym, tok)) = fixed.iter().find(|(sym, _)| rest.starts_with(sym)) {
            out.push((at, tok.clone()));
            for _ in 0..sym.chars().count() {
                chars.next();
            }
            if matches!(tok, Tok::Zero | Tok::One) && chars.peek().is_some_and(|&(_, c)| c.is_ascii_alphanumeric()) {
                let (pos, c) = *chars.peek().unwrap();
                return Err(ParseError { offset: pos, expected: vec!["operator", ")"], found: format!("`{c}`") });
            }
            continue;
        }
        if c.is_ascii_lowercase() {
            let mut end = at;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                    end = i + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((at, Tok::Var(text[at..end].to_string())));
            continue;
        }
        return Err(ParseError { offset: at, expected: ATOM_START.to_vec(), found: format!("`{c}`") });
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError { offset: self.offset(), expected: expected.to_vec(), found: self.peek().describe() }
    }

    fn arrow(&mut self) -> Result<Formula, ParseError> {
        let first = self.or()?;
        let op = match self.peek() {
            Tok::Imp | Tok::Iff => self.peek().clone(),
            _ => return Ok(first),
        };
        let mut operands = vec![first];
        while *self.peek() == op {
            self.bump();
            operands.push(self.or()?);
        }
        if matches!(self.peek(), Tok::Imp | Tok::Iff) {
            return Err(self.error(&[op.symbol(), ")", "end of input"]));
        }
        let mut acc = operands.pop().unwrap();
        while let Some(lhs) = operands.pop() {
            acc = match op {
                Tok::Imp => lhs.imp(acc),
                _ => lhs.iff(acc),
            };
        }
        Ok(acc)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = acc.or(self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.fuse()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = acc.and(self.fuse()?);
        }
        Ok(acc)
    }

    fn fuse(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Fuse {
            self.bump();
            acc = acc.fuse(self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::Circ => {
                self.bump();
                Ok(self.unary()?.circ())
            }
            Tok::Bullet => {
                self.bump();
                Ok(self.unary()?.bullet())
            }
            Tok::Delta => {
                self.bump();
                Ok(self.unary()?.delta())
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(Formula::Var(v))
            }
            Tok::Zero => {
                self.bump();
                Ok(Formula::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Formula::One)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.arrow()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&[")", "&", "/\\", "\\/", "->", "<->"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(ATOM_START)),
        }
    }
}

/// Parse a formula in ASCII or Unicode notation.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.arrow()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["&", "/\\", "\\/", "->", "<->", "end of input"]));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::var;

    #[test]
    fn axiom_a1_shape() {
        let f = parse("~(p /\\ ~p /\\ O p)").unwrap();
        let p = var("p");
        assert_eq!(f, p.clone().and(p.clone().not()).and(p.circ()).not());
    }

    #[test]
    fn constants_and_associativity() {
        assert_eq!(parse("1").unwrap(), Formula::One);
        assert_eq!(parse("1").unwrap().normalize(), Formula::Zero.imp(Formula::Zero));
        assert_eq!(parse("p -> q -> r").unwrap(), var("p").imp(var("q").imp(var("r"))));
        assert_eq!(parse("p & q & r").unwrap(), var("p").fuse(var("q")).fuse(var("r")));
    }

    #[test]
    fn precedence_levels() {
        let f = parse("~p & q /\\ r \\/ s -> t").unwrap();
        let expected = var("p").not().fuse(var("q")).and(var("r")).or(var("s")).imp(var("t"));
        assert_eq!(f, expected);
        assert_eq!(parse("O p1_x").unwrap(), var("p1_x").circ());
        assert_eq!(parse("Op").unwrap(), var("p").circ());
    }

    #[test]
    fn mixing_arrows_needs_parentheses() {
        let err = parse("p -> q <-> r").unwrap_err();
        assert_eq!(err.offset, 7);
        assert!(err.expected.contains(&"->"));
        assert!(parse("(p -> q) <-> r").is_ok());
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse("p /\\ ").unwrap_err();
        assert_eq!(err.offset, 5);
        assert_eq!(err.found, "end of input");
        let err = parse("(p & q").unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(err.expected.contains(&")"));
        let err = parse("p $ q").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(parse("P").is_err());
        assert!(parse("").is_err());
        assert!(parse("p q").is_err());
    }

    #[test]
    fn unicode_input() {
        assert_eq!(parse("○p → (p ∨ ¬p)").unwrap(), parse("O p -> (p \\/ ~p)").unwrap());
        assert_eq!(parse("Δ0̄ ↔ •1̄").unwrap(), parse("D 0 <-> #1").unwrap());
    }
}
