//! Recursive-descent parser for the monomial grammar.
//!
//! ```text
//! monomial  := [prefactor] cumulant* factor*
//! prefactor := "N" "^" "{" rational "}"
//! cumulant  := "C" digits                    (order >= 2)
//! factor    := green | bracket | centered
//! green     := ("G" | "Gs") ["^" "{" int "}"] "_" "(" index "," index ")"
//! bracket   := "[" ("G" | "Gs") "]" ["^" "{" affine "}"]
//! centered  := "<" entry+ ">"                (at most one per monomial)
//! entry     := ("G" | "Gs") "_" "(" index "," index ")"
//! affine    := signed terms in "n" and rationals, e.g. 2n-2, n - 1, 3/2
//! ```
//!
//! Index symbols are identifiers; `n`, `N`, `G`, `Gs`, `alpha`, `beta`
//! and `C<digits>` are reserved and cannot be bound as indices.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::affine::{AffineForm, Rational};
use super::ast::{CenteredEntry, Factor, FormalMonomial, MatrixTag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Underscore,
    Comma,
    Plus,
    Minus,
    Slash,
    Star,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '^' => out.push((start, Tok::Caret)),
            '{' => out.push((start, Tok::LBrace)),
            '}' => out.push((start, Tok::RBrace)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '[' => out.push((start, Tok::LBracket)),
            ']' => out.push((start, Tok::RBracket)),
            '<' => out.push((start, Tok::Lt)),
            '>' => out.push((start, Tok::Gt)),
            '_' => out.push((start, Tok::Underscore)),
            ',' => out.push((start, Tok::Comma)),
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '/' => out.push((start, Tok::Slash)),
            '*' => out.push((start, Tok::Star)),
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let v: i64 = text[i..j].parse().map_err(|_| ParseError {
                    pos: start,
                    message: "integer literal too large".to_string(),
                })?;
                out.push((start, Tok::Int(v)));
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_alphanumeric() {
                    j += 1;
                }
                out.push((start, Tok::Ident(text[i..j].to_string())));
                i = j;
                continue;
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError { pos: self.here(), message: message.to_string() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<usize, ParseError> {
        match self.next() {
            Some((p, t)) if t == want => Ok(p),
            Some((p, _)) => Err(ParseError { pos: p, message: format!("expected {what}") }),
            None => Err(ParseError { pos: self.end, message: format!("expected {what}") }),
        }
    }

    /// `{ rational }` — signed integer or fraction.
    fn braced_rational(&mut self) -> Result<Rational, ParseError> {
        self.expect(Tok::LBrace, "'{'")?;
        let affine = self.affine_body()?;
        self.expect(Tok::RBrace, "'}'")?;
        if !affine.n.is_zero() {
            return self.err("matrix prefactor exponent must be a rational constant");
        }
        Ok(affine.c)
    }

    /// `{ affine in n }`.
    fn braced_affine(&mut self) -> Result<AffineForm, ParseError> {
        self.expect(Tok::LBrace, "'{'")?;
        let affine = self.affine_body()?;
        self.expect(Tok::RBrace, "'}'")?;
        Ok(affine)
    }

    fn affine_body(&mut self) -> Result<AffineForm, ParseError> {
        let mut acc = AffineForm::ZERO;
        let mut sign = Rational::ONE;
        let mut first = true;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    sign = Rational::ONE;
                }
                Some(Tok::Minus) => {
                    self.next();
                    sign = -Rational::ONE;
                }
                _ if first => {}
                Some(Tok::RBrace) | None => break,
                _ => return self.err("expected '+' or '-' between exponent terms"),
            }
            first = false;
            acc = acc + self.affine_term()?.scale(sign);
            sign = Rational::ONE;
            if matches!(self.peek(), Some(Tok::RBrace) | None) {
                break;
            }
        }
        Ok(acc)
    }

    fn affine_term(&mut self) -> Result<AffineForm, ParseError> {
        match self.next() {
            Some((_, Tok::Int(v))) => {
                let mut r = Rational::int(v);
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.next();
                    match self.next() {
                        Some((p, Tok::Int(d))) => {
                            if d == 0 {
                                return Err(ParseError {
                                    pos: p,
                                    message: "zero denominator".to_string(),
                                });
                            }
                            r = Rational::new(v, d);
                        }
                        _ => return self.err("expected denominator"),
                    }
                }
                if matches!(self.peek(), Some(Tok::Star)) {
                    self.next();
                }
                if matches!(self.peek(), Some(Tok::Ident(s)) if s == "n") {
                    self.next();
                    Ok(AffineForm::n_sym().scale(r))
                } else {
                    Ok(AffineForm::constant(r))
                }
            }
            Some((_, Tok::Ident(s))) if s == "n" => Ok(AffineForm::n_sym()),
            Some((p, _)) => {
                Err(ParseError { pos: p, message: "expected exponent term".to_string() })
            }
            None => self.err("expected exponent term"),
        }
    }

    fn matrix_tag(&mut self) -> Result<MatrixTag, ParseError> {
        match self.next() {
            Some((_, Tok::Ident(s))) if s == "G" => Ok(MatrixTag::G),
            Some((_, Tok::Ident(s))) if s == "Gs" => Ok(MatrixTag::GStar),
            Some((p, _)) => {
                Err(ParseError { pos: p, message: "expected matrix tag G or Gs".to_string() })
            }
            None => self.err("expected matrix tag G or Gs"),
        }
    }

    fn index_symbol(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some((p, Tok::Ident(s))) => {
                if is_reserved(&s) {
                    Err(ParseError {
                        pos: p,
                        message: format!("symbol '{s}' is reserved and cannot be bound as an index"),
                    })
                } else {
                    Ok(s)
                }
            }
            Some((p, _)) => Err(ParseError { pos: p, message: "expected index symbol".to_string() }),
            None => self.err("expected index symbol"),
        }
    }

    /// `_ ( x , y )`.
    fn index_pair(&mut self) -> Result<(String, String), ParseError> {
        self.expect(Tok::Underscore, "'_'")?;
        self.expect(Tok::LParen, "'('")?;
        let x = self.index_symbol()?;
        self.expect(Tok::Comma, "','")?;
        let y = self.index_symbol()?;
        self.expect(Tok::RParen, "')'")?;
        Ok((x, y))
    }
}

fn is_reserved(s: &str) -> bool {
    matches!(s, "n" | "N" | "G" | "Gs" | "alpha" | "beta")
        || (s.starts_with('C') && s.len() > 1 && s[1..].bytes().all(|b| b.is_ascii_digit()))
}

pub fn parse(text: &str) -> Result<FormalMonomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let mut prefactor_exponent = Rational::ZERO;
    let mut saw_prefactor = false;
    let mut cumulants: Vec<u32> = Vec::new();
    let mut factors: Vec<(usize, Factor)> = Vec::new();
    let mut indices: Vec<String> = Vec::new();
    let mut centered_at: Option<usize> = None;

    let note_index = |indices: &mut Vec<String>, s: &String| {
        if !indices.iter().any(|t| t == s) {
            indices.push(s.clone());
        }
    };

    while let Some(tok) = p.peek().cloned() {
        let at = p.here();
        match tok {
            Tok::Ident(name) if name == "N" => {
                p.next();
                if saw_prefactor {
                    return Err(ParseError {
                        pos: at,
                        message: "duplicate N^{...} prefactor".to_string(),
                    });
                }
                p.expect(Tok::Caret, "'^' after N")?;
                prefactor_exponent = p.braced_rational()?;
                saw_prefactor = true;
            }
            Tok::Ident(name)
                if name.starts_with('C')
                    && name.len() > 1
                    && name[1..].bytes().all(|b| b.is_ascii_digit()) =>
            {
                p.next();
                let order: u32 = name[1..].parse().map_err(|_| ParseError {
                    pos: at,
                    message: "cumulant order too large".to_string(),
                })?;
                if order < 2 {
                    return Err(ParseError {
                        pos: at,
                        message: "cumulant tokens start at C2".to_string(),
                    });
                }
                cumulants.push(order);
            }
            Tok::Ident(name) if name == "G" || name == "Gs" => {
                let tag = p.matrix_tag()?;
                let power = if matches!(p.peek(), Some(Tok::Caret)) {
                    p.next();
                    let affine = p.braced_affine()?;
                    match affine.c.as_integer() {
                        Some(m) if m >= 1 && affine.is_constant() => m as u32,
                        _ => {
                            return Err(ParseError {
                                pos: at,
                                message: "matrix power must be a positive integer".to_string(),
                            })
                        }
                    }
                } else {
                    1
                };
                let (x, y) = p.index_pair()?;
                note_index(&mut indices, &x);
                note_index(&mut indices, &y);
                factors.push((at, Factor::Power { tag, power, x, y }));
            }
            Tok::LBracket => {
                p.next();
                let tag = p.matrix_tag()?;
                p.expect(Tok::RBracket, "']'")?;
                let power = if matches!(p.peek(), Some(Tok::Caret)) {
                    p.next();
                    p.braced_affine()?
                } else {
                    AffineForm::int(1)
                };
                factors.push((at, Factor::Bracket { tag, power }));
            }
            Tok::Lt => {
                p.next();
                if centered_at.is_some() {
                    return Err(ParseError {
                        pos: at,
                        message: "a monomial may contain at most one centered product".to_string(),
                    });
                }
                centered_at = Some(at);
                let mut entries = Vec::new();
                loop {
                    match p.peek() {
                        Some(Tok::Gt) => {
                            p.next();
                            break;
                        }
                        Some(Tok::Ident(s)) if s == "G" || s == "Gs" => {
                            let tag = p.matrix_tag()?;
                            if matches!(p.peek(), Some(Tok::Caret)) {
                                return p.err("centered products take first-power entries; repeat the factor instead");
                            }
                            let (x, y) = p.index_pair()?;
                            note_index(&mut indices, &x);
                            note_index(&mut indices, &y);
                            entries.push(CenteredEntry { tag, x, y });
                        }
                        _ => return p.err("expected G/Gs entry or '>' in centered product"),
                    }
                }
                if entries.is_empty() {
                    return Err(ParseError {
                        pos: at,
                        message: "empty centered product".to_string(),
                    });
                }
                factors.push((at, Factor::Centered(entries)));
            }
            _ => return p.err("expected a factor (N^{...}, Ck, G, Gs, [..], <..>)"),
        }
    }

    if centered_at.is_some() {
        for (pos, f) in &factors {
            if let Factor::Power { power, .. } = f {
                if *power >= 2 {
                    return Err(ParseError {
                        pos: *pos,
                        message:
                            "a centered-product monomial cannot carry matrix powers >= 2 outside it"
                                .to_string(),
                    });
                }
            }
        }
    }

    cumulants.sort_unstable();
    Ok(FormalMonomial {
        prefactor_exponent,
        cumulants,
        factors: factors.into_iter().map(|(_, f)| f).collect(),
        indices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_worked_example() {
        let m = parse("N^{-2} C4 [G]^{n-1} [Gs]^{n-1} Gs^{2}_(i,i) Gs_(j,j) G_(i,i) G_(j,j)")
            .unwrap();
        assert_eq!(m.prefactor_exponent, Rational::int(-2));
        assert_eq!(m.cumulants, alloc::vec![4]);
        assert_eq!(m.indices, alloc::vec!["i".to_string(), "j".to_string()]);
        assert_eq!(m.factors.len(), 6);
        assert!(!m.has_centered());
    }

    #[test]
    fn roundtrip_display() {
        for text in [
            "N^{-2} C4 [G]^{n-1} [Gs]^{n-1} Gs^{2}_(i,i) Gs_(j,j) G_(i,i) G_(j,j)",
            "G_(i,i)",
            "N^{-1} C3 [Gs]^{n} [G]^{n-1} <G_(i,i) G_(j,j) G_(i,j)>",
            "N^{3/2} [G]^{2n-2} G^{4}_(x,y)",
        ] {
            let m = parse(text).unwrap();
            let printed = m.to_string();
            let again = parse(&printed).unwrap();
            assert_eq!(m, again, "roundtrip failed via '{printed}'");
        }
    }

    #[test]
    fn rejects_two_centered_products() {
        let e = parse("<G_(i,j) G_(j,j)> <G_(i,i)>").unwrap_err();
        assert!(e.message.contains("at most one centered product"), "{e}");
    }

    #[test]
    fn rejects_reserved_index() {
        let e = parse("G_(n,i)").unwrap_err();
        assert!(e.message.contains("reserved"), "{e}");
    }

    #[test]
    fn rejects_power_inside_centered() {
        assert!(parse("<G^{2}_(i,i)>").is_err());
    }

    #[test]
    fn rejects_high_power_beside_centered() {
        assert!(parse("G^{2}_(i,j) <G_(i,i)>").is_err());
        // first power outside is allowed
        assert!(parse("G_(i,j) <G_(i,i)>").is_ok());
    }

    #[test]
    fn error_positions_point_at_offender() {
        let e = parse("N^{-2} N^{-1}").unwrap_err();
        assert_eq!(e.pos, 7);
        assert!(parse("C1").is_err());
        assert!(parse("G^{0}_(i,j)").is_err());
        assert!(parse("G^{n}_(i,j)").is_err());
    }
}
