//! Text formats: polynomials, presentation files, and Cartan data files.
//!
//! A polynomial is a `+`/`-` separated sum of terms. A term is an optional
//! rational coefficient (`3`, `1/2`) followed by zero or more factors, where a
//! factor is a space-free word such as `e2e1e1` or a bracket `[x y]` of two
//! factors. Adjacent factors multiply. A bare number is a multiple of the
//! empty word.

use thiserror::Error;

use crate::alphabet::{parse_letter_line, Alphabet, AlphabetError};
use crate::superalgebra::{super_bracket, Poly, PolyError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(String),
    Name(String),
    Open,
    Close,
    Plus,
    Minus,
    Slash,
}

fn tokenize(text: &str, col0: usize) -> Vec<(Tok, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        match c {
            c if c.is_whitespace() => i += 1,
            '[' | ']' | '+' | '-' | '/' => {
                out.push((
                    match c {
                        '[' => Tok::Open,
                        ']' => Tok::Close,
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        _ => Tok::Slash,
                    },
                    col,
                ));
                i += 1;
            }
            '*' => i += 1,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Number(chars[start..i].iter().collect()), col));
            }
            _ => {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && !"[]+-/*".contains(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Name(chars[start..i].iter().collect()), col));
            }
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn sum(&mut self) -> Result<Poly, ParseError> {
        let mut total = Poly::zero();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let term = self.term()?;
            total.add_scaled(&term, &Rational::from_int(if negative { -1 } else { 1 }));
            if self.peek().is_none() {
                return Ok(total);
            }
            negative = self
                .sign()
                .ok_or_else(|| self.err("expected `+` or `-` between terms"))?;
        }
    }

    fn sign(&mut self) -> Option<bool> {
        let negative = match self.peek()? {
            Tok::Plus => false,
            Tok::Minus => true,
            _ => return None,
        };
        self.pos += 1;
        Some(negative)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut coeff = Rational::one();
        let mut seen = false;
        if let Some(Tok::Number(n)) = self.peek().cloned() {
            self.pos += 1;
            let mut text = n;
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Number(d)) => {
                        self.pos += 1;
                        text = format!("{text}/{d}");
                    }
                    _ => return Err(self.err("expected denominator after `/`")),
                }
            }
            coeff = text.parse().map_err(|_| self.err("invalid coefficient"))?;
            seen = true;
        }
        let mut product = Poly::constant(coeff);
        while matches!(self.peek(), Some(Tok::Name(_)) | Some(Tok::Open)) {
            let f = self.factor()?;
            product = product.multiply(&f);
            seen = true;
        }
        if !seen {
            return Err(self.err("expected a term"));
        }
        Ok(product)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let w = self
                    .alphabet
                    .parse_word(&name)
                    .map_err(|e| ParseError::new(self.line, col, e.to_string()))?;
                Ok(Poly::word(w))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let l = self.factor()?;
                let r = self.factor()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err("expected `]` after two operands"));
                }
                self.pos += 1;
                super_bracket(&l, &r, self.alphabet).map_err(|e| match e {
                    PolyError::NotHomogeneous => {
                        ParseError::new(self.line, col, "bracket operand is not parity-homogeneous")
                    }
                    other => ParseError::new(self.line, col, other.to_string()),
                })
            }
            _ => Err(self.err("expected a word or `[`")),
        }
    }
}

/// Parses a polynomial; `line` and `col0` position error messages.
pub fn parse_poly_at(
    text: &str,
    alphabet: &Alphabet,
    line: usize,
    col0: usize,
) -> Result<Poly, ParseError> {
    let toks = tokenize(text, col0);
    if toks.is_empty() {
        return Err(ParseError::new(line, col0, "empty polynomial"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: col0 + text.chars().count(),
        alphabet,
    };
    let out = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected token"));
    }
    Ok(out)
}

pub fn parse_poly(text: &str, alphabet: &Alphabet) -> Result<Poly, ParseError> {
    parse_poly_at(text, alphabet, 1, 1)
}

/// An alphabet together with relation polynomials, as read from a presentation file.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relations: Vec<Poly>,
}

/// Reads `letter <name> <parity> <rank>` lines followed by `rel <polynomial>` lines.
///
/// Letters must all be declared before the first relation.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut letters = Vec::new();
    let mut rel_lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = body.len() - trimmed.len();
        if trimmed.starts_with("letter") {
            if !rel_lines.is_empty() {
                return Err(ParseError::new(line, indent + 1, "letter declared after a relation"));
            }
            letters.push(parse_letter_line(trimmed.trim(), line).map_err(|e| alphabet_err(e, line))?);
        } else if let Some(rest) = trimmed.strip_prefix("rel") {
            rel_lines.push((line, indent + 4, rest.to_string()));
        } else {
            return Err(ParseError::new(line, indent + 1, "expected `letter` or `rel`"));
        }
    }
    let alphabet = Alphabet::new(letters).map_err(|e| alphabet_err(e, 1))?;
    let mut relations = Vec::new();
    for (line, col, body) in rel_lines {
        relations.push(parse_poly_at(&body, &alphabet, line, col)?);
    }
    Ok(Presentation { alphabet, relations })
}

fn alphabet_err(e: AlphabetError, line: usize) -> ParseError {
    match e {
        AlphabetError::Syntax { line, msg } => ParseError::new(line, 1, msg),
        other => ParseError::new(line, 1, other.to_string()),
    }
}

/// Writes a presentation in the format read by [`parse_presentation`].
pub fn format_presentation(alphabet: &Alphabet, relations: &[Poly]) -> String {
    let mut out = alphabet.to_text();
    for r in relations {
        out.push_str(&format!("rel {}\n", r.format(alphabet)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Parity::{Even, Odd};
    use crate::words::NaWord;

    fn e3() -> Alphabet {
        Alphabet::numbered("e", &[Even, Even, Even])
    }

    #[test]
    fn mixed_bracket_and_word_terms() {
        let a = e3();
        let p = parse_poly("[e2 [e2 e1]] - 1/2 e1e1e2", &a).unwrap();
        let bracket = crate::superalgebra::expand_naword(&NaWord::parse("[e2 [e2 e1]]", &a).unwrap(), &a)
            .unwrap();
        let mut expected = bracket;
        expected.add_term(a.parse_word("e1e1e2").unwrap(), Rational::new(-1, 2));
        assert_eq!(p, expected);
    }

    #[test]
    fn constants_signs_and_products() {
        let a = e3();
        let p = parse_poly("-3 + 2 e1 e2 - e2e1", &a).unwrap();
        assert_eq!(p.format(&a), "-e2e1 + 2 e1e2 - 3");
        assert_eq!(parse_poly("0", &a).unwrap(), Poly::zero());
        assert_eq!(parse_poly(&p.format(&a), &a).unwrap(), p);
    }

    #[test]
    fn odd_brackets() {
        let a = Alphabet::numbered("x", &[Odd]);
        assert_eq!(parse_poly("[x1 x1]", &a).unwrap().format(&a), "2 x1x1");
    }

    #[test]
    fn errors_carry_positions() {
        let a = e3();
        let e = parse_poly("[e2 e1", &a).unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
        let e = parse_poly("e1 + e9", &a).unwrap_err();
        assert_eq!(e.col, 6);
        assert!(parse_poly("e1 +", &a).is_err());
        assert!(parse_poly("1/", &a).is_err());
        assert!(parse_poly("", &a).is_err());
    }

    #[test]
    fn presentation_round_trip() {
        let text = "# sl3 positive part\nletter e1 0 1\nletter e2 0 2\nrel [e2 [e2 e1]]\nrel [e1 [e1 e2]]  # second\n";
        let pres = parse_presentation(text).unwrap();
        assert_eq!(pres.relations.len(), 2);
        let again = parse_presentation(&format_presentation(&pres.alphabet, &pres.relations)).unwrap();
        assert_eq!(again.relations, pres.relations);
        let bad = parse_presentation("letter e1 0 1\nrel [e1 e2]\n").unwrap_err();
        assert_eq!(bad.line, 2);
        assert!(parse_presentation("oops\n").is_err());
    }
}
