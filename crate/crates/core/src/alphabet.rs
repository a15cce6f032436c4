//! Z2-graded, totally ordered alphabets and the two word orderings.
//!
//! Letters are stored in ascending rank order, so a letter's index inside its
//! alphabet is already its position in the order. Every [`Word`] is a sequence
//! of such indices and compares by the length-lexicographic ordering through
//! its `Ord` impl. The plain lexicographic ordering, where the empty word is
//! greater than every nonempty word, is [`Alphabet::compare_lex`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::words::Word;

/// Index of a letter inside its alphabet. Smaller index means smaller letter.
pub type Letter = u8;

/// Largest number of letters an alphabet may hold.
pub const MAX_LETTERS: usize = Letter::MAX as usize + 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter index {0} is outside the alphabet")]
    LetterOutOfRange(Letter),
    #[error("duplicate letter name `{0}`")]
    DuplicateName(String),
    #[error("duplicate rank {0}")]
    DuplicateRank(i64),
    #[error("parity must be 0 or 1, got {0}")]
    BadParity(i64),
    #[error("alphabet holds at most {MAX_LETTERS} letters")]
    TooManyLetters,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// Element of Z2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Parity {
        if bit & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(self * other)` is negative exactly when both are odd.
    pub fn sign_flips_with(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLetter {
    pub name: String,
    pub parity: Parity,
    pub rank: i64,
}

impl GradedLetter {
    pub fn new(name: impl Into<String>, parity: Parity, rank: i64) -> Self {
        GradedLetter {
            name: name.into(),
            parity,
            rank,
        }
    }
}

/// A finite generating set `X = X_0 ∪ X_1` with a total order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<GradedLetter>,
    by_name: HashMap<String, Letter>,
}

impl Alphabet {
    /// Builds an alphabet from letters given in any order; they are sorted by rank.
    pub fn new(mut letters: Vec<GradedLetter>) -> Result<Self, AlphabetError> {
        if letters.len() > MAX_LETTERS {
            return Err(AlphabetError::TooManyLetters);
        }
        letters.sort_by_key(|l| l.rank);
        for pair in letters.windows(2) {
            if pair[0].rank == pair[1].rank {
                return Err(AlphabetError::DuplicateRank(pair[0].rank));
            }
        }
        let mut by_name = HashMap::with_capacity(letters.len());
        for (idx, letter) in letters.iter().enumerate() {
            if letter.name.is_empty()
                || letter
                    .name
                    .chars()
                    .any(|c| c.is_whitespace() || "[](){}+-*/".contains(c))
            {
                return Err(AlphabetError::UnknownLetter(letter.name.clone()));
            }
            if by_name.insert(letter.name.clone(), idx as Letter).is_some() {
                return Err(AlphabetError::DuplicateName(letter.name.clone()));
            }
        }
        Ok(Alphabet { letters, by_name })
    }

    /// Letters `x1 ≺ x2 ≺ ... ≺ xn` with the given parities.
    pub fn numbered(prefix: &str, parities: &[Parity]) -> Self {
        let letters = parities
            .iter()
            .enumerate()
            .map(|(i, &p)| GradedLetter::new(format!("{prefix}{}", i + 1), p, i as i64 + 1))
            .collect();
        Alphabet::new(letters).expect("numbered alphabet is well formed")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[GradedLetter] {
        &self.letters
    }

    pub fn letter(&self, idx: Letter) -> &GradedLetter {
        &self.letters[idx as usize]
    }

    pub fn lookup(&self, name: &str) -> Result<Letter, AlphabetError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| AlphabetError::UnknownLetter(name.to_string()))
    }

    pub fn name(&self, idx: Letter) -> &str {
        &self.letters[idx as usize].name
    }

    pub fn parity(&self, idx: Letter) -> Parity {
        self.letters[idx as usize].parity
    }

    pub fn indices(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len()).map(|i| i as Letter)
    }

    pub fn check_word(&self, u: &Word) -> Result<(), AlphabetError> {
        match u.iter().find(|&&l| l as usize >= self.letters.len()) {
            Some(&bad) => Err(AlphabetError::LetterOutOfRange(bad)),
            None => Ok(()),
        }
    }

    /// Lexicographic ordering `<`: a proper prefix is *greater* than its extensions.
    pub fn compare_lex(&self, u: &Word, v: &Word) -> Result<Ordering, AlphabetError> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(lex_cmp(u, v))
    }

    /// Length-lexicographic ordering `≪`.
    pub fn compare_deglex(&self, u: &Word, v: &Word) -> Result<Ordering, AlphabetError> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(u.cmp(v))
    }

    pub fn word_parity(&self, u: &Word) -> Result<Parity, AlphabetError> {
        self.check_word(u)?;
        Ok(self.parity_of(u))
    }

    /// Parity of a word whose letters are known to be in range.
    pub fn parity_of(&self, u: &[Letter]) -> Parity {
        u.iter()
            .fold(Parity::Even, |acc, &l| acc + self.letters[l as usize].parity)
    }

    pub fn word_from_names<'a, I>(&self, names: I) -> Result<Word, AlphabetError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().map(|n| self.lookup(n)).collect()
    }

    /// Splits a space-free string such as `e2e2e1` into letters, longest name first.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlphabetError> {
        let mut out = Word::empty();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .letters
                .iter()
                .enumerate()
                .filter(|(_, l)| rest.starts_with(l.name.as_str()))
                .max_by_key(|(_, l)| l.name.len());
            match best {
                Some((idx, letter)) => {
                    out.push(idx as Letter);
                    rest = &rest[letter.name.len()..];
                }
                None => return Err(AlphabetError::UnknownLetter(rest.to_string())),
            }
        }
        Ok(out)
    }

    pub fn format_word(&self, u: &[Letter]) -> String {
        if u.is_empty() {
            return "1".to_string();
        }
        u.iter().map(|&l| self.name(l)).collect()
    }

    /// Parses the line format `letter <name> <parity:0|1> <rank:int>`.
    ///
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, AlphabetError> {
        let mut letters = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            letters.push(parse_letter_line(line, lineno + 1)?);
        }
        Alphabet::new(letters)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.letters {
            out.push_str(&format!("letter {} {} {}\n", l.name, l.parity, l.rank));
        }
        out
    }
}

pub(crate) fn parse_letter_line(line: &str, lineno: usize) -> Result<GradedLetter, AlphabetError> {
    let syntax = |msg: &str| AlphabetError::Syntax {
        line: lineno,
        msg: msg.to_string(),
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "letter" {
        return Err(syntax("expected `letter <name> <parity> <rank>`"));
    }
    let parity: i64 = fields[2].parse().map_err(|_| syntax("parity is not an integer"))?;
    let rank: i64 = fields[3].parse().map_err(|_| syntax("rank is not an integer"))?;
    let parity = match parity {
        0 => Parity::Even,
        1 => Parity::Odd,
        other => return Err(AlphabetError::BadParity(other)),
    };
    Ok(GradedLetter::new(fields[1], parity, rank))
}

/// The lexicographic ordering on raw letter slices.
pub fn lex_cmp(u: &[Letter], v: &[Letter]) -> Ordering {
    for (a, b) in u.iter().zip(v.iter()) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    // One is a prefix of the other: the shorter one is greater (`u < 1`).
    v.len().cmp(&u.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x12() -> Alphabet {
        Alphabet::numbered("x", &[Parity::Even, Parity::Even])
    }

    fn w(a: &Alphabet, s: &str) -> Word {
        a.parse_word(s).unwrap()
    }

    #[test]
    fn lex_examples() {
        let a = x12();
        assert_eq!(a.compare_lex(&w(&a, "x1x2"), &w(&a, "x2x1")), Ok(Ordering::Less));
        assert_eq!(a.compare_lex(&w(&a, "x2x1"), &w(&a, "x2")), Ok(Ordering::Less));
        assert_eq!(a.compare_lex(&w(&a, "x2"), &w(&a, "x2")), Ok(Ordering::Equal));
        assert_eq!(a.compare_lex(&w(&a, "x1"), &Word::empty()), Ok(Ordering::Less));
    }

    #[test]
    fn deglex_examples() {
        let a = x12();
        assert_eq!(a.compare_deglex(&w(&a, "x2"), &w(&a, "x1x1")), Ok(Ordering::Less));
        assert_eq!(a.compare_deglex(&w(&a, "x1x2"), &w(&a, "x2x1")), Ok(Ordering::Less));
        assert_eq!(a.compare_deglex(&Word::empty(), &w(&a, "x1")), Ok(Ordering::Less));
    }

    #[test]
    fn deglex_matches_bruteforce_sort_of_length_two() {
        let a = x12();
        let mut words: Vec<Word> = Vec::new();
        for p in 0..2u8 {
            for q in 0..2u8 {
                words.push(Word::from_slice(&[p, q]));
            }
        }
        let mut by_ord = words.clone();
        by_ord.sort();
        // Brute force: equal lengths, so compare letter by letter.
        let mut by_pairs = words;
        by_pairs.sort_by_key(|u| (u[0], u[1]));
        assert_eq!(by_ord, by_pairs);
        let pos = |s: &str| by_ord.iter().position(|u| *u == w(&a, s)).unwrap();
        assert!(pos("x1x2") < pos("x2x1"));
    }

    #[test]
    fn parity_examples() {
        let a = Alphabet::numbered("x", &[Parity::Odd, Parity::Even]);
        assert_eq!(a.word_parity(&Word::empty()), Ok(Parity::Even));
        assert_eq!(a.word_parity(&w(&a, "x1x1")), Ok(Parity::Even));
        assert_eq!(a.word_parity(&w(&a, "x1x2x1")), Ok(Parity::Even));
        assert_eq!(a.word_parity(&w(&a, "x1x2")), Ok(Parity::Odd));
    }

    #[test]
    fn unknown_letters_are_rejected() {
        let a = x12();
        assert!(matches!(a.parse_word("x3"), Err(AlphabetError::UnknownLetter(_))));
        let bad = Word::from_slice(&[5]);
        assert_eq!(
            a.compare_lex(&bad, &Word::empty()),
            Err(AlphabetError::LetterOutOfRange(5))
        );
    }

    #[test]
    fn text_format_round_trip() {
        let text = "# generators\nletter x2 0 20\nletter x1 1 10\n";
        let a = Alphabet::parse(text).unwrap();
        assert_eq!(a.name(0), "x1");
        assert_eq!(a.parity(0), Parity::Odd);
        assert_eq!(Alphabet::parse(&a.to_text()).unwrap(), a);
        assert!(matches!(
            Alphabet::parse("letter x1 2 1"),
            Err(AlphabetError::BadParity(2))
        ));
        assert!(matches!(
            Alphabet::parse("letter x1 0 1\nletter x2 0 1"),
            Err(AlphabetError::DuplicateRank(1))
        ));
        assert!(matches!(
            Alphabet::parse("letter x1 0 1\nletter x1 0 2"),
            Err(AlphabetError::DuplicateName(_))
        ));
    }

    #[test]
    fn longest_name_wins_when_splitting() {
        let letters = (1..=12)
            .map(|i| GradedLetter::new(format!("e{i}"), Parity::Even, i))
            .collect();
        let a = Alphabet::new(letters).unwrap();
        let u = a.parse_word("e12e1").unwrap();
        assert_eq!(a.format_word(&u), "e12e1");
        assert_eq!(u.len(), 2);
    }
}
