//! Associative words, bracket trees, and (super-)Lyndon-Shirshov combinatorics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use smallvec::SmallVec;
use thiserror::Error;

use crate::alphabet::{lex_cmp, Alphabet, AlphabetError, Letter, Parity};
use crate::superalgebra::{bracket_with_parities, Poly, PolyError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("the empty word is not allowed here")]
    EmptyWord,
    #[error("word is not a super Lyndon-Shirshov word")]
    NotSuperLs,
    #[error("occurrence does not match: u is not a*v*b")]
    OccurrenceMismatch,
    #[error("no bracketing of the occurrence has leading word u")]
    NoRelativeBracketing,
    #[error("substituted polynomial must be nonzero and parity-homogeneous")]
    BadSubstitution,
    #[error("bracket syntax: {0}")]
    Syntax(String),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

/// A word in the free monoid. Ordered by the length-lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_slice(letters: &[Letter]) -> Word {
        Word(SmallVec::from_slice(letters))
    }

    pub fn concat3(a: &[Letter], b: &[Letter], c: &[Letter]) -> Word {
        let mut v = SmallVec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(a);
        v.extend_from_slice(b);
        v.extend_from_slice(c);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    /// Start positions of every occurrence of `sub`.
    pub fn occurrences<'a>(&'a self, sub: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
        let n = sub.len();
        (0..=self.len().saturating_sub(n))
            .filter(move |&i| n <= self.len() && &self.0[i..i + n] == sub)
    }

    pub fn contains_factor(&self, sub: &[Letter]) -> bool {
        self.occurrences(sub).next().is_some()
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0.as_slice())
    }
}

/// A nonassociative word: a binary bracketing of letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NaWord {
    Leaf(Letter),
    Node(Box<NaWord>, Box<NaWord>),
}

impl NaWord {
    pub fn node(l: NaWord, r: NaWord) -> NaWord {
        NaWord::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Letter>) {
        match self {
            NaWord::Leaf(l) => out.push(*l),
            NaWord::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Right-normed bracket `[x1 [x2 [... xk]]]`.
    pub fn right_normed(parts: Vec<NaWord>) -> NaWord {
        let mut it = parts.into_iter().rev();
        let last = it.next().expect("at least one factor");
        it.fold(last, |acc, t| NaWord::node(t, acc))
    }

    /// Left-normed bracket `[[[x1 x2] ...] xk]`.
    pub fn left_normed(parts: Vec<NaWord>) -> NaWord {
        let mut it = parts.into_iter();
        let first = it.next().expect("at least one factor");
        it.fold(first, NaWord::node)
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        match self {
            NaWord::Leaf(l) => alphabet.name(*l).to_string(),
            NaWord::Node(l, r) => format!("[{} {}]", l.format(alphabet), r.format(alphabet)),
        }
    }

    /// Parses `[t1 t2]` bracket syntax with letter names as leaves.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<NaWord, WordError> {
        let tokens = tokenize_brackets(text);
        let mut pos = 0;
        let t = parse_tree(&tokens, &mut pos, alphabet)?;
        if pos != tokens.len() {
            return Err(WordError::Syntax(format!("trailing input `{}`", tokens[pos])));
        }
        Ok(t)
    }
}

fn tokenize_brackets(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if c == '[' || c == ']' || c.is_whitespace() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                out.push(c.to_string());
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_tree(tokens: &[String], pos: &mut usize, alphabet: &Alphabet) -> Result<NaWord, WordError> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| WordError::Syntax("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "[" => {
            let l = parse_tree(tokens, pos, alphabet)?;
            let r = parse_tree(tokens, pos, alphabet)?;
            match tokens.get(*pos).map(String::as_str) {
                Some("]") => {
                    *pos += 1;
                    Ok(NaWord::node(l, r))
                }
                _ => Err(WordError::Syntax("expected `]` after two operands".into())),
            }
        }
        "]" => Err(WordError::Syntax("unexpected `]`".into())),
        name => Ok(NaWord::Leaf(alphabet.lookup(name)?)),
    }
}

/// The bracket-removing map ρ.
pub fn remove_brackets(t: &NaWord) -> Word {
    t.leaves().into_iter().collect()
}

/// `u` is a letter or strictly greater than each of its nontrivial rotations.
pub fn is_lyndon_shirshov_word(u: &[Letter]) -> Result<bool, WordError> {
    if u.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok(is_ls(u))
}

fn is_ls(u: &[Letter]) -> bool {
    let n = u.len();
    (1..n).all(|k| {
        // Compare u = vw with wv where v = u[..k].
        let rotated = u[k..].iter().chain(u[..k].iter());
        u.iter().cmp(rotated) == Ordering::Greater
    })
}

/// An LS word, or `vv` with `v` an odd LS word.
pub fn is_super_lyndon_shirshov_word(u: &[Letter], alphabet: &Alphabet) -> Result<bool, WordError> {
    if u.is_empty() {
        return Err(WordError::EmptyWord);
    }
    alphabet.check_word(&Word::from_slice(u))?;
    Ok(is_ls(u) || odd_square_root(u, alphabet).is_some())
}

/// For `u = vv` with `v` an odd LS word, returns `v`.
fn odd_square_root<'a>(u: &'a [Letter], alphabet: &Alphabet) -> Option<&'a [Letter]> {
    let n = u.len();
    if n % 2 != 0 {
        return None;
    }
    let (v, w) = u.split_at(n / 2);
    (v == w && is_ls(v) && alphabet.parity_of(v).is_odd()).then_some(v)
}

/// All LS words of length at most `max_len`, in ascending length-lexicographic order.
///
/// Generated with Duval's algorithm on the reversed alphabet: under the
/// reversal `c -> q-1-c`, LS words are exactly the classical Lyndon words.
pub fn enumerate_ls_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let q = alphabet.len();
    let mut out = Vec::new();
    if q == 0 || max_len == 0 {
        return out;
    }
    let top = (q - 1) as Letter;
    let mut w: Vec<Letter> = vec![0];
    loop {
        out.push(w.iter().map(|&c| top - c).collect::<Word>());
        // Extend periodically to max_len, then strip trailing maximal letters.
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out.sort();
    out
}

/// All words of the given length over `n_letters`, ascending.
pub fn all_words(n_letters: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n_letters);
        for w in &out {
            for l in 0..n_letters {
                let mut x = w.clone();
                x.push(l as Letter);
                next.push(x);
            }
        }
        out = next;
    }
    out
}

/// Every binary bracketing of the given letter sequence.
pub fn all_bracketings(u: &[Letter]) -> Vec<NaWord> {
    match u.len() {
        0 => Vec::new(),
        1 => vec![NaWord::Leaf(u[0])],
        n => {
            let mut out = Vec::new();
            for k in 1..n {
                let left = all_bracketings(&u[..k]);
                let right = all_bracketings(&u[k..]);
                for l in &left {
                    for r in &right {
                        out.push(NaWord::node(l.clone(), r.clone()));
                    }
                }
            }
            out
        }
    }
}

/// The unique super-LS monomial `[u]` on a super-LS word `u`.
pub fn canonical_bracketing(u: &[Letter], alphabet: &Alphabet) -> Result<NaWord, WordError> {
    if !is_super_lyndon_shirshov_word(u, alphabet)? {
        return Err(WordError::NotSuperLs);
    }
    if is_ls(u) {
        return Ok(shirshov_bracketing(u));
    }
    let v = odd_square_root(u, alphabet).expect("square of an odd LS word");
    let t = shirshov_bracketing(v);
    Ok(NaWord::node(t.clone(), t))
}

/// Standard factorization `u = vw` with `w` the longest proper LS suffix, recursively.
fn shirshov_bracketing(u: &[Letter]) -> NaWord {
    if u.len() == 1 {
        return NaWord::Leaf(u[0]);
    }
    let k = (1..u.len())
        .find(|&k| is_ls(&u[k..]))
        .expect("a single letter is an LS suffix");
    NaWord::node(shirshov_bracketing(&u[..k]), shirshov_bracketing(&u[k..]))
}

/// Structural check of the LS monomial conditions.
pub fn is_ls_monomial(t: &NaWord) -> bool {
    match t {
        NaWord::Leaf(_) => true,
        NaWord::Node(u1, u2) => {
            if !is_ls_monomial(u1) || !is_ls_monomial(u2) {
                return false;
            }
            let (r1, r2) = (remove_brackets(u1), remove_brackets(u2));
            if lex_cmp(&r1, &r2) != Ordering::Greater {
                return false;
            }
            match &**u1 {
                NaWord::Node(_, v2) => lex_cmp(&remove_brackets(v2), &r2) != Ordering::Greater,
                NaWord::Leaf(_) => true,
            }
        }
    }
}

/// An LS monomial, or `([v][v])` for an odd LS monomial `[v]`.
pub fn is_super_ls_monomial(t: &NaWord, alphabet: &Alphabet) -> bool {
    if t.leaves().iter().any(|&l| l as usize >= alphabet.len()) {
        return false;
    }
    if is_ls_monomial(t) {
        return true;
    }
    match t {
        NaWord::Node(l, r) => {
            l == r && is_ls_monomial(l) && alphabet.parity_of(&l.leaves()).is_odd()
        }
        NaWord::Leaf(_) => false,
    }
}

/// A bracket tree whose leaves are letters or a single placeholder.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RelTree {
    Leaf(Letter),
    Hole,
    Node(Box<RelTree>, Box<RelTree>),
}

impl RelTree {
    pub fn format(&self, alphabet: &Alphabet, hole: &str) -> String {
        match self {
            RelTree::Leaf(l) => alphabet.name(*l).to_string(),
            RelTree::Hole => hole.to_string(),
            RelTree::Node(l, r) => {
                format!("[{} {}]", l.format(alphabet, hole), r.format(alphabet, hole))
            }
        }
    }

    /// Expands the tree with `hole` standing in for the placeholder.
    pub fn expand(&self, hole: &Poly, hole_parity: Parity, alphabet: &Alphabet) -> Poly {
        self.expand_inner(hole, hole_parity, alphabet).0
    }

    fn expand_inner(&self, hole: &Poly, hole_parity: Parity, alphabet: &Alphabet) -> (Poly, Parity) {
        match self {
            RelTree::Leaf(l) => (Poly::letter(*l), alphabet.parity(*l)),
            RelTree::Hole => (hole.clone(), hole_parity),
            RelTree::Node(l, r) => {
                let (pl, dl) = l.expand_inner(hole, hole_parity, alphabet);
                let (pr, dr) = r.expand_inner(hole, hole_parity, alphabet);
                (bracket_with_parities(&pl, dl, &pr, dr), dl + dr)
            }
        }
    }
}

/// The bracketing `(a [v] b)` of a word `u = avb` around a marked occurrence of `v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelativeBracketing {
    pub a: Word,
    pub v: Word,
    pub b: Word,
    /// Bracket tree over the letters of `a`, a placeholder for `[v]`, and the letters of `b`.
    pub tree: RelTree,
    /// Leading coefficient of the expansion with `[v]` in the placeholder.
    pub leading_coeff: Rational,
    /// `1 / leading_coeff`; scaling by it makes the expansion monic.
    pub scalar: Rational,
}

/// Finds a bracketing of `u = a v b` that keeps `[v]` intact and expands to leading word `u`.
///
/// Among all trees in which every node's leading word is the concatenation
/// of its children's leading words, the one with the fewest odd-square nodes
/// is chosen, breaking ties by the leftmost top split.
pub fn relative_bracketing(
    u: &[Letter],
    a: &[Letter],
    v: &[Letter],
    b: &[Letter],
    alphabet: &Alphabet,
) -> Result<RelativeBracketing, WordError> {
    if u.len() != a.len() + v.len() + b.len()
        || &u[..a.len()] != a
        || &u[a.len()..a.len() + v.len()] != v
        || &u[a.len() + v.len()..] != b
    {
        return Err(WordError::OccurrenceMismatch);
    }
    if !is_super_lyndon_shirshov_word(u, alphabet)? || !is_super_lyndon_shirshov_word(v, alphabet)? {
        return Err(WordError::NotSuperLs);
    }
    let hole_lc = if is_ls(v) {
        Rational::one()
    } else {
        Rational::from_int(2)
    };

    // Atom i covers u[pos[i]..pos[i+1]].
    let hole_atom = a.len();
    let n_atoms = a.len() + 1 + b.len();
    let pos: Vec<usize> = (0..=n_atoms)
        .map(|i| if i <= hole_atom { i } else { i - 1 + v.len() })
        .collect();

    // best[i][j] = (odd-square nodes, split) for atoms i..j.
    let mut best: Vec<Vec<Option<(u32, usize)>>> = vec![vec![None; n_atoms + 1]; n_atoms + 1];
    for (i, row) in best.iter_mut().enumerate().take(n_atoms) {
        row[i + 1] = Some((0, 0));
    }
    for width in 2..=n_atoms {
        for i in 0..=n_atoms - width {
            let j = i + width;
            let mut found: Option<(u32, usize)> = None;
            for k in i + 1..j {
                let (Some((sl, _)), Some((sr, _))) = (best[i][k], best[k][j]) else {
                    continue;
                };
                let left = &u[pos[i]..pos[k]];
                let right = &u[pos[k]..pos[j]];
                let extra = match left.iter().chain(right).cmp(right.iter().chain(left)) {
                    Ordering::Greater => 0,
                    Ordering::Equal
                        if alphabet.parity_of(left).is_odd() && alphabet.parity_of(right).is_odd() =>
                    {
                        1
                    }
                    _ => continue,
                };
                let cost = sl + sr + extra;
                if found.is_none_or(|(c, _)| cost < c) {
                    found = Some((cost, k));
                }
            }
            best[i][j] = found;
        }
    }
    let (squares, _) = best[0][n_atoms].ok_or(WordError::NoRelativeBracketing)?;
    let tree = build_rel_tree(&best, u, &pos, hole_atom, 0, n_atoms);
    let leading_coeff = &hole_lc * &Rational::from_int(1i64 << squares.min(62));
    Ok(RelativeBracketing {
        a: Word::from_slice(a),
        v: Word::from_slice(v),
        b: Word::from_slice(b),
        tree,
        scalar: leading_coeff.recip(),
        leading_coeff,
    })
}

fn build_rel_tree(
    best: &[Vec<Option<(u32, usize)>>],
    u: &[Letter],
    pos: &[usize],
    hole_atom: usize,
    i: usize,
    j: usize,
) -> RelTree {
    if j == i + 1 {
        return if i == hole_atom {
            RelTree::Hole
        } else {
            RelTree::Leaf(u[pos[i]])
        };
    }
    let (_, k) = best[i][j].expect("interval was reachable");
    RelTree::Node(
        Box::new(build_rel_tree(best, u, pos, hole_atom, i, k)),
        Box::new(build_rel_tree(best, u, pos, hole_atom, k, j)),
    )
}

/// Expansion of `[a p̄ b]_p`: the relative bracketing with `p` substituted for `[p̄]`,
/// scaled to be monic. The result has leading word `a p̄ b`.
pub fn substitute_bracketing(
    a: &[Letter],
    p: &Poly,
    b: &[Letter],
    alphabet: &Alphabet,
) -> Result<Poly, WordError> {
    let v = p.leading_word().ok_or(WordError::BadSubstitution)?.clone();
    let parity = match p.parity(alphabet) {
        Ok(Some(d)) => d,
        Ok(None) | Err(PolyError::NotHomogeneous) | Err(PolyError::Zero) => {
            return Err(WordError::BadSubstitution)
        }
        Err(PolyError::Alphabet(e)) => return Err(e.into()),
    };
    let u = Word::concat3(a, &v, b);
    let rb = relative_bracketing(&u, a, &v, b, alphabet)?;
    let e = rb.tree.expand(p, parity, alphabet);
    let (lw, lc) = e.leading_term().map_err(|_| WordError::NoRelativeBracketing)?;
    if lw != u {
        return Err(WordError::NoRelativeBracketing);
    }
    Ok(e.scale(&lc.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Parity::{Even, Odd};
    use crate::superalgebra::expand_naword;

    fn alpha(parities: &[Parity]) -> Alphabet {
        Alphabet::numbered("x", parities)
    }

    fn w(a: &Alphabet, s: &str) -> Word {
        a.parse_word(s).unwrap()
    }

    #[test]
    fn remove_brackets_examples() {
        let a = alpha(&[Even, Even]);
        for s in ["x1", "[[x2 x1] x1]", "[x2 [x1 x1]]"] {
            let t = NaWord::parse(s, &a).unwrap();
            let expected = if s == "x1" { "x1" } else { "x2x1x1" };
            assert_eq!(remove_brackets(&t), w(&a, expected));
        }
    }

    #[test]
    fn ls_word_examples() {
        let a = alpha(&[Even, Even]);
        assert_eq!(is_lyndon_shirshov_word(&w(&a, "x2x1")), Ok(true));
        assert_eq!(is_lyndon_shirshov_word(&w(&a, "x1x2")), Ok(false));
        assert_eq!(is_lyndon_shirshov_word(&w(&a, "x1")), Ok(true));
        assert_eq!(is_lyndon_shirshov_word(&[]), Err(WordError::EmptyWord));
    }

    #[test]
    fn super_ls_word_examples() {
        let odd = alpha(&[Odd, Even]);
        assert_eq!(is_super_lyndon_shirshov_word(&w(&odd, "x1x1"), &odd), Ok(true));
        let even = alpha(&[Even, Even]);
        assert_eq!(is_super_lyndon_shirshov_word(&w(&even, "x1x1"), &even), Ok(false));
        assert_eq!(is_super_lyndon_shirshov_word(&w(&odd, "x2x1x2x1"), &odd), Ok(true));
        assert_eq!(is_super_lyndon_shirshov_word(&w(&even, "x2x1x2x1"), &even), Ok(false));
    }

    #[test]
    fn enumeration_examples() {
        let one = alpha(&[Even]);
        assert_eq!(enumerate_ls_words(&one, 3), vec![w(&one, "x1")]);
        let two = alpha(&[Even, Even]);
        assert_eq!(
            enumerate_ls_words(&two, 2),
            vec![w(&two, "x1"), w(&two, "x2"), w(&two, "x2x1")]
        );
        let three = enumerate_ls_words(&two, 3);
        let by_len: Vec<usize> = (1..=3)
            .map(|n| three.iter().filter(|u| u.len() == n).count())
            .collect();
        assert_eq!(by_len, vec![2, 1, 2]);
    }

    #[test]
    fn enumeration_matches_filtering() {
        let a = alpha(&[Even, Even, Even]);
        let mut filtered = Vec::new();
        for len in 1..=6 {
            for u in all_words(3, len) {
                if is_ls(&u) {
                    filtered.push(u);
                }
            }
        }
        assert_eq!(enumerate_ls_words(&a, 6), filtered);
    }

    #[test]
    fn canonical_bracketing_examples() {
        let a = alpha(&[Even, Even]);
        let t = canonical_bracketing(&w(&a, "x2x1"), &a).unwrap();
        assert_eq!(t.format(&a), "[x2 x1]");
        let t = canonical_bracketing(&w(&a, "x2x1x1"), &a).unwrap();
        assert_eq!(t.format(&a), "[[x2 x1] x1]");
        let odd = alpha(&[Odd, Even]);
        let t = canonical_bracketing(&w(&odd, "x1x1"), &odd).unwrap();
        assert_eq!(t.format(&odd), "[x1 x1]");
        assert_eq!(
            canonical_bracketing(&w(&a, "x1x1"), &a),
            Err(WordError::NotSuperLs)
        );
    }

    #[test]
    fn monomial_examples() {
        let a = alpha(&[Even, Even]);
        let yes = NaWord::parse("[[x2 x1] x1]", &a).unwrap();
        let no = NaWord::parse("[x2 [x1 x1]]", &a).unwrap();
        assert!(is_super_ls_monomial(&yes, &a));
        assert!(!is_super_ls_monomial(&no, &a));
        let odd = alpha(&[Odd, Even]);
        assert!(is_super_ls_monomial(&NaWord::parse("[x1 x1]", &odd).unwrap(), &odd));
        assert!(!is_super_ls_monomial(&NaWord::parse("[x1 x1]", &a).unwrap(), &a));
    }

    #[test]
    fn canonical_bracketing_is_the_unique_monomial() {
        for parities in [vec![Even, Even], vec![Odd, Even, Odd]] {
            let a = alpha(&parities);
            for len in 1..=5 {
                for u in all_words(a.len(), len) {
                    let monomials: Vec<NaWord> = all_bracketings(&u)
                        .into_iter()
                        .filter(|t| is_super_ls_monomial(t, &a))
                        .collect();
                    if is_super_lyndon_shirshov_word(&u, &a).unwrap() {
                        let t = canonical_bracketing(&u, &a).unwrap();
                        assert_eq!(monomials, vec![t.clone()]);
                        assert_eq!(remove_brackets(&t), u);
                    } else {
                        assert!(monomials.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_parsing_errors() {
        let a = alpha(&[Even, Even]);
        assert!(matches!(NaWord::parse("[x1 x2", &a), Err(WordError::Syntax(_))));
        assert!(matches!(NaWord::parse("[x1 x2] x1", &a), Err(WordError::Syntax(_))));
        assert!(matches!(NaWord::parse("[x1 y]", &a), Err(WordError::Alphabet(_))));
    }

    #[test]
    fn relative_bracketing_examples() {
        let a = alpha(&[Even, Even]);
        let u = w(&a, "x2x1x1");
        let rb = relative_bracketing(&u, &[], &u, &[], &a).unwrap();
        assert_eq!(rb.tree, RelTree::Hole);
        assert_eq!(rb.scalar, Rational::one());

        let u = w(&a, "x2x1");
        let rb = relative_bracketing(&u, &w(&a, "x2"), &w(&a, "x1"), &[], &a).unwrap();
        assert_eq!(rb.tree.format(&a, "[v]"), "[x2 [v]]");
        assert_eq!(rb.scalar, Rational::one());

        let odd = alpha(&[Odd, Even]);
        let u = w(&odd, "x1x1");
        let rb = relative_bracketing(&u, &[], &w(&odd, "x1"), &w(&odd, "x1"), &odd).unwrap();
        assert_eq!(rb.tree.format(&odd, "[v]"), "[[v] x1]");
        assert_eq!(rb.scalar, Rational::new(1, 2));
        let e = rb.tree.expand(&Poly::letter(0), Odd, &odd);
        assert_eq!(e, Poly::term(u, Rational::from_int(2)));

        assert_eq!(
            relative_bracketing(&w(&a, "x2x1"), &[], &w(&a, "x1"), &[], &a),
            Err(WordError::OccurrenceMismatch)
        );
    }

    #[test]
    fn substitution_examples() {
        let a = alpha(&[Even, Even]);
        let p = expand_naword(&NaWord::parse("[x2 x1]", &a).unwrap(), &a).unwrap();
        assert_eq!(substitute_bracketing(&[], &p, &[], &a).unwrap(), p);
        let q = substitute_bracketing(&[], &p, &w(&a, "x1"), &a).unwrap();
        assert_eq!(q.leading_term().unwrap(), (w(&a, "x2x1x1"), Rational::one()));
    }

    #[test]
    fn every_occurrence_in_short_words_has_a_bracketing() {
        for parities in [vec![Even, Even, Even], vec![Odd, Even, Odd], vec![Odd, Odd]] {
            let a = alpha(&parities);
            for len in 1..=6 {
                for u in all_words(a.len(), len) {
                    if !is_super_lyndon_shirshov_word(&u, &a).unwrap() {
                        continue;
                    }
                    for i in 0..len {
                        for j in i + 1..=len {
                            let v = &u[i..j];
                            if !is_super_lyndon_shirshov_word(v, &a).unwrap() {
                                continue;
                            }
                            let rb = relative_bracketing(&u, &u[..i], v, &u[j..], &a).unwrap();
                            let hole = expand_naword(&canonical_bracketing(v, &a).unwrap(), &a).unwrap();
                            let e = rb.tree.expand(&hole, a.parity_of(v), &a);
                            assert_eq!(e.leading_term().unwrap(), (u.clone(), rb.leading_coeff.clone()));
                            // Nested odd squares (an odd square occurrence inside an odd square word) give 4.
                            assert!([1, 2, 4].map(Rational::from_int).contains(&rb.leading_coeff));
                        }
                    }
                }
            }
        }
    }
}
