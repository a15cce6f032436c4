//! Relation sets and reduction: S-reduced words, associative and Lie normal
//! forms, and enumeration of reduced bases.
//!
//! Reduction always rewrites the largest reducible support word, at its
//! leftmost occurrence of a leading word, with the first matching relation in
//! stored order. Every result is therefore reproducible bit for bit.

use std::collections::HashMap;

use thiserror::Error;

use crate::alphabet::{Alphabet, Letter};
use crate::superalgebra::{self, LieBasisCache, Poly, PolyError, Rational};
use crate::words::{self, NaWord, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("input is not a Lie element: leading word {0} is not super Lyndon-Shirshov")]
    NotLieElement(String),
    #[error("relation {0} is not a Lie element; Lie reduction needs Lie relations")]
    RelationNotLie(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A monic relation with its leading word split off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub poly: Poly,
    pub lead: Word,
    /// `poly` minus its leading term.
    pub tail: Poly,
    /// Whether `poly` lies in the free Lie superalgebra.
    pub lie: bool,
}

impl Relation {
    /// Normalizes `p` to be monic. Fails on zero.
    pub fn new(p: &Poly, lie: bool) -> Result<Relation, PolyError> {
        let poly = p.make_monic()?;
        let mut tail = poly.clone();
        let (lead, _) = tail.pop_leading().expect("nonzero");
        Ok(Relation {
            poly,
            lead,
            tail,
            lie,
        })
    }
}

/// Prefix tree over leading words. Each node records the smallest relation
/// index whose leading word ends there.
#[derive(Debug, Clone)]
struct Trie {
    width: usize,
    next: Vec<u32>,
    terminal: Vec<Option<u32>>,
}

const NONE: u32 = 0;

impl Trie {
    fn new(width: usize) -> Trie {
        Trie {
            width,
            next: vec![NONE; width.max(1)],
            terminal: vec![None],
        }
    }

    fn child(&self, node: usize, l: Letter) -> Option<usize> {
        match self.next[node * self.width + l as usize] {
            NONE => None,
            c => Some(c as usize),
        }
    }

    fn insert(&mut self, w: &[Letter], idx: u32) {
        let mut node = 0;
        for &l in w {
            node = match self.child(node, l) {
                Some(c) => c,
                None => {
                    let c = self.terminal.len();
                    self.terminal.push(None);
                    self.next.extend(std::iter::repeat_n(NONE, self.width));
                    self.next[node * self.width + l as usize] = c as u32;
                    c
                }
            };
        }
        let slot = &mut self.terminal[node];
        if slot.is_none_or(|old| idx < old) {
            *slot = Some(idx);
        }
    }

    /// First relation whose leading word starts at `start`.
    fn match_at(&self, w: &[Letter], start: usize) -> Option<u32> {
        let mut node = 0;
        let mut best: Option<u32> = None;
        for &l in &w[start..] {
            match self.child(node, l) {
                Some(c) => node = c,
                None => break,
            }
            if let Some(i) = self.terminal[node] {
                if best.is_none_or(|b| i < b) {
                    best = Some(i);
                }
            }
        }
        best
    }
}

/// An ordered set of monic relations with a leading-word index.
#[derive(Debug, Clone)]
pub struct RelationSet {
    alphabet: Alphabet,
    rels: Vec<Relation>,
    trie: Trie,
}

/// One rewriting step `coeff * a * s * b`, where `s` is a relation index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub coeff: Rational,
    pub a: Word,
    pub relation: usize,
    pub b: Word,
}

impl RelationSet {
    pub fn new(alphabet: &Alphabet) -> RelationSet {
        RelationSet {
            alphabet: alphabet.clone(),
            rels: Vec::new(),
            trie: Trie::new(alphabet.len()),
        }
    }

    /// Builds a set from polynomials, deciding the Lie flag by membership test.
    pub fn from_polys(alphabet: &Alphabet, polys: &[Poly]) -> Result<RelationSet, PolyError> {
        let mut s = RelationSet::new(alphabet);
        for p in polys {
            let lie = superalgebra::is_lie_element(p, alphabet, p.max_len());
            s.push(p, lie)?;
        }
        Ok(s)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Appends `p` made monic. Exact duplicates are dropped; returns whether it was added.
    pub fn push(&mut self, p: &Poly, lie: bool) -> Result<bool, PolyError> {
        for w in p.words() {
            self.alphabet.check_word(w)?;
        }
        let r = Relation::new(p, lie)?;
        if self.rels.iter().any(|s| s.poly == r.poly) {
            return Ok(false);
        }
        self.trie.insert(&r.lead, self.rels.len() as u32);
        self.rels.push(r);
        Ok(true)
    }

    pub fn len(&self) -> usize {
        self.rels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.rels
    }

    pub fn get(&self, i: usize) -> &Relation {
        &self.rels[i]
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.rels.iter().map(|r| r.poly.clone()).collect()
    }

    pub fn leading_words(&self) -> Vec<Word> {
        self.rels.iter().map(|r| r.lead.clone()).collect()
    }

    pub fn all_lie(&self) -> bool {
        self.rels.iter().all(|r| r.lie)
    }

    /// A copy keeping only the relations selected by `keep`, in order.
    pub fn filtered<F: Fn(usize, &Relation) -> bool>(&self, keep: F) -> RelationSet {
        let mut out = RelationSet::new(&self.alphabet);
        for (i, r) in self.rels.iter().enumerate() {
            if keep(i, r) {
                out.trie.insert(&r.lead, out.rels.len() as u32);
                out.rels.push(r.clone());
            }
        }
        out
    }

    /// The union of two sets over the same alphabet, `self` first.
    pub fn union(&self, other: &RelationSet) -> RelationSet {
        let mut out = self.clone();
        for r in &other.rels {
            if !out.rels.iter().any(|s| s.poly == r.poly) {
                out.trie.insert(&r.lead, out.rels.len() as u32);
                out.rels.push(r.clone());
            }
        }
        out
    }

    /// Leftmost occurrence of a leading word in `u`: `(start, relation index)`.
    pub fn find_reducible(&self, u: &[Letter]) -> Option<(usize, usize)> {
        (0..u.len()).find_map(|s| self.trie.match_at(u, s).map(|i| (s, i as usize)))
    }

    pub fn is_s_reduced(&self, u: &[Letter]) -> bool {
        self.find_reducible(u).is_none()
    }

    /// Associative normal form: the S-reduced representative of `p` modulo the ideal.
    pub fn normal_form_assoc(&self, p: &Poly) -> Poly {
        self.reduce(p, None)
    }

    /// Normal form together with the list of rewriting steps, so that
    /// `p - nf = sum coeff * a * s * b` over the returned steps.
    pub fn normal_form_assoc_traced(&self, p: &Poly) -> (Poly, Vec<ReductionStep>) {
        let mut trace = Vec::new();
        let nf = self.reduce(p, Some(&mut trace));
        (nf, trace)
    }

    fn reduce(&self, p: &Poly, mut trace: Option<&mut Vec<ReductionStep>>) -> Poly {
        let mut rest = p.clone();
        let mut reduced: Vec<(Word, Rational)> = Vec::new();
        while let Some((w, c)) = rest.pop_leading() {
            match self.find_reducible(&w) {
                Some((start, idx)) => {
                    let r = &self.rels[idx];
                    let (a, b) = (&w[..start], &w[start + r.lead.len()..]);
                    rest.add_scaled_sandwich(a, &r.tail, b, &-&c);
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(ReductionStep {
                            coeff: c,
                            a: Word::from_slice(a),
                            relation: idx,
                            b: Word::from_slice(b),
                        });
                    }
                }
                None => reduced.push((w, c)),
            }
        }
        reduced.into_iter().collect()
    }

    /// Lie normal form of a Lie element, as coordinates on S-reduced super-LS monomials.
    pub fn normal_form_lie(&self, p: &Poly) -> Result<LieNormalForm, RewriteError> {
        self.normal_form_lie_cached(p, &mut LieBasisCache::new())
    }

    pub fn normal_form_lie_cached(
        &self,
        p: &Poly,
        cache: &mut LieBasisCache,
    ) -> Result<LieNormalForm, RewriteError> {
        let mut rest = p.clone();
        let mut coords = Vec::new();
        let mut poly = Poly::zero();
        while let Some((u, c)) = rest.leading_term().ok() {
            if let Some((start, idx)) = self.find_reducible(&u) {
                let r = &self.rels[idx];
                if !r.lie {
                    return Err(RewriteError::RelationNotLie(idx));
                }
                let (a, b) = (&u[..start], &u[start + r.lead.len()..]);
                let q = words::substitute_bracketing(a, &r.poly, b, &self.alphabet)
                    .map_err(|e| match e {
                        WordError::NotSuperLs => {
                            RewriteError::NotLieElement(self.alphabet.format_word(&u))
                        }
                        other => other.into(),
                    })?;
                rest.add_scaled(&q, &-&c);
            } else {
                if !words::is_super_lyndon_shirshov_word(&u, &self.alphabet).unwrap_or(false) {
                    return Err(RewriteError::NotLieElement(self.alphabet.format_word(&u)));
                }
                let (monic, lc) = cache.monic_expansion(&u, &self.alphabet)?;
                rest.add_scaled(monic, &-&c);
                poly.add_scaled(monic, &c);
                coords.push((u, &c / lc));
            }
        }
        Ok(LieNormalForm { coords, poly })
    }

    /// S-reduced associative words of length at most `max_len`, ascending.
    pub fn enumerate_reduced_words(&self, max_len: usize) -> Vec<Word> {
        let ac = Automaton::new(self);
        let mut level = vec![(Word::empty(), 0usize)];
        let mut out = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, state) in &level {
                for l in self.alphabet.indices() {
                    let s = ac.step(*state, l);
                    if !ac.accepting[s] {
                        let mut x = w.clone();
                        x.push(l);
                        next.push((x, s));
                    }
                }
            }
            out.extend(next.iter().map(|(w, _)| w.clone()));
            level = next;
        }
        out
    }

    /// Number of S-reduced words of each length `0..=max_len`, without materializing them.
    pub fn count_reduced_words(&self, max_len: usize) -> Vec<u64> {
        let ac = Automaton::new(self);
        let mut counts: HashMap<usize, u64> = HashMap::from([(0, 1)]);
        let mut out = vec![1u64];
        for _ in 0..max_len {
            let mut next: HashMap<usize, u64> = HashMap::new();
            for (&state, &n) in &counts {
                for l in self.alphabet.indices() {
                    let s = ac.step(state, l);
                    if !ac.accepting[s] {
                        *next.entry(s).or_default() += n;
                    }
                }
            }
            out.push(next.values().sum());
            counts = next;
        }
        out
    }

    /// S-reduced super-LS words of length at most `max_len` as canonical
    /// bracketings, ascending by their words.
    pub fn enumerate_reduced_super_ls_monomials(&self, max_len: usize) -> Vec<NaWord> {
        self.reduced_super_ls_words(max_len)
            .into_iter()
            .map(|u| words::canonical_bracketing(&u, &self.alphabet).expect("super-LS by construction"))
            .collect()
    }

    /// S-reduced super-LS words of length at most `max_len`, ascending.
    ///
    /// Walks prefixes of LS words (prenecklaces on the reversed alphabet)
    /// depth first and prunes every prefix that is already reducible.
    pub fn reduced_super_ls_words(&self, max_len: usize) -> Vec<Word> {
        let q = self.alphabet.len();
        let mut out = Vec::new();
        if q == 0 || max_len == 0 {
            return out;
        }
        let ac = Automaton::new(self);
        let top = (q - 1) as Letter;
        // Letters of `rev` are reversed (c -> top - c) so the classical
        // prenecklace recursion applies.
        let mut rev: Vec<Letter> = Vec::with_capacity(max_len);
        let mut states: Vec<usize> = vec![0];
        fn walk(
            ac: &Automaton,
            top: Letter,
            max_len: usize,
            period: usize,
            rev: &mut Vec<Letter>,
            states: &mut Vec<usize>,
            out: &mut Vec<Word>,
        ) {
            let t = rev.len();
            if t > 0 && period == t {
                out.push(rev.iter().map(|&c| top - c).collect());
            }
            if t == max_len {
                return;
            }
            let low = if t == 0 { 0 } else { rev[t - period] };
            for c in low..=top {
                let s = ac.step(states[t], top - c);
                if ac.accepting[s] {
                    continue;
                }
                let p = if t > 0 && c == rev[t - period] { period } else { t + 1 };
                rev.push(c);
                states.push(s);
                walk(ac, top, max_len, p, rev, states, out);
                rev.pop();
                states.pop();
            }
        }
        walk(&ac, top, max_len, 0, &mut rev, &mut states, &mut out);
        let mut squares = Vec::new();
        for v in &out {
            if 2 * v.len() <= max_len && self.alphabet.parity_of(v).is_odd() {
                let vv = Word::concat3(v, v, &[]);
                if self.is_s_reduced(&vv) {
                    squares.push(vv);
                }
            }
        }
        out.extend(squares);
        out.sort();
        out
    }
}

/// Result of Lie reduction: coordinates on reduced monomials `[u]` and their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieNormalForm {
    /// Coefficient of each canonical monomial `[u]`, keyed by `u`, descending.
    pub coords: Vec<(Word, Rational)>,
    /// The same element as a polynomial.
    pub poly: Poly,
}

impl LieNormalForm {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Aho-Corasick automaton over leading words; a state accepts when some
/// leading word is a suffix of the input read so far.
struct Automaton {
    width: usize,
    delta: Vec<usize>,
    accepting: Vec<bool>,
}

impl Automaton {
    fn new(s: &RelationSet) -> Automaton {
        let trie = &s.trie;
        let width = trie.width.max(1);
        let n = trie.terminal.len();
        let mut delta = vec![0usize; n * width];
        let mut fail = vec![0usize; n];
        let mut accepting: Vec<bool> = trie.terminal.iter().map(Option::is_some).collect();
        let mut queue = std::collections::VecDeque::new();
        for l in 0..trie.width {
            if let Some(c) = trie.child(0, l as Letter) {
                delta[l] = c;
                queue.push_back(c);
            }
        }
        while let Some(node) = queue.pop_front() {
            accepting[node] = accepting[node] || accepting[fail[node]];
            for l in 0..trie.width {
                match trie.child(node, l as Letter) {
                    Some(c) => {
                        fail[c] = delta[fail[node] * width + l];
                        delta[node * width + l] = c;
                        queue.push_back(c);
                    }
                    None => delta[node * width + l] = delta[fail[node] * width + l],
                }
            }
        }
        Automaton {
            width,
            delta,
            accepting,
        }
    }

    fn step(&self, state: usize, l: Letter) -> usize {
        self.delta[state * self.width + l as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Parity::{Even, Odd};
    use crate::parse::parse_poly;

    fn set(a: &Alphabet, rels: &[&str]) -> RelationSet {
        let polys: Vec<Poly> = rels.iter().map(|r| parse_poly(r, a).unwrap()).collect();
        RelationSet::from_polys(a, &polys).unwrap()
    }

    fn e(n: usize) -> Alphabet {
        Alphabet::numbered("e", &vec![Even; n])
    }

    #[test]
    fn s_reduced_examples() {
        let a = e(2);
        let s = set(&a, &["e2e2e1"]);
        assert!(s.is_s_reduced(&a.parse_word("e1").unwrap()));
        assert!(!s.is_s_reduced(&a.parse_word("e2e2e1e1").unwrap()));
        assert!(s.is_s_reduced(&a.parse_word("e2e1e2e1").unwrap()));
    }

    #[test]
    fn assoc_normal_form_examples() {
        let a = Alphabet::numbered("x", &[Even, Even]);
        let s = set(&a, &["x1x2 - x2x1"]);
        // Under the length-lexicographic order x2x1 is the leading word, so x2x1 -> x1x2.
        assert_eq!(s.get(0).lead, a.parse_word("x2x1").unwrap());
        let p = parse_poly("x1x2", &a).unwrap();
        assert_eq!(s.normal_form_assoc(&p), p);
        let q = parse_poly("x2x1", &a).unwrap();
        assert_eq!(s.normal_form_assoc(&q), p);
        assert!(s.normal_form_assoc(&s.get(0).poly).is_zero());
    }

    #[test]
    fn trace_reconstructs_the_difference() {
        let a = e(3);
        let s = set(&a, &["[e2 [e2 e1]]", "[e1 [e1 e2]]", "e3e1 - e1e3"]);
        let p = parse_poly("e3e2e2e1e1 + 2 e2e3e1e1e2 - e1e1e1", &a).unwrap();
        let (nf, trace) = s.normal_form_assoc_traced(&p);
        let mut diff = p.sub(&nf);
        for st in &trace {
            let bound = Word::concat3(&st.a, &s.get(st.relation).lead, &st.b);
            assert!(bound <= *p.leading_word().unwrap());
            diff.add_scaled_sandwich(&st.a, &s.get(st.relation).poly, &st.b, &-&st.coeff);
        }
        assert!(diff.is_zero());
        assert!(nf.words().all(|w| s.is_s_reduced(w)));
        assert_eq!(s.normal_form_assoc(&nf), nf);
    }

    #[test]
    fn lie_normal_form_examples() {
        let a = e(2);
        let s = set(&a, &["[e2 [e2 e1]]", "[[e2 e1] e1]"]);
        assert!(s.all_lie());
        let p = parse_poly("[e2 [e2 e1]]", &a).unwrap();
        assert!(s.normal_form_lie(&p).unwrap().is_zero());
        let q = parse_poly("[e2 e1]", &a).unwrap();
        let nf = s.normal_form_lie(&q).unwrap();
        assert_eq!(nf.poly, q);
        assert_eq!(nf.coords, vec![(a.parse_word("e2e1").unwrap(), Rational::one())]);
        let r = parse_poly("e1e2", &a).unwrap();
        assert!(matches!(s.normal_form_lie(&r), Err(RewriteError::NotLieElement(_))));
    }

    #[test]
    fn reduced_word_enumeration() {
        let one = e(1);
        let empty = RelationSet::new(&one);
        assert_eq!(empty.enumerate_reduced_words(2).len(), 3);
        let odd = Alphabet::numbered("x", &[Odd]);
        let s = set(&odd, &["x1x1"]);
        assert_eq!(
            s.enumerate_reduced_words(3),
            vec![Word::empty(), odd.parse_word("x1").unwrap()]
        );
        assert_eq!(s.count_reduced_words(3), vec![1, 1, 0, 0]);
        let sq = s.enumerate_reduced_super_ls_monomials(2);
        assert_eq!(sq, vec![NaWord::Leaf(0)]);
        assert_eq!(empty.enumerate_reduced_super_ls_monomials(5), vec![NaWord::Leaf(0)]);
    }

    #[test]
    fn enumerations_match_brute_force() {
        let a = Alphabet::numbered("x", &[Odd, Even, Odd]);
        let s = set(&a, &["x2x1x1", "x3x3x2", "x2x2x1x2x1"]);
        let mut words = Vec::new();
        let mut super_ls = Vec::new();
        for len in 0..=6 {
            for u in words::all_words(3, len) {
                let reduced = (0..u.len())
                    .all(|i| s.leading_words().iter().all(|l| !u[i..].starts_with(l)));
                if reduced {
                    if len > 0 && words::is_super_lyndon_shirshov_word(&u, &a).unwrap() {
                        super_ls.push(u.clone());
                    }
                    words.push(u);
                }
            }
        }
        assert_eq!(s.enumerate_reduced_words(6), words);
        assert_eq!(s.reduced_super_ls_words(6), super_ls);
        let counts: Vec<u64> = (0..=6)
            .map(|n| words.iter().filter(|w| w.len() == n).count() as u64)
            .collect();
        assert_eq!(s.count_reduced_words(6), counts);
    }

    #[test]
    fn first_relation_wins_at_a_position() {
        let a = e(2);
        let s = set(&a, &["e2e1 - e1", "e2e1 - e2", "e2"]);
        let p = parse_poly("e2e1", &a).unwrap();
        let (_, trace) = s.normal_form_assoc_traced(&p);
        assert_eq!(trace[0].relation, 0);
        assert_eq!(s.find_reducible(&a.parse_word("e1e2e1").unwrap()), Some((1, 0)));
    }
}
