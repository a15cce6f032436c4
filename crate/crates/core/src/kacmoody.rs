//! Kac-Moody superalgebras given by a generalized Cartan matrix and a set of
//! odd indices: validation, defining relations, the superderivations
//! `∂̃_j`, and assembly of a Gröbner-Shirshov basis.
//!
//! Indices are 1-based throughout, matching the usual matrix notation.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::alphabet::{Alphabet, GradedLetter, Letter, Parity};
use crate::composition::{self, Completion, CompositionError, Mode};
use crate::rewrite::RelationSet;
use crate::superalgebra::{expand_naword, Poly, Rational};
use crate::words::{NaWord, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KacMoodyError {
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),
    #[error("n_ij is only defined for i != j")]
    DiagonalIndex,
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("polynomial is not supported on the e-letters")]
    NotPositive,
    #[error("monomial {0} mixes letter families")]
    MixedMonomial(String),
    #[error("Cartan file line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Composition(#[from] CompositionError),
}

/// A square integer matrix with a set of odd indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    a: Vec<Vec<i64>>,
    tau: BTreeSet<usize>,
}

/// One failed condition on Cartan data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CartanViolation {
    /// `a_ii` must be 2 or 0, and 0 only for odd `i`.
    Diagonal { i: usize, value: i64 },
    /// `a_ii != 0` requires `a_ij <= 0` off the diagonal.
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    /// `a_ij = 0` exactly when `a_ji = 0`.
    ZeroPattern { i: usize, j: usize },
    /// Odd `i` with `a_ii = 2` requires even `a_ij`.
    OddRow { i: usize, j: usize, value: i64 },
    /// Matrix is not square or `tau` names an index outside `1..=r`.
    Shape(String),
}

impl fmt::Display for CartanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanViolation::Diagonal { i, value } => {
                write!(f, "(i) a_{i}{i} = {value}: diagonal must be 2, or 0 with {i} odd")
            }
            CartanViolation::PositiveOffDiagonal { i, j, value } => {
                write!(f, "(ii) a_{i}{j} = {value} > 0 although a_{i}{i} != 0")
            }
            CartanViolation::ZeroPattern { i, j } => {
                write!(f, "(iii) exactly one of a_{i}{j}, a_{j}{i} is zero")
            }
            CartanViolation::OddRow { i, j, value } => {
                write!(f, "(iv) a_{i}{j} = {value} is odd although {i} is odd with a_{i}{i} = 2")
            }
            CartanViolation::Shape(msg) => write!(f, "{msg}"),
        }
    }
}

impl CartanData {
    /// Builds data from rows and 1-based odd indices without validating.
    pub fn new(a: Vec<Vec<i64>>, tau: impl IntoIterator<Item = usize>) -> CartanData {
        CartanData {
            a,
            tau: tau.into_iter().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Entry `a_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn tau(&self) -> &BTreeSet<usize> {
        &self.tau
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.tau.contains(&i)
    }

    pub fn parity(&self, i: usize) -> Parity {
        if self.is_odd(i) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Every violated condition; empty when the data is a generalized Cartan matrix.
    pub fn validate(&self) -> Vec<CartanViolation> {
        let r = self.rank();
        let mut out = Vec::new();
        if self.a.iter().any(|row| row.len() != r) {
            out.push(CartanViolation::Shape(format!("matrix is not {r}x{r}")));
            return out;
        }
        if let Some(&bad) = self.tau.iter().find(|&&i| i == 0 || i > r) {
            out.push(CartanViolation::Shape(format!("odd index {bad} outside 1..={r}")));
        }
        for i in 1..=r {
            let aii = self.entry(i, i);
            if !(aii == 2 || (aii == 0 && self.is_odd(i))) {
                out.push(CartanViolation::Diagonal { i, value: aii });
            }
            for j in 1..=r {
                if i == j {
                    continue;
                }
                let aij = self.entry(i, j);
                if aii != 0 && aij > 0 {
                    out.push(CartanViolation::PositiveOffDiagonal { i, j, value: aij });
                }
                if i < j && (aij == 0) != (self.entry(j, i) == 0) {
                    out.push(CartanViolation::ZeroPattern { i, j });
                }
                if aii == 2 && self.is_odd(i) && aij % 2 != 0 {
                    out.push(CartanViolation::OddRow { i, j, value: aij });
                }
            }
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<(), KacMoodyError> {
        if i == 0 || i > self.rank() {
            return Err(KacMoodyError::IndexOutOfRange(i));
        }
        Ok(())
    }

    /// `n_ij = a_ij`, except `-1` when `a_ii = 0` and `a_ij != 0`.
    pub fn n_coefficient(&self, i: usize, j: usize) -> Result<i64, KacMoodyError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(KacMoodyError::DiagonalIndex);
        }
        let aij = self.entry(i, j);
        Ok(if self.entry(i, i) == 0 && aij != 0 { -1 } else { aij })
    }

    /// Interior indices `k` that carry the extra quartic relation.
    pub fn eta_set(&self) -> BTreeSet<usize> {
        let r = self.rank();
        (2..r)
            .filter(|&k| {
                self.is_odd(k)
                    && !self.is_odd(k - 1)
                    && !self.is_odd(k + 1)
                    && self.entry(k, k) == 0
                    && self.entry(k + 1, k - 1) == 0
                    && self.entry(k, k + 1) + self.entry(k, k - 1) == 0
            })
            .collect()
    }

    /// Reads `rank r`, `tau i1 i2 ...`, then `r` rows of `r` integers. `#` starts a comment.
    pub fn parse(text: &str) -> Result<CartanData, KacMoodyError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let syntax = |line: usize, msg: &str| KacMoodyError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let (ln, first) = lines.next().ok_or_else(|| syntax(1, "missing `rank r` line"))?;
        let r: usize = first
            .strip_prefix("rank")
            .and_then(|s| s.trim().parse().ok())
            .filter(|&r| r > 0)
            .ok_or_else(|| syntax(ln, "expected `rank <positive integer>`"))?;
        let (ln, second) = lines.next().ok_or_else(|| syntax(ln + 1, "missing `tau` line"))?;
        let tau_text = second
            .strip_prefix("tau")
            .ok_or_else(|| syntax(ln, "expected `tau i1 i2 ...`"))?;
        let tau = tau_text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| syntax(ln, "bad index in tau")))
            .collect::<Result<BTreeSet<usize>, _>>()?;
        let mut a = Vec::with_capacity(r);
        for _ in 0..r {
            let (ln, row) = lines.next().ok_or_else(|| syntax(ln, "missing matrix row"))?;
            let row = row
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| syntax(ln, "bad matrix entry")))
                .collect::<Result<Vec<i64>, _>>()?;
            if row.len() != r {
                return Err(syntax(ln, "row length differs from rank"));
            }
            a.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(syntax(ln, "unexpected trailing line"));
        }
        Ok(CartanData::new(a, tau))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\ntau", self.rank());
        for i in &self.tau {
            out.push_str(&format!(" {i}"));
        }
        out.push('\n');
        for row in &self.a {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Letter positions in the alphabet `f_1 < ... < f_r < h_1 < ... < h_r < e_1 < ... < e_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KmLetters {
    pub r: usize,
}

/// Which of the three generator families a letter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    F,
    H,
    E,
}

impl KmLetters {
    pub fn f(&self, i: usize) -> Letter {
        (i - 1) as Letter
    }

    pub fn h(&self, i: usize) -> Letter {
        (self.r + i - 1) as Letter
    }

    pub fn e(&self, i: usize) -> Letter {
        (2 * self.r + i - 1) as Letter
    }

    /// Family and 1-based index of a letter.
    pub fn classify(&self, l: Letter) -> (Family, usize) {
        let l = l as usize;
        match l / self.r {
            0 => (Family::F, l + 1),
            1 => (Family::H, l - self.r + 1),
            _ => (Family::E, l - 2 * self.r + 1),
        }
    }

    /// Exchanges `e_i` and `f_i`, fixing `h_i`.
    pub fn swap_ef(&self, l: Letter) -> Letter {
        match self.classify(l) {
            (Family::E, i) => self.f(i),
            (Family::F, i) => self.e(i),
            (Family::H, _) => l,
        }
    }
}

/// Generators and defining relations of a Kac-Moody superalgebra.
#[derive(Debug, Clone)]
pub struct KmPresentation {
    pub cartan: CartanData,
    pub alphabet: Alphabet,
    pub letters: KmLetters,
    /// Relations among `h` and between the three families.
    pub w: Vec<Poly>,
    /// Serre relations in the `e` letters.
    pub s_plus: Vec<Poly>,
    /// The mirror of `s_plus` in the `f` letters.
    pub s_minus: Vec<Poly>,
}

/// The alphabet `f_1 < ... < f_r < h_1 < ... < h_r < e_1 < ... < e_r`.
pub fn km_alphabet(c: &CartanData) -> Alphabet {
    let r = c.rank();
    let mut letters = Vec::with_capacity(3 * r);
    for (prefix, base) in [("f", 0), ("h", r), ("e", 2 * r)] {
        for i in 1..=r {
            let parity = if prefix == "h" { Parity::Even } else { c.parity(i) };
            letters.push(GradedLetter::new(format!("{prefix}{i}"), parity, (base + i) as i64));
        }
    }
    Alphabet::new(letters).expect("distinct names and ranks")
}

fn leaf(l: Letter) -> NaWord {
    NaWord::Leaf(l)
}

/// Builds `W`, `S₊` and `S₋` for valid Cartan data.
pub fn build_relations(c: &CartanData) -> Result<KmPresentation, KacMoodyError> {
    let violations = c.validate();
    if !violations.is_empty() {
        let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(KacMoodyError::InvalidCartan(msgs.join("; ")));
    }
    let r = c.rank();
    let alphabet = km_alphabet(c);
    let x = KmLetters { r };
    let expand = |t: &NaWord| expand_naword(t, &alphabet).expect("letters in range");

    let mut w = Vec::new();
    for i in 1..=r {
        for j in 1..i {
            w.push(expand(&NaWord::node(leaf(x.h(i)), leaf(x.h(j)))));
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            let mut p = expand(&NaWord::node(leaf(x.e(i)), leaf(x.f(j))));
            if i == j {
                p.add_term(Word::from_slice(&[x.h(i)]), Rational::from_int(-1));
            }
            w.push(p);
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            let aij = Rational::from_int(c.entry(i, j));
            let mut p = expand(&NaWord::node(leaf(x.e(j)), leaf(x.h(i))));
            p.add_term(Word::from_slice(&[x.e(j)]), aij.clone());
            w.push(p);
            let mut q = expand(&NaWord::node(leaf(x.h(i)), leaf(x.f(j))));
            q.add_term(Word::from_slice(&[x.f(j)]), aij);
            w.push(q);
        }
    }

    let mut s_plus: Vec<Poly> = Vec::new();
    let push_unique = |p: Poly, out: &mut Vec<Poly>| {
        let p = p.make_monic().expect("Serre relations are nonzero");
        if !out.contains(&p) {
            out.push(p);
        }
    };
    for i in 1..=r {
        for j in 1..i {
            let nij = c.n_coefficient(i, j)?;
            let nji = c.n_coefficient(j, i)?;
            // (ad e_i)^(1-n_ij) e_j = [e_i [e_i ... [e_i e_j]]]
            let mut parts: Vec<NaWord> = vec![leaf(x.e(i)); (1 - nij) as usize];
            parts.push(leaf(x.e(j)));
            push_unique(expand(&NaWord::right_normed(parts)), &mut s_plus);
            // e_i (ad e_j)^(1-n_ji) = [[[e_i e_j] e_j] ... e_j]
            let mut parts = vec![leaf(x.e(i))];
            parts.extend(vec![leaf(x.e(j)); (1 - nji) as usize]);
            push_unique(expand(&NaWord::left_normed(parts)), &mut s_plus);
        }
    }
    for k in c.eta_set() {
        let t = NaWord::node(
            NaWord::node(leaf(x.e(k + 1)), leaf(x.e(k))),
            NaWord::node(leaf(x.e(k)), leaf(x.e(k - 1))),
        );
        push_unique(expand(&t), &mut s_plus);
    }
    let s_minus = s_plus.iter().map(|p| mirror(p, &x)).collect();
    Ok(KmPresentation {
        cartan: c.clone(),
        alphabet,
        letters: x,
        w,
        s_plus,
        s_minus,
    })
}

/// The image of a polynomial under `e_i <-> f_i`, made monic.
pub fn mirror(p: &Poly, x: &KmLetters) -> Poly {
    p.map_letters(|l| x.swap_ef(l))
        .make_monic()
        .expect("nonzero")
}

impl KmPresentation {
    pub fn w_set(&self) -> RelationSet {
        RelationSet::from_polys(&self.alphabet, &self.w).expect("valid relations")
    }

    pub fn all_relations(&self) -> Vec<Poly> {
        let mut out = self.s_plus.clone();
        out.extend(self.w.iter().cloned());
        out.extend(self.s_minus.iter().cloned());
        out
    }

    /// `(p)∂̃_j` for `p` supported on `e`-words.
    pub fn diff_substitution(&self, p: &Poly, j: usize) -> Result<Poly, KacMoodyError> {
        diff_substitution(p, j, &self.cartan, &self.letters, &self.alphabet)
    }

    /// Checks `p f_j - (-1)^(|p||j|) f_j p - (p)∂̃_j ≡ 0` modulo `W`.
    pub fn commutation_residue(&self, p: &Poly, j: usize, w: &RelationSet) -> Result<Poly, KacMoodyError> {
        let fj = Poly::letter(self.letters.f(j));
        let parity = p.parity(&self.alphabet).map_err(|_| KacMoodyError::NotPositive)?;
        let flips = parity.is_some_and(|d| d.sign_flips_with(self.cartan.parity(j)));
        let mut lhs = p.multiply(&fj);
        lhs.add_scaled(&fj.multiply(p), &Rational::from_int(if flips { 1 } else { -1 }));
        lhs.add_scaled(&self.diff_substitution(p, j)?, &Rational::from_int(-1));
        Ok(w.normal_form_assoc(&lhs))
    }
}

/// The right superderivation with `(e_i)∂̃_j = δ_ij h_j`, extended by
/// `(uv)∂̃_j = u(v)∂̃_j + (-1)^(|j||v|) (u)∂̃_j v`.
pub fn diff_substitution(
    p: &Poly,
    j: usize,
    c: &CartanData,
    x: &KmLetters,
    alphabet: &Alphabet,
) -> Result<Poly, KacMoodyError> {
    c.check_index(j)?;
    let odd_j = c.is_odd(j);
    let mut out = Poly::zero();
    for (w, coeff) in p.terms() {
        if w.iter().any(|&l| x.classify(l).0 != Family::E) {
            return Err(KacMoodyError::NotPositive);
        }
        // Moving ∂̃_j leftwards past each letter costs (-1)^(|j||letter|).
        let mut sign_odd = false;
        for t in (0..w.len()).rev() {
            if w[t] == x.e(j) {
                let mut v = Word::from_slice(w);
                v_set(&mut v, t, x.h(j));
                let c = if sign_odd { -coeff } else { coeff.clone() };
                out.add_term(v, c);
            }
            if odd_j && alphabet.parity(w[t]).is_odd() {
                sign_odd = !sign_odd;
            }
        }
    }
    Ok(out)
}

fn v_set(v: &mut Word, t: usize, l: Letter) {
    *v = v.iter().enumerate().map(|(i, &c)| if i == t { l } else { c }).collect();
}

/// A Gröbner-Shirshov basis `S₊ᶜ ∪ W ∪ S₋ᶜ` with completion and closure status.
#[derive(Debug, Clone)]
pub struct AssembledBasis {
    pub set: RelationSet,
    /// Completed positive part alone.
    pub plus: RelationSet,
    /// Both completions reached a fixpoint below the degree cap.
    pub fixpoint: bool,
    /// The union passed the closure check.
    pub closed: bool,
}

/// Completes `S₊` and `S₋` separately, joins them with `W` and re-checks closure.
pub fn assemble_gsb(c: &CartanData, max_degree: usize, mode: Mode) -> Result<AssembledBasis, KacMoodyError> {
    let pres = build_relations(c)?;
    let plus = RelationSet::from_polys(&pres.alphabet, &pres.s_plus).expect("valid relations");
    let done_plus = composition::complete(&plus, mode, max_degree)?;
    let minus_polys: Vec<Poly> = done_plus
        .set
        .polys()
        .iter()
        .map(|p| mirror(p, &pres.letters))
        .collect();
    let minus = RelationSet::from_polys(&pres.alphabet, &pres.s_minus).expect("valid relations");
    let done_minus = composition::complete(&minus, mode, max_degree)?;
    // The mirror of the completed positive part must generate the same leading words.
    debug_assert_eq!(
        composition::minimal_leading_words(&done_minus.set),
        composition::minimal_leading_words(
            &RelationSet::from_polys(&pres.alphabet, &minus_polys).expect("valid")
        )
    );
    let set = done_plus.set.union(&pres.w_set()).union(&done_minus.set);
    let closed = composition::is_closed(&set, mode)?.is_closed();
    Ok(AssembledBasis {
        set,
        plus: done_plus.set,
        fixpoint: done_plus.fixpoint && done_minus.fixpoint,
        closed,
    })
}

/// Completes `S₊` and also closes it under every `∂̃_j`: each residue
/// `(p)∂̃_j` left over modulo the current set and `W` is adjoined, and the
/// set is completed again, until nothing new appears.
///
/// `S₊ᶜ` alone misses relations that only follow with the help of `W`, such
/// as `[e_i e_i]` for odd `i` with `a_ii = 0`.
pub fn complete_with_substitutions(c: &CartanData, max_degree: usize) -> Result<Completion, KacMoodyError> {
    let pres = build_relations(c)?;
    let plus = RelationSet::from_polys(&pres.alphabet, &pres.s_plus).expect("valid relations");
    let w = pres.w_set();
    let mut done = composition::complete(&plus, Mode::Associative, max_degree)?;
    loop {
        let with_w = done.set.union(&w);
        let mut grown = done.set.clone();
        let mut added = Vec::new();
        for p in done.set.polys() {
            for j in 1..=c.rank() {
                let r = with_w.normal_form_assoc(&pres.diff_substitution(&p, j)?);
                if !r.is_zero() && grown.push(&r, false).expect("letters in range") {
                    added.push(r.make_monic().expect("nonzero"));
                }
            }
        }
        if added.is_empty() {
            return Ok(done);
        }
        let mut next = composition::complete(&grown, Mode::Associative, max_degree)?;
        added.append(&mut next.added);
        done.added.append(&mut added);
        done.set = next.set;
        done.fixpoint = next.fixpoint;
    }
}

/// Splits a reduced basis into positive, Cartan and negative parts.
pub fn triangular_split(
    basis: &[NaWord],
    x: &KmLetters,
    alphabet: &Alphabet,
) -> Result<(Vec<NaWord>, Vec<NaWord>, Vec<NaWord>), KacMoodyError> {
    let (mut plus, mut cartan, mut minus) = (Vec::new(), Vec::new(), Vec::new());
    for t in basis {
        let leaves = t.leaves();
        let fams: BTreeSet<u8> = leaves
            .iter()
            .map(|&l| match x.classify(l).0 {
                Family::F => 0,
                Family::H => 1,
                Family::E => 2,
            })
            .collect();
        match (fams.len(), fams.first()) {
            (1, Some(2)) => plus.push(t.clone()),
            (1, Some(0)) => minus.push(t.clone()),
            (1, Some(1)) if leaves.len() == 1 => cartan.push(t.clone()),
            _ => return Err(KacMoodyError::MixedMonomial(t.format(alphabet))),
        }
    }
    Ok((plus, cartan, minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn sl2() -> CartanData {
        CartanData::new(vec![vec![2]], [])
    }

    fn sl21() -> CartanData {
        CartanData::new(vec![vec![2, -1], vec![-1, 0]], [2])
    }

    #[test]
    fn validation_examples() {
        assert!(sl21().validate().is_empty());
        let bad = CartanData::new(vec![vec![0]], []);
        assert!(matches!(bad.validate()[0], CartanViolation::Diagonal { i: 1, .. }));
        let bad = CartanData::new(vec![vec![2, 0], vec![-1, 2]], []);
        assert!(bad
            .validate()
            .iter()
            .any(|v| matches!(v, CartanViolation::ZeroPattern { i: 1, j: 2 })));
        let bad = CartanData::new(vec![vec![2, -1], vec![-1, 2]], [1]);
        assert!(bad.validate().iter().any(|v| matches!(v, CartanViolation::OddRow { .. })));
        let bad = CartanData::new(vec![vec![2, 1], vec![-1, 2]], []);
        assert!(bad
            .validate()
            .iter()
            .any(|v| matches!(v, CartanViolation::PositiveOffDiagonal { .. })));
    }

    #[test]
    fn n_coefficient_examples() {
        let c = CartanData::new(vec![vec![2, -1, 0], vec![1, 0, -1], vec![0, -1, 2]], [2]);
        assert_eq!(c.n_coefficient(1, 2), Ok(-1));
        assert_eq!(c.n_coefficient(2, 1), Ok(-1));
        assert_eq!(c.n_coefficient(1, 3), Ok(0));
        assert_eq!(c.n_coefficient(2, 2), Err(KacMoodyError::DiagonalIndex));
    }

    #[test]
    fn eta_examples() {
        // sl(2,2): r = 3, the middle index is odd with zero diagonal.
        let c = CartanData::new(vec![vec![2, -1, 0], vec![-1, 0, 1], vec![0, -1, 2]], [2]);
        assert_eq!(c.eta_set(), BTreeSet::from([2]));
        let b02 = CartanData::new(vec![vec![2, -1], vec![-2, 2]], [2]);
        assert!(b02.eta_set().is_empty());
        assert!(sl2().eta_set().is_empty());
    }

    #[test]
    fn sl2_relations() {
        let p = build_relations(&sl2()).unwrap();
        assert_eq!(p.w.len(), 3);
        assert!(p.s_plus.is_empty() && p.s_minus.is_empty());
        let b = assemble_gsb(&sl2(), 4, Mode::Associative).unwrap();
        assert!(b.closed && b.fixpoint);
    }

    #[test]
    fn sl21_serre_relation() {
        let c = sl21();
        let p = build_relations(&c).unwrap();
        let a = &p.alphabet;
        let expected = parse_poly("[e2 [e2 e1]]", a).unwrap().make_monic().unwrap();
        assert!(p.s_plus.contains(&expected));
        let sl22 = CartanData::new(vec![vec![2, -1, 0], vec![-1, 0, 1], vec![0, -1, 2]], [2]);
        let p = build_relations(&sl22).unwrap();
        let quartic = parse_poly("[[e3 e2] [e2 e1]]", &p.alphabet)
            .unwrap()
            .make_monic()
            .unwrap();
        assert!(p.s_plus.contains(&quartic));
    }

    #[test]
    fn diff_substitution_examples() {
        let c = CartanData::new(vec![vec![2, -1], vec![-1, 2]], []);
        let p = build_relations(&c).unwrap();
        let a = &p.alphabet;
        let d = |s: &str, j| p.diff_substitution(&parse_poly(s, a).unwrap(), j).unwrap();
        assert_eq!(d("e1", 1), parse_poly("h1", a).unwrap());
        assert!(d("e2", 1).is_zero());
        assert_eq!(d("e2e1", 1), parse_poly("e2h1", a).unwrap());
        assert!(p.diff_substitution(&parse_poly("h1", a).unwrap(), 1).is_err());
        // Odd letters: passing an odd letter flips the sign.
        let p = build_relations(&sl21()).unwrap();
        let a = &p.alphabet;
        assert_eq!(
            p.diff_substitution(&parse_poly("e2e2", a).unwrap(), 2).unwrap(),
            parse_poly("e2h2 - h2e2", a).unwrap()
        );
    }

    #[test]
    fn commutation_identity_on_words() {
        let p = build_relations(&sl21()).unwrap();
        let w = p.w_set();
        let a = &p.alphabet;
        for s in ["e1", "e2", "e2e1", "e1e2e2", "e2e1e2e1", "e1e1e2"] {
            for j in 1..=2 {
                let r = p.commutation_residue(&parse_poly(s, a).unwrap(), j, &w).unwrap();
                assert!(r.is_zero(), "{s} j={j}: {}", r.format(a));
            }
        }
    }

    #[test]
    fn cartan_file_round_trip() {
        let c = sl21();
        assert_eq!(CartanData::parse(&c.to_text()).unwrap(), c);
        assert!(CartanData::parse("rank 2\ntau\n2 -1\n").is_err());
        assert!(CartanData::parse("rank x\n").is_err());
    }

    #[test]
    fn triangular_split_sl2() {
        let b = assemble_gsb(&sl2(), 4, Mode::Associative).unwrap();
        let basis = b.set.enumerate_reduced_super_ls_monomials(4);
        let x = KmLetters { r: 1 };
        let (p, h, m) = triangular_split(&basis, &x, b.set.alphabet()).unwrap();
        assert_eq!((p.len(), h.len(), m.len()), (1, 1, 1));
        let ef = NaWord::node(NaWord::Leaf(x.e(1)), NaWord::Leaf(x.f(1)));
        assert!(triangular_split(&[ef], &x, b.set.alphabet()).is_err());
    }
}
