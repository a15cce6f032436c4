//! The free associative algebra over a graded alphabet, its superbracket, and
//! the expansion of bracket expressions into it.

mod poly;
mod rational;

use std::collections::HashMap;

use thiserror::Error;

use crate::alphabet::{Alphabet, AlphabetError, Parity};
use crate::words::{self, NaWord, Word, WordError};

pub use poly::Poly;
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no leading term")]
    Zero,
    #[error("operand is not homogeneous in parity")]
    NotHomogeneous,
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

/// `[p, q] = pq - (-1)^(|p||q|) qp` for parity-homogeneous `p` and `q`.
pub fn super_bracket(p: &Poly, q: &Poly, alphabet: &Alphabet) -> Result<Poly, PolyError> {
    let (Some(dp), Some(dq)) = (p.parity(alphabet)?, q.parity(alphabet)?) else {
        return Ok(Poly::zero());
    };
    Ok(bracket_with_parities(p, dp, q, dq))
}

pub(crate) fn bracket_with_parities(p: &Poly, dp: Parity, q: &Poly, dq: Parity) -> Poly {
    let mut out = p.multiply(q);
    let sign = if dp.sign_flips_with(dq) {
        Rational::one()
    } else {
        Rational::from_int(-1)
    };
    out.add_scaled(&q.multiply(p), &sign);
    out
}

/// Evaluates a bracket tree in the free associative algebra.
pub fn expand_naword(t: &NaWord, alphabet: &Alphabet) -> Result<Poly, PolyError> {
    for l in t.leaves() {
        if l as usize >= alphabet.len() {
            return Err(AlphabetError::LetterOutOfRange(l).into());
        }
    }
    Ok(expand_tree(t, alphabet).0)
}

fn expand_tree(t: &NaWord, alphabet: &Alphabet) -> (Poly, Parity) {
    match t {
        NaWord::Leaf(l) => (Poly::letter(*l), alphabet.parity(*l)),
        NaWord::Node(l, r) => {
            let (pl, dl) = expand_tree(l, alphabet);
            let (pr, dr) = expand_tree(r, alphabet);
            (bracket_with_parities(&pl, dl, &pr, dr), dl + dr)
        }
    }
}

/// Memoized expansions of canonical bracketings `[u]` of super-LS words.
///
/// Each entry is the expansion divided by its leading coefficient, so the
/// stored polynomial is monic with leading word `u`.
#[derive(Debug, Default, Clone)]
pub struct LieBasisCache {
    monic: HashMap<Word, (Poly, Rational)>,
}

impl LieBasisCache {
    pub fn new() -> Self {
        LieBasisCache::default()
    }

    /// Returns the monic expansion of `[u]` and the leading coefficient of `[u]`.
    pub fn monic_expansion(
        &mut self,
        u: &Word,
        alphabet: &Alphabet,
    ) -> Result<&(Poly, Rational), WordError> {
        if !self.monic.contains_key(u) {
            let t = words::canonical_bracketing(u, alphabet)?;
            let e = expand_naword(&t, alphabet).map_err(|_| WordError::NotSuperLs)?;
            let (lw, lc) = e.leading_term().map_err(|_| WordError::NotSuperLs)?;
            debug_assert_eq!(&lw, u);
            let monic = e.scale(&lc.recip());
            self.monic.insert(u.clone(), (monic, lc));
        }
        Ok(&self.monic[u])
    }

    pub fn len(&self) -> usize {
        self.monic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monic.is_empty()
    }
}

/// Writes `p` in the basis of super-LS monomial expansions.
///
/// Returns the coefficient of each monomial `[u]` (keyed by `u`, descending),
/// or `None` when `p` is not a Lie element.
pub fn lie_coordinates(
    p: &Poly,
    alphabet: &Alphabet,
    cache: &mut LieBasisCache,
) -> Option<Vec<(Word, Rational)>> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    while let Some((u, c)) = rest.leading_term().ok() {
        if u.is_empty() || !words::is_super_lyndon_shirshov_word(&u, alphabet).ok()? {
            return None;
        }
        let (monic, lc) = cache.monic_expansion(&u, alphabet).ok()?;
        rest.add_scaled(monic, &-&c);
        out.push((u, &c / lc));
    }
    Some(out)
}

/// Whether `p` lies in the Lie subalgebra generated by the alphabet.
///
/// Words longer than `max_check_len` are not examined and make the answer `false`.
pub fn is_lie_element(p: &Poly, alphabet: &Alphabet, max_check_len: usize) -> bool {
    if p.max_len() > max_check_len {
        return false;
    }
    lie_coordinates(p, alphabet, &mut LieBasisCache::new()).is_some()
}
