use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Letter, Parity};
use crate::superalgebra::{PolyError, Rational};
use crate::words::Word;

/// A finite linear combination of associative words with nonzero rational coefficients.
///
/// Terms are kept sorted by the length-lexicographic ordering, so the leading
/// term is the last entry. A polynomial does not hold on to its alphabet;
/// operations whose result depends on letter parities take one explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly {
    terms: BTreeMap<Word, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::term(Word::empty(), c)
    }

    pub fn word(w: Word) -> Poly {
        Poly::term(w, Rational::one())
    }

    pub fn letter(l: Letter) -> Poly {
        Poly::word(Word::from_slice(&[l]))
    }

    pub fn term(w: Word, c: Rational) -> Poly {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    /// Sums the given terms, merging repeated words.
    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(terms: I) -> Poly {
        let mut p = Poly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn words(&self) -> impl DoubleEndedIterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn leading_term(&self) -> Result<(Word, Rational), PolyError> {
        self.leading()
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or(PolyError::Zero)
    }

    pub fn pop_leading(&mut self) -> Option<(Word, Rational)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    /// `self += c * a * other * b` without building the intermediate product.
    pub fn add_scaled_sandwich(&mut self, a: &[Letter], other: &Poly, b: &[Letter], c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(Word::concat3(a, w, b), d * c);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Rational::from_int(-1))
    }

    /// The product `a * self * b` for words `a`, `b`.
    pub fn sandwich(&self, a: &[Letter], b: &[Letter]) -> Poly {
        // Fixed prefix and suffix preserve the order, so the map is rebuilt in order.
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word::concat3(a, w, b), c.clone()))
                .collect(),
        }
    }

    pub fn multiply(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                out.add_term(Word::concat3(u, v, &[]), c * d);
            }
        }
        out
    }

    /// Scales so the leading coefficient is 1.
    pub fn make_monic(&self) -> Result<Poly, PolyError> {
        let (_, lc) = self.leading().ok_or(PolyError::Zero)?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lc.recip()))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_one())
    }

    /// The common parity of all support words; `None` for the zero polynomial.
    pub fn parity(&self, alphabet: &Alphabet) -> Result<Option<Parity>, PolyError> {
        let mut found = None;
        for w in self.terms.keys() {
            alphabet.check_word(w)?;
            let p = alphabet.parity_of(w);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return Err(PolyError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(found)
    }

    /// The common length of all support words, if there is one.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let first = self.terms.keys().next()?.len();
        let last = self.terms.keys().next_back()?.len();
        (first == last).then_some(first)
    }

    /// Number of occurrences of each letter, if the same for every support word.
    pub fn multidegree(&self, alphabet_len: usize) -> Option<Vec<u32>> {
        let mut out: Option<Vec<u32>> = None;
        for w in self.terms.keys() {
            let mut counts = vec![0u32; alphabet_len];
            for &l in w.iter() {
                counts[l as usize] += 1;
            }
            match &out {
                None => out = Some(counts),
                Some(c) if *c != counts => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or_else(|| vec![0; alphabet_len]))
    }

    pub fn max_len(&self) -> usize {
        self.leading_word().map_or(0, |w| w.len())
    }

    /// Keeps only the terms whose word satisfies `keep`.
    pub fn filter_words<F: Fn(&Word) -> bool>(&self, keep: F) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Maps every letter through `f`; coefficients are preserved.
    pub fn map_letters<F: Fn(Letter) -> Letter>(&self, f: F) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.iter().map(|&l| f(l)).collect(), c.clone())),
        )
    }

    /// Renders the polynomial with the leading term first, e.g. `x2x1 - x1x2`.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push(' ');
                }
                out.push_str(&alphabet.format_word(w));
            }
        }
        out
    }
}

impl FromIterator<(Word, Rational)> for Poly {
    fn from_iter<I: IntoIterator<Item = (Word, Rational)>>(iter: I) -> Self {
        Poly::from_terms(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::numbered("x", &[Parity::Even, Parity::Even])
    }

    fn p(a: &Alphabet, terms: &[(&str, i64)]) -> Poly {
        terms
            .iter()
            .map(|(w, c)| (a.parse_word(w).unwrap(), Rational::from_int(*c)))
            .collect()
    }

    #[test]
    fn multiply_examples() {
        let a = ab();
        assert_eq!(
            p(&a, &[("x1", 1)]).multiply(&p(&a, &[("x2", 1)])),
            p(&a, &[("x1x2", 1)])
        );
        assert_eq!(
            p(&a, &[("x1", 1), ("x2", 1)]).multiply(&p(&a, &[("x1", 1)])),
            p(&a, &[("x1x1", 1), ("x2x1", 1)])
        );
        assert!(Poly::zero().multiply(&p(&a, &[("x1", 3)])).is_zero());
    }

    #[test]
    fn leading_term_examples() {
        let a = ab();
        let q = p(&a, &[("x2x1", 1), ("x1x2", -1)]);
        assert_eq!(q.leading_term().unwrap(), (a.parse_word("x2x1").unwrap(), Rational::one()));
        let q = p(&a, &[("x1", 3), ("x1x2", 1)]);
        assert_eq!(q.leading_word().unwrap(), &a.parse_word("x1x2").unwrap());
        let q = p(&a, &[("x1x1", 2)]);
        assert_eq!(q.leading_term().unwrap().1, Rational::from_int(2));
        assert_eq!(Poly::zero().leading_term(), Err(PolyError::Zero));
    }

    #[test]
    fn monic_scaling() {
        let a = ab();
        assert_eq!(p(&a, &[("x1x1", 2)]).make_monic().unwrap(), p(&a, &[("x1x1", 1)]));
        let q = p(&a, &[("x2x1", 1), ("x1x2", -1)]);
        assert_eq!(q.make_monic().unwrap(), q);
        let r = p(&a, &[("x2", 3), ("x1x1", -4)]).make_monic().unwrap();
        assert_eq!(r.coeff(&a.parse_word("x2").unwrap()), Rational::new(-3, 4));
        assert_eq!(Poly::zero().make_monic(), Err(PolyError::Zero));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = ab();
        let q = p(&a, &[("x1", 1)]);
        assert!(q.sub(&q).is_zero());
        assert_eq!(q.sub(&q).len(), 0);
    }

    #[test]
    fn formatting() {
        let a = ab();
        let q = p(&a, &[("x2x1", 1), ("x1x2", -1), ("", 3)]);
        assert_eq!(q.format(&a), "x2x1 - x1x2 + 3");
        let q = Poly::term(a.parse_word("x1").unwrap(), Rational::new(-1, 2));
        assert_eq!(q.format(&a), "-1/2 x1");
        assert_eq!(Poly::zero().format(&a), "0");
    }

    #[test]
    fn parity_and_degrees() {
        let a = Alphabet::numbered("x", &[Parity::Odd, Parity::Even]);
        let q = p(&a, &[("x1x2", 1), ("x2x1", 1)]);
        assert_eq!(q.parity(&a), Ok(Some(Parity::Odd)));
        assert_eq!(q.homogeneous_length(), Some(2));
        assert_eq!(q.multidegree(2), Some(vec![1, 1]));
        let r = p(&a, &[("x1", 1), ("x2", 1)]);
        assert_eq!(r.parity(&a), Err(PolyError::NotHomogeneous));
        assert_eq!(r.multidegree(2), None);
    }
}
