//! Compositions of relations, closure checks, and completion.
//!
//! Two relations `p`, `q` compose along a witness word `w` when their leading
//! words overlap (`p̄a = bq̄ = w`) or one contains the other (`p̄ = aq̄b`). A
//! relation set is a Gröbner-Shirshov basis exactly when every composition
//! reduces to zero.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::rewrite::{RelationSet, RewriteError};
use crate::superalgebra::{LieBasisCache, Poly};
use crate::words::{self, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompositionError {
    #[error("overlap does not match the leading words of its relations")]
    MalformedOverlap,
    #[error("witness {0} is not a super Lyndon-Shirshov word")]
    WitnessNotSuperLs(String),
    #[error("composition leading word is not below its witness {0}")]
    NotBelowWitness(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OverlapKind {
    /// `p̄a = bq̄ = w` with `a`, `b` nonempty and `l(p̄) > l(b)`.
    Intersection,
    /// `p̄ = aq̄b = w`.
    Inclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Associative,
    Lie,
}

/// A witness of a composition between relations `left` (p) and `right` (q).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Overlap {
    pub w: Word,
    pub left: usize,
    pub right: usize,
    pub kind: OverlapKind,
    pub a: Word,
    pub b: Word,
}

/// All intersections (proper suffix of `p̄` = proper prefix of `q̄`) and
/// inclusions (`q̄` inside `p̄`) of two leading words, as `(kind, w, a, b)`.
pub fn find_overlaps(p: &[u8], q: &[u8]) -> Vec<(OverlapKind, Word, Word, Word)> {
    let mut out = Vec::new();
    // Intersection: suffix of p of length k equals prefix of q of length k.
    for k in 1..p.len().min(q.len()) {
        if p[p.len() - k..] == q[..k] {
            let w = Word::concat3(p, &q[k..], &[]);
            let a = Word::from_slice(&q[k..]);
            let b = Word::from_slice(&p[..p.len() - k]);
            out.push((OverlapKind::Intersection, w, a, b));
        }
    }
    if q.len() <= p.len() {
        for i in 0..=p.len() - q.len() {
            if p[i..i + q.len()] == *q {
                let a = Word::from_slice(&p[..i]);
                let b = Word::from_slice(&p[i + q.len()..]);
                out.push((OverlapKind::Inclusion, Word::from_slice(p), a, b));
            }
        }
    }
    out
}

/// Every overlap between members of `s`, sorted by witness then indices.
pub fn all_overlaps(s: &RelationSet) -> Vec<Overlap> {
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in 0..s.len() {
            overlaps_of_pair(s, i, j, &mut out);
        }
    }
    out.sort();
    out
}

fn overlaps_of_pair(s: &RelationSet, i: usize, j: usize, out: &mut Vec<Overlap>) {
    let (p, q) = (&s.get(i).lead, &s.get(j).lead);
    for (kind, w, a, b) in find_overlaps(p, q) {
        if kind == OverlapKind::Inclusion && i == j {
            continue;
        }
        // Equal leading words: keep the inclusion only once per unordered pair.
        if kind == OverlapKind::Inclusion && p == q && i > j {
            continue;
        }
        out.push(Overlap {
            w,
            left: i,
            right: j,
            kind,
            a,
            b,
        });
    }
}

fn check_overlap(s: &RelationSet, o: &Overlap) -> Result<(), CompositionError> {
    if o.left >= s.len() || o.right >= s.len() {
        return Err(CompositionError::MalformedOverlap);
    }
    let (p, q) = (&s.get(o.left).lead, &s.get(o.right).lead);
    let ok = match o.kind {
        OverlapKind::Intersection => {
            !o.a.is_empty()
                && !o.b.is_empty()
                && p.len() > o.b.len()
                && Word::concat3(p, &o.a, &[]) == o.w
                && Word::concat3(&o.b, q, &[]) == o.w
        }
        OverlapKind::Inclusion => *p == o.w && Word::concat3(&o.a, q, &o.b) == o.w,
    };
    if ok {
        Ok(())
    } else {
        Err(CompositionError::MalformedOverlap)
    }
}

fn below_witness(c: Poly, o: &Overlap, alphabet: &Alphabet) -> Result<Poly, CompositionError> {
    if c.leading_word().is_some_and(|lw| *lw >= o.w) {
        return Err(CompositionError::NotBelowWitness(alphabet.format_word(&o.w)));
    }
    Ok(c)
}

/// `(p,q)_w = p a - b q` for intersections and `p - a q b` for inclusions.
pub fn assoc_composition(s: &RelationSet, o: &Overlap) -> Result<Poly, CompositionError> {
    check_overlap(s, o)?;
    let (p, q) = (&s.get(o.left), &s.get(o.right));
    let mut c = Poly::zero();
    match o.kind {
        OverlapKind::Intersection => {
            c.add_scaled_sandwich(&[], &p.tail, &o.a, &crate::Rational::one());
            c.add_scaled_sandwich(&o.b, &q.tail, &[], &crate::Rational::from_int(-1));
        }
        OverlapKind::Inclusion => {
            c.add_scaled(&p.tail, &crate::Rational::one());
            c.add_scaled_sandwich(&o.a, &q.tail, &o.b, &crate::Rational::from_int(-1));
        }
    }
    below_witness(c, o, s.alphabet())
}

/// `⟨p,q⟩_w = [w]_p - [w]_q` for intersections and `p - [w]_q` for inclusions.
pub fn lie_composition(s: &RelationSet, o: &Overlap) -> Result<Poly, CompositionError> {
    check_overlap(s, o)?;
    let alphabet = s.alphabet();
    if !words::is_super_lyndon_shirshov_word(&o.w, alphabet)? {
        return Err(CompositionError::WitnessNotSuperLs(alphabet.format_word(&o.w)));
    }
    let (p, q) = (&s.get(o.left).poly, &s.get(o.right).poly);
    let c = match o.kind {
        OverlapKind::Intersection => {
            let wp = words::substitute_bracketing(&[], p, &o.a, alphabet)?;
            let wq = words::substitute_bracketing(&o.b, q, &[], alphabet)?;
            wp.sub(&wq)
        }
        OverlapKind::Inclusion => {
            let wq = words::substitute_bracketing(&o.a, q, &o.b, alphabet)?;
            p.sub(&wq)
        }
    };
    below_witness(c, o, alphabet)
}

/// Computes the composition for `mode` and reduces it modulo `s`.
///
/// Returns `Ok(None)` for a Lie-mode overlap whose witness is not super-LS.
pub fn reduced_composition(
    s: &RelationSet,
    o: &Overlap,
    mode: Mode,
) -> Result<Option<Poly>, CompositionError> {
    match mode {
        Mode::Associative => Ok(Some(s.normal_form_assoc(&assoc_composition(s, o)?))),
        Mode::Lie => {
            if !words::is_super_lyndon_shirshov_word(&o.w, s.alphabet())? {
                return Ok(None);
            }
            let c = lie_composition(s, o)?;
            let nf = s.normal_form_lie_cached(&c, &mut LieBasisCache::new())?;
            Ok(Some(nf.poly))
        }
    }
}

/// Outcome of a closure check.
#[derive(Debug, Clone, Default)]
pub struct ClosureReport {
    /// Overlaps whose composition did not reduce to zero, with the residue.
    pub nonzero: Vec<(Overlap, Poly)>,
    pub checked: usize,
    /// Lie-mode overlaps skipped because the witness is not super-LS.
    pub skipped: usize,
}

impl ClosureReport {
    pub fn is_closed(&self) -> bool {
        self.nonzero.is_empty()
    }

    /// `NONZERO <w> <residue>` lines, or the single line `CLOSED`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_closed() {
            return "CLOSED\n".to_string();
        }
        let mut out = String::new();
        for (o, r) in &self.nonzero {
            out.push_str(&format!(
                "NONZERO {} {}\n",
                alphabet.format_word(&o.w),
                r.format(alphabet)
            ));
        }
        out
    }
}

/// Reduces every composition of `s`; an empty report means `s` is a Gröbner-Shirshov basis.
pub fn is_closed(s: &RelationSet, mode: Mode) -> Result<ClosureReport, CompositionError> {
    closure_of_overlaps(s, &all_overlaps(s), mode)
}

fn closure_of_overlaps(
    s: &RelationSet,
    overlaps: &[Overlap],
    mode: Mode,
) -> Result<ClosureReport, CompositionError> {
    let results: Vec<Result<Option<Poly>, CompositionError>> = overlaps
        .par_iter()
        .map(|o| reduced_composition(s, o, mode))
        .collect();
    let mut report = ClosureReport::default();
    for (o, r) in overlaps.iter().zip(results) {
        match r? {
            None => report.skipped += 1,
            Some(p) => {
                report.checked += 1;
                if !p.is_zero() {
                    report.nonzero.push((o.clone(), p));
                }
            }
        }
    }
    Ok(report)
}

/// Checks closure in both modes; the verdicts must agree.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub lie: ClosureReport,
    pub assoc: ClosureReport,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.lie.is_closed() == self.assoc.is_closed()
    }
}

/// Runs the closure check in Lie and associative modes.
pub fn check_equivalence(s: &RelationSet) -> Result<EquivalenceReport, CompositionError> {
    Ok(EquivalenceReport {
        lie: is_closed(s, Mode::Lie)?,
        assoc: is_closed(s, Mode::Associative)?,
    })
}

/// Result of a degree-capped completion.
#[derive(Debug, Clone)]
pub struct Completion {
    pub set: RelationSet,
    /// Relations adjoined during completion, in order.
    pub added: Vec<Poly>,
    /// True when every composition of the final set reduces to zero.
    pub fixpoint: bool,
}

/// Adjoins monic reduced composition residues until no overlap with a witness
/// of length at most `max_degree` produces a new relation.
///
/// Overlaps are processed in strata of equal witness length. Within a stratum
/// compositions are reduced in parallel against a snapshot; the results are
/// then merged in witness order, each re-reduced against the growing set, so
/// the output does not depend on the number of worker threads.
pub fn complete(s: &RelationSet, mode: Mode, max_degree: usize) -> Result<Completion, CompositionError> {
    let mut set = s.clone();
    let mut added = Vec::new();
    let mut pending: BTreeSet<Overlap> = all_overlaps(&set).into_iter().collect();
    let mut cache = LieBasisCache::new();
    let mut truncated = false;
    loop {
        let Some(first) = pending.first() else { break };
        let len = first.w.len();
        if len > max_degree {
            break;
        }
        let stratum: Vec<Overlap> = pending
            .iter()
            .take_while(|o| o.w.len() == len)
            .cloned()
            .collect();
        for o in &stratum {
            pending.remove(o);
        }
        let snapshot = &set;
        let residues: Vec<Result<Option<Poly>, CompositionError>> = stratum
            .par_iter()
            .map(|o| reduced_composition(snapshot, o, mode))
            .collect();
        for r in residues {
            let Some(r) = r? else { continue };
            if r.is_zero() {
                continue;
            }
            let r = match mode {
                Mode::Associative => set.normal_form_assoc(&r),
                Mode::Lie => set.normal_form_lie_cached(&r, &mut cache)?.poly,
            };
            if r.is_zero() {
                continue;
            }
            if r.max_len() > max_degree {
                truncated = true;
                continue;
            }
            let idx = set.len();
            let monic = r.make_monic().expect("nonzero");
            if set.push(&monic, mode == Mode::Lie).expect("valid words") {
                added.push(monic);
                let mut fresh = Vec::new();
                for j in 0..=idx {
                    overlaps_of_pair(&set, idx, j, &mut fresh);
                    if j != idx {
                        overlaps_of_pair(&set, j, idx, &mut fresh);
                    }
                }
                pending.extend(fresh);
            }
        }
    }
    let fixpoint = if truncated {
        false
    } else {
        let rest: Vec<Overlap> = pending.into_iter().collect();
        closure_of_overlaps(&set, &rest, mode)?.is_closed()
    };
    Ok(Completion {
        set,
        added,
        fixpoint,
    })
}

/// Leading words that do not contain another leading word of the set.
pub fn minimal_leading_words(s: &RelationSet) -> BTreeSet<Word> {
    let all: BTreeSet<Word> = s.leading_words().into_iter().collect();
    all.iter()
        .filter(|w| {
            !all.iter()
                .any(|v| v != *w && v.len() <= w.len() && w.contains_factor(v))
        })
        .cloned()
        .collect()
}
