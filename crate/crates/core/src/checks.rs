//! Reproducible end-to-end checks over the classical grid. Shared by the
//! acceptance test and the `selftest` subcommand.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Letter, Parity};
use crate::classical::structure::{basis_weights, pbw_counts, supercommutative_series};
use crate::classical::{
    dimension_formula, family_relations, grid, matrix, reduced_basis, Family, FamilyRelations, FamilySpec,
};
use crate::composition::{self, check_equivalence, complete, is_closed, minimal_leading_words, Mode};
use crate::kacmoody::{self, complete_with_substitutions, KmPresentation};
use crate::rewrite::RelationSet;
use crate::superalgebra::{expand_naword, Poly, Rational};
use crate::words::{
    all_bracketings, all_words, canonical_bracketing, enumerate_ls_words, is_ls_monomial, is_lyndon_shirshov_word,
    remove_brackets, Word,
};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// One acceptance line.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

/// Relation systems of every grid instance, built once.
pub struct Grid {
    pub rels: Vec<FamilyRelations>,
}

impl Grid {
    pub fn build() -> Grid {
        let rels = grid()
            .iter()
            .map(|f| family_relations(f).expect("grid parameters are valid"))
            .collect();
        Grid { rels }
    }
}

fn listing(names: &[String]) -> String {
    if names.is_empty() {
        "none".to_string()
    } else {
        names.join(", ")
    }
}

pub fn closure(g: &Grid) -> CheckLine {
    let mut bad = Vec::new();
    for rel in &g.rels {
        for mode in [Mode::Lie, Mode::Associative] {
            let ok = is_closed(&rel.set, mode).map(|r| r.is_closed()).unwrap_or(false);
            if !ok {
                bad.push(format!("{} ({mode:?})", rel.spec));
            }
        }
    }
    CheckLine {
        id: 1,
        title: "closure of R(A,tau) in Lie and associative modes",
        passed: bad.is_empty(),
        detail: format!("{} instances, not closed: {}", g.rels.len(), listing(&bad)),
    }
}

pub fn dimensions(g: &Grid) -> CheckLine {
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for rel in &g.rels {
        let basis = reduced_basis(rel).len();
        // Nothing reduced may hide just beyond the length cap.
        let beyond = rel
            .set
            .enumerate_reduced_super_ls_monomials(rel.spec.length_cap() + 2)
            .len();
        let want = dimension_formula(&rel.spec);
        shown.push(format!("{}={basis}", rel.spec));
        if basis != want || beyond != basis {
            bad.push(format!("{} (basis {basis}, beyond cap {beyond}, formula {want})", rel.spec));
        }
    }
    CheckLine {
        id: 2,
        title: "reduced basis size equals dimension",
        passed: bad.is_empty(),
        detail: format!("{}; mismatches: {}", shown.join(" "), listing(&bad)),
    }
}

pub fn matrices(g: &Grid, force_c: bool) -> CheckLine {
    let mut bad = Vec::new();
    let mut skipped = Vec::new();
    let mut checked = 0;
    for rel in &g.rels {
        let r = matrix::verify_by_matrices(rel, force_c);
        if r.skipped {
            skipped.push(rel.spec.to_string());
            continue;
        }
        checked += r.checked;
        if !r.ok() {
            bad.push(format!("{} ({} failures)", rel.spec, r.failures.len() + r.parity_mismatches.len()));
        }
    }
    CheckLine {
        id: 3,
        title: "relations vanish on generator matrices",
        passed: bad.is_empty(),
        detail: format!(
            "{checked} relations checked, failing: {}, gated: {}",
            listing(&bad),
            listing(&skipped)
        ),
    }
}

fn r_plus_bound(rel: &FamilyRelations) -> usize {
    rel.r_plus_set()
        .relations()
        .iter()
        .map(|r| r.lead.len())
        .max()
        .unwrap_or(2)
        .max(2)
}

/// Minimal leading words of `complete(S₊)` against those of the explicit
/// `R₊`, at the longest `R₊` leading word. The line also reports the same
/// comparison after closing the completion under `∂̃_j`.
pub fn completion_oracle(g: &Grid) -> CheckLine {
    let mut literal_bad = Vec::new();
    let mut closed_bad = Vec::new();
    for rel in &g.rels {
        let bound = r_plus_bound(rel);
        let target = minimal_leading_words(&rel.r_plus_set());
        let pres = &rel.presentation;
        let s = RelationSet::from_polys(&pres.alphabet, &pres.s_plus).expect("valid relations");
        let plain = complete(&s, Mode::Associative, bound).expect("homogeneous relations");
        if minimal_leading_words(&plain.set) != target {
            literal_bad.push(rel.spec.to_string());
        }
        let closed = complete_with_substitutions(&pres.cartan, bound).expect("valid Cartan data");
        if minimal_leading_words(&closed.set) != target {
            closed_bad.push(rel.spec.to_string());
        }
    }
    CheckLine {
        id: 4,
        title: "completion of Serre relations reproduces R+ leading words",
        passed: literal_bad.is_empty(),
        detail: format!(
            "complete(S+) differs on: {}; closed under substitutions differs on: {}",
            listing(&literal_bad),
            listing(&closed_bad)
        ),
    }
}

/// A random homogeneous Lie relation set over at most 3 letters, degree at most 4.
pub fn random_lie_set(rng: &mut ChaCha8Rng) -> RelationSet {
    let q = rng.gen_range(2..=3);
    let parities: Vec<Parity> = (0..q).map(|_| Parity::from_bit(rng.gen_range(0..2))).collect();
    let alphabet = Alphabet::numbered("x", &parities);
    let words = RelationSet::new(&alphabet).reduced_super_ls_words(4);
    let mut classes: BTreeMap<Vec<u32>, Vec<Word>> = BTreeMap::new();
    for w in words.into_iter().filter(|w| w.len() >= 2) {
        let mut deg = vec![0u32; q];
        for &l in w.iter() {
            deg[l as usize] += 1;
        }
        classes.entry(deg).or_default().push(w);
    }
    let keys: Vec<&Vec<u32>> = classes.keys().collect();
    let count = rng.gen_range(1..=3);
    let mut polys = Vec::new();
    while polys.len() < count {
        let class = &classes[keys[rng.gen_range(0..keys.len())]];
        let mut p = Poly::zero();
        for w in class {
            if rng.gen_bool(0.6) {
                let c = Rational::from_int(rng.gen_range(-3..=3));
                let t = canonical_bracketing(w, &alphabet).expect("super-LS word");
                p.add_scaled(&expand_naword(&t, &alphabet).expect("letters in range"), &c);
            }
        }
        if !p.is_zero() {
            polys.push(p);
        }
    }
    RelationSet::from_polys(&alphabet, &polys).expect("letters in range")
}

pub fn lie_assoc_agreement(seed: u64, samples: usize) -> CheckLine {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut closed, mut open, mut disagree) = (0, 0, Vec::new());
    for k in 0..samples {
        let s = random_lie_set(&mut rng);
        match check_equivalence(&s) {
            Ok(r) if r.agree() => {
                if r.lie.is_closed() {
                    closed += 1;
                } else {
                    open += 1;
                }
            }
            _ => disagree.push(k.to_string()),
        }
    }
    CheckLine {
        id: 5,
        title: "Lie and associative closure verdicts agree",
        passed: disagree.is_empty(),
        detail: format!(
            "{samples} random sets ({closed} closed, {open} not closed), disagreements: {}",
            listing(&disagree)
        ),
    }
}

fn random_word(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..letters) as Letter).collect()
}

/// `Σ α_i a_i s_i b_i` with up to three random terms.
pub fn random_ideal_element(s: &RelationSet, rng: &mut ChaCha8Rng) -> Poly {
    let n = s.alphabet().len();
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let r = &s.relations()[rng.gen_range(0..s.len())];
        let (a, b) = (random_word(rng, n, 2), random_word(rng, n, 2));
        let c = Rational::from_int(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
        p.add_scaled(&r.poly.sandwich(&a, &b), &c);
    }
    p
}

pub fn ideal_membership(g: &Grid, seed: u64, samples: usize) -> CheckLine {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut total = 0;
    for rel in &g.rels {
        let failures = (0..samples)
            .filter(|_| !rel.set.normal_form_assoc(&random_ideal_element(&rel.set, &mut rng)).is_zero())
            .count();
        total += samples;
        if failures > 0 {
            bad.push(format!("{} ({failures})", rel.spec));
        }
    }
    CheckLine {
        id: 6,
        title: "random ideal elements reduce to zero",
        passed: bad.is_empty(),
        detail: format!("{total} elements over {} instances, nonzero: {}", g.rels.len(), listing(&bad)),
    }
}

/// `(1/n) Σ_{d|n} μ(d) q^{n/d}`.
pub fn witt_number(q: u64, n: u32) -> u64 {
    fn mobius(mut d: u32) -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= d {
            if d % p == 0 {
                d /= p;
                if d % p == 0 {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if d > 1 {
            -result
        } else {
            result
        }
    }
    let sum: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * (q as i64).pow(n / d))
        .sum();
    (sum / n as i64) as u64
}

pub fn word_combinatorics() -> CheckLine {
    let mut problems = Vec::new();
    for q in 1..=3usize {
        let alphabet = Alphabet::numbered("x", &vec![Parity::Even; q]);
        let words = enumerate_ls_words(&alphabet, 7);
        for n in 1..=7u32 {
            let got = words.iter().filter(|w| w.len() == n as usize).count() as u64;
            let want = witt_number(q as u64, n);
            if got != want {
                problems.push(format!("LS count q={q} n={n}: {got} vs {want}"));
            }
        }
    }
    let mixed = Alphabet::numbered("x", &[Parity::Even, Parity::Odd, Parity::Even]);
    let mut checked = 0;
    for len in 1..=6 {
        for u in all_words(3, len) {
            let ls: Vec<_> = all_bracketings(&u).into_iter().filter(is_ls_monomial).collect();
            let is_ls = is_lyndon_shirshov_word(&u).expect("nonempty");
            if is_ls {
                checked += 1;
                let c = canonical_bracketing(&u, &mixed).expect("LS word");
                if ls.len() != 1 || ls[0] != c {
                    problems.push(format!("bracketing of {}", mixed.format_word(&u)));
                }
            } else if !ls.is_empty() {
                problems.push(format!("LS monomial on non-LS {}", mixed.format_word(&u)));
            }
            if let Ok(t) = canonical_bracketing(&u, &mixed) {
                if remove_brackets(&t) != u {
                    problems.push(format!("rho of {}", mixed.format_word(&u)));
                }
            }
        }
    }
    CheckLine {
        id: 7,
        title: "LS counts, unique bracketing, rho after bracketing",
        passed: problems.is_empty(),
        detail: format!(
            "Witt q<=3 n<=7, {checked} LS words up to length 6 bracketed, problems: {}",
            listing(&problems)
        ),
    }
}

pub fn pbw(g: &Grid) -> CheckLine {
    let mut shown = Vec::new();
    let mut bad = Vec::new();
    for rel in g
        .rels
        .iter()
        .filter(|r| r.spec == FamilySpec::sl(2, 1) || r.spec == FamilySpec::b(1, 1))
    {
        let basis = reduced_basis(rel);
        let alphabet = rel.alphabet();
        let weights = basis_weights(&basis, alphabet);
        let parities: Vec<Parity> = weights.iter().map(|&(_, p)| p).collect();
        let unit: Vec<(usize, Parity)> = parities.iter().map(|&p| (1, p)).collect();
        let counts = pbw_counts(&parities, 4);
        let series = supercommutative_series(&unit, 4);
        let words = rel.set.count_reduced_words(4);
        let weighted = supercommutative_series(&weights, 4);
        let odd = parities.iter().filter(|p| p.is_odd()).count();
        shown.push(format!(
            "{} (d0={}, d1={odd}) pbw {counts:?} words {words:?}",
            rel.spec,
            parities.len() - odd
        ));
        if counts != series {
            bad.push(format!("{} pbw vs series {series:?}", rel.spec));
        }
        if words != weighted {
            bad.push(format!("{} words vs weighted series {weighted:?}", rel.spec));
        }
    }
    CheckLine {
        id: 8,
        title: "PBW counts and reduced words of the enveloping algebra",
        passed: bad.is_empty() && shown.len() == 2,
        detail: format!("{}; mismatches: {}", shown.join("; "), listing(&bad)),
    }
}

pub fn triangular(g: &Grid) -> CheckLine {
    let mut bad = Vec::new();
    for rel in &g.rels {
        let basis = reduced_basis(rel);
        match kacmoody::triangular_split(&basis, &rel.letters(), rel.alphabet()) {
            Ok((p, h, m)) if h.len() == rel.spec.rank() && p.len() == m.len() => {}
            Ok((p, h, m)) => bad.push(format!("{} sizes {}/{}/{}", rel.spec, p.len(), h.len(), m.len())),
            Err(e) => bad.push(format!("{}: {e}", rel.spec)),
        }
    }
    CheckLine {
        id: 9,
        title: "triangular split of the reduced basis",
        passed: bad.is_empty(),
        detail: format!("{} instances, failures: {}", g.rels.len(), listing(&bad)),
    }
}

/// A random `e`-supported polynomial of length at most 4, homogeneous in
/// every letter.
pub fn random_positive_poly(pres: &KmPresentation, rng: &mut ChaCha8Rng) -> Poly {
    let r = pres.cartan.rank();
    let len = rng.gen_range(1..=4);
    let mut letters: Vec<Letter> = (0..len).map(|_| pres.letters.e(rng.gen_range(1..=r))).collect();
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        letters.shuffle(rng);
        let c = Rational::from_int(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 });
        p.add_term(Word::from_slice(&letters), c);
    }
    if p.is_zero() {
        Poly::word(Word::from_slice(&letters))
    } else {
        p
    }
}

/// Outcome of the derivation checks on one Cartan datum.
#[derive(Debug, Clone, Default)]
pub struct DerivationReport {
    pub commutation_failures: usize,
    pub substitution_samples: usize,
    pub substitution_failures: usize,
    /// First failing `(p, j, residue)` of the substitution check, rendered.
    pub example: Option<String>,
}

/// Checks `p f_j ≡ ±f_j p + (p)∂̃_j` modulo `W` on random `p`, and that
/// `(p)∂̃_l` for random `p ∈ S₊` lies in the span of `a s b` with
/// `s ∈ S₊ ∪ W` and `l(a s̄ b) <= l(p̄)`. Membership in that span is decided by
/// reducing modulo the completion of `S₊ ∪ W` capped at `l(p̄)`.
pub fn derivation_samples(
    pres: &KmPresentation,
    rng: &mut ChaCha8Rng,
    samples: usize,
) -> Result<DerivationReport, composition::CompositionError> {
    let r = pres.cartan.rank();
    let w = pres.w_set();
    let mut report = DerivationReport::default();
    for _ in 0..samples {
        let p = random_positive_poly(pres, rng);
        let j = rng.gen_range(1..=r);
        let residue = pres.commutation_residue(&p, j, &w).expect("positive support");
        if !residue.is_zero() {
            report.commutation_failures += 1;
        }
    }
    if pres.s_plus.is_empty() {
        return Ok(report);
    }
    let base = RelationSet::from_polys(&pres.alphabet, &pres.s_plus)
        .expect("valid relations")
        .union(&w);
    let mut capped: BTreeMap<usize, RelationSet> = BTreeMap::new();
    for _ in 0..samples {
        let p = &pres.s_plus[rng.gen_range(0..pres.s_plus.len())];
        let l = rng.gen_range(1..=r);
        let bound = p.leading_word().expect("nonzero").len();
        if !capped.contains_key(&bound) {
            capped.insert(bound, complete(&base, Mode::Associative, bound)?.set);
        }
        let d = pres.diff_substitution(p, l).expect("positive support");
        let nf = capped[&bound].normal_form_assoc(&d);
        report.substitution_samples += 1;
        if !nf.is_zero() {
            report.substitution_failures += 1;
            if report.example.is_none() {
                report.example = Some(format!(
                    "({})d_{l} leaves {}",
                    p.format(&pres.alphabet),
                    nf.format(&pres.alphabet)
                ));
            }
        }
    }
    Ok(report)
}

pub fn derivations(g: &Grid, seed: u64, samples: usize) -> CheckLine {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut comm, mut subst_bad, mut subst_total) = (0, 0, 0);
    let mut failing = Vec::new();
    let mut example = None;
    for rel in &g.rels {
        let rep = derivation_samples(&rel.presentation, &mut rng, samples).expect("homogeneous relations");
        comm += rep.commutation_failures;
        subst_bad += rep.substitution_failures;
        subst_total += rep.substitution_samples;
        if rep.substitution_failures > 0 || rep.commutation_failures > 0 {
            failing.push(rel.spec.to_string());
        }
        if example.is_none() {
            example = rep.example.map(|e| format!("{}: {e}", rel.spec));
        }
    }
    let total = samples * g.rels.len();
    CheckLine {
        id: 10,
        title: "commutation with f_j and substitutions of Serre relations",
        passed: comm == 0 && subst_bad == 0,
        detail: format!(
            "commutation {}/{total} ok; S+ substitutions {}/{subst_total} ok; failing data: {}{}",
            total - comm,
            subst_total - subst_bad,
            listing(&failing),
            example.map(|e| format!("; e.g. {e}")).unwrap_or_default()
        ),
    }
}

/// Every acceptance line, in order.
pub fn run_all(seed: u64) -> Vec<CheckLine> {
    let g = Grid::build();
    vec![
        closure(&g),
        dimensions(&g),
        matrices(&g, false),
        completion_oracle(&g),
        lie_assoc_agreement(seed, 200),
        ideal_membership(&g, seed, 100),
        word_combinatorics(),
        pbw(&g),
        triangular(&g),
        derivations(&g, seed, 100),
    ]
}

/// Grid instances whose Cartan matrix has an odd index `i` with `a_ii = 0`.
pub fn isotropic_instances() -> BTreeSet<String> {
    grid()
        .iter()
        .filter(|f| f.family != Family::B0)
        .map(|f| f.to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_values() {
        assert_eq!(witt_number(2, 1), 2);
        assert_eq!(witt_number(2, 4), 3);
        assert_eq!(witt_number(3, 6), 116);
        assert_eq!(witt_number(1, 5), 0);
    }

    #[test]
    fn random_sets_are_homogeneous_lie() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let s = random_lie_set(&mut rng);
            assert!(s.all_lie());
            for p in s.polys() {
                assert!(p.multidegree(s.alphabet().len()).is_some());
            }
        }
    }

    #[test]
    fn substitution_of_odd_serre_relation() {
        let c = kacmoody::CartanData::new(vec![vec![2, -1], vec![-1, 0]], [2]);
        let pres = kacmoody::build_relations(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = derivation_samples(&pres, &mut rng, 40).unwrap();
        assert_eq!(rep.commutation_failures, 0);
        // ([e2[e2 e1]])∂̃_1 is a multiple of [e2 e2], which needs length 4 to vanish.
        assert!(rep.substitution_failures > 0);
    }
}
