//! The classical families sl(m,n), B(m,n), B(0,n), C(n) and D(m,n): Cartan
//! data, explicit relation systems, reduced bases and dimension checks.
//!
//! Explicit positive relations are written with the iterated brackets
//! `e_ij = [e_i [e_{i-1} ... e_j]]` (right-normed) and built by one shared
//! [`IndexBuilder`].

pub mod matrix;
pub mod structure;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::kacmoody::{self, CartanData, KacMoodyError, KmLetters, KmPresentation};
use crate::rewrite::RelationSet;
use crate::superalgebra::{expand_naword, Poly};
use crate::words::NaWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("parameters out of range for {family}: {msg}")]
    Range { family: Family, msg: String },
    #[error("unknown family `{0}` (expected sl, b, b0, c or d)")]
    UnknownFamily(String),
    #[error(transparent)]
    KacMoody(#[from] KacMoodyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sl,
    B,
    B0,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sl => "sl",
            Family::B => "b",
            Family::B0 => "b0",
            Family::C => "c",
            Family::D => "d",
        })
    }
}

impl FromStr for Family {
    type Err = ClassicalError;

    fn from_str(s: &str) -> Result<Family, ClassicalError> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(Family::Sl),
            "b" => Ok(Family::B),
            "b0" => Ok(Family::B0),
            "c" => Ok(Family::C),
            "d" => Ok(Family::D),
            _ => Err(ClassicalError::UnknownFamily(s.to_string())),
        }
    }
}

/// A family tag with its parameters. `m` is ignored for B0 and C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sl => write!(f, "sl({},{})", self.m, self.n),
            Family::B => write!(f, "B({},{})", self.m, self.n),
            Family::B0 => write!(f, "B(0,{})", self.n),
            Family::C => write!(f, "C({})", self.n),
            Family::D => write!(f, "D({},{})", self.m, self.n),
        }
    }
}

impl FamilySpec {
    /// Validates the parameter ranges of the family.
    pub fn new(family: Family, m: usize, n: usize) -> Result<FamilySpec, ClassicalError> {
        let bad = |msg: &str| {
            Err(ClassicalError::Range {
                family,
                msg: msg.to_string(),
            })
        };
        match family {
            Family::Sl | Family::B if m == 0 || n == 0 => bad("need m > 0 and n > 0"),
            Family::B0 if n == 0 => bad("need n > 0"),
            Family::C if n < 2 => bad("need n >= 2"),
            Family::D if m < 2 || n == 0 => bad("need m >= 2 and n > 0"),
            Family::B0 | Family::C => Ok(FamilySpec { family, m: 0, n }),
            _ => Ok(FamilySpec { family, m, n }),
        }
    }

    pub fn sl(m: usize, n: usize) -> FamilySpec {
        FamilySpec::new(Family::Sl, m, n).expect("valid sl parameters")
    }

    pub fn b(m: usize, n: usize) -> FamilySpec {
        FamilySpec::new(Family::B, m, n).expect("valid B parameters")
    }

    pub fn b0(n: usize) -> FamilySpec {
        FamilySpec::new(Family::B0, 0, n).expect("valid B(0,n) parameters")
    }

    pub fn c(n: usize) -> FamilySpec {
        FamilySpec::new(Family::C, 0, n).expect("valid C parameters")
    }

    pub fn d(m: usize, n: usize) -> FamilySpec {
        FamilySpec::new(Family::D, m, n).expect("valid D parameters")
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::Sl => self.m + self.n - 1,
            Family::B | Family::D => self.m + self.n,
            Family::B0 | Family::C => self.n,
        }
    }

    /// The single odd index.
    pub fn odd_index(&self) -> usize {
        match self.family {
            Family::Sl => self.m,
            Family::B | Family::B0 | Family::D => self.n,
            Family::C => 1,
        }
    }

    /// Length cap for basis enumeration; every basis monomial is at most this long.
    pub fn length_cap(&self) -> usize {
        2 * (self.m + self.n)
    }
}

/// The test grid of family instances.
pub fn grid() -> Vec<FamilySpec> {
    vec![
        FamilySpec::sl(2, 1),
        FamilySpec::sl(1, 2),
        FamilySpec::sl(2, 2),
        FamilySpec::sl(3, 2),
        FamilySpec::b(1, 1),
        FamilySpec::b(2, 1),
        FamilySpec::b0(1),
        FamilySpec::b0(2),
        FamilySpec::b0(3),
        FamilySpec::c(2),
        FamilySpec::c(3),
        FamilySpec::d(2, 1),
        FamilySpec::d(2, 2),
    ]
}

/// The Cartan matrix and odd index set of a family.
pub fn family_cartan(f: &FamilySpec) -> CartanData {
    let r = f.rank();
    let p = f.odd_index();
    let mut a = vec![vec![0i64; r]; r];
    for i in 1..=r {
        for j in 1..=r {
            a[i - 1][j - 1] = if i == j {
                2
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            };
        }
    }
    let mut set = |i: usize, j: usize, v: i64| a[i - 1][j - 1] = v;
    match f.family {
        Family::Sl => {
            set(p, p, 0);
            if p < r {
                set(p, p + 1, 1);
            }
        }
        Family::B => {
            set(r, r - 1, -2);
            set(p, p, 0);
            set(p, p + 1, 1);
        }
        Family::B0 => {
            if r > 1 {
                set(r, r - 1, -2);
            }
        }
        Family::C => {
            // The odd row is set last: for n = 2 it overrides a_{n-1,n} = -2.
            set(r - 1, r, -2);
            set(1, 1, 0);
            set(1, 2, 1);
        }
        Family::D => {
            set(r - 1, r, 0);
            set(r, r - 1, 0);
            set(r - 2, r, -1);
            set(r, r - 2, -1);
            set(p, p, 0);
            set(p, p + 1, 1);
            if f.m == 2 {
                // Here r-2 = n is the odd isotropic row; the generator matrices
                // give the fork node the same sign as a_{n,n+1}.
                set(p, r, 1);
            }
        }
    }
    CartanData::new(a, [p])
}

/// Builds the iterated brackets `e_ij` and bracket shapes over one letter family.
///
/// With `skip` set to `t`, `e_tj` for `j <= t-2` skips index `t-1`
/// (`e_tj = [e_t e_{t-2,j}]`) and `e_{t,t-1}` is undefined.
#[derive(Debug, Clone, Copy)]
pub struct IndexBuilder {
    pub letters: KmLetters,
    pub skip: Option<usize>,
}

impl IndexBuilder {
    pub fn e(&self, i: usize) -> NaWord {
        NaWord::Leaf(self.letters.e(i))
    }

    /// `e_ij` for `i >= j`.
    pub fn eij(&self, i: usize, j: usize) -> NaWord {
        assert!(i >= j && j >= 1, "e_ij needs i >= j >= 1");
        let mut idx: Vec<usize> = (j..=i).rev().collect();
        if let Some(t) = self.skip {
            if i == t && j < t {
                assert!(j <= t - 2, "e_(t,t-1) is not defined");
                idx.retain(|&k| k != t - 1);
            }
        }
        NaWord::right_normed(idx.into_iter().map(|k| self.e(k)).collect())
    }

    pub fn br(a: NaWord, b: NaWord) -> NaWord {
        NaWord::node(a, b)
    }

    /// `[a b c] = [a [b c]]`.
    pub fn right3(a: NaWord, b: NaWord, c: NaWord) -> NaWord {
        NaWord::right_normed(vec![a, b, c])
    }

    /// `{a b c} = [[a b] c]`.
    pub fn left3(a: NaWord, b: NaWord, c: NaWord) -> NaWord {
        NaWord::left_normed(vec![a, b, c])
    }
}

/// Explicit positive relations of a family as bracket trees, with their list labels.
pub fn positive_trees(f: &FamilySpec) -> Vec<(&'static str, NaWord)> {
    let r = f.rank();
    let letters = KmLetters { r };
    let (m, n) = (f.m, f.n);
    let skip = (f.family == Family::D).then_some(r);
    let b = IndexBuilder { letters, skip };
    let e = |i| b.e(i);
    let eij = |i, j| b.eij(i, j);
    use IndexBuilder as B;
    let mut out: Vec<(&'static str, NaWord)> = Vec::new();
    let mut add = |label: &'static str, t: NaWord| out.push((label, t));
    let t = r;
    match f.family {
        Family::Sl => {
            for i in 1..=r {
                for j in 1..i.saturating_sub(1) {
                    add("I", B::br(e(i), e(j)));
                }
            }
            for i in 2..=r {
                for j in 1..i {
                    add("II", B::br(eij(i, j), e(i - 1)));
                }
            }
            for i in 2..=r {
                for j in 2..=i {
                    add("III", B::br(eij(i, j), eij(i, j - 1)));
                }
            }
            for k in 0..n {
                for l in 0..m {
                    let u = eij(m + k, m - l);
                    add("IV", B::br(u.clone(), u));
                }
            }
        }
        Family::B | Family::B0 => {
            let (p4, p5, p6) = if f.family == Family::B {
                ("V", "VI", "VIII")
            } else {
                ("IV", "V", "VI")
            };
            for i in 1..=t {
                for j in 1..i.saturating_sub(1) {
                    add("I", B::br(e(i), e(j)));
                }
            }
            for i in 2..=t {
                for j in 1..i {
                    add("II", B::br(eij(i, j), e(i - 1)));
                }
            }
            for i in 2..t {
                for j in 2..=i {
                    add("III", B::br(eij(i, j), eij(i, j - 1)));
                }
            }
            if f.family == Family::B {
                for k in 0..m {
                    for l in 0..n {
                        let u = eij(n + k, n - l);
                        add("IV", B::br(u.clone(), u));
                    }
                }
            }
            for i in 2..=t {
                for j in 2..=i {
                    add(p4, B::right3(eij(t, i), eij(t, j), eij(t, j - 1)));
                }
            }
            for i in 2..=t {
                for j in 1..i {
                    add(p5, B::left3(eij(t, i), eij(t, j), eij(t, i - 1)));
                }
            }
            if f.family == Family::B {
                for i in n + 1..=t {
                    for j in 1..=n {
                        let u = B::br(eij(t, i), eij(t, j));
                        add("VII", B::br(u.clone(), u));
                    }
                }
            }
            // Runs over every i, not only i <= n: each such product vanishes
            // and the basis count needs all of them.
            for i in 3..=t {
                for j in 2..i {
                    add(
                        p6,
                        B::br(B::br(eij(t, i), eij(t, j)), B::br(eij(t, i), eij(t, j - 1))),
                    );
                }
            }
        }
        Family::C => {
            let s = n - 1;
            for i in 1..=n {
                for j in 1..i.saturating_sub(1) {
                    add("I", B::br(e(i), e(j)));
                }
            }
            for i in 2..n {
                for j in 1..i {
                    add("II", B::br(eij(i, j), e(i - 1)));
                }
            }
            for i in 2..=n {
                for j in 2..=i {
                    add("III", B::br(eij(i, j), eij(i, j - 1)));
                }
            }
            for i in 1..=n {
                let u = eij(i, 1);
                add("IV", B::br(u.clone(), u));
            }
            for j in 1..n {
                for i in 1..=j {
                    add("V", B::left3(eij(n, i), eij(s, j), e(s)));
                }
            }
            for j in 2..n {
                for i in 2..=j {
                    add("VI", B::left3(eij(n, i), eij(s, j), eij(n, i - 1)));
                }
            }
            for i in 2..=n {
                add("VII", B::right3(eij(n, i), eij(n, i), e(s)));
            }
            for j in 2..n {
                let u = B::br(eij(n, 1), eij(s, j));
                add("VIII", B::br(u.clone(), u));
            }
            for j in 2..n {
                for i in 2..j {
                    add(
                        "IX",
                        B::br(B::br(eij(n, i), eij(s, j)), B::br(eij(n, i), eij(s, j - 1))),
                    );
                }
            }
        }
        Family::D => {
            let (s, q) = (t - 1, t - 2);
            for i in 1..=t {
                for j in 1..i.saturating_sub(1) {
                    if (i, j) != (t, q) {
                        add("I", B::br(e(i), e(j)));
                    }
                }
            }
            add("I", B::br(e(t), e(s)));
            for i in 2..t {
                for j in 1..i {
                    add("II", B::br(eij(i, j), e(i - 1)));
                }
            }
            for j in 1..=q {
                add("II", B::br(eij(t, j), e(q)));
            }
            for i in 2..=t {
                for j in 2..=i {
                    if i == t && j > q {
                        continue;
                    }
                    add("III", B::br(eij(i, j), eij(i, j - 1)));
                }
            }
            add("III", B::right3(e(t), e(t), e(q)));
            for i in n + 1..=q {
                add("IV", B::br(eij(t, i), eij(s, i)));
            }
            for k in 0..=m {
                for l in 0..n {
                    let u = eij(n + k, n - l);
                    add("V", B::br(u.clone(), u));
                }
            }
            for j in 2..t {
                for i in 1..j {
                    add("VI", B::left3(eij(t, i), eij(s, j), e(s)));
                }
            }
            for i in 1..=n {
                add("VI", B::left3(eij(t, i), eij(s, i), e(s)));
            }
            // Read as [u [u e_{t-1}]]; the left-normed [[u u] e_{t-1}] vanishes for even u.
            for i in 1..=q {
                add("VII", B::right3(eij(t, i), eij(t, i), e(s)));
            }
            for j in 3..t {
                for i in 2..j {
                    add("VIII", B::left3(eij(t, i), eij(s, j), eij(t, i - 1)));
                }
            }
            for i in 2..=n {
                add("VIII", B::left3(eij(t, i), eij(s, i), eij(t, i - 1)));
            }
            // Includes i <= n as well: each such product vanishes and
            // closure fails without them.
            for i in 1..t {
                for j in i + 1..t {
                    if j == i + 1 && i > n {
                        continue;
                    }
                    add(
                        "IX",
                        B::br(B::br(eij(t, i), eij(s, j)), B::br(eij(t, i), eij(s, j - 1))),
                    );
                }
            }
            for i in 1..=n {
                for j in i + 1..t {
                    let u = B::br(eij(t, i), eij(s, j));
                    add("IX", B::br(u.clone(), u));
                }
            }
        }
    }
    out
}

/// The explicit positive relations, the binomial ones of D included, expanded and monic.
///
/// A tree whose expansion vanishes identically contributes nothing.
pub fn positive_relations(f: &FamilySpec, alphabet: &Alphabet) -> Vec<Poly> {
    let mut polys: Vec<Poly> = Vec::new();
    let mut push = |p: Poly| {
        if let Ok(p) = p.make_monic() {
            if !polys.contains(&p) {
                polys.push(p);
            }
        }
    };
    for (_, t) in positive_trees(f) {
        push(expand_naword(&t, alphabet).expect("letters in range"));
    }
    if f.family == Family::D {
        let r = f.rank();
        let b = IndexBuilder {
            letters: KmLetters { r },
            skip: Some(r),
        };
        for i in 2..=f.n {
            let x = expand_naword(&NaWord::node(b.eij(r, i), b.eij(r - 1, i - 1)), alphabet).expect("in range");
            let y = expand_naword(&NaWord::node(b.eij(r, i - 1), b.eij(r - 1, i)), alphabet).expect("in range");
            push(x.sub(&y));
        }
    }
    polys
}

/// `R(A,τ) = R₊ ∪ W ∪ R₋` for a family, with its Kac-Moody presentation.
#[derive(Debug, Clone)]
pub struct FamilyRelations {
    pub spec: FamilySpec,
    pub presentation: KmPresentation,
    pub r_plus: Vec<Poly>,
    pub r_minus: Vec<Poly>,
    pub set: RelationSet,
}

impl FamilyRelations {
    pub fn alphabet(&self) -> &Alphabet {
        &self.presentation.alphabet
    }

    pub fn letters(&self) -> KmLetters {
        self.presentation.letters
    }

    pub fn r_plus_set(&self) -> RelationSet {
        RelationSet::from_polys(self.alphabet(), &self.r_plus).expect("valid relations")
    }
}

pub fn family_relations(f: &FamilySpec) -> Result<FamilyRelations, ClassicalError> {
    let cartan = family_cartan(f);
    let presentation = kacmoody::build_relations(&cartan)?;
    let r_plus = positive_relations(f, &presentation.alphabet);
    let r_minus: Vec<Poly> = r_plus
        .iter()
        .map(|p| kacmoody::mirror(p, &presentation.letters))
        .collect();
    let mut all = r_plus.clone();
    all.extend(presentation.w.iter().cloned());
    all.extend(r_minus.iter().cloned());
    let set = RelationSet::from_polys(&presentation.alphabet, &all).expect("valid relations");
    Ok(FamilyRelations {
        spec: *f,
        presentation,
        r_plus,
        r_minus,
        set,
    })
}

/// All reduced super-LS monomials up to the family length cap.
pub fn reduced_basis(rel: &FamilyRelations) -> Vec<NaWord> {
    rel.set.enumerate_reduced_super_ls_monomials(rel.spec.length_cap())
}

/// The dimension of the classical superalgebra.
pub fn dimension_formula(f: &FamilySpec) -> usize {
    let (m, n) = (f.m, f.n);
    match f.family {
        Family::Sl => (m + n).pow(2) - 1,
        Family::B => 2 * (m + n).pow(2) + m + 3 * n,
        Family::B0 => 2 * n * n + 3 * n,
        Family::C => 2 * n * n + n - 2,
        Family::D => 2 * (m + n).pow(2) + n - m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn parameter_ranges() {
        assert!(FamilySpec::new(Family::D, 1, 1).is_err());
        assert!(FamilySpec::new(Family::C, 0, 1).is_err());
        assert!(FamilySpec::new(Family::Sl, 0, 1).is_err());
        assert!(FamilySpec::new(Family::B0, 0, 0).is_err());
        assert_eq!("B0".parse::<Family>(), Ok(Family::B0));
        assert!("e8".parse::<Family>().is_err());
    }

    #[test]
    fn cartan_examples() {
        let c = family_cartan(&FamilySpec::sl(2, 1));
        assert_eq!(c.rows(), &[vec![2, -1], vec![-1, 0]]);
        let c = family_cartan(&FamilySpec::b0(2));
        assert_eq!(c.rows(), &[vec![2, -1], vec![-2, 2]]);
        let c = family_cartan(&FamilySpec::d(2, 1));
        assert_eq!(c.rows(), &[vec![0, 1, 1], vec![-1, 2, 0], vec![-1, 0, 2]]);
        assert!(c.is_odd(1));
        let c = family_cartan(&FamilySpec::b(1, 1));
        assert_eq!(c.rows(), &[vec![0, 1], vec![-2, 2]]);
        for f in grid() {
            assert!(family_cartan(&f).validate().is_empty(), "{f}");
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension_formula(&FamilySpec::sl(3, 2)), 24);
        assert_eq!(dimension_formula(&FamilySpec::d(2, 1)), 17);
        assert_eq!(dimension_formula(&FamilySpec::b(1, 1)), 12);
        assert_eq!(dimension_formula(&FamilySpec::c(2)), 8);
        assert_eq!(dimension_formula(&FamilySpec::b0(1)), 5);
    }

    #[test]
    fn eij_builder() {
        let f = FamilySpec::d(2, 1);
        let b = IndexBuilder {
            letters: KmLetters { r: 3 },
            skip: Some(3),
        };
        let rel = family_relations(&f).unwrap();
        assert_eq!(b.eij(3, 1).format(rel.alphabet()), "[e3 e1]");
        assert_eq!(b.eij(2, 1).format(rel.alphabet()), "[e2 e1]");
    }

    #[test]
    fn sl21_relations() {
        let rel = family_relations(&FamilySpec::sl(2, 1)).unwrap();
        let a = rel.alphabet();
        let monic = |s: &str| parse_poly(s, a).unwrap().make_monic().unwrap();
        assert!(rel.r_plus.contains(&monic("[e2 e2]")));
        assert!(rel.r_plus.contains(&monic("[[e2 e1] e1]")));
        assert!(rel.r_plus.contains(&monic("[[e2 e1] [e2 e1]]")));
    }

    #[test]
    fn small_bases_have_the_right_size() {
        for f in [FamilySpec::sl(2, 1), FamilySpec::b0(1), FamilySpec::b(1, 1), FamilySpec::c(2)] {
            let rel = family_relations(&f).unwrap();
            assert_eq!(reduced_basis(&rel).len(), dimension_formula(&f), "{f}");
        }
    }
}
