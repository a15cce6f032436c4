//! Structure constants over a reduced basis, and PBW monomials of the
//! enveloping algebra.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::alphabet::{Alphabet, Parity};
use crate::rewrite::{RelationSet, RewriteError};
use crate::superalgebra::{expand_naword, super_bracket, LieBasisCache, Poly, Rational};
use crate::words::{remove_brackets, NaWord, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("normal form of [{0}, {1}] leaves the basis")]
    OutsideBasis(usize, usize),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Sparse coordinates on the basis: `(index, coefficient)`, ascending index.
pub type Coords = Vec<(usize, Rational)>;

/// `[z_a, z_b] = Σ_k α^k_ab z_k` over a basis of reduced monomials.
#[derive(Debug, Clone)]
pub struct StructureTable {
    pub basis: Vec<NaWord>,
    pub parities: Vec<Parity>,
    /// `table[a][b]` holds the coordinates of `[z_a, z_b]`.
    pub table: Vec<Vec<Coords>>,
}

/// Computes every bracket of basis elements via Lie normal forms modulo `gsb`.
pub fn structure_constants(basis: &[NaWord], gsb: &RelationSet) -> Result<StructureTable, StructureError> {
    let alphabet = gsb.alphabet();
    let index: BTreeMap<Word, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, t)| (remove_brackets(t), i))
        .collect();
    let polys: Vec<Poly> = basis
        .iter()
        .map(|t| expand_naword(t, alphabet).expect("letters in range"))
        .collect();
    let parities: Vec<Parity> = basis
        .iter()
        .map(|t| alphabet.parity_of(&remove_brackets(t)))
        .collect();
    let mut cache = LieBasisCache::new();
    let mut table = Vec::with_capacity(basis.len());
    for a in 0..basis.len() {
        let mut row = Vec::with_capacity(basis.len());
        for b in 0..basis.len() {
            let p = super_bracket(&polys[a], &polys[b], alphabet).expect("homogeneous basis elements");
            let nf = gsb.normal_form_lie_cached(&p, &mut cache)?;
            let mut coords: Coords = nf
                .coords
                .into_iter()
                .map(|(w, c)| index.get(&w).map(|&k| (k, c)).ok_or(StructureError::OutsideBasis(a, b)))
                .collect::<Result<_, _>>()?;
            coords.sort_by_key(|(k, _)| *k);
            row.push(coords);
        }
        table.push(row);
    }
    Ok(StructureTable {
        basis: basis.to_vec(),
        parities,
        table,
    })
}

fn add_into(acc: &mut BTreeMap<usize, Rational>, coords: &Coords, c: &Rational) {
    for (k, v) in coords {
        let e = acc.entry(*k).or_insert_with(Rational::zero);
        *e = &*e + &(v * c);
    }
}

fn cleaned(acc: BTreeMap<usize, Rational>) -> Coords {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl StructureTable {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn sign(&self, a: usize, b: usize) -> Rational {
        Rational::from_int(if self.parities[a].is_odd() && self.parities[b].is_odd() {
            -1
        } else {
            1
        })
    }

    /// `[z_a, v]` for `v` given in coordinates.
    pub fn bracket_left(&self, a: usize, v: &Coords) -> Coords {
        let mut acc = BTreeMap::new();
        for (k, c) in v {
            add_into(&mut acc, &self.table[a][*k], c);
        }
        cleaned(acc)
    }

    /// `[v, z_c]` for `v` given in coordinates.
    pub fn bracket_right(&self, v: &Coords, c: usize) -> Coords {
        let mut acc = BTreeMap::new();
        for (k, x) in v {
            add_into(&mut acc, &self.table[*k][c], x);
        }
        cleaned(acc)
    }

    /// Pairs `(a, b)` violating `[z_a, z_b] = -(-1)^(|a||b|) [z_b, z_a]`.
    pub fn antisymmetry_failures(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.dim() {
            for b in a..self.dim() {
                let mut acc = BTreeMap::new();
                add_into(&mut acc, &self.table[a][b], &Rational::one());
                add_into(&mut acc, &self.table[b][a], &self.sign(a, b));
                if !cleaned(acc).is_empty() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Triples violating `[a,[b,c]] = [[a,b],c] + (-1)^(|a||b|) [b,[a,c]]`.
    pub fn jacobi_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let ab = &self.table[a][b];
                for c in 0..n {
                    let lhs = self.bracket_left(a, &self.table[b][c]);
                    let mut acc = BTreeMap::new();
                    add_into(&mut acc, &lhs, &Rational::one());
                    add_into(&mut acc, &self.bracket_right(ab, c), &Rational::from_int(-1));
                    let s = self.sign(a, b);
                    add_into(&mut acc, &self.bracket_left(b, &self.table[a][c]), &-&s);
                    if !cleaned(acc).is_empty() {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Even and odd basis counts.
    pub fn parity_dims(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }
}

/// Nondecreasing index sequences of length at most `max_degree`, strictly
/// increasing at repeated odd indices, grouped by length.
pub fn enumerate_pbw_basis(parities: &[Parity], max_degree: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new(); max_degree + 1];
    let mut stack = Vec::new();
    fn go(
        parities: &[Parity],
        max_degree: usize,
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        out[stack.len()].push(stack.clone());
        if stack.len() == max_degree {
            return;
        }
        for i in start..parities.len() {
            if parities[i].is_odd() && stack.last() == Some(&i) {
                continue;
            }
            stack.push(i);
            go(parities, max_degree, i, stack, out);
            stack.pop();
        }
    }
    go(parities, max_degree, 0, &mut stack, &mut out);
    out
}

/// Per-degree PBW counts.
pub fn pbw_counts(parities: &[Parity], max_degree: usize) -> Vec<u64> {
    enumerate_pbw_basis(parities, max_degree)
        .iter()
        .map(|v| v.len() as u64)
        .collect()
}

/// Coefficients of `Π (1 + t^{w})` over odd and `Π 1/(1 - t^{w})` over even
/// generators of weight `w`, through `t^max_degree`.
pub fn supercommutative_series(weights: &[(usize, Parity)], max_degree: usize) -> Vec<u64> {
    let mut s = vec![0u64; max_degree + 1];
    s[0] = 1;
    for &(w, p) in weights {
        assert!(w > 0, "weights must be positive");
        if p.is_odd() {
            for k in (w..=max_degree).rev() {
                s[k] += s[k - w];
            }
        } else {
            for k in w..=max_degree {
                s[k] += s[k - w];
            }
        }
    }
    s
}

/// Basis monomials as `(length, parity)` weights.
pub fn basis_weights(basis: &[NaWord], alphabet: &Alphabet) -> Vec<(usize, Parity)> {
    basis
        .iter()
        .map(|t| {
            let w = remove_brackets(t);
            (w.len(), alphabet.parity_of(&w))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{family_relations, matrix, reduced_basis, FamilySpec};
    use Parity::{Even, Odd};

    #[test]
    fn pbw_examples() {
        assert_eq!(pbw_counts(&[Even], 3), vec![1, 1, 1, 1]);
        assert_eq!(pbw_counts(&[Odd], 3), vec![1, 1, 0, 0]);
        let p = [Even, Even, Even, Even, Odd, Odd, Odd, Odd];
        // (1+t)^4/(1-t)^4 has t^2 coefficient 10 + 16 + 6 = 32.
        assert_eq!(pbw_counts(&p, 2)[2], 32);
        let unit: Vec<(usize, Parity)> = p.iter().map(|&q| (1, q)).collect();
        assert_eq!(supercommutative_series(&unit, 4), pbw_counts(&p, 4));
    }

    #[test]
    fn sl21_table_matches_matrices() {
        let f = FamilySpec::sl(2, 1);
        let rel = family_relations(&f).unwrap();
        let basis = reduced_basis(&rel);
        let t = structure_constants(&basis, &rel.set).unwrap();
        assert!(t.antisymmetry_failures().is_empty());
        assert!(t.jacobi_failures().is_empty());
        assert_eq!(t.parity_dims(), (4, 4));
        let rep = matrix::matrix_generators(&f);
        let x = rel.letters();
        let images: Vec<matrix::Matrix> = basis
            .iter()
            .map(|b| rep.evaluate(&expand_naword(b, rel.alphabet()).unwrap(), &x))
            .collect();
        for a in 0..t.dim() {
            for b in 0..t.dim() {
                let lhs = rep.bracket(&images[a], &images[b]).unwrap();
                let mut rhs = matrix::Matrix::zero(rep.size);
                for (k, c) in &t.table[a][b] {
                    rhs.add_scaled(&images[*k], c);
                }
                assert_eq!(lhs, rhs, "{a} {b}");
            }
        }
    }
}
