//! Abelianization invariants via Smith normal form over any integer type.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::presentation::Presentation;

/// Integer scalar usable in Smith normal form (`i64`, `i128`, `BigInt`).
pub trait IntegerScalar: Integer + Signed + Clone + Debug + From<i64> {}

impl<T> IntegerScalar for T where T: Integer + Signed + Clone + Debug + From<i64> {}

/// Smith-normal-form diagonal of the exponent-sum matrix, padded with zeros
/// to one entry per generator. `H_1 ≅ ⊕ ℤ/d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants<T> {
    pub diagonal: Vec<T>,
}

impl<T: IntegerScalar> AbelianInvariants<T> {
    pub fn of(p: &Presentation) -> Self {
        let matrix: Vec<Vec<T>> = p
            .exponent_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(T::from).collect())
            .collect();
        let mut diagonal = smith_diagonal(matrix, p.relators().len());
        diagonal.resize(p.generator_count(), T::zero());
        AbelianInvariants { diagonal }
    }

    /// Rank of the free part.
    pub fn betti_number(&self) -> usize {
        self.diagonal.iter().filter(|d| d.is_zero()).count()
    }

    /// Nontrivial torsion coefficients.
    pub fn torsion(&self) -> Vec<T> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

/// Diagonal entries `d_1 | d_2 | … | d_r, 0, …` (non-negative) of the Smith
/// normal form of a `rows × cols` matrix, length `min(rows, cols)`.
#[allow(clippy::needless_range_loop)]
pub fn smith_diagonal<T: IntegerScalar>(mut a: Vec<Vec<T>>, cols: usize) -> Vec<T> {
    let rows = a.len();
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // pivot: least nonzero absolute value in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(a, n);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = a[t][j].clone() * q.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = row[t].clone() * q.clone();
                    row[j] = row[j].clone() - v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offending {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] = a[t][j].clone() + v;
                    }
                }
                None => break,
            }
        }
    }
    finish(a, n)
}

fn finish<T: IntegerScalar>(a: Vec<Vec<T>>, n: usize) -> Vec<T> {
    (0..n).map(|t| a[t][t].abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn invariants(text: &str) -> Vec<i64> {
        AbelianInvariants::<i64>::of(&Presentation::parse(text).unwrap()).diagonal
    }

    #[test]
    fn cyclic_of_order_two() {
        assert_eq!(invariants("gens: x; rel: x x"), vec![2]);
    }

    #[test]
    fn heisenberg_is_z_squared() {
        let d = invariants(
            "gens: x y z; rel: x y x^-1 y^-1 z^-1; rel: x z x^-1 z^-1; rel: y z y^-1 z^-1",
        );
        assert_eq!(d, vec![1, 0, 0]);
    }

    #[test]
    fn free_group_is_all_zero() {
        assert_eq!(invariants("gens: a b c"), vec![0, 0, 0]);
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(invariants("gens: x y; rel: x^2; rel: y^3"), vec![1, 6]);
        assert_eq!(invariants("gens: x y; rel: x^4; rel: y^6"), vec![2, 12]);
    }

    #[test]
    fn bigint_agrees_with_i64() {
        let p = Presentation::parse("gens: x y; rel: x^4 y^2; rel: y^6 x^-2").unwrap();
        let small = AbelianInvariants::<i64>::of(&p).diagonal;
        let big = AbelianInvariants::<BigInt>::of(&p).diagonal;
        assert_eq!(big, small.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
