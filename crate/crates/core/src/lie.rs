//! Lie algebras over ℚ given by structure constants, and the basic calculus
//! on them: brackets, the descending central series, generated subalgebras,
//! and the polynomial-growth degree.

use crate::linalg::{
    add_assign, add_scaled, is_zero_vector, unit_vector, zero_vector, Subspace, Vector,
};
use crate::scalar::Rational;
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LieError {
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
    #[error("dimension mismatch: expected vectors of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("algebra is not nilpotent (central series stabilizes at dimension {stable_dim})")]
    NonNilpotent { stable_dim: usize },
    #[error("invalid algebra data: {0}")]
    Invalid(String),
}

/// Finite-dimensional Lie algebra over ℚ with a fixed ordered basis.
///
/// Only the brackets [Xᵢ, Xⱼ] for i < j are stored; antisymmetry is built
/// in. The Jacobi identity is checked at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    names: Vec<String>,
    /// table[i][j - i - 1] = coordinates of [Xᵢ, Xⱼ] for i < j.
    table: Vec<Vec<Vector>>,
}

impl LieAlgebra {
    /// Validates and constructs; `brackets` lists (i, j, [Xᵢ,Xⱼ]) with i < j,
    /// omitted pairs are zero.
    pub fn new(
        names: Vec<String>,
        brackets: Vec<(usize, usize, Vector)>,
    ) -> Result<Self, LieError> {
        let dim = names.len();
        if dim == 0 {
            return Err(LieError::Invalid("dimension must be positive".into()));
        }
        {
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != dim {
                return Err(LieError::Invalid("basis names must be distinct".into()));
            }
        }
        let mut table: Vec<Vec<Vector>> = (0..dim)
            .map(|i| vec![zero_vector(dim); dim - i - 1])
            .collect();
        for (i, j, v) in brackets {
            if i >= j || j >= dim {
                return Err(LieError::Invalid(format!(
                    "bracket indices ({i}, {j}) out of range (need i < j < {dim})"
                )));
            }
            if v.len() != dim {
                return Err(LieError::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            table[i][j - i - 1] = v;
        }
        let alg = LieAlgebra { names, table };
        alg.check_jacobi()?;
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        let names = (1..=dim).map(|i| format!("X{i}")).collect();
        LieAlgebra::new(names, Vec::new()).expect("abelian algebra is valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        self.table
            .iter()
            .all(|row| row.iter().all(|v| is_zero_vector(v)))
    }

    /// [Xᵢ, Xⱼ] as a coordinate vector (any i, j).
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => self.table[i][j - i - 1].clone(),
            Ordering::Greater => {
                let mut v = self.table[j][i - j - 1].clone();
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
                v
            }
            Ordering::Equal => zero_vector(self.dim()),
        }
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let mut res = self.bracket(&self.basis_bracket(i, j), &unit_vector(n, k));
                    add_assign(
                        &mut res,
                        &self.bracket(&self.basis_bracket(j, k), &unit_vector(n, i)),
                    );
                    add_assign(
                        &mut res,
                        &self.bracket(&self.basis_bracket(k, i), &unit_vector(n, j)),
                    );
                    if !is_zero_vector(&res) {
                        return Err(LieError::JacobiViolation {
                            i,
                            j,
                            k,
                            residual: res,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Bilinear extension of the bracket table.
    #[allow(clippy::needless_range_loop)]
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let n = self.dim();
        assert_eq!(u.len(), n, "bracket: left vector length");
        assert_eq!(v.len(), n, "bracket: right vector length");
        let mut out = zero_vector(n);
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                if i < j {
                    add_scaled(&mut out, &self.table[i][j - i - 1], &c);
                } else {
                    add_scaled(&mut out, &self.table[j][i - j - 1], &(-c));
                }
            }
        }
        out
    }

    /// [s, t] ⊆ span of pairwise brackets of basis elements.
    pub fn bracket_subspaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut gens = Vec::new();
        for u in s.basis() {
            for v in t.basis() {
                let w = self.bracket(u, v);
                if !is_zero_vector(&w) {
                    gens.push(w);
                }
            }
        }
        Subspace::span(self.dim(), gens)
    }

    /// Descending central series g = g₍₁₎ ⊇ g₍₂₎ ⊇ …, with g₍ₙ₊₁₎ = [g, g₍ₙ₎].
    ///
    /// The returned terms end with the zero subspace exactly when the algebra
    /// is nilpotent; otherwise the series is returned up to (and including)
    /// its nonzero stable term, flagged by `nilpotent = false`.
    pub fn descending_central_series(&self) -> CentralSeries {
        let full = Subspace::full(self.dim());
        let mut terms = vec![full.clone()];
        loop {
            let last = terms.last().unwrap();
            let next = self.bracket_subspaces(&full, last);
            if next.dim() == last.dim() {
                // Stabilized at a nonzero term (next ⊆ last always holds).
                return CentralSeries {
                    terms,
                    nilpotent: false,
                };
            }
            let done = next.is_zero();
            terms.push(next);
            if done {
                return CentralSeries {
                    terms,
                    nilpotent: true,
                };
            }
        }
    }

    /// Smallest bracket-closed subspace containing the generators.
    pub fn generated_subalgebra(&self, gens: &[Vector]) -> Subspace {
        assert!(!gens.is_empty(), "generator list must be nonempty");
        let mut span = Subspace::span(self.dim(), gens.to_vec());
        loop {
            let grown = span.sum(&self.bracket_subspaces(&span, &span));
            if grown.dim() == span.dim() {
                return span;
            }
            span = grown;
        }
    }

    /// Guivarc'h polynomial-growth degree Q_G = Σⱼ dim g₍ⱼ₎.
    pub fn guivarch_growth_degree(&self) -> Result<usize, LieError> {
        let series = self.descending_central_series();
        if !series.nilpotent {
            return Err(LieError::NonNilpotent {
                stable_dim: series.terms.last().unwrap().dim(),
            });
        }
        Ok(series.terms.iter().map(|s| s.dim()).sum())
    }

    /// Same algebra with basis order permuted: new basis k ↦ old basis perm[k].
    pub fn permuted(&self, perm: &[usize]) -> LieAlgebra {
        let n = self.dim();
        assert_eq!(perm.len(), n);
        let names = perm.iter().map(|&p| self.names[p].clone()).collect();
        let mut inv = vec![0usize; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let old = self.basis_bracket(perm[i], perm[j]);
                if is_zero_vector(&old) {
                    continue;
                }
                let mut v = zero_vector(n);
                for (k, c) in old.into_iter().enumerate() {
                    v[inv[k]] = c;
                }
                brackets.push((i, j, v));
            }
        }
        LieAlgebra::new(names, brackets).expect("permutation preserves Jacobi")
    }

    /// Permutes vector coordinates along with `permuted`.
    pub fn permute_vector(&self, perm: &[usize], v: &[Rational]) -> Vector {
        perm.iter().map(|&p| v[p].clone()).collect()
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}, basis {:?})", self.dim(), self.names)
    }
}

#[derive(Clone, Debug)]
pub struct CentralSeries {
    pub terms: Vec<Subspace>,
    pub nilpotent: bool,
}

impl CentralSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|s| s.dim()).collect()
    }

    /// Nilpotency step s: the last n with g₍ₙ₎ ≠ 0.
    pub fn step(&self) -> Option<usize> {
        self.nilpotent.then(|| self.terms.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{heisenberg, n23, sl2};
    use crate::scalar::rat_int;

    #[test]
    fn heisenberg_accepted() {
        let h = heisenberg();
        assert_eq!(h.dim(), 3);
    }

    #[test]
    fn n23_accepted_and_mutation_rejected() {
        let _ = n23();
        let names: Vec<String> = ["X1", "X2", "Y", "T1", "T2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let base = vec![
            (0, 1, unit_vector(5, 2)),
            (0, 2, unit_vector(5, 3)),
            (1, 2, unit_vector(5, 4)),
        ];
        // Adding [X1, T1] = T2 keeps Jacobi (the new bracket only feeds the
        // 1-dim top layer; every triple still cancels).
        let mut with_t1 = base.clone();
        with_t1.push((0, 3, unit_vector(5, 4)));
        assert!(LieAlgebra::new(names.clone(), with_t1).is_ok());
        // Adding [X1, T2] = T1 breaks Jacobi on (X1, X2, Y).
        let mut with_t2 = base;
        with_t2.push((0, 4, unit_vector(5, 3)));
        match LieAlgebra::new(names, with_t2) {
            Err(LieError::JacobiViolation {
                i: 0,
                j: 1,
                k: 2,
                residual,
            }) => {
                assert!(!is_zero_vector(&residual));
            }
            other => panic!("expected JacobiViolation, got {other:?}"),
        }
    }

    #[test]
    fn bracket_examples() {
        let h = heisenberg();
        assert_eq!(
            h.bracket(&unit_vector(3, 0), &unit_vector(3, 1)),
            unit_vector(3, 2)
        );
        let u = vec![rat_int(2), rat_int(-1), rat_int(5)];
        assert!(is_zero_vector(&h.bracket(&u, &u)));

        // N₂,₃: [X1 + X2, Y] = T1 + T2
        let n = n23();
        let mut x12 = zero_vector(5);
        x12[0] = rat_int(1);
        x12[1] = rat_int(1);
        let mut t12 = zero_vector(5);
        t12[3] = rat_int(1);
        t12[4] = rat_int(1);
        assert_eq!(n.bracket(&x12, &unit_vector(5, 2)), t12);
    }

    #[test]
    fn central_series_dims() {
        assert_eq!(
            LieAlgebra::abelian(3).descending_central_series().dims(),
            vec![3, 0]
        );
        assert_eq!(n23().descending_central_series().dims(), vec![5, 3, 2, 0]);
        let s = sl2().descending_central_series();
        assert!(!s.nilpotent);
        assert_eq!(s.terms.last().unwrap().dim(), 3);
    }

    #[test]
    fn generated_subalgebras() {
        let h = heisenberg();
        let full = h.generated_subalgebra(&[unit_vector(3, 0), unit_vector(3, 1)]);
        assert_eq!(full.dim(), 3);

        let n = n23();
        let full = n.generated_subalgebra(&[unit_vector(5, 0), unit_vector(5, 1)]);
        assert_eq!(full.dim(), 5);
        let center = n.generated_subalgebra(&[unit_vector(5, 3), unit_vector(5, 4)]);
        assert_eq!(center.dim(), 2);
    }

    #[test]
    fn growth_degrees() {
        assert_eq!(LieAlgebra::abelian(4).guivarch_growth_degree().unwrap(), 4);
        assert_eq!(heisenberg().guivarch_growth_degree().unwrap(), 4);
        assert_eq!(n23().guivarch_growth_degree().unwrap(), 10);
        assert!(matches!(
            sl2().guivarch_growth_degree(),
            Err(LieError::NonNilpotent { stable_dim: 3 })
        ));
    }

    #[test]
    fn series_terms_are_ideals() {
        let n = n23();
        let series = n.descending_central_series();
        let full = Subspace::full(5);
        for w in series.terms.windows(2) {
            assert!(w[0].contains_subspace(&w[1]));
            let br = n.bracket_subspaces(&full, &w[0]);
            assert!(w[1].contains_subspace(&br));
        }
    }
}
