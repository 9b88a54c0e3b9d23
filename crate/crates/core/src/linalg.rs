//! Exact linear algebra over ℚ: row reduction and canonical subspaces.
//!
//! A [`Subspace`] is stored as the reduced row echelon form of a spanning
//! set, with pivot columns in input coordinate order. Two equal spans
//! therefore produce bit-identical basis matrices, which makes subspace
//! equality (and hence filtration/contraction equality) a structural test.

use crate::scalar::Rational;
use num_traits::{One, Zero};

pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_assign(dst: &mut [Rational], src: &[Rational]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}

pub fn scaled(v: &[Rational], c: &Rational) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn add_scaled(dst: &mut [Rational], src: &[Rational], c: &Rational) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s * c;
    }
}

/// In-place reduced row echelon form. Returns the pivot columns.
pub fn rref(rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].clone().recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let c = -rows[i][col].clone();
                let (head, tail) = rows.split_at_mut(std::cmp::max(i, r));
                let (ri, rr) = if i < r {
                    (&mut head[i], &tail[0])
                } else {
                    (&mut tail[0], &head[r])
                };
                add_scaled(ri, rr, &c);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.retain(|row| !is_zero_vector(row));
    pivots
}

/// A linear subspace of ℚ^n in canonical (RREF) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::span(
            ambient_dim,
            (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)),
        )
    }

    pub fn span<I: IntoIterator<Item = Vector>>(ambient_dim: usize, vectors: I) -> Self {
        let mut rows: Vec<Vector> = vectors.into_iter().collect();
        for row in &rows {
            assert_eq!(row.len(), ambient_dim, "vector length mismatch");
        }
        let pivots = rref(&mut rows);
        Subspace {
            ambient_dim,
            basis: rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical basis rows (RREF).
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).is_none()
    }

    /// Reduces `v` modulo the subspace; `None` if `v` lies in it, otherwise
    /// the nonzero remainder.
    pub fn reduce(&self, v: &[Rational]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = -w[p].clone();
                add_scaled(&mut w, row, &c);
            }
        }
        if is_zero_vector(&w) {
            None
        } else {
            Some(w)
        }
    }

    /// Coordinates of `v` in the given spanning rows, or `None` when `v` is
    /// outside the span. `rows` need not be reduced but must be independent.
    pub fn solve_in_terms_of(rows: &[Vector], v: &[Rational]) -> Option<Vec<Rational>> {
        let n = v.len();
        let k = rows.len();
        // Solve xᵀ·rows = v by Gaussian elimination on the augmented system.
        let mut m: Vec<Vector> = (0..n)
            .map(|j| {
                let mut col: Vector = rows.iter().map(|r| r[j].clone()).collect();
                col.push(v[j].clone());
                col
            })
            .collect();
        // m is n rows of length k+1: [rows^T | v]; eliminate to solve.
        let pivots = rref(&mut m);
        let mut x = vec![Rational::zero(); k];
        for (row, &p) in m.iter().zip(&pivots) {
            if p == k {
                return None; // inconsistent
            }
            x[p] = row[k].clone();
        }
        Some(x)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::span(
            self.ambient_dim,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    /// Intersection via the nullspace of the stacked coefficient system.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let a = &self.basis;
        let b = &other.basis;
        if a.is_empty() || b.is_empty() {
            return Subspace::zero(self.ambient_dim);
        }
        // x = s·A = t·B  ⟺  (s, t) in the nullspace of [Aᵀ | −Bᵀ].
        let ka = a.len();
        let kb = b.len();
        let mut m: Vec<Vector> = (0..self.ambient_dim)
            .map(|j| {
                let mut row: Vector = a.iter().map(|r| r[j].clone()).collect();
                row.extend(b.iter().map(|r| -r[j].clone()));
                row
            })
            .collect();
        let pivots = rref(&mut m);
        // Free columns of the (ka+kb)-variable system give nullspace vectors.
        let total = ka + kb;
        let mut is_pivot = vec![false; total];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut gens = Vec::new();
        for free in (0..total).filter(|&c| !is_pivot[c]) {
            let mut st = vec![Rational::zero(); total];
            st[free] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                st[p] = -row[free].clone();
            }
            // Intersection vector from the A-side coefficients.
            let mut v = zero_vector(self.ambient_dim);
            for (i, row) in a.iter().enumerate() {
                if !st[i].is_zero() {
                    add_scaled(&mut v, row, &st[i]);
                }
            }
            if !is_zero_vector(&v) {
                gens.push(v);
            }
        }
        Subspace::span(self.ambient_dim, gens)
    }
}
