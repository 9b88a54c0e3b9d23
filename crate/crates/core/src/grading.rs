//! Homogeneous (graded) Lie algebra structures: degree maps realizing
//! automorphic dilations, the homogeneous dimension, stratification, and
//! the growth dichotomy against the Guivarc'h degree.

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{unit_vector, Subspace, Vector};
use crate::scalar::{format_rational, rational_pow, Rational};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GradingError {
    #[error("graded bracket violated at basis pair ({i}, {j}): component {component} of [X_{i}, X_{j}] has degree {got}, expected {expected}")]
    GradingViolation {
        i: usize,
        j: usize,
        component: usize,
        got: String,
        expected: String,
    },
    #[error("degree {0} is below the normalization bound 1")]
    DegreeBelowOne(String),
    #[error("degree list has length {got}, algebra has dimension {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("t^{exponent} is irrational for t = {t}")]
    IrrationalPower { t: String, exponent: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A degree map on the fixed basis realizing automorphic dilations
/// δ_t(Xᵢ) = t^{degree(i)} Xᵢ. Every degree is ≥ 1 and the bracket is
/// graded; both are checked at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Grading {
    algebra: LieAlgebra,
    degrees: Vec<Rational>,
}

impl Grading {
    pub fn new(algebra: LieAlgebra, degrees: Vec<Rational>) -> Result<Self, GradingError> {
        let n = algebra.dim();
        if degrees.len() != n {
            return Err(GradingError::LengthMismatch {
                got: degrees.len(),
                expected: n,
            });
        }
        let one = Rational::one();
        for d in &degrees {
            if d < &one {
                return Err(GradingError::DegreeBelowOne(format_rational(d)));
            }
        }
        // [Wλ, Wμ] ⊆ W_{λ+μ}: every component of [Xᵢ, Xⱼ] lives in degree
        // degrees[i] + degrees[j].
        for i in 0..n {
            for j in (i + 1)..n {
                let b = algebra.basis_bracket(i, j);
                let expected = &degrees[i] + &degrees[j];
                for (k, c) in b.iter().enumerate() {
                    if !c.is_zero() && degrees[k] != expected {
                        return Err(GradingError::GradingViolation {
                            i,
                            j,
                            component: k,
                            got: format_rational(&degrees[k]),
                            expected: format_rational(&expected),
                        });
                    }
                }
            }
        }
        let grading = Grading { algebra, degrees };
        // Gradings force nilpotency (degrees grow along brackets).
        debug_assert!(grading.algebra.descending_central_series().nilpotent);
        Ok(grading)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn degrees(&self) -> &[Rational] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &Rational {
        &self.degrees[i]
    }

    /// Distinct degrees λ₁ < … < λ_k.
    pub fn layers(&self) -> Vec<Rational> {
        let mut ls = self.degrees.clone();
        ls.sort();
        ls.dedup();
        ls
    }

    /// W_λ: span of the basis vectors of degree exactly λ.
    pub fn layer_space(&self, lambda: &Rational) -> Subspace {
        let n = self.algebra.dim();
        Subspace::span(
            n,
            self.degrees
                .iter()
                .enumerate()
                .filter(|(_, d)| *d == lambda)
                .map(|(i, _)| unit_vector(n, i)),
        )
    }

    /// Q_δ = tr B = Σᵢ degree(i).
    pub fn homogeneous_dimension(&self) -> Rational {
        self.degrees.iter().cloned().sum()
    }

    /// Stratified ⟺ W₁ generates the algebra.
    pub fn is_stratified(&self) -> bool {
        let w1 = self.layer_space(&Rational::one());
        if w1.is_zero() {
            return false;
        }
        let gens: Vec<Vector> = w1.basis().to_vec();
        self.algebra.generated_subalgebra(&gens).dim() == self.algebra.dim()
    }

    /// δ_t applied componentwise: vᵢ ↦ t^{degree(i)} vᵢ. Exact only; errors
    /// when some t^{degree(i)} is irrational.
    pub fn dilate_vector(&self, t: &Rational, v: &[Rational]) -> Result<Vector, GradingError> {
        assert!(t > &Rational::zero(), "dilation parameter must be positive");
        assert_eq!(v.len(), self.algebra.dim());
        v.iter()
            .zip(&self.degrees)
            .map(|(x, d)| {
                let factor = rational_pow(t, d).ok_or_else(|| GradingError::IrrationalPower {
                    t: format_rational(t),
                    exponent: format_rational(d),
                })?;
                Ok(x * factor)
            })
            .collect()
    }
}

/// Q_δ vs Q_G report: the dichotomy Q_δ ≥ Q_G with equality iff stratified,
/// plus the layer containment g₍ₙ₎ ⊆ ⊕_{λ≥n} W_λ.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiEquivalenceReport {
    pub q_delta: Rational,
    pub q_growth: usize,
    pub stratified: bool,
    pub dichotomy_ok: bool,
}

pub fn quasiequivalence_report(gr: &Grading) -> Result<QuasiEquivalenceReport, GradingError> {
    let q_delta = gr.homogeneous_dimension();
    let q_growth = gr.algebra().guivarch_growth_degree()?;
    let stratified = gr.is_stratified();
    let qg = Rational::from_integer((q_growth as i64).into());
    let dichotomy_ok = q_delta >= qg && ((q_delta == qg) == stratified);
    assert!(
        dichotomy_ok,
        "growth dichotomy failed: Q_δ = {}, Q_G = {}, stratified = {}",
        format_rational(&q_delta),
        q_growth,
        stratified
    );

    // g₍ₙ₎ ⊆ ⊕_{λ ≥ n} W_λ for every n.
    let series = gr.algebra().descending_central_series();
    let dim = gr.algebra().dim();
    for (idx, term) in series.terms.iter().enumerate() {
        let n = Rational::from_integer(((idx + 1) as i64).into());
        let upper = Subspace::span(
            dim,
            gr.degrees()
                .iter()
                .enumerate()
                .filter(|(_, d)| **d >= n)
                .map(|(i, _)| unit_vector(dim, i)),
        );
        assert!(
            upper.contains_subspace(term),
            "central series term {} escapes the degree-≥{} layers",
            idx + 1,
            idx + 1
        );
    }

    Ok(QuasiEquivalenceReport {
        q_delta,
        q_growth,
        stratified,
        dichotomy_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{heisenberg, n23};
    use crate::scalar::{rat, rat_int};

    fn degrees(ds: &[i64]) -> Vec<Rational> {
        ds.iter().map(|&d| rat_int(d)).collect()
    }

    #[test]
    fn n23_grading_accepted() {
        let gr = Grading::new(n23(), degrees(&[1, 1, 2, 3, 3])).unwrap();
        assert_eq!(gr.homogeneous_dimension(), rat_int(10));
        assert!(gr.is_stratified());
    }

    #[test]
    fn heisenberg_flat_degrees_rejected() {
        let err = Grading::new(heisenberg(), degrees(&[1, 1, 1])).unwrap_err();
        assert!(matches!(
            err,
            GradingError::GradingViolation { i: 0, j: 1, .. }
        ));
    }

    #[test]
    fn abelian_any_degrees() {
        let gr = Grading::new(LieAlgebra::abelian(2), vec![rat_int(1), rat(3, 2)]).unwrap();
        assert_eq!(gr.homogeneous_dimension(), rat(5, 2));
        assert!(!gr.is_stratified());
    }

    #[test]
    fn quasiequivalence_reports() {
        let r = quasiequivalence_report(&Grading::new(n23(), degrees(&[1, 1, 2, 3, 3])).unwrap())
            .unwrap();
        assert_eq!(r.q_delta, rat_int(10));
        assert_eq!(r.q_growth, 10);
        assert!(r.stratified && r.dichotomy_ok);

        let r = quasiequivalence_report(
            &Grading::new(LieAlgebra::abelian(2), vec![rat_int(1), rat(3, 2)]).unwrap(),
        )
        .unwrap();
        assert_eq!(r.q_delta, rat(5, 2));
        assert_eq!(r.q_growth, 2);
        assert!(!r.stratified && r.dichotomy_ok);

        let r = quasiequivalence_report(&Grading::new(heisenberg(), degrees(&[1, 1, 2])).unwrap())
            .unwrap();
        assert_eq!(r.q_delta, rat_int(4));
        assert_eq!(r.q_growth, 4);
        assert!(r.stratified && r.dichotomy_ok);
    }

    #[test]
    fn dilations_scale_and_compose() {
        let gr = Grading::new(heisenberg(), degrees(&[1, 1, 2])).unwrap();
        let z = unit_vector(3, 2);
        assert_eq!(
            gr.dilate_vector(&rat_int(2), &z).unwrap(),
            vec![rat_int(0), rat_int(0), rat_int(4)]
        );
        let v = vec![rat_int(3), rat_int(-1), rat_int(7)];
        let st = gr.dilate_vector(&rat_int(6), &v).unwrap();
        let s_then_t = gr
            .dilate_vector(&rat_int(2), &gr.dilate_vector(&rat_int(3), &v).unwrap())
            .unwrap();
        assert_eq!(st, s_then_t);
    }

    #[test]
    fn dilation_is_automorphism() {
        let gr = Grading::new(n23(), degrees(&[1, 1, 2, 3, 3])).unwrap();
        let alg = gr.algebra().clone();
        let t = rat_int(3);
        let u = vec![rat_int(1), rat_int(2), rat_int(0), rat_int(-1), rat_int(5)];
        let v = vec![rat_int(0), rat_int(1), rat_int(4), rat_int(2), rat_int(0)];
        let lhs = gr.dilate_vector(&t, &alg.bracket(&u, &v)).unwrap();
        let rhs = alg.bracket(
            &gr.dilate_vector(&t, &u).unwrap(),
            &gr.dilate_vector(&t, &v).unwrap(),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fractional_dilation_needs_perfect_power() {
        let gr = Grading::new(LieAlgebra::abelian(2), vec![rat_int(1), rat(3, 2)]).unwrap();
        let v = vec![rat_int(1), rat_int(1)];
        // 4^{3/2} = 8
        assert_eq!(
            gr.dilate_vector(&rat_int(4), &v).unwrap(),
            vec![rat_int(4), rat_int(8)]
        );
        assert!(matches!(
            gr.dilate_vector(&rat_int(2), &v),
            Err(GradingError::IrrationalPower { .. })
        ));
    }

    #[test]
    fn degree_normalization_enforced() {
        assert!(matches!(
            Grading::new(LieAlgebra::abelian(1), vec![rat(1, 2)]),
            Err(GradingError::DegreeBelowOne(_))
        ));
    }
}
