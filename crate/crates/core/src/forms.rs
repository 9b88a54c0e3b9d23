//! Noncommutative forms over a weighted basis: elements of the free algebra
//! on the generators, with weighted degree, principal part, word-reversal
//! adjoint, realization as enveloping-algebra operators, and the polynomial
//! power bookkeeping used to dominate lower-order terms.

use crate::env::EnvElement;
use crate::scalar::{GaussRational, Rational};
use crate::weighted::{Contraction, WeightedBasis};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FormError {
    #[error("the zero form has no degree")]
    ZeroForm,
    #[error("forms live over different weighted bases")]
    BasisMismatch,
    #[error("word letter {letter} out of range for a basis of {count} generators")]
    LetterOutOfRange { letter: usize, count: usize },
    #[error("no admissible dominating power exists")]
    NoSuchPower,
    #[error("form basis does not match the contraction's defining basis")]
    ContractionMismatch,
}

/// Word over the generators {0,…,d−1}; the empty word is the unit.
pub type Word = Vec<usize>;

pub fn word_length(w: &Word) -> usize {
    w.len()
}

pub fn word_weight(w: &Word, weights: &[Rational]) -> Rational {
    w.iter().map(|&i| weights[i].clone()).sum()
}

pub fn word_reversed(w: &Word) -> Word {
    w.iter().rev().copied().collect()
}

/// Finitely supported C : J(d) → ℂ over a fixed weighted basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    basis: WeightedBasis,
    coeffs: BTreeMap<Word, GaussRational>,
}

impl Form {
    pub fn zero(basis: WeightedBasis) -> Self {
        Form {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn new(basis: WeightedBasis, terms: Vec<(Word, GaussRational)>) -> Result<Self, FormError> {
        let d = basis.len();
        let mut form = Form::zero(basis);
        for (w, c) in terms {
            if let Some(&bad) = w.iter().find(|&&l| l >= d) {
                return Err(FormError::LetterOutOfRange {
                    letter: bad,
                    count: d,
                });
            }
            form.add_term(w, c);
        }
        Ok(form)
    }

    pub fn basis(&self) -> &WeightedBasis {
        &self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<Word, GaussRational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, w: Word, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form, FormError> {
        if self.basis != other.basis {
            return Err(FormError::BasisMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRational) -> Form {
        if c.is_zero() {
            return Form::zero(self.basis.clone());
        }
        Form {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, x)| (w.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Free-algebra (concatenation) product.
    pub fn multiply(&self, other: &Form) -> Result<Form, FormError> {
        if self.basis != other.basis {
            return Err(FormError::BasisMismatch);
        }
        let mut out = Form::zero(self.basis.clone());
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    /// Weighted degree: max ‖α‖ over the support.
    pub fn degree(&self) -> Result<Rational, FormError> {
        let weights = self.basis.weights();
        self.coeffs
            .keys()
            .map(|w| word_weight(w, &weights))
            .max()
            .ok_or(FormError::ZeroForm)
    }

    /// Keeps exactly the terms of top weighted degree.
    pub fn principal_part(&self) -> Result<Form, FormError> {
        let m = self.degree()?;
        let weights = self.basis.weights();
        Ok(Form {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| word_weight(w, &weights) == m)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.principal_part() {
            Ok(p) => p == *self,
            Err(_) => true,
        }
    }

    /// C⁺(α) = (−1)^{|α|} · conj(C(α₊)) with α₊ the reversed word.
    pub fn adjoint(&self) -> Form {
        let mut out = Form::zero(self.basis.clone());
        for (w, c) in &self.coeffs {
            let sign = if w.len() % 2 == 0 {
                GaussRational::one()
            } else {
                -GaussRational::one()
            };
            out.add_term(word_reversed(w), sign * c.conj());
        }
        out
    }

    /// dℛ(C) = Σ C(α) A^α in PBW normal form over the basis's algebra.
    pub fn realize(&self) -> EnvElement {
        let alg = Arc::new(self.basis.algebra().clone());
        let generators: Vec<EnvElement> = self
            .basis
            .elements()
            .iter()
            .map(|(v, _)| EnvElement::from_vector(alg.clone(), v))
            .collect();
        realize_words(alg, &generators, &self.coeffs)
    }

    /// Realizes the symmetrized principal part P + P⁺ over the contraction,
    /// through the induced basis Āⱼ.
    pub fn contracted_principal(&self, k: &Contraction) -> Result<EnvElement, FormError> {
        let induced = k.induced_basis();
        if induced.len() != self.basis.len() || induced.weights() != self.basis.weights() {
            return Err(FormError::ContractionMismatch);
        }
        let p = self.principal_part()?;
        let sym = p.add(&p.adjoint())?;
        let alg = Arc::new(k.algebra().clone());
        let generators: Vec<EnvElement> = induced
            .elements()
            .iter()
            .map(|(v, _)| EnvElement::from_vector(alg.clone(), v))
            .collect();
        Ok(realize_words(alg, &generators, &sym.coeffs))
    }
}

fn realize_words(
    alg: Arc<crate::lie::LieAlgebra>,
    generators: &[EnvElement],
    coeffs: &BTreeMap<Word, GaussRational>,
) -> EnvElement {
    let mut out = EnvElement::zero(alg.clone());
    for (w, c) in coeffs {
        let mut prod = EnvElement::one(alg.clone());
        for &l in w {
            prod = prod.multiply(&generators[l]);
        }
        out = out.add(&prod.scale(c));
    }
    out
}

/// Per-generator verdicts for the even-degree condition m/wᵢ ∈ 2ℕ.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenDegreeReport {
    pub degree: Rational,
    /// m/wᵢ ∈ 2ℕ for each basis generator i.
    pub per_generator: Vec<bool>,
    /// Condition over the full basis.
    pub all_generators: bool,
    /// Generators actually appearing in the form's support.
    pub used: Vec<bool>,
    /// Condition restricted to the used generators.
    pub used_generators: bool,
}

/// m/wᵢ ∈ 2ℕ, reported per generator, over the full basis and over the
/// sub-basis the form actually uses.
pub fn even_degree_report(c: &Form) -> Result<EvenDegreeReport, FormError> {
    let m = c.degree()?;
    let weights = c.basis().weights();
    let per_generator: Vec<bool> = weights
        .iter()
        .map(|w| {
            let q = &m / w;
            q.is_integer() && q.numer().is_positive() && q.numer().is_even()
        })
        .collect();
    let mut used = vec![false; weights.len()];
    for w in c.coeffs().keys() {
        for &l in w {
            used[l] = true;
        }
    }
    let all_generators = per_generator.iter().all(|&b| b);
    let used_generators = per_generator.iter().zip(&used).all(|(&ok, &u)| !u || ok);
    Ok(EvenDegreeReport {
        degree: m,
        per_generator,
        all_generators,
        used,
        used_generators,
    })
}

/// Smallest r ≥ 1 with r·deg(c) > deg(b) and (r·deg(c))/wᵢ ∈ 2ℕ for all i.
///
/// The admissible r form an arithmetic progression (multiples of an L
/// computable from the weights), so the minimum exists whenever the
/// progression is nonempty; with c satisfying the even-degree condition,
/// L = 1.
pub fn minimal_dominating_power(c: &Form, b: &Form) -> Result<u64, FormError> {
    if c.basis() != b.basis() {
        return Err(FormError::BasisMismatch);
    }
    let m = c.degree()?;
    let deg_b = b.degree()?;
    // Per generator: (r·m)/wᵢ ∈ 2ℕ ⟺ r is a multiple of qᵢ (pᵢ even) or
    // 2qᵢ (pᵢ odd), where m/wᵢ = pᵢ/qᵢ in lowest terms.
    let mut step: u64 = 1;
    for w in c.basis().weights() {
        let q = &m / &w;
        let p_even = q.numer().is_even();
        let qi = num_traits::ToPrimitive::to_u64(q.denom()).ok_or(FormError::NoSuchPower)?;
        let li = if p_even { qi } else { 2 * qi };
        step = num_integer::lcm(step, li);
    }
    // Smallest multiple of `step` with r·m > deg_b.
    let mut r = step;
    let cap = 1_000_000u64;
    while Rational::from_integer((r as i64).into()) * &m <= deg_b {
        r += step;
        if r > cap {
            return Err(FormError::NoSuchPower);
        }
    }
    Ok(r)
}
