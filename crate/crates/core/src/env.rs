//! PBW normal-form arithmetic in the universal enveloping algebra U(g).
//!
//! Elements are stored as finitely supported maps from exponent vectors to
//! Gaussian-rational coefficients; the monomial X₁^{e₁}⋯X_N^{e_N} follows
//! the algebra's basis order. Products are straightened by the rewrite
//! XⱼXᵢ → XᵢXⱼ + [Xⱼ, Xᵢ] (j > i), which terminates by the usual
//! length/disorder argument.

use crate::grading::Grading;
use crate::lie::LieAlgebra;
use crate::linalg::Vector;
use crate::scalar::{format_gauss, format_rational, GaussRational, Rational};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use thiserror::Error;

pub type Exponent = Vec<u32>;

#[derive(Debug, Error, PartialEq)]
pub enum EnvError {
    #[error("operands live over different algebras")]
    AlgebraMismatch,
    #[error("element is inhomogeneous: monomials of degrees {a} and {b}")]
    Inhomogeneous { a: String, b: String },
    #[error("operator {index} is not formally self-adjoint")]
    NotSelfAdjoint { index: usize },
    #[error("operators {i} and {j} do not commute")]
    NotCommuting {
        i: usize,
        j: usize,
        commutator: Box<EnvElement>,
    },
    #[error("map is not a derivation: Leibniz fails on basis pair ({i}, {j})")]
    NotADerivation { i: usize, j: usize },
    #[error("homogeneity degrees admit no common multiple")]
    NoCommonMultiple,
    #[error("no admissible dominating power below the search cap")]
    NoSuchPower,
}

/// Element of U(g) in PBW normal form.
#[derive(Clone, Debug)]
pub struct EnvElement {
    algebra: Arc<LieAlgebra>,
    terms: BTreeMap<Exponent, GaussRational>,
}

impl PartialEq for EnvElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.terms == other.terms
    }
}

impl EnvElement {
    pub fn zero(algebra: Arc<LieAlgebra>) -> Self {
        EnvElement {
            algebra,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: Arc<LieAlgebra>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; algebra.dim()], GaussRational::one());
        EnvElement { algebra, terms }
    }

    pub fn generator(algebra: Arc<LieAlgebra>, i: usize) -> Self {
        let mut e = vec![0; algebra.dim()];
        e[i] += 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, GaussRational::one());
        EnvElement { algebra, terms }
    }

    /// Degree-1 element Σ vᵢ Xᵢ from a coordinate vector over ℚ.
    pub fn from_vector(algebra: Arc<LieAlgebra>, v: &[Rational]) -> Self {
        assert_eq!(v.len(), algebra.dim());
        let mut terms = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; algebra.dim()];
                e[i] = 1;
                terms.insert(e, GaussRational::new(c.clone(), Rational::zero()));
            }
        }
        EnvElement { algebra, terms }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_scaled(&mut self, e: Exponent, c: GaussRational) {
        if c.re.is_zero() && c.im.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.re.is_zero() && sum.im.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_algebra(other), "algebra mismatch in add");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_scaled(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-GaussRational::one()))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return EnvElement::zero(self.algebra.clone());
        }
        EnvElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussRational::one())
    }

    /// PBW product. Straightening work is cached per call.
    pub fn multiply(&self, other: &Self) -> Self {
        assert!(self.same_algebra(other), "algebra mismatch in multiply");
        let mut scratch = Scratch::default();
        let mut prefix_cache: HashMap<Exponent, EnvElement> = HashMap::new();
        prefix_cache.insert(vec![0; self.algebra.dim()], self.clone());
        let mut out = EnvElement::zero(self.algebra.clone());
        for (f, c) in &other.terms {
            let prod = self.times_monomial(f, &mut prefix_cache, &mut scratch);
            for (e, x) in &prod.terms {
                out.insert_scaled(e.clone(), x.clone() * c.clone());
            }
        }
        out
    }

    fn times_monomial(
        &self,
        f: &Exponent,
        cache: &mut HashMap<Exponent, EnvElement>,
        scratch: &mut Scratch,
    ) -> EnvElement {
        if let Some(hit) = cache.get(f) {
            return hit.clone();
        }
        let top = f
            .iter()
            .rposition(|&x| x > 0)
            .expect("zero exponent is pre-seeded in the cache");
        let mut parent = f.clone();
        parent[top] -= 1;
        let partial = self.times_monomial(&parent, cache, scratch);
        let result = partial.mul_gen(top, scratch);
        cache.insert(f.clone(), result.clone());
        result
    }

    /// Right multiplication by the generator Xⱼ.
    fn mul_gen(&self, j: usize, scratch: &mut Scratch) -> Self {
        let mut out = EnvElement::zero(self.algebra.clone());
        for (e, c) in &self.terms {
            let straightened = mono_times_gen(&self.algebra, e, j, scratch);
            for (g, x) in straightened.iter() {
                out.insert_scaled(g.clone(), x.clone() * c.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = EnvElement::one(self.algebra.clone());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.multiply(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base);
            }
        }
        result
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.multiply(other).sub(&other.multiply(self))
    }

    /// Formal adjoint with respect to the right Haar measure: the unique
    /// conjugate-linear antiautomorphism with X ↦ −X on g.
    pub fn adjoint(&self) -> Self {
        let n = self.algebra.dim();
        let mut scratch = Scratch::default();
        let mut out = EnvElement::zero(self.algebra.clone());
        for (e, c) in &self.terms {
            let len: u32 = e.iter().sum();
            // (X^e)⁺ = (−1)^{|e|} X_N^{e_N} ⋯ X_1^{e_1}, restraightened.
            let mut prod = EnvElement::one(self.algebra.clone());
            for i in (0..n).rev() {
                for _ in 0..e[i] {
                    prod = prod.mul_gen(i, &mut scratch);
                }
            }
            let sign = if len.is_multiple_of(2) {
                GaussRational::one()
            } else {
                -GaussRational::one()
            };
            let coeff = sign * c.conj();
            for (g, x) in &prod.terms {
                out.insert_scaled(g.clone(), x.clone() * coeff.clone());
            }
        }
        out
    }

    pub fn is_formally_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    /// Rebuilds the element in `target` through generator images; valid when
    /// the images satisfy the same bracket relations as this basis.
    pub fn transport_via(&self, target: Arc<LieAlgebra>, images: &[EnvElement]) -> EnvElement {
        assert_eq!(images.len(), self.algebra.dim());
        let mut out = EnvElement::zero(target.clone());
        for (e, c) in &self.terms {
            let mut prod = EnvElement::one(target.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    prod = prod.multiply(&images[i]);
                }
            }
            out = out.add(&prod.scale(c));
        }
        out
    }

    /// Graded degree when every PBW monomial agrees; errors with a witness
    /// pair otherwise.
    pub fn homogeneity_degree(&self, gr: &Grading) -> Result<Rational, EnvError> {
        assert!(
            gr.algebra() == self.algebra.as_ref(),
            "grading lives on a different algebra"
        );
        let mut found: Option<Rational> = None;
        for e in self.terms.keys() {
            let deg: Rational = e
                .iter()
                .zip(gr.degrees())
                .map(|(&k, d)| d * Rational::from_integer((k as i64).into()))
                .sum();
            match &found {
                None => found = Some(deg),
                Some(d) if *d == deg => {}
                Some(d) => {
                    return Err(EnvError::Inhomogeneous {
                        a: format_rational(d),
                        b: format_rational(&deg),
                    })
                }
            }
        }
        found.ok_or(EnvError::Inhomogeneous {
            a: "0".into(),
            b: "0".into(),
        })
    }

    /// Canonical display: monomials sorted by descending word length, then
    /// exponent order.
    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = self.algebra.names();
        let mut ordered: Vec<(&Exponent, &GaussRational)> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| (std::cmp::Reverse(e.iter().sum::<u32>()), (*e).clone()));
        let mut parts = Vec::new();
        for (e, c) in ordered {
            let mut mono = String::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&names[i]);
                if k > 1 {
                    mono.push_str(&format!("^{k}"));
                }
            }
            let coeff = format_gauss(c);
            let needs_parens = coeff.len() > 1 && coeff[1..].contains(['+', '-']);
            let part = if mono.is_empty() {
                coeff
            } else if coeff == "1" {
                mono
            } else if coeff == "-1" {
                format!("-{mono}")
            } else if needs_parens {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            parts.push(part);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

/// Straightened terms of a monomial-times-generator product.
type MonoTerms = Arc<Vec<(Exponent, GaussRational)>>;

/// Straightening cache for one multiplication pass.
#[derive(Default)]
struct Scratch {
    mono_gen: HashMap<(Exponent, usize), MonoTerms>,
}

/// X^e · Xⱼ in PBW normal form.
fn mono_times_gen(
    alg: &Arc<LieAlgebra>,
    e: &Exponent,
    j: usize,
    scratch: &mut Scratch,
) -> MonoTerms {
    if let Some(hit) = scratch.mono_gen.get(&(e.clone(), j)) {
        return hit.clone();
    }
    let top = e.iter().rposition(|&x| x > 0);
    let result: Vec<(Exponent, GaussRational)> = match top {
        None => {
            let mut g = e.clone();
            g[j] += 1;
            vec![(g, GaussRational::one())]
        }
        Some(top) if top <= j => {
            let mut g = e.clone();
            g[j] += 1;
            vec![(g, GaussRational::one())]
        }
        Some(top) => {
            // X^e Xⱼ = (X^{e−δtop} Xⱼ) X_top + X^{e−δtop} [X_top, Xⱼ]
            let mut parent = e.clone();
            parent[top] -= 1;
            let swapped = mono_times_gen(alg, &parent, j, scratch);
            let mut acc: BTreeMap<Exponent, GaussRational> = BTreeMap::new();
            for (g, c) in swapped.iter() {
                for (h, d) in mono_times_gen(alg, g, top, scratch).iter() {
                    merge(&mut acc, h.clone(), d.clone() * c.clone());
                }
            }
            let bracket = alg.basis_bracket(top, j);
            for (k, b) in bracket.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let bc = GaussRational::new(b.clone(), Rational::zero());
                for (h, d) in mono_times_gen(alg, &parent, k, scratch).iter() {
                    merge(&mut acc, h.clone(), d.clone() * bc.clone());
                }
            }
            acc.into_iter().collect()
        }
    };
    let arc = Arc::new(result);
    scratch.mono_gen.insert((e.clone(), j), arc.clone());
    arc
}

fn merge(acc: &mut BTreeMap<Exponent, GaussRational>, e: Exponent, c: GaussRational) {
    if c.re.is_zero() && c.im.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.re.is_zero() && sum.im.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// A linear map g → g satisfying the Leibniz rule on brackets, extended to
/// U(g) as a derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    algebra: Arc<LieAlgebra>,
    /// images[i] = J(Xᵢ) in coordinates.
    images: Vec<Vector>,
}

impl Derivation {
    pub fn new(algebra: Arc<LieAlgebra>, images: Vec<Vector>) -> Result<Self, EnvError> {
        let n = algebra.dim();
        assert_eq!(images.len(), n);
        let apply = |v: &[Rational]| -> Vector {
            let mut out = crate::linalg::zero_vector(n);
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    crate::linalg::add_scaled(&mut out, &images[k], c);
                }
            }
            out
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = apply(&algebra.basis_bracket(i, j));
                let mut rhs = algebra.bracket(&images[i], &crate::linalg::unit_vector(n, j));
                crate::linalg::add_assign(
                    &mut rhs,
                    &algebra.bracket(&crate::linalg::unit_vector(n, i), &images[j]),
                );
                if lhs != rhs {
                    return Err(EnvError::NotADerivation { i, j });
                }
            }
        }
        Ok(Derivation { algebra, images })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn apply_vector(&self, v: &[Rational]) -> Vector {
        let n = self.algebra.dim();
        let mut out = crate::linalg::zero_vector(n);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                crate::linalg::add_scaled(&mut out, &self.images[k], c);
            }
        }
        out
    }

    /// Leibniz extension to PBW monomials, renormalized.
    pub fn apply(&self, d: &EnvElement) -> EnvElement {
        assert!(
            Arc::ptr_eq(&self.algebra, d.algebra()) || self.algebra == *d.algebra(),
            "derivation lives on a different algebra"
        );
        let n = self.algebra.dim();
        let mut out = EnvElement::zero(d.algebra().clone());
        for (e, c) in &d.terms {
            for i in 0..n {
                if e[i] == 0 {
                    continue;
                }
                let j_xi = EnvElement::from_vector(d.algebra().clone(), &self.images[i]);
                for k in 1..=e[i] {
                    // X^{<i} Xᵢ^{k−1} · J(Xᵢ) · Xᵢ^{eᵢ−k} X^{>i}
                    let mut prefix = vec![0; n];
                    prefix[..i].copy_from_slice(&e[..i]);
                    prefix[i] = k - 1;
                    let mut suffix = vec![0; n];
                    suffix[(i + 1)..].copy_from_slice(&e[(i + 1)..]);
                    suffix[i] = e[i] - k;
                    let term = monomial(d.algebra().clone(), prefix)
                        .multiply(&j_xi)
                        .multiply(&monomial(d.algebra().clone(), suffix));
                    out = out.add(&term.scale(c));
                }
            }
        }
        out
    }

    /// D is infinitesimally invariant when J·D vanishes in U(g).
    pub fn leaves_invariant(&self, d: &EnvElement) -> bool {
        self.apply(d).is_zero()
    }
}

pub fn monomial(algebra: Arc<LieAlgebra>, e: Exponent) -> EnvElement {
    let mut terms = BTreeMap::new();
    terms.insert(e, GaussRational::one());
    EnvElement { algebra, terms }
}

/// A validated commuting system of formally self-adjoint operators.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSystem {
    ops: Vec<EnvElement>,
    degrees: Option<Vec<Rational>>,
}

impl OperatorSystem {
    pub fn ops(&self) -> &[EnvElement] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn degrees(&self) -> Option<&[Rational]> {
        self.degrees.as_deref()
    }

    /// Attaches homogeneity degrees from a grading; errors if any operator
    /// is inhomogeneous.
    pub fn with_grading(mut self, gr: &Grading) -> Result<Self, EnvError> {
        let degrees = self
            .ops
            .iter()
            .map(|d| d.homogeneity_degree(gr))
            .collect::<Result<Vec<_>, _>>()?;
        self.degrees = Some(degrees);
        Ok(self)
    }
}

/// Validates self-adjointness of each operator and pairwise commutativity.
pub fn check_system(ops: Vec<EnvElement>) -> Result<OperatorSystem, EnvError> {
    assert!(!ops.is_empty(), "system needs at least one operator");
    for (j, d) in ops.iter().enumerate() {
        if !d.is_formally_self_adjoint() {
            return Err(EnvError::NotSelfAdjoint { index: j });
        }
    }
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            let c = ops[i].commutator(&ops[j]);
            if !c.is_zero() {
                return Err(EnvError::NotCommuting {
                    i,
                    j,
                    commutator: Box::new(c),
                });
            }
        }
    }
    Ok(OperatorSystem { ops, degrees: None })
}

/// Result of the Δ = Σ Lⱼ^{2M/rⱼ} construction.
#[derive(Clone, Debug)]
pub struct HomogeneousDelta {
    pub delta: EnvElement,
    pub common_multiple: Rational,
    pub exponents: Vec<u64>,
    pub degree: Rational,
}

/// Builds Δ = L₁^{2M/r₁} + ⋯ + L_n^{2M/r_n} for M the least common multiple
/// of the homogeneity degrees, and verifies Δ is homogeneous of degree 2M.
pub fn build_homogeneous_delta(
    sys: &OperatorSystem,
    gr: &Grading,
) -> Result<HomogeneousDelta, EnvError> {
    let degrees = sys.degrees().ok_or(EnvError::NoCommonMultiple)?;
    let m = crate::scalar::rational_lcm(degrees).ok_or(EnvError::NoCommonMultiple)?;
    let two_m = &m + &m;
    let mut exponents = Vec::with_capacity(degrees.len());
    for r in degrees {
        let q = &two_m / r;
        if !q.is_integer() {
            return Err(EnvError::NoCommonMultiple);
        }
        exponents
            .push(num_traits::ToPrimitive::to_u64(q.numer()).ok_or(EnvError::NoCommonMultiple)?);
    }
    let mut delta = EnvElement::zero(sys.ops()[0].algebra().clone());
    for (op, &k) in sys.ops().iter().zip(&exponents) {
        delta = delta.add(&op.pow(k));
    }
    let degree = delta.homogeneity_degree(gr)?;
    assert_eq!(degree, two_m, "Δ must be homogeneous of degree 2M");
    Ok(HomogeneousDelta {
        delta,
        common_multiple: m,
        exponents,
        degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{heisenberg, n23, n23_so2_derivation, n23_system_ops};
    use crate::scalar::{gauss_i, gauss_int, rat_int};

    fn arc(alg: LieAlgebra) -> Arc<LieAlgebra> {
        Arc::new(alg)
    }

    #[test]
    fn heisenberg_straightening() {
        // Y·X = X·Y − Z with basis order X < Y < Z and [X,Y] = Z.
        let h = arc(heisenberg());
        let x = EnvElement::generator(h.clone(), 0);
        let y = EnvElement::generator(h.clone(), 1);
        let z = EnvElement::generator(h.clone(), 2);
        let yx = y.multiply(&x);
        let expected = x.multiply(&y).sub(&z);
        assert_eq!(yx, expected);
        assert_eq!(x.commutator(&y), z);
    }

    #[test]
    fn generator_adjoint_is_negation() {
        let h = arc(heisenberg());
        let x = EnvElement::generator(h.clone(), 0);
        assert_eq!(x.adjoint(), x.neg());
        // −iT₁ on N₂,₃ is formally self-adjoint.
        let n = arc(n23());
        let t1 = EnvElement::generator(n.clone(), 3).scale(&-gauss_i());
        assert!(t1.is_formally_self_adjoint());
    }

    #[test]
    fn sublaplacian_self_adjoint() {
        let n = arc(n23());
        let x1 = EnvElement::generator(n.clone(), 0);
        let x2 = EnvElement::generator(n.clone(), 1);
        let l1 = x1.multiply(&x1).add(&x2.multiply(&x2)).neg();
        assert!(l1.is_formally_self_adjoint());
    }

    #[test]
    fn squares_do_not_commute() {
        let n = arc(n23());
        let x1 = EnvElement::generator(n.clone(), 0);
        let x2 = EnvElement::generator(n.clone(), 1);
        let c = x1.pow(2).commutator(&x2.pow(2));
        assert!(!c.is_zero());
        assert!(matches!(
            check_system(vec![x1.pow(2), x2.pow(2)]),
            Err(EnvError::NotCommuting { i: 0, j: 1, .. })
        ));
    }

    #[test]
    fn powers_commute() {
        let n = arc(n23());
        let x1 = EnvElement::generator(n.clone(), 0);
        let y = EnvElement::generator(n.clone(), 2);
        let d = x1.multiply(&y).add(&y.pow(2));
        assert!(d.commutator(&d.pow(2)).is_zero());
    }

    #[test]
    fn n23_three_operator_system_commutes() {
        let (alg, ops) = n23_system_ops(3);
        let sys = check_system(ops).unwrap();
        assert_eq!(sys.len(), 3);
        let _ = alg;
    }

    #[test]
    fn n23_four_operator_system_commutes() {
        let (_, ops) = n23_system_ops(4);
        let sys = check_system(ops).unwrap();
        assert_eq!(sys.len(), 4);
    }

    #[test]
    fn homogeneity_degrees_of_n23_system() {
        let (alg, ops) = n23_system_ops(3);
        let gr = Grading::new(
            alg.as_ref().clone(),
            [1, 1, 2, 3, 3].iter().map(|&d| rat_int(d)).collect(),
        )
        .unwrap();
        let degs: Vec<Rational> = ops
            .iter()
            .map(|d| d.homogeneity_degree(&gr).unwrap())
            .collect();
        assert_eq!(degs, vec![rat_int(2), rat_int(4), rat_int(6)]);

        // X₁² + X₁ is inhomogeneous with witness degrees {2, 1}.
        let x1 = EnvElement::generator(alg.clone(), 0);
        let bad = x1.pow(2).add(&x1);
        assert!(matches!(
            bad.homogeneity_degree(&gr),
            Err(EnvError::Inhomogeneous { .. })
        ));
    }

    #[test]
    fn so2_derivation_invariance() {
        let (alg, ops) = n23_system_ops(4);
        let j = n23_so2_derivation(alg.clone());
        assert!(j.leaves_invariant(&ops[0]));
        assert!(j.leaves_invariant(&ops[1]));
        // −iT₁ maps to −iT₂.
        let image = j.apply(&ops[2]);
        let t2 = EnvElement::generator(alg.clone(), 4).scale(&-gauss_i());
        assert_eq!(image, t2);
        assert!(!j.leaves_invariant(&ops[2]));
    }

    #[test]
    fn derivation_rejects_non_leibniz() {
        let n = arc(n23());
        // Swap X1 ↔ X2 only: not a derivation of N₂,₃.
        let mut images = vec![crate::linalg::zero_vector(5); 5];
        images[0] = crate::linalg::unit_vector(5, 1);
        images[1] = crate::linalg::unit_vector(5, 0);
        assert!(matches!(
            Derivation::new(n, images),
            Err(EnvError::NotADerivation { .. })
        ));
    }

    #[test]
    fn invariant_kernel_is_subalgebra() {
        let (alg, ops) = n23_system_ops(3);
        let j = n23_so2_derivation(alg);
        let prod = ops[0].multiply(&ops[1]);
        assert!(j.leaves_invariant(&prod));
        assert!(j.leaves_invariant(&ops[0].adjoint()));
    }

    #[test]
    fn delta_construction_for_n23() {
        let (alg, ops) = n23_system_ops(3);
        let gr = Grading::new(
            alg.as_ref().clone(),
            [1, 1, 2, 3, 3].iter().map(|&d| rat_int(d)).collect(),
        )
        .unwrap();
        let sys = check_system(ops).unwrap().with_grading(&gr).unwrap();
        let delta = build_homogeneous_delta(&sys, &gr).unwrap();
        assert_eq!(delta.common_multiple, rat_int(12));
        assert_eq!(delta.exponents, vec![12, 6, 4]);
        assert_eq!(delta.degree, rat_int(24));
    }

    #[test]
    fn delta_with_fractional_degrees() {
        // (−i∂₁, −i∂₂) on ℝ² with degrees (1, 3/2): M = 3, Δ = L₁⁶ + L₂⁴.
        use crate::scalar::rat;
        let a = arc(LieAlgebra::abelian(2));
        let gr = Grading::new(a.as_ref().clone(), vec![rat_int(1), rat(3, 2)]).unwrap();
        let l1 = EnvElement::generator(a.clone(), 0).scale(&-gauss_i());
        let l2 = EnvElement::generator(a.clone(), 1).scale(&-gauss_i());
        let sys = check_system(vec![l1.clone(), l2.clone()])
            .unwrap()
            .with_grading(&gr)
            .unwrap();
        let delta = build_homogeneous_delta(&sys, &gr).unwrap();
        assert_eq!(delta.common_multiple, rat_int(3));
        assert_eq!(delta.exponents, vec![6, 4]);
        assert_eq!(delta.degree, rat_int(6));
        assert_eq!(delta.delta, l1.pow(6).add(&l2.pow(4)));
    }

    #[test]
    fn delta_single_operator() {
        let h = arc(heisenberg());
        let gr = Grading::new(
            h.as_ref().clone(),
            [1, 1, 2].iter().map(|&d| rat_int(d)).collect(),
        )
        .unwrap();
        let x = EnvElement::generator(h.clone(), 0);
        let y = EnvElement::generator(h.clone(), 1);
        let l = x.pow(2).add(&y.pow(2)).neg();
        let sys = check_system(vec![l.clone()])
            .unwrap()
            .with_grading(&gr)
            .unwrap();
        let delta = build_homogeneous_delta(&sys, &gr).unwrap();
        // Single operator of degree r: Δ = L², degree 2r.
        assert_eq!(delta.delta, l.pow(2));
        assert_eq!(delta.degree, rat_int(4));
    }

    #[test]
    fn transport_respects_relations() {
        // Rebuilding an element through the permuted algebra's generators
        // preserves products and zero-ness.
        let h = arc(heisenberg());
        let perm = [2usize, 0, 1];
        let hp = arc(h.permuted(&perm));
        let mut inv = [0usize; 3];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let images: Vec<EnvElement> = (0..3)
            .map(|i| EnvElement::generator(hp.clone(), inv[i]))
            .collect();
        let x = EnvElement::generator(h.clone(), 0);
        let y = EnvElement::generator(h.clone(), 1);
        let d = y.multiply(&x).add(&x.pow(2));
        let transported = d.transport_via(hp.clone(), &images);
        let direct = EnvElement::generator(hp.clone(), inv[1])
            .multiply(&EnvElement::generator(hp.clone(), inv[0]))
            .add(&EnvElement::generator(hp.clone(), inv[0]).pow(2));
        assert_eq!(transported, direct);
        // The commutator relation transports to zero identically.
        let z = EnvElement::generator(h.clone(), 2);
        let rel = x.commutator(&y).sub(&z);
        assert!(rel.is_zero());
        assert!(rel.transport_via(hp.clone(), &images).is_zero());
    }

    #[test]
    fn display_is_canonical() {
        let h = arc(heisenberg());
        let x = EnvElement::generator(h.clone(), 0);
        let y = EnvElement::generator(h.clone(), 1);
        let d = y.multiply(&x);
        assert_eq!(d.display(), "X*Y - Z");
        assert_eq!(EnvElement::zero(h.clone()).display(), "0");
        let i_x = x
            .scale(&gauss_i())
            .add(&EnvElement::one(h.clone()).scale(&gauss_int(2)));
        assert_eq!(i_x.display(), "i*X + 2");
    }
}
