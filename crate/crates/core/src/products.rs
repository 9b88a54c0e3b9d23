//! Direct products of Lie algebras, concatenated weighted bases, lifts of
//! operators along factors, and the product operator/system constructions.

use crate::env::{check_system, EnvElement, EnvError, OperatorSystem};
use crate::forms::{Form, FormError};
use crate::lie::LieAlgebra;
use crate::linalg::{zero_vector, Vector};
use crate::scalar::{rational_lcm, GaussRational, Rational};
use crate::weighted::{
    compute_filtration, contract, is_reduced_strict, WeightedBasis, WeightedError,
};
use num_traits::Zero;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ProductError {
    #[error("need at least two factors")]
    TooFewFactors,
    #[error("factor index {0} out of range")]
    BadFactor(usize),
    #[error("factor data does not match factor algebra {0}")]
    FactorMismatch(usize),
    #[error("operator along factor {0} is not formally self-adjoint")]
    NotSelfAdjoint(usize),
    #[error(transparent)]
    Weighted(#[from] WeightedError),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// g^× = g₁ ⊕ ⋯ ⊕ g_ℓ with block-diagonal structure constants.
#[derive(Clone, Debug)]
pub struct ProductAlgebra {
    factors: Vec<LieAlgebra>,
    total: Arc<LieAlgebra>,
    offsets: Vec<usize>,
}

impl ProductAlgebra {
    pub fn factors(&self) -> &[LieAlgebra] {
        &self.factors
    }

    pub fn total(&self) -> &Arc<LieAlgebra> {
        &self.total
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Embeds a factor vector into the product coordinates.
    pub fn embed_vector(&self, l: usize, v: &[Rational]) -> Vector {
        let mut out = zero_vector(self.total.dim());
        let off = self.offsets[l];
        for (i, c) in v.iter().enumerate() {
            out[off + i] = c.clone();
        }
        out
    }
}

/// Builds the direct product; cross-factor brackets are zero. Factor basis
/// names are kept when globally distinct, otherwise suffixed by factor.
pub fn product(algebras: Vec<LieAlgebra>) -> Result<ProductAlgebra, ProductError> {
    if algebras.len() < 2 {
        return Err(ProductError::TooFewFactors);
    }
    let dims: Vec<usize> = algebras.iter().map(|a| a.dim()).collect();
    let total_dim: usize = dims.iter().sum();
    let mut offsets = Vec::with_capacity(algebras.len());
    let mut acc = 0;
    for d in &dims {
        offsets.push(acc);
        acc += d;
    }
    let mut names: Vec<String> = algebras
        .iter()
        .flat_map(|a| a.names().iter().cloned())
        .collect();
    {
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            names = algebras
                .iter()
                .enumerate()
                .flat_map(|(l, a)| {
                    a.names()
                        .iter()
                        .map(move |n| format!("{n}_{}", l + 1))
                        .collect::<Vec<_>>()
                })
                .collect();
        }
    }
    let mut brackets = Vec::new();
    for (l, a) in algebras.iter().enumerate() {
        let off = offsets[l];
        for i in 0..a.dim() {
            for j in (i + 1)..a.dim() {
                let b = a.basis_bracket(i, j);
                if b.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let mut v = zero_vector(total_dim);
                for (k, c) in b.into_iter().enumerate() {
                    v[off + k] = c;
                }
                brackets.push((off + i, off + j, v));
            }
        }
    }
    let total = LieAlgebra::new(names, brackets).expect("block product satisfies Jacobi");
    Ok(ProductAlgebra {
        factors: algebras,
        total: Arc::new(total),
        offsets,
    })
}

/// Concatenates strictly reduced factor bases into a reduced basis of the
/// product, and verifies filtration additivity F^×_λ = ⊕ F_{l,λ}.
pub fn concat_weighted_bases(
    pa: &ProductAlgebra,
    bases: &[WeightedBasis],
) -> Result<WeightedBasis, ProductError> {
    if bases.len() != pa.factors.len() {
        return Err(ProductError::FactorMismatch(bases.len()));
    }
    for (l, (b, f)) in bases.iter().zip(&pa.factors).enumerate() {
        if b.algebra() != f {
            return Err(ProductError::FactorMismatch(l));
        }
        let filt = compute_filtration(b);
        if !is_reduced_strict(b, &filt).reduced {
            return Err(WeightedError::NotReduced {
                weight: "factor basis".into(),
            }
            .into());
        }
    }
    let mut elements = Vec::new();
    for (l, b) in bases.iter().enumerate() {
        for (v, w) in b.elements() {
            elements.push((pa.embed_vector(l, v), w.clone()));
        }
    }
    let concat = WeightedBasis::new(pa.total.as_ref().clone(), elements)?;

    // Reducedness and filtration additivity.
    let filt = compute_filtration(&concat);
    assert!(
        is_reduced_strict(&concat, &filt).reduced,
        "concatenation of strictly reduced bases stays strictly reduced"
    );
    let factor_filts: Vec<_> = bases.iter().map(compute_filtration).collect();
    let mut all_jumps: Vec<Rational> = factor_filts
        .iter()
        .flat_map(|f| f.jump_weights().to_vec())
        .collect();
    all_jumps.sort();
    all_jumps.dedup();
    assert_eq!(
        filt.jump_weights(),
        all_jumps.as_slice(),
        "product jump set must be the union of factor jump sets"
    );
    for w in filt.jump_weights() {
        let expect: usize = factor_filts.iter().map(|f| f.space_at(w).dim()).sum();
        assert_eq!(
            filt.space_at(w).dim(),
            expect,
            "F^×_λ must split as the direct sum of factor filtrations"
        );
    }
    Ok(concat)
}

/// Outcome of the block comparison between contract(concat) and the direct
/// sum of the factor contractions.
#[derive(Clone, Debug)]
pub struct ContractionFunctoriality {
    pub holds: bool,
    pub product_contraction: LieAlgebra,
    pub block_contraction: LieAlgebra,
}

/// Verifies (g^×)₊ = (g₁)₊ ⊕ ⋯ structure-constant-exactly, after aligning
/// the product's adapted basis factor by factor.
pub fn contraction_functoriality(
    pa: &ProductAlgebra,
    bases: &[WeightedBasis],
) -> Result<ContractionFunctoriality, ProductError> {
    let concat = concat_weighted_bases(pa, bases)?;
    let product_k = contract(&concat)?;
    let factor_ks: Vec<_> = bases.iter().map(contract).collect::<Result<Vec<_>, _>>()?;

    // Align: each adapted vector of the product contraction is supported in
    // one factor block and must match one adapted vector of that factor.
    let mut perm: Vec<usize> = Vec::with_capacity(pa.total.dim());
    for (l, k) in factor_ks.iter().enumerate() {
        for row in k.section_matrix() {
            let embedded = pa.embed_vector(l, row);
            let pos = product_k
                .section_matrix()
                .iter()
                .position(|r| *r == embedded)
                .expect("factor adapted vector must appear in the product section");
            perm.push(pos);
        }
    }
    let aligned = product_k.algebra().permuted(&perm);

    let block = product(factor_ks.iter().map(|k| k.algebra().clone()).collect())?;
    let holds = aligned.names().len() == block.total().names().len() && {
        // Compare structure constants positionally (names may differ).
        let n = aligned.dim();
        (0..n).all(|i| {
            ((i + 1)..n).all(|j| aligned.basis_bracket(i, j) == block.total().basis_bracket(i, j))
        })
    };
    Ok(ContractionFunctoriality {
        holds,
        product_contraction: aligned,
        block_contraction: block.total().as_ref().clone(),
    })
}

/// The differential operator along the l-th factor: re-indexes monomials by
/// the factor offset.
pub fn lift(pa: &ProductAlgebra, l: usize, d: &EnvElement) -> Result<EnvElement, ProductError> {
    if l >= pa.factors.len() {
        return Err(ProductError::BadFactor(l));
    }
    if d.algebra().as_ref() != &pa.factors[l] {
        return Err(ProductError::FactorMismatch(l));
    }
    let off = pa.offsets[l];
    let n = pa.total.dim();
    let mut out = EnvElement::zero(pa.total.clone());
    for (e, c) in d.terms() {
        let mut g = vec![0u32; n];
        g[off..off + e.len()].copy_from_slice(e);
        out = out.add(&monomial_scaled(pa.total.clone(), g, c.clone()));
    }
    Ok(out)
}

fn monomial_scaled(alg: Arc<LieAlgebra>, e: Vec<u32>, c: GaussRational) -> EnvElement {
    crate::env::monomial(alg, e).scale(&c)
}

/// D = (D₁^×)² + ⋯ + (D_ℓ^×)², checking each factor operator is formally
/// self-adjoint. The result is formally self-adjoint and commutes with each
/// lift.
pub fn product_operator(
    pa: &ProductAlgebra,
    ds: &[EnvElement],
) -> Result<EnvElement, ProductError> {
    if ds.len() != pa.factors.len() {
        return Err(ProductError::FactorMismatch(ds.len()));
    }
    for (l, d) in ds.iter().enumerate() {
        if !d.is_formally_self_adjoint() {
            return Err(ProductError::NotSelfAdjoint(l));
        }
    }
    let mut out = EnvElement::zero(pa.total.clone());
    for (l, d) in ds.iter().enumerate() {
        let lifted = lift(pa, l, d)?;
        out = out.add(&lifted.pow(2));
    }
    debug_assert!(out.is_formally_self_adjoint());
    Ok(out)
}

/// Concatenates validated factor systems into one validated system.
pub fn concat_system(
    pa: &ProductAlgebra,
    systems: &[OperatorSystem],
) -> Result<OperatorSystem, ProductError> {
    if systems.len() != pa.factors.len() {
        return Err(ProductError::FactorMismatch(systems.len()));
    }
    let mut ops = Vec::new();
    for (l, sys) in systems.iter().enumerate() {
        for d in sys.ops() {
            ops.push(lift(pa, l, d)?);
        }
    }
    Ok(check_system(ops)?)
}

/// Form-level principal additivity for the product operator: with factor
/// weights rescaled to a common degree m, principal(Σ (C_l^×)²) equals
/// Σ (P_l^×)². Reports the rescale factor applied to each factor.
#[derive(Clone, Debug)]
pub struct PrincipalAdditivity {
    pub holds: bool,
    /// Common degree m shared by the rescaled factor forms.
    pub common_form_degree: Rational,
    /// Degree 2m of the product form Σ (C_l^×)².
    pub product_degree: Rational,
    pub rescale_factors: Vec<Rational>,
}

pub fn product_principal_additivity(
    pa: &ProductAlgebra,
    forms: &[Form],
) -> Result<PrincipalAdditivity, ProductError> {
    if forms.len() != pa.factors.len() {
        return Err(ProductError::FactorMismatch(forms.len()));
    }
    let degrees: Vec<Rational> = forms
        .iter()
        .map(|c| c.degree())
        .collect::<Result<Vec<_>, _>>()?;
    let m = rational_lcm(&degrees).expect("form degrees are positive");
    let rescale_factors: Vec<Rational> = degrees.iter().map(|d| &m / d).collect();

    // Rescaled concatenated basis: factor l weights scaled by m/m_l.
    let mut elements = Vec::new();
    for (l, c) in forms.iter().enumerate() {
        for (v, w) in c.basis().elements() {
            elements.push((pa.embed_vector(l, v), w * &rescale_factors[l]));
        }
    }
    let concat = WeightedBasis::new(pa.total.as_ref().clone(), elements)?;

    // Lift each factor form to the concatenated basis by letter offset.
    let mut letter_offsets = Vec::with_capacity(forms.len());
    let mut acc = 0usize;
    for c in forms {
        letter_offsets.push(acc);
        acc += c.basis().len();
    }
    let lift_form = |l: usize, c: &Form| -> Result<Form, FormError> {
        let terms = c
            .coeffs()
            .iter()
            .map(|(w, x)| {
                (
                    w.iter().map(|&i| i + letter_offsets[l]).collect(),
                    x.clone(),
                )
            })
            .collect();
        Form::new(concat.clone(), terms)
    };

    let mut sum_sq = Form::zero(concat.clone());
    let mut sum_principal_sq = Form::zero(concat.clone());
    for (l, c) in forms.iter().enumerate() {
        let cl = lift_form(l, c)?;
        sum_sq = sum_sq.add(&cl.multiply(&cl)?)?;
        let pl = lift_form(l, &c.principal_part()?)?;
        sum_principal_sq = sum_principal_sq.add(&pl.multiply(&pl)?)?;
    }
    let holds = sum_sq.principal_part()? == sum_principal_sq;
    Ok(PrincipalAdditivity {
        holds,
        product_degree: &m + &m,
        common_form_degree: m,
        rescale_factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{heisenberg, sl2};
    use crate::grading::Grading;
    use crate::linalg::unit_vector;
    use crate::scalar::{gauss_int, rat_int};

    fn unit_basis(alg: &LieAlgebra, iw: &[(usize, i64)]) -> WeightedBasis {
        WeightedBasis::new(
            alg.clone(),
            iw.iter()
                .map(|&(i, w)| (unit_vector(alg.dim(), i), rat_int(w)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn abelian_product() {
        let pa = product(vec![LieAlgebra::abelian(1), LieAlgebra::abelian(1)]).unwrap();
        assert_eq!(pa.total().dim(), 2);
        assert!(pa.total().is_abelian());
    }

    #[test]
    fn h1_cross_r_center() {
        let pa = product(vec![heisenberg(), LieAlgebra::abelian(1)]).unwrap();
        assert_eq!(pa.total().dim(), 4);
        let series = pa.total().descending_central_series();
        assert_eq!(series.dims(), vec![4, 1, 0]);
        // Center is span{Z, U}: brackets with everything vanish.
        let z = unit_vector(4, 2);
        let u = unit_vector(4, 3);
        for i in 0..4 {
            assert!(crate::linalg::is_zero_vector(
                &pa.total().bracket(&z, &unit_vector(4, i))
            ));
            assert!(crate::linalg::is_zero_vector(
                &pa.total().bracket(&u, &unit_vector(4, i))
            ));
        }
    }

    #[test]
    fn h1_cross_h1_renames() {
        let pa = product(vec![heisenberg(), heisenberg()]).unwrap();
        assert_eq!(pa.total().dim(), 6);
        assert_eq!(pa.total().names()[0], "X_1");
        assert_eq!(pa.total().names()[3], "X_2");
        assert_eq!(pa.total().basis_bracket(0, 1), unit_vector(6, 2));
        assert_eq!(pa.total().basis_bracket(3, 4), unit_vector(6, 5));
        assert!(crate::linalg::is_zero_vector(
            &pa.total().basis_bracket(0, 4)
        ));
    }

    #[test]
    fn concat_bases_and_filtration_additivity() {
        let h = heisenberg();
        let r = LieAlgebra::abelian(1);
        let pa = product(vec![h.clone(), r.clone()]).unwrap();
        let bh = unit_basis(&h, &[(0, 1), (1, 1)]);
        let br = unit_basis(&r, &[(0, 1)]);
        let concat = concat_weighted_bases(&pa, &[bh, br]).unwrap();
        let f = compute_filtration(&concat);
        assert_eq!(f.jump_weights(), &[rat_int(1), rat_int(2)]);
        assert_eq!(f.jump_dims(), vec![3, 4]);
    }

    #[test]
    fn abelian_factors_single_jump() {
        let pa = product(vec![LieAlgebra::abelian(2), LieAlgebra::abelian(1)]).unwrap();
        let b1 = unit_basis(&LieAlgebra::abelian(2), &[(0, 1), (1, 1)]);
        let b2 = unit_basis(&LieAlgebra::abelian(1), &[(0, 1)]);
        let concat = concat_weighted_bases(&pa, &[b1, b2]).unwrap();
        let f = compute_filtration(&concat);
        assert_eq!(f.jump_weights().len(), 1);
    }

    #[test]
    fn sl2_cross_r_contracts_to_h1_cross_r() {
        let s = sl2();
        let r = LieAlgebra::abelian(1);
        let pa = product(vec![s.clone(), r.clone()]).unwrap();
        let bs = unit_basis(&s, &[(1, 1), (2, 1)]);
        let br = unit_basis(&r, &[(0, 1)]);
        let func = contraction_functoriality(&pa, &[bs, br]).unwrap();
        assert!(func.holds);
        // Block contraction is h₁ ⊕ ℝ up to structure constants.
        let series = func.block_contraction.descending_central_series();
        assert_eq!(series.dims(), vec![4, 1, 0]);
    }

    #[test]
    fn lifts_commute_and_preserve_adjoints() {
        let pa = product(vec![heisenberg(), LieAlgebra::abelian(1)]).unwrap();
        let h = Arc::new(heisenberg());
        let r = Arc::new(LieAlgebra::abelian(1));
        let x = EnvElement::generator(h.clone(), 0);
        let y = EnvElement::generator(h.clone(), 1);
        let d = x.multiply(&y).add(&y.pow(2));
        let e = EnvElement::generator(r.clone(), 0).pow(3);
        let dl = lift(&pa, 0, &d).unwrap();
        let el = lift(&pa, 1, &e).unwrap();
        assert!(dl.commutator(&el).is_zero());
        assert_eq!(lift(&pa, 0, &d.adjoint()).unwrap(), dl.adjoint());
    }

    #[test]
    fn lift_reindexes() {
        let pa = product(vec![LieAlgebra::abelian(1), LieAlgebra::abelian(1)]).unwrap();
        let r = Arc::new(LieAlgebra::abelian(1));
        let d = EnvElement::generator(r, 0).pow(2);
        let lifted = lift(&pa, 0, &d).unwrap();
        let x1 = EnvElement::generator(pa.total().clone(), 0);
        assert_eq!(lifted, x1.pow(2));
    }

    #[test]
    fn product_operator_on_r2() {
        // D₁ = D₂ = −∂²  →  D = X₁⁴ + X₂⁴.
        let r = LieAlgebra::abelian(1);
        let pa = product(vec![r.clone(), r.clone()]).unwrap();
        let ra = Arc::new(r);
        let minus_dd = EnvElement::generator(ra.clone(), 0).pow(2).neg();
        let d = product_operator(&pa, &[minus_dd.clone(), minus_dd.clone()]).unwrap();
        let x1 = EnvElement::generator(pa.total().clone(), 0);
        let x2 = EnvElement::generator(pa.total().clone(), 1);
        assert_eq!(d, x1.pow(4).add(&x2.pow(4)));
        // Commutes with each lift.
        for l in 0..2 {
            let dl = lift(&pa, l, &minus_dd).unwrap();
            assert!(d.commutator(&dl).is_zero());
        }
    }

    #[test]
    fn product_operator_h1_cross_r() {
        let h = heisenberg();
        let r = LieAlgebra::abelian(1);
        let pa = product(vec![h.clone(), r.clone()]).unwrap();
        let ha = Arc::new(h);
        let ra = Arc::new(r);
        let subl = EnvElement::generator(ha.clone(), 0)
            .pow(2)
            .add(&EnvElement::generator(ha.clone(), 1).pow(2))
            .neg();
        let dd = EnvElement::generator(ra.clone(), 0).pow(2).neg();
        let d = product_operator(&pa, &[subl, dd]).unwrap();
        assert!(d.is_formally_self_adjoint());
        assert_eq!(d.algebra().dim(), 4);
    }

    #[test]
    fn product_operator_rejects_non_self_adjoint() {
        let r = LieAlgebra::abelian(1);
        let pa = product(vec![r.clone(), r.clone()]).unwrap();
        let ra = Arc::new(r);
        let x = EnvElement::generator(ra.clone(), 0);
        assert_eq!(
            product_operator(&pa, &[x.clone(), x.clone()]).unwrap_err(),
            ProductError::NotSelfAdjoint(0)
        );
    }

    #[test]
    fn concat_systems() {
        // (−∂²) on ℝ and (−∂²) on ℝ → (−∂₁², −∂₂²) on ℝ².
        let r = LieAlgebra::abelian(1);
        let pa = product(vec![r.clone(), r.clone()]).unwrap();
        let ra = Arc::new(r);
        let minus_dd = EnvElement::generator(ra.clone(), 0).pow(2).neg();
        let s1 = check_system(vec![minus_dd.clone()]).unwrap();
        let s2 = check_system(vec![minus_dd.clone()]).unwrap();
        let sys = concat_system(&pa, &[s1, s2]).unwrap();
        assert_eq!(sys.len(), 2);

        // h₁ system (sublaplacian, −iZ) × ℝ system (−∂²): 3 operators.
        let h = heisenberg();
        let pa = product(vec![h.clone(), LieAlgebra::abelian(1)]).unwrap();
        let ha = Arc::new(h);
        let subl = EnvElement::generator(ha.clone(), 0)
            .pow(2)
            .add(&EnvElement::generator(ha.clone(), 1).pow(2))
            .neg();
        let minus_iz = EnvElement::generator(ha.clone(), 2).scale(&-crate::scalar::gauss_i());
        let sh = check_system(vec![subl, minus_iz]).unwrap();
        let sr = check_system(vec![minus_dd]).unwrap();
        let sys = concat_system(&pa, &[sh, sr]).unwrap();
        assert_eq!(sys.len(), 3);
    }

    #[test]
    fn growth_additivity() {
        let h = heisenberg();
        let r = LieAlgebra::abelian(1);
        let pa = product(vec![h.clone(), r.clone()]).unwrap();
        let qg: usize = pa.total().guivarch_growth_degree().unwrap();
        assert_eq!(
            qg,
            h.guivarch_growth_degree().unwrap() + r.guivarch_growth_degree().unwrap()
        );
        // Q_δ additivity for the standard gradings.
        let gh = Grading::new(h, vec![rat_int(1), rat_int(1), rat_int(2)]).unwrap();
        let gr = Grading::new(r, vec![rat_int(1)]).unwrap();
        let gp = Grading::new(
            pa.total().as_ref().clone(),
            vec![rat_int(1), rat_int(1), rat_int(2), rat_int(1)],
        )
        .unwrap();
        assert_eq!(
            gp.homogeneous_dimension(),
            gh.homogeneous_dimension() + gr.homogeneous_dimension()
        );
    }

    #[test]
    fn principal_additivity_with_rescaling() {
        // Factor 1: −∂² on ℝ (degree 2, weights 1). Factor 2: −∂² + ∂ on ℝ
        // with weight 3/2 → degree 3; common degree lcm(2,3) = 6.
        let r = LieAlgebra::abelian(1);
        let pa = product(vec![r.clone(), r.clone()]).unwrap();
        let b1 = unit_basis(&r, &[(0, 1)]);
        let c1 = Form::new(b1, vec![(vec![0, 0], gauss_int(-1))]).unwrap();
        let b2 = WeightedBasis::new(
            r.clone(),
            vec![(unit_vector(1, 0), crate::scalar::rat(3, 2))],
        )
        .unwrap();
        let c2 = Form::new(
            b2,
            vec![(vec![0, 0], gauss_int(-1)), (vec![0], gauss_int(1))],
        )
        .unwrap();
        let rep = product_principal_additivity(&pa, &[c1, c2]).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.rescale_factors, vec![rat_int(3), rat_int(2)]);
        assert_eq!(rep.common_form_degree, rat_int(6));
        assert_eq!(rep.product_degree, rat_int(12));
    }
}
