//! Weighted algebraic bases, the filtration they induce, reducedness in both
//! the strict and the weak sense, and the graded contraction built from the
//! filtration quotients.

use crate::grading::Grading;
use crate::lie::LieAlgebra;
use crate::linalg::{is_zero_vector, Subspace, Vector};
use crate::scalar::{format_rational, Rational};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WeightedError {
    #[error("weighted basis elements must be linearly independent")]
    NotIndependent,
    #[error("weighted basis must generate the algebra (generated dim {got} < {dim})")]
    DoesNotGenerate { got: usize, dim: usize },
    #[error("weight {0} is below 1")]
    WeightBelowOne(String),
    #[error("basis is not strictly reduced (weight {weight}: nonzero intersection with F⁻)")]
    NotReduced { weight: String },
    #[error("element count must be positive")]
    Empty,
}

/// Linearly independent Lie-algebra generators A₁,…,A_d with weights wⱼ ≥ 1.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedBasis {
    algebra: LieAlgebra,
    elements: Vec<(Vector, Rational)>,
}

impl WeightedBasis {
    pub fn new(
        algebra: LieAlgebra,
        elements: Vec<(Vector, Rational)>,
    ) -> Result<Self, WeightedError> {
        if elements.is_empty() {
            return Err(WeightedError::Empty);
        }
        for (_, w) in &elements {
            if w < &Rational::one() {
                return Err(WeightedError::WeightBelowOne(format_rational(w)));
            }
        }
        let span = Subspace::span(algebra.dim(), elements.iter().map(|(v, _)| v.clone()));
        if span.dim() != elements.len() {
            return Err(WeightedError::NotIndependent);
        }
        let gens: Vec<Vector> = elements.iter().map(|(v, _)| v.clone()).collect();
        let generated = algebra.generated_subalgebra(&gens);
        if generated.dim() != algebra.dim() {
            return Err(WeightedError::DoesNotGenerate {
                got: generated.dim(),
                dim: algebra.dim(),
            });
        }
        Ok(WeightedBasis { algebra, elements })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn elements(&self) -> &[(Vector, Rational)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.elements.iter().map(|(_, w)| w.clone()).collect()
    }
}

/// The increasing filtration F_λ spanned by the left-normed iterated
/// brackets of total weight ≤ λ, recorded at its jump weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    ambient_dim: usize,
    jump_weights: Vec<Rational>,
    spaces: Vec<Subspace>,
}

impl Filtration {
    pub fn jump_weights(&self) -> &[Rational] {
        &self.jump_weights
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn jump_dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    /// F_λ: the space of the largest jump ≤ λ (zero below the first jump).
    pub fn space_at(&self, lambda: &Rational) -> Subspace {
        let mut out = Subspace::zero(self.ambient_dim);
        for (w, s) in self.jump_weights.iter().zip(&self.spaces) {
            if w <= lambda {
                out = s.clone();
            } else {
                break;
            }
        }
        out
    }

    /// F_λ⁻ = ∪_{μ<λ} F_μ: the space of the largest jump < λ.
    pub fn space_below(&self, lambda: &Rational) -> Subspace {
        let mut out = Subspace::zero(self.ambient_dim);
        for (w, s) in self.jump_weights.iter().zip(&self.spaces) {
            if w < lambda {
                out = s.clone();
            } else {
                break;
            }
        }
        out
    }

    /// dim W_λ = dim F_λ − dim F_λ⁻ at each jump.
    pub fn layer_dims(&self) -> Vec<usize> {
        let mut prev = 0;
        self.spaces
            .iter()
            .map(|s| {
                let d = s.dim() - prev;
                prev = s.dim();
                d
            })
            .collect()
    }
}

/// Enumerates left-normed iterated brackets A_[α] breadth-first by length,
/// pruning words whose value already lies in the span of kept values of
/// weight ≤ its own; spans stabilize within dim(g) lengths.
pub fn compute_filtration(wb: &WeightedBasis) -> Filtration {
    let alg = wb.algebra();
    let dim = alg.dim();
    // kept: (value, weight); pruning keeps the spanning property
    // span{A_[α] : ‖α‖ ≤ λ} = span{kept v : wt(v) ≤ λ} for every λ.
    let mut kept: Vec<(Vector, Rational)> = Vec::new();
    let mut frontier: Vec<(Vector, Rational)> = Vec::new();
    let spanned = |kept: &[(Vector, Rational)], v: &Vector, w: &Rational| {
        let lighter = kept
            .iter()
            .filter(|(_, kw)| kw <= w)
            .map(|(kv, _)| kv.clone());
        Subspace::span(dim, lighter).contains(v)
    };
    for (v, w) in wb.elements() {
        if !spanned(&kept, v, w) {
            kept.push((v.clone(), w.clone()));
            frontier.push((v.clone(), w.clone()));
        }
    }
    for _len in 2..=dim {
        if frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for (v, w) in &frontier {
            for (a, wa) in wb.elements() {
                let b = alg.bracket(v, a);
                if is_zero_vector(&b) {
                    continue;
                }
                let wb_total = w + wa;
                if !spanned(&kept, &b, &wb_total) {
                    kept.push((b.clone(), wb_total.clone()));
                    next.push((b, wb_total));
                }
            }
        }
        frontier = next;
    }

    // Sweep kept values by weight; record a jump wherever the span grows.
    kept.sort_by(|a, b| a.1.cmp(&b.1));
    let mut jump_weights = Vec::new();
    let mut spaces: Vec<Subspace> = Vec::new();
    let mut acc: Vec<Vector> = Vec::new();
    let mut idx = 0;
    while idx < kept.len() {
        let w = kept[idx].1.clone();
        while idx < kept.len() && kept[idx].1 == w {
            acc.push(kept[idx].0.clone());
            idx += 1;
        }
        let space = Subspace::span(dim, acc.clone());
        if spaces.last().map_or(0, |s: &Subspace| s.dim()) < space.dim() {
            jump_weights.push(w);
            spaces.push(space);
        }
    }
    let filtration = Filtration {
        ambient_dim: dim,
        jump_weights,
        spaces,
    };
    debug_assert_eq!(
        filtration.spaces.last().map(|s| s.dim()),
        Some(dim),
        "weighted basis generates, so the filtration must exhaust g"
    );
    filtration
}

/// Outcome of the strict reducedness test, with a witness on failure.
#[derive(Clone, Debug, PartialEq)]
pub struct StrictReducedness {
    pub reduced: bool,
    /// Failing weight λ and a nonzero vector of Span{Aⱼ : wⱼ = λ} ∩ F_λ⁻.
    pub witness: Option<(Rational, Vector)>,
}

/// Strict reducedness: Span{Aⱼ : wⱼ = λ} ∩ F_λ⁻ = {0} for every λ.
pub fn is_reduced_strict(wb: &WeightedBasis, f: &Filtration) -> StrictReducedness {
    let dim = wb.algebra().dim();
    let mut weights: Vec<Rational> = wb.weights();
    weights.sort();
    weights.dedup();
    for w in weights {
        let level_span = Subspace::span(
            dim,
            wb.elements()
                .iter()
                .filter(|(_, wj)| *wj == w)
                .map(|(v, _)| v.clone()),
        );
        let below = f.space_below(&w);
        let meet = level_span.intersect(&below);
        if !meet.is_zero() {
            let witness = meet.basis()[0].clone();
            return StrictReducedness {
                reduced: false,
                witness: Some((w, witness)),
            };
        }
    }
    StrictReducedness {
        reduced: true,
        witness: None,
    }
}

/// Weak reducedness: every Aⱼ ∉ F_{wⱼ}⁻.
pub fn is_reduced_weak(wb: &WeightedBasis, f: &Filtration) -> bool {
    wb.elements()
        .iter()
        .all(|(v, w)| !f.space_below(w).contains(v))
}

/// Removes elements (greedily, increasing weight, earlier index wins) until
/// the basis is strictly reduced; the filtration is unchanged (verified).
pub fn reduce_basis(wb: &WeightedBasis) -> WeightedBasis {
    let f = compute_filtration(wb);
    let dim = wb.algebra().dim();
    let mut order: Vec<usize> = (0..wb.len()).collect();
    order.sort_by(|&a, &b| wb.elements()[a].1.cmp(&wb.elements()[b].1).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for j in order {
        let (v, w) = &wb.elements()[j];
        let mut span_gens: Vec<Vector> = f.space_below(w).basis().to_vec();
        span_gens.extend(
            kept.iter()
                .filter(|&&k| wb.elements()[k].1 == *w)
                .map(|&k| wb.elements()[k].0.clone()),
        );
        if !Subspace::span(dim, span_gens).contains(v) {
            kept.push(j);
        }
    }
    kept.sort();
    let reduced = WeightedBasis::new(
        wb.algebra().clone(),
        kept.iter().map(|&k| wb.elements()[k].clone()).collect(),
    )
    .expect("subset keeping the filtration still generates");
    let rf = compute_filtration(&reduced);
    assert_eq!(rf, f, "reduction must preserve the filtration");
    assert!(
        is_reduced_strict(&reduced, &rf).reduced,
        "greedy reduction must yield a strictly reduced basis"
    );
    reduced
}

/// The graded contraction: ⊕_λ F_λ/F_λ⁻ with the induced bracket, realized
/// on an adapted linear basis of g.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    algebra: LieAlgebra,
    degrees: Vec<Rational>,
    /// Adapted basis vectors in the original coordinates (row i = vector i).
    section: Vec<Vector>,
    /// For each original basis element Aⱼ: its position in the adapted basis.
    induced_positions: Vec<usize>,
    weights: Vec<Rational>,
}

impl Contraction {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn degrees(&self) -> &[Rational] {
        &self.degrees
    }

    pub fn grading(&self) -> Grading {
        Grading::new(self.algebra.clone(), self.degrees.to_vec())
            .expect("contraction bracket is graded by construction")
    }

    pub fn section_matrix(&self) -> &[Vector] {
        &self.section
    }

    /// Induced weighted basis Āⱼ of the contraction (unit vectors at the
    /// adapted positions, original weights).
    pub fn induced_basis(&self) -> WeightedBasis {
        let dim = self.algebra.dim();
        let elements = self
            .induced_positions
            .iter()
            .zip(&self.weights)
            .map(|(&p, w)| (crate::linalg::unit_vector(dim, p), w.clone()))
            .collect();
        WeightedBasis::new(self.algebra.clone(), elements)
            .expect("induced basis is adapted and generates the contraction")
    }

    pub fn induced_positions(&self) -> &[usize] {
        &self.induced_positions
    }
}

/// Builds the contraction of a strictly reduced weighted basis.
pub fn contract(wb: &WeightedBasis) -> Result<Contraction, WeightedError> {
    let f = compute_filtration(wb);
    let strict = is_reduced_strict(wb, &f);
    if !strict.reduced {
        let (w, _) = strict.witness.unwrap();
        return Err(WeightedError::NotReduced {
            weight: format_rational(&w),
        });
    }
    let alg = wb.algebra();
    let dim = alg.dim();

    // Adapted basis: per jump weight, first the reduced generators of that
    // weight (index order), then echelon completion from the RREF rows of F_λ.
    let mut adapted: Vec<Vector> = Vec::new();
    let mut degrees: Vec<Rational> = Vec::new();
    let mut induced_positions = vec![usize::MAX; wb.len()];
    for (jump, space) in f.jump_weights().iter().zip(f.spaces()) {
        for (j, (v, w)) in wb.elements().iter().enumerate() {
            if w == jump {
                debug_assert!(
                    !Subspace::span(dim, adapted.iter().cloned()).contains(v),
                    "strict reducedness places generators above F_λ⁻"
                );
                induced_positions[j] = adapted.len();
                adapted.push(v.clone());
                degrees.push(jump.clone());
            }
        }
        for row in space.basis() {
            if !Subspace::span(dim, adapted.iter().cloned()).contains(row) {
                adapted.push(row.clone());
                degrees.push(jump.clone());
            }
        }
        debug_assert_eq!(
            Subspace::span(dim, adapted.iter().cloned()),
            space.clone(),
            "adapted basis must span F_λ level by level"
        );
    }
    assert_eq!(adapted.len(), dim);
    debug_assert!(induced_positions.iter().all(|&p| p != usize::MAX));

    // Graded bracket: class of [vᵢ, vⱼ] in W_{λᵢ+λⱼ}: in adapted
    // coordinates, keep exactly the components of degree λᵢ + λⱼ.
    let names = contraction_names(alg, &adapted);
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let b = alg.bracket(&adapted[i], &adapted[j]);
            let coords = Subspace::solve_in_terms_of(&adapted, &b).expect("adapted basis spans g");
            let target = &degrees[i] + &degrees[j];
            let mut v = crate::linalg::zero_vector(dim);
            let mut nonzero = false;
            for (k, c) in coords.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                assert!(
                    degrees[k] <= target,
                    "bracket left the filtration level [F_λ, F_μ] ⊆ F_{{λ+μ}}"
                );
                if degrees[k] == target {
                    v[k] = c;
                    nonzero = true;
                }
            }
            if nonzero {
                brackets.push((i, j, v));
            }
        }
    }
    let algebra =
        LieAlgebra::new(names, brackets).expect("graded contraction bracket satisfies Jacobi");
    let contraction = Contraction {
        algebra,
        degrees,
        section: adapted,
        induced_positions,
        weights: wb.weights(),
    };
    // The induced basis must be an adapted, strictly reduced basis of the
    // contraction with the original weights.
    let induced = contraction.induced_basis();
    let fi = compute_filtration(&induced);
    debug_assert!(is_reduced_strict(&induced, &fi).reduced);
    let _ = contraction.grading();
    Ok(contraction)
}

fn contraction_names(alg: &LieAlgebra, adapted: &[Vector]) -> Vec<String> {
    let mut names: Vec<String> = Vec::with_capacity(adapted.len());
    for (i, v) in adapted.iter().enumerate() {
        let unit = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect::<Vec<_>>();
        let candidate = match unit.as_slice() {
            [(k, c)] if (*c).is_one() => alg.names()[*k].clone(),
            _ => format!("E{}", i + 1),
        };
        let mut name = candidate;
        while names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{heisenberg, n23, sl2};
    use crate::linalg::unit_vector;
    use crate::scalar::{rat, rat_int};
    use num_traits::One;

    fn wb(alg: &LieAlgebra, els: &[(&[i64], i64)]) -> WeightedBasis {
        WeightedBasis::new(
            alg.clone(),
            els.iter()
                .map(|(v, w)| (v.iter().map(|&x| rat_int(x)).collect(), rat_int(*w)))
                .collect(),
        )
        .unwrap()
    }

    fn footnote_basis() -> WeightedBasis {
        // X1, X2, Y+T1, T1, T2 with weights 1,1,3,3,3
        wb(
            &n23(),
            &[
                (&[1, 0, 0, 0, 0], 1),
                (&[0, 1, 0, 0, 0], 1),
                (&[0, 0, 1, 1, 0], 3),
                (&[0, 0, 0, 1, 0], 3),
                (&[0, 0, 0, 0, 1], 3),
            ],
        )
    }

    #[test]
    fn heisenberg_filtration() {
        let b = wb(&heisenberg(), &[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]);
        let f = compute_filtration(&b);
        assert_eq!(f.jump_weights(), &[rat_int(1), rat_int(2)]);
        assert_eq!(f.jump_dims(), vec![2, 3]);
        assert!(f.spaces()[0].contains(&unit_vector(3, 0)));
        assert!(!f.spaces()[0].contains(&unit_vector(3, 2)));
    }

    #[test]
    fn n23_filtration() {
        let b = wb(&n23(), &[(&[1, 0, 0, 0, 0], 1), (&[0, 1, 0, 0, 0], 1)]);
        let f = compute_filtration(&b);
        assert_eq!(f.jump_weights(), &[rat_int(1), rat_int(2), rat_int(3)]);
        assert_eq!(f.jump_dims(), vec![2, 3, 5]);
    }

    #[test]
    fn sl2_filtration_folds_back() {
        let b = wb(&sl2(), &[(&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        let f = compute_filtration(&b);
        assert_eq!(f.jump_weights(), &[rat_int(1), rat_int(2)]);
        assert_eq!(f.jump_dims(), vec![2, 3]);
    }

    #[test]
    fn footnote_basis_weak_but_not_strict() {
        let b = footnote_basis();
        let f = compute_filtration(&b);
        assert_eq!(f.jump_weights(), &[rat_int(1), rat_int(2), rat_int(3)]);
        assert!(is_reduced_weak(&b, &f));
        let strict = is_reduced_strict(&b, &f);
        assert!(!strict.reduced);
        let (w, v) = strict.witness.unwrap();
        assert_eq!(w, rat_int(3));
        // Witness must be proportional to Y.
        assert!(!v[2].is_zero());
        for k in [0, 1, 3, 4] {
            assert!(v[k].is_zero(), "witness has spurious component {k}");
        }
    }

    #[test]
    fn strict_implies_weak_and_simple_cases() {
        let b = wb(&heisenberg(), &[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]);
        let f = compute_filtration(&b);
        assert!(is_reduced_strict(&b, &f).reduced);
        assert!(is_reduced_weak(&b, &f));

        // Heisenberg {X, Y, Z} with weights 1,1,2 is strictly reduced.
        let b = wb(
            &heisenberg(),
            &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 2)],
        );
        let f = compute_filtration(&b);
        assert!(is_reduced_strict(&b, &f).reduced);

        // Z with weight 3 lands inside F₃⁻ = F₂ ∋ [X,Y]: weakly non-reduced.
        let b = wb(
            &heisenberg(),
            &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 3)],
        );
        let f = compute_filtration(&b);
        assert!(!is_reduced_weak(&b, &f));
        assert!(!is_reduced_strict(&b, &f).reduced);
    }

    #[test]
    fn reduce_footnote_basis_drops_t1() {
        let b = footnote_basis();
        let r = reduce_basis(&b);
        assert_eq!(r.len(), 4);
        let kept: Vec<Vector> = r.elements().iter().map(|(v, _)| v.clone()).collect();
        // Keeps X1, X2, Y+T1, T2; drops T1.
        assert!(kept.contains(&vec![
            rat_int(0),
            rat_int(0),
            rat_int(1),
            rat_int(1),
            rat_int(0)
        ]));
        assert!(!kept.contains(&unit_vector(5, 3)));
        assert_eq!(compute_filtration(&r), compute_filtration(&b));
        // Idempotent.
        assert_eq!(reduce_basis(&r), r);
    }

    #[test]
    fn filtration_is_basis_order_independent() {
        let b1 = footnote_basis();
        let elements: Vec<_> = b1.elements().iter().cloned().rev().collect();
        let b2 = WeightedBasis::new(n23(), elements).unwrap();
        assert_eq!(compute_filtration(&b1), compute_filtration(&b2));
    }

    #[test]
    fn filtration_bracket_compatibility() {
        let b = footnote_basis();
        let f = compute_filtration(&b);
        let alg = b.algebra();
        let top = f.jump_weights().last().unwrap().clone();
        for (wi, si) in f.jump_weights().iter().zip(f.spaces()) {
            for (wj, sj) in f.jump_weights().iter().zip(f.spaces()) {
                let sum = wi + wj;
                if sum > top {
                    continue;
                }
                let br = alg.bracket_subspaces(si, sj);
                assert!(f.space_at(&sum).contains_subspace(&br));
            }
        }
    }

    #[test]
    fn contract_sl2_gives_heisenberg() {
        let b = wb(&sl2(), &[(&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        let k = contract(&b).unwrap();
        let g = k.algebra();
        assert_eq!(g.dim(), 3);
        // Adapted order: E, F (level 1), H (level 2); [Ē, F̄] = H̄, rest 0.
        assert_eq!(k.degrees(), &[rat_int(1), rat_int(1), rat_int(2)]);
        assert_eq!(g.basis_bracket(0, 1), unit_vector(3, 2));
        assert!(is_zero_vector(&g.basis_bracket(0, 2)));
        assert!(is_zero_vector(&g.basis_bracket(1, 2)));
    }

    #[test]
    fn contract_adapted_basis_is_canonical() {
        // N₂,₃ with its adapted basis: contraction has identical structure
        // constants in the adapted (standard) basis.
        let n = n23();
        let b = wb(
            &n,
            &[
                (&[1, 0, 0, 0, 0], 1),
                (&[0, 1, 0, 0, 0], 1),
                (&[0, 0, 1, 0, 0], 2),
                (&[0, 0, 0, 1, 0], 3),
                (&[0, 0, 0, 0, 1], 3),
            ],
        );
        let k = contract(&b).unwrap();
        assert_eq!(k.algebra(), &n);
        // Contraction of a contraction is itself.
        let k2 = contract(&k.induced_basis()).unwrap();
        assert_eq!(k2.algebra(), k.algebra());
    }

    #[test]
    fn contract_stratified_generators_is_canonical() {
        // Free nilpotent N23 is stratified; a weighted basis drawn from W1
        // contracts back to the original structure constants.
        let n = n23();
        let b = wb(&n, &[(&[1, 0, 0, 0, 0], 1), (&[0, 1, 0, 0, 0], 1)]);
        let k = contract(&b).unwrap();
        assert_eq!(k.algebra(), &n);
        assert_eq!(
            k.degrees(),
            &[rat_int(1), rat_int(1), rat_int(2), rat_int(3), rat_int(3)]
        );
    }

    #[test]
    fn contract_abelian_any_weights() {
        let a = LieAlgebra::abelian(3);
        let b = WeightedBasis::new(
            a.clone(),
            vec![
                (unit_vector(3, 0), rat_int(1)),
                (unit_vector(3, 1), rat(3, 2)),
                (unit_vector(3, 2), rat_int(4)),
            ],
        )
        .unwrap();
        let k = contract(&b).unwrap();
        assert!(k.algebra().is_abelian());
        assert_eq!(k.algebra().dim(), 3);
    }

    #[test]
    fn contract_rejects_unreduced() {
        let b = footnote_basis();
        assert!(matches!(
            contract(&b),
            Err(WeightedError::NotReduced { .. })
        ));
    }

    #[test]
    fn contraction_homogeneous_dimension_matches_layer_sum() {
        let b = wb(&n23(), &[(&[1, 0, 0, 0, 0], 1), (&[0, 1, 0, 0, 0], 1)]);
        let f = compute_filtration(&b);
        let k = contract(&b).unwrap();
        let q: Rational = k.degrees().iter().cloned().sum();
        let from_layers: Rational = f
            .jump_weights()
            .iter()
            .zip(f.layer_dims())
            .map(|(w, d)| w * rat_int(d as i64))
            .sum();
        assert_eq!(q, from_layers);
        assert_eq!(q, rat_int(10));
    }

    #[test]
    fn invalid_bases_rejected() {
        let h = heisenberg();
        assert_eq!(
            WeightedBasis::new(h.clone(), vec![(unit_vector(3, 0), rat(1, 2))]).unwrap_err(),
            WeightedError::WeightBelowOne("1/2".into())
        );
        assert_eq!(
            WeightedBasis::new(
                h.clone(),
                vec![
                    (unit_vector(3, 0), Rational::one()),
                    (unit_vector(3, 0), Rational::one())
                ]
            )
            .unwrap_err(),
            WeightedError::NotIndependent
        );
        assert!(matches!(
            WeightedBasis::new(h, vec![(unit_vector(3, 0), Rational::one())]),
            Err(WeightedError::DoesNotGenerate { .. })
        ));
    }
}
