//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime (run with `cargo test --test acceptance -- --nocapture`).
//! Every tolerance is pinned here, in code.

use liesym::catalog::{
    footnote_weighted_basis, heisenberg, n23, n23_so2_derivation, n23_system_ops,
    n23_weighted_basis, sl2,
};
use liesym::env::{build_homogeneous_delta, check_system, EnvElement, EnvError};
use liesym::grading::{quasiequivalence_report, Grading};
use liesym::lie::LieAlgebra;
use liesym::linalg::{is_zero_vector, unit_vector};
use liesym::poly::CPoly;
use liesym::products::{concat_system, contraction_functoriality, product};
use liesym::sampler::{SamplerConfig, Scheme};
use liesym::scalar::{gauss, rat, rat_int, GaussRational, Rational};
use liesym::spectrum::{
    abelian_joint_injectivity, convolution_identity_check, plancherel_check,
    polar_decomposition_check, pushforward_change_of_generators, spectrum_sample, AbelianSystem,
    InjectivityVerdict, KernelGrid, Multiplier, QuadratureOptions,
};
use liesym::weighted::{compute_filtration, contract, is_reduced_strict, is_reduced_weak};
use num_traits::Zero;
use std::f64::consts::PI;
use std::sync::Arc;
use std::time::{Duration, Instant};

fn finish(criterion: usize, name: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE {criterion:>2} ({name}): PASS in {:.3}s (limit {:.0}s)",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(
        elapsed <= limit,
        "criterion {criterion} exceeded its {limit:?} budget: {elapsed:?}"
    );
}

#[test]
fn criterion_01_n23_structural_suite() {
    let started = Instant::now();
    let alg = n23();
    let series = alg.descending_central_series();
    assert_eq!(series.dims(), vec![5, 3, 2, 0]);
    assert_eq!(alg.guivarch_growth_degree().unwrap(), 10);
    let grading = Grading::new(alg, [1, 1, 2, 3, 3].iter().map(|&d| rat_int(d)).collect())
        .expect("grading (1,1,2,3,3) validates");
    let report = quasiequivalence_report(&grading).unwrap();
    assert_eq!(report.q_delta, rat_int(10));
    assert_eq!(report.q_growth, 10);
    assert!(report.stratified);
    assert!(report.dichotomy_ok);
    assert_eq!(
        report.q_delta == rat_int(report.q_growth as i64),
        report.stratified
    );
    finish(1, "N23 structural suite", started, Duration::from_secs(1));
}

#[test]
fn criterion_02_footnote_counterexample() {
    let started = Instant::now();
    let wb = footnote_weighted_basis();
    let f = compute_filtration(&wb);
    assert!(is_reduced_weak(&wb, &f), "footnote basis is weakly reduced");
    let strict = is_reduced_strict(&wb, &f);
    assert!(!strict.reduced, "footnote basis is not strictly reduced");
    let (weight, witness) = strict.witness.expect("failure carries a witness");
    assert_eq!(weight, rat_int(3));
    // Witness must be proportional to Y = e₂.
    assert!(!witness[2].is_zero());
    for k in [0usize, 1, 3, 4] {
        assert!(witness[k].is_zero(), "witness not proportional to Y");
    }
    finish(
        2,
        "footnote counterexample",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_03_n23_operator_systems() {
    let started = Instant::now();
    let grading =
        Grading::new(n23(), [1, 1, 2, 3, 3].iter().map(|&d| rat_int(d)).collect()).unwrap();

    // 3-operator system: valid, degrees (2,4,6), all SO2-invariant.
    let (alg3, ops3) = n23_system_ops(3);
    let sys3 = check_system(ops3.clone()).expect("3-operator system validates");
    assert_eq!(sys3.len(), 3);
    let degrees3: Vec<Rational> = ops3
        .iter()
        .map(|d| d.homogeneity_degree(&grading).unwrap())
        .collect();
    assert_eq!(degrees3, vec![rat_int(2), rat_int(4), rat_int(6)]);
    let j = n23_so2_derivation(alg3.clone());
    for op in &ops3 {
        assert!(j.leaves_invariant(op));
    }

    // 4-operator system: valid, degrees (2,4,3,3), -iT1 not invariant.
    let (alg4, ops4) = n23_system_ops(4);
    let sys4 = check_system(ops4.clone()).expect("4-operator system validates");
    assert_eq!(sys4.len(), 4);
    let degrees4: Vec<Rational> = ops4
        .iter()
        .map(|d| d.homogeneity_degree(&grading).unwrap())
        .collect();
    assert_eq!(
        degrees4,
        vec![rat_int(2), rat_int(4), rat_int(3), rat_int(3)]
    );
    let j = n23_so2_derivation(alg4.clone());
    assert!(!j.leaves_invariant(&ops4[2]), "-iT1 is not SO2-invariant");

    // Negative control: [X1², X2²] ≠ 0.
    let x1 = EnvElement::generator(alg4.clone(), 0);
    let x2 = EnvElement::generator(alg4.clone(), 1);
    assert!(!x1.pow(2).commutator(&x2.pow(2)).is_zero());
    assert!(matches!(
        check_system(vec![x1.pow(2), x2.pow(2)]),
        Err(EnvError::NotCommuting { .. })
    ));
    finish(3, "N23 operator systems", started, Duration::from_secs(5));
}

#[test]
fn criterion_04_contraction_suite() {
    // contract(sl2, {E,F}, w=(1,1)) has the structure constants of h1.
    let started = Instant::now();
    let s = sl2();
    let basis = liesym::WeightedBasis::new(
        s,
        vec![
            (unit_vector(3, 1), rat_int(1)),
            (unit_vector(3, 2), rat_int(1)),
        ],
    )
    .unwrap();
    let k = contract(&basis).unwrap();
    let g = k.algebra();
    assert_eq!(g.dim(), 3);
    assert_eq!(g.basis_bracket(0, 1), unit_vector(3, 2));
    assert!(is_zero_vector(&g.basis_bracket(0, 2)));
    assert!(is_zero_vector(&g.basis_bracket(1, 2)));
    finish(4, "contraction: sl2 -> h1", started, Duration::from_secs(1));

    // Adapted-basis graded algebras reproduce their own constants.
    let started = Instant::now();
    for (alg, wb) in [
        (n23(), n23_weighted_basis()),
        (
            heisenberg(),
            liesym::WeightedBasis::new(
                heisenberg(),
                vec![
                    (unit_vector(3, 0), rat_int(1)),
                    (unit_vector(3, 1), rat_int(1)),
                    (unit_vector(3, 2), rat_int(2)),
                ],
            )
            .unwrap(),
        ),
    ] {
        let k = contract(&wb).unwrap();
        assert_eq!(k.algebra(), &alg, "adapted contraction is canonical");
        // Jacobi and gradedness hold by construction; check again.
        let _ = Grading::new(k.algebra().clone(), k.degrees().to_vec()).unwrap();
    }
    finish(
        4,
        "contraction: canonical on adapted bases",
        started,
        Duration::from_secs(1),
    );

    // Contraction commutes with direct products, bit-exactly.
    let started = Instant::now();
    let r = LieAlgebra::abelian(1);
    let pa = product(vec![sl2(), r.clone()]).unwrap();
    let bs = liesym::WeightedBasis::new(
        sl2(),
        vec![
            (unit_vector(3, 1), rat_int(1)),
            (unit_vector(3, 2), rat_int(1)),
        ],
    )
    .unwrap();
    let br = liesym::WeightedBasis::new(r, vec![(unit_vector(1, 0), rat_int(1))]).unwrap();
    let func = contraction_functoriality(&pa, &[bs, br]).unwrap();
    assert!(func.holds, "contract(product) = block(contract(factors))");

    let pa = product(vec![heisenberg(), LieAlgebra::abelian(2)]).unwrap();
    let bh = liesym::WeightedBasis::new(
        heisenberg(),
        vec![
            (unit_vector(3, 0), rat_int(1)),
            (unit_vector(3, 1), rat_int(1)),
        ],
    )
    .unwrap();
    let ba = liesym::WeightedBasis::new(
        LieAlgebra::abelian(2),
        vec![
            (unit_vector(2, 0), rat_int(1)),
            (unit_vector(2, 1), rat(3, 2)),
        ],
    )
    .unwrap();
    let func = contraction_functoriality(&pa, &[bh, ba]).unwrap();
    assert!(func.holds);
    finish(
        4,
        "contraction: product functoriality",
        started,
        Duration::from_secs(1),
    );
}

/// Deterministic counter-based source for the random PBW cases.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    fn coeff(&mut self) -> GaussRational {
        // Height ≤ 10: numerators and denominators within ±10.
        let num = self.below(21) as i64 - 10;
        let den = self.below(10) as i64 + 1;
        let im_num = self.below(21) as i64 - 10;
        gauss(rat(num, den), rat(im_num, den))
    }
}

fn random_algebra(rng: &mut Rng) -> LieAlgebra {
    let base = match rng.below(5) {
        0 => LieAlgebra::abelian((rng.below(3) + 1) as usize),
        1 => heisenberg(),
        2 => sl2(),
        3 => n23(),
        _ => product(vec![heisenberg(), LieAlgebra::abelian(1)])
            .unwrap()
            .total()
            .as_ref()
            .clone(),
    };
    let n = base.dim();
    // Random exact change of basis by unimodular elementary operations:
    // conjugation preserves Jacobi exactly and keeps constants integral.
    let mut rows: Vec<Vec<Rational>> = (0..n).map(|i| unit_vector(n, i)).collect();
    for _ in 0..(2 * n) {
        let i = rng.below(n as u64) as usize;
        let j = rng.below(n as u64) as usize;
        if i == j {
            rows.swap(i, (j + 1) % n);
            continue;
        }
        let c = rat_int(rng.below(3) as i64 - 1);
        let scaled: Vec<Rational> = rows[j].iter().map(|x| x * &c).collect();
        for (dst, s) in rows[i].iter_mut().zip(scaled) {
            *dst += s;
        }
    }
    let names = (1..=n).map(|i| format!("V{i}")).collect();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let b = base.bracket(&rows[i], &rows[j]);
            let coords = liesym::Subspace::solve_in_terms_of(&rows, &b)
                .expect("unimodular rows stay a basis");
            if !is_zero_vector(&coords) {
                brackets.push((i, j, coords));
            }
        }
    }
    LieAlgebra::new(names, brackets).expect("conjugated algebra satisfies Jacobi")
}

fn random_element(rng: &mut Rng, alg: &Arc<LieAlgebra>) -> EnvElement {
    let mut out = EnvElement::zero(alg.clone());
    let terms = rng.below(3) + 1;
    for _ in 0..terms {
        let mut mono = EnvElement::one(alg.clone());
        let letters = rng.below(3) + 1;
        for _ in 0..letters {
            let g = EnvElement::generator(alg.clone(), rng.below(alg.dim() as u64) as usize);
            mono = mono.multiply(&g);
        }
        out = out.add(&mono.scale(&rng.coeff()));
    }
    out
}

/// A small expression tree over basis generators, evaluated independently
/// in any basis order.
enum Expr {
    Gen(usize),
    Scale(GaussRational, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

fn random_expr(rng: &mut Rng, dim: usize, depth: u32) -> Expr {
    if depth == 0 || rng.below(3) == 0 {
        return Expr::Gen(rng.below(dim as u64) as usize);
    }
    match rng.below(3) {
        0 => Expr::Scale(rng.coeff(), Box::new(random_expr(rng, dim, depth - 1))),
        1 => Expr::Add(
            Box::new(random_expr(rng, dim, depth - 1)),
            Box::new(random_expr(rng, dim, depth - 1)),
        ),
        _ => Expr::Mul(
            Box::new(random_expr(rng, dim, depth - 1)),
            Box::new(random_expr(rng, dim, depth - 1)),
        ),
    }
}

fn eval_expr(e: &Expr, alg: &Arc<LieAlgebra>, gen_map: &[usize]) -> EnvElement {
    match e {
        Expr::Gen(i) => EnvElement::generator(alg.clone(), gen_map[*i]),
        Expr::Scale(c, a) => eval_expr(a, alg, gen_map).scale(c),
        Expr::Add(a, b) => eval_expr(a, alg, gen_map).add(&eval_expr(b, alg, gen_map)),
        Expr::Mul(a, b) => eval_expr(a, alg, gen_map).multiply(&eval_expr(b, alg, gen_map)),
    }
}

#[test]
fn criterion_05_pbw_property_suite() {
    let started = Instant::now();
    let mut rng = Rng(0xACCE5501);
    for case in 0..1000 {
        let alg = Arc::new(random_algebra(&mut rng));
        let d = random_element(&mut rng, &alg);
        let e = random_element(&mut rng, &alg);
        let f = random_element(&mut rng, &alg);

        // Associativity and distributivity.
        assert_eq!(
            d.multiply(&e).multiply(&f),
            d.multiply(&e.multiply(&f)),
            "associativity failed in case {case}"
        );
        // Involution and antiautomorphism.
        assert_eq!(d.adjoint().adjoint(), d, "involution failed in case {case}");
        assert_eq!(
            d.multiply(&e).adjoint(),
            e.adjoint().multiply(&d.adjoint()),
            "antiautomorphism failed in case {case}"
        );

        // realize ∘ adjoint_form = adjoint_env ∘ realize over a weighted
        // basis of unit vectors.
        let dim = alg.dim();
        let basis = liesym::WeightedBasis::new(
            alg.as_ref().clone(),
            (0..dim)
                .map(|i| (unit_vector(dim, i), rat_int(1)))
                .collect(),
        )
        .unwrap();
        let mut terms = Vec::new();
        for _ in 0..(rng.below(3) + 1) {
            let len = rng.below(4) as usize;
            let word: Vec<usize> = (0..len).map(|_| rng.below(dim as u64) as usize).collect();
            terms.push((word, rng.coeff()));
        }
        let form = liesym::forms::Form::new(basis, terms).unwrap();
        assert_eq!(
            form.adjoint().realize(),
            form.realize().adjoint(),
            "realize/adjoint intertwining failed in case {case}"
        );

        // Basis-order independence of zero and commutativity verdicts:
        // evaluate the same expressions in a permuted basis order.
        let perm: Vec<usize> = {
            let mut p: Vec<usize> = (0..dim).collect();
            for i in (1..dim).rev() {
                let j = rng.below((i + 1) as u64) as usize;
                p.swap(i, j);
            }
            p
        };
        let alg_p = Arc::new(alg.permuted(&perm));
        let mut inv = vec![0usize; dim];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let ex = random_expr(&mut rng, dim, 3);
        let ey = random_expr(&mut rng, dim, 3);
        let identity: Vec<usize> = (0..dim).collect();
        let dx = eval_expr(&ex, &alg, &identity);
        let dy = eval_expr(&ey, &alg, &identity);
        let px = eval_expr(&ex, &alg_p, &inv);
        let py = eval_expr(&ey, &alg_p, &inv);
        assert_eq!(
            dx.is_zero(),
            px.is_zero(),
            "zero verdict differs in case {case}"
        );
        assert_eq!(
            dx.commutator(&dy).is_zero(),
            px.commutator(&py).is_zero(),
            "commutativity verdict differs in case {case}"
        );
    }
    finish(
        5,
        "PBW property suite (1000 cases)",
        started,
        Duration::from_secs(30),
    );
}

fn laplacian_1d() -> AbelianSystem {
    let a = Arc::new(LieAlgebra::abelian(1));
    let l = EnvElement::generator(a, 0).pow(2).neg();
    let gr = Grading::new(LieAlgebra::abelian(1), vec![rat_int(1)]).unwrap();
    let sys = check_system(vec![l]).unwrap();
    AbelianSystem::new(&sys, Some(&gr)).unwrap()
}

#[test]
fn criterion_06_abelian_plancherel() {
    let started = Instant::now();
    let asys = laplacian_1d();
    let f = Multiplier::ExpNegPoly(CPoly::variable(1, 0));
    let rec = plancherel_check(&asys, &f, &QuadratureOptions::default()).unwrap();
    let expected = 0.5 / (2.0 * PI).sqrt();
    assert!(
        (rec.lhs - expected).abs() / expected < 1e-6,
        "lhs {} vs {expected}",
        rec.lhs
    );
    assert!(
        (rec.rhs - expected).abs() / expected < 1e-6,
        "rhs {} vs {expected}",
        rec.rhs
    );
    assert!(rec.rel_err < 1e-6, "rel_err {}", rec.rel_err);
    finish(
        6,
        "abelian Plancherel (Gaussian oracle)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_07_polar_decomposition() {
    let started = Instant::now();
    let asys = laplacian_1d();
    let rec = polar_decomposition_check(&asys, &[0.0], &[1.0], 2.0, 4.0).unwrap();
    assert!((rec.ratio - 2.0).abs() < 1e-4, "ratio {}", rec.ratio);
    assert!((rec.target - 2.0).abs() < 1e-12);
    finish(
        7,
        "polar decomposition scaling",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_08_pushforward_of_generators() {
    let started = Instant::now();
    // Route A: direct sampling of sigma for L = -d².
    let direct = spectrum_sample(
        &laplacian_1d(),
        &SamplerConfig {
            scheme: Scheme::Stratified { per_dim: 1_000_000 },
            radius: 4.0,
            seed: 0xA11CE,
        },
    );
    // Route B: sample sigma for L = -i d, then push through P(λ) = λ².
    let a = Arc::new(LieAlgebra::abelian(1));
    let minus_i_d = EnvElement::generator(a, 0).scale(&-liesym::scalar::gauss_i());
    let gr = Grading::new(LieAlgebra::abelian(1), vec![rat_int(1)]).unwrap();
    let sys = check_system(vec![minus_i_d]).unwrap();
    let asys = AbelianSystem::new(&sys, Some(&gr)).unwrap();
    let cloud = spectrum_sample(
        &asys,
        &SamplerConfig {
            scheme: Scheme::Stratified { per_dim: 1_000_000 },
            radius: 4.0,
            seed: 0xB0B,
        },
    );
    let pushed = pushforward_change_of_generators(&cloud, &[CPoly::variable(1, 0).pow(2)]);

    let mut max_rel: f64 = 0.0;
    for k in 0..20 {
        let lo = [0.2 * k as f64];
        let hi = [0.2 * (k + 1) as f64];
        let ma = direct.box_mass(&lo, &hi);
        let mb = pushed.box_mass(&lo, &hi);
        let rel = (ma - mb).abs() / ma.abs().max(mb.abs());
        max_rel = max_rel.max(rel);
        assert!(
            rel < 0.02,
            "box {k}: direct {ma} vs pushforward {mb} (rel {rel})"
        );
    }
    println!("  max per-box relative deviation: {max_rel:.2e}");
    finish(
        8,
        "pushforward of generators",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_09_product_plancherel() {
    let started = Instant::now();
    let r = LieAlgebra::abelian(1);
    let pa = product(vec![r.clone(), r.clone()]).unwrap();
    let ra = Arc::new(r);
    let minus_dd = EnvElement::generator(ra.clone(), 0).pow(2).neg();
    let s1 = check_system(vec![minus_dd.clone()]).unwrap();
    let s2 = check_system(vec![minus_dd.clone()]).unwrap();
    let sys = concat_system(&pa, &[s1, s2]).unwrap();
    let gr2 = Grading::new(pa.total().as_ref().clone(), vec![rat_int(1), rat_int(1)]).unwrap();
    let asys2 = AbelianSystem::new(&sys, Some(&gr2)).unwrap();
    let es2 = spectrum_sample(
        &asys2,
        &SamplerConfig {
            scheme: Scheme::Stratified { per_dim: 1000 },
            radius: 2.0,
            seed: 0x9,
        },
    );
    // 1-D factor masses, sampled independently.
    let es1 = spectrum_sample(
        &laplacian_1d(),
        &SamplerConfig {
            scheme: Scheme::Stratified { per_dim: 1_000_000 },
            radius: 2.0,
            seed: 0x51,
        },
    );
    let width = 0.4;
    let mut max_rel: f64 = 0.0;
    for i in 0..10 {
        let (alo, ahi) = (i as f64 * width, (i + 1) as f64 * width);
        let mi = es1.box_mass(&[alo], &[ahi]);
        for j in 0..10 {
            let (blo, bhi) = (j as f64 * width, (j + 1) as f64 * width);
            let mj = es1.box_mass(&[blo], &[bhi]);
            let m2 = es2.box_mass(&[alo, blo], &[ahi, bhi]);
            let prod = mi * mj;
            let rel = (m2 - prod).abs() / m2.abs().max(prod.abs());
            max_rel = max_rel.max(rel);
            assert!(
                rel < 0.02,
                "box ({i},{j}): product {m2} vs factor product {prod} (rel {rel})"
            );
        }
    }
    println!("  max per-box relative deviation: {max_rel:.2e}");
    finish(9, "product Plancherel", started, Duration::from_secs(30));
}

#[test]
fn criterion_10_convolution_identity() {
    let started = Instant::now();
    let asys = laplacian_1d();
    let f = Multiplier::ExpNegPoly(CPoly::variable(1, 0));
    let grid = KernelGrid {
        x_radius: 6.0,
        points: 121,
    };
    let rec =
        convolution_identity_check(&asys, &f, &f, &grid, &QuadratureOptions::default()).unwrap();
    assert!(
        rec.max_abs_deviation < 1e-5,
        "convolution deviation {}",
        rec.max_abs_deviation
    );
    // And against the closed-form heat kernel at t = 2.
    let mut max_dev: f64 = 0.0;
    for (x, v) in rec.grid.iter().zip(&rec.product_kernel) {
        let target = (8.0 * PI).powf(-0.5) * (-x * x / 8.0).exp();
        max_dev = max_dev.max((v - target).abs());
    }
    assert!(max_dev < 1e-5, "closed-form deviation {max_dev}");
    finish(10, "convolution identity", started, Duration::from_secs(10));
}

#[test]
fn criterion_11_joint_injectivity() {
    let started = Instant::now();
    let a2 = Arc::new(LieAlgebra::abelian(2));
    let gr = Grading::new(LieAlgebra::abelian(2), vec![rat_int(1), rat_int(1)]).unwrap();
    let i = liesym::scalar::gauss_i();
    let sys = check_system(vec![
        EnvElement::generator(a2.clone(), 0).scale(&-i.clone()),
        EnvElement::generator(a2.clone(), 1).scale(&-i.clone()),
    ])
    .unwrap();
    let asys = AbelianSystem::new(&sys, Some(&gr)).unwrap();
    assert!(matches!(
        abelian_joint_injectivity(&asys, 64, 1e-9).unwrap(),
        InjectivityVerdict::Injective { .. }
    ));

    let sys = check_system(vec![EnvElement::generator(a2.clone(), 0).pow(2).neg()]).unwrap();
    let asys = AbelianSystem::new(&sys, Some(&gr)).unwrap();
    match abelian_joint_injectivity(&asys, 64, 1e-9).unwrap() {
        InjectivityVerdict::CommonZero { witness } => {
            assert!(witness[0].is_zero(), "witness must have ξ₁ = 0");
            assert!(!witness[1].is_zero());
        }
        other => panic!("expected an exact common zero, got {other:?}"),
    }
    finish(
        11,
        "joint injectivity verdicts",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_12_delta_construction() {
    let started = Instant::now();
    let (_, ops) = n23_system_ops(3);
    let grading =
        Grading::new(n23(), [1, 1, 2, 3, 3].iter().map(|&d| rat_int(d)).collect()).unwrap();
    let sys = check_system(ops).unwrap().with_grading(&grading).unwrap();
    let delta = build_homogeneous_delta(&sys, &grading).unwrap();
    assert_eq!(delta.common_multiple, rat_int(12));
    assert_eq!(delta.exponents, vec![12, 6, 4]);
    assert_eq!(delta.degree, rat_int(24));
    assert_eq!(
        delta.delta.homogeneity_degree(&grading).unwrap(),
        rat_int(24)
    );
    finish(
        12,
        "homogeneous delta construction",
        started,
        Duration::from_secs(5),
    );
}
