//! Numeric spectral calculus for commuting systems on abelian ℝ^d, where
//! the generator Xⱼ acts as iξⱼ: polynomial symbols, joint spectra sampled
//! as weighted clouds, Plancherel checks by quadrature, kernel transforms,
//! and the dilation/polar/growth structure of the spectral measure.

use crate::env::{EnvElement, OperatorSystem};
use crate::grading::Grading;
use crate::poly::CPoly;
use crate::quad::GaussLegendre;
use crate::sampler::{for_each_sample, EmpiricalSpectrum, GeneratorRecord, SamplerConfig};
use crate::scalar::{GaussRational, Rational};
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectrumError {
    #[error("operation requires an abelian algebra")]
    NonAbelian,
    #[error("operator {index} is not homogeneous for the given dilations")]
    Inhomogeneous { index: usize },
    #[error("symbol of operator {index} is not real (operator not formally self-adjoint)")]
    NotRealSymbol { index: usize },
    #[error("set has zero sampled mass")]
    ZeroMass,
    #[error("truncation error dominates the requested tolerance: {detail}")]
    TruncationDominates { detail: String },
    #[error("homogeneity degrees are required (attach a grading)")]
    MissingDegrees,
    #[error("{0}")]
    Unsupported(String),
}

/// Symbol of a left-invariant operator on abelian ℝ^d: X^e ↦ (iξ)^e.
pub fn symbol(d: &EnvElement) -> Result<CPoly, SpectrumError> {
    if !d.algebra().is_abelian() {
        return Err(SpectrumError::NonAbelian);
    }
    let n = d.algebra().dim();
    let mut out = CPoly::zero(n);
    let i = GaussRational::new(Rational::zero(), Rational::one());
    for (e, c) in d.terms() {
        let len: u32 = e.iter().sum();
        let mut coeff = c.clone();
        for _ in 0..(len % 4) {
            coeff *= i.clone();
        }
        out = out.add(&CPoly::monomial(n, e.clone(), coeff));
    }
    Ok(out)
}

/// A commuting system on abelian ℝ^d reduced to its real symbols, with the
/// dilation structure when a grading is attached.
#[derive(Clone, Debug)]
pub struct AbelianSystem {
    dim: usize,
    symbols: Vec<CPoly>,
    /// Homogeneity degrees rⱼ of the operators (when graded).
    degrees: Option<Vec<Rational>>,
    /// Dilation exponents ν_k of the coordinates (when graded).
    coordinate_degrees: Option<Vec<Rational>>,
}

impl AbelianSystem {
    pub fn new(sys: &OperatorSystem, gr: Option<&Grading>) -> Result<Self, SpectrumError> {
        let first = &sys.ops()[0];
        if !first.algebra().is_abelian() {
            return Err(SpectrumError::NonAbelian);
        }
        let dim = first.algebra().dim();
        let mut symbols = Vec::with_capacity(sys.len());
        for (index, op) in sys.ops().iter().enumerate() {
            let p = symbol(op)?;
            if !p.is_real() {
                return Err(SpectrumError::NotRealSymbol { index });
            }
            symbols.push(p);
        }
        let (degrees, coordinate_degrees) = match gr {
            Some(gr) => {
                let degrees = sys
                    .ops()
                    .iter()
                    .enumerate()
                    .map(|(index, op)| {
                        op.homogeneity_degree(gr)
                            .map_err(|_| SpectrumError::Inhomogeneous { index })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (Some(degrees), Some(gr.degrees().to_vec()))
            }
            None => (None, None),
        };
        Ok(AbelianSystem {
            dim,
            symbols,
            degrees,
            coordinate_degrees,
        })
    }

    pub fn from_symbols(
        dim: usize,
        symbols: Vec<CPoly>,
        degrees: Option<Vec<Rational>>,
        coordinate_degrees: Option<Vec<Rational>>,
    ) -> Self {
        AbelianSystem {
            dim,
            symbols,
            degrees,
            coordinate_degrees,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[CPoly] {
        &self.symbols
    }

    pub fn degrees(&self) -> Option<&[Rational]> {
        self.degrees.as_deref()
    }

    /// Q_δ = Σ ν_k of the attached grading.
    pub fn homogeneous_dimension(&self) -> Option<Rational> {
        self.coordinate_degrees
            .as_ref()
            .map(|ds| ds.iter().cloned().sum())
    }

    fn eval_map(&self, xi: &[f64], out: &mut [f64]) {
        for (j, p) in self.symbols.iter().enumerate() {
            out[j] = p.eval_f64(xi);
        }
    }

    /// ε_t(λ) = (t^{r₁}λ₁, …, t^{r_n}λ_n).
    pub fn spectral_dilation(&self, t: f64, lambda: &[f64]) -> Result<Vec<f64>, SpectrumError> {
        let degrees = self.degrees.as_ref().ok_or(SpectrumError::MissingDegrees)?;
        Ok(lambda
            .iter()
            .zip(degrees)
            .map(|(x, r)| t.powf(r.to_f64().unwrap()) * x)
            .collect())
    }
}

/// Pushforward of (2π)^{−d}·Lebesgue under the symbol map, truncated to the
/// sampler's ξ-box.
pub fn spectrum_sample(asys: &AbelianSystem, config: &SamplerConfig) -> EmpiricalSpectrum {
    let d = asys.dim;
    let norm = (2.0 * PI).powi(-(d as i32));
    let mut points = Vec::with_capacity(config.scheme.total_points(d));
    let mut lambda = vec![0.0; asys.n()];
    for_each_sample(config, d, |xi, w| {
        asys.eval_map(xi, &mut lambda);
        points.push((lambda.clone(), w * norm));
    });
    EmpiricalSpectrum {
        points,
        generator: GeneratorRecord {
            scheme: config.scheme.clone(),
            radius: config.radius,
            seed: config.seed,
            ambient_dim: d,
        },
    }
}

/// σ′ = P(σ): maps a sampled spectrum through a polynomial change of
/// generators, keeping weights.
pub fn pushforward_change_of_generators(
    es: &EmpiricalSpectrum,
    map: &[CPoly],
) -> EmpiricalSpectrum {
    es.map_points(|p| map.iter().map(|q| q.eval_f64(p)).collect())
}

/// Joint injectivity on ξ ≠ 0 for a homogeneous abelian system.
#[derive(Clone, Debug, PartialEq)]
pub enum InjectivityVerdict {
    /// Σ |pⱼ|² bounded below on the unit cube boundary.
    Injective { min_sum_sq: f64 },
    /// Exact rational common zero.
    CommonZero { witness: Vec<Rational> },
    /// Numeric minimum under tolerance but no exact witness found.
    Inconclusive { min_sum_sq: f64, at: Vec<f64> },
}

/// Decides joint injectivity of the symbols away from 0. Homogeneity lets
/// the check live on the boundary of the sup-norm unit cube; exact rational
/// candidates with coordinates in {−1, 0, 1} are tested first.
pub fn abelian_joint_injectivity(
    asys: &AbelianSystem,
    grid: usize,
    tol: f64,
) -> Result<InjectivityVerdict, SpectrumError> {
    let d = asys.dim;
    // Homogeneity of each symbol for the coordinate dilations (isotropic
    // when no grading is attached).
    let nu: Vec<Rational> = asys
        .coordinate_degrees
        .clone()
        .unwrap_or_else(|| vec![Rational::one(); d]);
    for (index, p) in asys.symbols.iter().enumerate() {
        let mut deg: Option<Rational> = None;
        for (e, _) in p.terms() {
            let m: Rational = e
                .iter()
                .zip(&nu)
                .map(|(&k, v)| v * Rational::from_integer((k as i64).into()))
                .sum();
            match &deg {
                None => deg = Some(m),
                Some(d0) if *d0 == m => {}
                Some(_) => return Err(SpectrumError::Inhomogeneous { index }),
            }
        }
    }

    // Exact candidates: ξ ∈ {−1, 0, 1}^d \ {0}.
    let mut candidate = vec![-1i64; d];
    loop {
        if candidate.iter().any(|&c| c != 0) {
            let xi: Vec<Rational> = candidate
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect();
            let all_zero = asys.symbols.iter().all(|p| {
                let v = p.eval_exact(&xi);
                v.re.is_zero() && v.im.is_zero()
            });
            if all_zero {
                return Ok(InjectivityVerdict::CommonZero { witness: xi });
            }
        }
        let mut k = 0;
        while k < d {
            candidate[k] += 1;
            if candidate[k] <= 1 {
                break;
            }
            candidate[k] = -1;
            k += 1;
        }
        if k == d {
            break;
        }
    }

    // Numeric minimum of Σ |pⱼ|² over the boundary of [−1, 1]^d.
    let mut min_sum = f64::INFINITY;
    let mut argmin = vec![0.0; d];
    let consider = |xi: &[f64], min_sum: &mut f64, argmin: &mut Vec<f64>| {
        let s: f64 = asys
            .symbols
            .iter()
            .map(|p| {
                let v = p.eval_f64(xi);
                v * v
            })
            .sum();
        if s < *min_sum {
            *min_sum = s;
            argmin.clear();
            argmin.extend_from_slice(xi);
        }
    };
    if d == 1 {
        for xi in [[-1.0], [1.0]] {
            consider(&xi, &mut min_sum, &mut argmin);
        }
    } else {
        // Each face: one coordinate pinned to ±1, the rest gridded.
        let steps = grid.max(2);
        for face_dim in 0..d {
            for sign in [-1.0, 1.0] {
                let mut idx = vec![0usize; d - 1];
                loop {
                    let mut xi = vec![0.0; d];
                    xi[face_dim] = sign;
                    let mut pos = 0;
                    #[allow(clippy::needless_range_loop)]
                    for k in 0..d {
                        if k == face_dim {
                            continue;
                        }
                        xi[k] = -1.0 + 2.0 * idx[pos] as f64 / (steps - 1) as f64;
                        pos += 1;
                    }
                    consider(&xi, &mut min_sum, &mut argmin);
                    let mut c = (d - 1) as isize - 1;
                    loop {
                        if c < 0 {
                            idx.clear();
                            break;
                        }
                        idx[c as usize] += 1;
                        if idx[c as usize] < steps {
                            break;
                        }
                        idx[c as usize] = 0;
                        c -= 1;
                    }
                    if idx.is_empty() {
                        break;
                    }
                }
            }
        }
    }
    if min_sum > tol {
        Ok(InjectivityVerdict::Injective {
            min_sum_sq: min_sum,
        })
    } else {
        Ok(InjectivityVerdict::Inconclusive {
            min_sum_sq: min_sum,
            at: argmin,
        })
    }
}

/// σ of an axis-aligned box in λ-space by 1-D preimage decomposition:
/// the set {ξ ∈ [−R, R] : pⱼ(ξ) ∈ [loⱼ, hiⱼ] ∀j} is a finite union of
/// intervals found by bisection on a fine bracketing grid.
pub fn sigma_box_mass_quadrature(
    asys: &AbelianSystem,
    lo: &[f64],
    hi: &[f64],
    radius: f64,
) -> Result<f64, SpectrumError> {
    if asys.dim != 1 {
        return Err(SpectrumError::Unsupported(
            "quadrature box masses are implemented for d = 1; use the sampler route".into(),
        ));
    }
    assert_eq!(lo.len(), asys.n());
    assert_eq!(hi.len(), asys.n());
    // Collect breakpoints: roots of pⱼ − loⱼ and pⱼ − hiⱼ in [−R, R].
    let mut breakpoints = vec![-radius, radius];
    let bracket_grid = 4096;
    for (j, p) in asys.symbols.iter().enumerate() {
        for target in [lo[j], hi[j]] {
            let g = |x: f64| p.eval_f64(&[x]) - target;
            let mut prev_x = -radius;
            let mut prev_v = g(prev_x);
            for k in 1..=bracket_grid {
                let x = -radius + 2.0 * radius * k as f64 / bracket_grid as f64;
                let v = g(x);
                if prev_v == 0.0 {
                    breakpoints.push(prev_x);
                } else if prev_v * v < 0.0 {
                    // Bisection refine.
                    let (mut a, mut b) = (prev_x, x);
                    let (mut fa, _) = (prev_v, v);
                    for _ in 0..200 {
                        let m = 0.5 * (a + b);
                        let fm = g(m);
                        if fm == 0.0 || (b - a) < 1e-14 {
                            break;
                        }
                        if fa * fm < 0.0 {
                            b = m;
                        } else {
                            a = m;
                            fa = fm;
                        }
                    }
                    breakpoints.push(0.5 * (a + b));
                }
                prev_x = x;
                prev_v = v;
            }
        }
    }
    breakpoints.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breakpoints.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut length = 0.0;
    for w in breakpoints.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let inside = (0..asys.n()).all(|j| {
            let v = asys.symbols[j].eval_f64(&[mid]);
            lo[j] - 1e-12 <= v && v <= hi[j] + 1e-12
        });
        if inside {
            length += w[1] - w[0];
        }
    }
    Ok(length / (2.0 * PI))
}

/// σ(ε_t A) / σ(A) against the target t^{Q_δ}.
#[derive(Clone, Debug)]
pub struct PolarRecord {
    pub mass: f64,
    pub mass_dilated: f64,
    pub ratio: f64,
    pub target: f64,
    pub q_delta: f64,
}

pub fn polar_decomposition_check(
    asys: &AbelianSystem,
    lo: &[f64],
    hi: &[f64],
    t: f64,
    radius: f64,
) -> Result<PolarRecord, SpectrumError> {
    let degrees = asys.degrees.clone().ok_or(SpectrumError::MissingDegrees)?;
    let q_delta = asys
        .homogeneous_dimension()
        .ok_or(SpectrumError::MissingDegrees)?
        .to_f64()
        .unwrap();
    let lo_t: Vec<f64> = lo
        .iter()
        .zip(&degrees)
        .map(|(x, r)| t.powf(r.to_f64().unwrap()) * x)
        .collect();
    let hi_t: Vec<f64> = hi
        .iter()
        .zip(&degrees)
        .map(|(x, r)| t.powf(r.to_f64().unwrap()) * x)
        .collect();
    let max_nu = asys
        .coordinate_degrees
        .as_ref()
        .unwrap()
        .iter()
        .map(|v| v.to_f64().unwrap())
        .fold(1.0f64, f64::max);
    let radius_dilated = if t > 1.0 {
        radius * t.powf(max_nu)
    } else {
        radius
    };

    let (mass, mass_dilated) = if asys.dim == 1 {
        (
            sigma_box_mass_quadrature(asys, lo, hi, radius)?,
            sigma_box_mass_quadrature(asys, &lo_t, &hi_t, radius_dilated)?,
        )
    } else {
        let config = SamplerConfig {
            scheme: crate::sampler::Scheme::Stratified {
                per_dim: (2_000_000f64.powf(1.0 / asys.dim as f64)) as usize,
            },
            radius,
            seed: 0x706F6C61,
        };
        let es = spectrum_sample(asys, &config);
        let config_t = SamplerConfig {
            radius: radius_dilated,
            ..config.clone()
        };
        let es_t = spectrum_sample(asys, &config_t);
        (es.box_mass(lo, hi), es_t.box_mass(&lo_t, &hi_t))
    };
    if mass <= 0.0 {
        return Err(SpectrumError::ZeroMass);
    }
    Ok(PolarRecord {
        mass,
        mass_dilated,
        ratio: mass_dilated / mass,
        target: t.powf(q_delta),
        q_delta,
    })
}

/// Bounded multipliers from a fixed catalog; no user code is ever executed.
#[derive(Clone, Debug, PartialEq)]
pub enum Multiplier {
    /// e^{−q(λ)} with q real polynomial.
    ExpNegPoly(CPoly),
    /// e^{−c·|λ|²}.
    Gaussian {
        n: usize,
        c: Rational,
    },
    /// Smoothed indicator of a box: C^∞ ramps of width eps inside each face.
    MollifiedBox {
        lo: Vec<Rational>,
        hi: Vec<Rational>,
        eps: Rational,
    },
    Zero {
        n: usize,
    },
}

impl Multiplier {
    pub fn nvars(&self) -> usize {
        match self {
            Multiplier::ExpNegPoly(q) => q.nvars(),
            Multiplier::Gaussian { n, .. } => *n,
            Multiplier::MollifiedBox { lo, .. } => lo.len(),
            Multiplier::Zero { n } => *n,
        }
    }

    pub fn eval(&self, lambda: &[f64]) -> f64 {
        match self {
            Multiplier::ExpNegPoly(q) => (-q.eval_f64(lambda)).exp(),
            Multiplier::Gaussian { c, .. } => {
                let c = c.to_f64().unwrap();
                let n2: f64 = lambda.iter().map(|x| x * x).sum();
                (-c * n2).exp()
            }
            Multiplier::MollifiedBox { lo, hi, eps } => {
                let eps = eps.to_f64().unwrap();
                let mut v = 1.0;
                for (x, (a, b)) in lambda.iter().zip(lo.iter().zip(hi)) {
                    let a = a.to_f64().unwrap();
                    let b = b.to_f64().unwrap();
                    v *= ramp01((x - a) / eps) * ramp01((b - x) / eps);
                }
                v
            }
            Multiplier::Zero { .. } => 0.0,
        }
    }
}

/// Analytic monotone step rising from ~0 at u = 0 to ~1 at u = 1. The tanh
/// profile keeps the kernel transform exponentially decaying, which the
/// truncated quadrature needs; the sub-1e-3 leakage outside [0, 1] is part
/// of the mollification.
fn ramp01(u: f64) -> f64 {
    0.5 * (1.0 + (4.0 * (2.0 * u - 1.0)).tanh())
}

/// Settings for the quadrature checks.
#[derive(Clone, Debug)]
pub struct QuadratureOptions {
    pub tol: f64,
    pub nodes: usize,
    pub panels_per_unit: f64,
    pub max_radius: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            tol: 1e-6,
            nodes: 32,
            panels_per_unit: 1.0,
            max_radius: 64.0,
        }
    }
}

/// ∫ g over [−R, R]^d by tensor Gauss–Legendre, with R grown until the
/// increment falls under `frac·tol·scale`; errors when the budget runs out.
/// With `even_first_axis`, g is assumed even in the first coordinate and
/// only the half-box is evaluated.
fn integrate_adaptive_box(
    dim: usize,
    g: &dyn Fn(&[f64]) -> f64,
    opts: &QuadratureOptions,
    even_first_axis: bool,
    what: &str,
) -> Result<(f64, f64), SpectrumError> {
    let gl = GaussLegendre::new(opts.nodes);
    let mut radius = 2.0f64;
    let mut prev: Option<f64> = None;
    loop {
        let panels = ((2.0 * radius * opts.panels_per_unit).ceil() as usize).max(1);
        let mut lo = vec![-radius; dim];
        let hi = vec![radius; dim];
        let factor = if even_first_axis {
            lo[0] = 0.0;
            2.0
        } else {
            1.0
        };
        let val = factor * gl.integrate_box(&lo, &hi, panels, |p| g(p));
        if let Some(p) = prev {
            let increment = (val - p).abs();
            let scale = val.abs().max(1e-300);
            if increment <= 0.1 * opts.tol * scale {
                return Ok((val, increment));
            }
        }
        prev = Some(val);
        radius *= 2.0;
        if radius > opts.max_radius {
            return Err(SpectrumError::TruncationDominates {
                detail: format!("{what}: tail still moving at radius {radius}"),
            });
        }
    }
}

/// Both sides of ∫ |f|² dσ = ‖f̆‖₂², each by an independent quadrature
/// route, with the recorded truncation increments.
#[derive(Clone, Debug)]
pub struct PlancherelRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub lhs_tail: f64,
    pub rhs_tail: f64,
}

pub fn plancherel_check(
    asys: &AbelianSystem,
    f: &Multiplier,
    opts: &QuadratureOptions,
) -> Result<PlancherelRecord, SpectrumError> {
    assert_eq!(
        f.nvars(),
        asys.n(),
        "multiplier arity must match the system"
    );
    if asys.dim > 2 {
        return Err(SpectrumError::Unsupported(
            "kernel-side quadrature supports d ≤ 2".into(),
        ));
    }
    let d = asys.dim;
    let norm = (2.0 * PI).powi(-(d as i32));

    // lhs: (2π)^{−d} ∫ |f(p(ξ))|² dξ.
    let symbols = asys.symbols.clone();
    let fp = move |xi: &[f64]| -> f64 {
        let lambda: Vec<f64> = symbols.iter().map(|p| p.eval_f64(xi)).collect();
        f.eval(&lambda)
    };
    let fp_sq = {
        let fp = fp.clone();
        move |xi: &[f64]| {
            let v = fp(xi);
            v * v
        }
    };
    let (lhs_raw, lhs_tail) =
        integrate_adaptive_box(d, &fp_sq, opts, false, "lhs spectral integral")?;
    let lhs = norm * lhs_raw;

    // Fix the ξ-box for the kernel at the radius where |f∘p|² stabilized,
    // padded one doubling for the oscillatory integrand.
    let mut xi_radius = 2.0f64;
    {
        let gl = GaussLegendre::new(opts.nodes);
        let mut prev: Option<f64> = None;
        loop {
            let panels = ((2.0 * xi_radius).ceil() as usize).max(1);
            let lo = vec![-xi_radius; d];
            let hi = vec![xi_radius; d];
            let val = gl.integrate_box(&lo, &hi, panels, |p| fp(p).abs());
            if let Some(pv) = prev {
                if (val - pv).abs() <= 0.05 * opts.tol * val.abs().max(1e-300) {
                    break;
                }
            }
            prev = Some(val);
            xi_radius *= 2.0;
            if xi_radius > opts.max_radius {
                return Err(SpectrumError::TruncationDominates {
                    detail: "multiplier does not decay within the ξ budget".into(),
                });
            }
        }
    }

    // rhs: ‖f̆‖₂² with f̆(x) = (2π)^{−d} ∫ e^{i⟨ξ,x⟩} f(p(ξ)) dξ. The
    // ξ-panel count combines the multiplier sharpness (panels_per_unit)
    // with the oscillation scale |x|/2π; the x ladder only needs to
    // resolve the oscillation of |f̆|².
    let gl = GaussLegendre::new(opts.nodes);
    let kernel_sq = {
        let fp = fp.clone();
        let sharp = opts.panels_per_unit;
        move |x: &[f64]| {
            let x_norm = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let panels =
                (((2.0 * xi_radius) * (sharp + x_norm / (2.0 * PI))).ceil() as usize).max(2);
            let lo = vec![-xi_radius; d];
            let hi = vec![xi_radius; d];
            let re = gl.integrate_box(&lo, &hi, panels, |xi| {
                let dot: f64 = xi.iter().zip(x).map(|(a, b)| a * b).sum();
                dot.cos() * fp(xi)
            });
            let im = gl.integrate_box(&lo, &hi, panels, |xi| {
                let dot: f64 = xi.iter().zip(x).map(|(a, b)| a * b).sum();
                dot.sin() * fp(xi)
            });
            (norm * norm) * (re * re + im * im)
        }
    };
    let rhs_opts = QuadratureOptions {
        panels_per_unit: 0.5 + xi_radius / (2.0 * PI),
        ..opts.clone()
    };
    // |f̆(−x)| = |f̆(x)| for real multipliers: integrate the half-box.
    let (rhs, rhs_tail) =
        integrate_adaptive_box(d, &kernel_sq, &rhs_opts, true, "kernel L² integral")?;

    let scale = lhs.abs().max(rhs.abs());
    let rel_err = if scale < 1e-300 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    };
    Ok(PlancherelRecord {
        lhs,
        rhs,
        rel_err,
        lhs_tail,
        rhs_tail,
    })
}

/// Sampled kernel f̆ on a uniform 1-D spatial grid.
#[derive(Clone, Debug)]
pub struct KernelGrid {
    pub x_radius: f64,
    pub points: usize,
}

pub fn kernel_transform(
    asys: &AbelianSystem,
    f: &Multiplier,
    grid: &KernelGrid,
    opts: &QuadratureOptions,
) -> Result<Vec<(f64, f64)>, SpectrumError> {
    if asys.dim != 1 {
        return Err(SpectrumError::Unsupported(
            "kernel grids are 1-D; use plancherel_check for d = 2".into(),
        ));
    }
    let norm = 1.0 / (2.0 * PI);
    // ξ-box where f∘p decays.
    let gl = GaussLegendre::new(opts.nodes);
    let mut xi_radius = 2.0f64;
    let mut prev: Option<f64> = None;
    loop {
        let panels = ((2.0 * xi_radius).ceil() as usize).max(1);
        let val = gl.integrate_panels(-xi_radius, xi_radius, panels, |xi| {
            f.eval(&symbol_values(asys, xi)).abs()
        });
        if let Some(p) = prev {
            if (val - p).abs() <= 0.05 * opts.tol * val.abs().max(1e-300) {
                break;
            }
        }
        prev = Some(val);
        xi_radius *= 2.0;
        if xi_radius > opts.max_radius {
            return Err(SpectrumError::TruncationDominates {
                detail: "multiplier does not decay within the ξ budget".into(),
            });
        }
    }
    let mut out = Vec::with_capacity(grid.points);
    let h = 2.0 * grid.x_radius / (grid.points - 1) as f64;
    for k in 0..grid.points {
        let x = -grid.x_radius + k as f64 * h;
        let panels = (((2.0 * xi_radius) * (1.0 + x.abs() / (2.0 * PI))).ceil() as usize).max(2);
        let val = gl.integrate_panels(-xi_radius, xi_radius, panels, |xi| {
            (x * xi).cos() * f.eval(&symbol_values(asys, xi))
        });
        // Imaginary part vanishes for even f∘p; keep the real part as the
        // kernel value and fold any residual into it.
        out.push((x, norm * val));
    }
    Ok(out)
}

fn symbol_values(asys: &AbelianSystem, xi: f64) -> Vec<f64> {
    asys.symbols.iter().map(|p| p.eval_f64(&[xi])).collect()
}

/// Max |(fg)˘ − ğ * f̆| over the grid interior, with the convolution done by
/// direct Riemann sum on the sampled kernels.
#[derive(Clone, Debug)]
pub struct ConvolutionRecord {
    pub max_abs_deviation: f64,
    pub grid: Vec<f64>,
    pub product_kernel: Vec<f64>,
    pub convolved: Vec<f64>,
}

pub fn convolution_identity_check(
    asys: &AbelianSystem,
    f: &Multiplier,
    g: &Multiplier,
    grid: &KernelGrid,
    opts: &QuadratureOptions,
) -> Result<ConvolutionRecord, SpectrumError> {
    if asys.dim != 1 {
        return Err(SpectrumError::Unsupported(
            "convolution check is 1-D".into(),
        ));
    }
    let fg = ProductMultiplier(f.clone(), g.clone());
    // Kernels on a doubled grid so the convolution covers the inner grid.
    let wide = KernelGrid {
        x_radius: 2.0 * grid.x_radius,
        points: 2 * grid.points - 1,
    };
    let kf = kernel_transform(asys, f, &wide, opts)?;
    let kg = kernel_transform(asys, g, &wide, opts)?;
    let kfg = kernel_transform(asys, &fg.as_multiplier(), grid, opts)?;
    let h = 2.0 * wide.x_radius / (wide.points - 1) as f64;

    let mut max_dev = 0.0f64;
    let mut grid_x = Vec::with_capacity(grid.points);
    let mut prod_vals = Vec::with_capacity(grid.points);
    let mut conv_vals = Vec::with_capacity(grid.points);
    for (x, target) in &kfg {
        // (ğ * f̆)(x) = ∫ ğ(x − y) f̆(y) dy.
        let mut acc = 0.0;
        for (y, fv) in &kf {
            let z = x - y;
            if z < -wide.x_radius - 1e-9 || z > wide.x_radius + 1e-9 {
                continue;
            }
            let idx = ((z + wide.x_radius) / h).round() as usize;
            let idx = idx.min(kg.len() - 1);
            acc += kg[idx].1 * fv * h;
        }
        grid_x.push(*x);
        prod_vals.push(*target);
        conv_vals.push(acc);
        max_dev = max_dev.max((target - acc).abs());
    }
    Ok(ConvolutionRecord {
        max_abs_deviation: max_dev,
        grid: grid_x,
        product_kernel: prod_vals,
        convolved: conv_vals,
    })
}

/// Pointwise product of two catalog multipliers.
struct ProductMultiplier(Multiplier, Multiplier);

impl ProductMultiplier {
    fn as_multiplier(&self) -> Multiplier {
        // Products of catalog entries stay evaluable: represent e^{−q1}·e^{−q2}
        // exactly when both are exponentials; otherwise fall back to the
        // generic product via a wrapper polynomial is impossible, so only
        // exponential and Gaussian pairs are supported.
        match (&self.0, &self.1) {
            (Multiplier::ExpNegPoly(a), Multiplier::ExpNegPoly(b)) => {
                Multiplier::ExpNegPoly(a.add(b))
            }
            (Multiplier::Gaussian { n, c }, Multiplier::Gaussian { n: n2, c: c2 }) => {
                assert_eq!(n, n2);
                Multiplier::Gaussian { n: *n, c: c + c2 }
            }
            (Multiplier::ExpNegPoly(a), Multiplier::Gaussian { n, c })
            | (Multiplier::Gaussian { n, c }, Multiplier::ExpNegPoly(a)) => {
                let mut q = a.clone();
                for j in 0..*n {
                    let lj = CPoly::variable(*n, j);
                    q = q.add(
                        &lj.multiply(&lj)
                            .scale(&GaussRational::new(c.clone(), Rational::zero())),
                    );
                }
                Multiplier::ExpNegPoly(q)
            }
            (Multiplier::Zero { n }, _) | (_, Multiplier::Zero { n }) => Multiplier::Zero { n: *n },
            _ => panic!("product multiplier supported for exponential-type entries only"),
        }
    }
}

/// Mass growth σ({|λ|₂ ≤ a}) with a log-log slope fit against the
/// polynomial-growth bound.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub rows: Vec<(f64, f64)>,
    pub slope: f64,
    pub slope_bound: f64,
    pub within_bound: bool,
}

pub fn growth_check(
    asys: &AbelianSystem,
    radii: &[f64],
    config: &SamplerConfig,
    margin: f64,
) -> Result<GrowthReport, SpectrumError> {
    assert!(!radii.is_empty());
    let es = spectrum_sample(asys, config);
    let rows: Vec<(f64, f64)> = radii.iter().map(|&a| (a, es.ball_mass(a))).collect();
    // Least-squares slope on (ln a, ln mass), skipping empty masses.
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(_, m)| *m > 0.0)
        .map(|(a, m)| (a.ln(), m.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(SpectrumError::ZeroMass);
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|(x, _)| x).sum();
    let sy: f64 = pts.iter().map(|(_, y)| y).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    let max_sym_degree = asys
        .symbols
        .iter()
        .filter_map(|p| p.total_degree())
        .max()
        .unwrap_or(1) as f64;
    let min_hom = match &asys.degrees {
        Some(ds) => ds
            .iter()
            .map(|r| r.to_f64().unwrap())
            .fold(f64::INFINITY, f64::min),
        None => max_sym_degree,
    };
    let slope_bound = asys.dim as f64 * max_sym_degree / min_hom + margin;
    Ok(GrowthReport {
        rows,
        slope,
        slope_bound,
        within_bound: slope <= slope_bound,
    })
}
