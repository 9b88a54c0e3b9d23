//! Deterministic, seed-keyed samplers over truncated boxes in frequency
//! space, and the weighted point clouds they produce.
//!
//! The Monte Carlo draw for sample `s`, coordinate `k` is a pure function of
//! (seed, s, k), a counter-based generator, so clouds are bit-reproducible
//! and sample blocks can be evaluated in any partition without changing the
//! result. Mass reductions use fixed-order compensated summation.

use crate::quad::compensated_sum;
use serde::{Deserialize, Serialize};

/// splitmix64: the standard 64-bit finalizer-based generator.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Uniform in [0, 1) from (seed, counter).
pub fn uniform01(seed: u64, counter: u64) -> f64 {
    let bits = splitmix64(seed ^ splitmix64(counter));
    (bits >> 11) as f64 / (1u64 << 53) as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scheme {
    /// Midpoint grid, `per_dim` cells per coordinate.
    Grid { per_dim: usize },
    /// Plain Monte Carlo with `samples` draws.
    MonteCarlo { samples: usize },
    /// Jittered-cell (stratified) Monte Carlo, `per_dim` strata per
    /// coordinate, one draw per cell.
    Stratified { per_dim: usize },
}

impl Scheme {
    pub fn total_points(&self, dim: usize) -> usize {
        match self {
            Scheme::Grid { per_dim } | Scheme::Stratified { per_dim } => per_dim.pow(dim as u32),
            Scheme::MonteCarlo { samples } => *samples,
        }
    }
}

/// Sampler configuration: scheme, truncation box [−radius, radius]^d, seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub scheme: Scheme,
    pub radius: f64,
    pub seed: u64,
}

/// Provenance record carried by every cloud.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub scheme: Scheme,
    pub radius: f64,
    pub seed: u64,
    /// Dimension d of the sampled frequency box.
    pub ambient_dim: usize,
}

/// Weighted point cloud approximating a spectral measure: points λ ∈ ℝⁿ
/// with weights summing to the truncated total mass.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalSpectrum {
    pub points: Vec<(Vec<f64>, f64)>,
    pub generator: GeneratorRecord,
}

impl EmpiricalSpectrum {
    pub fn spectrum_dim(&self) -> usize {
        self.points.first().map_or(0, |(p, _)| p.len())
    }

    pub fn total_mass(&self) -> f64 {
        compensated_sum(self.points.iter().map(|(_, w)| *w))
    }

    /// Mass inside an axis-aligned box [lo, hi] (componentwise, inclusive).
    pub fn box_mass(&self, lo: &[f64], hi: &[f64]) -> f64 {
        compensated_sum(self.points.iter().filter_map(|(p, w)| {
            let inside = p
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(x, (a, b))| *a <= *x && *x <= *b);
            inside.then_some(*w)
        }))
    }

    /// Mass of the Euclidean ball of radius `r`.
    pub fn ball_mass(&self, r: f64) -> f64 {
        let r2 = r * r;
        compensated_sum(self.points.iter().filter_map(|(p, w)| {
            let n2: f64 = p.iter().map(|x| x * x).sum();
            (n2 <= r2).then_some(*w)
        }))
    }

    /// Maps points through a coordinatewise function, keeping weights.
    pub fn map_points<F: Fn(&[f64]) -> Vec<f64>>(&self, f: F) -> EmpiricalSpectrum {
        EmpiricalSpectrum {
            points: self.points.iter().map(|(p, w)| (f(p), *w)).collect(),
            generator: self.generator.clone(),
        }
    }

    /// Symmetric sampled Hausdorff distance between supports.
    pub fn hausdorff_distance(&self, other: &EmpiricalSpectrum) -> f64 {
        fn directed(a: &EmpiricalSpectrum, b: &EmpiricalSpectrum) -> f64 {
            let mut worst = 0.0f64;
            for (p, _) in &a.points {
                let mut best = f64::INFINITY;
                for (q, _) in &b.points {
                    let d2: f64 = p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum();
                    if d2 < best {
                        best = d2;
                    }
                }
                worst = worst.max(best);
            }
            worst.sqrt()
        }
        directed(self, other).max(directed(other, self))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "seed": self.generator.seed,
            "scheme": self.generator.scheme,
            "truncation": self.generator.radius,
            "points": self.points.iter().map(|(p, w)| {
                let mut row: Vec<f64> = p.clone();
                row.push(*w);
                row
            }).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let n = self.spectrum_dim();
        let mut out = String::new();
        for j in 1..=n {
            out.push_str(&format!("lambda_{j},"));
        }
        out.push_str("weight\n");
        for (p, w) in &self.points {
            for x in p {
                out.push_str(&format!("{x:?},"));
            }
            out.push_str(&format!("{w:?}\n"));
        }
        out
    }
}

/// Iterates the sample points of a configuration over [−R, R]^d, calling
/// `visit(ξ, weight_in_ξ_space)`; ξ-weights sum to (2R)^d.
pub fn for_each_sample<F: FnMut(&[f64], f64)>(config: &SamplerConfig, dim: usize, mut visit: F) {
    let r = config.radius;
    let side = 2.0 * r;
    match &config.scheme {
        Scheme::Grid { per_dim } => {
            let n = *per_dim;
            let cell = side / n as f64;
            let w = cell.powi(dim as i32);
            let mut idx = vec![0usize; dim];
            let mut xi = vec![0.0; dim];
            loop {
                for (x, &i) in xi.iter_mut().zip(&idx) {
                    *x = -r + (i as f64 + 0.5) * cell;
                }
                visit(&xi, w);
                if !advance(&mut idx, n) {
                    break;
                }
            }
        }
        Scheme::MonteCarlo { samples } => {
            let n = *samples;
            let w = side.powi(dim as i32) / n as f64;
            let mut xi = vec![0.0; dim];
            for s in 0..n {
                for (k, x) in xi.iter_mut().enumerate() {
                    let u = uniform01(config.seed, (s as u64) * dim as u64 + k as u64);
                    *x = -r + u * side;
                }
                visit(&xi, w);
            }
        }
        Scheme::Stratified { per_dim } => {
            let n = *per_dim;
            let cell = side / n as f64;
            let w = cell.powi(dim as i32);
            let mut idx = vec![0usize; dim];
            let mut xi = vec![0.0; dim];
            let mut counter: u64 = 0;
            loop {
                for (x, &i) in xi.iter_mut().zip(&idx) {
                    let u = uniform01(config.seed, counter);
                    counter += 1;
                    *x = -r + (i as f64 + u) * cell;
                }
                visit(&xi, w);
                if !advance(&mut idx, n) {
                    break;
                }
            }
        }
    }
}

fn advance(idx: &mut [usize], n: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < n {
            return true;
        }
        idx[k] = 0;
    }
    false
}
