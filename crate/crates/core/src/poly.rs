//! Commutative polynomials with Gaussian-rational coefficients: symbols of
//! constant-coefficient operators, polynomial maps between spectra, and the
//! auxiliary strictly positive polynomials used for multiplier generation.

use crate::scalar::{format_gauss, format_rational, GaussRational, Rational};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Polynomial in `nvars` commuting variables.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, GaussRational>,
}

impl CPoly {
    pub fn zero(nvars: usize) -> Self {
        CPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussRational) -> Self {
        let mut p = CPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        CPoly::constant(nvars, GaussRational::one())
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = CPoly::zero(nvars);
        p.add_term(e, GaussRational::one());
        p
    }

    pub fn monomial(nvars: usize, e: Vec<u32>, c: GaussRational) -> Self {
        assert_eq!(e.len(), nvars);
        let mut p = CPoly::zero(nvars);
        p.add_term(e, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GaussRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        self.add(&other.scale(&-GaussRational::one()))
    }

    pub fn scale(&self, c: &GaussRational) -> CPoly {
        if c.is_zero() {
            return CPoly::zero(self.nvars);
        }
        CPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn multiply(&self, other: &CPoly) -> CPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = CPoly::zero(self.nvars);
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                let g: Vec<u32> = e.iter().zip(f).map(|(x, y)| x + y).collect();
                out.add_term(g, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> CPoly {
        let mut out = CPoly::one(self.nvars);
        for _ in 0..n {
            out = out.multiply(self);
        }
        out
    }

    /// Real-valued on ℝⁿ ⟺ every coefficient is real (monomials are
    /// linearly independent functions).
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Substitutes polynomials for the variables.
    pub fn compose(&self, args: &[CPoly]) -> CPoly {
        assert_eq!(args.len(), self.nvars);
        let out_vars = args.first().map_or(0, |p| p.nvars);
        let mut out = CPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = CPoly::constant(out_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.multiply(&args[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// f64 evaluation (real part; panics if a coefficient is non-real).
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            assert!(c.im.is_zero(), "eval_f64 requires a real polynomial");
            let mut m = c.re.to_f64().unwrap_or(f64::NAN);
            for (i, &k) in e.iter().enumerate() {
                m *= x[i].powi(k as i32);
            }
            acc += m;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, x: &[Rational]) -> GaussRational {
        assert_eq!(x.len(), self.nvars);
        let mut acc = GaussRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m *= GaussRational::new(x[i].clone(), Rational::zero());
                }
            }
            acc += m;
        }
        acc
    }

    pub fn display(&self, var_names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ordered: Vec<(&Vec<u32>, &GaussRational)> = self.terms.iter().collect();
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
                mono.push_str(&var_names[i]);
                if k > 1 {
                    mono.push_str(&format!("^{k}"));
                }
            }
            let coeff = format_gauss(c);
            let needs_parens = coeff.len() > 1 && coeff[1..].contains(['+', '-']);
            parts.push(if mono.is_empty() {
                coeff
            } else if coeff == "1" {
                mono
            } else if coeff == "-1" {
                format!("-{mono}")
            } else if needs_parens {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            });
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

/// p₀ = p⋆ + Σ λⱼ² + 1 and p_k = p₀ + λ_k: strictly positive polynomials
/// whose exponentials separate points of ℝⁿ (p_k − p₀ = λ_k).
pub fn build_auxiliary_polynomials(p_star: &CPoly) -> Vec<CPoly> {
    assert!(p_star.is_real(), "p⋆ must have real coefficients");
    let n = p_star.nvars();
    let mut p0 = p_star.add(&CPoly::one(n));
    for j in 0..n {
        let lj = CPoly::variable(n, j);
        p0 = p0.add(&lj.multiply(&lj));
    }
    let mut out = vec![p0.clone()];
    for k in 0..n {
        out.push(p0.add(&CPoly::variable(n, k)));
    }
    out
}

pub fn format_rational_coeff(c: &Rational) -> String {
    format_rational(c)
}
