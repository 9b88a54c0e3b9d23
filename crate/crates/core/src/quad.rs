//! Gauss–Legendre quadrature with composite panels, used for the numeric
//! spectral checks (Plancherel integrals, kernel transforms).

/// Gauss–Legendre rule on [−1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes via Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Composite rule over `panels` equal subintervals.
    pub fn integrate_panels<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for p in 0..panels {
            acc += self.integrate(a + p as f64 * h, a + (p + 1) as f64 * h, &mut f);
        }
        acc
    }

    /// Tensor-product integration over a box in d dimensions.
    pub fn integrate_box<F: FnMut(&[f64]) -> f64>(
        &self,
        lo: &[f64],
        hi: &[f64],
        panels: usize,
        f: F,
    ) -> f64 {
        let d = lo.len();
        assert_eq!(hi.len(), d);
        let mut f = f;
        let mut point = vec![0.0; d];
        self.box_recurse(lo, hi, panels, 0, &mut point, &mut f)
    }

    fn box_recurse<F: FnMut(&[f64]) -> f64>(
        &self,
        lo: &[f64],
        hi: &[f64],
        panels: usize,
        dim: usize,
        point: &mut Vec<f64>,
        f: &mut F,
    ) -> f64 {
        if dim == lo.len() {
            return f(point);
        }
        let h = (hi[dim] - lo[dim]) / panels as f64;
        let mut acc = 0.0;
        for p in 0..panels {
            let a = lo[dim] + p as f64 * h;
            let b = a + h;
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                point[dim] = mid + half * x;
                acc += w * half * self.box_recurse(lo, hi, panels, dim + 1, point, f);
            }
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Neumaier compensated summation in a fixed order.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
