//! Test-only reference implementations, kept deliberately independent of the
//! library's linear algebra: plain-loop kernels, Gaussian elimination with
//! partial pivoting, and a straight-line transcription of the primal-dual
//! tuning loop.

#![allow(dead_code)]

/// Squared-exponential kernel, written out separately from the library.
pub fn oracle_kernel(x: &[f64], y: &[f64], signal_variance: f64, lengthscales: &[f64]) -> f64 {
    let mut sum = 0.0;
    for i in 0..lengthscales.len() {
        let d = (x[i] - y[i]) / lengthscales[i];
        sum += d * d;
    }
    signal_variance * (-sum).exp()
}

/// Solves `a * x = b` by Gaussian elimination with partial pivoting.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        assert!(a[col][col] != 0.0, "singular system in oracle solve");
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x
}

/// Log determinant of a positive-definite matrix via elimination pivots.
pub fn log_det_dense(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut log_det = 0.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if pivot != col {
            a.swap(col, pivot);
            // row swaps flip the determinant sign; pivots of an SPD system
            // stay positive so only the magnitude matters here
        }
        log_det += a[col][col].abs().ln();
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    log_det
}

#[derive(Debug, Clone, Copy)]
pub enum OraclePrior {
    Constant(f64),
    EmpiricalFirst(usize),
}

/// From-scratch dense GP used as the comparison oracle.
#[derive(Debug, Clone)]
pub struct OracleGp {
    pub signal_variance: f64,
    pub lengthscales: Vec<f64>,
    pub noise_variance: f64,
    pub prior: OraclePrior,
    pub xs: Vec<Vec<f64>>,
    pub ys: Vec<f64>,
}

impl OracleGp {
    pub fn new(signal_variance: f64, lengthscales: Vec<f64>, noise_variance: f64, prior: OraclePrior) -> Self {
        Self { signal_variance, lengthscales, noise_variance, prior, xs: Vec::new(), ys: Vec::new() }
    }

    pub fn push(&mut self, x: Vec<f64>, y: f64) {
        self.xs.push(x);
        self.ys.push(y);
    }

    pub fn prior_mean(&self) -> f64 {
        match self.prior {
            OraclePrior::Constant(m) => m,
            OraclePrior::EmpiricalFirst(warmup) => {
                if self.ys.is_empty() {
                    0.0
                } else {
                    let k = warmup.max(1).min(self.ys.len());
                    self.ys[..k].iter().sum::<f64>() / k as f64
                }
            }
        }
    }

    fn regularized_gram(&self) -> Vec<Vec<f64>> {
        let n = self.xs.len();
        let diag = self.noise_variance + 1e-8 * self.signal_variance;
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = oracle_kernel(&self.xs[i], &self.xs[j], self.signal_variance, &self.lengthscales);
            }
            a[i][i] += diag;
        }
        a
    }

    /// Posterior mean and variance by explicit dense solves.
    pub fn posterior(&self, query: &[f64]) -> (f64, f64) {
        let n = self.xs.len();
        let mu = self.prior_mean();
        if n == 0 {
            return (mu, self.signal_variance);
        }
        let a = self.regularized_gram();
        let residual: Vec<f64> = self.ys.iter().map(|y| y - mu).collect();
        let alpha = solve_dense(a.clone(), residual);
        let k: Vec<f64> = self
            .xs
            .iter()
            .map(|x| oracle_kernel(x, query, self.signal_variance, &self.lengthscales))
            .collect();
        let mean = mu + k.iter().zip(&alpha).map(|(a, b)| a * b).sum::<f64>();
        let beta = solve_dense(a, k.clone());
        let variance =
            (self.signal_variance - k.iter().zip(&beta).map(|(a, b)| a * b).sum::<f64>()).max(0.0);
        (mean, variance)
    }

    /// Gaussian log evidence via explicit determinant and solve.
    pub fn log_marginal_likelihood(&self) -> f64 {
        let n = self.xs.len();
        assert!(n > 0, "oracle likelihood needs data");
        let mu = self.prior_mean();
        let a = self.regularized_gram();
        let residual: Vec<f64> = self.ys.iter().map(|y| y - mu).collect();
        let alpha = solve_dense(a.clone(), residual.clone());
        let quad: f64 = residual.iter().zip(&alpha).map(|(r, a)| r * a).sum();
        -0.5 * quad - 0.5 * log_det_dense(a) - 0.5 * n as f64 * (2.0 * std::f64::consts::PI).ln()
    }
}

/// Straight-line transcription of the primal-dual tuning loop, driven by the
/// oracle GP. One `step` performs: primal grid argmin of the Lagrangian
/// confidence bound, a single evaluation, the projected dual ascent on the
/// constraint bound at the chosen point, then the GP updates.
#[derive(Debug, Clone)]
pub struct ReferencePrimalDual {
    pub obj: OracleGp,
    pub con: OracleGp,
    pub grid: Vec<Vec<f64>>,
    pub lambda: f64,
    pub eta: f64,
    pub epsilon: f64,
    pub beta_sqrt: f64,
    pub threshold: f64,
}

impl ReferencePrimalDual {
    pub fn step(&mut self, context: &[f64], evaluate: impl Fn(usize) -> (f64, f64)) -> (usize, f64) {
        let mut best = f64::INFINITY;
        let mut chosen = 0;
        let mut chosen_g_lcb = 0.0;
        for (i, cand) in self.grid.iter().enumerate() {
            let mut x = cand.clone();
            x.extend_from_slice(context);
            let (mo, vo) = self.obj.posterior(&x);
            let (mc, vc) = self.con.posterior(&x);
            let obj_lcb = mo - self.beta_sqrt * vo.sqrt();
            let con_lcb = mc - self.beta_sqrt * vc.sqrt();
            let lagrangian = obj_lcb + self.lambda * con_lcb;
            if lagrangian < best {
                best = lagrangian;
                chosen = i;
                chosen_g_lcb = con_lcb;
            }
        }
        let (y_obj, y_con) = evaluate(chosen);
        let lambda_next =
            (self.lambda + self.eta * (chosen_g_lcb - self.threshold) + self.epsilon).max(0.0);
        let mut x = self.grid[chosen].clone();
        x.extend_from_slice(context);
        self.obj.push(x.clone(), y_obj);
        self.con.push(x, y_con);
        self.lambda = lambda_next;
        (chosen, lambda_next)
    }
}

/// Smooth two-parameter objective with a one-dimensional context; minimized at
/// `theta = (1, z)` when unconstrained.
pub fn synthetic_objective(theta: &[f64], z: f64) -> f64 {
    (theta[0] - 1.0).powi(2) + (theta[1] - z).powi(2)
}

/// Linear constraint value, increasing in the first parameter.
pub fn synthetic_constraint(theta: &[f64], z: f64) -> f64 {
    2.0 * theta[0] + 0.5 * z
}

/// Threshold that keeps the synthetic constraint active at the optimum.
pub const SYNTHETIC_THRESHOLD: f64 = 1.5;

/// Uniform grid over `[0, 1]^2` for the synthetic problem.
pub fn synthetic_grid(levels: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> =
        (0..levels).map(|i| i as f64 / (levels - 1) as f64).collect();
    let mut grid = Vec::with_capacity(levels * levels);
    for &a in &axis {
        for &b in &axis {
            grid.push(vec![a, b]);
        }
    }
    grid
}
