//! A coefficient sequence in `H^{2ε}` that is not in `H^log`.
//!
//! Eigenvalues `λ_k = 1/k` accumulate at zero and `a_k = 1/(√k log k)`.
//! Then `a_k^2 λ_k^{2ε} = k^{-1-2ε}/log^2 k` is summable while
//! `a_k^2 log^2 λ_k = 1/k` is not.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_N: u64 = 10;
pub const MAX_N: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRow {
    pub n: u64,
    /// `sum_{k=2}^N a_k^2 λ_k^{2ε}`.
    pub f: f64,
    /// `sum_{k=2}^N a_k^2 (log λ_k)^2`.
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleTable {
    pub epsilon: f64,
    pub rows: Vec<CounterexampleRow>,
}

pub fn coefficient(k: u64) -> f64 {
    let k = k as f64;
    1.0 / (k.sqrt() * k.ln())
}

pub fn eigenvalue(k: u64) -> f64 {
    1.0 / k as f64
}

/// Neumaier summation.
#[derive(Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// Partial sums `F(N)` and `G(N)` for each `N` in `n_list` (increasing, within
/// `[10, 10^7]`), accumulated in one pass.
pub fn embedding_counterexample(epsilon: f64, n_list: &[u64]) -> Result<CounterexampleTable> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::domain("embedding_counterexample", format!("need epsilon > 0, got {epsilon}")));
    }
    if n_list.is_empty() || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("embedding_counterexample", "N list must be nonempty and increasing"));
    }
    if n_list[0] < MIN_N || *n_list.last().unwrap() > MAX_N {
        return Err(Error::domain("embedding_counterexample", format!("N must lie in [{MIN_N}, {MAX_N}]")));
    }
    let (mut f, mut g) = (Sum::default(), Sum::default());
    let mut rows = Vec::with_capacity(n_list.len());
    let mut k = 2;
    for &n in n_list {
        while k <= n {
            let a2 = coefficient(k).powi(2);
            let lam = eigenvalue(k);
            f.add(a2 * lam.powf(2.0 * epsilon));
            g.add(a2 * lam.ln().powi(2));
            k += 1;
        }
        rows.push(CounterexampleRow {
            n,
            f: f.value(),
            g: g.value(),
        });
    }
    Ok(CounterexampleTable { epsilon, rows })
}

impl CounterexampleTable {
    pub const HEADER: [&'static str; 3] = ["N", "F", "G"];

    pub fn csv_rows(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| vec![r.n as f64, r.f, r.g]).collect()
    }

    pub fn row(&self, n: u64) -> Option<&CounterexampleRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}
