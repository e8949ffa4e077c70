//! Factored apply against dense matrix-vector multiplication.

use std::time::Instant;

use jfft_core::transform::{dense_matvec, dense_transform, forward_into};
use jfft_core::{FactorPlan, MemBudget, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub dim: usize,
    pub repeat: usize,
    pub factored_muladds: u64,
    pub dense_muladds: u64,
    /// Median seconds per apply.
    pub factored_median: f64,
    pub dense_median: f64,
    /// Largest deviation between the two results.
    pub max_abs_diff: f64,
}

impl BenchReport {
    pub fn op_ratio(&self) -> f64 {
        self.dense_muladds as f64 / self.factored_muladds.max(1) as f64
    }

    pub fn speedup(&self) -> f64 {
        self.dense_median / self.factored_median.max(f64::MIN_POSITIVE)
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

/// Times `repeat` forward applies of each kind on one random vector.
pub fn run_bench(plan: &FactorPlan, repeat: usize, seed: u64, budget: MemBudget) -> Result<BenchReport> {
    let dim = plan.dims().dim();
    budget.check(8 * (dim as u64) * (dim as u64))?;
    let dense = dense_transform(plan);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let input: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();

    let (mut out, mut scratch) = (Vec::with_capacity(dim), Vec::with_capacity(dim));
    let mut dense_out = vec![0.0; dim];
    let mut factored_muladds = 0;
    let mut dense_muladds = 0;
    let mut factored_times = Vec::with_capacity(repeat);
    let mut dense_times = Vec::with_capacity(repeat);
    for _ in 0..repeat.max(1) {
        let t = Instant::now();
        factored_muladds = forward_into(plan, &input, &mut out, &mut scratch).muladds;
        factored_times.push(t.elapsed().as_secs_f64());

        let t = Instant::now();
        dense_muladds = dense_matvec(&dense, &input, &mut dense_out).muladds;
        dense_times.push(t.elapsed().as_secs_f64());
    }
    let max_abs_diff = out.iter().zip(&dense_out).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(BenchReport {
        dim,
        repeat: repeat.max(1),
        factored_muladds,
        dense_muladds,
        factored_median: median(factored_times),
        dense_median: median(dense_times),
        max_abs_diff,
    })
}
