//! Applying a [`FactorPlan`]: forward and inverse transforms, isotypic
//! projections and component weights, with multiply-add counting.
//!
//! Counting model: a product counts 1, a product accumulated onto a running
//! sum counts 1, index moves count 0. A pair block therefore costs 4 and a
//! singleton 0, giving at most `2 (n - 1) C(n, k)` per transform.

use num_complex::Complex64;

use crate::dims::ProblemDims;
use crate::error::{input, Result};
use crate::planner::FactorPlan;

/// Real function on the k-subsets, in canonical point order.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionVector {
    dims: ProblemDims,
    values: Vec<f64>,
}

/// Coordinates in the Gelfand-Tsetlin basis, in canonical `B_n` order.
#[derive(Clone, Debug, PartialEq)]
pub struct GtVector {
    dims: ProblemDims,
    values: Vec<f64>,
}

macro_rules! vector_common {
    ($t:ident) => {
        impl $t {
            pub fn new(dims: ProblemDims, values: Vec<f64>) -> Result<Self> {
                if values.len() != dims.dim() {
                    return input(format!("{} values given, {dims} needs {}", values.len(), dims.dim()));
                }
                if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
                    return input(format!("entry {pos} is not finite"));
                }
                Ok(Self { dims, values })
            }

            pub fn zeros(dims: ProblemDims) -> Self {
                Self { dims, values: vec![0.0; dims.dim()] }
            }

            pub fn dims(&self) -> ProblemDims {
                self.dims
            }

            pub fn values(&self) -> &[f64] {
                &self.values
            }

            pub fn into_values(self) -> Vec<f64> {
                self.values
            }

            pub fn norm_sqr(&self) -> f64 {
                self.values.iter().map(|v| v * v).sum()
            }
        }
    };
}

vector_common!(FunctionVector);
vector_common!(GtVector);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct OpCounter {
    pub muladds: u64,
}

impl OpCounter {
    pub fn add(&mut self, ops: u64) {
        self.muladds += ops;
    }
}

impl std::ops::Add for OpCounter {
    type Output = OpCounter;

    fn add(self, rhs: OpCounter) -> OpCounter {
        OpCounter { muladds: self.muladds + rhs.muladds }
    }
}

/// Tolerances of the numerical invariants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub round_trip: f64,
    pub parseval: f64,
    pub oracle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { round_trip: 1e-10, parseval: 1e-10, oracle: 1e-8 }
    }
}

fn check_dims(plan: &FactorPlan, dims: ProblemDims) -> Result<()> {
    if plan.dims() != dims {
        return input(format!("plan is for {}, vector is for {dims}", plan.dims()));
    }
    Ok(())
}

/// Forward transform of raw point-ordered values into `out`, reusing `scratch`.
///
/// Panics if the slices do not have length `C(n, k)`.
pub fn forward_into(plan: &FactorPlan, input: &[f64], out: &mut Vec<f64>, scratch: &mut Vec<f64>) -> OpCounter {
    let dim = plan.dims().dim();
    assert_eq!(input.len(), dim);
    let mut ops = 0u64;
    let mut cur = std::mem::take(scratch);
    let mut next = std::mem::take(out);
    cur.resize(dim, 0.0);
    next.resize(dim, 0.0);
    for (x, &b1) in plan.entry.iter().enumerate() {
        cur[b1 as usize] = input[x];
    }
    for kernel in &plan.kernels {
        for &[s, d] in &kernel.singles {
            next[d as usize] = cur[s as usize];
        }
        for p in &kernel.pairs {
            let a = cur[p.src[0] as usize];
            let b = cur[p.src[1] as usize];
            next[p.dst[0] as usize] = p.r[0][0] * a + p.r[0][1] * b;
            next[p.dst[1] as usize] = p.r[1][0] * a + p.r[1][1] * b;
            ops += 4;
        }
        std::mem::swap(&mut cur, &mut next);
    }
    *out = cur;
    *scratch = next;
    OpCounter { muladds: ops }
}

/// Inverse transform of raw Gelfand-Tsetlin coordinates into `out`, reusing `scratch`.
pub fn inverse_into(plan: &FactorPlan, input: &[f64], out: &mut Vec<f64>, scratch: &mut Vec<f64>) -> OpCounter {
    let dim = plan.dims().dim();
    assert_eq!(input.len(), dim);
    let mut ops = 0u64;
    let mut cur = std::mem::take(scratch);
    let mut prev = std::mem::take(out);
    cur.clear();
    cur.extend_from_slice(input);
    prev.resize(dim, 0.0);
    for kernel in plan.kernels.iter().rev() {
        for &[s, d] in &kernel.singles {
            prev[s as usize] = cur[d as usize];
        }
        for p in &kernel.pairs {
            let a = cur[p.dst[0] as usize];
            let b = cur[p.dst[1] as usize];
            prev[p.src[0] as usize] = p.r[0][0] * a + p.r[1][0] * b;
            prev[p.src[1] as usize] = p.r[0][1] * a + p.r[1][1] * b;
            ops += 4;
        }
        std::mem::swap(&mut cur, &mut prev);
    }
    for (x, &b1) in plan.entry.iter().enumerate() {
        prev[x] = cur[b1 as usize];
    }
    *out = prev;
    *scratch = cur;
    OpCounter { muladds: ops }
}

/// Coordinates of `f` in the Gelfand-Tsetlin basis.
pub fn apply_forward(plan: &FactorPlan, f: &FunctionVector) -> Result<(GtVector, OpCounter)> {
    check_dims(plan, f.dims())?;
    let (mut out, mut scratch) = (Vec::new(), Vec::new());
    let ops = forward_into(plan, f.values(), &mut out, &mut scratch);
    Ok((GtVector { dims: f.dims(), values: out }, ops))
}

/// The function whose Gelfand-Tsetlin coordinates are `g`.
pub fn apply_inverse(plan: &FactorPlan, g: &GtVector) -> Result<(FunctionVector, OpCounter)> {
    check_dims(plan, g.dims())?;
    let (mut out, mut scratch) = (Vec::new(), Vec::new());
    let ops = inverse_into(plan, g.values(), &mut out, &mut scratch);
    Ok((FunctionVector { dims: g.dims(), values: out }, ops))
}

/// `f_H`: the sum of the isotypic components `f_a`, `a ∈ components`.
pub fn project(plan: &FactorPlan, f: &FunctionVector, components: &[usize]) -> Result<(FunctionVector, OpCounter)> {
    let s = plan.dims().s();
    if let Some(&a) = components.iter().find(|&&a| a > s) {
        return input(format!("component {a} exceeds s = {s}"));
    }
    let mut keep = vec![false; s + 1];
    for &a in components {
        keep[a] = true;
    }
    let (mut g, fwd) = apply_forward(plan, f)?;
    for (idx, v) in g.values.iter_mut().enumerate() {
        if !keep[plan.gt_component(idx)] {
            *v = 0.0;
        }
    }
    let (out, inv) = apply_inverse(plan, &g)?;
    Ok((out, fwd + inv))
}

/// Squared norms `‖f_a‖²` for `a = 0..=s`.
pub fn weights(plan: &FactorPlan, f: &FunctionVector) -> Result<(Vec<f64>, OpCounter)> {
    let (g, mut ops) = apply_forward(plan, f)?;
    let mut w = vec![0.0; plan.dims().s() + 1];
    for (idx, v) in g.values.iter().enumerate() {
        w[plan.gt_component(idx)] += v * v;
    }
    ops.add(g.values.len() as u64);
    Ok((w, ops))
}

/// Complex input as two independent real transforms. Counts real multiply-adds.
pub fn apply_forward_complex(plan: &FactorPlan, f: &[Complex64]) -> Result<(Vec<Complex64>, OpCounter)> {
    let dims = plan.dims();
    let re = FunctionVector::new(dims, f.iter().map(|z| z.re).collect())?;
    let im = FunctionVector::new(dims, f.iter().map(|z| z.im).collect())?;
    let (gr, a) = apply_forward(plan, &re)?;
    let (gi, b) = apply_forward(plan, &im)?;
    let out = gr.values.iter().zip(&gi.values).map(|(&r, &i)| Complex64::new(r, i)).collect();
    Ok((out, a + b))
}

/// Row-major `C × C` matrix `[B_0]_{B_n}`: row `t` is the Gelfand-Tsetlin basis
/// vector of coordinate `t` written over the points.
pub fn dense_transform(plan: &FactorPlan) -> Vec<f64> {
    let dim = plan.dims().dim();
    let mut m = vec![0.0; dim * dim];
    let mut unit = vec![0.0; dim];
    let (mut out, mut scratch) = (Vec::new(), Vec::new());
    for x in 0..dim {
        unit[x] = 1.0;
        forward_into(plan, &unit, &mut out, &mut scratch);
        unit[x] = 0.0;
        for (t, v) in out.iter().enumerate() {
            m[t * dim + x] = *v;
        }
    }
    m
}

/// Dense matrix-vector product, counting one multiply-add per entry.
pub fn dense_matvec(m: &[f64], v: &[f64], out: &mut [f64]) -> OpCounter {
    let dim = v.len();
    for (row, o) in m.chunks_exact(dim).zip(out.iter_mut()) {
        *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    OpCounter { muladds: (dim * dim) as u64 }
}
