//! Self-checks of a plan that need no dense oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dims::MemBudget;
use crate::planner::{check_partition, check_rotation, FactorPlan, YjmOperator};
use crate::transform::{apply_forward, apply_inverse, dense_transform, project, weights, FunctionVector, Tolerances};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name, passed, detail: detail.into() }
    }
}

/// Op-count ceilings `(transform, project, weights)` for the plan's dimensions.
pub fn op_bounds(plan: &FactorPlan) -> (u64, u64, u64) {
    let n = plan.dims().n() as u64;
    let c = plan.dims().dim() as u64;
    (2 * (n - 1) * c, 4 * (n - 1) * c, (2 * n - 1) * c)
}

/// Largest number of nonzero couplings of any source or destination index.
pub fn max_couplings(plan: &FactorPlan) -> usize {
    let dim = plan.dims().dim();
    let mut worst = 0;
    for level in plan.levels() {
        let mut per_src = vec![0usize; dim];
        let mut per_dst = vec![0usize; dim];
        for b in &level.blocks {
            for (si, &s) in b.srcs.iter().enumerate() {
                for (di, &d) in b.dsts.iter().enumerate() {
                    let nonzero = b.coeffs.is_none_or(|r| r[di][si] != 0.0);
                    if nonzero {
                        per_src[s] += 1;
                        per_dst[d] += 1;
                    }
                }
            }
        }
        worst = worst.max(per_src.into_iter().chain(per_dst).max().unwrap_or(0));
    }
    worst
}

/// Largest `|X_i v - c_i v|` over all basis vectors `v` and levels `i`, where
/// `c_i` is the content of box `i` of the vector's tableau.
pub fn gt_residual(plan: &FactorPlan) -> crate::error::Result<f64> {
    let dims = plan.dims();
    let dim = dims.dim();
    let basis = dense_transform(plan);
    let mut worst = 0.0f64;
    for i in 1..=dims.n() {
        let op = YjmOperator::new(dims.n(), dims.k(), i)?;
        for (t, tab) in plan.gt_labels().iter().enumerate() {
            let v = &basis[t * dim..(t + 1) * dim];
            let c = tab.contents()[i - 1] as f64;
            let xv = op.apply(v);
            let r = xv.iter().zip(v).map(|(a, b)| (a - c * b).abs()).fold(0.0, f64::max);
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

fn random_vector(plan: &FactorPlan, rng: &mut ChaCha8Rng) -> FunctionVector {
    let d = plan.dims();
    FunctionVector::new(d, (0..d.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("finite values")
}

/// Runs every structural and numerical invariant on `plan`.
pub fn invariant_suite(plan: &FactorPlan, tol: &Tolerances, budget: MemBudget, seed: u64) -> Vec<CheckOutcome> {
    let dims = plan.dims();
    let dim = dims.dim();
    let mut out = Vec::new();

    let partition = plan
        .levels()
        .iter()
        .map(|l| check_partition(&l.blocks, dim).map_err(|e| format!("level {}: {e}", l.level)))
        .collect::<Result<Vec<_>, _>>();
    out.push(CheckOutcome::new("partition", partition.is_ok(), partition.err().unwrap_or_default()));

    let couplings = max_couplings(plan);
    out.push(CheckOutcome::new("sparsity", couplings <= 2, format!("max couplings per index {couplings}")));

    let bad_rotation = plan
        .levels()
        .iter()
        .flat_map(|l| &l.blocks)
        .filter_map(|b| b.coeffs.as_ref())
        .find_map(|r| check_rotation(r, 1e-12).err());
    out.push(CheckOutcome::new(
        "orthogonality",
        bad_rotation.is_none(),
        bad_rotation.map(|e| e.to_string()).unwrap_or_default(),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (t_bound, p_bound, w_bound) = op_bounds(plan);
    let (mut rt_err, mut parseval_err, mut sum_err, mut weight_err) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut t_ops, mut p_ops, mut w_ops) = (0u64, 0u64, 0u64);
    let components: Vec<usize> = (0..=dims.s()).collect();
    for _ in 0..20 {
        let f = random_vector(plan, &mut rng);
        let (g, fwd) = apply_forward(plan, &f).expect("matching dims");
        let (back, inv) = apply_inverse(plan, &g).expect("matching dims");
        t_ops = t_ops.max(fwd.muladds).max(inv.muladds);
        rt_err = rt_err.max(back.values().iter().zip(f.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        parseval_err = parseval_err.max((g.norm_sqr().sqrt() - f.norm_sqr().sqrt()).abs());

        let mut sum = vec![0.0; dim];
        for &a in &components {
            let (fa, ops) = project(plan, &f, &[a]).expect("valid component");
            p_ops = p_ops.max(ops.muladds);
            sum.iter_mut().zip(fa.values()).for_each(|(s, v)| *s += v);
        }
        sum_err = sum_err.max(sum.iter().zip(f.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));

        let (w, ops) = weights(plan, &f).expect("matching dims");
        w_ops = w_ops.max(ops.muladds);
        weight_err = weight_err.max((w.iter().sum::<f64>() - f.norm_sqr()).abs());
    }
    out.push(CheckOutcome::new("round-trip", rt_err <= tol.round_trip, format!("max abs error {rt_err:e}")));
    out.push(CheckOutcome::new("parseval", parseval_err <= tol.parseval, format!("max norm gap {parseval_err:e}")));
    out.push(CheckOutcome::new("component-sum", sum_err <= 1e-9, format!("max abs error {sum_err:e}")));
    out.push(CheckOutcome::new("weight-sum", weight_err <= tol.parseval, format!("max gap {weight_err:e}")));
    out.push(CheckOutcome::new(
        "op-bounds",
        t_ops <= t_bound && p_ops <= p_bound && w_ops <= w_bound,
        format!("transform {t_ops}/{t_bound}, project {p_ops}/{p_bound}, weights {w_ops}/{w_bound}"),
    ));

    let dense_bytes = 8 * (dim as u64) * (dim as u64);
    match budget.check(dense_bytes).and_then(|_| gt_residual(plan)) {
        Ok(res) => out.push(CheckOutcome::new("gt-characterization", res <= tol.oracle, format!("max residual {res:e}"))),
        Err(e) => out.push(CheckOutcome::new("gt-characterization", false, e.to_string())),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::ProblemDims;
    use crate::planner::build_plan;

    #[test]
    fn suite_passes_on_built_plans() {
        for (n, k) in [(1, 0), (2, 1), (5, 2), (8, 4)] {
            let plan = build_plan(ProblemDims::new(n, k).unwrap()).unwrap();
            for c in invariant_suite(&plan, &Tolerances::default(), MemBudget::default(), 1) {
                assert!(c.passed, "n={n} k={k}: {} {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn gt_residual_is_small() {
        let plan = build_plan(ProblemDims::new(7, 3).unwrap()).unwrap();
        assert!(gt_residual(&plan).unwrap() < 1e-10);
    }
}
