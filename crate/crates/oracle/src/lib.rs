//! Brute-force references for the factored transform.
//!
//! Everything here is dense and cubic in `C(n, k)`: isotypic projectors from
//! the eigenspaces of the Johnson graph adjacency matrix, and a reference
//! Gelfand-Tsetlin basis from simultaneous diagonalisation of the
//! Jucys-Murphy elements, both built from explicit permutation matrices.

use std::collections::HashMap;

use faer::Side;
use jfft_core::transform::{dense_transform, project, FunctionVector};
use jfft_core::{binomial, enumerate_points, irrep_dim, FactorPlan, MemBudget, ProblemDims, Tableau, Word};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest `C(n, k)` the oracle accepts by default.
pub const DEFAULT_MAX_DIM: usize = 5000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("memory budget exceeded: need {needed} bytes, budget is {budget} bytes")]
    Budget { needed: u64, budget: u64 },
    #[error("dimension {dim} exceeds the oracle cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("oracle failure: {0}")]
    Failure(String),
    #[error(transparent)]
    Core(#[from] jfft_core::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub budget: MemBudget,
    pub max_dim: usize,
    /// Eigenvalues closer than this are treated as one eigenvalue.
    pub group_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { budget: MemBudget::default(), max_dim: DEFAULT_MAX_DIM, group_tol: 1e-6 }
    }
}

impl OracleConfig {
    fn admit(&self, dims: ProblemDims, matrices: u64) -> Result<()> {
        let dim = dims.dim();
        if dim > self.max_dim {
            return Err(OracleError::TooLarge { dim, cap: self.max_dim });
        }
        let needed = 8 * matrices * (dim as u64) * (dim as u64);
        if needed > self.budget.bytes {
            return Err(OracleError::Budget { needed, budget: self.budget.bytes });
        }
        Ok(())
    }
}

/// A dense `C(n, k) × C(n, k)` operator on functions on the k-subsets.
#[derive(Clone, Debug)]
pub struct DenseOperator {
    pub dims: ProblemDims,
    pub entries: DMatrix<f64>,
}

impl DenseOperator {
    pub fn is_symmetric(&self, tol: f64) -> bool {
        (&self.entries - self.entries.transpose()).amax() <= tol
    }
}

fn point_lookup(points: &[Word]) -> HashMap<&Word, usize> {
    points.iter().enumerate().map(|(i, w)| (w, i)).collect()
}

/// Adjacency matrix of `J(n, k)`: subsets are adjacent when they share `k - 1` elements.
pub fn adjacency(dims: ProblemDims, cfg: &OracleConfig) -> Result<DenseOperator> {
    cfg.admit(dims, 1)?;
    let points = enumerate_points(dims);
    let masks: Vec<u64> = points
        .iter()
        .map(|w| w.letters().iter().enumerate().filter(|(_, l)| l.as_char() == '1').map(|(i, _)| 1u64 << i).sum())
        .collect();
    let dim = points.len();
    let k = dims.k() as u32;
    let entries = DMatrix::from_fn(dim, dim, |x, y| {
        if k > 0 && (masks[x] & masks[y]).count_ones() == k - 1 {
            1.0
        } else {
            0.0
        }
    });
    Ok(DenseOperator { dims, entries })
}

struct Eigen {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

// nalgebra's SymmetricEigen stalls on these highly degenerate integer matrices.
fn sym_eigen(m: &DMatrix<f64>) -> Result<Eigen> {
    let dim = m.nrows();
    let a = faer::Mat::<f64>::from_fn(dim, dim, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let evd = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| OracleError::Failure(format!("eigendecomposition failed: {e:?}")))?;
    let (u, s) = (evd.U(), evd.S());
    Ok(Eigen {
        eigenvalues: (0..dim).map(|i| s[i]).collect(),
        eigenvectors: DMatrix::from_fn(dim, dim, |i, j| u[(i, j)]),
    })
}

/// Orthogonal projectors onto the isotypic components `a = 0..=s`.
///
/// Components are the eigenspaces of the adjacency matrix, ordered by
/// decreasing eigenvalue; their multiplicities are cross-checked against
/// `C(n, a) - C(n, a - 1)`.
pub fn isotypic_projectors(dims: ProblemDims, cfg: &OracleConfig) -> Result<Vec<DenseOperator>> {
    cfg.admit(dims, 3 + dims.s() as u64)?;
    let adj = adjacency(dims, cfg)?;
    let dim = dims.dim();
    let eig = sym_eigen(&adj.entries)?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &j in &order {
        match groups.last_mut() {
            Some(g) if (eig.eigenvalues[g[0]] - eig.eigenvalues[j]).abs() <= cfg.group_tol => g.push(j),
            _ => groups.push(vec![j]),
        }
    }
    if groups.len() != dims.s() + 1 {
        return Err(OracleError::Failure(format!(
            "{dims}: adjacency has {} distinct eigenvalues, expected {}",
            groups.len(),
            dims.s() + 1
        )));
    }
    let projectors = groups
        .iter()
        .enumerate()
        .map(|(a, g)| {
            let expect = irrep_dim(dims.n(), a) as usize;
            if g.len() != expect {
                return Err(OracleError::Failure(format!(
                    "{dims}: component {a} has multiplicity {}, expected {expect}",
                    g.len()
                )));
            }
            let v = eig.eigenvectors.select_columns(g);
            Ok(DenseOperator { dims, entries: &v * v.transpose() })
        })
        .collect::<Result<Vec<_>>>()?;

    let ones = DVector::from_element(dim, 1.0);
    if (&projectors[0].entries * &ones - &ones).amax() > 1e-9 {
        return Err(OracleError::Failure(format!("{dims}: top eigenspace is not the constants")));
    }
    Ok(projectors)
}

/// Dense `X_i = (1 i) + ... + (i-1 i)` acting on functions by permuting points.
pub fn yjm_dense(dims: ProblemDims, level: usize, cfg: &OracleConfig) -> Result<DenseOperator> {
    cfg.admit(dims, 1)?;
    if level == 0 || level > dims.n() {
        return Err(OracleError::Failure(format!("X_{level} undefined for {dims}")));
    }
    let points = enumerate_points(dims);
    let lookup = point_lookup(&points);
    let dim = points.len();
    let mut m = DMatrix::zeros(dim, dim);
    for (x, w) in points.iter().enumerate() {
        for j in 0..level - 1 {
            let y = lookup[&w.swapped(j, level - 1)];
            m[(x, y)] += 1.0;
        }
    }
    Ok(DenseOperator { dims, entries: m })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefinementOrder {
    Ascending,
    Descending,
}

/// Reference Gelfand-Tsetlin basis: columns sorted by tableau, each normalised
/// with its first nonzero coordinate positive.
#[derive(Clone, Debug)]
pub struct GtReference {
    pub columns: DMatrix<f64>,
    pub labels: Vec<Tableau>,
}

/// Splits the whole space into joint eigenspaces of `X_2, ..., X_n` and labels
/// the resulting lines by their content sequences.
pub fn gt_reference_basis(dims: ProblemDims, order: RefinementOrder, cfg: &OracleConfig) -> Result<GtReference> {
    let n = dims.n();
    cfg.admit(dims, 4)?;
    let dim = dims.dim();
    let mut spaces: Vec<(DMatrix<f64>, Vec<i64>)> = vec![(DMatrix::identity(dim, dim), vec![0; n])];
    let levels: Vec<usize> = match order {
        RefinementOrder::Ascending => (2..=n).collect(),
        RefinementOrder::Descending => (2..=n).rev().collect(),
    };
    for level in levels {
        let x = yjm_dense(dims, level, cfg)?.entries;
        let mut next = Vec::with_capacity(spaces.len());
        for (basis, contents) in spaces {
            let restricted = basis.transpose() * &x * &basis;
            let eig = sym_eigen(&restricted)?;
            let mut idx: Vec<usize> = (0..basis.ncols()).collect();
            idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for j in idx {
                match groups.last_mut() {
                    Some(g) if (eig.eigenvalues[g[0]] - eig.eigenvalues[j]).abs() <= cfg.group_tol => g.push(j),
                    _ => groups.push(vec![j]),
                }
            }
            for g in groups {
                let value = eig.eigenvalues[g[0]];
                let rounded = value.round();
                if (value - rounded).abs() > 1e-8 {
                    return Err(OracleError::Failure(format!("X_{level} eigenvalue {value} is not an integer")));
                }
                let mut c = contents.clone();
                c[level - 1] = rounded as i64;
                next.push((&basis * eig.eigenvectors.select_columns(&g), c));
            }
        }
        spaces = next;
    }

    let mut lines = Vec::with_capacity(dim);
    for (basis, contents) in spaces {
        if basis.ncols() != 1 {
            return Err(OracleError::Failure(format!(
                "joint eigenspace {contents:?} has dimension {}",
                basis.ncols()
            )));
        }
        let tab = Tableau::from_contents(&contents)
            .ok_or_else(|| OracleError::Failure(format!("{contents:?} is not a content sequence")))?;
        let mut v = basis.column(0).normalize();
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-9) {
            if *first < 0.0 {
                v.neg_mut();
            }
        }
        lines.push((tab, v));
    }
    lines.sort_by(|a, b| a.0.cmp(&b.0));
    let labels: Vec<Tableau> = lines.iter().map(|(t, _)| t.clone()).collect();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(OracleError::Failure("two lines share a tableau".into()));
    }
    let cols: Vec<DVector<f64>> = lines.into_iter().map(|(_, v)| v).collect();
    Ok(GtReference { columns: DMatrix::from_columns(&cols), labels })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    /// `max_t (1 - |<plan column t, reference column t>|)`.
    pub max_column_deviation: f64,
    /// Largest entry of `project(plan, f, {a}) - P_a f` over the sampled `f` and all `a`.
    pub max_projector_error: f64,
}

/// The plan's basis vectors as dense columns (column `t` is the vector of coordinate `t`).
pub fn plan_basis(plan: &FactorPlan) -> DMatrix<f64> {
    let dim = plan.dims().dim();
    // row-major forward matrix, read column-major: its transpose
    DMatrix::from_column_slice(dim, dim, &dense_transform(plan))
}

/// Compares a plan with the dense references on `samples` random vectors.
pub fn compare_plan_to_oracle(plan: &FactorPlan, samples: usize, seed: u64, cfg: &OracleConfig) -> Result<OracleReport> {
    let dims = plan.dims();
    let reference = gt_reference_basis(dims, RefinementOrder::Ascending, cfg)?;
    let basis = plan_basis(plan);
    let ref_index: HashMap<&Tableau, usize> = reference.labels.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut max_column_deviation = 0.0f64;
    for (t, tab) in plan.gt_labels().iter().enumerate() {
        let r = *ref_index
            .get(tab)
            .ok_or_else(|| OracleError::Failure(format!("plan label {tab} has no reference line")))?;
        let dot = basis.column(t).dot(&reference.columns.column(r));
        max_column_deviation = max_column_deviation.max(1.0 - dot.abs());
    }
    if reference.labels.len() != plan.gt_labels().len() {
        return Err(OracleError::Failure("label sets differ in size".into()));
    }

    let projectors = isotypic_projectors(dims, cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_projector_error = 0.0f64;
    for _ in 0..samples {
        let values: Vec<f64> = (0..dims.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = FunctionVector::new(dims, values.clone())?;
        let fv = DVector::from_vec(values);
        for (a, p) in projectors.iter().enumerate() {
            let (fa, _) = project(plan, &f, &[a])?;
            let want = &p.entries * &fv;
            let err = fa.values().iter().zip(want.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            max_projector_error = max_projector_error.max(err);
        }
    }
    Ok(OracleReport { max_column_deviation, max_projector_error })
}

/// `C(n, a) - C(n, a - 1)` divided by `C(n, k)`: the weight of a delta function in component `a`.
pub fn delta_weight(dims: ProblemDims, a: usize) -> f64 {
    irrep_dim(dims.n(), a) as f64 / binomial(dims.n(), dims.k()) as f64
}
