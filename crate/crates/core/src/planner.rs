//! Construction of the sparse factors `[B_{i-1}]_{B_i}`, `i = 2..=n`.
//!
//! Each factor is block diagonal up to index permutation: a block collects the
//! labels of `B_{i-1}` and `B_i` sharing one frame (tableau with `i - 1` boxes,
//! tail of length `n - i`), and holds either one label on each side or two.
//! Pair coefficients come from diagonalising the Jucys-Murphy element
//! `X_i = (1 i) + ... + (i-1 i)` on the two-dimensional block span. Its
//! eigenvalues there are the contents of the two boxes that can extend the
//! frame tableau.
//!
//! The span of a block with tail `w` is `δ_w ⊗ V` where `V` lives in the
//! functions on `J(i, r)`, `r = k - ones(w)`, and depends on `r` only. The
//! planner therefore builds the Gelfand-Tsetlin bases of the small Johnson
//! graphs `J(i, r)` level by level and reuses each rotation for every tail.

use std::collections::{BTreeMap, HashMap};

use crate::dims::{binomial, MemBudget, ProblemDims};
use crate::error::{input, Error, Result};
use crate::label::{BasisLabel, Frame, LevelIndex};
use crate::tableau::{enumerate_tableaux_upto, Row, Tableau, TwoRowShape};
use crate::word::{word_rank, word_unrank, Letter};

/// Rows are indexed by destinations (row-1 extension first), columns by
/// sources (letter-1 predecessor first).
pub type Rotation = [[f64; 2]; 2];

pub const PLAN_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlannerConfig {
    /// Allowed gap between a block eigenvalue and its box content.
    pub eig_tol: f64,
    /// Allowed deviation of `RᵀR` from the identity.
    pub ortho_tol: f64,
    /// Allowed asymmetry of a block matrix.
    pub sym_tol: f64,
    pub budget: MemBudget,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self { eig_tol: 1e-6, ortho_tol: 1e-12, sym_tol: 1e-10, budget: MemBudget::default() }
    }
}

/// One 1×1 or 2×2 block of a factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub level: usize,
    pub frame: Frame,
    /// Indices into `B_{level-1}`.
    pub srcs: Vec<usize>,
    /// Indices into `B_level`.
    pub dsts: Vec<usize>,
    /// Present exactly for pair blocks. Singletons carry coefficient +1.
    pub coeffs: Option<Rotation>,
}

impl Block {
    pub fn is_pair(&self) -> bool {
        self.srcs.len() == 2
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanLevel {
    pub level: usize,
    pub blocks: Vec<Block>,
}

/// The labels of `B_{i-1}` related to `label ∈ B_i`.
pub fn predecessors(label: &BasisLabel, dims: ProblemDims) -> Result<Vec<BasisLabel>> {
    if label.level() == 0 {
        return input("level-0 labels have no predecessors");
    }
    if !label.is_admissible(dims) {
        return input(format!("label {label} is not admissible"));
    }
    let tab = label.tab.parent().expect("level >= 1");
    let preds: Vec<BasisLabel> = [Letter::One, Letter::Two]
        .into_iter()
        .map(|c| BasisLabel::new(tab.clone(), label.tail.prepend(c)))
        .filter(|l| l.is_admissible(dims))
        .collect();
    if preds.is_empty() {
        return Err(Error::Internal(format!("label {label} has no admissible predecessor")));
    }
    Ok(preds)
}

/// Partitions `B_{i-1}` and `B_i` into frame blocks (coefficients left empty).
pub fn group_blocks(dims: ProblemDims, level: usize) -> Result<Vec<Block>> {
    if level < 2 || level > dims.n() {
        return input(format!("factor levels run over 2..={}, got {level}", dims.n()));
    }
    group_blocks_between(&LevelIndex::new(dims, level - 1)?, &LevelIndex::new(dims, level)?)
}

pub(crate) fn group_blocks_between(prev: &LevelIndex, next: &LevelIndex) -> Result<Vec<Block>> {
    type Side = (Vec<(Letter, usize)>, Vec<(Row, usize)>);
    let level = next.level();
    let mut frames: BTreeMap<Frame, Side> = BTreeMap::new();
    for (idx, l) in prev.labels().iter().enumerate() {
        let frame = l
            .source_frame()
            .ok_or_else(|| Error::Internal(format!("source {l} at level {} has an empty tail", level - 1)))?;
        frames.entry(frame).or_default().0.push((l.tail.letters()[0], idx));
    }
    for (idx, l) in next.labels().iter().enumerate() {
        let frame = l
            .dest_frame()
            .ok_or_else(|| Error::Internal(format!("destination {l} has no boxes")))?;
        let row = l.tab.last_row().expect("non-empty tableau");
        frames.entry(frame).or_default().1.push((row, idx));
    }
    frames
        .into_iter()
        .map(|(frame, (mut srcs, mut dsts))| {
            if srcs.len() != dsts.len() || srcs.is_empty() || srcs.len() > 2 {
                return Err(Error::Internal(format!(
                    "frame ({}, {}) at level {level} has {} sources and {} destinations",
                    frame.tab,
                    frame.tail,
                    srcs.len(),
                    dsts.len()
                )));
            }
            srcs.sort();
            dsts.sort();
            Ok(Block {
                level,
                frame,
                srcs: srcs.into_iter().map(|(_, i)| i).collect(),
                dsts: dsts.into_iter().map(|(_, i)| i).collect(),
                coeffs: None,
            })
        })
        .collect()
}

/// The action of `X_i` on functions on the words of length `len` with `ones` ones.
#[derive(Clone, Debug)]
pub struct YjmOperator {
    level: usize,
    points: usize,
    /// `perms[j][x]`: index of point `x` with positions `j` and `level - 1` exchanged.
    perms: Vec<Vec<u32>>,
}

impl YjmOperator {
    pub fn new(len: usize, ones: usize, level: usize) -> Result<Self> {
        if level == 0 || level > len || ones > len {
            return input(format!("X_{level} is undefined on J({len}, {ones})"));
        }
        let points = binomial(len, ones) as usize;
        let words: Vec<_> = (0..points).map(|x| word_unrank(len, ones, x)).collect::<Result<_>>()?;
        let perms = (0..level - 1)
            .map(|j| words.iter().map(|w| word_rank(&w.swapped(j, level - 1)) as u32).collect())
            .collect();
        Ok(Self { level, points, perms })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.points];
        for perm in &self.perms {
            for (o, &src) in out.iter_mut().zip(perm) {
                *o += v[src as usize];
            }
        }
        out
    }

    /// `m[p][q] = <b_p, X_i b_q>` for the orthonormal pair `(b1, b2)`.
    pub fn block_matrix(&self, b1: &[f64], b2: &[f64], sym_tol: f64) -> Result<[[f64; 2]; 2]> {
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let x1 = self.apply(b1);
        let x2 = self.apply(b2);
        let m = [[dot(b1, &x1), dot(b1, &x2)], [dot(b2, &x1), dot(b2, &x2)]];
        if (m[0][1] - m[1][0]).abs() > sym_tol {
            return Err(Error::Numerical(format!(
                "X_{} block is not symmetric: {} vs {}",
                self.level, m[0][1], m[1][0]
            )));
        }
        Ok(m)
    }
}

/// Eigen-decomposition of a symmetric 2×2 matrix by a single Jacobi rotation.
/// Returns `(eigenvalues, eigenvectors)` with `vectors[j]` belonging to `values[j]`.
pub fn symmetric_eigen2(m: [[f64; 2]; 2]) -> ([f64; 2], [[f64; 2]; 2]) {
    let (a, b, d) = (m[0][0], 0.5 * (m[0][1] + m[1][0]), m[1][1]);
    if b == 0.0 {
        return ([a, d], [[1.0, 0.0], [0.0, 1.0]]);
    }
    let theta = (d - a) / (2.0 * b);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    ([a - t * b, d + t * b], [[c, -s], [s, c]])
}

fn sign_normalize(row: &mut [f64; 2]) {
    if row[0].abs() <= 1e-12 {
        row[0] = 0.0;
        if row[1] < 0.0 {
            row[1] = -row[1];
        }
    } else if row[0] < 0.0 {
        row[0] = -row[0];
        row[1] = -row[1];
    }
}

/// Orthogonal coefficients of a pair block from its `X_i` matrix. The eigenvector
/// for the row-1 content `p` becomes the first row, the one for the row-2 content
/// `q - 1` the second.
pub fn rotation_from_block(m: [[f64; 2]; 2], frame: TwoRowShape, eig_tol: f64) -> Result<Rotation> {
    if frame.grow(Row::Two).is_none() {
        return input(format!("frame shape {frame} admits no row-2 extension"));
    }
    let c1 = frame.next_content(Row::One) as f64;
    let c2 = frame.next_content(Row::Two) as f64;
    let (values, vectors) = symmetric_eigen2(m);
    let first = if (values[0] - c1).abs() <= (values[1] - c1).abs() { 0 } else { 1 };
    let (v1, v2) = (values[first], values[1 - first]);
    if (v1 - c1).abs() > eig_tol || (v2 - c2).abs() > eig_tol {
        return Err(Error::Verification(format!(
            "block eigenvalues ({v1}, {v2}) do not match contents ({c1}, {c2}) for frame {frame}"
        )));
    }
    let mut r = [vectors[first], vectors[1 - first]];
    sign_normalize(&mut r[0]);
    sign_normalize(&mut r[1]);
    Ok(r)
}

/// Checks `RᵀR = I` and the sign convention.
pub fn check_rotation(r: &Rotation, ortho_tol: f64) -> Result<()> {
    if r.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Verification("non-finite coefficient".into()));
    }
    for i in 0..2 {
        for j in 0..2 {
            let g = r[0][i] * r[0][j] + r[1][i] * r[1][j];
            let expect = if i == j { 1.0 } else { 0.0 };
            if (g - expect).abs() > ortho_tol {
                return Err(Error::Verification(format!(
                    "coefficients {r:?} are not orthogonal (RᵀR[{i}][{j}] = {g})"
                )));
            }
        }
    }
    for row in r {
        let ok = if row[0].abs() <= 1e-12 { row[1] > 0.0 } else { row[0] > 0.0 };
        if !ok {
            return Err(Error::Verification(format!("coefficient row {row:?} breaks the sign convention")));
        }
    }
    Ok(())
}

/// Gelfand-Tsetlin basis of the functions on `J(len, ones)` for one `(len, ones)`.
struct LocalBasis {
    tableaux: Vec<Tableau>,
    index: HashMap<Tableau, usize>,
    /// Empty when only the coefficients of this level are needed.
    vectors: Vec<Vec<f64>>,
}

impl LocalBasis {
    fn vector(&self, tab: &Tableau) -> Option<&[f64]> {
        self.index.get(tab).map(|&i| self.vectors[i].as_slice())
    }
}

/// Coefficients of one level keyed by `(r, frame tableau)`; `None` for singletons.
type LevelCoeffs = HashMap<(usize, Tableau), Option<Rotation>>;

fn local_ones_range(dims: ProblemDims, level: usize) -> std::ops::RangeInclusive<usize> {
    dims.k().saturating_sub(dims.n() - level)..=dims.k().min(level)
}

/// Bytes of dense local vectors held while building `level` from `level - 1`.
fn planner_bytes(dims: ProblemDims) -> u64 {
    let held = |level: usize| -> u64 {
        if level == 0 || level >= dims.n() {
            return 0;
        }
        local_ones_range(dims, level).map(|r| binomial(level, r).pow(2)).sum()
    };
    let peak = (2..=dims.n().max(2)).map(|i| held(i - 1) + held(i)).max().unwrap_or(0);
    8 * (peak + dims.dim() as u64)
}

fn build_level(
    dims: ProblemDims,
    level: usize,
    prev: &HashMap<usize, LocalBasis>,
    keep_vectors: bool,
    cfg: &PlannerConfig,
) -> Result<(HashMap<usize, LocalBasis>, LevelCoeffs)> {
    let mut bases = HashMap::new();
    let mut coeffs = LevelCoeffs::new();
    for r in local_ones_range(dims, level) {
        let from_one = r.checked_sub(1).and_then(|r1| prev.get(&r1));
        let from_two = if r < level { prev.get(&r) } else { None };
        let op = YjmOperator::new(level, r, level)?;
        let points = op.points();

        // local point x ends in letter c; its prefix has a rank in J(level - 1, r - [c = 1])
        let embed: Vec<(Letter, usize)> = (0..points)
            .map(|x| {
                let w = word_unrank(level, r, x)?;
                let last = w.letters()[level - 1];
                let prefix = crate::word::Word::new(w.letters()[..level - 1].to_vec());
                Ok((last, word_rank(&prefix)))
            })
            .collect::<Result<_>>()?;
        let embedded = |c: Letter, v: &[f64]| -> Vec<f64> {
            embed.iter().map(|&(l, p)| if l == c { v[p] } else { 0.0 }).collect()
        };

        let tableaux = enumerate_tableaux_upto(level, r.min(level - r));
        let index: HashMap<Tableau, usize> = tableaux.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut vectors: Vec<Vec<f64>> = if keep_vectors { vec![Vec::new(); tableaux.len()] } else { Vec::new() };

        let mut frames: Vec<Tableau> = from_one
            .into_iter()
            .chain(from_two)
            .flat_map(|b| b.tableaux.iter().cloned())
            .collect();
        frames.sort();
        frames.dedup();

        let mut covered = 0;
        for frame in frames {
            let srcs: Vec<Vec<f64>> = [(Letter::One, from_one), (Letter::Two, from_two)]
                .into_iter()
                .filter_map(|(c, b)| b.and_then(|b| b.vector(&frame)).map(|v| embedded(c, v)))
                .collect();
            let dsts: Vec<Tableau> = [Row::One, Row::Two]
                .into_iter()
                .filter_map(|row| frame.extend(row))
                .filter(|t| index.contains_key(t))
                .collect();
            if srcs.len() != dsts.len() {
                return Err(Error::Internal(format!(
                    "J({level}, {r}) frame {frame}: {} sources, {} destinations",
                    srcs.len(),
                    dsts.len()
                )));
            }
            covered += dsts.len();
            let shape = frame.shape();
            match srcs.len() {
                1 => {
                    let x = op.apply(&srcs[0]);
                    let value: f64 = srcs[0].iter().zip(&x).map(|(a, b)| a * b).sum();
                    let content = shape.next_content(dsts[0].last_row().expect("non-empty")) as f64;
                    if (value - content).abs() > cfg.eig_tol {
                        return Err(Error::Verification(format!(
                            "singleton eigenvalue {value} differs from content {content} (J({level}, {r}), frame {frame})"
                        )));
                    }
                    coeffs.insert((r, frame), None);
                    if keep_vectors {
                        vectors[index[&dsts[0]]] = srcs.into_iter().next().expect("one source");
                    }
                }
                2 => {
                    let m = op.block_matrix(&srcs[0], &srcs[1], cfg.sym_tol)?;
                    let rot = rotation_from_block(m, shape, cfg.eig_tol)?;
                    check_rotation(&rot, cfg.ortho_tol)?;
                    if keep_vectors {
                        for (d, dst) in dsts.iter().enumerate() {
                            vectors[index[dst]] = srcs[0]
                                .iter()
                                .zip(&srcs[1])
                                .map(|(a, b)| rot[d][0] * a + rot[d][1] * b)
                                .collect();
                        }
                    }
                    coeffs.insert((r, frame), Some(rot));
                }
                n => return Err(Error::Internal(format!("frame {frame} has {n} sources"))),
            }
        }
        if covered != tableaux.len() {
            return Err(Error::Internal(format!(
                "J({level}, {r}): blocks cover {covered} of {} basis vectors",
                tableaux.len()
            )));
        }
        bases.insert(r, LocalBasis { tableaux, index, vectors });
    }
    Ok((bases, coeffs))
}

/// Builds and verifies the factor sequence for `J(n, k)`.
pub fn build_plan(dims: ProblemDims) -> Result<FactorPlan> {
    build_plan_with(dims, &PlannerConfig::default())
}

pub fn build_plan_with(dims: ProblemDims, cfg: &PlannerConfig) -> Result<FactorPlan> {
    cfg.budget.check(planner_bytes(dims))?;
    let n = dims.n();
    let mut local: HashMap<usize, LocalBasis> = local_ones_range(dims, 1)
        .map(|r| {
            let tab = Tableau::single_row(1);
            let index = HashMap::from([(tab.clone(), 0)]);
            (r, LocalBasis { tableaux: vec![tab], index, vectors: vec![vec![1.0]] })
        })
        .collect();

    let mut prev_index = LevelIndex::new(dims, 1)?;
    let mut levels = Vec::with_capacity(n.saturating_sub(1));
    for level in 2..=n {
        let (next_local, coeffs) = build_level(dims, level, &local, level < n, cfg)?;
        let next_index = LevelIndex::new(dims, level)?;
        let mut blocks = group_blocks_between(&prev_index, &next_index)?;
        for block in &mut blocks {
            let r = dims
                .head_ones(block.frame.tail.len(), block.frame.tail.ones())
                .ok_or_else(|| Error::Internal(format!("block tail {} outside X_{level}", block.frame.tail)))?;
            let rot = coeffs.get(&(r, block.frame.tab.clone())).ok_or_else(|| {
                Error::Internal(format!("no coefficients for frame {} with r = {r}", block.frame.tab))
            })?;
            if rot.is_some() != block.is_pair() {
                return Err(Error::Internal(format!("block arity mismatch at frame {}", block.frame.tab)));
            }
            block.coeffs = *rot;
        }
        levels.push(PlanLevel { level, blocks });
        local = next_local;
        prev_index = next_index;
    }
    FactorPlan::from_levels(dims, levels, cfg)
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct PairKernel {
    pub src: [u32; 2],
    pub dst: [u32; 2],
    pub r: Rotation,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub(crate) struct LevelKernel {
    /// `(src, dst)` moves.
    pub singles: Vec<[u32; 2]>,
    pub pairs: Vec<PairKernel>,
}

/// The verified factor sequence `[B_1]_{B_2}, ..., [B_{n-1}]_{B_n}` of `J(n, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorPlan {
    dims: ProblemDims,
    levels: Vec<PlanLevel>,
    /// `B_0` index to `B_1` index.
    pub(crate) entry: Vec<u32>,
    pub(crate) kernels: Vec<LevelKernel>,
    gt_labels: Vec<Tableau>,
}

impl FactorPlan {
    /// Validates `levels` against the canonical block structure and compiles them for apply.
    pub fn from_levels(dims: ProblemDims, levels: Vec<PlanLevel>, cfg: &PlannerConfig) -> Result<Self> {
        let n = dims.n();
        let dim = dims.dim();
        if levels.len() != n.saturating_sub(1) {
            return Err(Error::Verification(format!("expected {} levels, found {}", n - 1, levels.len())));
        }
        let level0 = LevelIndex::new(dims, 0)?;
        let mut prev = LevelIndex::new(dims, 1)?;
        let entry = level0
            .labels()
            .iter()
            .map(|l| {
                let b1 = BasisLabel::new(Tableau::single_row(1), l.tail.drop_first().expect("n >= 1"));
                prev.position(&b1).map(|i| i as u32)
            })
            .collect::<Result<Vec<_>>>()?;

        let mut kernels = Vec::with_capacity(levels.len());
        for (pos, lvl) in levels.iter().enumerate() {
            let level = pos + 2;
            if lvl.level != level {
                return Err(Error::Verification(format!("level {} found where {level} was expected", lvl.level)));
            }
            let next = LevelIndex::new(dims, level)?;
            let expected = group_blocks_between(&prev, &next)?;
            if expected.len() != lvl.blocks.len() {
                return Err(Error::Verification(format!(
                    "level {level}: {} blocks, expected {}",
                    lvl.blocks.len(),
                    expected.len()
                )));
            }
            check_partition(&lvl.blocks, dim).map_err(|e| Error::Verification(format!("level {level}: {e}")))?;
            let mut kernel = LevelKernel::default();
            for (block, want) in lvl.blocks.iter().zip(&expected) {
                if block.level != level || block.frame != want.frame || block.srcs != want.srcs || block.dsts != want.dsts {
                    return Err(Error::Verification(format!(
                        "level {level}: block at frame ({}, {}) does not match the canonical structure",
                        block.frame.tab, block.frame.tail
                    )));
                }
                match (&block.coeffs, block.is_pair()) {
                    (None, false) => kernel.singles.push([block.srcs[0] as u32, block.dsts[0] as u32]),
                    (Some(r), true) => {
                        check_rotation(r, cfg.ortho_tol)
                            .map_err(|e| Error::Verification(format!("level {level}, frame {}: {e}", block.frame.tab)))?;
                        kernel.pairs.push(PairKernel {
                            src: [block.srcs[0] as u32, block.srcs[1] as u32],
                            dst: [block.dsts[0] as u32, block.dsts[1] as u32],
                            r: *r,
                        });
                    }
                    _ => {
                        return Err(Error::Verification(format!(
                            "level {level}, frame {}: coefficients present iff the block is a pair",
                            block.frame.tab
                        )))
                    }
                }
            }
            kernels.push(kernel);
            prev = next;
        }
        let gt_labels = LevelIndex::new(dims, n)?.labels().iter().map(|l| l.tab.clone()).collect();
        Ok(Self { dims, levels, entry, kernels, gt_labels })
    }

    pub fn dims(&self) -> ProblemDims {
        self.dims
    }

    /// Factors for `i = 2..=n`, in order.
    pub fn levels(&self) -> &[PlanLevel] {
        &self.levels
    }

    /// Tableau of each Gelfand-Tsetlin coordinate, in canonical `B_n` order.
    pub fn gt_labels(&self) -> &[Tableau] {
        &self.gt_labels
    }

    /// Row-2 length `a` of each Gelfand-Tsetlin coordinate.
    pub fn gt_component(&self, idx: usize) -> usize {
        self.gt_labels[idx].shape().q
    }

    /// Position of the Gelfand-Tsetlin coordinate labelled by `tab`.
    pub fn gt_position(&self, tab: &Tableau) -> Option<usize> {
        self.gt_labels.binary_search(tab).ok()
    }
}

/// Each index of `0..dim` appears exactly once among sources and once among destinations.
pub fn check_partition(blocks: &[Block], dim: usize) -> std::result::Result<(), String> {
    let mut seen_src = vec![false; dim];
    let mut seen_dst = vec![false; dim];
    for b in blocks {
        if b.srcs.len() != b.dsts.len() || b.srcs.is_empty() || b.srcs.len() > 2 {
            return Err(format!("block with {} sources and {} destinations", b.srcs.len(), b.dsts.len()));
        }
        for (indices, seen) in [(&b.srcs, &mut seen_src), (&b.dsts, &mut seen_dst)] {
            for &i in indices {
                if i >= dim {
                    return Err(format!("index {i} out of range 0..{dim}"));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(format!("index {i} appears twice"));
                }
            }
        }
    }
    if seen_src.iter().chain(&seen_dst).all(|&s| s) {
        Ok(())
    } else {
        Err("some index is not covered".into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn dims(n: usize, k: usize) -> ProblemDims {
        ProblemDims::new(n, k).unwrap()
    }

    fn label(tab: &str, tail: &str) -> BasisLabel {
        BasisLabel::new(tab.parse().unwrap(), tail.parse().unwrap())
    }

    fn shape_counts(blocks: &[Block]) -> (usize, usize) {
        let pairs = blocks.iter().filter(|b| b.is_pair()).count();
        (blocks.len() - pairs, pairs)
    }

    #[test]
    fn predecessor_examples() {
        let p = predecessors(&label("11", ""), dims(2, 1)).unwrap();
        assert_eq!(p, vec![label("1", "1"), label("1", "2")]);
        let p = predecessors(&label("1122", ""), dims(4, 2)).unwrap();
        assert_eq!(p, vec![label("112", "1"), label("112", "2")]);
        // tail "1" at level 2 of J(3,1) leaves r = 0, so prepending another 1 is impossible
        let p = predecessors(&label("11", "1"), dims(3, 1)).unwrap();
        assert_eq!(p, vec![label("1", "21")]);
        assert!(predecessors(&label("", "1122"), dims(4, 2)).is_err());
        assert!(predecessors(&label("12", "11"), dims(4, 2)).is_err());
    }

    #[test]
    fn block_structure_of_j42() {
        let d = dims(4, 2);
        assert_eq!(shape_counts(&group_blocks(d, 2).unwrap()), (2, 2));
        assert_eq!(shape_counts(&group_blocks(d, 3).unwrap()), (2, 2));
        assert_eq!(shape_counts(&group_blocks(d, 4).unwrap()), (0, 3));
        assert_eq!(shape_counts(&group_blocks(dims(2, 1), 2).unwrap()), (0, 1));
        assert!(group_blocks(d, 1).is_err());
        assert!(group_blocks(d, 5).is_err());
    }

    #[test]
    fn blocks_partition_both_bases() {
        for n in 2..=12 {
            for k in 0..=n {
                let d = dims(n, k);
                for level in 2..=n {
                    let blocks = group_blocks(d, level).unwrap();
                    check_partition(&blocks, d.dim()).unwrap_or_else(|e| panic!("n={n} k={k} level={level}: {e}"));
                }
            }
        }
    }

    #[test]
    fn yjm_on_j21() {
        let op = YjmOperator::new(2, 1, 2).unwrap();
        // points in order "12", "21"
        let m = op.block_matrix(&[0.0, 1.0], &[1.0, 0.0], 1e-10).unwrap();
        assert_eq!(m, [[0.0, 1.0], [1.0, 0.0]]);
        assert!(YjmOperator::new(2, 1, 3).is_err());
    }

    #[test]
    fn rotation_examples() {
        let r = rotation_from_block([[0.0, 1.0], [1.0, 0.0]], TwoRowShape::new(1, 0).unwrap(), 1e-6).unwrap();
        let expect = [[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]];
        for (row, want) in r.iter().zip(&expect) {
            for (x, y) in row.iter().zip(want) {
                assert!((x - y).abs() < 1e-15);
            }
        }
        let shape = TwoRowShape::new(3, 1).unwrap();
        let r = rotation_from_block([[3.0, 0.0], [0.0, 0.0]], shape, 1e-6).unwrap();
        assert_eq!(r, [[1.0, 0.0], [0.0, 1.0]]);
        let r = rotation_from_block([[0.0, 0.0], [0.0, 3.0]], shape, 1e-6).unwrap();
        assert_eq!(r, [[0.0, 1.0], [1.0, 0.0]]);
        assert!(matches!(
            rotation_from_block([[1.0, 0.0], [0.0, 1.0]], shape, 1e-6),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn rotation_check_rejects_bad_coefficients() {
        let good = [[0.6, 0.8], [0.8, -0.6]];
        assert!(check_rotation(&good, 1e-12).is_ok());
        assert!(check_rotation(&[[0.6, 0.8], [0.8, 0.6]], 1e-12).is_err());
        assert!(check_rotation(&[[-0.6, -0.8], [0.8, -0.6]], 1e-12).is_err());
        assert!(check_rotation(&[[0.0, -1.0], [1.0, 0.0]], 1e-12).is_err());
    }

    #[test]
    fn plan_for_j21() {
        let plan = build_plan(dims(2, 1)).unwrap();
        assert_eq!(plan.levels().len(), 1);
        let blocks = &plan.levels()[0].blocks;
        assert_eq!(blocks.len(), 1);
        let r = blocks[0].coeffs.unwrap();
        assert!(r.iter().flatten().all(|x| (x.abs() - FRAC_1_SQRT_2).abs() < 1e-15));
    }

    #[test]
    fn plan_for_j42_block_pattern() {
        let plan = build_plan(dims(4, 2)).unwrap();
        let counts: Vec<_> = plan.levels().iter().map(|l| shape_counts(&l.blocks)).collect();
        assert_eq!(counts, vec![(2, 2), (2, 2), (0, 3)]);
    }

    #[test]
    fn extremal_plans_are_trivial() {
        for n in 1..=8 {
            for k in [0, n] {
                let plan = build_plan(dims(n, k)).unwrap();
                assert_eq!(plan.levels().len(), n - 1);
                for l in plan.levels() {
                    assert_eq!(l.blocks.len(), 1);
                    assert!(!l.blocks[0].is_pair());
                }
            }
        }
    }

    #[test]
    fn every_rotation_is_orthogonal_and_signed() {
        for n in 2..=10 {
            for k in 0..=n {
                let plan = build_plan(dims(n, k)).unwrap();
                for l in plan.levels() {
                    for b in &l.blocks {
                        if let Some(r) = &b.coeffs {
                            check_rotation(r, 1e-12).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = PlannerConfig { budget: MemBudget::new(1000), ..Default::default() };
        assert!(matches!(build_plan_with(dims(10, 5), &cfg), Err(Error::Budget { .. })));
    }

    #[test]
    fn eigen2_matches_definition() {
        for m in [[[2.0, 0.5], [0.5, -1.0]], [[0.0, 3.0], [3.0, 0.0]], [[1.0, 1e-9], [1e-9, 1.0]]] {
            let (vals, vecs) = symmetric_eigen2(m);
            for (l, v) in vals.iter().zip(&vecs) {
                let mv = [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]];
                assert!((mv[0] - l * v[0]).abs() < 1e-12 && (mv[1] - l * v[1]).abs() < 1e-12);
            }
        }
    }
}
