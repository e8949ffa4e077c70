//! Labels of the intermediate bases `B_0, ..., B_n` and their canonical order.
//!
//! An element of `B_i` is named by a standard tableau with `i` boxes and a
//! tail word of length `n - i`. Within a level, labels are sorted by tail and
//! then by row sequence, both lexicographic with `1 < 2`.

use std::collections::HashMap;
use std::fmt;

use crate::dims::ProblemDims;
use crate::error::{input, Error, Result};
use crate::tableau::{enumerate_tableaux_upto, Tableau};
use crate::word::{enumerate_tails, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub tab: Tableau,
    pub tail: Word,
}

impl BasisLabel {
    pub fn new(tab: Tableau, tail: Word) -> Self {
        Self { tab, tail }
    }

    pub fn level(&self) -> usize {
        self.tab.len()
    }

    pub fn is_admissible(&self, dims: ProblemDims) -> bool {
        let i = self.level();
        if i + self.tail.len() != dims.n() {
            return false;
        }
        match dims.head_ones(self.tail.len(), self.tail.ones()) {
            Some(r) => self.tab.shape().q <= r.min(i - r),
            None => false,
        }
    }

    /// Frame of this label viewed as a source of the factor into the next level.
    pub fn source_frame(&self) -> Option<Frame> {
        self.tail.drop_first().map(|tail| Frame { tail, tab: self.tab.clone() })
    }

    /// Frame of this label viewed as a destination of the factor from the previous level.
    pub fn dest_frame(&self) -> Option<Frame> {
        self.tab.parent().map(|tab| Frame { tail: self.tail.clone(), tab })
    }
}

impl PartialOrd for BasisLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.tail, &self.tab).cmp(&(&other.tail, &other.tab))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tab, self.tail)
    }
}

/// The shared subspace of a factor block: a tableau with `i - 1` boxes and a
/// tail of length `n - i`. Field order gives the canonical block order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frame {
    pub tail: Word,
    pub tab: Tableau,
}

/// Whether `prev` (level `i - 1`) and `next` (level `i`) lie in one common
/// chain-and-tail subspace, i.e. share a frame.
pub fn related(prev: &BasisLabel, next: &BasisLabel) -> bool {
    next.level() == prev.level() + 1
        && match (prev.source_frame(), next.dest_frame()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
}

/// Canonically ordered labels of one intermediate basis with a reverse lookup.
#[derive(Clone, Debug)]
pub struct LevelIndex {
    level: usize,
    labels: Vec<BasisLabel>,
    lookup: HashMap<BasisLabel, usize>,
}

impl LevelIndex {
    pub fn new(dims: ProblemDims, level: usize) -> Result<Self> {
        let mut labels = Vec::with_capacity(dims.dim());
        for tail in enumerate_tails(dims, level)? {
            let r = dims
                .head_ones(tail.len(), tail.ones())
                .ok_or_else(|| Error::Internal(format!("tail {tail} outside X_{level}")))?;
            for tab in enumerate_tableaux_upto(level, r.min(level - r)) {
                labels.push(BasisLabel { tab, tail: tail.clone() });
            }
        }
        let lookup = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Ok(Self { level, labels, lookup })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, label: &BasisLabel) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    pub fn position(&self, label: &BasisLabel) -> Result<usize> {
        self.get(label)
            .ok_or_else(|| Error::Input(format!("label {label} is not admissible at level {}", self.level)))
    }
}

/// Position of `label` in the canonical order of `B_level`.
///
/// Builds the whole level index; callers that look up many labels should hold
/// a [`LevelIndex`] instead.
pub fn label_index(level: usize, label: &BasisLabel, dims: ProblemDims) -> Result<usize> {
    if label.level() != level {
        return input(format!("label {label} has {} boxes, expected {level}", label.level()));
    }
    LevelIndex::new(dims, level)?.position(label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::irrep_dim;
    use crate::tableau::TwoRowShape;
    use crate::word::enumerate_points;

    fn dims(n: usize, k: usize) -> ProblemDims {
        ProblemDims::new(n, k).unwrap()
    }

    fn label(tab: &str, tail: &str) -> BasisLabel {
        BasisLabel::new(tab.parse().unwrap(), tail.parse().unwrap())
    }

    #[test]
    fn level_zero_is_point_order() {
        let d = dims(6, 3);
        let idx = LevelIndex::new(d, 0).unwrap();
        let tails: Vec<Word> = idx.labels().iter().map(|l| l.tail.clone()).collect();
        assert_eq!(tails, enumerate_points(d));
    }

    #[test]
    fn top_level_of_j42() {
        let idx = LevelIndex::new(dims(4, 2), 4).unwrap();
        let names: Vec<String> = idx.labels().iter().map(|l| l.tab.to_string()).collect();
        assert_eq!(names, ["1111", "1112", "1121", "1122", "1211", "1212"]);
        let mut by_shape = [0; 3];
        for l in idx.labels() {
            by_shape[l.tab.shape().q] += 1;
        }
        assert_eq!(by_shape, [1, 3, 2]);
    }

    #[test]
    fn every_level_has_dim_labels() {
        for n in 1..=10 {
            for k in 0..=n {
                let d = dims(n, k);
                for level in 0..=n {
                    let idx = LevelIndex::new(d, level).unwrap();
                    assert_eq!(idx.len(), d.dim(), "n={n} k={k} level={level}");
                    assert!(idx.labels().iter().all(|l| l.is_admissible(d)));
                    assert!(idx.labels().windows(2).all(|w| w[0] < w[1]));
                }
                let syt: u64 = (0..=d.s()).map(|a| TwoRowShape::new(n - a, a).unwrap().syt_count()).sum();
                assert_eq!(syt, d.dim() as u64);
                assert_eq!((0..=d.s()).map(|a| irrep_dim(n, a)).sum::<u64>(), d.dim() as u64);
            }
        }
    }

    #[test]
    fn label_index_lookups() {
        let d = dims(4, 2);
        assert_eq!(label_index(4, &label("1111", ""), d).unwrap(), 0);
        assert_eq!(label_index(4, &label("1212", ""), d).unwrap(), 5);
        assert_eq!(label_index(1, &label("1", "112"), d).unwrap(), 0);
        // shape (1,1) needs r >= 1 and i - r >= 1; tail "11" leaves r = 0
        assert!(label_index(2, &label("12", "11"), d).is_err());
        assert!(label_index(3, &label("12", "11"), d).is_err());
    }

    #[test]
    fn admissibility() {
        let d = dims(4, 2);
        assert!(label("12", "12").is_admissible(d));
        assert!(!label("12", "11").is_admissible(d));
        assert!(!label("12", "1").is_admissible(d));
        assert!(!label("1", "222").is_admissible(d));
    }

    #[test]
    fn relatedness() {
        assert!(related(&label("1", "112"), &label("12", "12")));
        assert!(related(&label("1", "212"), &label("11", "12")));
        assert!(!related(&label("1", "112"), &label("12", "21")));
        assert!(!related(&label("11", "12"), &label("12", "2")));
        assert!(!related(&label("1", "112"), &label("1", "112")));
    }
}
