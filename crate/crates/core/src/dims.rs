use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};

/// Largest supported ground-set size. Keeps every binomial coefficient in `u64`.
pub const MAX_N: usize = 60;

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc as u64
}

/// `C(n, a) - C(n, a - 1)` with `C(n, -1) = 0`: the dimension of the
/// irreducible module of shape `(n - a, a)`.
pub fn irrep_dim(n: usize, a: usize) -> u64 {
    let lower = if a == 0 { 0 } else { binomial(n, a - 1) };
    binomial(n, a).saturating_sub(lower)
}

/// Size parameters of a Johnson graph `J(n, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemDims {
    n: usize,
    k: usize,
}

impl ProblemDims {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return input("n must be positive");
        }
        if n > MAX_N {
            return input(format!("n = {n} exceeds the supported maximum {MAX_N}"));
        }
        if k > n {
            return input(format!("k = {k} must satisfy 0 <= k <= n = {n}"));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `min(k, n - k)`; the components are indexed by `a = 0..=s`.
    pub fn s(&self) -> usize {
        self.k.min(self.n - self.k)
    }

    /// Number of k-subsets, `C(n, k)`.
    pub fn dim(&self) -> usize {
        binomial(self.n, self.k) as usize
    }

    /// Number of ones `r = k - ones(tail)` a tail of the given length and
    /// ones-count leaves to the head, or `None` when the tail cannot occur.
    pub fn head_ones(&self, tail_len: usize, tail_ones: usize) -> Option<usize> {
        let head_len = self.n.checked_sub(tail_len)?;
        let r = self.k.checked_sub(tail_ones)?;
        (r <= head_len).then_some(r)
    }
}

impl std::fmt::Display for ProblemDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "J({}, {})", self.n, self.k)
    }
}

/// Environment variable holding the dense-allocation cap in bytes.
pub const MEM_BUDGET_ENV: &str = "JFFT_MEM_BUDGET";

/// Cap on the size of dense allocations made by the planner, oracle and bench.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MemBudget {
    pub bytes: u64,
}

impl Default for MemBudget {
    fn default() -> Self {
        Self { bytes: 2 << 30 }
    }
}

impl MemBudget {
    pub fn new(bytes: u64) -> Self {
        Self { bytes }
    }

    /// Reads `JFFT_MEM_BUDGET`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MEM_BUDGET_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<u64>()
                .map(Self::new)
                .map_err(|_| Error::Input(format!("{MEM_BUDGET_ENV} must be a byte count, got {raw:?}"))),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check(&self, needed: u64) -> Result<()> {
        if needed > self.bytes {
            Err(Error::Budget { needed, budget: self.bytes })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(14, 7), 3432);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn dims_accessors() {
        let d = ProblemDims::new(6, 4).unwrap();
        assert_eq!(d.s(), 2);
        assert_eq!(d.dim(), 15);
        assert!(ProblemDims::new(3, 4).is_err());
        assert!(ProblemDims::new(0, 0).is_err());
    }

    #[test]
    fn irrep_dims_sum_to_dim() {
        for n in 1..=20 {
            for k in 0..=n {
                let d = ProblemDims::new(n, k).unwrap();
                let total: u64 = (0..=d.s()).map(|a| irrep_dim(n, a)).sum();
                assert_eq!(total, d.dim() as u64, "n={n} k={k}");
            }
        }
        assert_eq!(irrep_dim(4, 0), 1);
        assert_eq!(irrep_dim(4, 1), 3);
        assert_eq!(irrep_dim(4, 2), 2);
    }

    #[test]
    fn budget_check() {
        let b = MemBudget::new(100);
        assert!(b.check(100).is_ok());
        assert!(matches!(b.check(101), Err(Error::Budget { needed: 101, budget: 100 })));
    }
}
