//! Closed-form bounds and order thresholds, all in exact integer arithmetic.

use crate::error::{Error, Result};

/// Sorted multiset of positive budgets `a_1 ≤ … ≤ a_k`.
///
/// A budget `a` stands for a ball of radius `a − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BudgetSet {
    values: Vec<usize>,
    distinct: bool,
}

impl BudgetSet {
    pub fn new(mut values: Vec<usize>) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::NonPositiveBudget);
        }
        values.sort_unstable();
        let distinct = values.windows(2).all(|w| w[0] < w[1]);
        Ok(Self { values, distinct })
    }

    /// `{1, 2, …, k}`.
    pub fn first_k(k: usize) -> Self {
        Self { values: (1..=k).collect(), distinct: true }
    }

    /// `k` copies of `a`.
    pub fn repeated(a: usize, k: usize) -> Result<Self> {
        Self::new(vec![a; k])
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_distinct(&self) -> bool {
        self.distinct
    }

    pub fn max(&self) -> Option<usize> {
        self.values.last().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.values.first().copied()
    }

    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }

    /// Copy with one occurrence of `value` removed.
    pub fn without(&self, value: usize) -> Self {
        let mut values = self.values.clone();
        if let Ok(i) = values.binary_search(&value) {
            values.remove(i);
        }
        let distinct = values.windows(2).all(|w| w[0] < w[1]);
        Self { values, distinct }
    }
}

/// `⌈(−3 + √(24n + 33)) / 4⌉`: the smallest `k` with `(4k + 3)² ≥ 24n + 33`.
pub fn burning_upper_bound(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let m = 24 * n as u128 + 33;
    let root = m.isqrt();
    let mut k = root.saturating_sub(3) / 4;
    while (4 * k + 3) * (4 * k + 3) < m {
        k += 1;
    }
    Ok(k as u64)
}

/// Smallest `k` with `(k² + 3k − 2) / 2 ≥ n`, which is `⌈(−3 + √(8n + 17)) / 2⌉`.
pub fn simple_upper_bound(n: u64) -> u64 {
    let threshold = |k: u64| (k * k + 3 * k - 2) / 2;
    let mut k = 1;
    while threshold(k) < n {
        k += 1;
    }
    k
}

/// `⌊(k² − 3k + 2) / 6⌋`, the extra order distinct budgets buy over the multiset threshold.
pub fn distinct_bonus(k: u64) -> u64 {
    debug_assert!(k >= 1);
    (k * k + 2 - 3 * k) / 6
}

/// Largest tree order guaranteed coverable by the multiset `a`: `Σa + max(a) − 1`.
pub fn multiset_threshold(a: &BudgetSet) -> Result<usize> {
    let max = a.max().ok_or(Error::EmptyBudgets)?;
    Ok(a.sum() + max - 1)
}

/// Largest tree order guaranteed coverable by strictly increasing budgets:
/// `Σa + max(a) − 1 + distinct_bonus(k)`.
pub fn distinct_threshold(a: &BudgetSet) -> Result<usize> {
    if !a.is_distinct() {
        return Err(Error::BudgetsNotDistinct);
    }
    Ok(multiset_threshold(a)? + distinct_bonus(a.len() as u64) as usize)
}

/// `⌊(2k² + 3k − 2) / 3⌋`: every tree of at most this order burns in `k` rounds.
pub fn capacity(k: u64) -> u64 {
    debug_assert!(k >= 1);
    (2 * k * k + 3 * k - 2) / 3
}

/// Smallest `k` whose [`capacity`] reaches `n`.
pub fn capacity_rounds(n: u64) -> u64 {
    let mut k = 1;
    while capacity(k) < n {
        k += 1;
    }
    k
}

/// For distinct budgets `a_1 < … < a_m` (with `m = k − 1`), the smallest index `i`
/// such that `2j ≤ a_i ≤ a_m − j` where `j = ⌊m / 3⌋`. Such an index always exists.
pub fn select_middle_budget(values: &[usize]) -> usize {
    let last = *values.last().expect("at least one budget");
    let j = values.len() / 3;
    values
        .iter()
        .position(|&a| 2 * j <= a && a + j <= last)
        .unwrap_or_else(|| panic!("no middle budget in distinct set {values:?}"))
}
