//! Binomial coefficients, log-factorials and combinadic unranking.

/// Largest `n` for which every `C(n, k)` is tabulated exactly in a `u64`.
pub const MAX_TABLE_N: usize = 64;

/// `C(n, k)` as an exact integer, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

pub fn ln_factorial(k: u64) -> f64 {
    if k < 2 {
        return 0.0;
    }
    if k <= 256 {
        (2..=k).map(|i| (i as f64).ln()).sum()
    } else {
        statrs::function::gamma::ln_gamma(k as f64 + 1.0)
    }
}

pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Multinomial `n! / (a! b! c!)` as an exact integer, or `None` on overflow.
pub fn trinomial(a: u64, b: u64, c: u64) -> Option<u64> {
    let n = a + b + c;
    binomial(n, a)?.checked_mul(binomial(n - a, c)?)
}

/// Pascal triangle up to `n = 64` for fast unranking.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<u64>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        assert!(max_n <= MAX_TABLE_N);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1].saturating_add(rows[n - 1][k]);
            }
            rows.push(row);
        }
        Self { rows }
    }

    #[inline]
    pub fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.rows[n][k]
        }
    }

    /// The `rank`-th `k`-subset of the given `positions`, in colexicographic
    /// order, returned as a bitmask over the position values.
    pub fn unrank_subset(&self, positions: &[u32], k: usize, mut rank: u64) -> u64 {
        debug_assert!(rank < self.get(positions.len(), k));
        let mut mask = 0u64;
        let mut remaining = k;
        for idx in (0..positions.len()).rev() {
            if remaining == 0 {
                break;
            }
            let below = self.get(idx, remaining);
            if rank >= below {
                rank -= below;
                mask |= 1u64 << positions[idx];
                remaining -= 1;
            }
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(3, 4), Some(0));
        assert_eq!(binomial(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binomial(100, 50), None);
    }

    #[test]
    fn log_binomial_matches_exact() {
        for n in 0..40u64 {
            for k in 0..=n {
                let exact = binomial(n, k).unwrap() as f64;
                assert!((ln_binomial(n, k) - exact.ln()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn unranking_enumerates_every_subset_once() {
        let table = BinomialTable::new(10);
        let positions: Vec<u32> = vec![0, 2, 3, 5, 7, 9];
        for k in 0..=positions.len() {
            let total = table.get(positions.len(), k);
            let mut seen = std::collections::HashSet::new();
            for r in 0..total {
                let m = table.unrank_subset(&positions, k, r);
                assert_eq!(m.count_ones() as usize, k);
                let allowed: u64 = positions.iter().map(|p| 1u64 << p).sum();
                assert_eq!(m & !allowed, 0);
                assert!(seen.insert(m));
            }
        }
    }

    #[test]
    fn table_agrees_with_direct_binomial() {
        let t = BinomialTable::new(64);
        for n in [0usize, 1, 10, 33, 64] {
            for k in 0..=n {
                assert_eq!(Some(t.get(n, k)), binomial(n as u64, k as u64));
            }
        }
    }
}
