use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

/// Default number of cached factorials.
pub const DEFAULT_CACHE_BOUND: usize = 200;

/// Arbitrary-precision factorials, cached up to a bound and computed on demand past it.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    table: Vec<BigInt>,
}

impl FactorialTable {
    pub fn with_bound(bound: usize) -> Self {
        let mut table = Vec::with_capacity(bound + 1);
        table.push(BigInt::one());
        for k in 1..=bound {
            let next = &table[k - 1] * BigInt::from(k);
            table.push(next);
        }
        FactorialTable { table }
    }

    pub fn bound(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, n: usize) -> BigInt {
        if let Some(v) = self.table.get(n) {
            return v.clone();
        }
        let mut acc = self.table.last().cloned().unwrap_or_else(BigInt::one);
        for k in self.table.len()..=n {
            acc *= BigInt::from(k);
        }
        acc
    }
}

fn shared() -> &'static FactorialTable {
    static TABLE: OnceLock<FactorialTable> = OnceLock::new();
    TABLE.get_or_init(|| FactorialTable::with_bound(DEFAULT_CACHE_BOUND))
}

pub fn factorial(n: usize) -> BigInt {
    shared().get(n)
}

/// Binomial coefficient C(n, k); zero outside 0 ≤ k ≤ n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn binomial_f64(n: usize, k: usize) -> f64 {
    use num_traits::ToPrimitive;
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}
