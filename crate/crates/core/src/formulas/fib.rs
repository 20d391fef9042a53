use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;

/// Memoized Fibonacci numbers with `F(0) = 0`, `F(1) = F(2) = 1`.
///
/// Safe for concurrent lookups; extension takes the write lock.
#[derive(Debug)]
pub struct FibCache {
    memo: RwLock<Vec<BigUint>>,
}

impl Default for FibCache {
    fn default() -> Self {
        Self::new()
    }
}

impl FibCache {
    pub fn new() -> Self {
        FibCache {
            memo: RwLock::new(vec![BigUint::from(0u32), BigUint::from(1u32)]),
        }
    }

    pub fn get(&self, n: usize) -> BigUint {
        if let Some(v) = self.memo.read().expect("fib cache poisoned").get(n) {
            return v.clone();
        }
        let mut memo = self.memo.write().expect("fib cache poisoned");
        while memo.len() <= n {
            let k = memo.len();
            let next = &memo[k - 1] + &memo[k - 2];
            memo.push(next);
        }
        memo[n].clone()
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("fib cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Checks `F(k) = F(k-1) + F(k-2)` over everything cached so far.
    pub fn is_consistent(&self) -> bool {
        let memo = self.memo.read().expect("fib cache poisoned");
        memo.windows(3).all(|w| w[2] == &w[0] + &w[1])
    }
}

fn global() -> &'static FibCache {
    static CACHE: OnceLock<FibCache> = OnceLock::new();
    CACHE.get_or_init(FibCache::new)
}

/// `F(n)` from the shared cache.
pub fn fib(n: usize) -> BigUint {
    global().get(n)
}
