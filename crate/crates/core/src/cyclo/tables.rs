//! Per-order reduction data for `Q(ζ_n)`, built once and shared.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Reduction data for the power basis `1, ζ, …, ζ^{φ(n)-1}` of `Q(ζ_n)`.
#[derive(Debug)]
pub(crate) struct FieldTables {
    pub(crate) order: u64,
    pub(crate) phi: usize,
    /// Row `k` holds the coordinates of `ζ^k` for `0 <= k < n`.
    pub(crate) powers: Vec<Vec<i64>>,
}

impl FieldTables {
    /// Coordinates of `ζ^k` for any integer `k`.
    pub(crate) fn power(&self, k: i64) -> &[i64] {
        let n = self.order as i64;
        &self.powers[k.rem_euclid(n) as usize]
    }
}

static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldTables>>>> = OnceLock::new();

pub(crate) fn tables(n: u64) -> Arc<FieldTables> {
    debug_assert!(n >= 1);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("field table cache poisoned").get(&n) {
        return Arc::clone(t);
    }
    // Built outside the lock; a racing thread may build the same table, which is harmless.
    let built = Arc::new(build(n));
    let mut guard = cache.lock().expect("field table cache poisoned");
    Arc::clone(guard.entry(n).or_insert(built))
}

fn build(n: u64) -> FieldTables {
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by ζ: shift up, fold the overflow back with Φ_n
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    FieldTables {
        order: n,
        phi,
        powers,
    }
}

/// `Φ_n`, by exact division of `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub(crate) fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut memo: HashMap<u64, Vec<i64>> = HashMap::new();
    cyclotomic_rec(n, &mut memo)
}

fn cyclotomic_rec(n: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_rec(d, memo);
            num = exact_div(&num, &divisor);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Division by a monic integer polynomial with zero remainder.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}
