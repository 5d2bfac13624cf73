#![allow(dead_code)]

use condensate::abelian::FinAbGroup;
use condensate::metric::natural_modulus;
use condensate::MetricGroup;
use num_integer::Integer;

/// `q(x) = Σ_i a_i x_i² over ζ_{2n_i}` plus `Σ_{i<j} c_ij x_i x_j over ζ_{gcd(n_i,n_j)}`,
/// or `None` when the table is not a quadratic form.
pub fn diagonal_form(orders: &[u64], a: &[u64], c: &[u64]) -> Option<MetricGroup> {
    let group = FinAbGroup::new(orders.to_vec()).ok()?;
    let m = natural_modulus(&group);
    let r = orders.len();
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            pairs.push((i, j));
        }
    }
    let f = |x: &[u64]| {
        let mut e = 0u64;
        for i in 0..r {
            e += a[i] * (m / (2 * orders[i])) * x[i] * x[i];
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let g = orders[i].gcd(&orders[j]);
            e += c.get(k).copied().unwrap_or(0) * (m / g) * x[i] * x[j];
        }
        (e % m) as i64
    };
    MetricGroup::from_fn(group, m, f).ok()
}

/// Deterministic corpus of quadratic forms on groups of order at most 64.
pub fn corpus() -> Vec<MetricGroup> {
    let specs: &[(&[u64], &[u64], &[u64])] = &[
        (&[2], &[1], &[]),
        (&[2], &[3], &[]),
        (&[3], &[2], &[]),
        (&[4], &[1], &[]),
        (&[4], &[2], &[]),
        (&[5], &[2], &[]),
        (&[7], &[4], &[]),
        (&[8], &[3], &[]),
        (&[9], &[2], &[]),
        (&[16], &[1], &[]),
        (&[2, 2], &[1, 1], &[]),
        (&[2, 2], &[1, 3], &[]),
        (&[2, 2], &[0, 0], &[1]),
        (&[2, 2], &[2, 2], &[1]),
        (&[2, 4], &[1, 1], &[]),
        (&[2, 4], &[2, 1], &[1]),
        (&[3, 3], &[2, 2], &[]),
        (&[3, 3], &[2, 4], &[]),
        (&[4, 4], &[1, 3], &[]),
        (&[4, 4], &[0, 0], &[1]),
        (&[4, 4], &[2, 2], &[1]),
        (&[2, 8], &[1, 1], &[]),
        (&[3, 6], &[2, 1], &[]),
        (&[5, 5], &[2, 8], &[]),
        (&[6, 6], &[1, 5], &[]),
        (&[2, 2, 2], &[1, 1, 1], &[]),
        (&[2, 2, 2], &[1, 3, 1], &[0, 0, 0]),
        (&[2, 2, 4], &[1, 3, 1], &[]),
        (&[2, 2, 2, 2], &[1, 1, 1, 1], &[]),
        (&[2, 2, 2, 2], &[0, 0, 0, 0], &[1, 0, 0, 0, 0, 1]),
        (&[8, 8], &[1, 7], &[]),
        (&[4], &[0], &[]),
        (&[2, 4], &[0, 2], &[]),
    ];
    specs
        .iter()
        .map(|(o, a, c)| {
            diagonal_form(o, a, c)
                .unwrap_or_else(|| panic!("corpus entry {o:?} {a:?} {c:?} is invalid"))
        })
        .collect()
}
