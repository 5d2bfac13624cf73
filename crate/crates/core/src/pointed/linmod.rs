//! Linear systems over `Z/M`, solved one prime-power factor at a time and glued by CRT.

use num_integer::Integer;

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

fn valuation(mut v: u64, p: u64) -> u32 {
    let mut e = 0;
    while v.is_multiple_of(p) {
        v /= p;
        e += 1;
    }
    e
}

/// Solves `A x ≡ b (mod p^k)` by full pivoting on minimal `p`-adic valuation.
/// Free variables are set to zero, which makes the solution canonical.
fn solve_prime_power(a: &[Vec<u64>], b: &[u64], ncols: usize, p: u64, k: u32) -> Option<Vec<u64>> {
    let pk = p.pow(k);
    let mut rows: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(r, &rhs)| {
            let mut row: Vec<u64> = r.iter().map(|v| v % pk).collect();
            row.push(rhs % pk);
            row
        })
        .collect();
    let nrows = rows.len();
    let mut pivots: Vec<(usize, u32)> = Vec::new();
    let mut used_col = vec![false; ncols];
    for t in 0..nrows.min(ncols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for (r, row) in rows.iter().enumerate().skip(t) {
            for c in (0..ncols).filter(|&c| !used_col[c]) {
                if row[c] != 0 {
                    let v = valuation(row[c], p);
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((r, c, v));
                        if v == 0 {
                            break;
                        }
                    }
                }
            }
            if best.is_some_and(|(_, _, v)| v == 0) {
                break;
            }
        }
        let Some((r, c, e)) = best else { break };
        rows.swap(t, r);
        let unit = rows[t][c] / p.pow(e);
        let inv = inverse_mod(unit % pk, pk);
        for v in rows[t].iter_mut() {
            *v = (*v as u128 * inv as u128 % pk as u128) as u64;
        }
        let pe = p.pow(e);
        let pivot_row = rows[t].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == t || row[c] == 0 {
                continue;
            }
            let factor = row[c] / pe;
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                let sub = (factor as u128 * pv as u128 % pk as u128) as u64;
                *v = (*v + pk - sub) % pk;
            }
        }
        used_col[c] = true;
        pivots.push((c, e));
    }
    let rank = pivots.len();
    if rows[rank..].iter().any(|row| row[ncols] != 0) {
        return None;
    }
    let mut x = vec![0u64; ncols];
    for (t, &(c, e)) in pivots.iter().enumerate() {
        let rhs = rows[t][ncols];
        let pe = p.pow(e);
        if !rhs.is_multiple_of(pe) {
            return None;
        }
        x[c] = rhs / pe;
    }
    Some(x)
}

/// A solution of `A x ≡ b (mod modulus)` with entries in `[0, modulus)`, if one exists.
pub fn solve_mod(a: &[Vec<u64>], b: &[u64], ncols: usize, modulus: u64) -> Option<Vec<u64>> {
    let mut x = vec![0u64; ncols];
    let mut acc = 1u64;
    for (p, k) in factor(modulus) {
        let pk = p.pow(k);
        let y = solve_prime_power(a, b, ncols, p, k)?;
        let inv = inverse_mod(acc % pk, pk);
        for (xi, yi) in x.iter_mut().zip(y) {
            let diff = (yi + pk - *xi % pk) % pk;
            let t = diff as u128 * inv as u128 % pk as u128;
            *xi += (acc as u128 * t) as u64;
        }
        acc *= pk;
    }
    Some(x)
}
