use std::f64::consts::PI;

use condensate::qscalars::{
    deligne_admissible_subgroup, even_braiding_scalar, even_twist_scalar, odd_j_sum,
    odd_theta_action, taft_braiding_scalar, taft_square_twist_is_balanced, PolyModule, SqrtBranch,
};
use condensate::Cyclotomic;
use num_complex::Complex64;

const TOL: f64 = 1e-8;

fn e(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn close(exact: &Cyclotomic, approx: Complex64) -> bool {
    (exact.numeric_eval(10).unwrap() - approx).norm() < TOL
}

fn qint(q: Complex64, n: u64) -> Complex64 {
    (0..n).map(|k| q.powi(n as i32 - 1 - 2 * k as i32)).sum()
}

fn qfact(q: Complex64, n: u64) -> Complex64 {
    (1..=n).map(|k| qint(q, k)).product()
}

/// `E, F ↦ 0`, `K ↦ -1`; powers with `0^0 = 1`.
fn psi_pow(gen: char, k: u64) -> Complex64 {
    match (gen, k) {
        (_, 0) => Complex64::new(1.0, 0.0),
        ('K', k) => Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0),
        _ => Complex64::new(0.0, 0.0),
    }
}

fn even_braiding_numeric(p: u64) -> Complex64 {
    let pf = p as f64;
    let q = e(PI / pf);
    let half = e(PI / (2.0 * pf));
    let mut total = Complex64::new(0.0, 0.0);
    for n in 0..p {
        let coeff = (q - q.inv()).powi(n as i32) / qfact(q, n);
        for s in 0..2 * p {
            for r in 0..2 * p {
                let (ni, si, ri) = (n as i32, s as i32, r as i32);
                let bracket = Complex64::new(1.0, 0.0)
                    + q.powi(ri)
                    + q.powi(-(ni + si))
                    + half * q.powi(ri - ni - si);
                let term = coeff * q.powi(ni * (ni - 1) / 2 - 2 * si * ri) * bracket;
                total +=
                    term * psi_pow('K', s) * psi_pow('E', n) * psi_pow('K', r) * psi_pow('F', n);
            }
        }
    }
    total / (4.0 * pf)
}

fn even_twist_numeric(p: u64) -> Complex64 {
    let pf = p as f64;
    let q = e(PI / pf);
    let iota = Complex64::new(0.0, 1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..p {
        let coeff = (q - q.inv()).powi(n as i32) / qfact(q, n);
        for j in 0..2 * p {
            let (nf, jf) = (n as f64, j as f64);
            let exponent = nf * (jf - 0.5) + (jf + pf + 1.0).powi(2) / 2.0;
            let phase = e(PI / pf * exponent);
            sum += coeff * phase * psi_pow('F', n) * psi_pow('E', n) * psi_pow('K', j);
        }
    }
    (Complex64::new(1.0, 0.0) - iota) / (2.0 * pf.sqrt()) * sum
}

#[test]
fn even_scalars_agree_with_floating_point() {
    for p in 2..=12u64 {
        let iota_p = e(PI / 2.0 * p as f64);
        let b = even_braiding_scalar(p).unwrap();
        assert!(close(&b, even_braiding_numeric(p)), "braiding p = {p}");
        assert!(close(&b, iota_p));
        let t = even_twist_scalar(p).unwrap();
        assert!(close(&t, even_twist_numeric(p)), "twist p = {p}");
        assert!(close(&t, -iota_p));
    }
}

#[test]
fn taft_scalars_agree_with_floating_point() {
    for n in 2..=12u64 {
        let q = e(2.0 * PI / n as f64);
        for s in 0..n {
            // only the a^0 d^0 terms survive on V(1,s)
            let mut total = Complex64::new(0.0, 0.0);
            for t in 0..n {
                for m in 0..n {
                    let (ti, mi, si) = (t as i32, m as i32, s as i32);
                    total += q.powi(-ti * mi) * q.powi(si * ti) * q.powi(-si * mi);
                }
            }
            total /= n as f64;
            let exact = taft_braiding_scalar(n, s).unwrap();
            assert!(close(&exact, total), "n = {n}, s = {s}");
        }
    }
}

type CMat = Vec<Vec<Complex64>>;

fn cmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// The ribbon element on `k[x]/(x^N)` in floating point, built from
/// `K·x^i = q^{-2i}x^i`, `E·x^i = [i]' x^{i-1}`, `F·x^i = -q[i]'' x^{i+1}`.
fn odd_theta_numeric(n: u64) -> CMat {
    let h = (n - 1) / 2;
    let size = n as usize;
    let q = e(2.0 * PI / n as f64);
    let half = q.powi(h as i32 + 1);
    let iota = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut k = vec![vec![zero; size]; size];
    let mut em = vec![vec![zero; size]; size];
    let mut fm = vec![vec![zero; size]; size];
    for i in 0..size {
        k[i][i] = q.powi(-2 * i as i32);
        if i > 0 {
            em[i - 1][i] = (0..i).map(|j| q.powi(-2 * j as i32)).sum();
        }
        if i + 1 < size {
            let d: Complex64 = (0..i).map(|j| q.powi(2 * j as i32)).sum();
            fm[i + 1][i] = -q * d;
        }
    }
    let gauss: Complex64 = (0..n).map(|r| q.powi((h * r * r) as i32)).sum();
    let sqrt_n = iota.powi(-(h as i32)) * gauss;
    let j_sum: Complex64 = (0..n as i32).map(|j| half.powi((j - 1) * (j - 1))).sum();
    let beta = (-iota).powi(h as i32) / (sqrt_n * j_sum);
    let mut theta = vec![vec![zero; size]; size];
    let mut fe = vec![vec![zero; size]; size];
    for (i, row) in fe.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    let mut ep = fe.clone();
    let mut fp = fe.clone();
    for m in 0..n {
        if m > 0 {
            ep = cmul(&em, &ep);
            fp = cmul(&fm, &fp);
            fe = cmul(&fp, &ep);
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = (q - q.inv()).powi(m as i32) / qfact(q, m) * sign;
        for j in 0..n {
            let (mi, ji) = (m as i32, j as i32);
            let phase = half.powi(-mi + 2 * mi * ji + (ji + 1) * (ji + 1));
            let mut kj = vec![vec![zero; size]; size];
            for i in 0..size {
                kj[i][i] = k[i][i].powi(ji);
            }
            let term = cmul(&fe, &kj);
            for a in 0..size {
                for b in 0..size {
                    theta[a][b] += coeff * phase * term[a][b];
                }
            }
        }
    }
    for row in theta.iter_mut() {
        for v in row.iter_mut() {
            *v *= beta * gauss;
        }
    }
    theta
}

#[test]
fn odd_theta_agrees_with_floating_point() {
    for n in [3u64, 5, 7, 9, 11] {
        let exact = odd_theta_action(n).unwrap();
        let approx = odd_theta_numeric(n);
        for i in 0..n as usize {
            assert!(close(&exact[i], approx[i][i]), "N = {n}, x^{i}");
            for j in (0..n as usize).filter(|&j| j != i) {
                assert!(approx[i][j].norm() < TOL);
            }
        }
    }
}

#[test]
fn central_j_sum_differs_from_reduced_form() {
    // N = 3 is the only case where the central branch also gives 1 + 2q^{1/2}
    for n in [5u64, 7, 9] {
        let half = condensate::qscalars::odd_half_power(n, SqrtBranch::Central).unwrap();
        let reduced = &Cyclotomic::one(4 * n) + &half.scale(2);
        assert_ne!(odd_j_sum(n, SqrtBranch::Central).unwrap(), reduced);
    }
}

#[test]
fn unit_f_normalization_violates_commutator() {
    for n in [3u64, 5, 7] {
        let m = PolyModule::with_f_scale(n, Cyclotomic::one(1)).unwrap();
        assert!(!m.check_relations().unwrap().ef_commutator);
    }
}

#[test]
fn taft_square_twist_is_unbalanced_for_odd_n() {
    for n in [3u64, 5, 9] {
        assert!(!taft_square_twist_is_balanced(n).unwrap());
    }
}

#[test]
fn deligne_sets_satisfy_definition() {
    for p_list in [vec![2u64, 2], vec![4, 4], vec![2, 2, 2, 2], vec![3, 5]] {
        let set = deligne_admissible_subgroup(&p_list).unwrap();
        let expected: Vec<Vec<u64>> = (0..1u64 << p_list.len())
            .map(|bits| {
                (0..p_list.len())
                    .rev()
                    .map(|k| (bits >> k) & 1)
                    .collect::<Vec<u64>>()
            })
            .filter(|i| {
                let parity: u64 = i.iter().sum();
                let weighted: u64 = i.iter().zip(&p_list).map(|(a, p)| a * p).sum();
                parity.is_multiple_of(2) && weighted.is_multiple_of(4)
            })
            .collect();
        assert_eq!(set.elements, expected, "{p_list:?}");
    }
}
