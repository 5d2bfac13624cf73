//! The module algebra `A = k[x]/(x^N)` over `u_q(sl_2)` at `q = e^{2πι/N}`, `N = 2h+1`,
//! worked in `Q(ζ_{4N})` with `q = ζ_{4N}^4` and `ι = ζ_{4N}^N`.
//!
//! The action is `K·x^i = q^{-2i} x^i`, `E·x^i = c_i x^{i-1}` and `F·x^i = d_i x^{i+1}`,
//! where `c_i = Σ_{k<i} q^{-2k}` and `d_i = λ + q² d_{i-1}`. These follow from
//! `E·x = 1`, `F·x = λx²` and the coproducts `Δ(E) = E⊗K + 1⊗E`,
//! `Δ(F) = F⊗1 + K^{-1}⊗F`. The relation `EF - FE = (K - K^{-1})/(q - q^{-1})` on `x`
//! forces `λ = -q`.

use serde::Serialize;

use super::{
    is_zero_matrix, mat_add, mat_identity, mat_mul, mat_pow, mat_scale, mat_sub, mat_zero, power,
    qfactorial, qint_symmetric, zeta, Matrix,
};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

/// Largest `N` accepted by the matrix computations.
pub const MAX_ODD_N: u64 = 15;

/// Choice of `q^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SqrtBranch {
    /// `q^{1/2} = e^{πι/N} = ζ_{4N}^2`.
    Principal,
    /// `q^{1/2} = q^{h+1}`, the square root lying in the group generated by `q`.
    Central,
}

fn check_n(n: u64) -> Result<u64> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "N must be odd and at least 3, got {n}"
        )));
    }
    if n > MAX_ODD_N {
        return Err(Error::TooLarge {
            what: "N",
            size: n as usize,
            bound: MAX_ODD_N as usize,
        });
    }
    Ok((n - 1) / 2)
}

/// Exponent of `q^{1/2}` over `ζ_{4N}`.
fn half_exponent(n: u64, branch: SqrtBranch) -> i64 {
    match branch {
        SqrtBranch::Principal => 2,
        SqrtBranch::Central => 4 * ((n as i64 - 1) / 2 + 1),
    }
}

pub fn odd_half_power(n: u64, branch: SqrtBranch) -> Result<Cyclotomic> {
    check_n(n)?;
    Ok(zeta(4 * n, half_exponent(n, branch)))
}

/// The literal sum `Σ_{j<N} q^{(j-1)²/2}` in the given branch.
pub fn odd_j_sum(n: u64, branch: SqrtBranch) -> Result<Cyclotomic> {
    check_n(n)?;
    let half = half_exponent(n, branch);
    let mut acc = Cyclotomic::zero(4 * n);
    for j in 0..n as i64 {
        acc = &acc + &zeta(4 * n, half * (j - 1) * (j - 1));
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub k_order: bool,
    pub e_nilpotent: bool,
    pub f_nilpotent: bool,
    pub ke: bool,
    pub kf: bool,
    pub ef_commutator: bool,
    pub module_algebra: bool,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.k_order
            && self.e_nilpotent
            && self.f_nilpotent
            && self.ke
            && self.kf
            && self.ef_commutator
            && self.module_algebra
    }
}

/// The action of `K`, `E`, `F` on the basis `1, x, …, x^{N-1}`; column `i` is the image of `x^i`.
#[derive(Debug, Clone)]
pub struct PolyModule {
    n: u64,
    q: Cyclotomic,
    c: Vec<Cyclotomic>,
    d: Vec<Cyclotomic>,
    k_diag: Vec<Cyclotomic>,
    pub k: Matrix,
    pub e: Matrix,
    pub f: Matrix,
}

impl PolyModule {
    /// The action with `F·x = -q x²`.
    pub fn new(n: u64) -> Result<Self> {
        check_n(n)?;
        let q = zeta(4 * n, 4);
        Self::with_f_scale(n, -q)
    }

    /// The action with `F·x = λ x²`.
    pub fn with_f_scale(n: u64, lambda: Cyclotomic) -> Result<Self> {
        check_n(n)?;
        let order = 4 * n;
        let lambda = lambda.embed(order)?;
        let q = zeta(order, 4);
        let q2 = q.pow(2)?;
        let q_2 = q.pow(-2)?;
        let size = n as usize;
        let mut c = vec![Cyclotomic::zero(order); size + 1];
        let mut d = vec![Cyclotomic::zero(order); size];
        for i in 1..=size {
            c[i] = &c[i - 1] + &q_2.pow(i as i64 - 1)?;
        }
        for i in 1..size {
            d[i] = &lambda + &(&q2 * &d[i - 1]);
        }
        let k_diag: Vec<Cyclotomic> = (0..size)
            .map(|i| q_2.pow(i as i64))
            .collect::<Result<_>>()?;
        let mut k = mat_zero(size, order);
        let mut e = mat_zero(size, order);
        let mut f = mat_zero(size, order);
        for i in 0..size {
            k[i][i] = k_diag[i].clone();
            if i > 0 {
                e[i - 1][i] = c[i].clone();
            }
            if i + 1 < size {
                f[i + 1][i] = d[i].clone();
            }
        }
        Ok(PolyModule {
            n,
            q,
            c,
            d,
            k_diag,
            k,
            e,
            f,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn check_relations(&self) -> Result<RelationReport> {
        let size = self.n as usize;
        let order = 4 * self.n;
        let id = mat_identity(size, order);
        let q2 = self.q.pow(2)?;
        let k_inv: Matrix = {
            let mut m = mat_zero(size, order);
            for i in 0..size {
                m[i][i] = self.k_diag[i].inverse()?;
            }
            m
        };
        let ke = mat_mul(&self.k, &self.e) == mat_scale(&mat_mul(&self.e, &self.k), &q2);
        let kf = mat_mul(&self.k, &self.f) == mat_scale(&mat_mul(&self.f, &self.k), &q2.inverse()?);
        let commutator = mat_sub(&mat_mul(&self.e, &self.f), &mat_mul(&self.f, &self.e));
        let denom = (&self.q - &self.q.inverse()?).inverse()?;
        let rhs = mat_scale(&mat_sub(&self.k, &k_inv), &denom);
        Ok(RelationReport {
            k_order: mat_pow(&self.k, self.n) == id,
            e_nilpotent: is_zero_matrix(&mat_pow(&self.e, self.n)),
            f_nilpotent: is_zero_matrix(&mat_pow(&self.f, self.n)),
            ke,
            kf,
            ef_commutator: commutator == rhs,
            module_algebra: self.check_module_algebra()?,
        })
    }

    /// `g·(x^i x^j) = Σ (g_(1)·x^i)(g_(2)·x^j)` for `g = K, E, F` and all pairs `i, j`,
    /// with `x^m = 0` for `m ≥ N`.
    fn check_module_algebra(&self) -> Result<bool> {
        let size = self.n as usize;
        let order = 4 * self.n;
        let zero = Cyclotomic::zero(order);
        for i in 0..size {
            for j in 0..size {
                let s = i + j;
                // K: q^{-2(i+j)} = q^{-2i} q^{-2j}
                if s < size && self.k_diag[s] != &self.k_diag[i] * &self.k_diag[j] {
                    return Ok(false);
                }
                // E lowers degree by one: compare coefficients of x^{i+j-1}.
                if s >= 1 && s - 1 < size {
                    let lhs = if s < size {
                        self.c[s].clone()
                    } else {
                        zero.clone()
                    };
                    let rhs = &(&self.c[i] * &self.k_diag[j]) + &self.c[j];
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
                // F raises degree by one: compare coefficients of x^{i+j+1}.
                if s + 1 < size {
                    let k_inv_i = self.k_diag[i].inverse()?;
                    let rhs = &self.d[i] + &(&k_inv_i * &self.d[j]);
                    if self.d[s] != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// The ribbon element
/// `β (Σ_r q^{hr²}) Σ_{m,j<N} (q-q^{-1})^m/[m]! (-1)^m q^{-m/2+mj+(j+1)²/2} F^mE^mK^j`
/// as a matrix on `A`, with `β = (-ι)^h / (√N · J)`, `√N = ι^{-h} Σ_r q^{hr²}` and
/// `J = Σ_j q^{(j-1)²/2}` taken in the same branch.
pub fn odd_theta_matrix(module: &PolyModule, branch: SqrtBranch) -> Result<Matrix> {
    let n = module.n;
    let h = check_n(n)? as i64;
    let order = 4 * n;
    let ni = n as i64;
    let size = n as usize;
    let q = &module.q;
    let half = half_exponent(n, branch);
    let iota = zeta(order, ni);

    let mut gauss = Cyclotomic::zero(order);
    for r in 0..ni {
        gauss = &gauss + &zeta(order, 4 * h * r * r);
    }
    let sqrt_n = &iota.pow(-h)? * &gauss;
    if &sqrt_n * &sqrt_n != Cyclotomic::from_integer(order, ni) {
        return Err(Error::AssertionFailed(format!(
            "ι^-h Σ q^(hr²) does not square to {n}"
        )));
    }
    let j_sum = odd_j_sum(n, branch)?;
    let beta = &(-iota.clone()).pow(h)? * &(&sqrt_n * &j_sum).inverse()?;
    let prefactor = &beta * &gauss;

    let diff = q - &q.inverse()?;
    let mut theta = mat_zero(size, order);
    let mut fe = mat_identity(size, order);
    let mut e_pow = mat_identity(size, order);
    let mut f_pow = mat_identity(size, order);
    for m in 0..n {
        if m > 0 {
            e_pow = mat_mul(&module.e, &e_pow);
            f_pow = mat_mul(&module.f, &f_pow);
            fe = mat_mul(&f_pow, &e_pow);
        }
        let mi = m as i64;
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let coeff = (&power(&diff, m)? * &qfactorial(q, m, qint_symmetric)?.inverse()?).scale(sign);
        for j in 0..ni {
            let exponent = half * (-mi + 2 * mi * j + (j + 1) * (j + 1));
            let term = &coeff * &zeta(order, exponent);
            let kj = mat_pow(&module.k, j as u64);
            theta = mat_add(&theta, &mat_scale(&mat_mul(&fe, &kj), &term));
        }
    }
    Ok(mat_scale(&theta, &prefactor))
}

/// The scalars by which the ribbon element acts on `1, x, …, x^{N-1}` (central branch).
/// Asserts that all module relations hold, that the element commutes with `K, E, F`
/// and that it acts diagonally by `1`.
pub fn odd_theta_action(n: u64) -> Result<Vec<Cyclotomic>> {
    let module = PolyModule::new(n)?;
    let report = module.check_relations()?;
    if !report.all_pass() {
        return Err(Error::ModuleRelationViolation(format!("{report:?}")));
    }
    let theta = odd_theta_matrix(&module, SqrtBranch::Central)?;
    for (name, g) in [("K", &module.k), ("E", &module.e), ("F", &module.f)] {
        if mat_mul(&theta, g) != mat_mul(g, &theta) {
            return Err(Error::AssertionFailed(format!(
                "θ does not commute with {name}"
            )));
        }
    }
    let size = n as usize;
    let mut diag = Vec::with_capacity(size);
    for (i, row) in theta.iter().enumerate() {
        if row.iter().enumerate().any(|(j, v)| j != i && !v.is_zero()) {
            return Err(Error::AssertionFailed(format!(
                "θ·x^{i} is not a multiple of x^{i}"
            )));
        }
        diag.push(row[i].clone());
    }
    if let Some(i) = diag.iter().position(|v| !v.is_one()) {
        return Err(Error::AssertionFailed(format!(
            "θ·x^{i} = {} x^{i}",
            diag[i]
        )));
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_with_rescaled_f() {
        for n in [3, 5, 7] {
            assert!(PolyModule::new(n)
                .unwrap()
                .check_relations()
                .unwrap()
                .all_pass());
        }
    }

    #[test]
    fn unscaled_f_breaks_commutator() {
        let m = PolyModule::with_f_scale(5, Cyclotomic::one(1)).unwrap();
        let r = m.check_relations().unwrap();
        assert!(!r.ef_commutator);
        assert!(r.ke && r.kf && r.module_algebra);
    }

    #[test]
    fn theta_is_identity() {
        for n in [3, 5, 7] {
            let diag = odd_theta_action(n).unwrap();
            assert_eq!(diag.len(), n as usize);
            assert!(diag.iter().all(Cyclotomic::is_one));
        }
    }

    #[test]
    fn principal_j_sum_reduces() {
        for n in [3, 5, 7, 9, 11] {
            let half = odd_half_power(n, SqrtBranch::Principal).unwrap();
            let expected = &Cyclotomic::one(4 * n) + &half.scale(2);
            assert_eq!(odd_j_sum(n, SqrtBranch::Principal).unwrap(), expected);
        }
    }

    #[test]
    fn central_branch_squares_to_q() {
        for n in [3, 5, 7] {
            let half = odd_half_power(n, SqrtBranch::Central).unwrap();
            assert_eq!(half.pow(2).unwrap(), zeta(4 * n, 4));
        }
    }

    #[test]
    fn principal_branch_is_not_central() {
        let m = PolyModule::new(5).unwrap();
        let theta = odd_theta_matrix(&m, SqrtBranch::Principal).unwrap();
        assert!(theta[1][1].is_one());
        assert_ne!(mat_mul(&theta, &m.e), mat_mul(&m.e, &theta));
    }

    #[test]
    fn rejects_even_or_large_n() {
        assert!(PolyModule::new(4).is_err());
        assert!(odd_theta_action(1).is_err());
        assert!(matches!(odd_theta_action(17), Err(Error::TooLarge { .. })));
    }
}
