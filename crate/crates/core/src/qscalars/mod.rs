//! Exact scalar computations for small quantum groups: braiding and twist
//! scalars on invertible modules, and the ribbon action on `k[x]/(x^N)`.

mod deligne;
mod even;
mod odd;
mod taft;

pub use deligne::{deligne_admissible_subgroup, deligne_invertible_data, AdmissibleSet};
pub use even::{even_braiding_scalar, even_twist_scalar, psi_character};
pub use odd::{
    odd_half_power, odd_j_sum, odd_theta_action, odd_theta_matrix, PolyModule, RelationReport,
    SqrtBranch,
};
pub use taft::{
    taft_braiding_scalar, taft_character, taft_invertible_data, taft_square_twist_is_balanced,
};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclo::Cyclotomic;
use crate::error::Result;

/// Scalars by which the generators of a Hopf algebra act on a one-dimensional module.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterData {
    pub values: Vec<(&'static str, Cyclotomic)>,
}

impl CharacterData {
    pub fn get(&self, generator: &str) -> &Cyclotomic {
        &self
            .values
            .iter()
            .find(|(g, _)| *g == generator)
            .unwrap_or_else(|| panic!("no value for generator {generator}"))
            .1
    }

    /// The value of `generator^k`, with `x^0 = 1` even for `x = 0`.
    pub fn power(&self, generator: &str, k: u64) -> Result<Cyclotomic> {
        power(self.get(generator), k)
    }
}

pub(crate) fn power(x: &Cyclotomic, k: u64) -> Result<Cyclotomic> {
    if k == 0 {
        Ok(Cyclotomic::one(x.order()))
    } else {
        x.pow(k as i64)
    }
}

pub(crate) fn zeta(n: u64, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k).expect("n is positive")
}

pub(crate) fn rational(n: u64, num: i64, den: i64) -> Cyclotomic {
    Cyclotomic::from_rational(n, &BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Symmetric quantum integer `[k] = q^{k-1} + q^{k-3} + … + q^{1-k}`.
pub(crate) fn qint_symmetric(q: &Cyclotomic, k: u64) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::zero(q.order());
    for i in 0..k as i64 {
        acc = &acc + &q.pow(k as i64 - 1 - 2 * i)?;
    }
    Ok(acc)
}

/// Quantum integer `[k] = 1 + q + … + q^{k-1}`.
pub(crate) fn qint_geometric(q: &Cyclotomic, k: u64) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::zero(q.order());
    for i in 0..k as i64 {
        acc = &acc + &q.pow(i)?;
    }
    Ok(acc)
}

pub(crate) fn qfactorial(
    q: &Cyclotomic,
    k: u64,
    qint: fn(&Cyclotomic, u64) -> Result<Cyclotomic>,
) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::one(q.order());
    for i in 1..=k {
        acc = &acc * &qint(q, i)?;
    }
    Ok(acc)
}

/// Dense square matrices over a cyclotomic field.
pub type Matrix = Vec<Vec<Cyclotomic>>;

pub(crate) fn mat_zero(n: usize, order: u64) -> Matrix {
    vec![vec![Cyclotomic::zero(order); n]; n]
}

pub(crate) fn mat_identity(n: usize, order: u64) -> Matrix {
    let mut m = mat_zero(n, order);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Cyclotomic::one(order);
    }
    m
}

pub(crate) fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let order = a[0][0].order();
    let mut out = mat_zero(n, order);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

pub(crate) fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub(crate) fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub(crate) fn mat_scale(a: &Matrix, s: &Cyclotomic) -> Matrix {
    a.iter()
        .map(|r| r.iter().map(|x| x * s).collect())
        .collect()
}

pub(crate) fn mat_pow(a: &Matrix, k: u64) -> Matrix {
    let order = a[0][0].order();
    let mut out = mat_identity(a.len(), order);
    for _ in 0..k {
        out = mat_mul(&out, a);
    }
    out
}

pub(crate) fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(Cyclotomic::is_zero))
}
