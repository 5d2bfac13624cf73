//! Invertible modules of the Taft-type algebra `D_n` at `q = ζ_n`, with
//! `[k] = 1 + q + … + q^{k-1}` and
//! `R = (1/n) Σ_{m,s,t<n} q^{-tm}/[s]! a^s b^t ⊗ c^m d^s`.

use super::{qfactorial, qint_geometric, rational, zeta, CharacterData};
use crate::abelian::FinAbGroup;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::metric::{MetricGroup, RibbonPointedData};

/// Largest `n` accepted.
pub const MAX_TAFT_N: u64 = 64;

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if n > MAX_TAFT_N {
        return Err(Error::TooLarge {
            what: "n",
            size: n as usize,
            bound: MAX_TAFT_N as usize,
        });
    }
    Ok(())
}

/// The one-dimensional module `V(1,s)`: `a, d ↦ 0`, `b ↦ q^s`, `c ↦ q^{-s}`.
pub fn taft_character(n: u64, s: u64) -> CharacterData {
    let s = (s % n) as i64;
    CharacterData {
        values: vec![
            ("a", Cyclotomic::zero(n)),
            ("b", zeta(n, s)),
            ("c", zeta(n, -s)),
            ("d", Cyclotomic::zero(n)),
        ],
    }
}

/// `c_{V(1,s),V(1,s)}`, the R-matrix contracted on both legs; asserted equal to `ζ_n^{-s²}`.
pub fn taft_braiding_scalar(n: u64, s: u64) -> Result<Cyclotomic> {
    check_n(n)?;
    let q = zeta(n, 1);
    let chi = taft_character(n, s);
    let mut total = Cyclotomic::zero(n);
    for k in 0..n {
        let left_ad = &chi.power("a", k)? * &chi.power("d", k)?;
        if left_ad.is_zero() {
            continue;
        }
        let coeff = qfactorial(&q, k, qint_geometric)?.inverse()?;
        for t in 0..n {
            let bt = chi.power("b", t)?;
            for m in 0..n {
                let weight = &(&left_ad * &bt) * &chi.power("c", m)?;
                let phase = zeta(n, -((t * m) as i64));
                total = &total + &(&(&coeff * &phase) * &weight);
            }
        }
    }
    let value = &total * &rational(n, 1, n as i64);
    let si = (s % n) as i64;
    let expected = zeta(n, -si * si);
    if value != expected {
        return Err(Error::AssertionFailed(format!(
            "c_(V(1,{s}),V(1,{s})) = {value}, expected {expected}"
        )));
    }
    Ok(value)
}

/// The invertible objects as a metric group `Z_n` with `q(s) = c_{V(1,s),V(1,s)}`,
/// paired with the trivial character so that `θ = q`.
pub fn taft_invertible_data(n: u64) -> Result<RibbonPointedData> {
    check_n(n)?;
    let mut exponents = Vec::with_capacity(n as usize);
    let modulus = if n.is_multiple_of(2) { n } else { 2 * n };
    for s in 0..n {
        let value = taft_braiding_scalar(n, s)?;
        let (m, k) = value
            .as_root_of_unity()
            .ok_or_else(|| Error::AssertionFailed(format!("{value} is not a root of unity")))?;
        exponents.push((k * (modulus / m)) as i64);
    }
    let base = MetricGroup::new(FinAbGroup::new(vec![n])?, modulus, exponents)?;
    Ok(RibbonPointedData::from_form(base))
}

/// Whether `θ(X^s) = q^{s²}` is balanced against the braiding `c(X^s, X^t) = q^{-st}`,
/// i.e. `θ(s+t) = θ(s)θ(t)c(s,t)c(t,s)` for all `s, t`.
pub fn taft_square_twist_is_balanced(n: u64) -> Result<bool> {
    check_n(n)?;
    let n = n as i64;
    let balanced = (0..n).all(|s| {
        (0..n).all(|t| {
            let lhs = (s + t) * (s + t);
            let rhs = s * s + t * t - 2 * s * t;
            (lhs - rhs).rem_euclid(n) == 0
        })
    });
    Ok(balanced)
}
