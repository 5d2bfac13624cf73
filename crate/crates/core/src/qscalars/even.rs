//! The invertible module `ψ` of `u_q^φ(sl_2)` at `q = e^{πι/p}`, worked in `Q(ζ_{4p})`
//! with `q = ζ_{4p}^2`, `q^{1/2} = ζ_{4p}` and `ι = ζ_{4p}^p`.

use super::{power, qfactorial, qint_symmetric, rational, zeta, CharacterData};
use crate::cyclo::{gauss_sqrt, Cyclotomic, RootSum};
use crate::error::{Error, Result};

fn check_p(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidInput(format!(
            "p must be at least 2, got {p}"
        )));
    }
    Ok(())
}

/// `E, F, K ↦ 0, 0, -1`.
pub fn psi_character(p: u64) -> CharacterData {
    let n = 4 * p;
    CharacterData {
        values: vec![
            ("E", Cyclotomic::zero(n)),
            ("F", Cyclotomic::zero(n)),
            ("K", Cyclotomic::from_integer(n, -1)),
        ],
    }
}

/// `c_{ψ,ψ}`: the R-matrix
/// `(1/4p) Σ_{n<p} Σ_{s,r<2p} (q-q^{-1})^n/[n]! q^{n(n-1)/2-2sr}(1+q^r+q^{-(n+s)}+q^{1/2+r-n-s}) K^sE^n ⊗ K^rF^n`
/// contracted against `ψ ⊗ ψ`; asserted equal to `ι^p`.
pub fn even_braiding_scalar(p: u64) -> Result<Cyclotomic> {
    check_p(p)?;
    let n4 = 4 * p;
    let pi = p as i64;
    let q = zeta(n4, 2);
    let diff = &q - &q.inverse()?;
    let chi = psi_character(p);
    let mut total = Cyclotomic::zero(n4);
    for n in 0..p {
        let e_n = chi.power("E", n)?;
        let f_n = chi.power("F", n)?;
        if (&e_n * &f_n).is_zero() {
            continue;
        }
        let coeff = &power(&diff, n)? * &qfactorial(&q, n, qint_symmetric)?.inverse()?;
        let ni = n as i64;
        let mut inner = Cyclotomic::zero(n4);
        for s in 0..2 * pi {
            let left = &chi.power("K", s as u64)? * &e_n;
            for r in 0..2 * pi {
                let right = &chi.power("K", r as u64)? * &f_n;
                let weight = &left * &right;
                if weight.is_zero() {
                    continue;
                }
                // exponents over ζ_{4p}, where q^a = ζ^{2a} and q^{1/2} = ζ
                let base = ni * (ni - 1) - 4 * s * r;
                let mut bracket = RootSum::new(n4);
                bracket.add(base, 1);
                bracket.add(base + 2 * r, 1);
                bracket.add(base - 2 * (ni + s), 1);
                bracket.add(base + 1 + 2 * r - 2 * ni - 2 * s, 1);
                inner = &inner + &(&bracket.finish() * &weight);
            }
        }
        total = &total + &(&coeff * &inner);
    }
    let value = &total * &rational(n4, 1, 4 * pi);
    let expected = zeta(n4, pi * pi);
    if value != expected {
        return Err(Error::AssertionFailed(format!(
            "c_ψψ = {value} for p = {p}, expected ι^{p} = {expected}"
        )));
    }
    Ok(value)
}

/// `θ_ψ`: the twist element
/// `(1-ι)/(2√p) Σ_{n<p} Σ_{j<2p} (q-q^{-1})^n/[n]! q^{n(j-1/2)+(j+p+1)²/2} F^nE^nK^j`
/// evaluated on `ψ`, with `√p = gauss_sqrt(p)/2`; asserted equal to `-ι^p`.
pub fn even_twist_scalar(p: u64) -> Result<Cyclotomic> {
    check_p(p)?;
    let n4 = 4 * p;
    let pi = p as i64;
    let q = zeta(n4, 2);
    let iota = zeta(n4, pi);
    let diff = &q - &q.inverse()?;
    let chi = psi_character(p);
    let mut sum = Cyclotomic::zero(n4);
    for n in 0..p {
        let fe = &chi.power("F", n)? * &chi.power("E", n)?;
        if fe.is_zero() {
            continue;
        }
        let coeff = &power(&diff, n)? * &qfactorial(&q, n, qint_symmetric)?.inverse()?;
        let ni = n as i64;
        let mut inner = Cyclotomic::zero(n4);
        for j in 0..2 * pi {
            let weight = &fe * &chi.power("K", j as u64)?;
            if weight.is_zero() {
                continue;
            }
            let exponent = 2 * ni * j - ni + (j + pi + 1) * (j + pi + 1);
            inner = &inner + &(&zeta(n4, exponent) * &weight);
        }
        sum = &sum + &(&coeff * &inner);
    }
    let sqrt_p = &gauss_sqrt(p)?.value * &rational(n4, 1, 2);
    if &sqrt_p * &sqrt_p != Cyclotomic::from_integer(n4, pi) {
        return Err(Error::AssertionFailed(format!(
            "√{p} does not square to {p}"
        )));
    }
    let prefactor = &(&Cyclotomic::one(n4) - &iota) * &sqrt_p.scale(2).inverse()?;
    let value = &prefactor * &sum;
    let expected = -zeta(n4, pi * pi);
    if value != expected {
        return Err(Error::AssertionFailed(format!(
            "θ_ψ = {value} for p = {p}, expected -ι^{p} = {expected}"
        )));
    }
    Ok(value)
}
