//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`, reduced
//! modulo the cyclotomic polynomial `Φ_n`, with a single positive common
//! denominator. Reduction makes the representation canonical for a fixed
//! order; elements of different orders are compared after embedding both into
//! `Q(ζ_lcm)`.

mod serde_impl;
mod tables;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use tables::tables;

pub use serde_impl::CyclotomicRepr;

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = tables(order).phi;
        Cyclotomic {
            order,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u64) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u64, value: i64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(value);
        z
    }

    pub fn from_rational(order: u64, value: &BigRational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.normalize();
        z
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let t = tables(n);
        Ok(Cyclotomic {
            order: n,
            num: t.power(k).iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        })
    }

    /// Builds `Σ c_i ζ_n^{e_i}` from exponent/coefficient pairs (any exponents).
    pub fn from_terms<I>(n: u64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let t = tables(n);
        let terms: Vec<(i64, BigRational)> = terms.into_iter().collect();
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); t.phi];
        for (e, c) in &terms {
            let scaled = c.numer() * (&den / c.denom());
            for (slot, &r) in num.iter_mut().zip(t.power(*e)) {
                if r != 0 {
                    *slot += &scaled * r;
                }
            }
        }
        let mut z = Cyclotomic { order: n, num, den };
        z.normalize();
        Ok(z)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Nonzero canonical coordinates as `(exponent, coefficient)`, exponents increasing.
    pub fn coeffs(&self) -> Vec<(usize, BigRational)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, BigRational::new(c.clone(), self.den.clone())))
            .collect()
    }

    /// Image under the inclusion `Q(ζ_n) ⊂ Q(ζ_m)`; requires `n | m`.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroOrder);
        }
        if !m.is_multiple_of(self.order) {
            return Err(Error::InvalidInput(format!(
                "cannot embed Q(ζ_{}) into Q(ζ_{m})",
                self.order
            )));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let factor = (m / self.order) as i64;
        let t = tables(m);
        let mut num = vec![BigInt::zero(); t.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(t.power(i as i64 * factor)) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        let mut z = Cyclotomic {
            order: m,
            num,
            den: self.den.clone(),
        };
        z.normalize();
        Ok(z)
    }

    /// Re-expresses the element over `Q(ζ_m)` for a divisor `m` of its order, when it lies there.
    pub fn restrict(&self, m: u64) -> Option<Self> {
        if m == 0 || !self.order.is_multiple_of(m) {
            return None;
        }
        let step = (self.order / m) as i64;
        let small = tables(m);
        let big = tables(self.order);
        // Unknowns: coordinates over Q(ζ_m); equations: coordinates over Q(ζ_n).
        let mut system = vec![vec![BigRational::zero(); small.phi + 1]; big.phi];
        for j in 0..small.phi {
            for (i, &c) in big.power(step * j as i64).iter().enumerate() {
                system[i][j] = BigRational::from_integer(BigInt::from(c));
            }
        }
        for (i, row) in system.iter_mut().enumerate() {
            row[small.phi] = BigRational::new(self.num[i].clone(), self.den.clone());
        }
        let x = solve_rational(system, small.phi)?;
        let den = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = x.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut z = Cyclotomic { order: m, num, den };
        z.normalize();
        Some(z)
    }

    /// The same element over its conductor, the smallest field `Q(ζ_m)` containing it.
    pub fn reduced(&self) -> Self {
        (1..self.order)
            .filter(|m| self.order.is_multiple_of(*m) && m % 4 != 2)
            .find_map(|m| self.restrict(m))
            .unwrap_or_else(|| self.clone())
    }

    /// The Galois automorphism `ζ ↦ ζ^a`; `a` must be coprime to the order.
    pub fn galois(&self, a: i64) -> Self {
        debug_assert_eq!(a.rem_euclid(self.order as i64).gcd(&(self.order as i64)), 1);
        let t = tables(self.order);
        let mut num = vec![BigInt::zero(); t.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(t.power(i as i64 * a)) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        let mut z = Cyclotomic {
            order: self.order,
            num,
            den: self.den.clone(),
        };
        z.normalize();
        z
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order;
        let phi = tables(n).phi;
        // Column j of the multiplication matrix holds the coordinates of a·ζ^j.
        let mut mat: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self * &Cyclotomic::root_of_unity(n, j as i64)?;
            for (i, row) in mat.iter_mut().enumerate() {
                row[j] = BigRational::new(col.num[i].clone(), col.den.clone());
            }
        }
        mat[0][phi] = BigRational::one();
        let x = solve_rational(mat, phi).ok_or(Error::DivisionByZero)?;
        let den = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = x.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut z = Cyclotomic { order: n, num, den };
        z.normalize();
        Ok(z)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut z = self.clone();
        for c in z.num.iter_mut() {
            *c *= k;
        }
        z.normalize();
        z
    }

    /// Floating approximation with absolute error below `10^{-digits}`.
    ///
    /// Only used for sign and branch decisions; fails if double precision cannot
    /// certify the requested number of digits.
    pub fn numeric_eval(&self, digits: u32) -> Result<Complex64> {
        let n = self.order as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        let mut magnitude = 0.0f64;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().unwrap_or(f64::INFINITY) / den;
            let angle = std::f64::consts::TAU * i as f64 / n;
            re += cf * angle.cos();
            im += cf * angle.sin();
            magnitude += cf.abs();
        }
        let bound = 8.0 * f64::EPSILON * (magnitude + 1.0) * (self.num.len() as f64 + 1.0);
        if !bound.is_finite() || digits > 15 || bound >= 10f64.powi(-(digits as i32)) {
            return Err(Error::InvalidInput(format!(
                "cannot certify {digits} digits in double precision"
            )));
        }
        Ok(Complex64::new(re, im))
    }

    /// If the element is a root of unity, returns `(m, k)` with `self = ζ_m^k`,
    /// where `m = lcm(2, order)`.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        if !self.den.is_one() {
            return None;
        }
        let n = self.order;
        let m = if n.is_multiple_of(2) { n } else { 2 * n };
        let t = tables(n);
        for j in 0..n {
            let row = t.power(j as i64);
            let same = self
                .num
                .iter()
                .zip(row)
                .all(|(a, &b)| *a == BigInt::from(b));
            if same {
                return Some((m, (j * (m / n)) % m));
            }
            let negated = self
                .num
                .iter()
                .zip(row)
                .all(|(a, &b)| *a == BigInt::from(-b));
            if negated {
                return Some((m, (j * (m / n) + m / 2) % m));
            }
        }
        None
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    fn unify<'a>(
        a: &'a Self,
        b: &'a Self,
    ) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.order == b.order {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let m = a.order.lcm(&b.order);
        (
            Cow::Owned(a.embed(m).expect("lcm is a multiple")),
            Cow::Owned(b.embed(m).expect("lcm is a multiple")),
        )
    }

    fn add_same(a: &Self, b: &Self, sign: i64) -> Self {
        let mut num = Vec::with_capacity(a.num.len());
        if a.den == b.den {
            for (x, y) in a.num.iter().zip(&b.num) {
                num.push(if sign > 0 { x + y } else { x - y });
            }
            let mut z = Cyclotomic {
                order: a.order,
                num,
                den: a.den.clone(),
            };
            z.normalize();
            return z;
        }
        for (x, y) in a.num.iter().zip(&b.num) {
            let l = x * &b.den;
            let r = y * &a.den;
            num.push(if sign > 0 { l + r } else { l - r });
        }
        let mut z = Cyclotomic {
            order: a.order,
            num,
            den: &a.den * &b.den,
        };
        z.normalize();
        z
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        let t = tables(a.order);
        let phi = t.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = prod.drain(..phi).collect();
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(t.power((phi + k) as i64)) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        let mut z = Cyclotomic {
            order: a.order,
            num,
            den: &a.den * &b.den,
        };
        z.normalize();
        z
    }
}

/// Gaussian elimination over `Q` on an augmented system with `ncols` unknowns.
///
/// Returns the unique solution, or `None` if the system is inconsistent or
/// underdetermined.
fn solve_rational(mut mat: Vec<Vec<BigRational>>, ncols: usize) -> Option<Vec<BigRational>> {
    let nrows = mat.len();
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..nrows).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(row, pivot);
        let inv = mat[row][col].recip();
        for v in mat[row].iter_mut().skip(col) {
            *v = &*v * &inv;
        }
        for r in 0..nrows {
            if r == row || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone();
            for c in col..=ncols {
                let delta = &factor * &mat[row][c];
                mat[r][c] = &mat[r][c] - &delta;
            }
        }
        row += 1;
    }
    if mat[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    Some(
        mat.into_iter()
            .take(ncols)
            .map(|mut r| r.pop().unwrap())
            .collect(),
    )
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyclotomic::unify(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, rhs);
        Cyclotomic::add_same(&a, &b, 1)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, rhs);
        Cyclotomic::add_same(&a, &b, -1)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, rhs);
        Cyclotomic::mul_same(&a, &b)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// GAP-style rendering: `2+2*E(4)`, `-1`, `E(8)^3`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let this = self.reduced();
        let terms = this.coeffs();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            if *e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "E({})", this.order)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Integer-weighted sum of `n`-th roots of unity, accumulated by exponent and
/// converted to a [`Cyclotomic`] once.
#[derive(Clone, Debug)]
pub struct RootSum {
    order: u64,
    counts: Vec<BigInt>,
}

impl RootSum {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        RootSum {
            order,
            counts: vec![BigInt::zero(); order as usize],
        }
    }

    pub fn add(&mut self, exponent: i64, weight: i64) {
        let k = exponent.rem_euclid(self.order as i64) as usize;
        self.counts[k] += weight;
    }

    pub fn finish(&self) -> Cyclotomic {
        let t = tables(self.order);
        let mut num = vec![BigInt::zero(); t.phi];
        for (k, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(t.power(k as i64)) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        let mut z = Cyclotomic {
            order: self.order,
            num,
            den: BigInt::one(),
        };
        z.normalize();
        z
    }
}

/// `Σ_{j=0}^{n-1} ζ_n^{rj}`, checked against the closed form `n·[n | r]`.
pub fn geometric_sum(n: u64, r: i64) -> Result<Cyclotomic> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "geometric_sum needs n > 1, got {n}"
        )));
    }
    let mut acc = RootSum::new(n);
    for j in 0..n as i64 {
        acc.add(r * j, 1);
    }
    let value = acc.finish();
    let expected = if r.rem_euclid(n as i64) == 0 {
        Cyclotomic::from_integer(n, n as i64)
    } else {
        Cyclotomic::zero(n)
    };
    if value != expected {
        return Err(Error::AssertionFailed(format!(
            "geometric sum over ζ_{n}^{r} reduced to {value}, expected {expected}"
        )));
    }
    Ok(value)
}

/// An exact square root realized inside a cyclotomic field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSqrt {
    pub radicand: u64,
    pub value: Cyclotomic,
    /// True when the raw Gauss-sum quotient was negative and had to be negated.
    pub negated: bool,
}

/// `√(4p)` as an element of `Q(ζ_{4p})`, via the quadratic Gauss sum
/// `Σ_{k<4p} ζ_{4p}^{k²} = (1+ι)·√(4p)`.
pub fn gauss_sqrt(p: u64) -> Result<ExactSqrt> {
    if p == 0 {
        return Err(Error::InvalidInput("gauss_sqrt needs p ≥ 1".into()));
    }
    let n = 4 * p;
    let mut s = RootSum::new(n);
    for k in 0..n as i64 {
        s.add(k * k, 1);
    }
    let s = s.finish();
    let one_plus_i = &Cyclotomic::one(n) + &Cyclotomic::root_of_unity(n, p as i64)?;
    let mut value = &s * &one_plus_i.inverse()?;
    let mut negated = false;
    if value.numeric_eval(6)?.re < 0.0 {
        value = -value;
        negated = true;
    }
    if !value.is_real() {
        return Err(Error::AssertionFailed(format!(
            "Gauss-sum square root of {n} is not real: {value}"
        )));
    }
    if &value * &value != Cyclotomic::from_integer(n, n as i64) {
        return Err(Error::AssertionFailed(format!(
            "Gauss-sum square root of {n} does not square to {n}"
        )));
    }
    Ok(ExactSqrt {
        radicand: n,
        value,
        negated,
    })
}
