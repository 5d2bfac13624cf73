//! Quadratic forms on finite abelian groups (metric groups) and their condensations.
//!
//! A form is stored as a table of exponents: `q(g) = ζ_M^{table[g]}` with
//! `M = 2·exp(G)`, indexed by the mixed-radix position of `g`.

mod condense;
mod json;
mod witt;

pub use condense::{condense, condense_ribbon, CondensationFlags, CondensationResult};
pub use json::MetricJson;
pub use witt::{
    anisotropic_kernel, find_isometry, witt_equal, witt_invariant, WittInvariant, DEFAULT_ISO_BOUND,
};

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::abelian::{all_subgroups, FinAbGroup, Subgroup};
use crate::cyclo::{Cyclotomic, RootSum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub elements: Vec<Vec<u64>>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.elements)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

/// The natural modulus `2·exp(G)` for quadratic forms on `G`.
pub fn natural_modulus(group: &FinAbGroup) -> u64 {
    2 * group.exponent()
}

fn violation(group: &FinAbGroup, law: &str, idx: &[usize]) -> Violation {
    Violation {
        law: law.to_string(),
        elements: idx.iter().map(|&i| group.element(i)).collect(),
    }
}

/// Checks the quadratic-form axioms for a raw exponent table over `ζ_modulus`.
///
/// Laws are tested in a fixed order and the first failure is reported:
/// normalization at 0, evenness, `q(kg) = q(g)^{k²}`, then biadditivity of the
/// polarization in its first argument along each cyclic generator.
pub fn validate_form(group: &FinAbGroup, modulus: u64, q: &[i64]) -> FormReport {
    let bad = |v| FormReport {
        valid: false,
        violation: Some(v),
    };
    let n = group.order();
    if modulus == 0 {
        return bad(Violation {
            law: "modulus must be positive".into(),
            elements: Vec::new(),
        });
    }
    if q.len() != n {
        return bad(Violation {
            law: format!("table has {} entries, expected {n}", q.len()),
            elements: Vec::new(),
        });
    }
    let m = modulus as i64;
    let q: Vec<i64> = q.iter().map(|e| e.rem_euclid(m)).collect();
    match first_violation(group, m, &q) {
        Some(v) => bad(v),
        None => FormReport {
            valid: true,
            violation: None,
        },
    }
}

fn first_violation(group: &FinAbGroup, m: i64, q: &[i64]) -> Option<Violation> {
    let n = group.order();
    if q[0] != 0 {
        return Some(violation(group, "q(0) = 1", &[0]));
    }
    for i in 0..n {
        let neg = group.index_of(&group.neg(&group.element(i)));
        if q[neg] != q[i] {
            return Some(violation(group, "q(-g) = q(g)", &[i]));
        }
    }
    for i in 0..n {
        let ord = group.element_order(&group.element(i)) as i64;
        let mut x = i;
        for k in 2..=ord {
            x = group.add_idx(x, i);
            if q[x] != (q[i] * (k * k % m)).rem_euclid(m) {
                return Some(Violation {
                    law: format!("q({k}g) = q(g)^{}", k * k),
                    elements: vec![group.element(i)],
                });
            }
        }
    }
    let b = |x: usize, y: usize| (q[group.add_idx(x, y)] - q[x] - q[y]).rem_euclid(m);
    for e in group.basis() {
        let e = group.index_of(&e);
        if e == 0 {
            continue;
        }
        for g in 0..n {
            let ge = group.add_idx(g, e);
            for h in 0..n {
                if b(ge, h) != (b(g, h) + b(e, h)) % m {
                    return Some(violation(group, "b(g+g', h) = b(g,h)b(g',h)", &[g, e, h]));
                }
            }
        }
    }
    None
}

/// Rescale exponents over `ζ_from` to exponents over `ζ_to`, if every value lies in `μ_to`.
fn rescale(values: &[i64], from: u64, to: u64) -> Option<Vec<u64>> {
    let l = from.lcm(&to);
    let up = (l / from) as i64;
    let down = l / to;
    values
        .iter()
        .map(|&e| {
            let e = (e.rem_euclid(from as i64) * up) as u64;
            e.is_multiple_of(down).then_some(e / down)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGroup {
    group: FinAbGroup,
    modulus: u64,
    q: Vec<u64>,
}

impl MetricGroup {
    /// Validates the table (given over `ζ_modulus`) and stores it over `ζ_{2·exp(G)}`.
    pub fn new(group: FinAbGroup, modulus: u64, q: Vec<i64>) -> Result<Self> {
        let natural = natural_modulus(&group);
        let work = if modulus == 0 {
            0
        } else {
            modulus.lcm(&natural)
        };
        let widened = if modulus == 0 {
            q.clone()
        } else {
            rescale(&q, modulus, work)
                .expect("widening to a multiple never fails")
                .into_iter()
                .map(|e| e as i64)
                .collect()
        };
        let report = validate_form(&group, work, &widened);
        if let Some(v) = report.violation {
            return Err(Error::InvalidForm(v.to_string()));
        }
        let q = rescale(&widened, work, natural)
            .ok_or_else(|| Error::InvalidForm(format!("values do not lie in μ_{natural}")))?;
        Ok(MetricGroup {
            group,
            modulus: natural,
            q,
        })
    }

    /// Builds the table from an exponent function over `ζ_modulus`.
    pub fn from_fn(group: FinAbGroup, modulus: u64, f: impl Fn(&[u64]) -> i64) -> Result<Self> {
        let q = group.elements().map(|g| f(&g)).collect();
        MetricGroup::new(group, modulus, q)
    }

    pub fn trivial() -> Self {
        MetricGroup {
            group: FinAbGroup::trivial(),
            modulus: 2,
            q: vec![0],
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn table(&self) -> &[u64] {
        &self.q
    }

    pub fn validate(&self) -> FormReport {
        let q: Vec<i64> = self.q.iter().map(|&e| e as i64).collect();
        validate_form(&self.group, self.modulus, &q)
    }

    pub(crate) fn q_idx(&self, i: usize) -> u64 {
        self.q[i]
    }

    pub(crate) fn b_idx(&self, x: usize, y: usize) -> u64 {
        let m = self.modulus;
        (self.q[self.group.add_idx(x, y)] + 2 * m - self.q[x] - self.q[y]) % m
    }

    /// Exponent of `q(g)` over `ζ_M`.
    pub fn q_exponent(&self, g: &[u64]) -> Result<u64> {
        self.group.check(g)?;
        Ok(self.q[self.group.index_of(g)])
    }

    pub fn q(&self, g: &[u64]) -> Result<Cyclotomic> {
        Cyclotomic::root_of_unity(self.modulus, self.q_exponent(g)? as i64)
    }

    /// Exponent of `b(g,h) = q(g+h)/(q(g)q(h))` over `ζ_M`.
    pub fn bilinear_exponent(&self, g: &[u64], h: &[u64]) -> Result<u64> {
        self.group.check(g)?;
        self.group.check(h)?;
        Ok(self.b_idx(self.group.index_of(g), self.group.index_of(h)))
    }

    pub fn bilinear(&self, g: &[u64], h: &[u64]) -> Result<Cyclotomic> {
        Cyclotomic::root_of_unity(self.modulus, self.bilinear_exponent(g, h)? as i64)
    }

    /// `{g : b(g,h) = 1 for all h ∈ S}`; generators of `S` suffice.
    pub fn orthogonal(&self, s: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = s
            .generators()
            .iter()
            .map(|h| self.group.index_of(h))
            .collect();
        let perp = (0..self.order())
            .filter(|&g| gens.iter().all(|&h| self.b_idx(g, h) == 0))
            .collect();
        Subgroup::from_indices(&self.group, perp)
    }

    pub fn radical(&self) -> Subgroup {
        self.orthogonal(&self.group.whole())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().order() == 1
    }

    /// `τ = Σ_g q(g)`; for nondegenerate forms `τ·conj(τ) = |G|` is asserted.
    pub fn gauss_sum(&self) -> Result<Cyclotomic> {
        let mut acc = RootSum::new(self.modulus);
        for &e in &self.q {
            acc.add(e as i64, 1);
        }
        let tau = acc.finish();
        if self.is_nondegenerate() {
            let norm = &tau * &tau.conj();
            if norm != Cyclotomic::from_integer(self.modulus, self.order() as i64) {
                return Err(Error::AssertionFailed(format!(
                    "|τ|² = {norm} differs from |G| = {}",
                    self.order()
                )));
            }
        }
        Ok(tau)
    }

    pub fn is_isotropic(&self, h: &Subgroup) -> bool {
        h.parent() == &self.group && h.indices().iter().all(|&i| self.q[i] == 0)
    }

    pub fn isotropic_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        Ok(all_subgroups(&self.group, bound)?
            .into_iter()
            .filter(|h| self.is_isotropic(h))
            .collect())
    }

    /// Orthogonal direct sum; the second summand's coordinates come last.
    pub fn direct_sum(&self, other: &MetricGroup) -> MetricGroup {
        let orders = [self.group.orders(), other.group.orders()].concat();
        let group = FinAbGroup::new(orders).expect("product of valid groups");
        let modulus = natural_modulus(&group);
        let (ua, ub) = (modulus / self.modulus, modulus / other.modulus);
        let mut q = Vec::with_capacity(group.order());
        for &a in &self.q {
            for &b in &other.q {
                q.push((a * ua + b * ub) % modulus);
            }
        }
        MetricGroup { group, modulus, q }
    }
}

/// A metric group with a twist `θ(g) = q(g)·χ(g)`, `χ` a character of order ≤ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonPointedData {
    base: MetricGroup,
    chi: Vec<u64>,
}

impl RibbonPointedData {
    /// `chi` is an exponent table over `ζ_modulus`.
    pub fn new(base: MetricGroup, modulus: u64, chi: Vec<i64>) -> Result<Self> {
        let g = base.group();
        if chi.len() != g.order() {
            return Err(Error::InvalidRibbon(format!(
                "character table has {} entries, expected {}",
                chi.len(),
                g.order()
            )));
        }
        if modulus == 0 {
            return Err(Error::InvalidRibbon("modulus must be positive".into()));
        }
        let natural = base.modulus();
        let work = modulus.lcm(&natural);
        let wide = rescale(&chi, modulus, work).expect("widening to a multiple never fails");
        let m = work;
        if wide[0] != 0 {
            return Err(Error::InvalidRibbon("χ(0) ≠ 1".into()));
        }
        for e in g.basis() {
            let e = g.index_of(&e);
            for x in 0..g.order() {
                if wide[g.add_idx(x, e)] != (wide[x] + wide[e]) % m {
                    return Err(Error::InvalidRibbon(format!(
                        "χ is not multiplicative at {:?}, {:?}",
                        g.element(x),
                        g.element(e)
                    )));
                }
            }
        }
        if let Some(x) = (0..g.order()).find(|&x| !(2 * wide[x]).is_multiple_of(m)) {
            return Err(Error::InvalidRibbon(format!(
                "θ(g) ≠ θ(-g) at {:?}: χ(g)² ≠ 1",
                g.element(x)
            )));
        }
        let wide_i: Vec<i64> = wide.iter().map(|&e| e as i64).collect();
        let chi = rescale(&wide_i, work, natural).expect("χ takes values ±1 and M is even");
        let data = RibbonPointedData { base, chi };
        data.check_balancing()?;
        Ok(data)
    }

    /// Pairs `q` with the trivial character, so `θ = q`.
    pub fn from_form(base: MetricGroup) -> Self {
        let chi = vec![0; base.order()];
        RibbonPointedData { base, chi }
    }

    fn check_balancing(&self) -> Result<()> {
        let g = self.base.group();
        let m = self.base.modulus();
        for e in g.basis() {
            let e = g.index_of(&e);
            for x in 0..g.order() {
                let lhs = self.theta_idx(g.add_idx(x, e));
                let rhs = (self.theta_idx(x) + self.theta_idx(e) + self.base.b_idx(x, e)) % m;
                if lhs != rhs {
                    return Err(Error::InvalidRibbon(format!(
                        "balancing θ(g+h) = θ(g)θ(h)b(g,h) fails at {:?}, {:?}",
                        g.element(x),
                        g.element(e)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &MetricGroup {
        &self.base
    }

    pub fn chi_table(&self) -> &[u64] {
        &self.chi
    }

    pub(crate) fn chi_idx(&self, i: usize) -> u64 {
        self.chi[i]
    }

    pub(crate) fn theta_idx(&self, i: usize) -> u64 {
        (self.base.q_idx(i) + self.chi[i]) % self.base.modulus()
    }

    pub fn theta(&self, g: &[u64]) -> Result<Cyclotomic> {
        self.base.group().check(g)?;
        let e = self.theta_idx(self.base.group().index_of(g));
        Cyclotomic::root_of_unity(self.base.modulus(), e as i64)
    }

    pub fn chi(&self, g: &[u64]) -> Result<Cyclotomic> {
        self.base.group().check(g)?;
        let e = self.chi[self.base.group().index_of(g)];
        Cyclotomic::root_of_unity(self.base.modulus(), e as i64)
    }
}
