//! Deligne products of the invertible modules `ψ` of `u_q^φ(sl_2)` over several `p`.

use super::{even_braiding_scalar, even_twist_scalar};
use crate::abelian::{all_subgroups, FinAbGroup, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::metric::{MetricGroup, RibbonPointedData};

/// Largest number of tensor factors accepted.
pub const MAX_FACTORS: usize = 10;

fn exponent_mod4(value: &Cyclotomic) -> Result<u64> {
    let (m, k) = value
        .as_root_of_unity()
        .ok_or_else(|| Error::AssertionFailed(format!("{value} is not a root of unity")))?;
    if (4 * k) % m != 0 {
        return Err(Error::AssertionFailed(format!(
            "{value} is not a fourth root of unity"
        )));
    }
    Ok(4 * k / m)
}

/// `Z_2^k` with `q(i) = Π c_{ψ_j,ψ_j}^{i_j}` and `θ(i) = Π θ_{ψ_j}^{i_j}`.
pub fn deligne_invertible_data(p_list: &[u64]) -> Result<RibbonPointedData> {
    if p_list.is_empty() {
        return Err(Error::InvalidInput("need at least one p".into()));
    }
    if p_list.len() > MAX_FACTORS {
        return Err(Error::TooLarge {
            what: "number of factors",
            size: p_list.len(),
            bound: MAX_FACTORS,
        });
    }
    let mut q_exp = Vec::with_capacity(p_list.len());
    let mut chi_exp = Vec::with_capacity(p_list.len());
    for &p in p_list {
        let q = even_braiding_scalar(p)?;
        let theta = even_twist_scalar(p)?;
        let qe = exponent_mod4(&q)?;
        let te = exponent_mod4(&theta)?;
        q_exp.push(qe);
        chi_exp.push((te + 4 - qe) % 4);
    }
    let group = FinAbGroup::new(vec![2; p_list.len()])?;
    let dot = |v: &[u64], w: &[u64]| v.iter().zip(w).map(|(a, b)| a * b).sum::<u64>() % 4;
    let q: Vec<i64> = group.elements().map(|g| dot(&g, &q_exp) as i64).collect();
    let chi: Vec<i64> = group.elements().map(|g| dot(&g, &chi_exp) as i64).collect();
    let base = MetricGroup::new(group, 4, q)?;
    RibbonPointedData::new(base, 4, chi)
}

/// The set `H' = {i : q(i) = 1 and θ(i) = 1}` and the subgroups it contains.
#[derive(Debug, Clone)]
pub struct AdmissibleSet {
    pub elements: Vec<Vec<u64>>,
    pub is_subgroup: bool,
    pub subgroups: Vec<Subgroup>,
}

impl AdmissibleSet {
    /// The largest subgroup contained in `H'`, if unique.
    pub fn largest_subgroup(&self) -> Option<&Subgroup> {
        let max = self.subgroups.iter().map(Subgroup::order).max()?;
        let mut largest = self.subgroups.iter().filter(|s| s.order() == max);
        let first = largest.next()?;
        largest.next().is_none().then_some(first)
    }
}

pub fn deligne_admissible_subgroup(p_list: &[u64]) -> Result<AdmissibleSet> {
    let data = deligne_invertible_data(p_list)?;
    let base = data.base();
    let group = base.group();
    let one = |v: Result<Cyclotomic>| v.map(|c| c.is_one());
    let mut elements = Vec::new();
    for g in group.elements() {
        if one(base.q(&g))? && one(data.theta(&g))? {
            elements.push(g);
        }
    }
    let subgroups: Vec<Subgroup> = all_subgroups(group, DEFAULT_SUBGROUP_BOUND)?
        .into_iter()
        .filter(|s| s.elements().iter().all(|g| elements.contains(g)))
        .collect();
    for s in &subgroups {
        for g in s.elements() {
            if !one(base.q(&g))? || !one(data.theta(&g))? {
                return Err(Error::AssertionFailed(format!(
                    "q or θ is nontrivial at {g:?}"
                )));
            }
        }
    }
    let is_subgroup = subgroups.iter().any(|s| s.order() == elements.len());
    Ok(AdmissibleSet {
        elements,
        is_subgroup,
        subgroups,
    })
}
