use serde::Serialize;

use super::{rescale, MetricGroup, RibbonPointedData};
use crate::abelian::{quotient, Quotient, Subgroup};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CondensationFlags {
    pub is_ftc: bool,
    pub is_lagrangian: bool,
    /// `θ|_H = 1`; unknown without ribbon data.
    pub is_ribbon: Option<bool>,
    /// `is_ribbon` together with nondegeneracy of the input.
    pub is_mtc: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct CondensationResult {
    pub subgroup: Subgroup,
    pub perp: Subgroup,
    pub condensed: MetricGroup,
    pub condensed_ribbon: Option<RibbonPointedData>,
    pub coset_map: Quotient,
    pub input_nondegenerate: bool,
    pub flags: CondensationFlags,
}

/// Pushes an exponent table on `H⊥` down to `H⊥/H`, checking it is constant on cosets.
fn descend(
    m: &MetricGroup,
    perp: &Subgroup,
    map: &Quotient,
    table: impl Fn(usize) -> u64,
    what: &str,
) -> Result<Vec<i64>> {
    let mut out: Vec<Option<u64>> = vec![None; map.group.order()];
    for &x in perp.indices() {
        let j = map
            .map_idx(x)
            .ok_or_else(|| Error::AssertionFailed("coset map undefined on H⊥".into()))?;
        let v = table(x);
        match out[j] {
            None => out[j] = Some(v),
            Some(w) if w == v => {}
            Some(_) => {
                return Err(Error::WellDefinednessViolation(format!(
                    "{what} is not constant on the coset of {:?}",
                    m.group().element(x)
                )))
            }
        }
    }
    out.into_iter()
        .map(|v| {
            v.map(|e| e as i64)
                .ok_or_else(|| Error::AssertionFailed("coset map is not surjective".into()))
        })
        .collect()
}

/// Local modules of the simple-current algebra `A_H`: the metric group `H⊥/H`.
pub fn condense(m: &MetricGroup, h: &Subgroup) -> Result<CondensationResult> {
    if h.parent() != m.group() {
        return Err(Error::NotASubgroup(
            "subgroup belongs to a different group".into(),
        ));
    }
    if let Some(&bad) = h.indices().iter().find(|&&i| m.q_idx(i) != 0) {
        return Err(Error::NotIsotropic {
            element: m.group().element(bad),
            exponent: m.q_idx(bad),
        });
    }
    let perp = m.orthogonal(h);
    let map = quotient(m.group(), h, Some(&perp))?;
    let table = descend(m, &perp, &map, |x| m.q_idx(x), "q")?;
    let natural = super::natural_modulus(&map.group);
    let table: Vec<i64> = rescale(&table, m.modulus(), natural)
        .ok_or_else(|| Error::WellDefinednessViolation(format!("induced form leaves μ_{natural}")))?
        .into_iter()
        .map(|e| e as i64)
        .collect();
    let condensed = MetricGroup::new(map.group.clone(), natural, table)
        .map_err(|e| Error::WellDefinednessViolation(format!("induced form invalid: {e}")))?;

    let nondegenerate = m.is_nondegenerate();
    if nondegenerate {
        if condensed.order() * h.order() * h.order() != m.order() {
            return Err(Error::AssertionFailed(format!(
                "|H⊥/H|·|H|² = {}·{}² differs from |G| = {}",
                condensed.order(),
                h.order(),
                m.order()
            )));
        }
        if !condensed.is_nondegenerate() {
            return Err(Error::AssertionFailed(
                "condensation of a nondegenerate form is degenerate".into(),
            ));
        }
    }
    let flags = CondensationFlags {
        is_ftc: true,
        is_lagrangian: nondegenerate && h.order() * h.order() == m.order(),
        is_ribbon: None,
        is_mtc: None,
    };
    Ok(CondensationResult {
        subgroup: h.clone(),
        perp,
        condensed,
        condensed_ribbon: None,
        coset_map: map,
        input_nondegenerate: nondegenerate,
        flags,
    })
}

/// As [`condense`], additionally deciding whether `A_H` is symmetric Frobenius
/// (`θ|_H = 1`). The character only descends to `H⊥/H` in that case.
pub fn condense_ribbon(r: &RibbonPointedData, h: &Subgroup) -> Result<CondensationResult> {
    let m = r.base();
    let mut res = condense(m, h)?;
    let ribbon = h.indices().iter().all(|&i| r.theta_idx(i) == 0);
    res.flags.is_ribbon = Some(ribbon);
    res.flags.is_mtc = Some(ribbon && res.input_nondegenerate);
    if ribbon {
        let chi = descend(m, &res.perp, &res.coset_map, |x| r.chi_idx(x), "χ")?;
        let induced = RibbonPointedData::new(res.condensed.clone(), m.modulus(), chi)
            .map_err(|e| Error::WellDefinednessViolation(format!("induced twist invalid: {e}")))?;
        res.condensed_ribbon = Some(induced);
    }
    Ok(res)
}
