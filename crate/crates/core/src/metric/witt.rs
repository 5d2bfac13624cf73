use num_integer::Integer;
use serde::Serialize;

use super::{condense, MetricGroup};
use crate::abelian::subgroup_generated;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

pub const DEFAULT_ISO_BOUND: usize = 512;

fn require_nondegenerate(m: &MetricGroup) -> Result<()> {
    let radical_order = m.radical().order();
    if radical_order != 1 {
        return Err(Error::Degenerate { radical_order });
    }
    Ok(())
}

/// Condenses by the first isotropic element (in mixed-radix order) until none is left.
pub fn anisotropic_kernel(m: &MetricGroup) -> Result<MetricGroup> {
    require_nondegenerate(m)?;
    let mut cur = m.clone();
    while let Some(g) = (1..cur.order()).find(|&i| cur.q_idx(i) == 0) {
        let h = subgroup_generated(cur.group(), &[cur.group().element(g)])?;
        cur = condense(&cur, &h)?.condensed;
    }
    Ok(cur)
}

/// A form-preserving isomorphism, given by the images of a generating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isometry {
    pub sources: Vec<Vec<u64>>,
    pub images: Vec<Vec<u64>>,
}

/// Searches for an isometry `a → b` by backtracking over images of an
/// invariant-factor basis of `a`, pruning by element order, `q` and `b`.
pub fn find_isometry(a: &MetricGroup, b: &MetricGroup, bound: usize) -> Result<Option<Isometry>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.order() > bound {
        return Err(Error::TooLarge {
            what: "metric group",
            size: a.order(),
            bound,
        });
    }
    let na = a.group().normalized();
    let nb = b.group().normalized();
    if na.group.orders() != nb.group.orders() {
        return Ok(None);
    }
    let l = a.modulus().lcm(&b.modulus());
    let (ua, ub) = (l / a.modulus(), l / b.modulus());
    let mut qa: Vec<u64> = a.table().iter().map(|e| e * ua).collect();
    let mut qb: Vec<u64> = b.table().iter().map(|e| e * ub).collect();
    qa.sort_unstable();
    qb.sort_unstable();
    if qa != qb || a.gauss_sum()? != b.gauss_sum()? {
        return Ok(None);
    }

    let ga = a.group();
    let gb = b.group();
    let sources: Vec<usize> = na.lifts().iter().map(|x| ga.index_of(x)).collect();
    let orders = na.group.orders();
    let candidates: Vec<Vec<usize>> = sources
        .iter()
        .zip(orders)
        .map(|(&x, &d)| {
            (0..b.order())
                .filter(|&y| {
                    gb.element_order(&gb.element(y)) == d && b.q_idx(y) * ub == a.q_idx(x) * ua
                })
                .collect()
        })
        .collect();

    let mut chosen = Vec::with_capacity(sources.len());
    let found = search(a, b, ua, ub, &sources, &candidates, &mut chosen, &na);
    Ok(found.then(|| Isometry {
        sources: sources.iter().map(|&x| ga.element(x)).collect(),
        images: chosen.iter().map(|&y| gb.element(y)).collect(),
    }))
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &MetricGroup,
    b: &MetricGroup,
    ua: u64,
    ub: u64,
    sources: &[usize],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    na: &crate::abelian::Quotient,
) -> bool {
    let i = chosen.len();
    if i == sources.len() {
        return is_isometry(a, b, ua, ub, chosen, na);
    }
    for &y in &candidates[i] {
        let compatible =
            (0..i).all(|j| b.b_idx(y, chosen[j]) * ub == a.b_idx(sources[i], sources[j]) * ua);
        if compatible {
            chosen.push(y);
            if search(a, b, ua, ub, sources, candidates, chosen, na) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn is_isometry(
    a: &MetricGroup,
    b: &MetricGroup,
    ua: u64,
    ub: u64,
    images: &[usize],
    na: &crate::abelian::Quotient,
) -> bool {
    let ga = a.group();
    let gb = b.group();
    let mut hit = vec![false; b.order()];
    for coords in na.group.elements() {
        let x = ga.index_of(&na.lift(&coords));
        let mut y = 0;
        for (&c, &img) in coords.iter().zip(images) {
            for _ in 0..c {
                y = gb.add_idx(y, img);
            }
        }
        if hit[y] || b.q_idx(y) * ub != a.q_idx(x) * ua {
            return false;
        }
        hit[y] = true;
    }
    true
}

/// Witt equivalence of nondegenerate metric groups: isometric anisotropic kernels.
pub fn witt_equal(a: &MetricGroup, b: &MetricGroup, bound: usize) -> Result<bool> {
    require_nondegenerate(a)?;
    require_nondegenerate(b)?;
    let ka = anisotropic_kernel(a)?;
    let kb = anisotropic_kernel(b)?;
    for k in [&ka, &kb] {
        if k.order() > bound {
            return Err(Error::TooLarge {
                what: "anisotropic kernel",
                size: k.order(),
                bound,
            });
        }
    }
    Ok(find_isometry(&ka, &kb, bound)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WittInvariant {
    pub order: usize,
    pub sigma: Cyclotomic,
}

/// The Gauss sum together with `|G|`; asserts `τ·conj(τ) = |G|` and `(τ/conj τ)^8 = 1`.
pub fn witt_invariant(m: &MetricGroup) -> Result<WittInvariant> {
    require_nondegenerate(m)?;
    let sigma = m.gauss_sum()?;
    let ratio = &sigma * &sigma.conj().inverse()?;
    if !ratio.pow(8)?.is_one() {
        return Err(Error::AssertionFailed(format!(
            "(τ/conj τ)^8 ≠ 1 for τ = {sigma}"
        )));
    }
    Ok(WittInvariant {
        order: m.order(),
        sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;

    fn grp(o: &[u64]) -> FinAbGroup {
        FinAbGroup::new(o.to_vec()).unwrap()
    }

    fn z4() -> MetricGroup {
        MetricGroup::from_fn(grp(&[4]), 8, |g| (g[0] * g[0]) as i64).unwrap()
    }

    fn z4_degenerate() -> MetricGroup {
        MetricGroup::from_fn(grp(&[4]), 4, |g| (g[0] * g[0]) as i64).unwrap()
    }

    fn hyperbolic() -> MetricGroup {
        MetricGroup::from_fn(grp(&[2, 2]), 2, |g| (g[0] * g[1]) as i64).unwrap()
    }

    fn semion(sign: i64) -> MetricGroup {
        MetricGroup::new(grp(&[2]), 4, vec![0, sign]).unwrap()
    }

    #[test]
    fn kernels() {
        assert_eq!(anisotropic_kernel(&hyperbolic()).unwrap().order(), 1);
        assert_eq!(anisotropic_kernel(&semion(1)).unwrap(), semion(1));
        assert_eq!(anisotropic_kernel(&z4()).unwrap(), z4());
        let z16 = MetricGroup::from_fn(grp(&[16]), 32, |g| (g[0] * g[0]) as i64).unwrap();
        let k = anisotropic_kernel(&z16).unwrap();
        assert_eq!(k.group().orders(), &[4]);
        assert!(find_isometry(&k, &z4(), 512).unwrap().is_some());
        assert!(matches!(
            anisotropic_kernel(&z4_degenerate()),
            Err(Error::Degenerate { radical_order: 2 })
        ));
    }

    #[test]
    fn witt_examples() {
        assert!(witt_equal(&z4(), &z4().direct_sum(&hyperbolic()), 512).unwrap());
        assert!(witt_equal(&MetricGroup::trivial(), &MetricGroup::trivial(), 512).unwrap());
        assert!(!witt_equal(&semion(1), &semion(-1), 512).unwrap());
        assert!(!witt_equal(&z4(), &semion(1), 512).unwrap());
    }

    #[test]
    fn invariant_of_nondegenerate_z4() {
        // 1 + ζ_8 + (-1) + ζ_8 = 2ζ_8
        let w = witt_invariant(&z4()).unwrap();
        assert_eq!(w.order, 4);
        assert_eq!(w.sigma, Cyclotomic::root_of_unity(8, 1).unwrap().scale(2));
        let t = witt_invariant(&MetricGroup::trivial()).unwrap();
        assert!(t.sigma.is_one());
    }

    #[test]
    fn degenerate_rejected() {
        let m = MetricGroup::new(grp(&[2]), 2, vec![0, 1]).unwrap();
        assert!(matches!(
            witt_invariant(&m),
            Err(Error::Degenerate { radical_order: 2 })
        ));
    }
}
