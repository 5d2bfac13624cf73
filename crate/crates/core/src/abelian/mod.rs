//! Finite abelian groups `Z_{n_1} × … × Z_{n_k}`, their subgroups and quotients.
//!
//! Elements are coordinate vectors. Internally they are also addressed by a
//! mixed-radix index with the last coordinate varying fastest.

pub mod snf;

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use snf::{smith, IntMat};

pub const DEFAULT_SUBGROUP_BOUND: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    orders: Vec<u64>,
}

impl TryFrom<GroupRepr> for FinAbGroup {
    type Error = Error;

    fn try_from(r: GroupRepr) -> Result<Self> {
        FinAbGroup::new(r.orders)
    }
}

impl From<FinAbGroup> for GroupRepr {
    fn from(g: FinAbGroup) -> Self {
        GroupRepr { orders: g.orders }
    }
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidInput(
                "cyclic orders must be at least 1".into(),
            ));
        }
        let mut size: u64 = 1;
        for &n in &orders {
            size = size
                .checked_mul(n)
                .filter(|&s| s <= u32::MAX as u64)
                .ok_or_else(|| Error::InvalidInput("group order does not fit in memory".into()))?;
        }
        Ok(FinAbGroup { orders })
    }

    pub fn trivial() -> Self {
        FinAbGroup { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    pub fn identity(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn check(&self, g: &[u64]) -> Result<()> {
        if g.len() != self.rank() {
            return Err(Error::InvalidElement(format!(
                "{g:?} has {} coordinates, expected {}",
                g.len(),
                self.rank()
            )));
        }
        if let Some((a, n)) = g.iter().zip(&self.orders).find(|(a, n)| a >= n) {
            return Err(Error::InvalidElement(format!(
                "{g:?}: coordinate {a} out of range for Z_{n}"
            )));
        }
        Ok(())
    }

    /// Reduce an integer vector into canonical coordinates.
    pub fn reduce(&self, v: &[i64]) -> Vec<u64> {
        v.iter()
            .zip(&self.orders)
            .map(|(&a, &n)| a.rem_euclid(n as i64) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.orders)
            .map(|(x, n)| (n - x) % n)
            .collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &[u64], k: i64) -> Vec<u64> {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &n)| ((x as i128 * k as i128).rem_euclid(n as i128)) as u64)
            .collect()
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&x, &n)| acc.lcm(&(n / x.gcd(&n))))
    }

    pub fn index_of(&self, a: &[u64]) -> usize {
        a.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.rank()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (idx % n as usize) as u64;
            idx /= n as usize;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// Unit vectors, one per cyclic factor.
    pub fn basis(&self) -> Vec<Vec<u64>> {
        (0..self.rank())
            .map(|i| {
                let mut e = self.identity();
                if self.orders[i] > 1 {
                    e[i] = 1;
                }
                e
            })
            .collect()
    }

    /// Orders form a divisibility chain and contain no trivial factor.
    pub fn is_normalized(&self) -> bool {
        self.orders.iter().all(|&n| n > 1) && self.orders.windows(2).all(|w| w[1] % w[0] == 0)
    }

    /// The invariant-factor form together with the isomorphism from `self`.
    pub fn normalized(&self) -> Quotient {
        let whole = self.whole();
        quotient(self, &Subgroup::trivial_in(self), Some(&whole))
            .expect("trivial subgroup always gives a quotient")
    }

    pub fn whole(&self) -> Subgroup {
        subgroup_generated(self, &self.basis()).expect("basis elements are valid")
    }

    /// Mixed-radix index of `a + b` without materializing vectors.
    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0usize;
        let mut place = 1usize;
        for &n in self.orders.iter().rev() {
            let n = n as usize;
            let digit = (a % n + b % n) % n;
            out += digit * place;
            place *= n;
            a /= n;
            b /= n;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FinAbGroup,
    generators: Vec<Vec<u64>>,
    indices: Vec<usize>,
}

impl Subgroup {
    pub fn trivial_in(parent: &FinAbGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            generators: Vec::new(),
            indices: vec![0],
        }
    }

    /// Build from a sorted list of mixed-radix indices already known to be closed.
    pub(crate) fn from_indices(parent: &FinAbGroup, indices: Vec<usize>) -> Self {
        let generators = greedy_generators(parent, &indices);
        Subgroup {
            parent: parent.clone(),
            generators,
            indices,
        }
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    /// Canonical generators: scanning elements in index order, keep each one
    /// not already in the span of those kept so far.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.indices.len()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        self.indices
            .iter()
            .map(|&i| self.parent.element(i))
            .collect()
    }

    pub(crate) fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, g: &[u64]) -> bool {
        self.parent.check(g).is_ok() && self.contains_idx(self.parent.index_of(g))
    }

    pub(crate) fn contains_idx(&self, idx: usize) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.indices.iter().all(|&i| other.contains_idx(i))
    }
}

fn greedy_generators(parent: &FinAbGroup, indices: &[usize]) -> Vec<Vec<u64>> {
    let mut span = vec![false; parent.order()];
    span[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for &i in indices {
        if span[i] {
            continue;
        }
        gens.push(parent.element(i));
        close_with(parent, &mut span, &mut members, i);
    }
    gens
}

/// Extend the closed set `members` (flagged in `span`) by the generator `g`.
fn close_with(parent: &FinAbGroup, span: &mut [bool], members: &mut Vec<usize>, g: usize) {
    let mut queue: VecDeque<usize> = members.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        let y = parent.add_idx(x, g);
        if !span[y] {
            span[y] = true;
            members.push(y);
            queue.push_back(y);
        }
    }
}

pub fn subgroup_generated(g: &FinAbGroup, gens: &[Vec<u64>]) -> Result<Subgroup> {
    for x in gens {
        g.check(x)?;
    }
    let mut span = vec![false; g.order()];
    span[0] = true;
    let mut members = vec![0usize];
    for x in gens {
        let i = g.index_of(x);
        if !span[i] {
            close_with(g, &mut span, &mut members, i);
        }
    }
    members.sort_unstable();
    Ok(Subgroup::from_indices(g, members))
}

/// Validates that `elements` is closed under addition, returning it as a subgroup.
pub fn subgroup_from_elements(g: &FinAbGroup, elements: &[Vec<u64>]) -> Result<Subgroup> {
    for x in elements {
        g.check(x)?;
    }
    let sub = subgroup_generated(g, elements)?;
    if sub.order() != elements.iter().collect::<HashSet<_>>().len() {
        return Err(Error::NotASubgroup(format!(
            "the given {} elements are not closed under addition",
            elements.len()
        )));
    }
    Ok(sub)
}

pub fn all_subgroups(g: &FinAbGroup, bound: usize) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if n > bound {
        return Err(Error::TooLarge {
            what: "group",
            size: n,
            bound,
        });
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let mut c = vec![0usize];
        let mut x = i;
        while x != 0 {
            c.push(x);
            x = g.add_idx(x, i);
        }
        c.sort_unstable();
        if seen.insert(c.clone()) {
            cyclic.push(c);
        }
    }
    let mut all: Vec<Vec<usize>> = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                if c.iter().all(|x| s.binary_search(x).is_ok()) {
                    continue;
                }
                let mut flags = vec![false; n];
                for &a in s {
                    for &b in c {
                        flags[g.add_idx(a, b)] = true;
                    }
                }
                let join: Vec<usize> = (0..n).filter(|&i| flags[i]).collect();
                if seen.insert(join.clone()) {
                    next.push(join.clone());
                    all.push(join);
                }
            }
        }
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = all
        .into_iter()
        .map(|idx| Subgroup::from_indices(g, idx))
        .collect();
    subs.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.generators.cmp(&b.generators))
    });
    Ok(subs)
}

/// A subquotient `K / H` in invariant-factor form with its coset map.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FinAbGroup,
    ambient: FinAbGroup,
    /// Quotient index of each ambient element of `K`; `None` outside `K`.
    image: Vec<Option<usize>>,
    /// Ambient representatives of the quotient's unit vectors.
    lifts: Vec<Vec<u64>>,
}

impl Quotient {
    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    /// Coset coordinates of `g`, or `None` when `g` lies outside the numerator subgroup.
    pub fn map(&self, g: &[u64]) -> Option<Vec<u64>> {
        self.ambient.check(g).ok()?;
        self.map_idx(self.ambient.index_of(g))
            .map(|i| self.group.element(i))
    }

    pub(crate) fn map_idx(&self, idx: usize) -> Option<usize> {
        self.image[idx]
    }

    /// An ambient representative of the coset with coordinates `x`.
    pub fn lift(&self, x: &[u64]) -> Vec<u64> {
        let mut out = self.ambient.identity();
        for (&c, e) in x.iter().zip(&self.lifts) {
            out = self.ambient.add(&out, &self.ambient.scale(e, c as i64));
        }
        out
    }

    pub fn lifts(&self) -> &[Vec<u64>] {
        &self.lifts
    }
}

/// `K / H`, with `K` defaulting to the whole group. Requires `H ≤ K`.
pub fn quotient(g: &FinAbGroup, h: &Subgroup, k: Option<&Subgroup>) -> Result<Quotient> {
    if h.parent() != g {
        return Err(Error::NotASubgroup(
            "subgroup belongs to a different group".into(),
        ));
    }
    let whole;
    let k = match k {
        Some(k) => k,
        None => {
            whole = g.whole();
            &whole
        }
    };
    if k.parent() != g || !h.is_subgroup_of(k) {
        return Err(Error::NotASubgroup(
            "denominator is not contained in numerator".into(),
        ));
    }
    let u = k.generators();
    let v = h.generators();
    let rank = g.rank();
    let a = u.len();

    // Left kernel of [U; V; diag(n)] restricted to the U block presents K/H on the generators of K.
    let mut stacked: IntMat = Vec::new();
    for x in u.iter().chain(v) {
        stacked.push(x.iter().map(|&c| c as i128).collect());
    }
    for (i, &n) in g.orders().iter().enumerate() {
        let mut row = vec![0i128; rank];
        row[i] = n as i128;
        stacked.push(row);
    }
    let s = smith(&stacked, rank);
    let relations: IntMat = s.p[s.rank..].iter().map(|row| row[..a].to_vec()).collect();

    let (orders, coord_transform, lift_coeffs) = if a == 0 {
        (Vec::new(), Vec::new(), Vec::new())
    } else {
        let t = smith(&relations, a);
        debug_assert_eq!(
            t.rank, a,
            "finite subquotient must have full-rank relations"
        );
        let keep: Vec<usize> = (0..a).filter(|&i| t.diag[i] != 1).collect();
        let orders: Vec<u64> = keep.iter().map(|&i| t.diag[i] as u64).collect();
        let transform: Vec<Vec<i128>> = (0..a)
            .map(|r| keep.iter().map(|&c| t.q[r][c]).collect())
            .collect();
        let lifts: Vec<Vec<i128>> = keep.iter().map(|&i| t.q_inv[i].clone()).collect();
        (orders, transform, lifts)
    };
    let group = FinAbGroup::new(orders)?;

    // Walk K from 0 along its generators, tracking integer coefficients on them.
    let mut image = vec![None; g.order()];
    let mut coeffs: Vec<Option<Vec<i128>>> = vec![None; g.order()];
    coeffs[0] = Some(vec![0; a]);
    let mut queue = VecDeque::from([0usize]);
    let gen_idx: Vec<usize> = u.iter().map(|x| g.index_of(x)).collect();
    while let Some(x) = queue.pop_front() {
        let cx = coeffs[x].clone().expect("visited");
        for (j, &gi) in gen_idx.iter().enumerate() {
            let y = g.add_idx(x, gi);
            if coeffs[y].is_none() {
                let mut cy = cx.clone();
                cy[j] += 1;
                coeffs[y] = Some(cy);
                queue.push_back(y);
            }
        }
    }
    for (idx, c) in coeffs.iter().enumerate() {
        if let Some(c) = c {
            let coords: Vec<i64> = (0..group.rank())
                .map(|col| {
                    let v: i128 = (0..a).map(|r| c[r] * coord_transform[r][col]).sum();
                    v.rem_euclid(group.orders()[col] as i128) as i64
                })
                .collect();
            image[idx] = Some(group.index_of(&group.reduce(&coords)));
        }
    }

    let lifts = lift_coeffs
        .iter()
        .map(|row| {
            let mut out = g.identity();
            for (gen, &c) in u.iter().zip(row) {
                let c = c.rem_euclid(g.exponent() as i128) as i64;
                out = g.add(&out, &g.scale(gen, c));
            }
            out
        })
        .collect();

    Ok(Quotient {
        group,
        ambient: g.clone(),
        image,
        lifts,
    })
}
