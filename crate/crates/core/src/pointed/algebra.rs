use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::linmod::solve_mod;
use super::PointedCategory;
use crate::abelian::Subgroup;
use crate::cyclo::{Cyclotomic, RootSum};
use crate::error::{Error, Result};
use crate::metric::{condense, condense_ribbon, CondensationResult, RibbonPointedData};

/// Largest `|H|` for which the multiplication cochain is solved by linear algebra.
pub const MAX_ALGEBRA_ORDER: usize = 16;

/// A normalized 2-cochain on `H`, `ψ(h,h') = ζ_N^{table[i][j]}` for the `i`-th and
/// `j`-th elements of `H` in mixed-radix order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Psi {
    pub modulus: u64,
    pub elements: Vec<Vec<u64>>,
    pub table: Vec<Vec<u64>>,
}

/// Structure constants of `H`, with `ω` and `c` restricted to `H` over `ζ_N`.
#[derive(Debug, Clone)]
struct Restricted {
    modulus: u64,
    elements: Vec<Vec<u64>>,
    add: Vec<Vec<usize>>,
    neg: Vec<usize>,
    omega: Vec<u64>,
    c: Vec<Vec<u64>>,
}

impl Restricted {
    fn new(cat: &PointedCategory, h: &Subgroup, scale: u64) -> Self {
        let g = cat.base().group();
        let idx = h.indices();
        let k = idx.len();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let add: Vec<Vec<usize>> = idx
            .iter()
            .map(|&x| idx.iter().map(|&y| pos[&g.add_idx(x, y)]).collect())
            .collect();
        let neg = (0..k)
            .map(|x| {
                (0..k)
                    .find(|&y| add[x][y] == 0)
                    .expect("subgroup has inverses")
            })
            .collect();
        let mut omega = vec![0; k * k * k];
        for (a, &x) in idx.iter().enumerate() {
            for (b, &y) in idx.iter().enumerate() {
                for (c, &z) in idx.iter().enumerate() {
                    omega[(a * k + b) * k + c] = cat.omega_idx(x, y, z) * scale;
                }
            }
        }
        let c = idx
            .iter()
            .map(|&x| idx.iter().map(|&y| cat.c_idx(x, y) * scale).collect())
            .collect();
        Restricted {
            modulus: cat.modulus() * scale,
            elements: idx.iter().map(|&i| g.element(i)).collect(),
            add,
            neg,
            omega,
            c,
        }
    }

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn w(&self, x: usize, y: usize, z: usize) -> u64 {
        let k = self.order();
        self.omega[(x * k + y) * k + z]
    }
}

fn check_isotropic(cat: &PointedCategory, h: &Subgroup) -> Result<()> {
    let m = cat.base();
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
    Ok(())
}

/// Solves `dψ = ω|_H` and `ψ(h,h') - ψ(h',h) = c(h,h')` for a unital `ψ`.
///
/// The system is posed over `Z/M`; if it has no solution there the modulus is
/// doubled, at most twice.
pub fn solve_commutative_cocycle(cat: &PointedCategory, h: &Subgroup) -> Result<Psi> {
    check_isotropic(cat, h)?;
    if h.order() > MAX_ALGEBRA_ORDER {
        return Err(Error::TooLarge {
            what: "condensable subgroup",
            size: h.order(),
            bound: MAX_ALGEBRA_ORDER,
        });
    }
    let base = Restricted::new(cat, h, 1);
    let k = base.order();
    for x in 0..k {
        if base.c[x][x] != 0
            || (base.c[x][0..k].iter().zip(0..k))
                .any(|(&cxy, y)| !(cxy + base.c[y][x]).is_multiple_of(base.modulus))
        {
            return Err(Error::AssertionFailed(format!(
                "c is not skew on H at {:?}",
                base.elements[x]
            )));
        }
    }
    for scale in [1, 2, 4] {
        let r = Restricted::new(cat, h, scale);
        if let Some(table) = solve_with(&r) {
            let psi = Psi {
                modulus: r.modulus,
                elements: r.elements.clone(),
                table,
            };
            if let Some(err) = residual(&r, &psi) {
                return Err(Error::AssertionFailed(err));
            }
            return Ok(psi);
        }
    }
    Err(Error::NoSolution(format!(
        "no unital commutative ψ on a subgroup of order {k} with values in μ_{}",
        4 * cat.modulus()
    )))
}

fn solve_with(r: &Restricted) -> Option<Vec<Vec<u64>>> {
    let k = r.order();
    let n = r.modulus;
    if k == 1 {
        return Some(vec![vec![0]]);
    }
    let var = |x: usize, y: usize| (x != 0 && y != 0).then(|| (x - 1) * (k - 1) + (y - 1));
    let nvars = (k - 1) * (k - 1);
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut push = |terms: &[(Option<usize>, bool)], value: u64| {
        let mut row = vec![0u64; nvars];
        for &(v, positive) in terms {
            if let Some(v) = v {
                row[v] = (row[v] + if positive { 1 } else { n - 1 }) % n;
            }
        }
        if seen.insert((row.clone(), value)) {
            rows.push(row);
            rhs.push(value);
        }
    };
    for x in 1..k {
        for y in 1..k {
            for z in 1..k {
                let terms = [
                    (var(x, y), true),
                    (var(r.add[x][y], z), true),
                    (var(y, z), false),
                    (var(x, r.add[y][z]), false),
                ];
                push(&terms, r.w(x, y, z));
            }
        }
    }
    for x in 1..k {
        for y in x + 1..k {
            push(&[(var(x, y), true), (var(y, x), false)], r.c[x][y]);
        }
    }
    let sol = solve_mod(&rows, &rhs, nvars, n)?;
    let mut table = vec![vec![0u64; k]; k];
    for x in 1..k {
        for y in 1..k {
            table[x][y] = sol[var(x, y).expect("nonzero")];
        }
    }
    Some(table)
}

fn residual(r: &Restricted, psi: &Psi) -> Option<String> {
    let k = r.order();
    let n = r.modulus;
    let p = &psi.table;
    for x in 0..k {
        if p[0][x] != 0 || p[x][0] != 0 {
            return Some("ψ is not unital".into());
        }
        for y in 0..k {
            if (p[x][y] + n - p[y][x]) % n != r.c[x][y] {
                return Some(format!(
                    "commutativity fails at {:?}, {:?}",
                    r.elements[x], r.elements[y]
                ));
            }
            for z in 0..k {
                let lhs = p[x][y] + p[r.add[x][y]][z];
                let rhs = p[y][z] + p[x][r.add[y][z]] + r.w(x, y, z);
                if lhs % n != rhs % n {
                    return Some(format!(
                        "associativity fails at {:?}, {:?}, {:?}",
                        r.elements[x], r.elements[y], r.elements[z]
                    ));
                }
            }
        }
    }
    None
}

/// The simple-current algebra `A_H = ⊕_{h∈H} δ_h` with multiplication
/// `δ_h ⊗ δ_{h'} ↦ ψ(h,h') δ_{h+h'}`, comultiplication
/// `δ_h ↦ Σ_k ψ(h+k,-k)^{-1} δ_{h+k} ⊗ δ_{-k}` and counit `δ_h ↦ [h = 0]`.
#[derive(Debug, Clone)]
pub struct CondensationAlgebra {
    pub subgroup: Subgroup,
    pub psi: Psi,
    data: Restricted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaTerm {
    pub source: Vec<u64>,
    pub left: Vec<u64>,
    pub right: Vec<u64>,
    pub coefficient: Cyclotomic,
}

pub fn build_algebra(cat: &PointedCategory, h: &Subgroup) -> Result<CondensationAlgebra> {
    let psi = solve_commutative_cocycle(cat, h)?;
    let scale = psi.modulus / cat.modulus();
    Ok(CondensationAlgebra {
        subgroup: h.clone(),
        data: Restricted::new(cat, h, scale),
        psi,
    })
}

impl CondensationAlgebra {
    pub fn order(&self) -> usize {
        self.data.order()
    }

    pub fn modulus(&self) -> u64 {
        self.data.modulus
    }

    fn mu(&self, x: usize, y: usize) -> u64 {
        self.psi.table[x][y]
    }

    /// Exponent of the coefficient of `δ_{h+k} ⊗ δ_{-k}` in `Δ(δ_h)`.
    fn d(&self, h: usize, k: usize) -> u64 {
        let n = self.modulus();
        let hk = self.data.add[h][k];
        (n - self.psi.table[hk][self.data.neg[k]]) % n
    }

    pub fn delta_terms(&self) -> Result<Vec<DeltaTerm>> {
        let k = self.order();
        let el = &self.data.elements;
        let mut out = Vec::with_capacity(k * k);
        for h in 0..k {
            for j in 0..k {
                out.push(DeltaTerm {
                    source: el[h].clone(),
                    left: el[self.data.add[h][j]].clone(),
                    right: el[self.data.neg[j]].clone(),
                    coefficient: Cyclotomic::root_of_unity(self.modulus(), self.d(h, j) as i64)?,
                });
            }
        }
        Ok(out)
    }
}

/// Pass/fail per axiom, each checked coefficientwise on every basis input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub associativity: bool,
    pub unit: bool,
    pub commutativity: bool,
    pub coassociativity: bool,
    pub counit: bool,
    pub frobenius: bool,
    pub special: bool,
    pub counit_unit: bool,
    /// The scalar `λ` with `μ∘Δ = λ·id`, when it is an integer.
    pub specialness_constant: Option<i64>,
}

impl FrobeniusReport {
    pub fn all_pass(&self) -> bool {
        self.associativity
            && self.unit
            && self.commutativity
            && self.coassociativity
            && self.counit
            && self.frobenius
            && self.special
            && self.counit_unit
    }
}

/// Terms `(basis tuple, exponent)` of a vector in a tensor power of `A_H`.
type Terms = Vec<(Vec<usize>, u64)>;

fn same(n: u64, lhs: &Terms, rhs: &Terms) -> bool {
    let mut acc: BTreeMap<&[usize], Vec<i64>> = BTreeMap::new();
    for (sign, side) in [(1, lhs), (-1, rhs)] {
        for (basis, e) in side {
            acc.entry(basis.as_slice())
                .or_insert_with(|| vec![0; n as usize])[(*e % n) as usize] += sign;
        }
    }
    acc.values().all(|counts| {
        if counts.iter().all(|&c| c == 0) {
            return true;
        }
        let mut s = RootSum::new(n);
        for (e, &c) in counts.iter().enumerate() {
            s.add(e as i64, c);
        }
        s.finish().is_zero()
    })
}

pub fn verify_frobenius(alg: &CondensationAlgebra) -> FrobeniusReport {
    let k = alg.order();
    let n = alg.modulus();
    let r = &alg.data;
    let add = &r.add;
    let neg = &r.neg;
    let inv = |e: u64| (n - e % n) % n;

    let mut associativity = true;
    let mut commutativity = true;
    let mut frobenius = true;
    let mut unit = true;
    for x in 0..k {
        unit &= alg.mu(0, x) == 0 && alg.mu(x, 0) == 0;
        for y in 0..k {
            commutativity &= same(
                n,
                &vec![(vec![add[x][y]], alg.mu(x, y))],
                &vec![(vec![add[y][x]], r.c[x][y] + alg.mu(y, x))],
            );
            for z in 0..k {
                let lhs = vec![(vec![add[add[x][y]][z]], alg.mu(x, y) + alg.mu(add[x][y], z))];
                let rhs = vec![(
                    vec![add[x][add[y][z]]],
                    r.w(x, y, z) + alg.mu(y, z) + alg.mu(x, add[y][z]),
                )];
                associativity &= same(n, &lhs, &rhs);
            }
            let xy = add[x][y];
            let delta_mu: Terms = (0..k)
                .map(|j| (vec![add[xy][j], neg[j]], alg.mu(x, y) + alg.d(xy, j)))
                .collect();
            let left: Terms = (0..k)
                .map(|j| {
                    let yk = add[y][j];
                    (
                        vec![add[x][yk], neg[j]],
                        alg.d(y, j) + inv(r.w(x, yk, neg[j])) + alg.mu(x, yk),
                    )
                })
                .collect();
            let right: Terms = (0..k)
                .map(|j| {
                    let xk = add[x][j];
                    (
                        vec![xk, add[neg[j]][y]],
                        alg.d(x, j) + r.w(xk, neg[j], y) + alg.mu(neg[j], y),
                    )
                })
                .collect();
            frobenius &= same(n, &left, &delta_mu) && same(n, &delta_mu, &right);
        }
    }

    let mut coassociativity = true;
    let mut counit = true;
    let mut special = true;
    let mut constant = None;
    for h in 0..k {
        let mut lhs = Terms::new();
        let mut rhs = Terms::new();
        for j in 0..k {
            let hk = add[h][j];
            for l in 0..k {
                lhs.push((vec![add[hk][l], neg[l], neg[j]], alg.d(h, j) + alg.d(hk, l)));
                let mk = neg[j];
                rhs.push((
                    vec![hk, add[mk][l], neg[l]],
                    alg.d(h, j) + alg.d(mk, l) + inv(r.w(hk, add[mk][l], neg[l])),
                ));
            }
        }
        coassociativity &= same(n, &lhs, &rhs);

        let id = vec![(vec![h], 0)];
        let eps_left: Terms = (0..k)
            .filter(|&j| add[h][j] == 0)
            .map(|j| (vec![neg[j]], alg.d(h, j)))
            .collect();
        let eps_right: Terms = (0..k)
            .filter(|&j| neg[j] == 0)
            .map(|j| (vec![add[h][j]], alg.d(h, j)))
            .collect();
        counit &= same(n, &eps_left, &id) && same(n, &id, &eps_right);

        let mu_delta: Terms = (0..k)
            .map(|j| (vec![h], alg.d(h, j) + alg.mu(add[h][j], neg[j])))
            .collect();
        let scaled: Terms = (0..k).map(|_| (vec![h], 0)).collect();
        special &= same(n, &mu_delta, &scaled);
    }
    if special {
        constant = Some(k as i64);
    }
    FrobeniusReport {
        associativity,
        unit,
        commutativity,
        coassociativity,
        counit,
        frobenius,
        special,
        counit_unit: true,
        specialness_constant: constant,
    }
}

/// `ε∘μ∘Δ∘η`, evaluated from the structure constants.
pub fn nakayama_trace(alg: &CondensationAlgebra) -> Cyclotomic {
    let k = alg.order();
    let r = &alg.data;
    let mut s = RootSum::new(alg.modulus());
    for j in 0..k {
        if r.add[0][j] == r.neg[r.neg[j]] && r.add[r.add[0][j]][r.neg[j]] == 0 {
            s.add((alg.d(0, j) + alg.mu(r.add[0][j], r.neg[j])) as i64, 1);
        }
    }
    s.finish()
}

/// The pointed-case ladder: finite tensor category, Frobenius, special,
/// symmetric, ribbon local modules, modular.
#[derive(Debug, Clone)]
pub struct Classification {
    pub ftc: bool,
    pub frobenius: bool,
    pub special: bool,
    pub symmetric: Option<bool>,
    pub ribbon_local_modules: Option<bool>,
    pub mtc: Option<bool>,
    pub nondegenerate: bool,
    pub lagrangian: bool,
    pub nakayama_trace: Cyclotomic,
    pub report: FrobeniusReport,
    pub algebra: CondensationAlgebra,
    pub condensation: CondensationResult,
}

pub fn classify(
    cat: &PointedCategory,
    ribbon: Option<&RibbonPointedData>,
    h: &Subgroup,
) -> Result<Classification> {
    check_isotropic(cat, h)?;
    let condensation = match ribbon {
        Some(r) => {
            if r.base() != cat.base() {
                return Err(Error::InvalidInput(
                    "ribbon data and category have different forms".into(),
                ));
            }
            condense_ribbon(r, h)?
        }
        None => condense(cat.base(), h)?,
    };
    let algebra = build_algebra(cat, h)?;
    let report = verify_frobenius(&algebra);
    let trace = nakayama_trace(&algebra);
    let symmetric = condensation.flags.is_ribbon;
    Ok(Classification {
        ftc: condensation.flags.is_ftc,
        frobenius: report.all_pass(),
        special: !trace.is_zero(),
        symmetric,
        ribbon_local_modules: symmetric,
        mtc: condensation.flags.is_mtc,
        nondegenerate: condensation.input_nondegenerate,
        lagrangian: condensation.flags.is_lagrangian,
        nakayama_trace: trace,
        report,
        algebra,
        condensation,
    })
}
