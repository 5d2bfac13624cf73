//! The pointed braided category `C(G,q)` as explicit data: an abelian 3-cocycle
//! `(ω, c)` on `G`, simple-current algebras `A_H` and their Frobenius structure.
//!
//! All structure constants are roots of unity and are handled as exponents.
//! Coherence conventions, written additively in exponents:
//!
//! * pentagon: `ω(x+y,z,w) + ω(x,y,z+w) = ω(x,y,z) + ω(x,y+z,w) + ω(y,z,w)`
//! * hexagon 1: `ω(y,z,x) + c(x,y+z) + ω(x,y,z) = c(x,y) + ω(y,x,z) + c(x,z)`
//! * hexagon 2: `-ω(z,x,y) + c(x+y,z) - ω(x,y,z) = c(x,z) - ω(x,z,y) + c(y,z)`

mod algebra;
pub mod linmod;

pub use algebra::{
    build_algebra, classify, nakayama_trace, solve_commutative_cocycle, verify_frobenius,
    Classification, CondensationAlgebra, FrobeniusReport, Psi, MAX_ALGEBRA_ORDER,
};

use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::metric::MetricGroup;

/// Groups up to this order get the full brute-force coherence suite on construction.
pub const COHERENCE_CHECK_BOUND: usize = 64;

#[derive(Debug, Clone)]
pub struct PointedCategory {
    base: MetricGroup,
    coords: Vec<Vec<u64>>,
    /// `q(e_i) = ζ_M^{t_i}`
    t: Vec<u64>,
    /// `ω` jumps by `(-1)^{a_i}` for each carry in coordinate `i`.
    a: Vec<u64>,
    /// `b(e_i, e_j) = ζ_M^{beta[i][j]}`
    beta: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub normalization: bool,
    pub diagonal: bool,
    pub hexagon1: bool,
    pub hexagon2: bool,
    pub pentagon: bool,
    /// Number of group elements the checks ranged over.
    pub checked_order: usize,
}

impl CoherenceReport {
    pub fn all_pass(&self) -> bool {
        self.normalization && self.diagonal && self.hexagon1 && self.hexagon2 && self.pentagon
    }
}

/// The standard representative on the given cyclic decomposition:
/// `c(x,y) = Σ_i t_i x_i y_i + Σ_{i<j} β_ij x_i y_j` and
/// `ω(x,y,z) = Σ_i (M/2)·a_i·x_i·⌊(y_i+z_i)/n_i⌋`, with `a_i = 2 n_i t_i / M`.
pub fn build_category(m: &MetricGroup) -> Result<PointedCategory> {
    let cat = build_unchecked(m)?;
    if m.order() <= COHERENCE_CHECK_BOUND {
        let report = cat.check_coherence();
        if !report.all_pass() {
            return Err(Error::ConstructionFailed(format!("{report:?}")));
        }
    } else if !cat.check_diagonal_and_normalization() {
        return Err(Error::ConstructionFailed(
            "diagonal or normalization law fails".into(),
        ));
    }
    Ok(cat)
}

fn build_unchecked(m: &MetricGroup) -> Result<PointedCategory> {
    let g = m.group();
    let modulus = m.modulus();
    let basis = g.basis();
    let t: Vec<u64> = basis
        .iter()
        .map(|e| m.q_exponent(e))
        .collect::<Result<_>>()?;
    let a = t
        .iter()
        .zip(g.orders())
        .map(|(&ti, &n)| {
            let num = 2 * n * ti;
            if num % modulus != 0 {
                return Err(Error::ConstructionFailed(format!(
                    "q(e) = ζ_{modulus}^{ti} is not a 2·{n}-th root of unity"
                )));
            }
            Ok((num / modulus) % 2)
        })
        .collect::<Result<Vec<_>>>()?;
    let beta = basis
        .iter()
        .map(|ei| basis.iter().map(|ej| m.bilinear_exponent(ei, ej)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(PointedCategory {
        base: m.clone(),
        coords: g.elements().collect(),
        t,
        a,
        beta,
    })
}

impl PointedCategory {
    pub fn base(&self) -> &MetricGroup {
        &self.base
    }

    pub fn modulus(&self) -> u64 {
        self.base.modulus()
    }

    /// Exponent of `ω(x,y,z)` over `ζ_M`, on mixed-radix indices.
    pub fn omega_idx(&self, x: usize, y: usize, z: usize) -> u64 {
        let m = self.modulus();
        let orders = self.base.group().orders();
        let (x, y, z) = (&self.coords[x], &self.coords[y], &self.coords[z]);
        let mut parity = 0;
        for i in 0..orders.len() {
            let carry = (y[i] + z[i]) / orders[i];
            parity += self.a[i] * x[i] * carry;
        }
        if parity % 2 == 0 {
            0
        } else {
            m / 2
        }
    }

    /// Exponent of `c(x,y)` over `ζ_M`, on mixed-radix indices.
    pub fn c_idx(&self, x: usize, y: usize) -> u64 {
        let m = self.modulus();
        let (x, y) = (&self.coords[x], &self.coords[y]);
        let mut e = 0u64;
        for i in 0..x.len() {
            e = (e + self.t[i] * (x[i] * y[i] % m)) % m;
            for j in i + 1..x.len() {
                e = (e + self.beta[i][j] * (x[i] * y[j] % m)) % m;
            }
        }
        e
    }

    pub fn omega(&self, x: &[u64], y: &[u64], z: &[u64]) -> Result<Cyclotomic> {
        let g = self.base.group();
        for v in [x, y, z] {
            g.check(v)?;
        }
        let e = self.omega_idx(g.index_of(x), g.index_of(y), g.index_of(z));
        Cyclotomic::root_of_unity(self.modulus(), e as i64)
    }

    pub fn c(&self, x: &[u64], y: &[u64]) -> Result<Cyclotomic> {
        let g = self.base.group();
        g.check(x)?;
        g.check(y)?;
        Cyclotomic::root_of_unity(
            self.modulus(),
            self.c_idx(g.index_of(x), g.index_of(y)) as i64,
        )
    }

    fn check_diagonal_and_normalization(&self) -> bool {
        let n = self.base.order();
        let diagonal = (0..n).all(|x| self.c_idx(x, x) == self.base.q_idx(x));
        let norm = (0..n).all(|x| self.c_idx(x, 0) == 0 && self.c_idx(0, x) == 0)
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    self.omega_idx(0, x, y) == 0
                        && self.omega_idx(x, 0, y) == 0
                        && self.omega_idx(x, y, 0) == 0
                })
            });
        diagonal && norm
    }

    /// Brute-force pentagon on all quadruples and both hexagons on all triples.
    pub fn check_coherence(&self) -> CoherenceReport {
        let n = self.base.order();
        let m = self.modulus();
        let g = self.base.group();
        let add: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| g.add_idx(x, y)).collect())
            .collect();
        let c: Vec<Vec<u64>> = (0..n)
            .map(|x| (0..n).map(|y| self.c_idx(x, y)).collect())
            .collect();
        let mut omega = vec![0u64; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    omega[(x * n + y) * n + z] = self.omega_idx(x, y, z);
                }
            }
        }
        let w = |x: usize, y: usize, z: usize| omega[(x * n + y) * n + z];

        let diagonal = (0..n).all(|x| c[x][x] == self.base.q_idx(x));
        let normalization = (0..n).all(|x| c[x][0] == 0 && c[0][x] == 0)
            && (0..n)
                .all(|x| (0..n).all(|y| w(0, x, y) == 0 && w(x, 0, y) == 0 && w(x, y, 0) == 0));

        let mut hexagon1 = true;
        let mut hexagon2 = true;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l1 = w(y, z, x) + c[x][add[y][z]] + w(x, y, z);
                    let r1 = c[x][y] + w(y, x, z) + c[x][z];
                    hexagon1 &= l1 % m == r1 % m;
                    let l2 = c[add[x][y]][z] + 2 * m - w(z, x, y) - w(x, y, z);
                    let r2 = c[x][z] + m - w(x, z, y) + c[y][z];
                    hexagon2 &= l2 % m == r2 % m;
                }
            }
        }

        let mut pentagon = true;
        'outer: for x in 0..n {
            for y in 0..n {
                let xy = add[x][y];
                for z in 0..n {
                    let yz = add[y][z];
                    let wxyz = w(x, y, z);
                    for v in 0..n {
                        let lhs = w(xy, z, v) + w(x, y, add[z][v]);
                        let rhs = wxyz + w(x, yz, v) + w(y, z, v);
                        if lhs % m != rhs % m {
                            pentagon = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        CoherenceReport {
            normalization,
            diagonal,
            hexagon1,
            hexagon2,
            pentagon,
            checked_order: n,
        }
    }

    /// `θ(g) := q(g)` satisfies `θ(g+h) = θ(g)θ(h)c(g,h)c(h,g)` on all pairs.
    pub fn check_balancing(&self) -> bool {
        let n = self.base.order();
        let m = self.modulus();
        let g = self.base.group();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let lhs = self.base.q_idx(g.add_idx(x, y));
                let rhs =
                    self.base.q_idx(x) + self.base.q_idx(y) + self.c_idx(x, y) + self.c_idx(y, x);
                lhs == rhs % m
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;

    fn metric(orders: &[u64], modulus: u64, f: impl Fn(&[u64]) -> i64) -> MetricGroup {
        MetricGroup::from_fn(FinAbGroup::new(orders.to_vec()).unwrap(), modulus, f).unwrap()
    }

    #[test]
    fn trivial_group() {
        let cat = build_category(&MetricGroup::trivial()).unwrap();
        assert_eq!(cat.omega_idx(0, 0, 0), 0);
        assert_eq!(cat.c_idx(0, 0), 0);
    }

    #[test]
    fn semion_has_nontrivial_associator() {
        let cat = build_category(&metric(&[2], 4, |g| g[0] as i64)).unwrap();
        assert_eq!(
            cat.c(&[1], &[1]).unwrap(),
            Cyclotomic::root_of_unity(4, 1).unwrap()
        );
        assert_eq!(
            cat.omega(&[1], &[1], &[1]).unwrap(),
            Cyclotomic::from_integer(4, -1)
        );
    }

    #[test]
    fn coherence_on_small_groups() {
        let cases = [
            metric(&[4], 4, |g| (g[0] * g[0]) as i64),
            metric(&[4], 8, |g| (g[0] * g[0]) as i64),
            metric(&[2, 4], 16, |g| {
                (4 * g[0] * g[0] + 8 * g[0] * g[1] + 2 * g[1] * g[1]) as i64
            }),
            metric(&[3, 6], 12, |g| {
                (4 * g[0] * g[0] + 4 * g[0] * g[1] + g[1] * g[1]) as i64
            }),
        ];
        for m in &cases {
            let cat = build_category(m).unwrap();
            assert!(cat.check_coherence().all_pass());
            assert!(cat.check_balancing());
        }
    }
}
