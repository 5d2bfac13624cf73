mod common;

use std::time::Instant;

use condensate::abelian::DEFAULT_SUBGROUP_BOUND;
use condensate::pointed::{
    build_algebra, build_category, classify, nakayama_trace, solve_commutative_cocycle,
    verify_frobenius, PointedCategory, Psi,
};
use condensate::{Cyclotomic, RibbonPointedData};

use common::corpus;

fn zeta(n: u64, k: u64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k as i64).unwrap()
}

/// Associativity of `δ_x δ_y = ψ(x,y) δ_{x+y}` up to `ω`, commutativity up to `c`, and unitality.
fn twisted_algebra_laws(cat: &PointedCategory, psi: &Psi) -> bool {
    let g = cat.base().group();
    let n = psi.modulus;
    let els = &psi.elements;
    let pos = |v: &Vec<u64>| els.iter().position(|e| e == v).unwrap();
    let p = |x: usize, y: usize| zeta(n, psi.table[x][y]);
    for x in 0..els.len() {
        if !p(0, x).is_one() || !p(x, 0).is_one() {
            return false;
        }
        for y in 0..els.len() {
            let xy = pos(&g.add(&els[x], &els[y]));
            let braided = &cat.c(&els[x], &els[y]).unwrap() * &p(y, x);
            if braided != p(x, y) {
                return false;
            }
            for z in 0..els.len() {
                let yz = pos(&g.add(&els[y], &els[z]));
                let lhs = &p(x, y) * &p(xy, z);
                let omega = cat.omega(&els[x], &els[y], &els[z]).unwrap();
                let rhs = &(&omega * &p(y, z)) * &p(x, yz);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn coherence_on_corpus_up_to_order_32() {
    let start = Instant::now();
    for m in corpus().iter().filter(|m| m.order() <= 32) {
        let cat = build_category(m).unwrap();
        let report = cat.check_coherence();
        assert!(report.all_pass(), "{:?}: {report:?}", m.group().orders());
        assert_eq!(report.checked_order, m.order());
        assert!(cat.check_balancing());
        for g in m.group().elements() {
            assert_eq!(cat.c(&g, &g).unwrap(), m.q(&g).unwrap());
        }
    }
    assert!(start.elapsed().as_secs() < 120);
}

#[test]
fn frobenius_suite_on_corpus() {
    let start = Instant::now();
    let mut checked = 0;
    for m in corpus() {
        let cat = build_category(&m).unwrap();
        for h in m.isotropic_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap() {
            let psi = solve_commutative_cocycle(&cat, &h).unwrap();
            assert!(
                twisted_algebra_laws(&cat, &psi),
                "{:?} on {:?}",
                m.group().orders(),
                h.generators()
            );
            let alg = build_algebra(&cat, &h).unwrap();
            let report = verify_frobenius(&alg);
            assert!(report.all_pass(), "{report:?}");
            assert_eq!(
                nakayama_trace(&alg),
                Cyclotomic::from_integer(1, h.order() as i64)
            );
            checked += 1;
        }
    }
    assert!(checked >= 40, "only {checked} subgroups");
    assert!(start.elapsed().as_secs() < 120);
}

#[test]
fn classify_flags_are_consistent() {
    for m in corpus() {
        let cat = build_category(&m).unwrap();
        let ribbon = RibbonPointedData::from_form(m.clone());
        for h in m.isotropic_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap() {
            let c = classify(&cat, Some(&ribbon), &h).unwrap();
            assert!(c.frobenius && c.special && c.ftc);
            // θ = q vanishes on an isotropic subgroup
            assert_eq!(c.symmetric, Some(true));
            assert_eq!(c.mtc, Some(m.is_nondegenerate()));
            let plain = classify(&cat, None, &h).unwrap();
            assert_eq!(plain.symmetric, None);
        }
    }
}
