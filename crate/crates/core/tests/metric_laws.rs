mod common;

use std::collections::BTreeSet;

use condensate::abelian::{all_subgroups, quotient, DEFAULT_SUBGROUP_BOUND};
use condensate::metric::{
    anisotropic_kernel, condense, witt_equal, witt_invariant, MetricJson, DEFAULT_ISO_BOUND,
};
use condensate::{Cyclotomic, FinAbGroup, MetricGroup};
use proptest::prelude::*;

use common::{corpus, diagonal_form};

fn b_exp(m: &MetricGroup, x: &[u64], y: &[u64]) -> u64 {
    let g = m.group();
    let modulus = m.modulus() as i64;
    let q = |v: &[u64]| m.q_exponent(v).unwrap() as i64;
    (q(&g.add(x, y)) - q(x) - q(y)).rem_euclid(modulus) as u64
}

fn brute_radical(m: &MetricGroup) -> BTreeSet<Vec<u64>> {
    let els: Vec<Vec<u64>> = m.group().elements().collect();
    els.iter()
        .filter(|x| els.iter().all(|y| b_exp(m, x, y) == 0))
        .cloned()
        .collect()
}

/// All subgroups, as closures of every tuple of `rank` elements.
fn brute_subgroups(g: &FinAbGroup) -> BTreeSet<BTreeSet<Vec<u64>>> {
    let els: Vec<Vec<u64>> = g.elements().collect();
    let mut out = BTreeSet::new();
    let r = g.rank().max(1);
    let n = els.len();
    let mut idx = vec![0usize; r];
    loop {
        let mut closure: BTreeSet<Vec<u64>> = BTreeSet::from([g.identity()]);
        loop {
            let mut next = closure.clone();
            for x in &closure {
                for &i in &idx {
                    next.insert(g.add(x, &els[i]));
                }
            }
            if next.len() == closure.len() {
                break;
            }
            closure = next;
        }
        out.insert(closure);
        let mut k = 0;
        while k < r {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
    }
    out
}

fn brute_gauss(m: &MetricGroup) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(m.modulus());
    for g in m.group().elements() {
        acc = &acc
            + &Cyclotomic::root_of_unity(m.modulus(), m.q_exponent(&g).unwrap() as i64).unwrap();
    }
    acc
}

#[test]
fn corpus_is_large_and_valid() {
    let c = corpus();
    assert!(c.len() >= 20);
    assert!(c.iter().all(|m| m.order() <= 64 && m.validate().valid));
    assert!(c.iter().filter(|m| m.is_nondegenerate()).count() >= 20);
}

#[test]
fn radical_matches_brute_force() {
    for m in corpus() {
        let r: BTreeSet<Vec<u64>> = m.radical().elements().into_iter().collect();
        assert_eq!(r, brute_radical(&m), "{:?}", MetricJson::from(&m));
        assert_eq!(m.is_nondegenerate(), r.len() == 1);
    }
}

#[test]
fn subgroup_lattice_matches_brute_force() {
    for m in corpus().iter().filter(|m| m.order() <= 16) {
        let g = m.group();
        let ours: BTreeSet<BTreeSet<Vec<u64>>> = all_subgroups(g, DEFAULT_SUBGROUP_BOUND)
            .unwrap()
            .iter()
            .map(|s| s.elements().into_iter().collect())
            .collect();
        assert_eq!(ours, brute_subgroups(g), "{:?}", g.orders());
        let iso: BTreeSet<BTreeSet<Vec<u64>>> = m
            .isotropic_subgroups(DEFAULT_SUBGROUP_BOUND)
            .unwrap()
            .iter()
            .map(|s| s.elements().into_iter().collect())
            .collect();
        let brute_iso: BTreeSet<_> = brute_subgroups(g)
            .into_iter()
            .filter(|s| s.iter().all(|x| m.q_exponent(x).unwrap() == 0))
            .collect();
        assert_eq!(iso, brute_iso);
    }
}

#[test]
fn gauss_sum_matches_brute_force() {
    for m in corpus() {
        let tau = m.gauss_sum().unwrap();
        assert_eq!(tau, brute_gauss(&m));
        if m.is_nondegenerate() {
            let norm = &tau * &tau.conj();
            assert_eq!(norm, Cyclotomic::from_integer(1, m.order() as i64));
        }
    }
}

#[test]
fn condensation_laws_on_corpus() {
    for m in corpus().into_iter().filter(MetricGroup::is_nondegenerate) {
        for h in m.isotropic_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap() {
            let r = condense(&m, &h).unwrap();
            let c = &r.condensed;
            assert_eq!(c.order() * h.order() * h.order(), m.order());
            assert!(c.validate().valid);
            assert!(c.is_nondegenerate());
            let lhs = m.gauss_sum().unwrap();
            let rhs = c.gauss_sum().unwrap().scale(h.order() as i64);
            assert_eq!(lhs, rhs);
            assert_eq!(r.flags.is_lagrangian, c.order() == 1);
            // the induced form is q evaluated on lifts
            for x in c.group().elements() {
                let lift = r.coset_map.lift(&x);
                assert_eq!(c.q(&x).unwrap(), m.q(&lift).unwrap());
            }
        }
    }
}

#[test]
fn coset_map_is_a_homomorphism_onto_the_quotient() {
    for m in corpus() {
        for h in m.isotropic_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap() {
            let perp = m.orthogonal(&h);
            let q = quotient(m.group(), &h, Some(&perp)).unwrap();
            let els = perp.elements();
            for x in &els {
                for y in &els {
                    let sum = m.group().add(x, y);
                    let lhs = q.map(&sum).unwrap();
                    let rhs = q.group.add(&q.map(x).unwrap(), &q.map(y).unwrap());
                    assert_eq!(lhs, rhs);
                }
                assert_eq!(q.map(x).unwrap() == q.group.identity(), h.contains(x));
            }
        }
    }
}

#[test]
fn witt_laws_on_corpus() {
    let nondeg: Vec<MetricGroup> = corpus()
        .into_iter()
        .filter(MetricGroup::is_nondegenerate)
        .collect();
    for m in &nondeg {
        let k = anisotropic_kernel(m).unwrap();
        assert!(k.isotropic_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap().len() == 1);
        assert!(k
            .group()
            .elements()
            .skip(1)
            .all(|g| k.q_exponent(&g).unwrap() != 0));
        for h in m.isotropic_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap() {
            let c = condense(m, &h).unwrap().condensed;
            assert!(witt_equal(m, &c, DEFAULT_ISO_BOUND).unwrap());
            let (a, b) = (witt_invariant(m).unwrap(), witt_invariant(&c).unwrap());
            let phase = |w: &condensate::metric::WittInvariant| {
                &w.sigma * &w.sigma.conj().inverse().unwrap()
            };
            assert_eq!(phase(&a), phase(&b));
        }
    }
    let sample = &nondeg[..10];
    for a in sample {
        assert!(witt_equal(a, a, DEFAULT_ISO_BOUND).unwrap());
        for b in sample {
            let ab = witt_equal(a, b, DEFAULT_ISO_BOUND).unwrap();
            assert_eq!(ab, witt_equal(b, a, DEFAULT_ISO_BOUND).unwrap());
            for c in sample {
                if ab && witt_equal(b, c, DEFAULT_ISO_BOUND).unwrap() {
                    assert!(witt_equal(a, c, DEFAULT_ISO_BOUND).unwrap());
                }
            }
        }
    }
}

#[test]
fn semion_and_conjugate_are_witt_inequivalent() {
    let semion = diagonal_form(&[2], &[1], &[]).unwrap();
    let conj = diagonal_form(&[2], &[3], &[]).unwrap();
    assert!(!witt_equal(&semion, &conj, DEFAULT_ISO_BOUND).unwrap());
    let both = semion.direct_sum(&conj);
    assert!(witt_equal(&both, &MetricGroup::trivial(), DEFAULT_ISO_BOUND).unwrap());
}

#[test]
fn json_round_trip() {
    for m in corpus() {
        let text = serde_json::to_string(&MetricJson::from(&m)).unwrap();
        let back: MetricJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.metric().unwrap(), m);
    }
}

fn arb_form() -> impl Strategy<Value = MetricGroup> {
    let orders = prop_oneof![
        Just(vec![2u64]),
        Just(vec![3]),
        Just(vec![4]),
        Just(vec![6]),
        Just(vec![8]),
        Just(vec![2, 2]),
        Just(vec![2, 4]),
        Just(vec![3, 3]),
        Just(vec![4, 4]),
        Just(vec![2, 6]),
        Just(vec![2, 2, 2]),
    ];
    orders
        .prop_flat_map(|o| {
            let r = o.len();
            let a = o.iter().map(|&n| 0..2 * n).collect::<Vec<_>>();
            let c = proptest::collection::vec(0u64..8, r * (r.saturating_sub(1)) / 2);
            (Just(o), a, c)
        })
        .prop_filter_map("not a quadratic form", |(o, a, c)| {
            diagonal_form(&o, &a, &c)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polarization_is_a_symmetric_bicharacter(m in arb_form()) {
        let els: Vec<Vec<u64>> = m.group().elements().collect();
        let modulus = m.modulus();
        for x in &els {
            for y in &els {
                prop_assert_eq!(b_exp(&m, x, y), b_exp(&m, y, x));
                for z in &els {
                    let lhs = b_exp(&m, &m.group().add(x, y), z);
                    prop_assert_eq!(lhs, (b_exp(&m, x, z) + b_exp(&m, y, z)) % modulus);
                }
            }
        }
    }

    #[test]
    fn condensation_of_random_forms(m in arb_form()) {
        for h in m.isotropic_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap() {
            let r = condense(&m, &h).unwrap();
            let perp = m.orthogonal(&h);
            prop_assert_eq!(r.condensed.order() * h.order(), perp.order());
            prop_assert!(r.condensed.validate().valid);
            if m.is_nondegenerate() {
                prop_assert!(r.condensed.is_nondegenerate());
                prop_assert_eq!(m.gauss_sum().unwrap(), r.condensed.gauss_sum().unwrap().scale(h.order() as i64));
            }
        }
    }

    #[test]
    fn json_round_trip_random(m in arb_form()) {
        let text = serde_json::to_string(&MetricJson::from(&m)).unwrap();
        let back: MetricJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.metric().unwrap(), m);
    }
}
