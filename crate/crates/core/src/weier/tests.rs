use super::*;
use crate::series::oracle::{default_oracle_precision, gap_set_by_differentials};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn curve(t: u32) -> Curve {
    Curve::new(t).unwrap()
}

fn first_of(c: &Curve, pred: impl Fn(&PlaceClass) -> bool) -> Place {
    c.enumerate_rational().unwrap().into_iter().find(|p| pred(&p.class)).unwrap()
}

fn sample(c: &Curve, order: u64, max_degree: u32, count: usize) -> Vec<Place> {
    let mut rng = ChaCha8Rng::seed_from_u64(order);
    c.sample_by_gamma_order(order, count, max_degree, &mut rng).unwrap()
}

#[test]
fn golden_rational_sets_q9() {
    let c = curve(2);
    let inf = semigroup_at(&c, &c.infinity()).unwrap();
    assert_eq!(inf.result.generators().unwrap(), &[6, 9, 10]);
    assert_eq!(inf.result.gaps(), &[1, 2, 3, 4, 5, 7, 8, 11, 13, 14, 17, 23]);
    let b0 = semigroup_at(&c, &first_of(&c, |k| *k == PlaceClass::BetaZero)).unwrap();
    assert_eq!(b0.result.gaps(), &[1, 2, 3, 4, 5, 6, 7, 11, 12, 13, 15, 21]);
    let b1 = semigroup_at(&c, &first_of(&c, |k| *k == PlaceClass::BetaOne)).unwrap();
    assert_eq!(b1.result.generators().unwrap(), &[8, 9, 10, 15, 22]);
    assert_eq!(b1.result.gaps(), &[1, 2, 3, 4, 5, 6, 7, 11, 12, 13, 14, 21]);
    for i in [4, 9] {
        let a = semigroup_at(&c, &first_of(&c, |k| *k == PlaceClass::RationalGeneral { i })).unwrap();
        assert_eq!(a.result.gaps(), b1.result.gaps());
    }
}

#[test]
fn golden_nonrational_sets_q9() {
    let c = curve(2);
    let generic = [1, 2, 3, 4, 5, 6, 7, 10, 11, 12, 13, 19];
    assert_eq!(generic_gap_set(&c).gaps(), &generic);
    let special = nonrational_gap_set(&c, PlaceClass::NonRationalSpecial { i: 6, k: 1 }).unwrap();
    assert_eq!(special.gaps(), &[1, 2, 3, 4, 5, 6, 8, 10, 11, 12, 13, 19]);
    let special = nonrational_gap_set(&c, PlaceClass::NonRationalSpecial { i: 3, k: 0 }).unwrap();
    assert_eq!(special.gaps(), &[1, 2, 3, 4, 5, 6, 7, 10, 11, 12, 14, 19]);
}

#[test]
fn special_sets_replace_the_stated_gaps() {
    for t in [2, 3, 4] {
        let c = curve(t);
        let (m, g) = (c.m(), generic_gap_set(&c));
        // i = 1 is gamma = -1, i.e. beta = 0; i + 1 | q + 1 gives rational beta
        for i in (3..3 * m).filter(|i| i % 3 != 2 && (c.q() + 1) % (i + 1) != 0) {
            let k = crate::polyfam::r_order_from_p_order(i) - 1;
            if k + 2 <= m {
                let s = nonrational_gap_set(&c, PlaceClass::NonRationalSpecial { i, k }).unwrap();
                let moved = replaced_gaps(&c, i, k);
                assert_eq!(moved.len() as u64, (m - k - 2) / (i + 1) + 1);
                let expected: Vec<u64> = g
                    .gaps()
                    .iter()
                    .map(|&x| if moved.contains(&x) { x + 1 } else { x })
                    .collect();
                let mut expected = expected;
                expected.sort_unstable();
                assert_eq!(s.gaps(), &expected[..]);
                assert_eq!(s.genus() as u64, c.genus());
            }
        }
    }
}

#[test]
fn replaced_gap_formula_matches_ladder() {
    let c = curve(3);
    let (q, m) = (c.q(), c.m());
    for (i, k) in [(7u64, 4u64), (12, 3), (18, 5), (2, 1)] {
        let expected: Vec<u64> = (0..=(m - k - 2) / (i + 1))
            .map(|l| (m - k - 2 - l * (i + 1)) * q + 3 * k + 4 + 3 * l * (i + 1))
            .collect();
        assert_eq!(replaced_gaps(&c, i, k), expected);
    }
}

#[test]
fn interval_oracle_matches_generators() {
    for t in [2, 3, 4] {
        let c = curve(t);
        let (q, m) = (c.q(), c.m());
        let mut classes = vec![PlaceClass::BetaZero, PlaceClass::BetaOne];
        classes.extend((1..m - 1).filter(|i| (q + 1) % (i + 1) == 0).map(|i| PlaceClass::RationalGeneral { i }));
        classes.push(PlaceClass::RationalGeneral { i: q });
        classes.push(PlaceClass::RationalGeneral { i: (q - 1) / 2 });
        for class in classes {
            let gens = rational_generators(&c, class).unwrap().unwrap();
            let sg = NumericalSemigroup::from_generators(&gens).unwrap();
            assert_eq!(sg.genus() as u64, c.genus(), "{class:?}");
            assert_eq!(interval_gap_set(&c, class).unwrap().unwrap(), *sg.gap_set(), "{class:?}");
        }
        let inf = NumericalSemigroup::from_generators(&rational_generators(&c, PlaceClass::Infinity).unwrap().unwrap()).unwrap();
        assert_eq!(infinity_gaps_by_symmetry(&c).unwrap(), *inf.gap_set());
    }
}

#[test]
fn unexpected_rational_order_rejected() {
    let c = curve(3);
    assert!(rational_generators(&c, PlaceClass::RationalGeneral { i: 9 }).is_err());
}

#[test]
fn nongap_witnesses_q9() {
    let c = curve(2);
    let prec = default_precision(&c);
    let mut classes: Vec<PlaceClass> = Vec::new();
    for p in c.enumerate_rational().unwrap() {
        if classes.contains(&p.class) {
            continue;
        }
        classes.push(p.class);
        for lift in 0..if p.class.p_order().is_some() || p.class == PlaceClass::BetaOne { 3 } else { 1 } {
            let a = certified_assignment(&c, &p, lift, prec).unwrap();
            a.require_verified().unwrap();
            let gens = a.result.generators().unwrap();
            for g in gens {
                assert!(a.certificate.iter().any(|e| e.value == *g && e.role == Role::NonGap && e.verified));
            }
        }
    }
    assert_eq!(classes.len(), 5);
}

#[test]
fn nongap_examples() {
    let c = curve(2);
    let prec = default_precision(&c);
    let a = semigroup_at(&c, &first_of(&c, |k| *k == PlaceClass::BetaOne)).unwrap();
    let e = verify_nongaps(&c, &a, 0, prec).unwrap();
    let w = e.iter().find(|e| e.value == 15).unwrap();
    assert_eq!(w.witness, "h_1/F_P^2");
    assert_eq!(w.v_at_p, Some(-15));
    let origin = c.place_from_coords(FieldElement::zero(4), FieldElement::zero(4)).unwrap();
    let a = semigroup_at(&c, &origin).unwrap();
    let e = verify_nongaps(&c, &a, 0, prec).unwrap();
    let w = e.iter().find(|e| e.value == 14).unwrap();
    assert_eq!(w.witness, "(x - a)^3/F_P^2");
    assert!(w.verified);

    let c = curve(3);
    let p = first_of(&c, |k| *k == PlaceClass::RationalGeneral { i: 3 });
    let a = semigroup_at(&c, &p).unwrap();
    let e = verify_nongaps(&c, &a, 0, default_precision(&c)).unwrap();
    let w = e.iter().find(|e| e.value == 100).unwrap();
    assert!(w.verified);
    assert_eq!(w.v_at_p, Some(12 - 4 * 28));
}

#[test]
fn gap_witnesses_nonrational_q9() {
    let c = curve(2);
    let prec = default_precision(&c);
    for (order, max_degree) in default_gamma_orders(&c) {
        for p in sample(&c, order, max_degree, 2) {
            let a = semigroup_at(&c, &p).unwrap();
            for lift in 0..3 {
                let cert = verify_gaps(&c, &a, lift, prec).unwrap();
                assert_eq!(cert.len() as u64, c.genus());
                assert!(cert.iter().all(|e| e.verified), "{cert:?}");
            }
            let oracle = gap_set_by_differentials(&c, &p, default_oracle_precision(&c)).unwrap();
            assert_eq!(&oracle, a.result.gap_set());
        }
    }
}

#[test]
fn differential_oracle_agrees_on_rational_places_q9() {
    let c = curve(2);
    let prec = default_oracle_precision(&c);
    for p in c.enumerate_rational().unwrap().iter().skip(1).step_by(7) {
        let a = semigroup_at(&c, p).unwrap();
        assert_eq!(&gap_set_by_differentials(&c, p, prec).unwrap(), a.result.gap_set());
    }
}

#[test]
fn distinct_types_q27() {
    let c = curve(3);
    let q = c.q();
    let mut sets: Vec<(String, GapSet)> = Vec::new();
    for class in [
        PlaceClass::Infinity,
        PlaceClass::BetaZero,
        PlaceClass::BetaOne,
        PlaceClass::RationalGeneral { i: 3 },
        PlaceClass::RationalGeneral { i: 6 },
    ] {
        let gens = rational_generators(&c, class).unwrap().unwrap();
        sets.push((format!("{class:?}"), NumericalSemigroup::from_generators(&gens).unwrap().gap_set().clone()));
    }
    sets.push(("generic".into(), generic_gap_set(&c)));
    for (i, k) in [(7, 4), (12, 3), (18, 5)] {
        let class = PlaceClass::NonRationalSpecial { i, k };
        sets.push((format!("{class:?}"), nonrational_gap_set(&c, class).unwrap()));
    }
    for (x, a) in sets.iter().enumerate() {
        for b in &sets[x + 1..] {
            assert_ne!(a.1, b.1, "{} vs {}", a.0, b.0);
        }
    }
    // the large rational orders share the beta = 1 semigroup
    for i in [(q - 1) / 2, q] {
        let gens = rational_generators(&c, PlaceClass::RationalGeneral { i }).unwrap().unwrap();
        assert_eq!(NumericalSemigroup::from_generators(&gens).unwrap().gap_set(), &sets[2].1);
    }
}

#[test]
fn separation_q9() {
    let c = curve(2);
    let all: Vec<_> = c.enumerate_rational().unwrap().iter().map(|p| semigroup_at(&c, p).unwrap()).collect();
    let s = separation_facts(&c, &all);
    assert_eq!(s.places_checked, 298);
    assert!(s.two_m_nongap_only_at_infinity);
    assert!(s.two_q_minus_3_gap_iff_beta_zero);
}

#[test]
fn census_q9() {
    let c = curve(2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = full_census(&c, &CensusConfig::for_curve(&c), &mut rng).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.rational_places, 298);
    let tags: Vec<(&str, usize)> = r.tags.iter().map(|(k, v)| (*k, *v)).collect();
    assert_eq!(tags, vec![("beta-one", 54), ("beta-zero", 27), ("infinity", 1), ("rational-general", 216)]);
    assert_eq!(r.orbit_sizes, vec![1, 27, 54, 54, 54, 54, 54]);
    assert_eq!(r.p_order_counts.get(&4), Some(&108));
    assert_eq!(r.p_order_counts.get(&9), Some(&108));
    assert_eq!(r.nonrational.len(), 4);
}

#[test]
fn serializes_assignment() {
    let c = curve(2);
    let a = certified_assignment(&c, &c.infinity(), 0, default_precision(&c)).unwrap();
    let v = serde_json::to_value(&a).unwrap();
    assert_eq!(v["theorem_tag"], "infinity");
    assert_eq!(v["result"]["generators"], serde_json::json!([6, 9, 10]));
    assert_eq!(v["result"]["conductor"], 24);
    assert_eq!(v["certificate"][0]["source"], "divisor");
}
