use super::oracle::{canonical_monomials, default_oracle_precision, expand_in_y, gap_set_by_differentials};
use super::witness::in_special_gap_set;
use super::*;
use crate::curve::{Curve, Place, PlaceClass};
use crate::polyfam;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fe(n: u32, v: i64) -> FieldElement {
    FieldElement::from_int(n, v)
}

fn rational_place(curve: &Curve, pred: impl Fn(&PlaceClass) -> bool) -> Place {
    curve
        .enumerate_rational()
        .unwrap()
        .into_iter()
        .find(|p| pred(&p.class))
        .unwrap()
}

fn sampled(curve: &Curve, order: u64, max_degree: u32, count: usize, seed: u64) -> Vec<Place> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    curve.sample_by_gamma_order(order, count, max_degree, &mut rng).unwrap()
}

fn expansions(curve: &Curve, place: &Place, prec: usize) -> Vec<LocalExpansion> {
    curve
        .hermitian_lifts(place)
        .unwrap()
        .iter()
        .map(|l| expand_coordinates(l, prec).unwrap())
        .collect()
}

#[test]
fn product_valuations_add() {
    let one = FieldElement::one(4);
    let a = &TruncatedSeries::monomial(one, 2, 10) + &TruncatedSeries::monomial(one, 5, 10);
    let b = TruncatedSeries::monomial(fe(4, 2), 3, 8);
    let p = &a * &b;
    assert_eq!(p.prec(), 8);
    assert_eq!(p.leading(), Some((5, fe(4, 2))));
    assert!(TruncatedSeries::monomial(one, 9, 8).is_zero());
}

#[test]
fn frobenius_power_spreads_exponents() {
    let z = FieldElement::generator(4);
    let s = TruncatedSeries::from_coeffs(4, &[z, FieldElement::one(4)], 20);
    let cube = s.frobenius_power(1);
    assert_eq!(cube, s.pow(3));
    assert_eq!(cube.coeff(3), FieldElement::one(4));
    assert_eq!(s.frobenius_power(2), s.pow(9));
}

#[test]
fn coordinate_expansions_have_the_expected_shape() {
    for t in [2u32, 3] {
        let c = Curve::new(t).unwrap();
        let q = c.q() as usize;
        let place = rational_place(&c, |k| matches!(k, PlaceClass::RationalGeneral { .. }));
        for e in expansions(&c, &place, 2 * q + 1) {
            let b = &e.basis;
            let beta = b.beta;
            let n = beta.degree();
            let one = FieldElement::one(n);
            assert_eq!(b.x_a.series.coeff(1), one);
            assert_eq!(b.x_a.series.coeff(2), one);
            assert!((3..q).all(|k| b.x_a.series.coeff(k).is_zero()));
            assert_eq!(b.y_b.series.coeff(1), one);
            assert_eq!(b.y_b.series.coeff(3), -beta);
            assert!(b.y_b.series.coeff(2).is_zero());
            assert!((4..q).all(|k| b.y_b.series.coeff(k).is_zero()));
            assert_eq!(b.f0.series.leading(), Some((2, one)));
            assert_eq!(b.f0.series.coeff(3), beta);
            assert!(e.newton_steps <= 3);
            // the expansions satisfy the curve equation
            let lhs = &(&e.x.frobenius_power(t) + &e.x) + &{
                let mut p = TruncatedSeries::zero(n, e.prec());
                let mut pow = e.y.clone();
                for _ in 0..t {
                    p = &p + &pow;
                    pow = pow.frobenius_power(1);
                }
                &p * &p
            };
            assert!(lhs.is_zero());
        }
    }
}

#[test]
fn precision_bounds_enforced() {
    let c = Curve::new(2).unwrap();
    let place = rational_place(&c, |k| *k == PlaceClass::BetaOne);
    let lift = c.hermitian_lifts(&place).unwrap()[0];
    assert!(matches!(expand_coordinates(&lift, 5), Err(SeriesError::Precision { .. })));
    assert!(expand_coordinates(&lift, MAX_PRECISION + 1).is_err());
}

fn check_f_chain(curve: &Curve, place: &Place, prec: usize) {
    let m = curve.m();
    let i = place.class.p_order().unwrap();
    let top = i.min(m - 1);
    for e in expansions(curve, place, prec) {
        let beta = e.basis.beta;
        let seq = polyfam::sequence(top + 1, beta).unwrap();
        let f = build_f_chain(&e.basis, top).unwrap();
        for (j, fj) in f.iter().enumerate() {
            assert_eq!(fj.pole_bound, (j as u64 + 1) * curve.q());
            let (pj, qj) = (seq[j + 1].p_val, seq[j + 1].q_val);
            assert_eq!(fj.series.coeff(3 * j + 2), pj, "P_(j+1) at f_{j}");
            if 3 * j + 3 < curve.q() as usize {
                assert_eq!(fj.series.coeff(3 * j + 3), qj, "Q_(j+1) at f_{j}");
            }
            assert!((0..3 * j + 2).all(|k| fj.series.coeff(k).is_zero()));
            if (j as u64) < i {
                assert_eq!(fj.valuation(), Some(3 * j + 2));
            }
        }
        assert!(build_f_chain(&e.basis, i + 1).is_err());
    }
}

#[test]
fn f_chain_leading_pairs_match_families() {
    let c = Curve::new(2).unwrap();
    for place in sampled(&c, 4, 4, 2, 3) {
        check_f_chain(&c, &place, 19);
    }
    let c = Curve::new(3).unwrap();
    let places = c.enumerate_rational().unwrap();
    for i in [3u64, 6] {
        let place = places
            .iter()
            .find(|p| p.class == PlaceClass::RationalGeneral { i })
            .unwrap();
        check_f_chain(&c, place, 55);
    }
}

#[test]
fn f_seeds_have_stated_leading_terms() {
    let c = Curve::new(2).unwrap();
    let place = &sampled(&c, 8, 4, 1, 5)[0];
    let e = &expansions(&c, place, 19)[0];
    let beta = e.basis.beta;
    let f = build_f_chain(&e.basis, 2).unwrap();
    assert_eq!(f[1].series.coeff(5), fe(beta.degree(), 2) * beta.cube());
    assert_eq!(f[1].series.coeff(6), beta.pow(4) - beta.cube() - beta.square());
    assert_eq!(f[2].series.coeff(8), beta.cube());
}

#[test]
fn f_two_second_coefficient_below_precision() {
    let c = Curve::new(3).unwrap();
    let place = &sampled(&c, 26, 4, 1, 5)[0];
    let e = &expansions(&c, place, 28)[0];
    let beta = e.basis.beta;
    let f = build_f_chain(&e.basis, 2).unwrap();
    assert_eq!(f[2].series.coeff(8), beta.cube());
    assert_eq!(f[2].series.coeff(9), beta.pow(7) + beta.pow(6) + beta.pow(5) + beta.pow(4));
}

#[test]
fn f_chain_at_order_three_place() {
    let c = Curve::new(3).unwrap();
    let place = c
        .enumerate_rational()
        .unwrap()
        .into_iter()
        .find(|p| p.class == PlaceClass::RationalGeneral { i: 3 })
        .unwrap();
    let e = &expansions(&c, &place, 55)[0];
    let v: Vec<_> = build_f_chain(&e.basis, 3).unwrap().iter().map(|f| f.valuation()).collect();
    assert_eq!(v, vec![Some(2), Some(5), Some(8), Some(12)]);
}

#[test]
fn g_chain_valuations_and_leading_pairs() {
    for (t, order, max_degree) in [(2u32, 7u64, 9u32), (2, 8, 4), (3, 13, 4), (3, 8, 4)] {
        let c = Curve::new(t).unwrap();
        let m = c.m();
        for place in sampled(&c, order, max_degree, 1, 7) {
            let k = place.class.r_order().unwrap();
            let top = k.min(m - 2);
            for e in expansions(&c, &place, 2 * c.q() as usize + 1) {
                let beta = e.basis.beta;
                let seq = polyfam::sequence(top + 2, beta).unwrap();
                let f = build_f_chain(&e.basis, top).unwrap();
                let g = build_g_chain(&e.basis, &f, top).unwrap();
                let one = FieldElement::one(beta.degree());
                assert_eq!(g[0].series.coeff(3), -(beta + one));
                assert_eq!(g[0].series.coeff(4), one);
                for (l, gl) in g.iter().enumerate() {
                    assert_eq!(gl.pole_bound, (3 * l as u64 + 4) * m);
                    assert_eq!(gl.series.coeff(3 * l + 3), seq[l + 1].r_val);
                    assert_eq!(gl.series.coeff(3 * l + 4), seq[l + 1].p_val);
                    let expected = if l as u64 == k { 3 * l + 4 } else { 3 * l + 3 };
                    assert_eq!(gl.valuation(), Some(expected));
                }
                assert!(build_g_chain(&e.basis, &f, k + 1).is_err());
            }
        }
    }
}

#[test]
fn g_zero_at_beta_minus_one_has_valuation_four() {
    let c = Curve::new(2).unwrap();
    let place = &sampled(&c, 4, 4, 1, 9)[0];
    let e = &expansions(&c, place, 19)[0];
    let f = build_f_chain(&e.basis, 0).unwrap();
    let g = build_g_chain(&e.basis, &f, 0).unwrap();
    assert_eq!(g[0].valuation(), Some(4));
}

#[test]
fn beta_one_chain() {
    for t in [2u32, 3] {
        let c = Curve::new(t).unwrap();
        let m = c.m();
        let place = rational_place(&c, |k| *k == PlaceClass::BetaOne);
        for e in expansions(&c, &place, 2 * c.q() as usize + 1) {
            let h = build_beta1_chain(&e.basis, m - 1).unwrap();
            let one = FieldElement::one(e.basis.level());
            for (j, hj) in h.iter().enumerate() {
                assert_eq!(hj.valuation(), Some(3 * j + 2));
                if 3 * j + 3 < c.q() as usize {
                    assert_eq!(hj.series.coeff(3 * j + 3), one);
                }
                assert!(hj.pole_bound <= (j as u64 + 1) * c.q());
            }
            assert_eq!(h[0].series.coeff(2), one);
        }
        let other = rational_place(&c, |k| matches!(k, PlaceClass::RationalGeneral { .. }));
        let e = &expansions(&c, &other, 2 * c.q() as usize + 1)[0];
        assert!(build_beta1_chain(&e.basis, 1).is_err());
        assert!(build_f_chain(&expansions(&c, &place, 19 + 36)[0].basis, 1).is_err());
    }
}

#[test]
fn canonical_monomials_span_dimension_g() {
    for t in [2u32, 3, 4] {
        let c = Curve::new(t).unwrap();
        assert_eq!(canonical_monomials(&c).len() as u64, c.genus());
    }
}

#[test]
fn uniformizer_expansion_satisfies_curve() {
    let c = Curve::new(2).unwrap();
    for place in c.enumerate_rational().unwrap().iter().skip(1).step_by(13) {
        let e = expand_in_y(&c, place, 40).unwrap();
        let (a, b) = place.coords().unwrap();
        let p_y = {
            let mut p = TruncatedSeries::zero(4, 40);
            let mut pow = e.y.clone();
            for _ in 0..2 {
                p = &p + &pow;
                pow = pow.frobenius_power(1);
            }
            p
        };
        assert!((&(&e.x.frobenius_power(2) + &e.x) + &(&p_y * &p_y)).is_zero());
        assert_eq!(e.x.coeff(0), a);
        assert_eq!(e.y.coeff(0), b);
        // x - a has valuation 2 exactly at beta = 0 places, 1 elsewhere
        let expected = if place.class == PlaceClass::BetaZero { 2 } else { 1 };
        assert_eq!(e.x_minus_a.valuation(), Some(expected));
    }
}

#[test]
fn differential_oracle_on_rational_classes_q9() {
    let c = Curve::new(2).unwrap();
    let prec = default_oracle_precision(&c);
    let beta0 = [1, 2, 3, 4, 5, 6, 7, 11, 12, 13, 15, 21];
    let beta1 = [1, 2, 3, 4, 5, 6, 7, 11, 12, 13, 14, 21];
    for place in c.enumerate_rational().unwrap().iter().skip(1).step_by(5) {
        let gaps = gap_set_by_differentials(&c, place, prec).unwrap();
        let expected: &[u64] = if place.class == PlaceClass::BetaZero { &beta0 } else { &beta1 };
        assert_eq!(gaps.gaps(), expected, "{:?}", place.class);
    }
}

#[test]
fn lifts_agree_on_valuations() {
    let c = Curve::new(2).unwrap();
    for place in sampled(&c, 13, 4, 2, 11) {
        let vals: Vec<Vec<Option<usize>>> = expansions(&c, &place, 19)
            .iter()
            .map(|e| build_f_chain(&e.basis, 1).unwrap().iter().map(|f| f.valuation()).collect())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] == w[1]));
    }
}

fn witness_all(c: &Curve, place: &Place) -> Vec<u64> {
    let e = &expansions(c, place, 2 * c.q() as usize + 1)[0];
    let ctx = WitnessContext::new(place.class, e).unwrap();
    let mut gaps = Vec::new();
    for j in 0..c.m() {
        for k in 1..=c.q() {
            let ok = match place.class {
                PlaceClass::NonRationalSpecial { i, k: big_k } => in_special_gap_set(c, i, big_k, j, k),
                _ => k + 3 * j + 2 <= c.q(),
            };
            if !ok {
                assert!(gap_witness(&ctx, j * c.q() + k).is_err());
                continue;
            }
            let w = gap_witness(&ctx, j * c.q() + k).unwrap();
            assert_eq!(w.v_at_p(), Some((j * c.q() + k - 1) as i64), "{} at ({j},{k})", w.description());
            assert!(w.pole_bound_at_infinity() <= c.canonical_degree() as i64, "{}", w.description());
            gaps.push(j * c.q() + k);
        }
    }
    gaps
}

#[test]
fn witnesses_cover_gap_sets_q9() {
    let c = Curve::new(2).unwrap();
    let prec = default_oracle_precision(&c);
    for (order, max_degree) in [(4u64, 4u32), (7, 9), (8, 4), (13, 4)] {
        for place in sampled(&c, order, max_degree, 1, 13) {
            let gaps = witness_all(&c, &place);
            assert_eq!(gaps.len() as u64, c.genus());
            assert_eq!(gap_set_by_differentials(&c, &place, prec).unwrap().gaps(), &gaps[..]);
        }
    }
}

#[test]
fn witness_examples() {
    let c = Curve::new(2).unwrap();
    let place = &sampled(&c, 8, 4, 1, 17)[0];
    let e = &expansions(&c, place, 19)[0];
    let ctx = WitnessContext::new(place.class, e).unwrap();
    let w = gap_witness_generic(&ctx, 0, 1).unwrap();
    assert_eq!((w.v_at_p(), w.description()), (Some(0), "1".to_string()));
    let w = gap_witness_generic(&ctx, 0, 2).unwrap();
    assert_eq!((w.v_at_p(), w.description()), (Some(1), "x_a".to_string()));
    let w = gap_witness_generic(&ctx, 2, 1).unwrap();
    assert_eq!((w.v_at_p(), w.description()), (Some(18), "F_P^2*1".to_string()));
    assert!(gap_witness_generic(&ctx, 2, 2).is_err());
    // gap 8 at the K = 1 class: g_1 with v = 7 and pole bound 21
    let place = &sampled(&c, 7, 9, 1, 17)[0];
    let e = &expansions(&c, place, 19)[0];
    let ctx = WitnessContext::new(place.class, e).unwrap();
    let w = gap_witness_special(&ctx, 0, 8).unwrap();
    assert_eq!(w.v_at_p(), Some(7));
    assert_eq!(w.pole_bound_at_infinity(), 21);
    assert!(w.description().starts_with("g_1"));
    assert!(gap_witness_special(&ctx, 0, 7).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(
        a in proptest::collection::vec(0u128..81, 12),
        b in proptest::collection::vec(0u128..81, 12),
        c in proptest::collection::vec(0u128..81, 12),
    ) {
        let mk = |v: &Vec<u128>| {
            let coeffs: Vec<_> = v.iter().map(|&i| FieldElement::from_index(4, i)).collect();
            TruncatedSeries::from_coeffs(4, &coeffs, 12)
        };
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let (Some(va), Some(vb)) = (a.valuation(), b.valuation()) {
            if va + vb < 12 {
                prop_assert_eq!((&a * &b).valuation(), Some(va + vb));
            }
        }
    }
}

#[test]
fn valuation_reports_pass_at_every_class() {
    for (t, orders) in [(2u32, vec![(4u64, 4u32), (7, 9), (8, 4), (13, 4)]), (3, vec![(8, 4), (37, 4)])] {
        let c = Curve::new(t).unwrap();
        let prec = 2 * c.q() as usize + 1;
        let mut places: Vec<Place> = Vec::new();
        for p in c.enumerate_rational().unwrap() {
            if p.class != PlaceClass::BetaZero && !p.is_infinity() && !places.iter().any(|x| x.class == p.class) {
                places.push(p);
            }
        }
        for (order, d) in orders {
            places.extend(sampled(&c, order, d, 1, 21));
        }
        for p in &places {
            for e in expansions(&c, p, prec) {
                let report = valuation_report(p.class, &e).unwrap();
                assert!(!report.is_empty());
                assert!(report.iter().all(|r| r.ok), "{:?}: {report:?}", p.class);
            }
        }
    }
}
