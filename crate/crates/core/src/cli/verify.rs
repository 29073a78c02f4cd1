//! The `verify` suites.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autgroup::AutGroup;
use crate::curve::{Curve, Place, PlaceClass};
use crate::ff::FieldElement;
use crate::polyfam;
use crate::series::oracle::{default_oracle_precision, gap_set_by_differentials};
use crate::series::{expand_coordinates, valuation_report};
use crate::weier::{self, CensusConfig};

use super::{CliError, Output, Scope, VerifyArgs};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite {
    name: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self { name, checks: Vec::new() }
    }

    fn push(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.name,
            check: check.into(),
            passed,
            detail: detail.into(),
        });
    }
}

fn random_beta<R: Rng>(level: u32, rng: &mut R) -> FieldElement {
    loop {
        let b = FieldElement::random(level, rng);
        if !b.is_zero() && !b.is_one() {
            return b;
        }
    }
}

fn polyfam_suite(curve: &Curve, rng: &mut ChaCha8Rng) -> Result<Suite, CliError> {
    let mut s = Suite::new("polyfam");
    for level in [curve.constant_level(), 3 * curve.constant_level()] {
        let mut ok = true;
        for _ in 0..20 {
            let beta = random_beta(level, rng);
            for i in 0..=50 {
                ok &= polyfam::eval_recursive(i, beta)? == polyfam::eval_closed(i, beta)?;
            }
        }
        s.push(format!("closed forms, F_3^{level}"), ok, "i <= 50 at 20 random beta");
        let mut ok = true;
        for _ in 0..5 {
            let beta = random_beta(level, rng);
            for i in 0..=10 {
                for j in 0..=10 {
                    for l in 0..=10 {
                        ok &= polyfam::identity_check(i, j, l, beta)?;
                    }
                }
            }
        }
        s.push(format!("identities, F_3^{level}"), ok, "i, j, l <= 10 at 5 random beta");
        let mut ok = true;
        for _ in 0..20 {
            let beta = random_beta(level, rng);
            let i = polyfam::p_order(beta)?;
            let k = polyfam::r_order(beta)?;
            ok &= polyfam::eval_closed(i + 1, beta)?.p_val.is_zero()
                && polyfam::eval_closed(k + 1, beta)?.r_val.is_zero();
        }
        s.push(format!("orders, F_3^{level}"), ok, "P_(i+1) = R_(K+1) = 0 at 20 random beta");
    }
    let ok = (1..=12).all(polyfam::corollary_check_symbolic);
    s.push("corollary, symbolic", ok, "i <= 12");
    Ok(s)
}

/// One rational place per class with a Hermitian lift, then sampled
/// non-rational places.
fn valuation_places(curve: &Curve, samples: usize, seed: u64) -> Result<Vec<Place>, CliError> {
    let mut out: Vec<Place> = Vec::new();
    for p in curve.enumerate_rational()? {
        if p.is_infinity() || p.class == PlaceClass::BetaZero || out.iter().any(|x| x.class == p.class) {
            continue;
        }
        out.push(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (order, d) in weier::default_gamma_orders(curve) {
        out.extend(curve.sample_by_gamma_order(order, samples, d, &mut rng)?);
    }
    Ok(out)
}

fn valuation_suite(curve: &Curve, samples: usize, seed: u64, prec: usize) -> Result<Suite, CliError> {
    let mut s = Suite::new("valuations");
    for p in valuation_places(curve, samples, seed)? {
        for (n, lift) in curve.hermitian_lifts(&p)?.iter().enumerate() {
            let e = expand_coordinates(lift, prec)?;
            let report = valuation_report(p.class, &e)?;
            let ok = report.iter().all(|r| r.ok);
            let detail = report
                .iter()
                .map(|r| format!("v({})={}", r.function, r.valuation.map_or("?".into(), |v| v.to_string())))
                .collect::<Vec<_>>()
                .join(" ");
            let i = p.class.p_order().map_or(String::new(), |i| format!(" i={i}"));
            let k = p.class.r_order().map_or(String::new(), |k| format!(" K={k}"));
            s.push(format!("{}{i}{k} degree {} lift {n}", p.class.name(), p.degree), ok, detail);
        }
    }
    Ok(s)
}

fn semigroup_suite(curve: &Curve, samples: usize, seed: u64, prec: usize) -> Result<Suite, CliError> {
    let mut s = Suite::new("semigroups");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let config = CensusConfig {
        samples_per_class: samples,
        prec,
        ..CensusConfig::for_curve(curve)
    };
    let r = weier::full_census(curve, &config, &mut rng)?;
    let tags = r.tags.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ");
    s.push(
        "rational census",
        r.rational_places as u64 == curve.rational_place_count(),
        format!("{} places; {tags}", r.rational_places),
    );
    s.push("orbit constancy", r.orbits_constant, format!("orbit sizes {:?}", r.orbit_sizes));
    s.push(
        "non-gap certificates",
        r.rational_verified,
        format!("{} orbit representatives certified", r.rational_certified),
    );
    s.push("interval oracle", r.interval_oracle_agrees, "rational affine classes");
    s.push("canonical symmetry at infinity", r.infinity_symmetry_agrees, "");
    for n in &r.nonrational {
        s.push(
            format!("gap certificates, gamma order {}", n.gamma_order),
            n.verified && n.gaps.len() as u64 == curve.genus(),
            format!("{:?}, {} places x 3 lifts", n.class, n.places),
        );
    }
    s.push(
        "separation",
        r.separation.two_m_nongap_only_at_infinity && r.separation.two_q_minus_3_gap_iff_beta_zero,
        format!("{} rational places", r.separation.places_checked),
    );
    // the differential oracle on one place per orbit
    let places = curve.enumerate_rational()?;
    let group = AutGroup::new(*curve);
    let mut ok = true;
    let mut checked = 0;
    for orbit in group.orbit_indices(&places)? {
        let p = &places[orbit[0]];
        if p.is_infinity() {
            continue;
        }
        let expected = weier::semigroup_at(curve, p)?;
        ok &= &gap_set_by_differentials(curve, p, default_oracle_precision(curve))? == expected.result.gap_set();
        checked += 1;
    }
    s.push("differential oracle", ok, format!("{checked} orbit representatives"));
    Ok(s)
}

fn autgroup_suite(curve: &Curve, seed: u64) -> Result<Suite, CliError> {
    let mut s = Suite::new("autgroup");
    let g = AutGroup::new(*curve);
    let expected = AutGroup::expected_order(curve);
    s.push("order", g.order() as u64 == expected, format!("|G| = {} (2q^2/3 = {expected})", g.order()));
    let els = g.elements();
    let set: HashSet<_> = els.iter().collect();
    let mut closed = set.len() == els.len();
    let mut inverses = true;
    for a in els {
        inverses &= a.compose(&a.inverse())?.is_identity() && set.contains(&a.inverse());
        for b in els {
            closed &= set.contains(&a.compose(b)?);
        }
    }
    s.push("closure", closed, "all products");
    s.push("inverses", inverses, "all elements");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assoc = true;
    for _ in 0..1000 {
        let pick = |r: &mut ChaCha8Rng| els[r.gen_range(0..els.len())];
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        assoc &= a.compose(&b)?.compose(&c)? == a.compose(&b.compose(&c)?)?;
    }
    s.push("associativity", assoc, "1000 random triples");
    let mut preserved = true;
    for k in 0..200 {
        let level = curve.constant_level() * (1 + k % 3);
        let p = curve.random_affine_place(level, &mut rng)?;
        let image = els[k as usize % els.len()].apply(&p)?;
        preserved &= image.beta == p.beta;
    }
    s.push("action on the curve", preserved, "200 random places, beta preserved");
    let places = curve.enumerate_rational()?;
    let orbits = g.orbit_indices(&places)?;
    let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    s.push(
        "orbit partition",
        sizes.iter().sum::<usize>() == places.len() && sizes[0] == 1,
        format!("sizes {sizes:?}"),
    );
    let zero = FieldElement::zero(curve.constant_level());
    let origin = curve.place_from_coords(zero, zero)?;
    let orbit = g.orbit(&origin)?;
    let beta_zero: Vec<Place> = places.iter().filter(|p| p.class == PlaceClass::BetaZero).cloned().collect();
    s.push(
        "orbit of the origin",
        orbit == beta_zero,
        format!("{} places, q^2/3 = {}", orbit.len(), curve.q() * curve.q() / 3),
    );
    Ok(s)
}

pub fn run(curve: &Curve, args: &VerifyArgs, seed: u64, prec: usize) -> Result<Output, CliError> {
    let wanted = |s: Scope| args.scope == Scope::All || args.scope == s;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suites = Vec::new();
    if wanted(Scope::Polyfam) {
        suites.push(polyfam_suite(curve, &mut rng)?);
    }
    if wanted(Scope::Valuations) {
        suites.push(valuation_suite(curve, args.samples, seed, prec)?);
    }
    if wanted(Scope::Semigroups) {
        suites.push(semigroup_suite(curve, args.samples, seed, prec)?);
    }
    if wanted(Scope::Autgroup) {
        suites.push(autgroup_suite(curve, seed)?);
    }
    let checks: Vec<Check> = suites.into_iter().flat_map(|s| s.checks).collect();
    Ok(Output {
        passed: checks.iter().all(|c| c.passed),
        results: checks.iter().map(serde_json::to_value).collect::<Result<_, _>>()?,
        header: ["suite", "check", "passed", "detail"].map(String::from).to_vec(),
        rows: checks
            .iter()
            .map(|c| vec![c.suite.to_string(), c.check.clone(), c.passed.to_string(), c.detail.clone()])
            .collect(),
        notes: Vec::new(),
    })
}
