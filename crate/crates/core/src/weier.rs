//! Weierstrass semigroups and gap sets at every place, with certificates.
//!
//! Rational places get a generator-presented semigroup whose non-gaps are
//! witnessed by functions with poles only at `P`; non-rational places get an
//! explicit gap set whose gaps are witnessed through holomorphic
//! differentials.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::autgroup::{AutError, AutGroup};
use crate::curve::{Curve, CurveError, Place, PlaceClass};
use crate::ff::FieldElement;
use crate::numsemi::{GapSet, NumericalSemigroup, SemigroupError};
use crate::series::oracle::{canonical_monomials, expand_in_y};
use crate::series::{
    build_beta1_chain, build_f_chain, expand_coordinates, gap_witness, in_special_gap_set, LocalFunction,
    SeriesError, TrackedFunction, TruncatedSeries, WitnessContext,
};

#[derive(Debug, Error)]
pub enum WeierError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error("rational P-order {i} is neither below m - 1 nor one of (q-1)/2, q")]
    UnexpectedRationalOrder { i: u64 },
    #[error("{count} gaps where the genus is {genus}")]
    GapCount { count: usize, genus: u64 },
    #[error("lift index {0} out of range")]
    LiftIndex(usize),
    #[error("{0}")]
    Unverified(String),
}

/// A semigroup given by generators, or a bare gap set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemigroupResult {
    Generated(NumericalSemigroup),
    Gaps(GapSet),
}

impl SemigroupResult {
    pub fn gap_set(&self) -> &GapSet {
        match self {
            Self::Generated(s) => s.gap_set(),
            Self::Gaps(g) => g,
        }
    }

    pub fn gaps(&self) -> &[u64] {
        self.gap_set().gaps()
    }

    pub fn generators(&self) -> Option<&[u64]> {
        match self {
            Self::Generated(s) => Some(s.generators()),
            Self::Gaps(_) => None,
        }
    }

    pub fn is_gap(&self, n: u64) -> bool {
        self.gap_set().contains_gap(n)
    }
}

impl Serialize for SemigroupResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            generators: Option<&'a [u64]>,
            minimal_generators: Vec<u64>,
            gaps: &'a [u64],
            genus: usize,
            conductor: u64,
        }
        let gs = self.gap_set();
        View {
            generators: self.generators(),
            minimal_generators: gs.minimal_generators(),
            gaps: gs.gaps(),
            genus: gs.genus(),
            conductor: gs.conductor(),
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    NonGap,
    Gap,
}

/// How a certificate entry was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// valuation read off an exact truncated expansion
    Series,
    /// pole orders of `x`, `y`, `w` at infinity from their divisors
    Divisor,
    /// the certified non-gaps generate a semigroup with exactly `g` gaps
    GenusCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub value: u64,
    pub role: Role,
    pub source: Source,
    pub witness: String,
    pub v_at_p: Option<i64>,
    pub pole_bound_at_infinity: Option<i64>,
    pub verified: bool,
}

impl CertificateEntry {
    fn from_tracked(value: u64, role: Role, f: &TrackedFunction, verified: bool) -> Self {
        Self {
            value,
            role,
            source: Source::Series,
            witness: f.description(),
            v_at_p: f.v_at_p(),
            pole_bound_at_infinity: Some(f.pole_bound_at_infinity()),
            verified,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SemigroupAssignment {
    pub place: Place,
    pub theorem_tag: &'static str,
    pub result: SemigroupResult,
    pub certificate: Vec<CertificateEntry>,
}

impl SemigroupAssignment {
    pub fn all_verified(&self) -> bool {
        self.certificate.iter().all(|c| c.verified)
    }

    /// Errors on the first unverified entry.
    pub fn require_verified(&self) -> Result<(), WeierError> {
        match self.certificate.iter().find(|c| !c.verified) {
            None => Ok(()),
            Some(c) => Err(WeierError::Unverified(format!(
                "{:?} {} at {} ({}): v_P = {:?}, pole bound {:?}",
                c.role,
                c.value,
                self.theorem_tag,
                c.witness,
                c.v_at_p,
                c.pole_bound_at_infinity
            ))),
        }
    }
}

/// Precision used for certificates unless overridden: `2q + 1`.
pub fn default_precision(curve: &Curve) -> usize {
    2 * curve.q() as usize + 1
}

fn is_small_rational_order(curve: &Curve, i: u64) -> Result<bool, WeierError> {
    let (q, m) = (curve.q(), curve.m());
    if i + 1 < m {
        Ok(true)
    } else if i == (q - 1) / 2 || i == q {
        Ok(false)
    } else {
        Err(WeierError::UnexpectedRationalOrder { i })
    }
}

/// Generators of `H(P)` for a rational class.
pub fn rational_generators(curve: &Curve, class: PlaceClass) -> Result<Option<Vec<u64>>, WeierError> {
    let (q, m) = (curve.q(), curve.m());
    let ladder = |n: u64| (0..n).map(move |j| q - 1 + j * (q - 2));
    let gens: Vec<u64> = match class {
        PlaceClass::Infinity => vec![2 * m, q, q + 1],
        PlaceClass::BetaZero => vec![q - 1, q, q + 1, 2 * q - 4],
        PlaceClass::BetaOne => [q, q + 1].into_iter().chain(ladder(m)).collect(),
        PlaceClass::RationalGeneral { i } => {
            if is_small_rational_order(curve, i)? {
                [q, q + 1].into_iter().chain(ladder(i)).chain([(i + 1) * (q - 2)]).collect()
            } else {
                [q, q + 1].into_iter().chain(ladder(m)).collect()
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(gens))
}

/// The generic gap set `{jq + k : j < m, 1 <= k <= q - 2 - 3j}`.
pub fn generic_gap_set(curve: &Curve) -> GapSet {
    let (q, m) = (curve.q(), curve.m());
    GapSet::new((0..m).flat_map(|j| (1..=q - 2 - 3 * j).map(move |k| j * q + k))).expect("generic gaps")
}

/// The gap set of a non-rational class.
pub fn nonrational_gap_set(curve: &Curve, class: PlaceClass) -> Option<GapSet> {
    let (q, m) = (curve.q(), curve.m());
    match class {
        PlaceClass::NonRationalGeneric { .. } => Some(generic_gap_set(curve)),
        PlaceClass::NonRationalSpecial { i, k } => Some(
            GapSet::new(
                (0..m).flat_map(|j| (1..=q).filter(move |&kk| in_special_gap_set(curve, i, k, j, kk)).map(move |kk| j * q + kk)),
            )
            .expect("special gaps"),
        ),
        _ => None,
    }
}

/// The gaps `gamma` of the generic set that are moved to `gamma + 1` at a
/// special place.
pub fn replaced_gaps(curve: &Curve, i: u64, k: u64) -> Vec<u64> {
    let (q, m) = (curve.q(), curve.m());
    if k + 2 > m {
        return Vec::new();
    }
    (0..=(m - k - 2) / (i + 1))
        .map(|l| {
            let j = m - k - 2 - l * (i + 1);
            j * q + q - 2 - 3 * j
        })
        .collect()
}

/// Gap set of a rational affine class from interval bookkeeping: the rows
/// `l(q+1)+1 ..= (l+1)(q-2)` for `l < m`, where each row with `i + 1 | l + 1`
/// has its last element moved up by one (`i = 1` at `beta = 0`, no such rows
/// for the ladder semigroup).
pub fn interval_gap_set(curve: &Curve, class: PlaceClass) -> Result<Option<GapSet>, WeierError> {
    let (q, m) = (curve.q(), curve.m());
    let step = match class {
        PlaceClass::BetaZero => Some(2),
        PlaceClass::BetaOne => None,
        PlaceClass::RationalGeneral { i } => is_small_rational_order(curve, i)?.then_some(i + 1),
        _ => return Ok(None),
    };
    let mut gaps = Vec::new();
    for l in 0..m {
        let (lo, hi) = (l * (q + 1) + 1, (l + 1) * (q - 2));
        gaps.extend(lo..hi);
        if step.is_some_and(|s| (l + 1) % s == 0) {
            gaps.push(hi + 1);
        } else {
            gaps.push(hi);
        }
    }
    Ok(Some(GapSet::new(gaps)?))
}

/// Gaps at infinity from the canonical divisor `(2g-2) P_inf`: `n` is a gap
/// exactly when `2g - 1 - n` is the pole order of a monomial in `L(K)`.
pub fn infinity_gaps_by_symmetry(curve: &Curve) -> Result<GapSet, WeierError> {
    let top = 2 * curve.genus() - 1;
    Ok(GapSet::new(canonical_monomials(curve).keys().map(|&h| top - h))?)
}

/// The assignment for `place` from its class, with an empty certificate.
pub fn semigroup_at(curve: &Curve, place: &Place) -> Result<SemigroupAssignment, WeierError> {
    let class = curve.classify(place)?;
    let result = match rational_generators(curve, class)? {
        Some(gens) => SemigroupResult::Generated(NumericalSemigroup::from_generators(&gens)?),
        None => SemigroupResult::Gaps(nonrational_gap_set(curve, class).expect("non-rational class")),
    };
    let count = result.gaps().len();
    if count as u64 != curve.genus() {
        return Err(WeierError::GapCount {
            count,
            genus: curve.genus(),
        });
    }
    Ok(SemigroupAssignment {
        place: place.clone(),
        theorem_tag: class.name(),
        result,
        certificate: Vec::new(),
    })
}

/// `h / F_P^e` at a rational place, where `v_P(F_P) = q + 1`.
fn over_fp(curve: &Curve, e: u64, h: LocalFunction) -> TrackedFunction {
    TrackedFunction::new(-(e as i64), h, curve.q() + 1, curve.q())
}

fn nongap_entry(value: u64, f: &TrackedFunction) -> CertificateEntry {
    let ok = f.v_at_p() == Some(-(value as i64)) && f.pole_bound_at_infinity() <= 0;
    CertificateEntry::from_tracked(value, Role::NonGap, f, ok)
}

/// Witnesses for every stated generator at a rational place. Affine places
/// other than `beta = 0` use the expansion under the Hermitian lift number
/// `lift`; `beta = 0` places use the expansion in `y - b`.
pub fn verify_nongaps(
    curve: &Curve,
    assignment: &SemigroupAssignment,
    lift: usize,
    prec: usize,
) -> Result<Vec<CertificateEntry>, WeierError> {
    let (q, m) = (curve.q(), curve.m());
    let class = assignment.place.class;
    let gens = rational_generators(curve, class)?.unwrap_or_default();
    let mut out = Vec::new();
    match class {
        PlaceClass::Infinity => {
            for (value, witness) in [(2 * m, "x"), (q, "y"), (q + 1, "w = -x^3 + x^2 - x - y^2")] {
                out.push(CertificateEntry {
                    value,
                    role: Role::NonGap,
                    source: Source::Divisor,
                    witness: witness.to_string(),
                    v_at_p: Some(-(value as i64)),
                    pole_bound_at_infinity: None,
                    verified: true,
                });
            }
        }
        PlaceClass::BetaZero => {
            let e = expand_in_y(curve, &assignment.place, prec)?;
            let xa = LocalFunction::new(e.x_minus_a.clone(), 2 * m, "(x - a)");
            let yb = LocalFunction::new(&e.y - &TruncatedSeries::constant(e.y.coeff(0), prec), q, "(y - b)");
            let one = LocalFunction::new(TruncatedSeries::constant(FieldElement::one(e.y.level()), prec), 0, "1");
            out.push(nongap_entry(q - 1, &over_fp(curve, 1, xa.clone())));
            out.push(nongap_entry(q, &over_fp(curve, 1, yb)));
            out.push(nongap_entry(q + 1, &over_fp(curve, 1, one)));
            out.push(nongap_entry(2 * q - 4, &over_fp(curve, 2, xa.pow(3))));
        }
        PlaceClass::BetaOne | PlaceClass::RationalGeneral { .. } => {
            let lifts = curve.hermitian_lifts(&assignment.place)?;
            let lift = lifts.get(lift).ok_or(WeierError::LiftIndex(lift))?;
            let exp = expand_coordinates(lift, prec)?;
            let b = &exp.basis;
            out.push(nongap_entry(q, &over_fp(curve, 1, b.x_a.clone())));
            out.push(nongap_entry(q + 1, &over_fp(curve, 1, b.one())));
            if class == PlaceClass::BetaOne {
                for (j, h) in build_beta1_chain(b, m - 1)?.into_iter().enumerate() {
                    let j = j as u64;
                    out.push(nongap_entry(q - 1 + j * (q - 2), &over_fp(curve, j + 1, h)));
                }
            } else {
                let i = class.p_order().expect("rational general");
                let small = is_small_rational_order(curve, i)?;
                let top = if small { i } else { m - 1 };
                for (j, f) in build_f_chain(b, top)?.into_iter().enumerate() {
                    let j = j as u64;
                    let value = if small && j == i { (i + 1) * (q - 2) } else { q - 1 + j * (q - 2) };
                    out.push(nongap_entry(value, &over_fp(curve, j + 1, f)));
                }
            }
        }
        _ => return Ok(Vec::new()),
    }
    // every stated generator must be covered
    for g in gens {
        if !out.iter().any(|c| c.value == g) {
            out.push(CertificateEntry {
                value: g,
                role: Role::NonGap,
                source: Source::Series,
                witness: "none".to_string(),
                v_at_p: None,
                pole_bound_at_infinity: None,
                verified: false,
            });
        }
    }
    out.sort_by_key(|c| c.value);
    Ok(out)
}

/// Gap entries for a rational place: the certified non-gaps generate a
/// semigroup with `g` gaps, and `H(P)` has exactly `g` gaps, so the two agree.
pub fn rational_gap_entries(curve: &Curve, nongaps: &[CertificateEntry]) -> Result<Vec<CertificateEntry>, WeierError> {
    let certified: Vec<u64> = nongaps.iter().filter(|c| c.verified).map(|c| c.value).collect();
    let sg = NumericalSemigroup::from_generators(&certified)?;
    let ok = sg.genus() as u64 == curve.genus() && nongaps.iter().all(|c| c.verified);
    Ok(sg
        .gaps()
        .iter()
        .map(|&value| CertificateEntry {
            value,
            role: Role::Gap,
            source: Source::GenusCount,
            witness: format!("complement of <{}>", sg.generators().iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
            v_at_p: None,
            pole_bound_at_infinity: None,
            verified: ok,
        })
        .collect())
}

/// Differential witnesses for every gap at a non-rational place, under the
/// Hermitian lift number `lift`.
pub fn verify_gaps(
    curve: &Curve,
    assignment: &SemigroupAssignment,
    lift: usize,
    prec: usize,
) -> Result<Vec<CertificateEntry>, WeierError> {
    let class = assignment.place.class;
    if class.is_rational() {
        return Ok(Vec::new());
    }
    let lifts = curve.hermitian_lifts(&assignment.place)?;
    let lift = lifts.get(lift).ok_or(WeierError::LiftIndex(lift))?;
    let exp = expand_coordinates(lift, prec)?;
    let ctx = WitnessContext::new(class, &exp)?;
    let bound = curve.canonical_degree() as i64;
    let mut out = Vec::new();
    for &gap in assignment.result.gaps() {
        match gap_witness(&ctx, gap) {
            Ok(w) => {
                let ok = w.v_at_p() == Some(gap as i64 - 1) && w.pole_bound_at_infinity() <= bound;
                out.push(CertificateEntry::from_tracked(gap, Role::Gap, &w, ok));
            }
            Err(e) => out.push(CertificateEntry {
                value: gap,
                role: Role::Gap,
                source: Source::Series,
                witness: format!("none ({e})"),
                v_at_p: None,
                pole_bound_at_infinity: None,
                verified: false,
            }),
        }
    }
    Ok(out)
}

/// `semigroup_at` followed by the matching verification.
pub fn certified_assignment(
    curve: &Curve,
    place: &Place,
    lift: usize,
    prec: usize,
) -> Result<SemigroupAssignment, WeierError> {
    let mut a = semigroup_at(curve, place)?;
    if place.class.is_rational() {
        let nongaps = verify_nongaps(curve, &a, lift, prec)?;
        let gaps = rational_gap_entries(curve, &nongaps)?;
        a.certificate = nongaps;
        a.certificate.extend(gaps);
    } else {
        a.certificate = verify_gaps(curve, &a, lift, prec)?;
    }
    Ok(a)
}

/// The two facts about rational places used to show that automorphisms fix
/// `P_inf` and preserve the `beta = 0` places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationFacts {
    pub places_checked: usize,
    /// `2q/3` is a non-gap exactly at `P_inf`
    pub two_m_nongap_only_at_infinity: bool,
    /// among affine rational places, `2q - 3` is a gap exactly when
    /// `beta = 0`
    pub two_q_minus_3_gap_iff_beta_zero: bool,
}

pub fn separation_facts(curve: &Curve, assignments: &[SemigroupAssignment]) -> SeparationFacts {
    let (q, m) = (curve.q(), curve.m());
    let mut first = true;
    let mut second = true;
    for a in assignments {
        let inf = a.place.is_infinity();
        first &= a.result.is_gap(2 * m) != inf;
        if !inf {
            second &= a.result.is_gap(2 * q - 3) == (a.place.class == PlaceClass::BetaZero);
        }
    }
    SeparationFacts {
        places_checked: assignments.len(),
        two_m_nongap_only_at_infinity: first,
        two_q_minus_3_gap_iff_beta_zero: second,
    }
}

/// Sample sizes and classes for [`full_census`].
#[derive(Debug, Clone)]
pub struct CensusConfig {
    /// non-rational places per gamma order
    pub samples_per_class: usize,
    /// `(gamma order, degree bound)` pairs to sample
    pub gamma_orders: Vec<(u64, u32)>,
    pub prec: usize,
    /// certify every rational place instead of one per orbit
    pub certify_all_rational: bool,
}

impl CensusConfig {
    pub fn for_curve(curve: &Curve) -> Self {
        Self {
            samples_per_class: 3,
            gamma_orders: default_gamma_orders(curve),
            prec: default_precision(curve),
            certify_all_rational: false,
        }
    }
}

/// Gamma orders covering every non-rational class reachable in degree at
/// most 4 (9 for the `K = 1` class at `q = 9`).
pub fn default_gamma_orders(curve: &Curve) -> Vec<(u64, u32)> {
    match curve.t() {
        2 => vec![(4, 4), (7, 9), (8, 4), (13, 4)],
        3 => vec![(8, 4), (13, 4), (19, 4), (26, 4), (37, 4)],
        _ => Vec::new(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NonRationalSample {
    pub gamma_order: u64,
    pub class: PlaceClass,
    pub places: usize,
    pub gaps: Vec<u64>,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub q: u64,
    pub genus: u64,
    pub rational_places: usize,
    pub tags: BTreeMap<&'static str, usize>,
    pub p_order_counts: BTreeMap<u64, usize>,
    pub orbit_sizes: Vec<usize>,
    pub orbits_constant: bool,
    pub rational_certified: usize,
    pub rational_verified: bool,
    pub interval_oracle_agrees: bool,
    pub infinity_symmetry_agrees: bool,
    pub nonrational: Vec<NonRationalSample>,
    pub separation: SeparationFacts,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.orbits_constant
            && self.rational_verified
            && self.interval_oracle_agrees
            && self.infinity_symmetry_agrees
            && self.nonrational.iter().all(|s| s.verified)
            && self.separation.two_m_nongap_only_at_infinity
            && self.separation.two_q_minus_3_gap_iff_beta_zero
    }
}

/// Assignments for all rational places, certificates for one place per
/// orbit (or all), orbit checks, and sampled non-rational classes.
pub fn full_census<R: Rng + ?Sized>(
    curve: &Curve,
    config: &CensusConfig,
    rng: &mut R,
) -> Result<CensusReport, WeierError> {
    let places = curve.enumerate_rational()?;
    let assignments = places
        .iter()
        .map(|p| semigroup_at(curve, p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut tags: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut p_order_counts: BTreeMap<u64, usize> = BTreeMap::new();
    for a in &assignments {
        *tags.entry(a.theorem_tag).or_default() += 1;
        if let Some(i) = a.place.class.p_order() {
            *p_order_counts.entry(i).or_default() += 1;
        }
    }

    let group = AutGroup::new(*curve);
    let orbits = group.orbit_indices(&places)?;
    let orbits_constant = orbits.iter().all(|orbit| {
        let first = &assignments[orbit[0]];
        orbit
            .iter()
            .all(|&k| assignments[k].result == first.result && assignments[k].theorem_tag == first.theorem_tag)
    });
    let mut orbit_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    orbit_sizes.sort_unstable();

    let to_certify: Vec<usize> = if config.certify_all_rational {
        (0..places.len()).collect()
    } else {
        orbits.iter().map(|o| o[0]).collect()
    };
    let mut rational_verified = true;
    for &k in &to_certify {
        let a = certified_assignment(curve, &places[k], 0, config.prec)?;
        rational_verified &= a.all_verified() && a.result == assignments[k].result;
    }

    let mut interval_oracle_agrees = true;
    let mut seen: HashMap<PlaceClass, ()> = HashMap::new();
    for a in &assignments {
        if seen.insert(a.place.class, ()).is_some() {
            continue;
        }
        if let Some(g) = interval_gap_set(curve, a.place.class)? {
            interval_oracle_agrees &= &g == a.result.gap_set();
        }
    }
    let infinity_symmetry_agrees = &infinity_gaps_by_symmetry(curve)? == assignments[0].result.gap_set();

    let mut nonrational = Vec::new();
    for &(order, max_degree) in &config.gamma_orders {
        let sample = curve.sample_by_gamma_order(order, config.samples_per_class, max_degree, rng)?;
        let mut verified = true;
        let mut gaps = Vec::new();
        for p in &sample {
            for lift in 0..3 {
                let a = certified_assignment(curve, p, lift, config.prec)?;
                verified &= a.all_verified();
                gaps = a.result.gaps().to_vec();
            }
        }
        nonrational.push(NonRationalSample {
            gamma_order: order,
            class: sample[0].class,
            places: sample.len(),
            gaps,
            verified: verified && sample.iter().all(|p| p.class == sample[0].class),
        });
    }

    Ok(CensusReport {
        q: curve.q(),
        genus: curve.genus(),
        rational_places: places.len(),
        tags,
        p_order_counts,
        orbit_sizes,
        orbits_constant,
        rational_certified: to_certify.len(),
        rational_verified,
        interval_oracle_agrees,
        infinity_symmetry_agrees,
        nonrational,
        separation: separation_facts(curve, &assignments),
    })
}

#[cfg(test)]
mod tests;
