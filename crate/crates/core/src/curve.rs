//! The curve `x^q + x + p(y)^2 = 0` over F_{q^2}, `q = 3^t`, and its places.

use std::collections::HashMap;

use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ff::{self, gfpoly::GfPoly, linear::solve_linear, FieldElement, FieldError};
use crate::polyfam::{self, PolyFamError};

/// Largest supported `t` (so `q <= 81`).
pub const MAX_T: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    PolyFam(#[from] PolyFamError),
    #[error("q = 3^{0} exceeds the supported cap 3^{MAX_T}")]
    TooLarge(u32),
    #[error("({a}, {b}) does not satisfy the curve equation")]
    NotOnCurve { a: String, b: String },
    #[error("coordinates live in different fields (degrees {0} and {1})")]
    LevelMismatch(u32, u32),
    #[error("the Hermitian lift needs beta != 0")]
    BetaZero,
    #[error("the point at infinity has no affine lift")]
    InfinityLift,
    #[error("gamma order {0} is not realizable (it must be >= 3 and prime to 3)")]
    BadGammaOrder(u64),
    #[error("no place with gamma of order {order} found within degree {max_degree} over F_(q^2)")]
    NoPlaceFound { order: u64, max_degree: u32 },
}

/// The curve for one value of `t >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    t: u32,
}

impl Curve {
    pub fn new(t: u32) -> Result<Self, CurveError> {
        if t < 2 {
            return Err(FieldError::EllipticCase(t).into());
        }
        if t > MAX_T {
            return Err(CurveError::TooLarge(t));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn q(&self) -> u64 {
        3u64.pow(self.t)
    }

    /// `m = q/3`.
    pub fn m(&self) -> u64 {
        self.q() / 3
    }

    pub fn genus(&self) -> u64 {
        self.q() * (self.q() - 1) / 6
    }

    /// Degree of the canonical divisor `(m-1)(q+2) P_inf`, i.e. `2g - 2`.
    pub fn canonical_degree(&self) -> u64 {
        (self.m() - 1) * (self.q() + 2)
    }

    /// Degree of F_{q^2} over F_3.
    pub fn constant_level(&self) -> u32 {
        2 * self.t
    }

    /// `x -> x^q`.
    pub fn frob_q(&self, x: FieldElement) -> FieldElement {
        x.frobenius(self.t)
    }

    /// `p(b)`.
    pub fn p(&self, b: FieldElement) -> FieldElement {
        ff::trace_p(b, self.t)
    }

    pub fn beta_of(&self, b: FieldElement) -> FieldElement {
        self.p(b).square()
    }

    pub fn is_on_curve(&self, a: FieldElement, b: FieldElement) -> bool {
        a.degree() == b.degree() && (self.frob_q(a) + a + self.beta_of(b)).is_zero()
    }

    /// Number of rational places, `q^2 + 1 + 2qg`.
    pub fn rational_place_count(&self) -> u64 {
        let q = self.q();
        q * q + 1 + 2 * q * self.genus()
    }

    pub fn infinity(&self) -> Place {
        Place {
            kind: PlaceKind::Infinity,
            beta: None,
            degree: 1,
            class: PlaceClass::Infinity,
        }
    }

    /// The place with `x = a`, `y = b`.
    pub fn place_from_coords(&self, a: FieldElement, b: FieldElement) -> Result<Place, CurveError> {
        if a.degree() != b.degree() {
            return Err(CurveError::LevelMismatch(a.degree(), b.degree()));
        }
        if !self.is_on_curve(a, b) {
            return Err(CurveError::NotOnCurve {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        let beta = self.beta_of(b);
        Ok(Place {
            kind: PlaceKind::Affine { a, b },
            beta: Some(beta),
            degree: self.degree_of(a, b),
            class: self.classify_beta(Some(beta))?,
        })
    }

    /// Least `d` with `a^(q^(2d)) = a` and `b^(q^(2d)) = b`.
    fn degree_of(&self, a: FieldElement, b: FieldElement) -> u32 {
        let step = self.constant_level();
        (1..)
            .find(|&d| a.frobenius(step * d) == a && b.frobenius(step * d) == b)
            .expect("every element is fixed by some power of Frobenius")
    }

    /// Whether `beta` lies in F_q and is a non-square there.
    pub fn is_rational_beta(&self, beta: FieldElement) -> bool {
        let minus_one = -FieldElement::one(beta.degree());
        self.frob_q(beta) == beta && beta.pow(((self.q() - 1) / 2) as u128) == minus_one
    }

    /// Class of a place from its `beta` (`None` for the point at infinity).
    pub fn classify_beta(&self, beta: Option<FieldElement>) -> Result<PlaceClass, CurveError> {
        let Some(beta) = beta else {
            return Ok(PlaceClass::Infinity);
        };
        if beta.is_zero() {
            return Ok(PlaceClass::BetaZero);
        }
        if beta.is_one() {
            return Ok(PlaceClass::BetaOne);
        }
        let i = polyfam::p_order(beta)?;
        if self.is_rational_beta(beta) {
            return Ok(PlaceClass::RationalGeneral { i });
        }
        let k = polyfam::r_order(beta)?;
        Ok(if k + 2 <= self.m() {
            PlaceClass::NonRationalSpecial { i, k }
        } else {
            PlaceClass::NonRationalGeneric { i, k }
        })
    }

    pub fn classify(&self, place: &Place) -> Result<PlaceClass, CurveError> {
        self.classify_beta(place.beta)
    }

    /// All places of degree one, the point at infinity first, then affine
    /// places ordered by the enumeration index of `(a, b)`.
    pub fn enumerate_rational(&self) -> Result<Vec<Place>, CurveError> {
        let n = self.constant_level();
        let mut fibres: HashMap<FieldElement, Vec<FieldElement>> = HashMap::new();
        for a in FieldElement::all(n) {
            fibres.entry(self.frob_q(a) + a).or_default().push(a);
        }
        let mut classes: HashMap<FieldElement, PlaceClass> = HashMap::new();
        let mut affine = Vec::new();
        for b in FieldElement::all(n) {
            let beta = self.beta_of(b);
            let Some(fibre) = fibres.get(&-beta) else {
                continue;
            };
            let class = match classes.get(&beta) {
                Some(c) => *c,
                None => {
                    let c = self.classify_beta(Some(beta))?;
                    classes.insert(beta, c);
                    c
                }
            };
            for &a in fibre {
                affine.push(Place {
                    kind: PlaceKind::Affine { a, b },
                    beta: Some(beta),
                    degree: 1,
                    class,
                });
            }
        }
        affine.sort_by_key(|p| p.sort_key());
        let mut out = vec![self.infinity()];
        out.extend(affine);
        Ok(out)
    }

    /// The three Hermitian lifts of an affine place with `beta != 0`, in the
    /// smallest level (the level of the place or three times it) containing
    /// the roots of `X^3 - X - b`.
    pub fn hermitian_lifts(&self, place: &Place) -> Result<Vec<HermitianLift>, CurveError> {
        let PlaceKind::Affine { a, b } = place.kind else {
            return Err(CurveError::InfinityLift);
        };
        if self.beta_of(b).is_zero() {
            return Err(CurveError::BetaZero);
        }
        let artin_schreier = |n: u32, b: FieldElement| {
            let one = FieldElement::one(n);
            GfPoly::new(n, vec![-b, -one, FieldElement::zero(n), one]).roots()
        };
        let mut n = b.degree();
        let (mut a, mut b) = (a, b);
        let mut roots = artin_schreier(n, b);
        if roots.is_empty() {
            let big = 3 * n;
            if big > ff::REPR_MAX_DEGREE {
                return Err(FieldError::DegreeOverflow {
                    degree: big,
                    bound: ff::REPR_MAX_DEGREE,
                }
                .into());
            }
            a = ff::embed(a, big);
            b = ff::embed(b, big);
            n = big;
            roots = artin_schreier(n, b);
        }
        assert_eq!(roots.len(), 3, "X^3 - X - b must split once it has a root");
        Ok(roots
            .into_iter()
            .map(|big_b| HermitianLift::new(*self, a, b, big_b))
            .collect())
    }

    /// A random affine place whose coordinates lie in F_{3^level}.
    pub fn random_affine_place<R: Rng + ?Sized>(&self, level: u32, rng: &mut R) -> Result<Place, CurveError> {
        if level % self.constant_level() != 0 {
            return Err(CurveError::LevelMismatch(level, self.constant_level()));
        }
        loop {
            let b = FieldElement::random(level, rng);
            let rhs = -self.p(b).square();
            if let Some(a) = random_solution(|x| self.frob_q(x) + x, rhs, rng) {
                return self.place_from_coords(a, b);
            }
        }
    }

    /// Samples up to `count` distinct affine places whose `gamma` has
    /// multiplicative order `order`, of degree at most `max_degree` over
    /// F_{q^2}.
    ///
    /// For a field F_{3^L} containing such a `gamma`, put
    /// `s = (gamma + 1)/(gamma - 1)` and solve the F_3-linear equations
    /// `p(b) = s` and `a^q + a = -s^2` there. Places whose Hermitian lift
    /// would need a field beyond [`ff::DEFAULT_MAX_DEGREE`] are skipped.
    pub fn sample_by_gamma_order<R: Rng + ?Sized>(
        &self,
        order: u64,
        count: usize,
        max_degree: u32,
        rng: &mut R,
    ) -> Result<Vec<Place>, CurveError> {
        if order < 3 || order % 3 == 0 {
            return Err(CurveError::BadGammaOrder(order));
        }
        let n0 = multiplicative_order_mod(3, order);
        let step = self.constant_level();
        let mut found: Vec<Place> = Vec::new();
        for d in 1..=max_degree {
            let level = step * d;
            if level > ff::DEFAULT_MAX_DEGREE || level as u64 % n0 != 0 {
                continue;
            }
            let cofactor = (3u128.pow(level) - 1) / order as u128;
            let one = FieldElement::one(level);
            for _ in 0..64 * count.max(1) {
                if found.len() >= count {
                    return Ok(found);
                }
                let gamma = FieldElement::random_nonzero(level, rng).pow(cofactor);
                if ff::mult_order(gamma)? != order as u128 {
                    continue;
                }
                let s = (gamma + one) / (gamma - one);
                let Some(b) = random_solution(|x| self.p(x), s, rng) else {
                    continue;
                };
                let lift_level = if b_splits(b) { level } else { 3 * level };
                if lift_level > ff::DEFAULT_MAX_DEGREE {
                    continue;
                }
                let Some(a) = random_solution(|x| self.frob_q(x) + x, -s.square(), rng) else {
                    continue;
                };
                let place = self.place_from_coords(a, b)?;
                if !found.contains(&place) {
                    found.push(place);
                }
            }
        }
        if found.is_empty() {
            Err(CurveError::NoPlaceFound { order, max_degree })
        } else {
            Ok(found)
        }
    }
}

/// Whether `X^3 - X - b` has its roots in the field of `b`, i.e. whether the
/// absolute trace of `b` vanishes.
fn b_splits(b: FieldElement) -> bool {
    (0..b.degree())
        .fold(FieldElement::zero(b.degree()), |acc, k| acc + b.frobenius(k))
        .is_zero()
}

/// A uniformly random solution of the F_3-linear equation `map(x) = rhs`.
fn random_solution<F, R>(map: F, rhs: FieldElement, rng: &mut R) -> Option<FieldElement>
where
    F: Fn(FieldElement) -> FieldElement,
    R: Rng + ?Sized,
{
    let sol = solve_linear(map, rhs)?;
    let mut x = sol.particular;
    for &k in &sol.kernel {
        x += FieldElement::from_int(k.degree(), rng.gen_range(0..3)) * k;
    }
    Some(x)
}

/// Least `n >= 1` with `base^n = 1 (mod modulus)`.
pub fn multiplicative_order_mod(base: u64, modulus: u64) -> u64 {
    let mut x = base % modulus;
    let mut n = 1;
    while x != 1 % modulus {
        x = x * base % modulus;
        n += 1;
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    Infinity,
    Affine { a: FieldElement, b: FieldElement },
}

/// Class of a place; `i` is the P-order and `k` the R-order of `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum PlaceClass {
    Infinity,
    BetaZero,
    BetaOne,
    RationalGeneral { i: u64 },
    NonRationalGeneric { i: u64, k: u64 },
    NonRationalSpecial { i: u64, k: u64 },
}

impl PlaceClass {
    /// Kebab-case name without the orders.
    pub fn name(&self) -> &'static str {
        match self {
            Self::Infinity => "infinity",
            Self::BetaZero => "beta-zero",
            Self::BetaOne => "beta-one",
            Self::RationalGeneral { .. } => "rational-general",
            Self::NonRationalGeneric { .. } => "non-rational-generic",
            Self::NonRationalSpecial { .. } => "non-rational-special",
        }
    }

    pub fn p_order(&self) -> Option<u64> {
        match *self {
            Self::RationalGeneral { i } | Self::NonRationalGeneric { i, .. } | Self::NonRationalSpecial { i, .. } => {
                Some(i)
            }
            _ => None,
        }
    }

    pub fn r_order(&self) -> Option<u64> {
        match *self {
            Self::NonRationalGeneric { k, .. } | Self::NonRationalSpecial { k, .. } => Some(k),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        !matches!(self, Self::NonRationalGeneric { .. } | Self::NonRationalSpecial { .. })
    }
}

/// A place of the curve. Affine coordinates may live in any field containing
/// them; `degree` is the degree of the place over F_{q^2}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Place {
    pub kind: PlaceKind,
    pub beta: Option<FieldElement>,
    pub degree: u32,
    pub class: PlaceClass,
}

impl Place {
    pub fn is_infinity(&self) -> bool {
        matches!(self.kind, PlaceKind::Infinity)
    }

    pub fn coords(&self) -> Option<(FieldElement, FieldElement)> {
        match self.kind {
            PlaceKind::Infinity => None,
            PlaceKind::Affine { a, b } => Some((a, b)),
        }
    }

    /// Degree over F_3 of the field holding the coordinates.
    pub fn level(&self) -> Option<u32> {
        self.coords().map(|(a, _)| a.degree())
    }

    pub(crate) fn sort_key(&self) -> (u128, u128) {
        self.coords().map_or((0, 0), |(a, b)| (a.to_index(), b.to_index()))
    }
}

#[derive(Serialize)]
struct PlaceView<'a> {
    kind: &'static str,
    #[serde(serialize_with = "crate::serial::optional_field_element")]
    a: Option<FieldElement>,
    #[serde(serialize_with = "crate::serial::optional_field_element")]
    b: Option<FieldElement>,
    level: Option<u32>,
    #[serde(serialize_with = "crate::serial::optional_field_element")]
    beta: Option<FieldElement>,
    degree: u32,
    class: &'a PlaceClass,
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (a, b) = self.coords().unzip();
        PlaceView {
            kind: if self.is_infinity() { "infinity" } else { "affine" },
            a,
            b,
            level: self.level(),
            beta: self.beta,
            degree: self.degree,
            class: &self.class,
        }
        .serialize(s)
    }
}

/// A place of the Hermitian curve `u^q + u = v^(q+1)` above an affine place
/// `(a, b)`: `x = -(u + v^2)`, `y = v^3 - v`, with `v(P) = B`, `u(P) = A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HermitianLift {
    pub curve: Curve,
    pub a: FieldElement,
    pub b: FieldElement,
    pub big_a: FieldElement,
    pub big_b: FieldElement,
    /// `s = B^q - B = p(b)`
    pub s: FieldElement,
    /// `beta = s^2`
    pub beta: FieldElement,
}

impl HermitianLift {
    fn new(curve: Curve, a: FieldElement, b: FieldElement, big_b: FieldElement) -> Self {
        let big_a = -a - big_b.square();
        let s = curve.frob_q(big_b) - big_b;
        assert_eq!(big_b.cube() - big_b, b);
        assert_eq!(curve.frob_q(big_a) + big_a, curve.frob_q(big_b) * big_b);
        assert_eq!(s, curve.p(b));
        assert!(!s.is_zero());
        Self {
            curve,
            a,
            b,
            big_a,
            big_b,
            s,
            beta: s.square(),
        }
    }

    pub fn level(&self) -> u32 {
        self.a.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    fn census(places: &[Place]) -> BTreeMap<PlaceClass, usize> {
        let mut out = BTreeMap::new();
        for p in places {
            *out.entry(p.class).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn elliptic_case_rejected() {
        assert_eq!(
            Curve::new(1).unwrap_err().to_string(),
            "t must be ≥ 2 (t = 1 gives an elliptic curve)"
        );
        assert!(Curve::new(5).is_err());
    }

    #[test]
    fn origin_is_a_beta_zero_place() {
        let c = Curve::new(2).unwrap();
        let z = FieldElement::zero(4);
        let p = c.place_from_coords(z, z).unwrap();
        assert_eq!(p.class, PlaceClass::BetaZero);
        assert_eq!(p.degree, 1);
        assert!(c.place_from_coords(FieldElement::one(4), z).is_err());
    }

    #[test]
    fn beta_one_places_have_trace_minus_one() {
        let c = Curve::new(2).unwrap();
        for p in c.enumerate_rational().unwrap() {
            if p.class == PlaceClass::BetaOne {
                let (a, b) = p.coords().unwrap();
                assert_eq!(c.frob_q(a) + a, -FieldElement::one(4));
                let pb = c.p(b);
                assert!(pb.is_one() || pb == -FieldElement::one(4));
            }
        }
    }

    #[test]
    fn rational_census_q9() {
        let c = Curve::new(2).unwrap();
        let places = c.enumerate_rational().unwrap();
        assert_eq!(places.len(), 298);
        assert_eq!(c.rational_place_count(), 298);
        let counts = census(&places);
        assert_eq!(counts[&PlaceClass::Infinity], 1);
        assert_eq!(counts[&PlaceClass::BetaZero], 27);
        assert_eq!(counts[&PlaceClass::BetaOne], 54);
        assert_eq!(counts[&PlaceClass::RationalGeneral { i: 4 }], 108);
        assert_eq!(counts[&PlaceClass::RationalGeneral { i: 9 }], 108);
        // the four beta with beta^4 = -1 carry 54 places each
        let mut by_beta: HashMap<FieldElement, usize> = HashMap::new();
        for p in &places {
            if let (Some(beta), PlaceClass::RationalGeneral { .. }) = (p.beta, p.class) {
                *by_beta.entry(beta).or_insert(0) += 1;
            }
        }
        assert_eq!(by_beta.len(), 4);
        assert!(by_beta.values().all(|&n| n == 54));
    }

    #[test]
    fn rational_beta_criterion_is_exact_at_q9() {
        // brute force over all of F_81 x F_81 independently of the fibre map
        let c = Curve::new(2).unwrap();
        let mut count = 1;
        for a in FieldElement::all(4) {
            for b in FieldElement::all(4) {
                if c.is_on_curve(a, b) {
                    count += 1;
                    let beta = c.beta_of(b);
                    assert!(beta.is_zero() || beta.is_one() || c.is_rational_beta(beta));
                }
            }
        }
        assert_eq!(count, 298);
        for beta in FieldElement::all(2).map(|x| ff::embed(x, 4)) {
            if c.is_rational_beta(beta) {
                assert!(c.enumerate_rational().unwrap().iter().any(|p| p.beta == Some(beta)));
            }
        }
    }

    #[test]
    fn classify_examples_q9() {
        let c = Curve::new(2).unwrap();
        assert_eq!(c.classify(&c.infinity()).unwrap(), PlaceClass::Infinity);
        // beta = -1: gamma of order 4, R_1 = 0
        let minus_one = -FieldElement::one(4);
        assert_eq!(
            c.classify_beta(Some(minus_one)).unwrap(),
            PlaceClass::NonRationalSpecial { i: 3, k: 0 }
        );
    }

    #[test]
    fn lifts_are_consistent() {
        let c = Curve::new(2).unwrap();
        let places = c.enumerate_rational().unwrap();
        for p in places.iter().filter(|p| p.class != PlaceClass::BetaZero).skip(1).step_by(7) {
            let lifts = c.hermitian_lifts(p).unwrap();
            assert_eq!(lifts.len(), 3);
            for l in &lifts {
                assert_eq!(ff::embed(p.beta.unwrap(), l.level()), l.beta);
            }
            let one = FieldElement::one(lifts[0].level());
            assert!(lifts.iter().any(|l| l.big_b == lifts[0].big_b + one));
        }
        let z = FieldElement::zero(4);
        assert_eq!(c.hermitian_lifts(&c.place_from_coords(z, z).unwrap()), Err(CurveError::BetaZero));
    }

    #[test]
    fn sampled_places_have_requested_gamma_order() {
        let c = Curve::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // gamma of order 7 first shows up in degree 9 over F_81
        for (order, max_degree, class) in [
            (4u64, 4u32, PlaceClass::NonRationalSpecial { i: 3, k: 0 }),
            (7, 9, PlaceClass::NonRationalSpecial { i: 6, k: 1 }),
            (8, 4, PlaceClass::NonRationalGeneric { i: 7, k: 4 }),
        ] {
            let places = c.sample_by_gamma_order(order, 3, max_degree, &mut rng).unwrap();
            assert_eq!(places.len(), 3);
            for p in &places {
                assert_eq!(p.class, class);
                assert!(p.degree > 1 && p.degree <= max_degree);
                assert!(c.hermitian_lifts(p).unwrap()[0].level() <= ff::DEFAULT_MAX_DEGREE);
            }
        }
        assert!(matches!(
            c.sample_by_gamma_order(7, 1, 8, &mut rng),
            Err(CurveError::NoPlaceFound { .. })
        ));
        assert!(c.sample_by_gamma_order(6, 1, 4, &mut rng).is_err());
    }

    #[test]
    fn place_serializes_coefficients() {
        let c = Curve::new(2).unwrap();
        let z = FieldElement::zero(4);
        let json = serde_json::to_string(&c.place_from_coords(z, z).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"affine","a":[0,0,0,0],"b":[0,0,0,0],"level":4,"beta":[0,0,0,0],"degree":1,"class":{"class":"beta-zero"}}"#
        );
    }
}
