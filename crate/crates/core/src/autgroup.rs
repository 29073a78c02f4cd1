//! The group `G` of maps `(x, y) -> (x + a, e*y + b)` with `a^q + a = 0`,
//! `p(b) = 0` and `e = +-1`, acting on places.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::curve::{Curve, CurveError, Place, PlaceKind};
use crate::ff::{self, FieldElement};

#[derive(Debug, Error)]
pub enum AutError {
    #[error("a^q + a = {0} is not zero")]
    BadTranslation(String),
    #[error("p(b) = {0} is not zero")]
    BadShift(String),
    #[error("parameters must lie in F_(q^2), got degree {0}")]
    WrongLevel(u32),
    #[error("automorphisms belong to different curves")]
    CurveMismatch,
    #[error("the place list is not closed under the group")]
    NotClosed,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Automorphism {
    #[serde(skip)]
    curve: Curve,
    #[serde(serialize_with = "crate::serial::field_element")]
    a: FieldElement,
    #[serde(serialize_with = "crate::serial::field_element")]
    b: FieldElement,
    negate: bool,
}

impl Automorphism {
    /// Checks `a^q + a = 0` and `p(b) = 0`; both parameters must lie in
    /// F_(q^2).
    pub fn new(curve: Curve, a: FieldElement, b: FieldElement, negate: bool) -> Result<Self, AutError> {
        let n = curve.constant_level();
        for x in [a, b] {
            if x.degree() != n {
                return Err(AutError::WrongLevel(x.degree()));
            }
        }
        let trans = curve.frob_q(a) + a;
        if !trans.is_zero() {
            return Err(AutError::BadTranslation(trans.to_string()));
        }
        let shift = curve.p(b);
        if !shift.is_zero() {
            return Err(AutError::BadShift(shift.to_string()));
        }
        Ok(Self { curve, a, b, negate })
    }

    pub fn identity(curve: Curve) -> Self {
        let zero = FieldElement::zero(curve.constant_level());
        Self {
            curve,
            a: zero,
            b: zero,
            negate: false,
        }
    }

    /// `(x, y) -> (x, -y)`.
    pub fn sign_flip(curve: Curve) -> Self {
        Self {
            negate: true,
            ..Self::identity(curve)
        }
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn sign(&self) -> i8 {
        if self.negate {
            -1
        } else {
            1
        }
    }

    fn eps(&self, x: FieldElement) -> FieldElement {
        if self.negate {
            -x
        } else {
            x
        }
    }

    /// `self` after `other`: `(a1 + a2, b1 + e1*b2, e1*e2)`.
    pub fn compose(&self, other: &Self) -> Result<Self, AutError> {
        if self.curve != other.curve {
            return Err(AutError::CurveMismatch);
        }
        Ok(Self {
            curve: self.curve,
            a: self.a + other.a,
            b: self.b + self.eps(other.b),
            negate: self.negate != other.negate,
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            curve: self.curve,
            a: -self.a,
            b: -self.eps(self.b),
            negate: self.negate,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && !self.negate
    }

    /// Image of a point given by coordinates in any field containing
    /// F_(q^2).
    pub fn apply_coords(&self, x: FieldElement, y: FieldElement) -> (FieldElement, FieldElement) {
        let n = x.degree();
        (x + ff::embed(self.a, n), self.eps(y) + ff::embed(self.b, n))
    }

    pub fn apply(&self, place: &Place) -> Result<Place, AutError> {
        match place.kind {
            PlaceKind::Infinity => Ok(place.clone()),
            PlaceKind::Affine { a, b } => {
                let (x, y) = self.apply_coords(a, b);
                Ok(self.curve.place_from_coords(x, y)?)
            }
        }
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negate { "-" } else { "" };
        write!(f, "(x, y) -> (x + {}, {sign}y + {})", self.a, self.b)
    }
}

/// The group for one curve, with its elements listed.
#[derive(Debug, Clone)]
pub struct AutGroup {
    curve: Curve,
    elements: Vec<Automorphism>,
}

impl AutGroup {
    pub fn new(curve: Curve) -> Self {
        let n = curve.constant_level();
        let mut translations = Vec::new();
        let mut shifts = Vec::new();
        for x in FieldElement::all(n) {
            if (curve.frob_q(x) + x).is_zero() {
                translations.push(x);
            }
            if curve.p(x).is_zero() {
                shifts.push(x);
            }
        }
        let mut elements = Vec::with_capacity(2 * translations.len() * shifts.len());
        for negate in [false, true] {
            for &a in &translations {
                for &b in &shifts {
                    elements.push(Automorphism { curve, a, b, negate });
                }
            }
        }
        Self { curve, elements }
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `2q^2/3`.
    pub fn expected_order(curve: &Curve) -> u64 {
        2 * curve.q() * curve.q() / 3
    }

    /// The elements of order dividing 3, which form the normal subgroup of
    /// translations.
    pub fn translations(&self) -> impl Iterator<Item = &Automorphism> {
        self.elements.iter().filter(|s| !s.negate)
    }

    pub fn contains(&self, s: &Automorphism) -> bool {
        s.curve == self.curve && self.elements.contains(s)
    }

    /// Orbit of `place`, closed under all elements by a work queue.
    pub fn orbit(&self, place: &Place) -> Result<Vec<Place>, AutError> {
        let mut seen: HashSet<Place> = HashSet::from([place.clone()]);
        let mut queue = VecDeque::from([place.clone()]);
        while let Some(p) = queue.pop_front() {
            for s in &self.elements {
                let image = s.apply(&p)?;
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut out: Vec<Place> = seen.into_iter().collect();
        out.sort_by_key(|p| p.sort_key());
        Ok(out)
    }

    /// Partition of `places` into orbits, as index lists ordered by their
    /// first element. The orbit of `p` is `{s(p) : s in G}`; every image must
    /// appear in `places`.
    pub fn orbit_indices(&self, places: &[Place]) -> Result<Vec<Vec<usize>>, AutError> {
        let index: HashMap<Option<(FieldElement, FieldElement)>, usize> =
            places.iter().enumerate().map(|(k, p)| (p.coords(), k)).collect();
        let mut assigned = vec![false; places.len()];
        let mut out = Vec::new();
        for (k, p) in places.iter().enumerate() {
            if assigned[k] {
                continue;
            }
            let mut orbit = Vec::new();
            for s in &self.elements {
                let image = p.coords().map(|(x, y)| s.apply_coords(x, y));
                let &j = index.get(&image).ok_or(AutError::NotClosed)?;
                if !assigned[j] {
                    assigned[j] = true;
                    orbit.push(j);
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        Ok(out)
    }

    pub fn orbits(&self, places: &[Place]) -> Result<Vec<Vec<Place>>, AutError> {
        Ok(self
            .orbit_indices(places)?
            .into_iter()
            .map(|o| o.into_iter().map(|k| places[k].clone()).collect())
            .collect())
    }
}
