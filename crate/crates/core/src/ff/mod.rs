//! Exact arithmetic in F_{3^n}.

mod element;
pub(crate) mod f3poly;
pub mod factor;
pub mod gfpoly;
mod level;
pub mod linear;
pub mod tower;

pub use element::{FieldElement, REPR_MAX_DEGREE};
pub use level::{is_irreducible, modulus};
pub use tower::{embed, embedding, restrict, Embedding, FieldTower, DEFAULT_MAX_DEGREE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("t must be ≥ 2 (t = {0} gives an elliptic curve)")]
    EllipticCase(u32),
    #[error("field degree {degree} exceeds the configured bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },
    #[error("F_3^{from} is not a level below F_3^{to} in this tower")]
    NotASubfield { from: u32, to: u32 },
    #[error("zero has no multiplicative order")]
    ZeroOrder,
}

/// `p(b) = b + b^3 + ... + b^(3^(t-1))`.
pub fn trace_p(b: FieldElement, t: u32) -> FieldElement {
    let mut acc = FieldElement::zero(b.degree());
    let mut power = b;
    for _ in 0..t {
        acc += power;
        power = power.cube();
    }
    acc
}

/// Whether `x` is a square in its own level.
pub fn is_square(x: FieldElement) -> bool {
    x.is_zero() || x.pow((x.level().size() - 1) / 2).is_one()
}

/// Square root of `x`.
///
/// The root lives in the level of `x` when `x` is a square there (flag
/// `false`), otherwise in the level of twice the degree (flag `true`). Of the
/// two roots, the one whose coefficient vector is lexicographically smaller
/// is returned.
pub fn sqrt(x: FieldElement) -> Result<(FieldElement, bool), FieldError> {
    if x.is_zero() {
        return Ok((x, false));
    }
    if is_square(x) {
        return Ok((tonelli_shanks(x), false));
    }
    let big = 2 * x.degree();
    if big > REPR_MAX_DEGREE {
        return Err(FieldError::DegreeOverflow {
            degree: big,
            bound: REPR_MAX_DEGREE,
        });
    }
    Ok((tonelli_shanks(embed(x, big)), true))
}

fn tonelli_shanks(x: FieldElement) -> FieldElement {
    let n = x.degree();
    let size = x.level().size();
    let mut odd = size - 1;
    let mut s = 0u32;
    while odd % 2 == 0 {
        odd /= 2;
        s += 1;
    }
    let minus_one = -FieldElement::one(n);
    let nonresidue = (1u128..)
        .map(|k| FieldElement::from_index(n, k))
        .find(|z| z.pow((size - 1) / 2) == minus_one)
        .expect("multiplicative group has non-squares");
    let mut c = nonresidue.pow(odd);
    let mut r = x.pow(odd.div_ceil(2));
    let mut tt = x.pow(odd);
    let mut m = s;
    while !tt.is_one() {
        let mut i = 0;
        let mut probe = tt;
        while !probe.is_one() {
            probe = probe.square();
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = b.square();
        }
        r *= b;
        c = b.square();
        tt *= c;
        m = i;
    }
    debug_assert_eq!(r.square(), x);
    let other = -r;
    if r.lex_cmp(&other).is_le() {
        r
    } else {
        other
    }
}

/// Least `k >= 1` with `x^k = 1`.
pub fn mult_order(x: FieldElement) -> Result<u128, FieldError> {
    if x.is_zero() {
        return Err(FieldError::ZeroOrder);
    }
    let lvl = x.level();
    let mut order = lvl.size() - 1;
    for &(p, _) in lvl.group_order_factors() {
        while order % p == 0 && x.pow(order / p).is_one() {
            order /= p;
        }
    }
    Ok(order)
}

/// `N / n`-fold norm `x * x^(3^n) * ...` from F_{3^N} down to F_{3^n}.
pub fn norm_to(x: FieldElement, n: u32) -> Option<FieldElement> {
    let big = x.degree();
    if big % n != 0 {
        return None;
    }
    let mut acc = FieldElement::one(big);
    let mut conj = x;
    for _ in 0..big / n {
        acc *= conj;
        conj = conj.frobenius(n);
    }
    restrict(acc, n)
}

/// Relative trace from F_{3^N} down to F_{3^n}.
pub fn trace_to(x: FieldElement, n: u32) -> Option<FieldElement> {
    let big = x.degree();
    if big % n != 0 {
        return None;
    }
    let mut acc = FieldElement::zero(big);
    let mut conj = x;
    for _ in 0..big / n {
        acc += conj;
        conj = conj.frobenius(n);
    }
    restrict(acc, n)
}
