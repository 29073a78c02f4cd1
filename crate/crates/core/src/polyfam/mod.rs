//! The polynomial families P_i, Q_i, R_i over F_3 and the orders of a field
//! element with respect to them.
//!
//! With `P_0 = 0`, `Q_0 = 1/(s(s-1))`, `R_0 = -1/s^2`, `P_1 = 1`, `Q_1 = s`,
//! `R_1 = -(s+1)`, all three satisfy
//! `X_{j+1} = -s^3 X_j - (s(s-1))^3 X_{j-1}`.

mod laurent;

pub use laurent::LaurentPoly;

use serde::Serialize;
use thiserror::Error;

use crate::ff::{self, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyFamError {
    #[error("beta must not be 0 or 1")]
    DegenerateBeta,
    #[error("index {0} is outside the supported range")]
    IndexOutOfRange(u64),
    #[error("order of gamma ({gamma_order}) disagrees with the recursion: {detail}")]
    OrderMismatch { gamma_order: u128, detail: String },
    #[error(transparent)]
    Field(#[from] ff::FieldError),
}

/// Values `(P_i(beta), Q_i(beta), R_i(beta))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyTriple {
    pub index: u64,
    #[serde(serialize_with = "crate::serial::field_element")]
    pub p_val: FieldElement,
    #[serde(serialize_with = "crate::serial::field_element")]
    pub q_val: FieldElement,
    #[serde(serialize_with = "crate::serial::field_element")]
    pub r_val: FieldElement,
}

fn check_beta(beta: FieldElement) -> Result<(), PolyFamError> {
    if beta.is_zero() || beta.is_one() {
        Err(PolyFamError::DegenerateBeta)
    } else {
        Ok(())
    }
}

/// `(P_2(beta), (beta(beta-1))^3)`, the coefficients of the recursion.
fn recursion_coefficients(beta: FieldElement) -> (FieldElement, FieldElement) {
    let one = FieldElement::one(beta.degree());
    (-beta.cube(), (beta * (beta - one)).cube())
}

/// Triples for indices `0..=n` by the three-term recursion.
pub fn sequence(n: u64, beta: FieldElement) -> Result<Vec<FamilyTriple>, PolyFamError> {
    check_beta(beta)?;
    let lvl = beta.degree();
    let one = FieldElement::one(lvl);
    let (p2, c) = recursion_coefficients(beta);
    let bm1 = beta - one;
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(FamilyTriple {
        index: 0,
        p_val: FieldElement::zero(lvl),
        q_val: (beta * bm1).inv().unwrap(),
        r_val: -(beta.square().inv().unwrap()),
    });
    if n >= 1 {
        out.push(FamilyTriple {
            index: 1,
            p_val: one,
            q_val: beta,
            r_val: -(beta + one),
        });
    }
    for k in 2..=n {
        let a = out[k as usize - 1];
        let b = out[k as usize - 2];
        out.push(FamilyTriple {
            index: k,
            p_val: p2 * a.p_val - c * b.p_val,
            q_val: p2 * a.q_val - c * b.q_val,
            r_val: p2 * a.r_val - c * b.r_val,
        });
    }
    Ok(out)
}

/// `(P_i(beta), Q_i(beta), R_i(beta))` by the recursion.
pub fn eval_recursive(i: u64, beta: FieldElement) -> Result<FamilyTriple, PolyFamError> {
    Ok(*sequence(i, beta)?.last().unwrap())
}

/// `(P_i(beta), Q_i(beta), R_i(beta))` by the closed forms in `sqrt(beta)`,
/// using the square root returned by [`ff::sqrt`].
pub fn eval_closed(i: u64, beta: FieldElement) -> Result<FamilyTriple, PolyFamError> {
    check_beta(beta)?;
    let (r, _) = ff::sqrt(beta)?;
    eval_closed_with_root(i, beta, r)
}

/// Closed forms with an explicitly chosen square root `r` of `beta`, which
/// may live in a quadratic extension of the level of `beta`.
pub fn eval_closed_with_root(
    i: u64,
    beta: FieldElement,
    r: FieldElement,
) -> Result<FamilyTriple, PolyFamError> {
    check_beta(beta)?;
    let home = beta.degree();
    let b = ff::embed(beta, r.degree());
    assert_eq!(r.square(), b, "r is not a square root of beta");
    let one = FieldElement::one(r.degree());
    let lp = b.cube() + b * r;
    let lm = b.cube() - b * r;
    let (lpi, lmi) = (lp.pow(i as u128), lm.pow(i as u128));
    let p = (lmi - lpi) / (b * r);
    let q = ((r - one) * lpi - (r + one) * lmi) / (b * (b - one));
    let rr = ((r + one) * lpi - (r - one) * lmi) / b.square();
    let down = |x: FieldElement| ff::restrict(x, home).expect("closed form leaves the field of beta");
    Ok(FamilyTriple {
        index: i,
        p_val: down(p),
        q_val: down(q),
        r_val: down(rr),
    })
}

/// Checks the three identities
/// `P_{i+j} X_{i+l} - P_i X_{i+j+l} = (beta^6 - beta^3)^i P_j X_l`
/// for `X = P, Q, R`.
pub fn identity_check(i: u64, j: u64, l: u64, beta: FieldElement) -> Result<bool, PolyFamError> {
    let seq = sequence(i + j + l, beta)?;
    let at = |k: u64| seq[k as usize];
    let factor = (beta.pow(6) - beta.cube()).pow(i as u128);
    let ok = |x: fn(&FamilyTriple) -> FieldElement| {
        at(i + j).p_val * x(&at(i + l)) - at(i).p_val * x(&at(i + j + l))
            == factor * at(j).p_val * x(&at(l))
    };
    Ok(ok(|t| t.p_val) && ok(|t| t.q_val) && ok(|t| t.r_val))
}

/// `R_i = R_{i-1} beta (beta-1)^2 + P_i / beta` at a point.
pub fn corollary_check(i: u64, beta: FieldElement) -> Result<bool, PolyFamError> {
    if i == 0 {
        return Err(PolyFamError::IndexOutOfRange(0));
    }
    let seq = sequence(i, beta)?;
    let one = FieldElement::one(beta.degree());
    let (a, b) = (seq[i as usize - 1], seq[i as usize]);
    Ok(b.r_val == a.r_val * beta * (beta - one).square() + b.p_val / beta)
}

/// The three families as exact rational functions for indices `0..=n`.
pub fn symbolic_sequence(n: u64) -> Vec<[LaurentPoly; 3]> {
    let s = LaurentPoly::s();
    let one = LaurentPoly::constant(1);
    let p2 = -&s.pow(3);
    let c = (&s * &(&s - &one)).pow(3);
    let mut out = vec![[
        LaurentPoly::zero(),
        LaurentPoly::new(vec![1], -1, -1),
        LaurentPoly::new(vec![2], -2, 0),
    ]];
    if n >= 1 {
        out.push([one.clone(), s.clone(), -&(&s + &one)]);
    }
    for k in 2..=n as usize {
        let next = std::array::from_fn(|f| &(&p2 * &out[k - 1][f]) - &(&c * &out[k - 2][f]));
        out.push(next);
    }
    out
}

/// The corollary identity as an identity of rational functions.
pub fn corollary_check_symbolic(i: u64) -> bool {
    if i == 0 {
        return false;
    }
    let seq = symbolic_sequence(i);
    let s = LaurentPoly::s();
    let sm1 = &s - &LaurentPoly::constant(1);
    let rhs = &(&(&seq[i as usize - 1][2] * &s) * &(&sm1 * &sm1)) + &(&seq[i as usize][0] * &LaurentPoly::s_pow(-1));
    seq[i as usize][2] == rhs
}

/// The three identities of [`identity_check`] as identities of rational
/// functions.
pub fn identity_check_symbolic(i: u64, j: u64, l: u64) -> bool {
    let seq = symbolic_sequence(i + j + l);
    let s = LaurentPoly::s();
    let factor = (&s.pow(6) - &s.pow(3)).pow(i as u32);
    let at = |k: u64| &seq[k as usize];
    (0..3).all(|f| {
        let lhs = &(&at(i + j)[0] * &at(i + l)[f]) - &(&at(i)[0] * &at(i + j + l)[f]);
        lhs == &(&factor * &at(j)[0]) * &at(l)[f]
    })
}

/// `gamma = (r + 1)/(r - 1)` for the canonical square root `r` of `beta`.
pub fn gamma(beta: FieldElement) -> Result<FieldElement, PolyFamError> {
    check_beta(beta)?;
    let (r, _) = ff::sqrt(beta)?;
    let one = FieldElement::one(r.degree());
    Ok((r + one) / (r - one))
}

/// Longest `P_{i+1}` check done by running the recursion; larger orders are
/// confirmed through the closed form instead.
const RECURSION_CHECK_LIMIT: u128 = 4096;

/// P-order: the least `i >= 1` with `P_{i+1}(beta) = 0`, computed as
/// `ord(gamma) - 1` and confirmed against the families.
pub fn p_order(beta: FieldElement) -> Result<u64, PolyFamError> {
    let g = gamma(beta)?;
    let order = ff::mult_order(g)?;
    let i = order - 1;
    let mismatch = |detail: String| PolyFamError::OrderMismatch {
        gamma_order: order,
        detail,
    };
    if i < 2 || i % 3 == 2 {
        return Err(mismatch(format!("P-order {i} violates i >= 2, i != 2 mod 3")));
    }
    if order <= RECURSION_CHECK_LIMIT {
        let seq = sequence(order as u64, beta)?;
        if let Some(k) = (2..=i as usize).find(|&k| seq[k].p_val.is_zero()) {
            return Err(mismatch(format!("P_{k} vanishes before index {order}")));
        }
        if !seq[order as usize].p_val.is_zero() {
            return Err(mismatch(format!("P_{order} does not vanish")));
        }
    } else {
        if !eval_closed(order as u64, beta)?.p_val.is_zero() {
            return Err(mismatch(format!("P_{order} does not vanish")));
        }
        for &(p, _) in &crate::ff::factor::factor_u128(order) {
            if eval_closed((order / p) as u64, beta)?.p_val.is_zero() {
                return Err(mismatch(format!("P_{} vanishes", order / p)));
            }
        }
    }
    Ok(i as u64)
}

/// R-order from the P-order by the congruence rule: `i / 3` when
/// `i = 0 mod 3`, `(2i + 1)/3` when `i = 1 mod 3`.
pub fn r_order_from_p_order(i: u64) -> u64 {
    match i % 3 {
        0 => i / 3,
        1 => (2 * i + 1) / 3,
        _ => panic!("P-order {i} is 2 mod 3"),
    }
}

/// Least `k >= 1` with `R_k(beta) = 0`, i.e. the least `k` with
/// `gamma^(3k+1) = 1`.
pub fn first_r_zero(beta: FieldElement) -> Result<u64, PolyFamError> {
    let order = ff::mult_order(gamma(beta)?)?;
    // 3k + 1 = 0 mod order; 3 is invertible since the order divides 3^n - 1
    let order = order as i128;
    let (mut r0, mut r1, mut t0, mut t1) = (order, 3i128, 0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    let k = (-t0).rem_euclid(order);
    Ok(if k == 0 { order as u64 } else { k as u64 })
}

/// R-order: the least `K >= 0` with `R_{K+1}(beta) = 0`, i.e.
/// `first_r_zero(beta) - 1`, confirmed against the recursion.
///
/// This is one less than [`r_order_from_p_order`]: the congruence rule names
/// the first vanishing index itself, while the valuations of the `g` chain
/// depend on the index before it.
pub fn r_order(beta: FieldElement) -> Result<u64, PolyFamError> {
    let first = first_r_zero(beta)?;
    let k = first - 1;
    let order = ff::mult_order(gamma(beta)?)?;
    let mismatch = |detail: String| PolyFamError::OrderMismatch {
        gamma_order: order,
        detail,
    };
    if (first as u128) <= RECURSION_CHECK_LIMIT {
        let seq = sequence(first, beta)?;
        if let Some(j) = (1..first as usize).find(|&j| seq[j].r_val.is_zero()) {
            return Err(mismatch(format!("R_{j} vanishes before index {first}")));
        }
        if !seq[first as usize].r_val.is_zero() {
            return Err(mismatch(format!("R_{first} does not vanish")));
        }
    } else if !eval_closed(first, beta)?.r_val.is_zero() {
        return Err(mismatch(format!("R_{first} does not vanish")));
    }
    Ok(k)
}
