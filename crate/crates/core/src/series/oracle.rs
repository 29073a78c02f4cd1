//! Gap sets from holomorphic differentials, independent of the Hermitian
//! lift.
//!
//! The canonical divisor is `(m-1)(q+2) P_inf`, so the holomorphic
//! differentials are `f dy` with `f` in `L((m-1)(q+2) P_inf)`, which is
//! spanned by the monomials `x^a y^b w^c` (`w = -x^3 + x^2 - x - y^2`, pole
//! order `q + 1`) with distinct pole orders `2ma + qb + (q+1)c`. At an affine
//! place `y - b` is a uniformizer and `dy` has no zero there, so the gaps are
//! `v_P(f) + 1` over this space.

use std::collections::BTreeMap;

use crate::curve::{Curve, Place};
use crate::ff::FieldElement;
use crate::numsemi::GapSet;

use super::local::MAX_PRECISION;
use super::{SeriesError, TruncatedSeries};

/// Expansions of `x - a`, `x`, `y`, `w` in `tau = y - b`.
#[derive(Debug, Clone)]
pub struct UniformizerExpansion {
    pub x_minus_a: TruncatedSeries,
    pub x: TruncatedSeries,
    pub y: TruncatedSeries,
    pub w: TruncatedSeries,
}

/// Solves `X^q + X = s p(tau) - p(tau)^2` for `X = x - a`, with `s = p(b)`,
/// by the iteration `X <- s p(tau) - p(tau)^2 - X^q`.
pub fn expand_in_y(curve: &Curve, place: &Place, prec: usize) -> Result<UniformizerExpansion, SeriesError> {
    let (a, b) = place.coords().ok_or(SeriesError::WrongClass)?;
    if !(2..=MAX_PRECISION).contains(&prec) {
        return Err(SeriesError::Precision {
            prec,
            min: 2,
            max: MAX_PRECISION,
        });
    }
    let n = a.degree();
    let one = FieldElement::one(n);
    let mut p_tau = TruncatedSeries::zero(n, prec);
    for k in 0..curve.t() {
        p_tau = &p_tau + &TruncatedSeries::monomial(one, 3usize.pow(k), prec);
    }
    let s = curve.p(b);
    let rhs = &p_tau.scale(s) - &(&p_tau * &p_tau);
    let mut big_x = TruncatedSeries::zero(n, prec);
    loop {
        let next = &rhs - &big_x.frobenius_power(curve.t());
        if next == big_x {
            break;
        }
        big_x = next;
    }
    let x = &TruncatedSeries::constant(a, prec) + &big_x;
    let y = &TruncatedSeries::constant(b, prec) + &TruncatedSeries::monomial(one, 1, prec);
    let x2 = &x * &x;
    let w = &(&(&x2 - &(&x2 * &x)) - &x) - &(&y * &y);
    Ok(UniformizerExpansion {
        x_minus_a: big_x,
        x,
        y,
        w,
    })
}

/// Exponents `(a, b, c)` of one monomial for every pole order up to
/// `2g - 2`, keyed by pole order.
pub fn canonical_monomials(curve: &Curve) -> BTreeMap<u64, (u64, u64, u64)> {
    let (m, q) = (curve.m(), curve.q());
    let bound = curve.canonical_degree();
    let mut out = BTreeMap::new();
    for c in 0..=bound / (q + 1) {
        for b in 0..=(bound - c * (q + 1)) / q {
            let rest = bound - c * (q + 1) - b * q;
            for a in 0..=rest / (2 * m) {
                out.entry(2 * m * a + q * b + (q + 1) * c).or_insert((a, b, c));
            }
        }
    }
    out
}

/// The gap set at an affine place, read off from the differentials.
pub fn gap_set_by_differentials(curve: &Curve, place: &Place, prec: usize) -> Result<GapSet, SeriesError> {
    let exp = expand_in_y(curve, place, prec)?;
    let monomials = canonical_monomials(curve);
    assert_eq!(monomials.len() as u64, curve.genus(), "L(K) must have dimension g");
    let mut powers: [Vec<TruncatedSeries>; 3] = Default::default();
    for (series, table) in [&exp.x, &exp.y, &exp.w].into_iter().zip(powers.iter_mut()) {
        table.push(TruncatedSeries::constant(FieldElement::one(series.level()), prec));
    }
    let mut power = |which: usize, e: u64, base: &TruncatedSeries| -> TruncatedSeries {
        let table = &mut powers[which];
        while table.len() as u64 <= e {
            let next = table.last().unwrap() * base;
            table.push(next);
        }
        table[e as usize].clone()
    };
    // echelon form keyed by leading exponent
    let mut pivots: BTreeMap<usize, TruncatedSeries> = BTreeMap::new();
    for &(a, b, c) in monomials.values() {
        let mut f = &(&power(0, a, &exp.x) * &power(1, b, &exp.y)) * &power(2, c, &exp.w);
        loop {
            let Some((v, lead)) = f.leading() else {
                return Err(SeriesError::PrecisionExhausted(prec));
            };
            match pivots.get(&v) {
                Some(p) => f = &f - &p.scale(lead),
                None => {
                    pivots.insert(v, f.scale(lead.inv().unwrap()));
                    break;
                }
            }
        }
    }
    Ok(GapSet::new(pivots.keys().map(|&v| v as u64 + 1)).expect("gaps of a place form a gap set"))
}

/// A precision sufficient for [`gap_set_by_differentials`]: every valuation
/// in `L(K)` at a place is at most `2g - 2`.
pub fn default_oracle_precision(curve: &Curve) -> usize {
    curve.canonical_degree() as usize + 2
}
