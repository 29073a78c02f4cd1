//! Gap witnesses at non-rational places: functions `h` with
//! `v_P(h) = gap - 1` whose pole order at infinity is at most `2g - 2`.

use crate::curve::{Curve, PlaceClass};

use super::chains::{build_f_chain, build_g_chain};
use super::local::{GeneratorBasis, LocalExpansion};
use super::tracked::{LocalFunction, TrackedFunction};
use super::SeriesError;

/// Everything the witness constructions draw on at one place.
#[derive(Debug, Clone)]
pub struct WitnessContext {
    pub curve: Curve,
    pub class: PlaceClass,
    pub basis: GeneratorBasis,
    pub f_chain: Vec<LocalFunction>,
    pub g_chain: Vec<LocalFunction>,
}

impl WitnessContext {
    /// Builds the chains a non-rational place needs: up to `m - 2` at generic
    /// places, `f` up to the P-order and `g` up to the R-order at special
    /// ones.
    pub fn new(class: PlaceClass, expansion: &LocalExpansion) -> Result<Self, SeriesError> {
        let basis = expansion.basis.clone();
        let curve = basis.curve;
        let m = curve.m();
        let (f_len, g_len) = match class {
            PlaceClass::NonRationalGeneric { .. } => (m - 2, m - 2),
            PlaceClass::NonRationalSpecial { i, k } => (i, k),
            _ => return Err(SeriesError::WrongClass),
        };
        let f_chain = build_f_chain(&basis, f_len)?;
        let g_chain = build_g_chain(&basis, &f_chain, g_len)?;
        Ok(Self {
            curve,
            class,
            basis,
            f_chain,
            g_chain,
        })
    }

    fn tracked(&self, j: u64, h: LocalFunction) -> TrackedFunction {
        TrackedFunction::new(j as i64, h, self.curve.q(), self.curve.q())
    }

    fn g(&self, l: u64) -> Result<&LocalFunction, SeriesError> {
        self.g_chain.get(l as usize).ok_or(SeriesError::ChainIndex {
            index: l,
            order: self.g_chain.len() as u64 - 1,
        })
    }

    fn f(&self, l: u64) -> Result<&LocalFunction, SeriesError> {
        self.f_chain.get(l as usize).ok_or(SeriesError::ChainIndex {
            index: l,
            order: self.f_chain.len() as u64 - 1,
        })
    }
}

/// Splits a positive integer as `jq + k` with `1 <= k <= q`.
pub fn split_gap(q: u64, gap: u64) -> (u64, u64) {
    let j = (gap - 1) / q;
    (j, gap - j * q)
}

/// `h_{j,k}` for `jq + k` in the generic gap set.
pub fn gap_witness_generic(ctx: &WitnessContext, j: u64, k: u64) -> Result<TrackedFunction, SeriesError> {
    let (q, m) = (ctx.curve.q(), ctx.curve.m());
    if j >= m || k == 0 || k + 3 * j + 2 > q {
        return Err(SeriesError::NotAGapIndex { j, k });
    }
    let b = &ctx.basis;
    let h = match k {
        1 => b.one(),
        2 => b.x_a.clone(),
        3 => b.f0.clone(),
        _ => {
            let l = k / 3;
            match k % 3 {
                0 => ctx.g(l - 2)?.mul(&b.f0),
                1 => ctx.g(l - 1)?.clone(),
                _ => ctx.g(l - 1)?.mul(&b.x_a),
            }
        }
    };
    Ok(ctx.tracked(j, h))
}

/// Whether `jq + k` (with `1 <= k <= q`) belongs to the gap set of a special
/// place: the generic set with the last gap of the rows
/// `j = m - K - 2 - l(i + 1)` moved up by one.
pub fn in_special_gap_set(curve: &Curve, i: u64, big_k: u64, j: u64, k: u64) -> bool {
    let (q, m) = (curve.q(), curve.m());
    if j >= m || k == 0 || k + 3 * j + 1 > q {
        return false;
    }
    let top = q - 2 - 3 * j;
    let shifted = big_k + 2 + j <= m && (m - big_k - 2 - j) % (i + 1) == 0;
    if shifted {
        k < top || k == top + 1
    } else {
        k <= top
    }
}

/// `h_{j,k}` at a special place: `F_P^j g_K h` for the indices with
/// `k >= 3K + 4`, `j <= m - K - 2`, the generic witness otherwise.
pub fn gap_witness_special(ctx: &WitnessContext, j: u64, k: u64) -> Result<TrackedFunction, SeriesError> {
    let PlaceClass::NonRationalSpecial { i, k: big_k } = ctx.class else {
        return Err(SeriesError::WrongClass);
    };
    let m = ctx.curve.m();
    if !in_special_gap_set(&ctx.curve, i, big_k, j, k) {
        return Err(SeriesError::NotAGapIndex { j, k });
    }
    if k < 3 * big_k + 4 || j + big_k + 2 > m {
        return gap_witness_generic(ctx, j, k);
    }
    let b = &ctx.basis;
    let n = k - 3 * big_k - 4;
    if n == 0 {
        // v = 3K + 3 without g_K
        let h = b.f0.mul(&b.x_a);
        let h = if big_k == 0 { h } else { ctx.g(big_k - 1)?.mul(&h) };
        return Ok(ctx.tracked(j, h));
    }
    let c = n / (3 * (i + 1));
    let d = n / 3;
    let s = d - c * (i + 1);
    let r = n - 3 * d;
    let f_i = ctx.f(i)?;
    let hat = if s > 0 {
        let base = f_i.pow(c).mul(ctx.f(s - 1)?);
        match r {
            0 => base,
            1 => base.mul(&b.x_a),
            _ => base.mul(&b.f0),
        }
    } else {
        match r {
            0 => f_i.pow(c - 1).mul(ctx.f(i - 1)?).mul(&b.f0).mul(&b.x_a),
            1 => f_i.pow(c),
            _ => f_i.pow(c).mul(&b.x_a),
        }
    };
    Ok(ctx.tracked(j, ctx.g(big_k)?.mul(&hat)))
}

/// The witness for `gap` under the construction matching the place class.
pub fn gap_witness(ctx: &WitnessContext, gap: u64) -> Result<TrackedFunction, SeriesError> {
    let (j, k) = split_gap(ctx.curve.q(), gap);
    match ctx.class {
        PlaceClass::NonRationalGeneric { .. } => gap_witness_generic(ctx, j, k),
        PlaceClass::NonRationalSpecial { .. } => gap_witness_special(ctx, j, k),
        _ => Err(SeriesError::WrongClass),
    }
}
