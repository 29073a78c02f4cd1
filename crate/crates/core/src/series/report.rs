//! Valuations and leading coefficients of the chains at one place, compared
//! with their predicted values.

use serde::Serialize;

use crate::curve::PlaceClass;
use crate::ff::FieldElement;
use crate::polyfam;

use super::chains::{build_beta1_chain, build_f_chain, build_g_chain};
use super::local::LocalExpansion;
use super::tracked::LocalFunction;
use super::SeriesError;

/// One chain member: predicted and observed valuation, and the coefficients
/// at `T^v0`, `T^(v0+1)` (`v0` the generic valuation) where both lie below
/// `T^q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationCheck {
    pub function: String,
    pub expected_valuation: usize,
    pub valuation: Option<usize>,
    #[serde(serialize_with = "pair")]
    pub expected_leading: Option<[FieldElement; 2]>,
    #[serde(serialize_with = "pair")]
    pub leading: Option<[FieldElement; 2]>,
    pub ok: bool,
}

fn pair<S: serde::Serializer>(p: &Option<[FieldElement; 2]>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    match p {
        None => s.serialize_none(),
        Some([a, b]) => {
            let mut seq = s.serialize_seq(Some(2))?;
            seq.serialize_element(&a.coeffs())?;
            seq.serialize_element(&b.coeffs())?;
            seq.end()
        }
    }
}

fn check(
    f: &LocalFunction,
    expected_valuation: usize,
    generic_valuation: usize,
    expected_pair: [FieldElement; 2],
    q: usize,
) -> ValuationCheck {
    let valuation = f.valuation();
    let (expected_leading, leading) = if generic_valuation + 1 < q {
        let s = &f.series;
        (
            Some(expected_pair),
            Some([s.coeff(generic_valuation), s.coeff(generic_valuation + 1)]),
        )
    } else {
        (None, None)
    };
    ValuationCheck {
        function: f.name.clone(),
        expected_valuation,
        valuation,
        ok: valuation == Some(expected_valuation) && expected_leading == leading,
        expected_leading,
        leading,
    }
}

/// Checks `v(f_j) = 3j + 2` for `j < min(i, m)` and `v(f_i) = 3i + 3` when
/// `i <= m - 1`; at non-rational places also `v(g_l) = 3l + 3` for
/// `l < min(K, m - 1)` and `v(g_K) = 3K + 4` when `K <= m - 2`; at `beta = 1`
/// places `v(h_j) = 3j + 2` for `j < m`. Leading pairs are `(P_{j+1}, Q_{j+1})`
/// for `f_j`, `(R_{l+1}, P_{l+1})` for `g_l` and `(1, 1)` for `h_j`.
pub fn valuation_report(class: PlaceClass, expansion: &LocalExpansion) -> Result<Vec<ValuationCheck>, SeriesError> {
    let basis = &expansion.basis;
    let curve = basis.curve;
    let (q, m) = (curve.q(), curve.m());
    let qs = q as usize;
    let beta = basis.beta;
    let mut out = Vec::new();
    if class == PlaceClass::BetaOne {
        let one = FieldElement::one(beta.degree());
        for (j, h) in build_beta1_chain(basis, m - 1)?.iter().enumerate() {
            out.push(check(h, 3 * j + 2, 3 * j + 2, [one, one], qs));
        }
        return Ok(out);
    }
    let Some(i) = class.p_order() else {
        return Err(SeriesError::WrongClass);
    };
    let f_top = i.min(m - 1);
    let k = class.r_order();
    let g_top = k.map(|k| k.min(m - 2));
    let seq = polyfam::sequence(f_top.max(g_top.unwrap_or(0)) + 2, beta)?;
    let f = build_f_chain(basis, f_top.max(g_top.unwrap_or(0)))?;
    for (j, fj) in f.iter().enumerate().take(f_top as usize + 1) {
        let generic = 3 * j + 2;
        let expected = if j as u64 == i { generic + 1 } else { generic };
        out.push(check(fj, expected, generic, [seq[j + 1].p_val, seq[j + 1].q_val], qs));
    }
    if let (Some(k), Some(g_top)) = (k, g_top) {
        let g = build_g_chain(basis, &f, g_top)?;
        for (l, gl) in g.iter().enumerate() {
            let generic = 3 * l + 3;
            let expected = if l as u64 == k { generic + 1 } else { generic };
            out.push(check(gl, expected, generic, [seq[l + 1].r_val, seq[l + 1].p_val], qs));
        }
    }
    Ok(out)
}
