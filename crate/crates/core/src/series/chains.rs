//! The chains `f_j`, `g_l` and, at places with `beta = 1`, `h_j`.

use crate::ff::FieldElement;
use crate::polyfam;

use super::local::GeneratorBasis;
use super::tracked::LocalFunction;
use super::SeriesError;

fn check_general_beta(beta: FieldElement) -> Result<(), SeriesError> {
    if beta.is_zero() || beta.is_one() {
        Err(SeriesError::WrongBeta(beta.to_string()))
    } else {
        Ok(())
    }
}

/// `f_0, ..., f_{up_to}`; needs `up_to <= i`, the P-order of `beta`.
pub fn build_f_chain(basis: &GeneratorBasis, up_to: u64) -> Result<Vec<LocalFunction>, SeriesError> {
    let beta = basis.beta;
    check_general_beta(beta)?;
    let i = polyfam::p_order(beta)?;
    if up_to > i {
        return Err(SeriesError::ChainIndex { index: up_to, order: i });
    }
    let n = beta.degree();
    let c = |v: i64| FieldElement::from_int(n, v);
    let one = c(1);
    let (x_a, f0) = (&basis.x_a, &basis.f0);
    let mut out = vec![f0.clone()];
    if up_to >= 1 {
        let f1 = f0
            .sub(&x_a.mul(x_a))
            .sub(&x_a.mul(f0).scale(beta + one))
            .add(&f0.mul(f0).scale(beta.square() - beta - one))
            .named("f_1");
        out.push(f1);
    }
    if up_to >= 2 {
        let f1 = &out[1];
        let f2 = f0
            .mul(f1)
            .scale(beta.square() - beta)
            .add(&f0.mul(f0).mul(x_a).scale(beta.cube()))
            .add(f1)
            .add(&f0.pow(3).scale(beta.square()))
            .named("f_2");
        out.push(f2);
    }
    if up_to >= 3 {
        let seq = polyfam::sequence(up_to, beta)?;
        let p2 = seq[2].p_val;
        let denom_base = (beta * (beta - one)).square();
        for j in 3..=up_to as usize {
            let lhs = f0.mul(&out[j - 1]).scale(p2 * seq[j - 1].p_val);
            let rhs = out[1].mul(&out[j - 2]).scale(seq[j].p_val);
            let denom = (denom_base * seq[j - 2].p_val)
                .inv()
                .expect("P_{j-2}(beta) != 0 below the P-order");
            out.push(lhs.sub(&rhs).scale(denom).named(&format!("f_{j}")));
        }
    }
    Ok(out)
}

/// `g_0, ..., g_{up_to}` from an `f` chain reaching at least `up_to`; needs
/// `up_to <= K`, the R-order of `beta`.
pub fn build_g_chain(
    basis: &GeneratorBasis,
    f_chain: &[LocalFunction],
    up_to: u64,
) -> Result<Vec<LocalFunction>, SeriesError> {
    let beta = basis.beta;
    check_general_beta(beta)?;
    let k = polyfam::r_order(beta)?;
    if up_to > k {
        return Err(SeriesError::ChainIndex { index: up_to, order: k });
    }
    if f_chain.len() <= up_to as usize {
        return Err(SeriesError::ChainIndex {
            index: up_to,
            order: f_chain.len() as u64 - 1,
        });
    }
    let seq = polyfam::sequence(up_to + 1, beta)?;
    let (x_a, f0) = (&basis.x_a, &basis.f0);
    let mut out = vec![x_a.mul(x_a).sub(f0).named("g_0")];
    for l in 1..=up_to as usize {
        let lhs = out[l - 1].mul(f0).scale(seq[l + 1].p_val);
        let rhs = f_chain[l].scale(seq[l].r_val);
        let denom = (seq[l].p_val * beta).inv().expect("P_l(beta) != 0 below the P-order");
        out.push(lhs.sub(&rhs).scale(denom).named(&format!("g_{l}")));
    }
    Ok(out)
}

/// `h_0, ..., h_{up_to}` at a place with `beta = 1`.
pub fn build_beta1_chain(basis: &GeneratorBasis, up_to: u64) -> Result<Vec<LocalFunction>, SeriesError> {
    if !basis.beta.is_one() {
        return Err(SeriesError::WrongBeta(basis.beta.to_string()));
    }
    let (x_a, y_b) = (&basis.x_a, &basis.y_b);
    let mut out = vec![x_a.sub(y_b).named("h_0")];
    if up_to >= 1 {
        let sum = x_a.add(y_b);
        out.push(y_b.sub(x_a).add(&sum.mul(&sum)).named("h_1"));
    }
    let factor = y_b.mul(y_b).sub(&x_a.mul(x_a));
    for j in 2..=up_to as usize {
        let h = factor.mul(&out[j - 2]).sub(&out[j - 1]).named(&format!("h_{j}"));
        out.push(h);
    }
    Ok(out)
}
