//! Expansions of the coordinate functions in the parameter `T = (v - B)/s`
//! of a Hermitian lift.

use crate::curve::{Curve, HermitianLift};
use crate::ff::FieldElement;

use super::tracked::LocalFunction;
use super::{SeriesError, TruncatedSeries};

/// Largest precision accepted anywhere in this module.
pub const MAX_PRECISION: usize = 4096;

/// `x_a = -(x - a)/beta`, `y_b = -(y - b)/s` and `f_0 = x_a - y_b` with
/// their pole bounds `2m`, `q`, `q` at infinity.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    pub curve: Curve,
    pub beta: FieldElement,
    pub x_a: LocalFunction,
    pub y_b: LocalFunction,
    pub f0: LocalFunction,
}

impl GeneratorBasis {
    pub fn prec(&self) -> usize {
        self.x_a.series.prec()
    }

    pub fn level(&self) -> u32 {
        self.beta.degree()
    }

    /// The constant function `c` (pole bound 0).
    pub fn constant(&self, c: FieldElement, name: &str) -> LocalFunction {
        LocalFunction::new(TruncatedSeries::constant(c, self.prec()), 0, name)
    }

    pub fn one(&self) -> LocalFunction {
        self.constant(FieldElement::one(self.level()), "1")
    }
}

/// Exact expansions at the place under one Hermitian lift.
#[derive(Debug, Clone)]
pub struct LocalExpansion {
    pub lift: HermitianLift,
    pub v: TruncatedSeries,
    pub u: TruncatedSeries,
    pub x: TruncatedSeries,
    pub y: TruncatedSeries,
    /// Newton steps used for `u`.
    pub newton_steps: usize,
    pub basis: GeneratorBasis,
}

impl LocalExpansion {
    pub fn prec(&self) -> usize {
        self.basis.prec()
    }
}

/// Expands `u`, `v`, `x`, `y` and the generator basis to `O(T^prec)`.
///
/// `v = B + sT` exactly; `u` solves `u^q + u = v^(q+1)` by the iteration
/// `u <- u - (u^q + u - v^(q+1))` from `u = A`, which converges because the
/// map `u -> u^q` raises valuations.
pub fn expand_coordinates(lift: &HermitianLift, prec: usize) -> Result<LocalExpansion, SeriesError> {
    let curve = lift.curve;
    let q = curve.q() as usize;
    if !(q + 1..=MAX_PRECISION).contains(&prec) {
        return Err(SeriesError::Precision {
            prec,
            min: q + 1,
            max: MAX_PRECISION,
        });
    }
    let t = curve.t();
    let v = TruncatedSeries::from_coeffs(lift.level(), &[lift.big_b, lift.s], prec);
    let v_qp1 = &v.frobenius_power(t) * &v;
    let mut u = TruncatedSeries::constant(lift.big_a, prec);
    let max_steps = (prec as f64).log(3.0).ceil() as usize + 2;
    let mut steps = 0;
    loop {
        let residual = &(&u.frobenius_power(t) + &u) - &v_qp1;
        if residual.is_zero() {
            break;
        }
        assert!(steps < max_steps, "Newton iteration did not converge");
        u = &u - &residual;
        steps += 1;
    }
    let x = -&(&u + &(&v * &v));
    let y = &(&v * &(&v * &v)) - &v;
    let a = TruncatedSeries::constant(lift.a, prec);
    let b = TruncatedSeries::constant(lift.b, prec);
    let beta_inv = lift.beta.inv().expect("beta != 0 for a lift");
    let s_inv = lift.s.inv().expect("s != 0 for a lift");
    let x_a = (&a - &x).scale(beta_inv);
    let y_b = (&b - &y).scale(s_inv);
    let m = curve.m();
    let x_a = LocalFunction::new(x_a, 2 * m, "x_a");
    let y_b = LocalFunction::new(y_b, curve.q(), "y_b");
    let f0 = x_a.sub(&y_b).named("f_0");
    Ok(LocalExpansion {
        lift: *lift,
        v,
        u,
        x,
        y,
        newton_steps: steps,
        basis: GeneratorBasis {
            curve,
            beta: lift.beta,
            x_a,
            y_b,
            f0,
        },
    })
}
