//! Functions carried as a local series together with a pole bound at
//! infinity, optionally times a symbolic power of `F_P`.

use serde::Serialize;

use crate::ff::FieldElement;

use super::TruncatedSeries;

/// A function regular away from infinity, known by its expansion at the
/// place and an upper bound for its pole order at infinity.
#[derive(Debug, Clone)]
pub struct LocalFunction {
    pub series: TruncatedSeries,
    pub pole_bound: u64,
    pub name: String,
}

impl LocalFunction {
    pub fn new(series: TruncatedSeries, pole_bound: u64, name: &str) -> Self {
        Self {
            series,
            pole_bound,
            name: name.to_string(),
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn valuation(&self) -> Option<usize> {
        self.series.valuation()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.series + &other.series,
            self.pole_bound.max(other.pole_bound),
            &format!("({} + {})", self.name, other.name),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.series - &other.series,
            self.pole_bound.max(other.pole_bound),
            &format!("({} - {})", self.name, other.name),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.series * &other.series,
            self.pole_bound + other.pole_bound,
            &format!("{}*{}", self.name, other.name),
        )
    }

    /// Multiplication by a nonzero constant keeps the name.
    pub fn scale(&self, c: FieldElement) -> Self {
        Self::new(self.series.scale(c), self.pole_bound, &self.name)
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::new(self.series.pow(e), e * self.pole_bound, &format!("{}^{e}", self.name))
    }
}

/// `F_P^e * h` where `F_P` has divisor `qP + Phi(P) - (q+1)P_inf`, and
/// `(q+1)(P - P_inf)` at a rational place. `F_P` is never expanded; its
/// valuation at `P` is `fp_valuation`.
#[derive(Debug, Clone)]
pub struct TrackedFunction {
    pub fp_exponent: i64,
    pub local: LocalFunction,
    pub fp_valuation: u64,
    pub q: u64,
}

impl TrackedFunction {
    pub fn new(fp_exponent: i64, local: LocalFunction, fp_valuation: u64, q: u64) -> Self {
        Self {
            fp_exponent,
            local,
            fp_valuation,
            q,
        }
    }

    /// `e * v_P(F_P) + v_P(h)`, if the series part is nonzero to its
    /// precision.
    pub fn v_at_p(&self) -> Option<i64> {
        self.local
            .valuation()
            .map(|v| self.fp_exponent * self.fp_valuation as i64 + v as i64)
    }

    /// Certified upper bound on the pole order at infinity (negative values
    /// bound a zero from below).
    pub fn pole_bound_at_infinity(&self) -> i64 {
        self.local.pole_bound as i64 + self.fp_exponent * (self.q as i64 + 1)
    }

    pub fn description(&self) -> String {
        match self.fp_exponent {
            0 => self.local.name.clone(),
            1 => format!("F_P*{}", self.local.name),
            -1 => format!("{}/F_P", self.local.name),
            e if e < 0 => format!("{}/F_P^{}", self.local.name, -e),
            e => format!("F_P^{e}*{}", self.local.name),
        }
    }

    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            function: self.description(),
            v_at_p: self.v_at_p(),
            pole_bound_at_infinity: self.pole_bound_at_infinity(),
        }
    }
}

/// Serializable digest of a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub function: String,
    pub v_at_p: Option<i64>,
    pub pole_bound_at_infinity: i64,
}
