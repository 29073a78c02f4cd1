//! Truncated power series at a place, the special functions built from them,
//! and gap witnesses.

mod chains;
mod local;
pub mod oracle;
mod report;
mod tracked;
mod witness;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::curve::CurveError;
use crate::ff::FieldElement;
use crate::polyfam::PolyFamError;

pub use chains::{build_beta1_chain, build_f_chain, build_g_chain};
pub use local::{expand_coordinates, GeneratorBasis, LocalExpansion, MAX_PRECISION};
pub use report::{valuation_report, ValuationCheck};
pub use tracked::{LocalFunction, TrackedFunction, WitnessSummary};
pub use witness::{gap_witness, gap_witness_generic, gap_witness_special, in_special_gap_set, split_gap, WitnessContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    PolyFam(#[from] PolyFamError),
    #[error("precision {prec} outside the supported range {min}..={max}")]
    Precision { prec: usize, min: usize, max: usize },
    #[error("beta = {0} is not allowed here")]
    WrongBeta(String),
    #[error("index {index} exceeds the order {order} that bounds this chain")]
    ChainIndex { index: u64, order: u64 },
    #[error("({j}, {k}) is not a gap index of this place")]
    NotAGapIndex { j: u64, k: u64 },
    #[error("the place class does not admit this construction")]
    WrongClass,
    #[error("precision too small: a combination vanished to order {0}")]
    PrecisionExhausted(usize),
}

/// `c_0 + c_1 T + ... + c_{prec-1} T^{prec-1} + O(T^prec)` over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    level: u32,
    coeffs: Vec<FieldElement>,
}

impl TruncatedSeries {
    pub fn zero(level: u32, prec: usize) -> Self {
        Self {
            level,
            coeffs: vec![FieldElement::zero(level); prec],
        }
    }

    pub fn constant(c: FieldElement, prec: usize) -> Self {
        Self::monomial(c, 0, prec)
    }

    /// `c T^k`.
    pub fn monomial(c: FieldElement, k: usize, prec: usize) -> Self {
        let mut s = Self::zero(c.degree(), prec);
        if k < prec {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series with the given leading coefficients, zero-padded to `prec`.
    pub fn from_coeffs(level: u32, coeffs: &[FieldElement], prec: usize) -> Self {
        let mut s = Self::zero(level, prec);
        for (k, &c) in coeffs.iter().enumerate().take(prec) {
            assert_eq!(c.degree(), level);
            s.coeffs[k] = c;
        }
        s
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Exponent bound: coefficients of `T^k` are known for `k < prec`.
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        assert!(k < self.prec(), "T^{k} is beyond the precision {}", self.prec());
        self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Order of the first nonzero coefficient; `None` if the series vanishes
    /// to its precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// `(v, c_v)`.
    pub fn leading(&self) -> Option<(usize, FieldElement)> {
        self.valuation().map(|v| (v, self.coeffs[v]))
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self {
            level: self.level,
            coeffs: self.coeffs[..prec.min(self.prec())].to_vec(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// `T^k * self`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.level, self.prec());
        for i in 0..self.prec().saturating_sub(k) {
            s.coeffs[i + k] = self.coeffs[i];
        }
        s
    }

    pub fn pow(&self, e: u64) -> Self {
        let one = FieldElement::one(self.level);
        (0..e).fold(Self::constant(one, self.prec()), |acc, _| &acc * self)
    }

    /// `self^(3^k)`: coefficients are raised to `3^k` and exponents scaled.
    pub fn frobenius_power(&self, k: u32) -> Self {
        let step = 3usize.pow(k);
        let mut s = Self::zero(self.level, self.prec());
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i * step >= self.prec() {
                break;
            }
            s.coeffs[i * step] = c.frobenius(k);
        }
        s
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.level, other.level, "series over different fields");
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(other);
        let prec = self.prec().min(other.prec());
        TruncatedSeries {
            level: self.level,
            coeffs: (0..prec).map(|k| self.coeffs[k] + other.coeffs[k]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(other);
        let prec = self.prec().min(other.prec());
        TruncatedSeries {
            level: self.level,
            coeffs: (0..prec).map(|k| self.coeffs[k] - other.coeffs[k]).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            level: self.level,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(other);
        let prec = self.prec().min(other.prec());
        let mut out = TruncatedSeries::zero(self.level, prec);
        let (va, vb) = (self.valuation(), other.valuation());
        let (Some(va), Some(vb)) = (va, vb) else {
            return out;
        };
        for i in va..prec {
            let a = self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in vb..prec - i {
                out.coeffs[i + j] += a * other.coeffs[j];
            }
        }
        if va + vb < prec {
            assert_eq!(out.valuation(), Some(va + vb), "valuation of a product must add");
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, other: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}*T^{k}"))
            .collect();
        write!(f, "{} + O(T^{})", terms.join(" + "), self.prec())
    }
}

#[cfg(test)]
mod tests;
