//! Exact rational functions over F_3 whose denominators are of the form
//! `s^a (s-1)^b`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `num(s) * s^e0 * (s-1)^e1` with `num` coprime to `s` and `s - 1`.
///
/// The zero function is the empty numerator with both exponents 0, so the
/// derived equality is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    /// F_3 coefficients, lowest degree first, no trailing zeros
    num: Vec<u8>,
    e0: i32,
    e1: i32,
}

fn trim(v: &mut Vec<u8>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_add(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = (0..a.len().max(b.len()))
        .map(|k| (a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)) % 3)
        .collect();
    trim(&mut out);
    out
}

fn poly_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % 3;
        }
    }
    trim(&mut out);
    out
}

/// Multiplies by `(s - 1)^k`.
fn times_s_minus_one(a: &[u8], k: u32) -> Vec<u8> {
    let mut out = a.to_vec();
    for _ in 0..k {
        out = poly_mul(&out, &[2, 1]);
    }
    out
}

/// Divides by `s - 1` when possible (synthetic division at 1).
fn divide_s_minus_one(a: &[u8]) -> Option<Vec<u8>> {
    if a.is_empty() {
        return None;
    }
    let n = a.len() - 1;
    let mut quot = vec![0u8; n];
    let mut carry = 0u8;
    for k in (1..=n).rev() {
        carry = (a[k] + carry) % 3;
        quot[k - 1] = carry;
    }
    ((a[0] + carry) % 3 == 0).then_some(quot)
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self {
            num: Vec::new(),
            e0: 0,
            e1: 0,
        }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c.rem_euclid(3) as u8], 0, 0)
    }

    /// The variable `s`.
    pub fn s() -> Self {
        Self::new(vec![1], 1, 0)
    }

    /// `s^e0 (s-1)^e1 * num(s)` for any numerator (normalized here).
    pub fn new(mut num: Vec<u8>, mut e0: i32, mut e1: i32) -> Self {
        for c in num.iter_mut() {
            *c %= 3;
        }
        trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        let lead_zeros = num.iter().take_while(|&&c| c == 0).count();
        num.drain(..lead_zeros);
        e0 += lead_zeros as i32;
        while let Some(q) = divide_s_minus_one(&num) {
            num = q;
            e1 += 1;
        }
        Self { num, e0, e1 }
    }

    pub fn from_poly(coeffs: &[u8]) -> Self {
        Self::new(coeffs.to_vec(), 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Exponents of `s` and `s - 1` in the factored form.
    pub fn exponents(&self) -> (i32, i32) {
        (self.e0, self.e1)
    }

    /// `s^k` (k may be negative).
    pub fn s_pow(k: i32) -> Self {
        Self::new(vec![1], k, 0)
    }

    /// `(s - 1)^k` (k may be negative).
    pub fn s_minus_one_pow(k: i32) -> Self {
        Self::new(vec![1], 0, k)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(1), |acc, _| &acc * self)
    }

    /// Polynomial coefficients when the function is a polynomial in `s`.
    pub fn as_polynomial(&self) -> Option<Vec<u8>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        if self.e0 < 0 || self.e1 < 0 {
            return None;
        }
        let mut out = self.num.clone();
        out.splice(0..0, std::iter::repeat(0).take(self.e0 as usize));
        Some(times_s_minus_one(&out, self.e1 as u32))
    }

    /// Value at `s` given as an element of any field level.
    pub fn eval(&self, s: crate::ff::FieldElement) -> Option<crate::ff::FieldElement> {
        use crate::ff::FieldElement;
        let n = s.degree();
        let num = self
            .num
            .iter()
            .rev()
            .fold(FieldElement::zero(n), |acc, &c| acc * s + FieldElement::from_int(n, c as i64));
        let pow_signed = |x: FieldElement, e: i32| -> Option<FieldElement> {
            if e >= 0 {
                Some(x.pow(e as u128))
            } else {
                x.inv().map(|i| i.pow((-e) as u128))
            }
        };
        if self.is_zero() {
            return Some(FieldElement::zero(n));
        }
        Some(num * pow_signed(s, self.e0)? * pow_signed(s - FieldElement::one(n), self.e1)?)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e0 = self.e0.min(other.e0);
        let e1 = self.e1.min(other.e1);
        let lift = |p: &LaurentPoly| {
            let mut v = vec![0u8; (p.e0 - e0) as usize];
            v.extend_from_slice(&p.num);
            times_s_minus_one(&v, (p.e1 - e1) as u32)
        };
        LaurentPoly::new(poly_add(&lift(self), &lift(other)), e0, e1)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            num: self.num.iter().map(|&c| (3 - c) % 3).collect(),
            e0: self.e0,
            e1: self.e1,
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, other: &LaurentPoly) -> LaurentPoly {
        self + &(-other)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::new(
            poly_mul(&self.num, &other.num),
            self.e0 + other.e0,
            self.e1 + other.e1,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, other: LaurentPoly) -> LaurentPoly {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*s"),
                _ => format!("{c}*s^{k}"),
            })
            .collect();
        write!(f, "({})", terms.join(" + "))?;
        if self.e0 != 0 {
            write!(f, " * s^{}", self.e0)?;
        }
        if self.e1 != 0 {
            write!(f, " * (s-1)^{}", self.e1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_extracts_factors() {
        // s^2 - s = s (s - 1)
        let p = LaurentPoly::from_poly(&[0, 2, 1]);
        assert_eq!(p.exponents(), (1, 1));
        assert_eq!(p.as_polynomial(), Some(vec![0, 2, 1]));
    }

    #[test]
    fn inverse_of_s_times_s_minus_one() {
        let q0 = LaurentPoly::new(vec![1], -1, -1);
        let prod = &q0 * &LaurentPoly::from_poly(&[0, 2, 1]);
        assert_eq!(prod, LaurentPoly::constant(1));
    }

    #[test]
    fn sums_with_different_denominators() {
        // 1/s - 1/(s-1) = -1/(s(s-1))
        let a = LaurentPoly::s_pow(-1);
        let b = LaurentPoly::s_minus_one_pow(-1);
        assert_eq!(&a - &b, LaurentPoly::new(vec![2], -1, -1));
        assert!((&a - &a).is_zero());
    }
}
