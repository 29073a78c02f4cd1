//! Elements of F_{3^n} in a polynomial basis.
//!
//! Coefficients are stored bitsliced: bit `k` of `pos` is set when the
//! coefficient of `z^k` is `1`, bit `k` of `neg` when it is `2 = -1`. Both
//! masks never overlap. This keeps every element `Copy` and makes addition a
//! handful of word operations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use super::level::{level, Level};

/// Largest extension degree representable by the bitsliced masks.
pub const REPR_MAX_DEGREE: u32 = 63;

#[inline]
pub(crate) fn add_raw(ap: u64, an: u64, bp: u64, bn: u64) -> (u64, u64) {
    let az = !(ap | an);
    let bz = !(bp | bn);
    (
        (ap & bz) | (bp & az) | (an & bn),
        (an & bz) | (bn & az) | (ap & bp),
    )
}

/// `a * b mod f` where `X^n = red` in the quotient ring.
#[inline]
pub(crate) fn mul_raw(a: (u64, u64), b: (u64, u64), n: u32, red: (u64, u64)) -> (u64, u64) {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let occupied = b.0 | b.1;
    if occupied == 0 || (a.0 | a.1) == 0 {
        return (0, 0);
    }
    let top = 63 - occupied.leading_zeros();
    let (mut rp, mut rn) = (0u64, 0u64);
    for i in (0..=top).rev() {
        // r <- r * z
        let tp = (rp >> (n - 1)) & 1;
        let tn = (rn >> (n - 1)) & 1;
        rp = (rp << 1) & mask;
        rn = (rn << 1) & mask;
        if tp != 0 {
            (rp, rn) = add_raw(rp, rn, red.0, red.1);
        } else if tn != 0 {
            (rp, rn) = add_raw(rp, rn, red.1, red.0);
        }
        if (b.0 >> i) & 1 != 0 {
            (rp, rn) = add_raw(rp, rn, a.0, a.1);
        } else if (b.1 >> i) & 1 != 0 {
            (rp, rn) = add_raw(rp, rn, a.1, a.0);
        }
    }
    (rp, rn)
}

/// An element of F_{3^n}; `n` is carried along so mixed-level arithmetic is
/// caught at runtime.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    deg: u8,
    pos: u64,
    neg: u64,
}

impl FieldElement {
    #[inline]
    fn check_degree(n: u32) {
        assert!(
            (1..=REPR_MAX_DEGREE).contains(&n),
            "field degree {n} outside 1..={REPR_MAX_DEGREE}"
        );
    }

    pub fn zero(n: u32) -> Self {
        Self::check_degree(n);
        Self { deg: n as u8, pos: 0, neg: 0 }
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    /// The image of an integer in F_3 ⊂ F_{3^n}.
    pub fn from_int(n: u32, value: i64) -> Self {
        Self::check_degree(n);
        match value.rem_euclid(3) {
            0 => Self { deg: n as u8, pos: 0, neg: 0 },
            1 => Self { deg: n as u8, pos: 1, neg: 0 },
            _ => Self { deg: n as u8, pos: 0, neg: 1 },
        }
    }

    /// Builds an element from F_3 coefficients, lowest degree first. Missing
    /// trailing coefficients are zero.
    pub fn from_coeffs(n: u32, coeffs: &[u8]) -> Self {
        Self::check_degree(n);
        assert!(
            coeffs.len() <= n as usize,
            "{} coefficients for a degree-{n} field",
            coeffs.len()
        );
        let (mut pos, mut neg) = (0u64, 0u64);
        for (k, &c) in coeffs.iter().enumerate() {
            match c % 3 {
                1 => pos |= 1 << k,
                2 => neg |= 1 << k,
                _ => {}
            }
        }
        Self { deg: n as u8, pos, neg }
    }

    /// The generator `z` of the polynomial basis.
    pub fn generator(n: u32) -> Self {
        if n == 1 {
            // F_3 is F_3[z]/(z); z is zero there.
            return Self::zero(1);
        }
        Self::from_coeffs(n, &[0, 1])
    }

    /// Enumeration of F_{3^n}: `idx` read in base 3, lowest digit first.
    pub fn from_index(n: u32, mut idx: u128) -> Self {
        Self::check_degree(n);
        let (mut pos, mut neg) = (0u64, 0u64);
        let mut k = 0;
        while idx > 0 && k < n {
            match idx % 3 {
                1 => pos |= 1 << k,
                2 => neg |= 1 << k,
                _ => {}
            }
            idx /= 3;
            k += 1;
        }
        Self { deg: n as u8, pos, neg }
    }

    /// Inverse of [`FieldElement::from_index`].
    pub fn to_index(&self) -> u128 {
        (0..self.degree())
            .rev()
            .fold(0u128, |acc, k| acc * 3 + self.coeff(k) as u128)
    }

    /// Every element of F_{3^n}, in `from_index` order. Only sensible for
    /// small `n`.
    pub fn all(n: u32) -> impl Iterator<Item = FieldElement> {
        let size = 3u128.pow(n);
        (0..size).map(move |i| FieldElement::from_index(n, i))
    }

    pub fn random<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Self {
        Self::check_degree(n);
        let (mut pos, mut neg) = (0u64, 0u64);
        for k in 0..n {
            match rng.gen_range(0..3u8) {
                1 => pos |= 1 << k,
                2 => neg |= 1 << k,
                _ => {}
            }
        }
        Self { deg: n as u8, pos, neg }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Self {
        loop {
            let x = Self::random(n, rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Degree of the level over F_3.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub(crate) fn masks(&self) -> (u64, u64) {
        (self.pos, self.neg)
    }

    /// F_3 coefficients, lowest degree first, always `degree()` long.
    pub fn coeffs(&self) -> Vec<u8> {
        (0..self.deg)
            .map(|k| {
                if (self.pos >> k) & 1 != 0 {
                    1
                } else if (self.neg >> k) & 1 != 0 {
                    2
                } else {
                    0
                }
            })
            .collect()
    }

    /// Coefficient of `z^k` as 0, 1 or 2.
    pub fn coeff(&self, k: u32) -> u8 {
        if (self.pos >> k) & 1 != 0 {
            1
        } else if (self.neg >> k) & 1 != 0 {
            2
        } else {
            0
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.pos == 1 && self.neg == 0
    }

    /// True when the element lies in the prime field F_3.
    pub fn is_prime_field(&self) -> bool {
        (self.pos | self.neg) <= 1
    }

    /// Value in F_3 as 0, 1, 2 when `is_prime_field`.
    pub fn prime_field_value(&self) -> Option<u8> {
        self.is_prime_field().then(|| self.coeff(0))
    }

    pub(crate) fn level(&self) -> &'static Level {
        level(self.degree())
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn cube(self) -> Self {
        self * self * self
    }

    pub fn pow(self, mut exp: u128) -> Self {
        let mut base = self;
        let mut acc = Self::one(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// `x^(3^k)`.
    pub fn frobenius(self, k: u32) -> Self {
        let k = k % self.degree();
        let mut x = self;
        for _ in 0..k {
            x = x.cube();
        }
        x
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let order = 3u128.pow(self.degree());
        Some(self.pow(order - 2))
    }

    /// Lexicographic comparison of coefficient vectors, lowest degree first.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for k in 0..self.deg.max(other.deg) as u32 {
            match self.coeff(k).cmp(&other.coeff(k)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    #[inline]
    fn same_level(&self, other: &Self) {
        assert_eq!(
            self.deg, other.deg,
            "arithmetic between F_3^{} and F_3^{}",
            self.deg, other.deg
        );
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(3^{})", self.deg)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.coeffs();
        let last = cs.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "[")?;
        for (k, c) in cs[..=last].iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self.same_level(&rhs);
        let (pos, neg) = add_raw(self.pos, self.neg, rhs.pos, rhs.neg);
        Self { deg: self.deg, pos, neg }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self { deg: self.deg, pos: self.neg, neg: self.pos }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.same_level(&rhs);
        let n = self.degree();
        let lvl = level(n);
        let (pos, neg) = mul_raw(self.masks(), rhs.masks(), n, lvl.reduction());
        Self { deg: self.deg, pos, neg }
    }
}

impl Div for FieldElement {
    type Output = Self;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in F_3^n")
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trit_add(a: u8, b: u8) -> u8 {
        (a + b) % 3
    }

    #[test]
    fn bitsliced_add_matches_trit_table() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                let x = FieldElement::from_coeffs(1, &[a]);
                let y = FieldElement::from_coeffs(1, &[b]);
                assert_eq!((x + y).coeff(0), trit_add(a, b), "{a}+{b}");
                assert_eq!((x - y).coeff(0), (a + 3 - b) % 3, "{a}-{b}");
                assert_eq!((x * y).coeff(0), (a * b) % 3, "{a}*{b}");
            }
        }
    }

    #[test]
    fn enumeration_is_a_bijection_for_f81() {
        let all: std::collections::HashSet<_> = FieldElement::all(4).collect();
        assert_eq!(all.len(), 81);
    }

    #[test]
    fn frobenius_fixes_prime_field_and_cycles() {
        for x in FieldElement::all(4) {
            assert_eq!(x.frobenius(4), x);
            assert_eq!(x.pow(81), x);
        }
    }

    #[test]
    fn inverse_times_self_is_one() {
        for x in FieldElement::all(5).skip(1) {
            assert!((x * x.inv().unwrap()).is_one());
        }
        assert!(FieldElement::zero(5).inv().is_none());
    }

    #[test]
    fn display_trims_trailing_zeros() {
        let x = FieldElement::from_coeffs(4, &[1, 0, 2]);
        assert_eq!(x.to_string(), "[1,0,2]");
        assert_eq!(FieldElement::zero(4).to_string(), "[0]");
    }

    #[test]
    #[should_panic]
    fn mixed_levels_panic() {
        let _ = FieldElement::one(2) + FieldElement::one(4);
    }
}
