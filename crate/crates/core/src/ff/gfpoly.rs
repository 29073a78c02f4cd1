//! Univariate polynomials over F_{3^N}, just enough for equal-degree root
//! finding (Cantor-Zassenhaus with linear factors).

use super::element::FieldElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfPoly {
    level: u32,
    /// lowest degree first, no trailing zeros
    coeffs: Vec<FieldElement>,
}

impl GfPoly {
    pub fn new(level: u32, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Self { level, coeffs };
        p.trim();
        p
    }

    /// Lifts an F_3 polynomial (coefficients 0/1/2) into F_{3^level}[X].
    pub fn from_f3(level: u32, coeffs: &[u8]) -> Self {
        Self::new(
            level,
            coeffs
                .iter()
                .map(|&c| FieldElement::from_int(level, c as i64))
                .collect(),
        )
    }

    pub fn x(level: u32) -> Self {
        Self::new(level, vec![FieldElement::zero(level), FieldElement::one(level)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::zero(self.level), |acc, &c| acc * x + c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = FieldElement::zero(self.level);
        let coeffs = (0..len)
            .map(|k| {
                *self.coeffs.get(k).unwrap_or(&zero) - *other.coeffs.get(k).unwrap_or(&zero)
            })
            .collect();
        Self::new(self.level, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.level, Vec::new());
        }
        let mut out = vec![FieldElement::zero(self.level); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.level, out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::zero(self.level); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let factor = rem[top] * lead_inv;
            let shift = top - dd;
            quot[shift] = factor;
            for (k, &c) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= factor * c;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(self.level, quot), Self::new(self.level, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = lead.inv().unwrap();
                Self::new(self.level, self.coeffs.iter().map(|&c| c * inv).collect())
            }
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::new(self.level, vec![FieldElement::one(self.level)]).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// All distinct roots in F_{3^level}, sorted lexicographically.
    pub fn roots(&self) -> Vec<FieldElement> {
        let n = self.level;
        let q = 3u128.pow(n);
        // part of self that splits into distinct linear factors: gcd(f, X^Q - X)
        let x = Self::x(n);
        let mut frob = x.clone();
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        for _ in 0..n {
            frob = frob.pow_mod(3, &f);
        }
        let split = f.gcd(&frob.sub(&x));
        let mut roots = Vec::new();
        split_linear(&split, q, &mut roots);
        roots.sort_by(|a, b| a.lex_cmp(b));
        roots
    }
}

/// Splits a monic product of distinct linear factors.
fn split_linear(f: &GfPoly, q: u128, out: &mut Vec<FieldElement>) {
    match f.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-f.coeffs[0]),
        Some(_) => {
            let n = f.level;
            let one = GfPoly::new(n, vec![FieldElement::one(n)]);
            for idx in 0u128.. {
                let delta = FieldElement::from_index(n, idx);
                let shifted = GfPoly::new(n, vec![delta, FieldElement::one(n)]);
                let h = shifted.pow_mod((q - 1) / 2, f).sub(&one);
                let g = f.gcd(&h);
                let dg = g.degree().unwrap_or(0);
                if dg > 0 && Some(dg) < f.degree() {
                    let (cofactor, _) = f.div_rem(&g);
                    split_linear(&g, q, out);
                    split_linear(&cofactor.monic(), q, out);
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_x_cubed_minus_x() {
        let f = GfPoly::from_f3(2, &[0, 2, 0, 1]);
        let roots = f.roots();
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!(f.eval(r).is_zero());
        }
    }

    #[test]
    fn modulus_splits_in_its_own_field() {
        for n in 2..=6 {
            let f = GfPoly::from_f3(n, &super::super::level::modulus(n));
            let roots = f.roots();
            assert_eq!(roots.len(), n as usize);
        }
    }

    #[test]
    fn irreducible_has_no_roots_in_smaller_field() {
        // x^2 + 1 has no root in F_27 (odd degree)
        let f = GfPoly::from_f3(3, &[1, 0, 1]);
        assert!(f.roots().is_empty());
    }
}
