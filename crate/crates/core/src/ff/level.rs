//! Per-degree field data: the defining modulus and the factorization of the
//! multiplicative group order.
//!
//! The modulus of F_{3^n} is the lexicographically smallest monic
//! irreducible polynomial of degree `n` over F_3, comparing coefficient
//! vectors lowest degree first. Because the choice is canonical, levels live
//! in a process-wide table and every element only has to carry its degree.

use std::sync::OnceLock;

use super::element::{add_raw, mul_raw, REPR_MAX_DEGREE};
use super::factor::factor_u128;
use super::f3poly;

pub struct Level {
    degree: u32,
    /// Coefficients of the monic modulus, lowest first, length `degree + 1`.
    modulus: Vec<u8>,
    /// `z^n` rewritten in the basis `1, z, ..., z^(n-1)`, bitsliced.
    reduction: (u64, u64),
    group_order_factors: OnceLock<Vec<(u128, u32)>>,
}

impl Level {
    fn build(n: u32) -> Self {
        let modulus = smallest_irreducible(n);
        let reduction = reduction_masks(&modulus);
        Self {
            degree: n,
            modulus,
            reduction,
            group_order_factors: OnceLock::new(),
        }
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub(crate) fn reduction(&self) -> (u64, u64) {
        self.reduction
    }

    /// `3^n`.
    pub fn size(&self) -> u128 {
        3u128.pow(self.degree)
    }

    /// Prime factorization of `3^n - 1`, computed once.
    pub fn group_order_factors(&self) -> &[(u128, u32)] {
        self.group_order_factors
            .get_or_init(|| factor_u128(self.size() - 1))
    }
}

static LEVELS: [OnceLock<Level>; REPR_MAX_DEGREE as usize + 1] =
    [const { OnceLock::new() }; REPR_MAX_DEGREE as usize + 1];

/// Field data for F_{3^n}, built on first use.
pub fn level(n: u32) -> &'static Level {
    assert!(
        (1..=REPR_MAX_DEGREE).contains(&n),
        "field degree {n} outside 1..={REPR_MAX_DEGREE}"
    );
    LEVELS[n as usize].get_or_init(|| Level::build(n))
}

/// Monic modulus of F_{3^n}, lowest coefficient first.
pub fn modulus(n: u32) -> Vec<u8> {
    level(n).modulus().to_vec()
}

fn reduction_masks(modulus: &[u8]) -> (u64, u64) {
    // z^n = -(c_0 + c_1 z + ... + c_{n-1} z^{n-1})
    let n = modulus.len() - 1;
    let (mut pos, mut neg) = (0u64, 0u64);
    for (k, &c) in modulus[..n].iter().enumerate() {
        match c {
            1 => neg |= 1 << k,
            2 => pos |= 1 << k,
            _ => {}
        }
    }
    (pos, neg)
}

fn smallest_irreducible(n: u32) -> Vec<u8> {
    if n == 1 {
        return vec![0, 1];
    }
    let n = n as usize;
    // digits[0] is the most significant position in the lexicographic order.
    // a zero constant term is never irreducible, so start at c_0 = 1
    let mut digits = vec![0u8; n];
    digits[0] = 1;
    loop {
        let mut candidate = digits.clone();
        candidate.push(1);
        if is_irreducible(&candidate) {
            return candidate;
        }
        // increment with carry from the highest-degree coefficient
        let mut k = n;
        loop {
            assert!(k > 0, "no irreducible polynomial of degree {n}");
            k -= 1;
            digits[k] += 1;
            if digits[k] < 3 {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Ben-Or test: `f` of degree `n` is irreducible iff `gcd(f, X^(3^k) - X) = 1`
/// for every `1 <= k <= n/2`.
pub fn is_irreducible(f: &[u8]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // roots in F_3
    if f[0] == 0 {
        return false;
    }
    let at_one = f.iter().map(|&c| c as u32).sum::<u32>() % 3;
    let at_minus_one = f
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as u32 } else { (3 - c as u32) % 3 })
        .sum::<u32>()
        % 3;
    if at_one == 0 || at_minus_one == 0 {
        return false;
    }
    let red = reduction_masks(f);
    let n32 = n as u32;
    let x = (0b10u64, 0u64);
    let mut power = x;
    for _ in 1..=n / 2 {
        let sq = mul_raw(power, power, n32, red);
        power = mul_raw(sq, power, n32, red);
        // power - X
        let diff = add_raw(power.0, power.1, x.1, x.0);
        let g = f3poly::gcd(f, &f3poly::from_masks(diff, n));
        if g.len() > 1 {
            return false;
        }
    }
    true
}
