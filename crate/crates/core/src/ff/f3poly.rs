//! Dense polynomials over F_3 as coefficient vectors (lowest degree first,
//! no trailing zeros). Only used while choosing moduli.

pub fn normalize(mut p: Vec<u8>) -> Vec<u8> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn from_masks(masks: (u64, u64), n: usize) -> Vec<u8> {
    let p = (0..n)
        .map(|k| {
            if (masks.0 >> k) & 1 != 0 {
                1
            } else if (masks.1 >> k) & 1 != 0 {
                2
            } else {
                0
            }
        })
        .collect();
    normalize(p)
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(a: &[u8], b: &[u8]) -> Vec<u8> {
    let b = normalize(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = normalize(a.to_vec());
    let db = b.len() - 1;
    // leading coefficient is 1 or 2, its own inverse mod 3
    let lead_inv = b[db] as u32;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (r[r.len() - 1] as u32 * lead_inv) % 3;
        for (k, &c) in b.iter().enumerate() {
            let idx = k + shift;
            r[idx] = ((r[idx] as u32 + 3 * 3 - factor * c as u32) % 3) as u8;
        }
        r = normalize(r);
    }
    r
}

/// Monic gcd.
pub fn gcd(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut x = normalize(a.to_vec());
    let mut y = normalize(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        if lead == 2 {
            for c in x.iter_mut() {
                *c = (*c * 2) % 3;
            }
        }
    }
    x
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
#[cfg(test)]
pub fn brute_force_irreducible(f: &[u8]) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        for idx in 0..3usize.pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                g.push((v % 3) as u8);
                v /= 3;
            }
            g.push(1);
            if rem(f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_products() {
        // (x+1)(x+2) = x^2 + 2 ; (x+1)^2 = x^2 + 2x + 1
        assert_eq!(gcd(&[2, 0, 1], &[1, 2, 1]), vec![1, 1]);
        assert_eq!(gcd(&[1], &[0, 1]), vec![1]);
    }
}
