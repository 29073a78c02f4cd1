//! Integer factorization for multiplicative group orders `3^n - 1`:
//! trial division up to 10^6, then Miller-Rabin and Pollard-Brent rho.

const TRIAL_LIMIT: u128 = 1_000_000;

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    assert!(m < (1u128 << 124), "modulus too large for mulmod");
    let a = a % m;
    let b = b % m;
    let mut r = 0u128;
    for shift in (0..32).rev() {
        let nib = (b >> (4 * shift)) & 0xf;
        r = (r << 4) % m;
        r = (r + a * nib) % m;
    }
    r
}

fn powmod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_probable_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u128; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of a composite odd `n`.
fn pollard_brent(n: u128) -> u128 {
    for c in 1u128.. {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let mut y = 2u128;
        let mut r = 1u64;
        let mut q = 1u128;
        let mut g = 1u128;
        let mut x = y;
        let mut ys = y;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn split_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_probable_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    assert!(n > 0, "factoring zero");
    let mut primes = Vec::new();
    let mut p = 2u128;
    while p <= TRIAL_LIMIT && p * p <= n {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if n < TRIAL_LIMIT * TRIAL_LIMIT {
            // no factor below the trial limit, so n is prime
            primes.push(n);
        } else {
            split_into(n, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(f: &[(u128, u32)]) -> u128 {
        f.iter().map(|&(p, e)| p.pow(e)).product()
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(factor_u128(80), vec![(2, 4), (5, 1)]);
        assert_eq!(factor_u128(728), vec![(2, 3), (7, 1), (13, 1)]);
        assert_eq!(factor_u128(1), vec![]);
    }

    #[test]
    fn all_group_orders_up_to_63_factor_completely() {
        for n in 1..=63u32 {
            let order = 3u128.pow(n) - 1;
            let f = factor_u128(order);
            assert_eq!(product(&f), order, "n = {n}");
            for &(p, _) in &f {
                assert!(is_probable_prime(p), "n = {n}: {p} not prime");
            }
        }
    }

    #[test]
    fn mulmod_large_modulus() {
        let m = (1u128 << 100) + 277;
        let a = (1u128 << 99) + 12345;
        // (2^99 + c)^2 mod m computed two ways
        let lhs = mulmod(a, a, m);
        let rhs = powmod(a, 2, m);
        assert_eq!(lhs, rhs);
        assert_eq!(mulmod(m - 1, m - 1, m), 1);
    }
}
