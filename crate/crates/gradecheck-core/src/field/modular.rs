//! Prime-field helpers for the modular rank path.

/// Default primes for modular rank. Both exceed 2^31 and are 1 mod 4, so
/// Q(i) reduces into them.
pub const DEFAULT_PRIMES: (u64, u64) = (2_147_483_693, 2_147_483_713);

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo the prime `p`. `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A square root of -1 modulo `p`, when one exists (`p = 1 mod 4`).
pub fn sqrt_minus_one(p: u64) -> Option<u64> {
    if p % 4 != 1 {
        return None;
    }
    (2..p).find_map(|c| {
        let r = pow_mod(c, (p - 1) / 4, p);
        (mul_mod(r, r, p) == p - 1).then_some(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_primes_are_prime() {
        let (p, q) = DEFAULT_PRIMES;
        assert!(is_prime(p) && is_prime(q));
        assert!(p > 1 << 31 && q > 1 << 31 && p != q);
        for prime in [p, q] {
            let r = sqrt_minus_one(prime).unwrap();
            assert_eq!(mul_mod(r, r, prime), prime - 1);
        }
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(!is_prime(2_147_483_649));
        assert_eq!(sqrt_minus_one(7), None);
    }
}
