//! Small integer helpers.

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of the prime `m` in `n` (`n > 0`).
pub fn valuation(mut n: u64, m: u64) -> u32 {
    let mut v = 0;
    while n % m == 0 {
        n /= m;
        v += 1;
    }
    v
}

/// `x mod n` in `[0, n)`.
pub fn residue(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// Representative of `x mod n` in `[-floor(n/2), n - floor(n/2))`.
pub fn balanced(x: i64, n: u64) -> i64 {
    let n = n as i64;
    let r = x.rem_euclid(n);
    if r >= n - n / 2 {
        r - n
    } else {
        r
    }
}

/// True when `n > 1` is a power of a single prime.
pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_representatives() {
        assert_eq!(balanced(-3, 6), -3);
        assert_eq!(balanced(3, 6), -3);
        assert_eq!(balanced(-4, 9), -4);
        assert_eq!(balanced(4, 9), 4);
        assert_eq!(balanced(5, 9), -4);
        assert_eq!(balanced(1, 1), 0);
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(27));
        assert!(is_prime_power(2));
        assert!(!is_prime_power(12));
        assert!(!is_prime_power(1));
    }
}
