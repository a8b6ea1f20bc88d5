use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArithError, Integer};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Sign and prime-power decomposition of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInteger {
    /// `1` or `-1`.
    pub sign: i8,
    /// Primes strictly increasing, exponents at least one.
    pub factors: Vec<(Integer, u32)>,
}

impl FactoredInteger {
    /// Multiplies the factorization back out.
    pub fn value(&self) -> Integer {
        let mut acc = Integer::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &Integer> {
        self.factors.iter().map(|(p, _)| p)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Prime factorization: trial division up to 10^6, then Miller-Rabin and
/// Pollard-Brent rho on the cofactor.
pub fn factor(n: &Integer) -> Result<FactoredInteger, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut primes: Vec<Integer> = Vec::new();

    let push_small = |m: &mut Integer, p: u64, primes: &mut Vec<Integer>| {
        let bp = BigInt::from(p);
        loop {
            let (q, r) = m.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            *m = q;
            primes.push(bp.clone());
        }
    };
    push_small(&mut m, 2, &mut primes);
    push_small(&mut m, 3, &mut primes);
    let mut d = 5u64;
    while d <= TRIAL_LIMIT {
        if let Some(small) = m.to_u64() {
            if d.saturating_mul(d) > small {
                break;
            }
        }
        push_small(&mut m, d, &mut primes);
        push_small(&mut m, d + 2, &mut primes);
        d += 6;
    }
    if !m.is_one() {
        let limit = BigInt::from(TRIAL_LIMIT);
        if &m < &(&limit * &limit) {
            // no divisor below the trial limit, so m is prime
            primes.push(m);
        } else {
            split_large(m, &mut primes);
        }
    }
    primes.sort();
    let mut factors: Vec<(Integer, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(FactoredInteger { sign, factors })
}

fn split_large(n: Integer, out: &mut Vec<Integer>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = super::isqrt_exact(&n) {
        split_large(r.clone(), out);
        split_large(r, out);
        return;
    }
    let mut c = 1u64;
    loop {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split_large(d, out);
            split_large(other, out);
            return;
        }
        c += 1;
    }
}

fn pollard_brent(n: &Integer, c: u64) -> Option<Integer> {
    let c = BigInt::from(c);
    let f = |x: &Integer| (x * x + &c) % n;
    let mut y = BigInt::from(2u32);
    let mut r: u64 = 1;
    let mut q = Integer::one();
    let m: u64 = 128;
    let mut g = Integer::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > (1u64 << 26) {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Miller-Rabin with the first 20 prime bases; deterministic far beyond the
/// sizes used here.
pub fn is_probable_prime(n: &Integer) -> bool {
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    if n < &BigInt::from(2) {
        return false;
    }
    for b in BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = Integer::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for b in BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The unique squarefree integer in the square class of `n`.
pub fn squarefree_part(n: &Integer) -> Result<Integer, ArithError> {
    let f = factor(n)?;
    let mut acc = Integer::from(f.sign);
    for (p, e) in f.factors {
        if e % 2 == 1 {
            acc *= p;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(n: i64) -> FactoredInteger {
        factor(&BigInt::from(n)).unwrap()
    }

    #[test]
    fn small_factorizations() {
        let f = fi(12);
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, vec![(BigInt::from(2), 2), (BigInt::from(3), 1)]);
        let f = fi(-3125);
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(BigInt::from(5), 5)]);
        let f = fi(9261);
        assert_eq!(f.factors, vec![(BigInt::from(3), 3), (BigInt::from(7), 3)]);
        assert!(fi(1).factors.is_empty());
        assert_eq!(factor(&BigInt::zero()), Err(ArithError::ZeroInput));
    }

    #[test]
    fn large_semiprime() {
        let p: BigInt = "1000000007".parse().unwrap();
        let q: BigInt = "998244353".parse().unwrap();
        let r: BigInt = "1000000000039".parse().unwrap();
        let n = &p * &q * &r * &r;
        let f = factor(&n).unwrap();
        assert_eq!(f.value(), n);
        assert_eq!(f.factors.len(), 3);
        assert!(f.factors.iter().all(|(p, _)| is_probable_prime(p)));
    }

    #[test]
    fn squarefree_parts() {
        let sf = |n: i64| squarefree_part(&BigInt::from(n)).unwrap();
        assert_eq!(sf(12), BigInt::from(3));
        assert_eq!(sf(-50), BigInt::from(-2));
        assert_eq!(sf(1), BigInt::from(1));
        assert!(squarefree_part(&BigInt::zero()).is_err());
    }
}
