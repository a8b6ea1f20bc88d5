//! Exact scalar arithmetic: rationals, integer factorization, local symbols
//! and the quadratic field `Q(sqrt d)`.

mod factor;
mod local;
mod quad;

pub use factor::{factor, is_probable_prime, squarefree_part, FactoredInteger};
pub use local::{
    hilbert_symbol, is_norm_from_sqrt5, jacobi, legendre_solve, local_places, solve_norm_equation,
    sqrt_mod_prime, Place,
};
pub use quad::{QuadExt, Sqrt5};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision integer.
pub type Integer = BigInt;
/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Errors raised by scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("zero input is not allowed here")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(Integer),
    #[error("norm equation search exhausted its bound for {0}")]
    SearchExhausted(Rational),
}

/// Shorthand for the rational `n / d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn isqrt_exact(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact `k`-th root of an integer (odd `k` accepts negative input).
pub fn iroot_exact(n: &Integer, k: u32) -> Option<Integer> {
    if k == 0 {
        return None;
    }
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return iroot_exact(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// True iff `q = r^2` for some rational `r`. Zero counts as a square.
pub fn is_square(q: &Rational) -> bool {
    sqrt_rational(q).is_some()
}

/// The non-negative rational square root of `q`, if it exists.
pub fn sqrt_rational(q: &Rational) -> Option<Rational> {
    let n = isqrt_exact(q.numer())?;
    let d = isqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

/// Rational `k`-th root of `q`, if it exists.
pub fn nth_root_rational(q: &Rational, k: u32) -> Option<Rational> {
    let n = iroot_exact(q.numer(), k)?;
    let d = iroot_exact(q.denom(), k)?;
    Some(Rational::new(n, d))
}

/// Integer representative of the square class of a nonzero rational:
/// `n/d` and `n*d` differ by the square `d^2`.
pub fn square_class_integer(q: &Rational) -> Integer {
    q.numer() * q.denom()
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &Integer, p: &Integer) -> u32 {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Least common multiple of the denominators of `qs` (1 for an empty slice).
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    qs.into_iter()
        .fold(Integer::one(), |acc, q| acc.lcm(q.denom()))
}
