use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{factor, is_probable_prime, isqrt_exact, valuation, ArithError, Integer, Rational};

/// A place of `Q`: a finite prime or the real place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(Integer),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "infinity"),
        }
    }
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: &Integer, n: &Integer) -> i8 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1i8;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// A square root of `a` modulo the prime `p` (Tonelli-Shanks), if `a` is a
/// square mod `p`.
pub fn sqrt_mod_prime(a: &Integer, p: &Integer) -> Option<Integer> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(Integer::zero());
    }
    let two = BigInt::from(2);
    if *p == two {
        return Some(a);
    }
    if jacobi(&a, p) != 1 {
        return None;
    }
    let one = Integer::one();
    let pm1 = p - &one;
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    if s == 1 {
        return Some(a.modpow(&((p + &one) >> 2), p));
    }
    let mut z = two.clone();
    while jacobi(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1) as usize), p);
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    Some(r)
}

/// Hilbert symbol `(a, b)_v` of two nonzero rationals.
///
/// Returns `1` iff `z^2 = a x^2 + b y^2` has a nontrivial solution over the
/// completion `Q_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: &Place) -> Result<i8, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let a = super::square_class_integer(a);
    let b = super::square_class_integer(b);
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => {
            if !is_probable_prime(p) {
                return Err(ArithError::NotPrime(p.clone()));
            }
            Ok(hilbert_int(&a, &b, p))
        }
    }
}

pub(crate) fn hilbert_int(a: &Integer, b: &Integer, p: &Integer) -> i8 {
    let alpha = valuation(a, p);
    let beta = valuation(b, p);
    let u = a / num_traits::pow(p.clone(), alpha as usize);
    let v = b / num_traits::pow(p.clone(), beta as usize);
    let two = BigInt::from(2);
    if *p == two {
        let eight = BigInt::from(8);
        let u8_ = u.mod_floor(&eight).to_u32().unwrap();
        let v8 = v.mod_floor(&eight).to_u32().unwrap();
        let eps = |x: u32| ((x - 1) / 2) % 2;
        let omega = |x: u32| ((x * x - 1) / 8) % 2;
        let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s: i8 = 1;
        let p4 = p.mod_floor(&BigInt::from(4));
        if alpha % 2 == 1 && beta % 2 == 1 && p4 == BigInt::from(3) {
            s = -s;
        }
        if beta % 2 == 1 {
            s *= jacobi(&u, p);
        }
        if alpha % 2 == 1 {
            s *= jacobi(&v, p);
        }
        s
    }
}

/// All places where a Hilbert symbol of the given rationals can be `-1`:
/// the real place, 2, and every prime dividing a numerator or denominator.
pub fn local_places<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Vec<Place> {
    let mut primes: BTreeSet<Integer> = BTreeSet::new();
    primes.insert(BigInt::from(2));
    for q in values {
        for part in [q.numer(), q.denom()] {
            if part.is_zero() {
                continue;
            }
            if let Ok(f) = factor(part) {
                primes.extend(f.factors.into_iter().map(|(p, _)| p));
            }
        }
    }
    let mut out: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    out.push(Place::Infinity);
    out
}

/// True iff `c = u^2 - 5 v^2` for rationals `u, v`.
///
/// `Q(sqrt 5)` has class number one and a unit of norm `-1`, so `c` is a
/// norm exactly when every prime `p` with `p mod 5` in `{2, 3}` divides `c`
/// to an even power.
pub fn is_norm_from_sqrt5(c: &Rational) -> Result<bool, ArithError> {
    if c.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let five = BigInt::from(5);
    for part in [c.numer(), c.denom()] {
        for (p, e) in factor(part)?.factors {
            let r = p.mod_floor(&five).to_u32().unwrap();
            if e % 2 == 1 && (r == 2 || r == 3) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A pair `(u, v)` with `u^2 - 5 v^2 = c` exactly, or `None` when `c` is not
/// a norm from `Q(sqrt 5)`.
pub fn solve_norm_equation(c: &Rational) -> Result<Option<(Rational, Rational)>, ArithError> {
    if !is_norm_from_sqrt5(c)? {
        return Ok(None);
    }
    // u^2 - 5 v^2 = n/d  <=>  (u d)^2 - 5 (v d)^2 = n d
    let d = c.denom().clone();
    let cls = c.numer() * &d;
    let five = BigInt::from(5);
    // z^2 = 5 x^2 + (n d) y^2 with y != 0 gives u = z/(y d), v = x/(y d)
    let found = legendre_solve(&five, &cls).filter(|(_, y, _)| !y.is_zero());
    let (x, y, z) = match found {
        Some(sol) => sol,
        None => bounded_norm_search(&cls).ok_or_else(|| ArithError::SearchExhausted(c.clone()))?,
    };
    let scale = &y * &d;
    let u = Rational::new(z, scale.clone());
    let v = Rational::new(x, scale);
    debug_assert_eq!(&u * &u - Rational::from_integer(five) * &v * &v, *c);
    Ok(Some((u, v)))
}

const NORM_SEARCH_HEIGHT: i64 = 300;

fn bounded_norm_search(c: &Integer) -> Option<(Integer, Integer, Integer)> {
    for w in 1..=NORM_SEARCH_HEIGHT {
        let w = BigInt::from(w);
        let cw = c * &w * &w;
        for v in 0..=NORM_SEARCH_HEIGHT {
            let v = BigInt::from(v);
            let t = &cw + BigInt::from(5) * &v * &v;
            if let Some(u) = isqrt_exact(&t) {
                return Some((v, w, u));
            }
        }
    }
    None
}

/// Nontrivial integer solution of `z^2 = a x^2 + b y^2` by Legendre-style
/// descent, or `None` when the equation has no rational solution.
pub fn legendre_solve(a: &Integer, b: &Integer) -> Option<(Integer, Integer, Integer)> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let (a0, s) = split_square(a)?;
    let (b0, t) = split_square(b)?;
    let (x, y, z) = descend(&a0, &b0)?;
    // a = a0 s^2, b = b0 t^2
    let x = x * &t;
    let y = y * &s;
    let z = z * &s * &t;
    Some(normalize_triple(x, y, z))
}

/// `n = sf * r^2` with `sf` squarefree.
fn split_square(n: &Integer) -> Option<(Integer, Integer)> {
    let f = factor(n).ok()?;
    let mut sf = Integer::from(f.sign);
    let mut r = Integer::one();
    for (p, e) in f.factors {
        if e % 2 == 1 {
            sf *= &p;
        }
        r *= num_traits::pow(p, (e / 2) as usize);
    }
    Some((sf, r))
}

fn descend(a: &Integer, b: &Integer) -> Option<(Integer, Integer, Integer)> {
    let one = Integer::one();
    if a.is_one() {
        return Some((one.clone(), Integer::zero(), one));
    }
    if b.is_one() {
        return Some((Integer::zero(), one.clone(), one));
    }
    if a.abs() > b.abs() {
        return descend(b, a).map(|(x, y, z)| (y, x, z));
    }
    if b.abs().is_one() {
        // a, b in {-1}: negative definite
        return None;
    }
    let modulus = b.abs();
    let mut t = sqrt_mod_composite(a, &modulus)?;
    if &t * 2 > modulus {
        t -= &modulus;
    }
    let k = (&t * &t - a) / b;
    if k.is_zero() {
        return None;
    }
    let (k0, r) = split_square(&k)?;
    let (x1, y1, z1) = descend(a, &k0)?;
    let x = &t * &x1 + &z1;
    let z = &t * &z1 + a * &x1;
    let y = &k0 * &r * &y1;
    Some((x, y, z))
}

/// Square root of `a` modulo a squarefree modulus, combining prime roots by CRT.
fn sqrt_mod_composite(a: &Integer, modulus: &Integer) -> Option<Integer> {
    let f = factor(modulus).ok()?;
    let mut root = Integer::zero();
    let mut m = Integer::one();
    for (p, e) in f.factors {
        debug_assert_eq!(e, 1);
        let r = sqrt_mod_prime(a, &p)?;
        // combine root (mod m) with r (mod p)
        let inv = mod_inverse(&m, &p)?;
        let diff = (&r - &root).mod_floor(&p);
        let k = (diff * inv).mod_floor(&p);
        root += &m * k;
        m *= &p;
    }
    Some(root.mod_floor(&m))
}

fn mod_inverse(a: &Integer, m: &Integer) -> Option<Integer> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

fn normalize_triple(x: Integer, y: Integer, z: Integer) -> (Integer, Integer, Integer) {
    let g = x.gcd(&y).gcd(&z);
    if g.is_zero() || g.is_one() {
        return (x, y, z);
    }
    (x / &g, y / &g, z / &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rint};

    fn place(p: i64) -> Place {
        Place::Prime(BigInt::from(p))
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&rint(1), &rint(7), &place(7)), Ok(1));
        assert_eq!(hilbert_symbol(&rint(2), &rint(3), &place(2)), Ok(-1));
        assert_eq!(hilbert_symbol(&rint(-1), &rint(-1), &Place::Infinity), Ok(-1));
        assert_eq!(hilbert_symbol(&rint(-1), &rint(-1), &place(2)), Ok(-1));
        assert_eq!(hilbert_symbol(&rint(5), &rint(2), &place(2)), Ok(-1));
        assert_eq!(hilbert_symbol(&rint(0), &rint(2), &place(2)), Err(ArithError::ZeroInput));
        assert!(matches!(
            hilbert_symbol(&rint(3), &rint(2), &place(9)),
            Err(ArithError::NotPrime(_))
        ));
    }

    #[test]
    fn hilbert_symbol_is_square_class_invariant() {
        let a = rat(3, 4);
        let b = rat(-7, 5);
        for p in [2, 3, 5, 7] {
            assert_eq!(
                hilbert_symbol(&a, &b, &place(p)),
                hilbert_symbol(&rint(3), &rint(-35), &place(p))
            );
        }
    }

    #[test]
    fn tonelli_shanks() {
        let p = BigInt::from(1_000_000_009u64);
        for a in [2i64, 3, 5, 10, 12345] {
            let a = BigInt::from(a);
            match sqrt_mod_prime(&a, &p) {
                Some(r) => assert_eq!((&r * &r).mod_floor(&p), a.mod_floor(&p)),
                None => assert_eq!(jacobi(&a, &p), -1),
            }
        }
        // p = 1 mod 8 exercises the full loop
        let p = BigInt::from(17);
        for a in 1..17 {
            let a = BigInt::from(a);
            if let Some(r) = sqrt_mod_prime(&a, &p) {
                assert_eq!((&r * &r) % &p, a);
            }
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(is_norm_from_sqrt5(&rint(-1)), Ok(true));
        assert_eq!(is_norm_from_sqrt5(&rint(2)), Ok(false));
        assert_eq!(is_norm_from_sqrt5(&rint(11)), Ok(true));
        assert_eq!(is_norm_from_sqrt5(&rint(-4)), Ok(true));
        assert_eq!(is_norm_from_sqrt5(&rint(0)), Err(ArithError::ZeroInput));
        assert_eq!(is_norm_from_sqrt5(&rat(5, 3)), Ok(false));
        assert_eq!(is_norm_from_sqrt5(&rat(5, 9)), Ok(true));
    }

    #[test]
    fn norm_equation_examples() {
        let five = rint(5);
        for c in [rint(-4), rint(4), rint(-1), rint(11), rat(-9, 4), rat(4, 5), rint(1805)] {
            let (u, v) = solve_norm_equation(&c).unwrap().unwrap();
            assert_eq!(&u * &u - &five * &v * &v, c);
        }
        assert_eq!(solve_norm_equation(&rint(2)), Ok(None));
        assert_eq!(solve_norm_equation(&rint(0)), Err(ArithError::ZeroInput));
    }

    #[test]
    fn descent_finds_points() {
        for (a, b) in [(2i64, 7i64), (-1, 2), (3, -5), (13, 17), (-7, 11), (6, 10), (2, 2)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            if let Some((x, y, z)) = legendre_solve(&a, &b) {
                assert_eq!(&z * &z, &a * &x * &x + &b * &y * &y);
                assert!(!(x.is_zero() && y.is_zero() && z.is_zero()));
            }
        }
        assert!(legendre_solve(&BigInt::from(-1), &BigInt::from(-1)).is_none());
        assert!(legendre_solve(&BigInt::from(3), &BigInt::from(5)).is_none());
    }
}
