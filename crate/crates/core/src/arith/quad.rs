use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{factor, nth_root_rational, sqrt_rational, Integer, Rational};

/// `a + b sqrt(D)` for a fixed squarefree `D`.
///
/// The discriminant is part of the type, so values over different fields
/// cannot be mixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt<const D: i64> {
    pub a: Rational,
    pub b: Rational,
}

/// Elements of `Q(sqrt 5)`.
pub type Sqrt5 = QuadExt<5>;

impl<const D: i64> QuadExt<D> {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self { a, b: Rational::zero() }
    }

    /// The generator `sqrt(D)`.
    pub fn sqrt_d() -> Self {
        Self { a: Rational::zero(), b: Rational::one() }
    }

    pub fn d() -> Rational {
        Rational::from_integer(Integer::from(D))
    }

    /// `a^2 - D b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Self::d() * &self.b * &self.b
    }

    /// `2a`.
    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self { a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_rational(Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// A square root in the field, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.b.is_zero() {
            if let Some(r) = sqrt_rational(&self.a) {
                return Some(Self::from_rational(r));
            }
            // (q sqrt D)^2 = D q^2
            let q = sqrt_rational(&(&self.a / Self::d()))?;
            return Some(Self { a: Rational::zero(), b: q });
        }
        // (p + q sqrt D)^2 = p^2 + D q^2 + 2pq sqrt D, and p^2 - D q^2 = +-sqrt(N)
        let n = sqrt_rational(&self.norm())?;
        let two = Rational::from_integer(Integer::from(2));
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if let Some(p) = sqrt_rational(&cand) {
                if p.is_zero() {
                    continue;
                }
                let q = &self.b / (&two * &p);
                let r = Self { a: p, b: q };
                if &(&r * &r) == self {
                    return Some(r);
                }
            }
        }
        None
    }

    /// A `k`-th root in the field, if one exists.
    pub fn nth_root(&self, k: u32) -> Option<Self> {
        if k == 0 {
            return None;
        }
        if k == 1 || self.is_zero() {
            return Some(self.clone());
        }
        if k % 2 == 0 {
            return self.sqrt()?.nth_root(k / 2);
        }
        // odd k: a real field has no nontrivial roots of unity, so a rational
        // value only has rational odd roots
        if self.b.is_zero() {
            return nth_root_rational(&self.a, k).map(Self::from_rational);
        }
        self.odd_root_irrational(k)
    }

    // y^k = x with y = (s + t sqrt D)/2: N(y) is the rational k-th root of N(x)
    // and s = Tr(y) is a rational root of the Newton relation Tr(y^k) = Tr(x).
    fn odd_root_irrational(&self, k: u32) -> Option<Self> {
        let n = nth_root_rational(&self.norm(), k)?;
        // power sums p_j = Tr(y^j) satisfy p_j = s p_{j-1} - n p_{j-2}; expand
        // p_k as a polynomial in s with rational coefficients
        let mut prev: Vec<Rational> = alloc::vec![Rational::from_integer(Integer::from(2))];
        let mut cur: Vec<Rational> = alloc::vec![Rational::zero(), Rational::one()];
        for _ in 1..k {
            let mut next = alloc::vec![Rational::zero(); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += c;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= &n * c;
            }
            prev = cur;
            cur = next;
        }
        cur[0] -= self.trace();
        for s in rational_roots(&cur) {
            // y = s/2 + t sqrt D with t^2 = (s^2/4 - n)/D
            let half = &s / Rational::from_integer(Integer::from(2));
            let t2 = (&half * &half - &n) / Self::d();
            let Some(t) = sqrt_rational(&t2) else { continue };
            for t in [t.clone(), -t] {
                let y = Self { a: half.clone(), b: t };
                if &y.pow(k) == self {
                    return Some(y);
                }
            }
        }
        None
    }
}

/// Rational roots of a polynomial given by coefficients in increasing degree.
fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut cs: Vec<Rational> = coeffs.to_vec();
    while cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
    let mut out = Vec::new();
    if cs.len() < 2 {
        return out;
    }
    let mut shift = 0;
    while cs[shift].is_zero() {
        shift += 1;
    }
    if shift > 0 {
        out.push(Rational::zero());
    }
    let cs = &cs[shift..];
    if cs.len() < 2 {
        return out;
    }
    let den = super::common_denominator(cs.iter());
    let ints: Vec<Integer> = cs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().abs();
    let konst = ints[0].abs();
    let (Some(num_divs), Some(den_divs)) = (divisors(&konst), divisors(&lead)) else {
        return out;
    };
    for p in &num_divs {
        for q in &den_divs {
            for sign in [1i32, -1] {
                let r = Rational::new(p * Integer::from(sign), q.clone());
                let val = cs.iter().rev().fold(Rational::zero(), |acc, c| acc * &r + c);
                if val.is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

const MAX_DIVISORS: usize = 1 << 16;

fn divisors(n: &Integer) -> Option<Vec<Integer>> {
    let f = factor(n).ok()?;
    let mut out = alloc::vec![Integer::one()];
    for (p, e) in f.factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        out = next;
        if out.len() > MAX_DIVISORS {
            return None;
        }
    }
    Some(out)
}

impl<const D: i64> fmt::Display for QuadExt<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*sqrt{}", self.b.abs(), D)
        } else {
            write!(f, "{}*sqrt{}", self.b, D)
        }
    }
}

impl<const D: i64> From<Rational> for QuadExt<D> {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, const D: i64> $tr<&'a QuadExt<D>> for &'a QuadExt<D> {
            type Output = QuadExt<D>;
            fn $m(self, rhs: &'a QuadExt<D>) -> QuadExt<D> {
                let f: fn(&QuadExt<D>, &QuadExt<D>) -> QuadExt<D> = $body;
                f(self, rhs)
            }
        }
        impl<const D: i64> $tr for QuadExt<D> {
            type Output = QuadExt<D>;
            fn $m(self, rhs: QuadExt<D>) -> QuadExt<D> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| QuadExt { a: &x.a + &y.a, b: &x.b + &y.b });
forward_binop!(Sub, sub, |x, y| QuadExt { a: &x.a - &y.a, b: &x.b - &y.b });
forward_binop!(Mul, mul, |x, y| QuadExt {
    a: &x.a * &y.a + QuadExt::<D>::d() * &x.b * &y.b,
    b: &x.a * &y.b + &x.b * &y.a,
});
forward_binop!(Div, div, |x, y| x * &y.inv().expect("division by zero in quadratic field"));

impl<const D: i64> Neg for QuadExt<D> {
    type Output = QuadExt<D>;
    fn neg(self) -> QuadExt<D> {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl<const D: i64> Neg for &QuadExt<D> {
    type Output = QuadExt<D>;
    fn neg(self) -> QuadExt<D> {
        QuadExt { a: -&self.a, b: -&self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rint};

    fn q(a: Rational, b: Rational) -> Sqrt5 {
        Sqrt5::new(a, b)
    }

    #[test]
    fn norm_and_trace() {
        assert_eq!(q(rint(2), rint(1)).norm(), rint(-1));
        assert_eq!(q(rint(4), rint(1)).norm(), rint(11));
        assert_eq!(q(rint(2), rint(1)).trace(), rint(4));
        assert_eq!(q(rint(0), rint(3)).trace(), rint(0));
        assert_eq!(q(rat(1, 2), rint(7)).trace(), rint(1));
    }

    #[test]
    fn field_ops() {
        let x = q(rat(3, 2), rint(-1));
        let y = q(rint(2), rat(1, 3));
        assert_eq!(&(&x * &y) / &y, x);
        assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        assert_eq!(Sqrt5::sqrt_d().pow(2), Sqrt5::from_rational(rint(5)));
        assert!(Sqrt5::from_rational(rint(0)).inv().is_none());
    }

    #[test]
    fn roots() {
        let x = q(rat(3, 2), rint(-1));
        assert_eq!(x.pow(2).sqrt().map(|r| r.pow(2)), Some(x.pow(2)));
        assert_eq!(x.pow(3).nth_root(3), Some(x.clone()));
        assert_eq!(x.pow(5).nth_root(5), Some(x.clone()));
        assert_eq!(Sqrt5::from_rational(rint(20)).sqrt(), Some(q(rint(0), rint(2))));
        assert!(Sqrt5::from_rational(rint(2)).sqrt().is_none());
        assert!(Sqrt5::from_rational(rint(7)).nth_root(5).is_none());
        assert!(q(rint(3), rint(1)).nth_root(3).is_none());
        // 2 + sqrt5 is the cube of the golden ratio
        assert_eq!(q(rint(2), rint(1)).nth_root(3), Some(q(rat(1, 2), rat(1, 2))));
    }

    #[test]
    fn display() {
        assert_eq!(q(rat(1, 2), rint(-3)).to_string(), "1/2 - 3*sqrt5");
        assert_eq!(q(rint(0), rint(2)).to_string(), "2*sqrt5");
        assert_eq!(q(rint(7), rint(0)).to_string(), "7");
    }
}
