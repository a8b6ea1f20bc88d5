//! Minimal ring abstraction shared by matrices, invariants and the Mestre
//! construction, so one code path serves rationals, `Q(sqrt 5)` and
//! polynomials.

use core::fmt::{Debug, Display};

use num_traits::{One, Zero};

use crate::arith::{QuadExt, Rational};
use crate::poly::MultiPoly;

/// Commutative ring containing `Q`.
pub trait Ring: Clone + PartialEq + Debug + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl<const D: i64> Ring for QuadExt<D> {
    fn zero() -> Self {
        QuadExt::from_rational(<Rational as Zero>::zero())
    }
    fn one() -> Self {
        QuadExt::from_rational(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        QuadExt::from_rational(q.clone())
    }
    fn scale(&self, q: &Rational) -> Self {
        QuadExt::new(&self.a * q, &self.b * q)
    }
}

impl<const D: i64> Field for QuadExt<D> {
    fn inv(&self) -> Option<Self> {
        QuadExt::inv(self)
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(q.clone())
    }
    fn scale(&self, q: &Rational) -> Self {
        self.scale(q)
    }
    fn pow(&self, e: u32) -> Self {
        MultiPoly::pow(self, e)
    }
}
