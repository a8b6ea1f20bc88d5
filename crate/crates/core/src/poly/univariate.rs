use alloc::vec::Vec;
use core::fmt;

use super::MultiPoly;
use crate::arith::Rational;
use crate::ring::Field;

/// Dense univariate polynomial over a field, coefficients in increasing degree.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = alloc::vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.leading().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = alloc::vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&c.mul(dj));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => Self::new(self.coeffs.iter().map(|c| c.mul(&inv)).collect()),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True iff `gcd(f, f')` is constant (and `f` is nonconstant).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    pub fn resultant(&self, other: &Self) -> F {
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return F::zero();
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = F::one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                return acc.mul(&b.leading().pow(da as u32));
            }
            let (_, r) = a.div_rem(&b);
            let Some(dr) = r.degree() else {
                return F::zero();
            };
            if (da * db) % 2 == 1 {
                acc = acc.neg();
            }
            acc = acc.mul(&b.leading().pow((da - dr) as u32));
            a = b;
            b = r;
        }
    }

    /// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> F {
        let Some(n) = self.degree() else {
            return F::zero();
        };
        if n == 0 {
            return F::zero();
        }
        if n == 1 {
            return F::one();
        }
        let r = self.resultant(&self.derivative());
        let mut d = r.mul(&self.leading().inv().unwrap());
        if (n * (n - 1) / 2) % 2 == 1 {
            d = d.neg();
        }
        d
    }

    /// Discriminant of the binary form of degree `n` whose dehomogenization
    /// is `self`; dropping the degree by one multiplies by the square of the
    /// new leading coefficient, dropping it further gives zero.
    pub fn binary_discriminant(&self, n: usize) -> F {
        match self.degree() {
            Some(d) if d == n => self.discriminant(),
            Some(d) if d + 1 == n => self.discriminant().mul(&self.leading().pow(2)),
            _ => F::zero(),
        }
    }
}

impl UniPoly<Rational> {
    /// Views a polynomial in at most the variable `var` as univariate.
    pub fn from_multipoly(p: &MultiPoly, var: &str) -> Option<Self> {
        if p.used_vars().iter().any(|v| v != var) {
            return None;
        }
        Some(Self::new(p.coefficients_in(var).iter().map(|c| c.constant_term()).collect()))
    }

    pub fn to_multipoly(&self, var: &str) -> MultiPoly {
        let cs: Vec<MultiPoly> = self.coeffs.iter().map(|c| MultiPoly::constant(c.clone())).collect();
        MultiPoly::from_coefficients_in(var, &cs)
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rint;

    fn up(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(cs.iter().map(|c| rint(*c)).collect())
    }

    #[test]
    fn discriminants() {
        // x^2 + b x + c -> b^2 - 4c
        assert_eq!(up(&[3, 5, 1]).discriminant(), rint(13));
        // x^3 + p x + q -> -4p^3 - 27q^2
        assert_eq!(up(&[2, -1, 0, 1]).discriminant(), rint(4 - 108));
        assert_eq!(up(&[-1, 0, 0, 0, 0, 1]).discriminant(), rint(3125));
        assert_eq!(up(&[-1, 0, 0, 0, 0, 1]).binary_discriminant(6), rint(3125));
        assert_eq!(up(&[1, -2, 1]).discriminant(), rint(0));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = up(&[-1, 0, 1]);
        let b = up(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), up(&[1, 1]));
        assert!(a.is_squarefree());
        assert!(!b.is_squarefree());
        let (q, r) = up(&[1, 0, 0, 1]).div_rem(&up(&[1, 1]));
        assert_eq!(q, up(&[1, -1, 1]));
        assert!(r.is_zero());
    }
}
