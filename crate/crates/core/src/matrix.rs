//! Small dense matrices over a ring, mainly symmetric Gram matrices of
//! quadratic forms.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::Rational;
use crate::poly::MultiPoly;
use crate::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    /// Row-major constructor; panics if the length does not match.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let n = cols[0].len();
        Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: T) {
        self.set(j, i, v.clone());
        self.set(i, j, v);
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `T^t A T`.
    pub fn congruence(&self, t: &Self) -> Self {
        t.transpose().mul(self).mul(t)
    }

    /// Determinant by cofactor expansion (sizes here are at most 4).
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor_det(&idx, &idx)
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> T {
        match rows.len() {
            0 => T::one(),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => self
                .get(rows[0], cols[0])
                .mul(self.get(rows[1], cols[1]))
                .sub(&self.get(rows[0], cols[1]).mul(self.get(rows[1], cols[0]))),
            _ => {
                let mut acc = T::zero();
                let rest = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let m = a.mul(&self.minor_det(rest, &sub));
                    acc = if k % 2 == 0 { acc.add(&m) } else { acc.sub(&m) };
                }
                acc
            }
        }
    }

    /// `u^t A v`.
    pub fn bilinear(&self, u: &[T], v: &[T]) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if v[j].is_zero() {
                    continue;
                }
                acc = acc.add(&u[i].mul(self.get(i, j)).mul(&v[j]));
            }
        }
        acc
    }

    /// `v^t A v`.
    pub fn quad(&self, v: &[T]) -> T {
        self.bilinear(v, v)
    }
}

impl<T: Field> Matrix<T> {
    /// Inverse by Gauss-Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&p));
                inv.set(col, j, inv.get(col, j).mul(&p));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    a.set(r, j, a.get(r, j).sub(&f.mul(a.get(col, j))));
                    inv.set(r, j, inv.get(r, j).sub(&f.mul(inv.get(col, j))));
                }
            }
        }
        Some(inv)
    }
}

impl Matrix<MultiPoly> {
    /// Maximum total degree over all entries.
    pub fn poly_degree(&self) -> u32 {
        self.data.iter().map(|p| p.total_degree()).max().unwrap_or(0)
    }

    /// Substitutes rational values for variables in every entry.
    pub fn specialize(&self, values: &[(&str, Rational)]) -> Result<Matrix<Rational>, crate::poly::PolyError> {
        self.try_map(|p| p.eval(values))
    }
}

impl Matrix<Rational> {
    pub fn to_poly(&self) -> Matrix<MultiPoly> {
        self.map(|q| MultiPoly::constant(q.clone()))
    }
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Renders the quadratic form of a symmetric Gram matrix in the variables
/// `x1, ..., xn`, e.g. `x1^2 - 5*x2^2 + (m^2 - 5*n^2 - 5)*x3^2`.
pub fn quadratic_form_string<T: Ring>(gram: &Matrix<T>) -> String {
    let n = gram.rows();
    let mut parts: Vec<(bool, String)> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let c = if i == j {
                gram.get(i, i).clone()
            } else {
                gram.get(i, j).add(gram.get(j, i))
            };
            if c.is_zero() {
                continue;
            }
            let mono = if i == j { format!("x{}^2", i + 1) } else { format!("x{}*x{}", i + 1, j + 1) };
            let s = format!("{c}");
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => (true, String::from(rest)),
                _ => (false, s),
            };
            let term = if body == "1" {
                mono
            } else if body.contains(' ') {
                format!("({body})*{mono}")
            } else {
                format!("{body}*{mono}")
            };
            parts.push((neg, term));
        }
    }
    if parts.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, (neg, term)) in parts.into_iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&term);
    }
    out
}
