//! Sparse multivariate polynomials over `Q` with a named, ordered variable
//! list and graded lexicographic term order.

mod parse;
mod univariate;

pub use parse::ParseError;
pub use univariate::UniPoly;

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{Integer, Rational};

/// Errors from polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable {0} has no value")]
    UnboundVariable(String),
    #[error("variable {0} is not in the declared variable list")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division failed")]
    NotDivisible,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        MultiPoly { vars: vec![name.to_owned()], terms }
    }

    /// Builds a polynomial from exponent/coefficient pairs; zero coefficients
    /// are dropped and repeated exponents summed.
    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(PolyError::UnknownVariable(alloc::format!("exponent vector {e:?}")));
            }
            accumulate(&mut map, Monomial(e), c);
        }
        Ok(MultiPoly { vars, terms: map })
    }

    /// Parses an expression such as `3/2*g^2 - (h + 1)*g`.
    pub fn parse(s: &str) -> Result<Self, PolyError> {
        Ok(parse::parse(s)?)
    }

    /// Parses and then re-expresses over exactly the variables `vars`.
    pub fn parse_with_vars(s: &str, vars: &[&str]) -> Result<Self, PolyError> {
        let p = Self::parse(s)?;
        p.with_vars(&vars.iter().map(|v| (*v).to_owned()).collect::<Vec<_>>())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in increasing term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if !self.is_constant() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Maximum total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map(|m| m.degree()).unwrap_or(0)
    }

    /// Degree in one variable (0 if the variable is absent).
    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// True iff some term actually involves `var`.
    pub fn uses_var(&self, var: &str) -> bool {
        self.degree_in(var) > 0
    }

    /// Variables that occur with positive degree, in declaration order.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Coefficient of the monomial `prod var^e` given as name/exponent pairs.
    pub fn coeff(&self, monomial: &[(&str, u32)]) -> Rational {
        let mut e = vec![0u32; self.vars.len()];
        for (name, k) in monomial {
            match self.var_index(name) {
                Some(i) => e[i] += k,
                None if *k == 0 => {}
                None => return Rational::zero(),
            }
        }
        self.terms.get(&Monomial(e)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&[u32], &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Re-expresses over `vars`, which must contain every used variable.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self, PolyError> {
        if vars == self.vars.as_slice() {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let target = vars.iter().position(|w| w == v);
            if target.is_none() && self.terms.keys().any(|m| m.0[i] > 0) {
                return Err(PolyError::UnknownVariable(v.clone()));
            }
            map.push(target);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            for (i, k) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += k;
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(MultiPoly { vars: vars.to_vec(), terms })
    }

    fn merged_vars(&self, other: &MultiPoly) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    /// Both operands over a common variable list.
    fn aligned(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = self.merged_vars(other);
        (
            self.with_vars(&vars).expect("superset"),
            other.with_vars(&vars).expect("superset"),
        )
    }

    fn add_impl(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        if self.vars != other.vars {
            let (a, b) = self.aligned(other);
            return a.add_impl(&b, negate);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if negate { -c } else { c.clone() };
            accumulate(&mut terms, m.clone(), c);
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        if self.vars != other.vars {
            // constants mix freely without re-indexing the other side
            if let Some(c) = self.as_constant() {
                return other.scale(&c);
            }
            if let Some(c) = other.as_constant() {
                return self.scale(&c);
            }
            let (a, b) = self.aligned(other);
            return a.mul_impl(&b);
        }
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one().with_vars(&self.vars).expect("constant");
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates with each variable mapped into a ring by `value`.
    ///
    /// Variables that do not occur are never looked up.
    pub fn eval_in<R: crate::ring::Ring>(
        &self,
        mut value: impl FnMut(&str) -> Option<R>,
    ) -> Result<R, PolyError> {
        let n = self.vars.len();
        let mut powers: Vec<Vec<R>> = Vec::with_capacity(n);
        for i in 0..n {
            let maxdeg = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            if maxdeg == 0 {
                powers.push(Vec::new());
                continue;
            }
            let x = value(&self.vars[i]).ok_or_else(|| PolyError::UnboundVariable(self.vars[i].clone()))?;
            let mut pw = vec![R::one(), x.clone()];
            for _ in 2..=maxdeg {
                let next = pw.last().unwrap().mul(&x);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (i, k) in m.0.iter().enumerate() {
                if *k > 0 {
                    t = t.mul(&powers[i][*k as usize]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Evaluates at rational values for all used variables.
    pub fn eval(&self, values: &[(&str, Rational)]) -> Result<Rational, PolyError> {
        self.eval_in(|v| values.iter().find(|(n, _)| *n == v).map(|(_, q)| q.clone()))
    }

    /// Substitutes polynomials for the named variables simultaneously; other
    /// variables are kept.
    pub fn substitute(&self, subs: &[(&str, &MultiPoly)]) -> MultiPoly {
        if subs.iter().all(|(v, _)| !self.uses_var(v)) {
            return self.clone();
        }
        self.eval_in(|v| {
            Some(match subs.iter().find(|(n, _)| *n == v) {
                Some((_, p)) => (*p).clone(),
                None => MultiPoly::var(v),
            })
        })
        .expect("every variable is bound")
        .with_vars_lenient(&self.vars)
    }

    /// Substitutes rational values for some variables.
    pub fn subs_rational(&self, values: &[(&str, Rational)]) -> MultiPoly {
        let polys: Vec<(&str, MultiPoly)> =
            values.iter().map(|(v, q)| (*v, MultiPoly::constant(q.clone()))).collect();
        let refs: Vec<(&str, &MultiPoly)> = polys.iter().map(|(v, p)| (*v, p)).collect();
        self.substitute(&refs)
    }

    /// Replaces `var` by `var + shift` for each pair.
    pub fn shift(&self, shifts: &[(&str, Rational)]) -> MultiPoly {
        let polys: Vec<(&str, MultiPoly)> = shifts
            .iter()
            .map(|(v, q)| (*v, &MultiPoly::var(v) + &MultiPoly::constant(q.clone())))
            .collect();
        let refs: Vec<(&str, &MultiPoly)> = polys.iter().map(|(v, p)| (*v, p)).collect();
        self.substitute(&refs)
    }

    /// Keeps the variable order of `preferred` first when possible.
    fn with_vars_lenient(self, preferred: &[String]) -> MultiPoly {
        let mut vars = preferred.to_vec();
        for v in &self.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        self.with_vars(&vars).expect("superset")
    }

    pub fn derivative(&self, var: &str) -> MultiPoly {
        let Some(i) = self.var_index(var) else {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            terms.insert(Monomial(e), c * Rational::from_integer(k.into()));
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Positive rational `c` with `self / c` having coprime integer
    /// coefficients; zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num = Integer::zero();
        let mut den = Integer::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::zero();
        }
        Rational::new(num, den)
    }

    /// `self / content(self)`.
    pub fn primitive(&self) -> MultiPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Primitive part with positive leading coefficient.
    pub fn normalized(&self) -> MultiPoly {
        let p = self.primitive();
        if p.leading_coeff().is_negative() {
            -p
        } else {
            p
        }
    }

    /// Smallest positive integer clearing all denominators.
    pub fn denominator_lcm(&self) -> Integer {
        crate::arith::common_denominator(self.terms.values())
    }

    /// Exact quotient `self / d`, or `NotDivisible`.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if let Some(c) = d.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let (mut r, d) = self.aligned(d);
        let vars = r.vars.clone();
        let (ld, lc) = {
            let (m, c) = d.terms.iter().next_back().unwrap();
            (m.clone(), c.clone())
        };
        let mut q: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((lm, lcr)) = r.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !ld.divides(&lm) {
                return Err(PolyError::NotDivisible);
            }
            let qm = lm.div(&ld);
            let qc = &lcr / &lc;
            for (m, c) in &d.terms {
                accumulate(&mut r.terms, m.mul(&qm), -(c * &qc));
            }
            debug_assert!(!r.terms.contains_key(&lm));
            q.insert(qm, qc);
        }
        Ok(MultiPoly { vars, terms: q }.with_vars_lenient(&self.vars))
    }

    /// Remainder of `self` modulo `d`. A single polynomial is a Groebner
    /// basis of the ideal it generates, so the remainder is zero exactly
    /// when `d` divides `self`, and the map is linear.
    pub fn rem(&self, d: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if d.is_constant() {
            return Ok(MultiPoly::zero());
        }
        let (mut r, d) = self.aligned(d);
        let vars = r.vars.clone();
        let (ld, lc) = {
            let (m, c) = d.terms.iter().next_back().unwrap();
            (m.clone(), c.clone())
        };
        let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((lm, lcr)) = r.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !ld.divides(&lm) {
                r.terms.remove(&lm);
                out.insert(lm, lcr);
                continue;
            }
            let qm = lm.div(&ld);
            let qc = &lcr / &lc;
            for (m, c) in &d.terms {
                accumulate(&mut r.terms, m.mul(&qm), -(c * &qc));
            }
        }
        Ok(MultiPoly { vars, terms: out }.with_vars_lenient(&self.vars))
    }

    /// Coefficients of `self` viewed as a polynomial in `var`, indexed by degree.
    pub fn coefficients_in(&self, var: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var) as usize;
        let mut out: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut e = m.0.clone();
            e[i] = 0;
            out[k].insert(Monomial(e), c.clone());
        }
        out.into_iter()
            .map(|terms| MultiPoly { vars: self.vars.clone(), terms })
            .collect()
    }

    /// Reassembles `sum coeffs[k] * var^k`.
    pub fn from_coefficients_in(var: &str, coeffs: &[MultiPoly]) -> MultiPoly {
        let x = MultiPoly::var(var);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Greatest common divisor, normalized to content one and positive
    /// leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let (a, b) = self.aligned(other);
        let vars = a.vars.clone();
        gcd_rec(&a, &b, &vars).normalized()
    }

    /// True iff the two polynomials agree after dividing by the content.
    pub fn associated(&self, other: &MultiPoly) -> bool {
        self.normalized() == other.normalized()
    }

    /// Removes repeated factors involving `var` via `f / gcd(f, df/dvar)`.
    pub fn squarefree_in(&self, var: &str) -> MultiPoly {
        let d = self.derivative(var);
        if d.is_zero() {
            return self.normalized();
        }
        let g = self.gcd(&d);
        self.div_exact(&g).expect("gcd divides").normalized()
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn main_var(a: &MultiPoly, b: &MultiPoly, vars: &[String]) -> Option<String> {
    vars.iter().find(|v| a.uses_var(v) || b.uses_var(v)).cloned()
}

fn content_in(p: &MultiPoly, var: &str, vars: &[String]) -> MultiPoly {
    let coeffs = p.coefficients_in(var);
    let mut g = MultiPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() { c.clone() } else { gcd_rec(&g, c, vars) };
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly, vars: &[String]) -> MultiPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let Some(x) = main_var(a, b, vars) else {
        return MultiPoly::one();
    };
    if !a.uses_var(&x) {
        return gcd_rec(a, &content_in(b, &x, vars), vars);
    }
    if !b.uses_var(&x) {
        return gcd_rec(&content_in(a, &x, vars), b, vars);
    }
    let ca = content_in(a, &x, vars);
    let cb = content_in(b, &x, vars);
    let c = gcd_rec(&ca, &cb, vars);
    let mut f = a.div_exact(&ca).expect("content divides").primitive();
    let mut g = b.div_exact(&cb).expect("content divides").primitive();
    if f.degree_in(&x) < g.degree_in(&x) {
        core::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, &x);
        if r.is_zero() {
            break;
        }
        if !r.uses_var(&x) {
            return c;
        }
        let cr = content_in(&r, &x, vars);
        f = g;
        g = r.div_exact(&cr).expect("content divides").primitive();
    }
    &c * &g
}

/// `lc(g)^(deg f - deg g + 1) f mod g` in the variable `x`.
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, x: &str) -> MultiPoly {
    let gc = g.coefficients_in(x);
    let dg = gc.len() - 1;
    let lg = gc[dg].clone();
    let mut r = f.coefficients_in(x);
    while r.len() > dg && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for c in r.iter_mut() {
            *c = &*c * &lg;
        }
        let shift = dr - dg;
        for (k, gk) in gc.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&lr * gk);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    MultiPoly::from_coefficients_in(x, &r)
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl Default for MultiPoly {
    fn default() -> Self {
        MultiPoly::zero()
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &'b MultiPoly) -> MultiPoly {
                let f: fn(&MultiPoly, &MultiPoly) -> MultiPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                $tr::$m(&self, &rhs)
            }
        }
        impl<'b> $tr<&'b MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &'b MultiPoly) -> MultiPoly {
                $tr::$m(&self, rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                $tr::$m(self, &rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| a.add_impl(b, false));
poly_binop!(Sub, sub, |a, b| a.add_impl(b, true));
poly_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let mono = format_monomial(&self.vars, &m.0);
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn format_monomial(vars: &[String], e: &[u32]) -> String {
    use core::fmt::Write as _;
    let mut s = String::new();
    for (v, k) in vars.iter().zip(e) {
        if *k == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(v);
        if *k > 1 {
            let _ = write!(s, "^{k}");
        }
    }
    s
}

/// Shorthand for parsing a polynomial literal known to be well formed.
pub fn poly(s: &str) -> MultiPoly {
    MultiPoly::parse(s).unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rint};

    #[test]
    fn arithmetic_and_display() {
        let f = poly("m^2 - 5*n^2 - 5");
        assert_eq!(f.to_string(), "m^2 - 5*n^2 - 5");
        let g = poly("(m + 1)*(m - 1)");
        assert_eq!(g, poly("m^2 - 1"));
        assert_eq!((&f - &g).to_string(), "-5*n^2 - 4");
        assert_eq!(poly("3/2*g^2*h - g").to_string(), "3/2*g^2*h - g");
        assert_eq!(poly("0").to_string(), "0");
        assert_eq!(poly("x - x"), MultiPoly::zero());
    }

    #[test]
    fn var_lists_merge() {
        let a = poly("g + 1");
        let b = poly("h");
        let s = &a + &b;
        assert_eq!(s.vars(), &["g".to_owned(), "h".to_owned()]);
        assert_eq!(s, poly("h + g + 1"));
        assert_eq!(poly("g*h"), poly("h*g"));
    }

    #[test]
    fn evaluation_and_substitution() {
        let f = poly("g^2 + 3*g*h - 1");
        assert_eq!(f.eval(&[("g", rint(2)), ("h", rat(1, 3))]).unwrap(), rint(5));
        assert!(matches!(f.eval(&[("g", rint(1))]), Err(PolyError::UnboundVariable(_))));
        let s = f.substitute(&[("g", &poly("t + 1"))]);
        assert_eq!(s, poly("(t+1)^2 + 3*(t+1)*h - 1"));
        assert_eq!(poly("m^2 - 5*n^2 - 5").shift(&[("m", rint(5)), ("n", rint(2))]), poly("m^2 - 5*n^2 + 10*m - 20*n"));
    }

    #[test]
    fn content_and_division() {
        let f = poly("6*x^2 + 9/2*x*y");
        assert_eq!(f.content(), rat(3, 2));
        assert_eq!(f.primitive(), poly("4*x^2 + 3*x*y"));
        let a = poly("x^2 - y^2");
        assert_eq!(a.div_exact(&poly("x + y")).unwrap(), poly("x - y"));
        assert_eq!(a.div_exact(&poly("x + 2*y")), Err(PolyError::NotDivisible));
    }

    #[test]
    fn gcds() {
        let p = poly("(x + y)^2 * (x - 2*z)");
        let q = poly("(x + y) * (x - 2*z)^3 * (y + 1)");
        assert_eq!(p.gcd(&q), poly("(x + y)*(x - 2*z)").normalized());
        assert_eq!(poly("x + 1").gcd(&poly("y")), MultiPoly::one());
        assert_eq!(poly("6*h^2").gcd(&poly("4*h")), poly("h"));
    }

    #[test]
    fn degrees() {
        let f = poly("t^4 + 1");
        assert_eq!(f.total_degree(), 4);
        assert_eq!(poly("g^2*h + h^4").degree_in("g"), 2);
        assert_eq!(MultiPoly::zero().total_degree(), 0);
    }
}
