//! Igusa-Clebsch and Clebsch invariants of binary sextics, weighted
//! projective comparison, and the invariant formulas of the RM-5 charts.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use num_traits::Signed;

use crate::arith::{factor, nth_root_rational, Integer, Rational, Sqrt5};
use crate::poly::{poly, MultiPoly, UniPoly};
use crate::ring::{Field, Ring};

/// Weights of `(I2, I4, I6, I10)` in weighted projective space.
pub const IC_WEIGHTS: [u32; 4] = [1, 2, 3, 5];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("sextic has repeated roots (discriminant zero)")]
    RepeatedRoots,
    #[error("degree of f must be 5 or 6")]
    BadDegree,
    #[error("sigma5 must be nonzero")]
    ZeroSigma5,
}

/// Field in which a weighted scaling factor is sought.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    RationalSqrt5,
    /// Any nonzero complex factor: only ratio consistency is checked.
    Complex,
}

impl FieldTag {
    pub fn short_name(self) -> &'static str {
        match self {
            FieldTag::Rational => "q",
            FieldTag::RationalSqrt5 => "q5",
            FieldTag::Complex => "c",
        }
    }

    pub fn contains_sqrt5(self) -> bool {
        !matches!(self, FieldTag::Rational)
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Rational => "rational",
            FieldTag::RationalSqrt5 => "rational-sqrt5",
            FieldTag::Complex => "complex",
        })
    }
}

/// Scalars for which weighted equality over a tagged field is decidable.
pub trait InvariantScalar: Field {
    /// The smallest supported field containing every value of the type.
    fn native_tag() -> FieldTag;
    /// Whether `self` has a `k`-th root in the field named by `tag`.
    fn has_root_in(&self, k: u32, tag: FieldTag) -> bool;
}

impl InvariantScalar for Rational {
    fn native_tag() -> FieldTag {
        FieldTag::Rational
    }

    fn has_root_in(&self, k: u32, tag: FieldTag) -> bool {
        match tag {
            FieldTag::Rational => nth_root_rational(self, k).is_some(),
            FieldTag::RationalSqrt5 => Sqrt5::from_rational(self.clone()).nth_root(k).is_some(),
            FieldTag::Complex => true,
        }
    }
}

impl InvariantScalar for Sqrt5 {
    fn native_tag() -> FieldTag {
        FieldTag::RationalSqrt5
    }

    fn has_root_in(&self, k: u32, tag: FieldTag) -> bool {
        match tag {
            FieldTag::Rational => self.as_rational().is_some_and(|q| nth_root_rational(q, k).is_some()),
            FieldTag::RationalSqrt5 => self.nth_root(k).is_some(),
            FieldTag::Complex => true,
        }
    }
}

/// `(I2 : I4 : I6 : I10)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IgusaClebsch<F = Rational> {
    pub i2: F,
    pub i4: F,
    pub i6: F,
    pub i10: F,
}

/// Clebsch invariants `(A, B, C, D)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClebschInv<F = Rational> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Ring> IgusaClebsch<F> {
    pub fn new(i2: F, i4: F, i6: F, i10: F) -> Self {
        IgusaClebsch { i2, i4, i6, i10 }
    }

    pub fn to_array(&self) -> [F; 4] {
        [self.i2.clone(), self.i4.clone(), self.i6.clone(), self.i10.clone()]
    }

    pub fn from_array([i2, i4, i6, i10]: [F; 4]) -> Self {
        IgusaClebsch { i2, i4, i6, i10 }
    }

    pub fn is_all_zero(&self) -> bool {
        self.to_array().iter().all(|x| x.is_zero())
    }

    /// `(lambda I2, lambda^2 I4, lambda^3 I6, lambda^5 I10)`.
    pub fn weighted_scale(&self, lambda: &F) -> Self {
        let [a, b, c, d] = self.to_array();
        IgusaClebsch {
            i2: a.mul(lambda),
            i4: b.mul(&lambda.pow(2)),
            i6: c.mul(&lambda.pow(3)),
            i10: d.mul(&lambda.pow(5)),
        }
    }

    pub fn map<G: Ring>(&self, mut f: impl FnMut(&F) -> G) -> IgusaClebsch<G> {
        IgusaClebsch { i2: f(&self.i2), i4: f(&self.i4), i6: f(&self.i6), i10: f(&self.i10) }
    }
}

impl<F: Ring> ClebschInv<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        ClebschInv { a, b, c, d }
    }

    pub fn map<G: Ring>(&self, mut f: impl FnMut(&F) -> G) -> ClebschInv<G> {
        ClebschInv { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }
}

impl<F: fmt::Display> fmt::Display for IgusaClebsch<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {} : {})", self.i2, self.i4, self.i6, self.i10)
    }
}

impl<F: fmt::Display> fmt::Display for ClebschInv<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(A, B, C, D) = ({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// A model `y^2 = f(x)` with `f = c0 + c1 x + ... + c6 x^6` of degree 5 or 6.
#[derive(Clone, Debug, PartialEq)]
pub struct SexticModel<F = Rational> {
    coeffs: [F; 7],
}

impl<F: Field> SexticModel<F> {
    /// Checks only the degree; squarefreeness is checked where needed.
    pub fn new(coeffs: [F; 7]) -> Result<Self, InvariantError> {
        if coeffs[6].is_zero() && coeffs[5].is_zero() {
            return Err(InvariantError::BadDegree);
        }
        Ok(SexticModel { coeffs })
    }

    pub fn from_slice(cs: &[F]) -> Result<Self, InvariantError> {
        if cs.len() > 7 && cs[7..].iter().any(|c| !c.is_zero()) {
            return Err(InvariantError::BadDegree);
        }
        let coeffs: [F; 7] = core::array::from_fn(|i| cs.get(i).cloned().unwrap_or_else(F::zero));
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[F; 7] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        if self.coeffs[6].is_zero() {
            5
        } else {
            6
        }
    }

    pub fn to_unipoly(&self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.to_vec())
    }

    /// Discriminant of `f` as a binary sextic.
    pub fn discriminant(&self) -> F {
        self.to_unipoly().binary_discriminant(6)
    }

    /// True iff `y^2 = f(x)` is a genus-2 curve.
    pub fn is_squarefree(&self) -> bool {
        self.to_unipoly().is_squarefree()
    }

    pub fn map<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> SexticModel<G> {
        SexticModel { coeffs: core::array::from_fn(|i| f(&self.coeffs[i])) }
    }
}

impl<F: Ring> fmt::Display for SexticModel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..7).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let s = alloc::format!("{c}");
            let compound = s.trim_start_matches('-').contains(' ');
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.into()),
                _ => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = if compound { alloc::format!("({body})") } else { body };
            match (i, body.as_str()) {
                (0, _) => write!(f, "{body}")?,
                (1, "1") => write!(f, "x")?,
                (1, _) => write!(f, "{body}*x")?,
                (_, "1") => write!(f, "x^{i}")?,
                _ => write!(f, "{body}*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn falling(a: usize, b: usize) -> i64 {
    if b > a {
        return 0;
    }
    ((a - b + 1)..=a).map(|x| x as i64).product()
}

fn factorial(n: usize) -> Integer {
    (1..=n).fold(Integer::from(1), |acc, k| acc * Integer::from(k))
}

fn binomial(n: usize, k: usize) -> i64 {
    (falling(n, k) as i128 / (1..=k as i128).product::<i128>()) as i64
}

/// `d^(p+q) f / dx^p dy^q` for a binary form given by the coefficients of
/// `x^i y^(n-i)`.
fn form_partial<R: Ring>(f: &[R], p: usize, q: usize) -> Vec<R> {
    let n = f.len() - 1;
    if p + q > n {
        return Vec::new();
    }
    (p..=n - q)
        .map(|i| f[i].mul(&R::from_int(falling(i, p) * falling(n - i, q))))
        .collect()
}

fn form_mul<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// The `k`-th transvectant `(f, g)_k` of binary forms, normalized by
/// `(m-k)!(n-k)!/(m!n!)`.
pub fn transvectant<R: Ring>(f: &[R], g: &[R], k: usize) -> Vec<R> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    assert!(k <= m && k <= n, "transvectant order exceeds degree");
    let mut acc = vec![R::zero(); m + n - 2 * k + 1];
    for j in 0..=k {
        let df = form_partial(f, k - j, j);
        let dg = form_partial(g, j, k - j);
        let prod = form_mul(&df, &dg);
        let c = binomial(k, j) * if j % 2 == 0 { 1 } else { -1 };
        for (a, p) in acc.iter_mut().zip(prod) {
            *a = a.add(&p.mul(&R::from_int(c)));
        }
    }
    let scale = Rational::new(
        factorial(m - k) * factorial(n - k),
        factorial(m) * factorial(n),
    );
    acc.into_iter().map(|a| a.scale(&scale)).collect()
}

/// Clebsch invariants of the binary sextic with coefficients `c0..c6`
/// (coefficient of `x^i y^(6-i)` is `c_i`).
pub fn clebsch_from_coeffs<R: Ring>(c: &[R; 7]) -> ClebschInv<R> {
    let f = c.as_slice();
    let i = transvectant(f, f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    ClebschInv {
        a: transvectant(f, f, 6).remove(0),
        b: transvectant(&i, &i, 4).remove(0),
        c: transvectant(&i, &delta, 4).remove(0),
        d: transvectant(&y3, &y1, 2).remove(0),
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `I2 = -120 A`, `I4 = -720 A^2 + 6750 B`, and the companion formulas.
pub fn ic_from_clebsch<R: Ring>(c: &ClebschInv<R>) -> IgusaClebsch<R> {
    let (a, b, cc, d) = (&c.a, &c.b, &c.c, &c.d);
    let a2 = a.mul(a);
    let a3 = a2.mul(a);
    let ab = a.mul(b);
    IgusaClebsch {
        i2: a.scale(&q(-120)),
        i4: a2.scale(&q(-720)).add(&b.scale(&q(6750))),
        i6: a3
            .scale(&q(8640))
            .sub(&ab.scale(&q(108000)))
            .add(&cc.scale(&q(202500))),
        i10: a3
            .mul(&a2)
            .scale(&q(-62208))
            .add(&a3.mul(b).scale(&q(972000)))
            .add(&a2.mul(cc).scale(&q(1620000)))
            .sub(&ab.mul(b).scale(&q(3037500)))
            .sub(&b.mul(cc).scale(&q(6075000)))
            .sub(&d.scale(&q(4556250))),
    }
}

/// Inverse of [`ic_from_clebsch`], solving the triangular system.
pub fn clebsch_from_ic<R: Ring>(ic: &IgusaClebsch<R>) -> ClebschInv<R> {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let a = ic.i2.scale(&r(-1, 120));
    let a2 = a.mul(&a);
    let a3 = a2.mul(&a);
    let b = ic.i4.add(&a2.scale(&q(720))).scale(&r(1, 6750));
    let ab = a.mul(&b);
    let c = ic
        .i6
        .sub(&a3.scale(&q(8640)))
        .add(&ab.scale(&q(108000)))
        .scale(&r(1, 202500));
    let d = a3
        .mul(&a2)
        .scale(&q(-62208))
        .add(&a3.mul(&b).scale(&q(972000)))
        .add(&a2.mul(&c).scale(&q(1620000)))
        .sub(&ab.mul(&b).scale(&q(3037500)))
        .sub(&b.mul(&c).scale(&q(6075000)))
        .sub(&ic.i10)
        .scale(&r(1, 4556250));
    ClebschInv { a, b, c, d }
}

/// Igusa-Clebsch invariants of `y^2 = f(x)`, normalized so that `I10` is
/// the discriminant of `f` as a binary sextic.
pub fn igusa_clebsch_from_sextic<F: Field>(f: &SexticModel<F>) -> Result<IgusaClebsch<F>, InvariantError> {
    if f.discriminant().is_zero() {
        return Err(InvariantError::RepeatedRoots);
    }
    Ok(ic_from_clebsch(&clebsch_from_coeffs(f.coeffs())))
}

/// Invariants of a sextic with polynomial coefficients (no squarefree check).
pub fn igusa_clebsch_symbolic(c: &[MultiPoly; 7]) -> IgusaClebsch<MultiPoly> {
    ic_from_clebsch(&clebsch_from_coeffs(c))
}

fn nonzero_slots<F: Ring>(x: &[F; 4], y: &[F; 4]) -> Option<Vec<usize>> {
    let mut slots = Vec::new();
    for i in 0..4 {
        match (x[i].is_zero(), y[i].is_zero()) {
            (true, true) => {}
            (false, false) => slots.push(i),
            _ => return None,
        }
    }
    Some(slots)
}

/// True iff `y = lambda * x` in weighted projective space for some nonzero
/// `lambda` in the field named by `tag`.
pub fn ic_weighted_equal<F: InvariantScalar>(x: &IgusaClebsch<F>, y: &IgusaClebsch<F>, tag: FieldTag) -> bool {
    let (xa, ya) = (x.to_array(), y.to_array());
    let Some(slots) = nonzero_slots(&xa, &ya) else {
        return false;
    };
    if slots.is_empty() {
        return true;
    }
    let ratios: BTreeMap<usize, F> =
        slots.iter().map(|&i| (i, ya[i].div(&xa[i]).expect("nonzero slot"))).collect();
    for (k, &i) in slots.iter().enumerate() {
        for &j in &slots[k + 1..] {
            if ratios[&i].pow(IC_WEIGHTS[j]) != ratios[&j].pow(IC_WEIGHTS[i]) {
                return false;
            }
        }
    }
    if tag == FieldTag::Complex {
        return true;
    }
    // lambda^G is a product of the ratios with Bezout exponents
    let mut g = 0i64;
    let mut mu = F::one();
    for &i in &slots {
        let w = IC_WEIGHTS[i] as i64;
        if g == 0 {
            g = w;
            mu = ratios[&i].clone();
            continue;
        }
        let e = g.extended_gcd(&w);
        mu = signed_pow(&mu, e.x).mul(&signed_pow(&ratios[&i], e.y));
        g = e.gcd;
    }
    for &i in &slots {
        if mu.pow(IC_WEIGHTS[i] / g as u32) != ratios[&i] {
            return false;
        }
    }
    mu.has_root_in(g as u32, tag)
}

fn signed_pow<F: Field>(x: &F, e: i64) -> F {
    if e >= 0 {
        x.pow(e as u32)
    } else {
        x.inv().expect("nonzero").pow((-e) as u32)
    }
}

/// Scaling-free comparison of polynomial invariant tuples: checks
/// `y_i^(w_j) x_j^(w_i) = y_j^(w_i) x_i^(w_j)` as polynomial identities.
pub fn ic_weighted_equal_symbolic(x: &IgusaClebsch<MultiPoly>, y: &IgusaClebsch<MultiPoly>) -> bool {
    let (xa, ya) = (x.to_array(), y.to_array());
    let Some(slots) = nonzero_slots(&xa, &ya) else {
        return false;
    };
    let Some(&anchor) = slots.first() else {
        return true;
    };
    // with a weight-one anchor the remaining pairs follow from the anchor pairs
    let pairs: Vec<(usize, usize)> = if IC_WEIGHTS[anchor] == 1 {
        slots[1..].iter().map(|&j| (anchor, j)).collect()
    } else {
        let mut v = Vec::new();
        for (k, &i) in slots.iter().enumerate() {
            for &j in &slots[k + 1..] {
                v.push((i, j));
            }
        }
        v
    };
    pairs.into_iter().all(|(i, j)| {
        let (wi, wj) = (IC_WEIGHTS[i], IC_WEIGHTS[j]);
        ya[i].pow(wj) * xa[j].pow(wi) == ya[j].pow(wi) * xa[i].pow(wj)
    })
}

/// Canonical representative over `Q`: integral entries, no further weighted
/// reduction by a rational, and the first nonzero odd-weight entry positive.
pub fn normalize_ic(ic: &IgusaClebsch<Rational>) -> IgusaClebsch<Rational> {
    let entries = ic.to_array();
    if entries.iter().all(|e| Ring::is_zero(e)) {
        return ic.clone();
    }
    let mut lambda = Rational::from_integer(1.into());
    // clear denominators prime by prime with the smallest exponent
    let den = entries.iter().fold(Integer::from(1), |acc, e| acc.lcm(e.denom()));
    if den != Integer::from(1) {
        if let Ok(f) = factor(&den) {
            for (p, _) in f.factors {
                let mut e = 0u32;
                for (k, x) in entries.iter().enumerate() {
                    if Ring::is_zero(x) {
                        continue;
                    }
                    let v = crate::arith::valuation(x.denom(), &p) as i64
                        - crate::arith::valuation(x.numer(), &p) as i64;
                    let w = IC_WEIGHTS[k] as i64;
                    let need = ((v.max(0) + w - 1) / w) as u32;
                    e = e.max(need);
                }
                lambda *= Rational::from_integer(num_traits::pow(p, e as usize));
            }
        }
    }
    let scaled = ic.weighted_scale(&lambda);
    let ints: Vec<Integer> = scaled.to_array().iter().map(|x| x.to_integer()).collect();
    let g = ints.iter().fold(Integer::from(0), |acc, x| acc.gcd(x));
    let mut mu = Rational::from_integer(1.into());
    if g > Integer::from(1) {
        if let Ok(f) = factor(&g) {
            for (p, _) in f.factors {
                let e = ints
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                    .map(|(k, x)| crate::arith::valuation(x, &p) / IC_WEIGHTS[k])
                    .min()
                    .unwrap_or(0);
                mu *= Rational::from_integer(num_traits::pow(p, e as usize));
            }
        }
    }
    let mut out = scaled.weighted_scale(&mu.recip());
    // only odd-weight entries change sign under lambda = -1
    let arr = out.to_array();
    let odd = (0..4).find(|&k| IC_WEIGHTS[k] % 2 == 1 && !Ring::is_zero(&arr[k]));
    if odd.is_some_and(|k| arr[k].is_negative()) {
        out = out.weighted_scale(&q(-1));
    }
    out
}

/// `(24g + 6 : 9g^2 : 81g^3 + 18g^2 + 36h : 4h^2)`.
pub fn ic_from_gh<R: Ring>(g: &R, h: &R) -> IgusaClebsch<R> {
    let g2 = g.mul(g);
    IgusaClebsch {
        i2: g.scale(&q(24)).add(&R::from_int(6)),
        i4: g2.scale(&q(9)),
        i6: g2.mul(g).scale(&q(81)).add(&g2.scale(&q(18))).add(&h.scale(&q(36))),
        i10: h.mul(h).scale(&q(4)),
    }
}

const MN_I6: &str = "-5*(-75*m^6 + 1125*m^4*n^2 - 5625*m^2*n^4 + 9375*n^6 - 72*m^5 + 720*m^3*n^2 - 1800*m*n^4 + 1165*m^4 - 11650*m^2*n^2 + 29125*n^4 + 360*m^3 - 1800*m*n^2 - 5985*m^2 + 29925*n^2 + 6399)";
const MN_I10_ROOT: &str = "m^5 - 10*m^3*n^2 + 25*m*n^4 + 5*m^4 - 50*m^2*n^2 + 125*n^4 - 5*m^3 + 25*m*n^2 - 45*m^2 + 225*n^2 + 108";

/// The four invariant polynomials of the `(m, n)` chart.
pub fn ic_mn_polys() -> IgusaClebsch<MultiPoly> {
    let vars = ["m", "n"];
    let p = |s: &str| MultiPoly::parse_with_vars(s, &vars).expect("valid literal");
    let root = p(MN_I10_ROOT);
    IgusaClebsch {
        i2: p("-20*(-2*m^2 + 10*n^2 + 3)"),
        i4: p("25*(-m^2 + 5*n^2 + 9)^2"),
        i6: p(MN_I6),
        i10: root.pow(2).scale(&q(8)),
    }
}

/// Evaluates the `(m, n)` chart invariants in any ring.
pub fn ic_from_mn<R: Ring>(m: &R, n: &R) -> IgusaClebsch<R> {
    ic_mn_polys().map(|p| {
        p.eval_in(|v| Some(if v == "m" { m.clone() } else { n.clone() }))
            .expect("m and n bound")
    })
}

/// Wilson's chart: `(-2s2 + 2z6^2 : (s2 + 2z6^2)^2/16 : ... : sigma5^2/1024)`.
pub fn ic_from_wilson<R: Ring>(z6: &R, s2: &R, sigma5: &R) -> Result<IgusaClebsch<R>, InvariantError> {
    if sigma5.is_zero() {
        return Err(InvariantError::ZeroSigma5);
    }
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let z2 = z6.mul(z6);
    let i2 = s2.scale(&q(-2)).add(&z2.scale(&q(2)));
    let t = s2.add(&z2.scale(&q(2)));
    let i4 = t.mul(&t).scale(&r(1, 16));
    let i6 = z6
        .mul(sigma5)
        .scale(&q(9))
        .sub(&i4.scale(&q(4)).mul(&s2.scale(&q(3)).sub(&z2.scale(&q(2)))))
        .scale(&r(1, 16));
    let i10 = sigma5.mul(sigma5).scale(&r(1, 1024));
    Ok(IgusaClebsch { i2, i4, i6, i10 })
}

/// Symbolic `ic_from_gh` in the variables `g`, `h`.
pub fn ic_gh_polys() -> IgusaClebsch<MultiPoly> {
    ic_from_gh(&poly("g"), &poly("h"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rint};

    fn sextic(cs: &[i64]) -> SexticModel {
        SexticModel::from_slice(&cs.iter().map(|c| rint(*c)).collect::<Vec<_>>()).unwrap()
    }

    fn ic(a: Rational, b: Rational, c: Rational, d: Rational) -> IgusaClebsch {
        IgusaClebsch::new(a, b, c, d)
    }

    #[test]
    fn anchors() {
        let f = sextic(&[-1, 0, 0, 0, 0, 1]);
        let i = igusa_clebsch_from_sextic(&f).unwrap();
        assert_eq!(i, ic(rint(0), rint(0), rint(0), rint(3125)));
        assert_eq!(normalize_ic(&i), ic(rint(0), rint(0), rint(0), rint(1)));
        // (2x^3 - 2x^2 - x - 1)(x^3 - x^2 + 2x + 2)
        let f = sextic(&[-2, -4, -5, 0, 5, -4, 2]);
        let i = igusa_clebsch_from_sextic(&f).unwrap();
        assert_eq!(i.i10, f.discriminant());
        let target = ic(rint(8), rint(1), rint(3), rat(8, 3125));
        assert!(ic_weighted_equal(&i, &target, FieldTag::Rational));
    }

    #[test]
    fn clebsch_conversion() {
        let c = ClebschInv::new(rint(0), rint(0), rint(0), rint(1));
        let i = ic_from_clebsch(&c);
        assert_eq!(i, ic(rint(0), rint(0), rint(0), rint(-162 * 28125)));
        assert_eq!(clebsch_from_ic(&i), c);
        let back = clebsch_from_ic(&ic(rint(0), rint(0), rint(0), rint(1)));
        assert_eq!(back.d, rat(-1, 4556250));
    }

    #[test]
    fn weighted_equality() {
        let one = ic(rint(1), rint(1), rint(1), rint(1));
        assert!(ic_weighted_equal(&one, &ic(rint(2), rint(4), rint(8), rint(32)), FieldTag::Rational));
        let a = ic(rint(0), rint(0), rint(0), rint(1));
        let b = ic(rint(0), rint(0), rint(0), rint(7));
        assert!(!ic_weighted_equal(&a, &b, FieldTag::Rational));
        assert!(!ic_weighted_equal(&a, &b, FieldTag::RationalSqrt5));
        assert!(ic_weighted_equal(&a, &b, FieldTag::Complex));
        let c = ic(rint(1), rint(0), rint(0), rint(1));
        assert!(!ic_weighted_equal(&c, &ic(rint(1), rint(0), rint(1), rint(1)), FieldTag::Complex));
        // lambda = sqrt5 on an even-weight-only pattern
        let d = ic(rint(0), rint(1), rint(0), rint(0));
        assert!(ic_weighted_equal(&d, &ic(rint(0), rint(5), rint(0), rint(0)), FieldTag::RationalSqrt5));
        assert!(!ic_weighted_equal(&d, &ic(rint(0), rint(5), rint(0), rint(0)), FieldTag::Rational));
        // sign: (0 : 1 : 1 : 0) vs (0 : 1 : -1 : 0) needs lambda = -1
        let e = ic(rint(0), rint(1), rint(1), rint(0));
        assert!(ic_weighted_equal(&e, &ic(rint(0), rint(1), rint(-1), rint(0)), FieldTag::Rational));
        assert!(!ic_weighted_equal(&e, &ic(rint(0), rint(1), rint(2), rint(0)), FieldTag::Complex));
    }

    #[test]
    fn chart_formulas() {
        assert_eq!(ic_from_gh(&rint(0), &rint(1)), ic(rint(6), rint(0), rint(36), rint(4)));
        assert_eq!(
            ic_from_gh(&rint(0), &rat(54, 3125)),
            ic(rint(6), rint(0), rat(1944, 3125), rat(11664, 9765625))
        );
        assert_eq!(ic_from_mn(&rint(1), &rint(0)).i2, rint(-20));
        assert_eq!(ic_from_mn(&rint(3), &rint(0)).i4, rint(0));
        let w = ic_from_wilson(&rint(0), &rat(-5, 2), &rat(1, 2)).unwrap();
        assert!(ic_weighted_equal(&w, &ic(rint(8), rint(1), rint(3), rat(8, 3125)), FieldTag::Rational));
        assert_eq!(ic_from_wilson(&rint(1), &rint(1), &rint(0)), Err(InvariantError::ZeroSigma5));
    }

    #[test]
    fn normalization() {
        let i = ic(rint(2000), rint(62500), rint(46875000), rint(2500000000));
        assert_eq!(normalize_ic(&i), ic(rint(40), rint(25), rint(375), rint(8)));
        let j = ic(rint(-8), rint(1), rint(-3), rat(-8, 3125));
        assert_eq!(normalize_ic(&j), ic(rint(40), rint(25), rint(375), rint(8)));
    }

    #[test]
    fn display() {
        assert_eq!(sextic(&[64, -32, 0, 40, 0, -2, 1]).to_string(), "x^6 - 2*x^5 + 40*x^3 - 32*x + 64");
        assert_eq!(ic(rint(0), rint(0), rint(0), rint(1)).to_string(), "(0 : 0 : 0 : 1)");
    }
}
