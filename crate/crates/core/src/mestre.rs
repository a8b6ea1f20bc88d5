//! Mestre's conic and cubic, rational points on conics over `Q`, and the
//! resulting Weierstrass models.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    hilbert_symbol, legendre_solve, local_places, square_class_integer, ArithError, Integer, Place,
    Rational,
};
use crate::invariants::{
    ic_from_clebsch, ic_weighted_equal, igusa_clebsch_from_sextic, ClebschInv, FieldTag,
    InvariantScalar, SexticModel,
};
use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::ring::{Field, Ring};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MestreError {
    #[error("conic is singular")]
    SingularConic,
    #[error("point is not on the conic")]
    PointNotOnConic,
    #[error("conic has no rational point (Hilbert symbol -1 at {0})")]
    NoRationalPoint(Place),
    #[error("every tried parametrization gave a sextic with repeated roots")]
    DegenerateSextic,
    #[error("invariants (0 : 0 : 0 : *) have extra automorphisms")]
    ExtraAutomorphisms,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Gram matrix of the Mestre conic `L = sum L_ij x_i x_j`.
pub fn mestre_conic<R: Ring>(c: &ClebschInv<R>) -> Matrix<R> {
    let (a, b, cc, d) = (&c.a, &c.b, &c.c, &c.d);
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let l11 = cc.scale(&r(2, 1)).add(&a.mul(b).scale(&r(1, 3)));
    let bb_ac = b.mul(b).add(&a.mul(cc));
    let l12 = bb_ac.scale(&r(2, 3));
    let l23 = b.mul(&bb_ac).scale(&r(1, 3)).add(&cc.mul(&l11).scale(&r(1, 3)));
    let l33 = b.mul(d).scale(&r(1, 2)).add(&cc.mul(&bb_ac).scale(&r(2, 9)));
    Matrix::new(
        3,
        3,
        vec![
            l11,
            l12.clone(),
            d.clone(),
            l12,
            d.clone(),
            l23.clone(),
            d.clone(),
            l23,
            l33,
        ],
    )
}

/// A ternary cubic `sum_{i,j,k} M_ijk x_i x_j x_k` with symmetric coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryCubic<R> {
    /// Indexed by sorted triples in the order 111, 112, 113, 122, 123, 133,
    /// 222, 223, 233, 333.
    coeffs: [R; 10],
}

const CUBIC_INDEX: [[usize; 3]; 10] = [
    [0, 0, 0],
    [0, 0, 1],
    [0, 0, 2],
    [0, 1, 1],
    [0, 1, 2],
    [0, 2, 2],
    [1, 1, 1],
    [1, 1, 2],
    [1, 2, 2],
    [2, 2, 2],
];

impl<R: Ring> TernaryCubic<R> {
    pub fn new(coeffs: [R; 10]) -> Self {
        TernaryCubic { coeffs }
    }

    /// `M_ijk` for 0-based indices in any order.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &R {
        let mut t = [i, j, k];
        t.sort_unstable();
        let pos = CUBIC_INDEX.iter().position(|x| *x == t).expect("index below 3");
        &self.coeffs[pos]
    }

    pub fn coeffs(&self) -> &[R; 10] {
        &self.coeffs
    }

    /// Sum over all 27 ordered index triples.
    pub fn eval(&self, x: &[R; 3]) -> R {
        let mut acc = R::zero();
        for (pos, t) in CUBIC_INDEX.iter().enumerate() {
            let mult = match (t[0] == t[1], t[1] == t[2]) {
                (true, true) => 1,
                (false, false) => 6,
                _ => 3,
            };
            let term = x[t[0]].mul(&x[t[1]]).mul(&x[t[2]]).mul(&self.coeffs[pos]);
            acc = acc.add(&term.scale(&Rational::from_integer(mult.into())));
        }
        acc
    }
}

/// The Mestre cubic `M`.
pub fn mestre_cubic<R: Ring>(c: &ClebschInv<R>) -> TernaryCubic<R> {
    let (a, b, cc, d) = (&c.a, &c.b, &c.c, &c.d);
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    // sum of coefficient * A^i B^j C^k D^l
    let t = |terms: &[(i64, i64, u32, u32, u32, u32)], outer: (i64, i64)| -> R {
        let mut acc = R::zero();
        for &(n, dn, i, j, k, l) in terms {
            let m = a.pow(i).mul(&b.pow(j)).mul(&cc.pow(k)).mul(&d.pow(l));
            acc = acc.add(&m.scale(&r(n, dn)));
        }
        acc.scale(&r(outer.0, outer.1))
    };
    let m111 = t(&[(1, 1, 2, 0, 1, 0), (-6, 1, 0, 1, 1, 0), (9, 1, 0, 0, 0, 1)], (2, 9));
    let m112 = t(
        &[(2, 1, 0, 3, 0, 0), (4, 1, 1, 1, 1, 0), (12, 1, 0, 0, 2, 0), (3, 1, 1, 0, 0, 1)],
        (1, 9),
    );
    let m113 = t(
        &[
            (1, 1, 1, 3, 0, 0),
            (4, 3, 2, 1, 1, 0),
            (4, 1, 0, 2, 1, 0),
            (6, 1, 1, 0, 2, 0),
            (3, 1, 0, 1, 0, 1),
        ],
        (1, 9),
    );
    let m122 = m113.clone();
    let m123 = t(
        &[
            (2, 1, 0, 4, 0, 0),
            (4, 1, 1, 2, 1, 0),
            (4, 3, 2, 0, 2, 0),
            (4, 1, 0, 1, 2, 0),
            (3, 1, 1, 1, 0, 1),
            (12, 1, 0, 0, 1, 1),
        ],
        (1, 18),
    );
    let m133 = t(
        &[
            (1, 1, 1, 4, 0, 0),
            (4, 3, 2, 2, 1, 0),
            (16, 3, 0, 3, 1, 0),
            (26, 3, 1, 1, 2, 0),
            (8, 1, 0, 0, 3, 0),
            (3, 1, 0, 2, 0, 1),
            (2, 1, 1, 0, 1, 1),
        ],
        (1, 18),
    );
    let m222 = t(
        &[
            (3, 1, 0, 4, 0, 0),
            (6, 1, 1, 2, 1, 0),
            (8, 3, 2, 0, 2, 0),
            (2, 1, 0, 1, 2, 0),
            (-3, 1, 0, 0, 1, 1),
        ],
        (1, 9),
    );
    let m223 = t(
        &[
            (-2, 3, 0, 3, 1, 0),
            (-4, 3, 1, 1, 2, 0),
            (-4, 1, 0, 0, 3, 0),
            (9, 1, 0, 2, 0, 1),
            (8, 1, 1, 0, 1, 1),
        ],
        (1, 18),
    );
    let m233 = t(
        &[
            (1, 1, 0, 5, 0, 0),
            (2, 1, 1, 3, 1, 0),
            (8, 9, 2, 1, 2, 0),
            (2, 3, 0, 2, 2, 0),
            (-1, 1, 0, 1, 1, 1),
            (9, 1, 0, 0, 0, 2),
        ],
        (1, 18),
    );
    let m333 = t(
        &[
            (-2, 1, 0, 4, 1, 0),
            (-4, 1, 1, 2, 2, 0),
            (-16, 9, 2, 0, 3, 0),
            (-4, 3, 0, 1, 3, 0),
            (9, 1, 0, 3, 0, 1),
            (12, 1, 1, 1, 1, 1),
            (20, 1, 0, 0, 2, 1),
        ],
        (1, 36),
    );
    TernaryCubic::new([m111, m112, m113, m122, m123, m133, m222, m223, m233, m333])
}

/// Determinant of the Gram matrix.
pub fn conic_discriminant<R: Ring>(q: &Matrix<R>) -> R {
    q.det()
}

/// `T` and the diagonal `d` with `T^t Q T = diag(d)`, `det T != 0`.
pub fn diagonalize<F: Field>(q: &Matrix<F>) -> (Matrix<F>, Vec<F>) {
    let n = q.rows();
    let mut a = q.clone();
    let mut t = Matrix::<F>::identity(n);
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a.get(p, p).is_zero()) {
                let mut s = Matrix::<F>::identity(n);
                s.set(k, k, F::zero());
                s.set(p, p, F::zero());
                s.set(k, p, F::one());
                s.set(p, k, F::one());
                a = a.congruence(&s);
                t = t.mul(&s);
            } else if let Some(p) = (k + 1..n).find(|&p| !a.get(k, p).is_zero()) {
                // e_k + e_p has value 2 a_kp
                let mut s = Matrix::<F>::identity(n);
                s.set(p, k, F::one());
                a = a.congruence(&s);
                t = t.mul(&s);
            } else {
                continue;
            }
        }
        let piv = a.get(k, k).clone();
        let inv = piv.inv().expect("nonzero pivot");
        let mut s = Matrix::<F>::identity(n);
        for j in k + 1..n {
            s.set(k, j, a.get(k, j).mul(&inv).neg());
        }
        a = a.congruence(&s);
        t = t.mul(&s);
    }
    let d = (0..n).map(|i| a.get(i, i).clone()).collect();
    (t, d)
}

/// Outcome of the local solvability test for a rational conic.
#[derive(Clone, Debug, PartialEq)]
pub enum ConicSolvability {
    Solvable,
    /// A place where the Hilbert symbol of the diagonalized form is `-1`.
    Unsolvable(Place),
}

/// The pair `(a, b)` with the conic equivalent to `z^2 = a x^2 + b y^2`.
fn hilbert_pair(d: &[Rational]) -> (Rational, Rational) {
    // d1 X^2 + d2 Y^2 + d3 Z^2 = 0  <=>  (d3 Z)^2 = -d1 d3 X^2 - d2 d3 Y^2
    (-(&d[0] * &d[2]), -(&d[1] * &d[2]))
}

/// Hasse-Minkowski test for a nonsingular ternary form over `Q`.
pub fn conic_solvability(q: &Matrix<Rational>) -> Result<ConicSolvability, MestreError> {
    let (_, d) = diagonalize(q);
    if d.iter().any(Zero::is_zero) {
        return Err(MestreError::SingularConic);
    }
    let (a, b) = hilbert_pair(&d);
    let mut places = local_places([&a, &b]);
    // real place first
    places.rotate_right(1);
    for place in places {
        if hilbert_symbol(&a, &b, &place)? == -1 {
            return Ok(ConicSolvability::Unsolvable(place));
        }
    }
    Ok(ConicSolvability::Solvable)
}

pub fn conic_is_solvable(q: &Matrix<Rational>) -> Result<bool, MestreError> {
    Ok(conic_solvability(q)? == ConicSolvability::Solvable)
}

/// Primitive integral representative with positive first nonzero entry.
pub fn normalize_point(p: &[Rational; 3]) -> [Rational; 3] {
    let den = p.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Integer> = p.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return p.clone();
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    core::array::from_fn(|i| Rational::new(ints[i].clone(), g.clone()))
}

/// An exact rational point, or the certifying place when none exists.
pub fn conic_rational_point(q: &Matrix<Rational>) -> Result<[Rational; 3], MestreError> {
    let (t, d) = diagonalize(q);
    if d.iter().any(Zero::is_zero) {
        return Err(MestreError::SingularConic);
    }
    if let ConicSolvability::Unsolvable(place) = conic_solvability(q)? {
        return Err(MestreError::NoRationalPoint(place));
    }
    let (a, b) = hilbert_pair(&d);
    // a = a0 * ra^2 with a0 a squarefree integer, likewise b
    let a0 = square_class_integer(&a);
    let b0 = square_class_integer(&b);
    let ra = crate::arith::sqrt_rational(&(&a / Rational::from_integer(a0.clone()))).expect("square class");
    let rb = crate::arith::sqrt_rational(&(&b / Rational::from_integer(b0.clone()))).expect("square class");
    let (x, y, z) = legendre_solve(&a0, &b0).ok_or(MestreError::NoRationalPoint(Place::Infinity))?;
    // z^2 = a0 x^2 + b0 y^2 = a (x/ra)^2 + b (y/rb)^2, and W = d3 Z
    let big_x = Rational::from_integer(x) / &ra;
    let big_y = Rational::from_integer(y) / &rb;
    let big_z = Rational::from_integer(z) / &d[2];
    let diag_pt = [big_x, big_y, big_z];
    let pt: Vec<Rational> = (0..3)
        .map(|i| (0..3).fold(<Rational as Zero>::zero(), |acc, j| acc + t.get(i, j) * &diag_pt[j]))
        .collect();
    let pt = normalize_point(&[pt[0].clone(), pt[1].clone(), pt[2].clone()]);
    debug_assert!(Zero::is_zero(&q.quad(&pt)));
    Ok(pt)
}

/// Quadratic parametrization `X(x) = Q(V) P - 2 B(P, V) V` with
/// `V = r1 + x r2`, the pencil of lines through `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicParametrization<F: Field> {
    pub coords: [UniPoly<F>; 3],
}

impl<F: Field> fmt::Display for ConicParametrization<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

pub fn parametrize_conic_with<F: Field>(
    q: &Matrix<F>,
    p: &[F; 3],
    r1: &[F; 3],
    r2: &[F; 3],
) -> Result<ConicParametrization<F>, MestreError> {
    if !q.quad(p).is_zero() {
        return Err(MestreError::PointNotOnConic);
    }
    if q.det().is_zero() {
        return Err(MestreError::SingularConic);
    }
    let lin = |c0: &F, c1: &F| UniPoly::new(vec![c0.clone(), c1.clone()]);
    let v: Vec<UniPoly<F>> = (0..3).map(|i| lin(&r1[i], &r2[i])).collect();
    let mut qv = UniPoly::zero();
    let mut bpv = UniPoly::zero();
    for i in 0..3 {
        for j in 0..3 {
            let e = q.get(i, j);
            if e.is_zero() {
                continue;
            }
            let c = UniPoly::new(vec![e.clone()]);
            qv = add_uni(&qv, &c.mul(&v[i]).mul(&v[j]));
            bpv = add_uni(&bpv, &c.mul(&UniPoly::new(vec![p[i].clone()])).mul(&v[j]));
        }
    }
    let two_b = bpv.mul(&UniPoly::new(vec![F::from_int(-2)]));
    let coords: [UniPoly<F>; 3] =
        core::array::from_fn(|i| add_uni(&qv.mul(&UniPoly::new(vec![p[i].clone()])), &two_b.mul(&v[i])));
    if coords.iter().all(|c| c.is_zero()) {
        return Err(MestreError::SingularConic);
    }
    Ok(ConicParametrization { coords })
}

fn add_uni<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
    let n = a.coeffs().len().max(b.coeffs().len());
    UniPoly::new((0..n).map(|i| a.coeff(i).add(&b.coeff(i))).collect())
}

/// Two vectors completing `p` to a basis; `shift` varies the choice.
fn complement<F: Field>(p: &[F; 3], shift: usize) -> Option<([F; 3], [F; 3])> {
    let unit = |k: usize| -> [F; 3] { core::array::from_fn(|i| if i == k { F::one() } else { F::zero() }) };
    let pivot = (0..3).find(|&i| !p[i].is_zero())?;
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let mut r1 = unit(others[0]);
    let r2 = unit(others[1]);
    if shift > 0 {
        // tilt the base point of the line by multiples of p's pivot direction
        r1[pivot] = F::from_int(shift as i64);
        r1[others[1]] = F::from_int((shift / 2) as i64);
    }
    Some((r1, r2))
}

/// Default parametrization through `p`.
pub fn parametrize_conic<F: Field>(q: &Matrix<F>, p: &[F; 3]) -> Result<ConicParametrization<F>, MestreError> {
    let (r1, r2) = complement(p, 0).ok_or(MestreError::PointNotOnConic)?;
    parametrize_conic_with(q, p, &r1, &r2)
}

/// `M(x1(x), x2(x), x3(x))` as a univariate polynomial of degree at most 6.
pub fn compose_cubic<F: Field>(m: &TernaryCubic<F>, param: &ConicParametrization<F>) -> UniPoly<F> {
    let x = &param.coords;
    let mut acc = UniPoly::zero();
    for i in 0..3 {
        for j in 0..3 {
            let xij = x[i].mul(&x[j]);
            for k in 0..3 {
                let c = m.get(i, j, k);
                if c.is_zero() {
                    continue;
                }
                acc = add_uni(&acc, &xij.mul(&x[k]).mul(&UniPoly::new(vec![c.clone()])));
            }
        }
    }
    acc
}

/// Genus-2 model `y^2 = M(x1(x), x2(x), x3(x))` from a point on the conic.
/// Retries up to ten lines through `p` when the sextic degenerates.
pub fn curve_from_mestre<F: InvariantScalar>(
    c: &ClebschInv<F>,
    p: &[F; 3],
) -> Result<SexticModel<F>, MestreError> {
    let q = mestre_conic(c);
    let m = mestre_cubic(c);
    if q.det().is_zero() {
        return Err(MestreError::SingularConic);
    }
    if !q.quad(p).is_zero() {
        return Err(MestreError::PointNotOnConic);
    }
    let target = ic_from_clebsch(c);
    if target.i2.is_zero() && target.i4.is_zero() && target.i6.is_zero() {
        return Err(MestreError::ExtraAutomorphisms);
    }
    for shift in 0..10 {
        let Some((r1, r2)) = complement(p, shift) else { break };
        let Ok(param) = parametrize_conic_with(&q, p, &r1, &r2) else { continue };
        let f = compose_cubic(&m, &param);
        if f.degree().is_none_or(|d| d < 5) {
            continue;
        }
        let Ok(model) = SexticModel::from_slice(f.coeffs()) else { continue };
        match igusa_clebsch_from_sextic(&model) {
            Ok(ic) if ic_weighted_equal(&ic, &target, FieldTag::Complex) => return Ok(model),
            _ => continue,
        }
    }
    Err(MestreError::DegenerateSextic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rint;
    use crate::invariants::{clebsch_from_ic, ic_from_gh, IgusaClebsch};
    use crate::poly::{poly, MultiPoly};

    fn diag(a: i64, b: i64, c: i64) -> Matrix<Rational> {
        Matrix::diagonal(&[rint(a), rint(b), rint(c)])
    }

    #[test]
    fn clebsch_unit_tables() {
        let c = ClebschInv::new(rint(0), rint(0), rint(0), rint(1));
        let l = mestre_conic(&c);
        assert_eq!((l.get(0, 0), l.get(1, 1), l.get(0, 2), l.get(0, 1)), (&rint(0), &rint(1), &rint(1), &rint(0)));
        let m = mestre_cubic(&c);
        assert_eq!(m.get(0, 0, 0), &rint(2));
        assert_eq!(m.get(0, 0, 1), &rint(0));
        assert_eq!(m.get(1, 1, 1), &rint(0));
        assert_eq!(m.get(0, 1, 2), m.get(2, 0, 1));
    }

    #[test]
    fn gh_conic_coefficient() {
        let c = clebsch_from_ic(&ic_from_gh(&poly("g"), &poly("h")));
        let scale = MultiPoly::int(16 * 2187) * MultiPoly::constant(Ring::pow(&rint(5), 14));
        let l11 = mestre_conic(&c).get(0, 0) * &scale;
        assert_eq!(l11, poly("189843750*(-96*g^3 - 337*g^2 - 108*g + 400*h - 9)"));
    }

    #[test]
    fn solvability() {
        assert!(conic_is_solvable(&diag(1, -5, 4)).unwrap());
        assert_eq!(conic_solvability(&diag(1, 1, 1)).unwrap(), ConicSolvability::Unsolvable(Place::Infinity));
        assert!(!conic_is_solvable(&diag(1, -5, 2)).unwrap());
        assert_eq!(conic_is_solvable(&diag(1, 0, 2)), Err(MestreError::SingularConic));
    }

    #[test]
    fn points() {
        for q in [diag(1, -5, 4), diag(3, 5, -8), diag(1, 1, -2), diag(1, -5, -4), diag(2, 7, -15)] {
            let p = conic_rational_point(&q).unwrap();
            assert!(Zero::is_zero(&q.quad(&p)), "{q} at {p:?}");
        }
        let q = Matrix::new(3, 3, [0, 1, 2, 1, 0, 3, 2, 3, 0].iter().map(|x| rint(*x)).collect());
        let p = conic_rational_point(&q).unwrap();
        assert!(Zero::is_zero(&q.quad(&p)));
        assert!(matches!(conic_rational_point(&diag(1, 1, 1)), Err(MestreError::NoRationalPoint(Place::Infinity))));
    }

    #[test]
    fn reduced_conic_parametrization() {
        // x1^2 - 5 x2^2 + c x3^2 through (u0 : v0 : 1)
        let (u0, v0) = (rint(3), rint(1));
        let c = -(&u0 * &u0 - rint(5) * &v0 * &v0);
        let q = Matrix::diagonal(&[rint(1), rint(-5), c.clone()]);
        let p = [u0.clone(), v0.clone(), rint(1)];
        let r1 = [-rint(5) * &v0, -u0.clone(), rint(0)];
        let r2 = [rint(5) * &u0, rint(5) * &v0, rint(0)];
        let par = parametrize_conic_with(&q, &p, &r1, &r2).unwrap();
        let k = rint(5) * &c;
        let up = |cs: [Rational; 3]| UniPoly::new(cs.iter().map(|x| x * &k).collect());
        assert_eq!(par.coords[0], up([u0.clone(), -rint(10) * &v0, rint(5) * &u0]));
        assert_eq!(par.coords[1], up([v0.clone(), -rint(2) * &u0, rint(5) * &v0]));
        assert_eq!(par.coords[2], up([rint(1), rint(0), rint(-5)]));
    }

    #[test]
    fn model_from_gh_point() {
        let ic = ic_from_gh(&rint(1), &rint(1));
        let c = clebsch_from_ic(&ic);
        let q = mestre_conic(&c);
        if let Ok(p) = conic_rational_point(&q) {
            let f = curve_from_mestre(&c, &p).unwrap();
            let got = igusa_clebsch_from_sextic(&f).unwrap();
            assert!(ic_weighted_equal(&got, &ic, FieldTag::Complex));
        }
        let ic0 = IgusaClebsch::new(rint(0), rint(0), rint(0), rint(1));
        let c0 = clebsch_from_ic(&ic0);
        assert!(curve_from_mestre(&c0, &[rint(1), rint(0), rint(0)]).is_err());
    }
}
