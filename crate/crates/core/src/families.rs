//! The Mestre and Brumer families and their images in the `(g, h)` chart.

use alloc::vec::Vec;

use crate::arith::Rational;
use crate::invariants::{
    ic_gh_polys, ic_weighted_equal, ic_weighted_equal_symbolic, igusa_clebsch_from_sextic, igusa_clebsch_symbolic,
    FieldTag, IgusaClebsch, SexticModel,
};
use crate::poly::MultiPoly;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("the sextic has repeated roots")]
    RepeatedRoots,
    #[error("excluded parameters: the denominator of (g, h) vanishes")]
    ExcludedDenominator,
    #[error("h = 0")]
    ZeroH,
}

fn p(s: &str) -> MultiPoly {
    MultiPoly::parse(s).expect("valid literal")
}

fn eval(poly: &MultiPoly, vals: &[(&str, Rational)]) -> Rational {
    poly.eval(vals).expect("all parameters bound")
}

/// `(g, h) = (g_num/g_den, h_num/h_den)` with polynomial parts.
#[derive(Clone, Debug, PartialEq)]
pub struct GhFraction {
    pub g_num: MultiPoly,
    pub g_den: MultiPoly,
    pub h_num: MultiPoly,
    pub h_den: MultiPoly,
}

impl GhFraction {
    pub fn eval(&self, vals: &[(&str, Rational)]) -> Result<(Rational, Rational), FamilyError> {
        let (gd, hd) = (eval(&self.g_den, vals), eval(&self.h_den, vals));
        if gd.is_zero() || hd.is_zero() {
            return Err(FamilyError::ExcludedDenominator);
        }
        let h = eval(&self.h_num, vals) / hd;
        if h.is_zero() {
            return Err(FamilyError::ZeroH);
        }
        Ok((eval(&self.g_num, vals) / gd, h))
    }

    /// `ic_from_gh(g, h)` weighted-scaled by `g_den` so that every entry is a polynomial.
    pub fn igusa_clebsch(&self) -> IgusaClebsch<MultiPoly> {
        let base = ic_gh_polys().to_array();
        let weights = [1u32, 2, 3, 5];
        let out: Vec<MultiPoly> = base
            .iter()
            .zip(weights)
            .map(|(poly, w)| {
                let jmax = poly.degree_in("h");
                let mut acc = MultiPoly::zero();
                for (e, c) in poly.terms() {
                    let (i, j) = exps(poly, e);
                    let t = self
                        .g_num
                        .pow(i)
                        .mul(&self.g_den.pow(w - i))
                        .mul(&self.h_num.pow(j))
                        .mul(&self.h_den.pow(jmax - j))
                        .scale(c);
                    acc = acc.add(&t);
                }
                acc.div_exact(&self.h_den.pow(jmax)).expect("weighted scaling clears denominators")
            })
            .collect();
        IgusaClebsch::new(out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone())
    }
}

fn exps(poly: &MultiPoly, e: &[u32]) -> (u32, u32) {
    let mut i = 0;
    let mut j = 0;
    for (v, x) in poly.vars().iter().zip(e) {
        match v.as_str() {
            "g" => i = *x,
            "h" => j = *x,
            _ => {}
        }
    }
    (i, j)
}

fn sextic_from_poly(f: &MultiPoly, vals: &[(&str, Rational)]) -> Result<SexticModel, FamilyError> {
    let coeffs: Vec<Rational> =
        f.coefficients_in("x").iter().map(|c| eval(c, vals)).collect();
    let model = SexticModel::from_slice(&coeffs).map_err(|_| FamilyError::RepeatedRoots)?;
    if !model.is_squarefree() {
        return Err(FamilyError::RepeatedRoots);
    }
    Ok(model)
}

/// `x f(a, b, x)` with `f = x^5 + (a-3)x^4 + (-a+b+3)x^3 + (a^2-a-2b-1)x^2 + bx + a`.
pub fn mestre_family_poly() -> MultiPoly {
    p("x*(x^5 + (a - 3)*x^4 + (-a + b + 3)*x^3 + (a^2 - a - 2*b - 1)*x^2 + b*x + a)")
}

pub fn mestre_family_curve(a: &Rational, b: &Rational) -> Result<SexticModel, FamilyError> {
    sextic_from_poly(&mestre_family_poly(), &[("a", a.clone()), ("b", b.clone())])
}

pub fn mestre_family_fraction() -> GhFraction {
    let d = p("a^2 - 5*a - 2*b + 1");
    GhFraction {
        g_num: p("2*(3*a^3 - 8*a^2 - 5*a*b - b^2 - 3*a)"),
        g_den: d.pow(2).scale(&Rational::from_integer(3.into())),
        h_num: p("-a^2*(4*a^5 - 4*a^4 - 24*a^3*b - a^2*b^2 - 40*a^3 + 34*a^2*b + 30*a*b^2 + 4*b^3 + 91*a^2 + 14*a*b - b^2 - 4*a)"),
        h_den: d.pow(5).scale(&Rational::from_integer(2.into())),
    }
}

pub fn mestre_family_gh(a: &Rational, b: &Rational) -> Result<(Rational, Rational), FamilyError> {
    mestre_family_fraction().eval(&[("a", a.clone()), ("b", b.clone())])
}

/// `(2y + P)^2 = P^2 + 4R` for `y^2 + P y = R`.
pub fn brumer_family_poly() -> MultiPoly {
    let pp = p("x^3 + x + 1 + c*(x^2 + x)");
    let r = p("b + (1 + 3*b)*x + (1 - b*d + 3*b)*x^2 + (b - 2*b*d - d)*x^3 - b*d*x^4");
    pp.mul(&pp).add(&r.scale(&Rational::from_integer(4.into())))
}

pub fn brumer_family_curve(b: &Rational, c: &Rational, d: &Rational) -> Result<SexticModel, FamilyError> {
    sextic_from_poly(&brumer_family_poly(), &[("b", b.clone()), ("c", c.clone()), ("d", d.clone())])
}

const BRUMER_H: &str = "b*c^6*d - 12*b^2*c^4*d^2 + 48*b^3*c^2*d^3 - 64*b^4*d^4 - b^2*c^4*d - 9*b*c^5*d \
    + 8*b^3*c^2*d^2 + 72*b^2*c^3*d^2 - b*c^4*d^2 - 16*b^4*d^3 - 144*b^3*c*d^3 + 8*b^2*c^2*d^3 - 16*b^3*d^4 + b*c^5 - 40*b^2*c^3*d \
    + 12*b*c^4*d - c^5*d + 144*b^3*c*d^2 - 152*b^2*c^2*d^2 + 52*b*c^3*d^2 + 416*b^3*d^3 - 192*b^2*c*d^3 - b^2*c^3 - 9*b*c^4 \
    + 36*b^3*c*d + 334*b^2*c^2*d + 63*b*c^3*d + 6*c^4*d + 24*b^3*d^2 + 132*b^2*c*d^2 - 80*b*c^2*d^2 + c^3*d^2 + 528*b^2*d^3 \
    - 36*b*c*d^3 - 27*b^2*c^2 + 13*b*c^3 - c^4 + 108*b^3*d - 720*b^2*c*d + 74*b*c^2*d + 5*c^3*d - 456*b^2*d^2 - 96*b*c*d^2 \
    - 36*c^2*d^2 + 216*b*d^3 + 27*b^3 + 252*b^2*c + 56*b*c^2 + 6*c^3 - 66*b^2*d - 627*b*c*d - 43*c^2*d - 381*b*d^2 \
    - 63*c*d^2 + 27*d^3 - 567*b^2 + 27*b*c + 4*c^2 - 121*b*d - 147*c*d - 81*d^2 - 484*b - 39*c - 34*d - 103";

pub fn brumer_family_fraction() -> GhFraction {
    let e = p("c^2 - 4*b*d - 2*b - 3*c - 2*d - 5");
    GhFraction {
        g_num: p("-c^4 + 8*b*c^2*d - 16*b^2*d^2 + 6*c^3 - 24*b*c*d + 24*b*c + c^2 - 68*b*d - 24*c*d - 108*b - 30*c - 36*d - 61"),
        g_den: e.pow(2).scale(&Rational::from_integer(6.into())),
        h_num: p(BRUMER_H),
        h_den: e.pow(5),
    }
}

pub fn brumer_family_gh(b: &Rational, c: &Rational, d: &Rational) -> Result<(Rational, Rational), FamilyError> {
    brumer_family_fraction().eval(&[("b", b.clone()), ("c", c.clone()), ("d", d.clone())])
}

fn sextic_coeff_polys(f: &MultiPoly) -> [MultiPoly; 7] {
    let cs = f.coefficients_in("x");
    core::array::from_fn(|i| cs.get(i).cloned().unwrap_or_default())
}

/// The invariants of the family sextic and of its `(g, h)` image agree
/// as weighted-projective points over the parameter function field.
pub fn mestre_identity_holds() -> bool {
    let lhs = igusa_clebsch_symbolic(&sextic_coeff_polys(&mestre_family_poly()));
    ic_weighted_equal_symbolic(&lhs, &mestre_family_fraction().igusa_clebsch())
}

pub fn brumer_identity_holds() -> bool {
    let lhs = igusa_clebsch_symbolic(&sextic_coeff_polys(&brumer_family_poly()));
    ic_weighted_equal_symbolic(&lhs, &brumer_family_fraction().igusa_clebsch())
}

/// Numeric check at one parameter point; `None` when the point is excluded.
pub fn invariants_match(model: &SexticModel, g: &Rational, h: &Rational) -> Option<bool> {
    let ic = igusa_clebsch_from_sextic(model).ok()?;
    Some(ic_weighted_equal(&ic, &crate::invariants::ic_from_gh(g, h), FieldTag::Rational))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_square, rat, rint};
    use crate::moduli::ek_rhs;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rat(rng: &mut ChaCha8Rng, h: i64) -> Rational {
        rat(rng.gen_range(-h..=h), rng.gen_range(1..=h))
    }

    #[test]
    fn mestre_curves() {
        assert_eq!(mestre_family_curve(&rint(0), &rint(0)), Err(FamilyError::RepeatedRoots));
        let f = mestre_family_curve(&rint(1), &rint(1)).unwrap();
        assert_eq!(f.coeffs().to_vec(), [0, 1, 1, -3, 3, -2, 1].iter().map(|c| rint(*c)).collect::<Vec<_>>());
    }

    #[test]
    fn brumer_curve_expansion() {
        let f = brumer_family_curve(&rint(0), &rint(0), &rint(0)).unwrap();
        // (x^3 + x + 1)^2 + 4(x + x^2)
        let expected = p("(x^3 + x + 1)^2 + 4*x + 4*x^2");
        let cs: Vec<Rational> = expected.coefficients_in("x").iter().map(|c| c.constant_term()).collect();
        assert_eq!(f.coeffs().to_vec(), cs);
        assert_eq!(f.coeffs()[6], rint(1));
    }

    #[test]
    fn mestre_numeric_match() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut done = 0;
        while done < 20 {
            let (a, b) = (random_rat(&mut rng, 10), random_rat(&mut rng, 10));
            let (Ok(f), Ok((g, h))) = (mestre_family_curve(&a, &b), mestre_family_gh(&a, &b)) else { continue };
            assert_eq!(invariants_match(&f, &g, &h), Some(true), "a = {a}, b = {b}");
            assert!(is_square(&ek_rhs(&g, &h)));
            done += 1;
        }
    }

    #[test]
    fn brumer_numeric_match() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut done = 0;
        while done < 20 {
            let (b, c, d) = (random_rat(&mut rng, 10), random_rat(&mut rng, 10), random_rat(&mut rng, 10));
            let (Ok(f), Ok((g, h))) = (brumer_family_curve(&b, &c, &d), brumer_family_gh(&b, &c, &d)) else { continue };
            assert_eq!(invariants_match(&f, &g, &h), Some(true), "b = {b}, c = {c}, d = {d}");
            assert!(is_square(&ek_rhs(&g, &h)));
            done += 1;
        }
        assert_eq!(brumer_family_gh(&rint(0), &rint(0), &rat(-5, 2)).unwrap_err(), FamilyError::ExcludedDenominator);
    }

    #[test]
    fn symbolic_identities() {
        assert!(mestre_identity_holds());
        assert!(brumer_identity_holds());
    }
}
