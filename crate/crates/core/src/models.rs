//! Weierstrass models for points of the `(m, n)` chart.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{solve_norm_equation, ArithError, Place, Rational, Sqrt5};
use crate::invariants::{
    ic_from_mn, ic_weighted_equal, igusa_clebsch_from_sextic, FieldTag, IgusaClebsch, InvariantError, SexticModel,
};
use crate::moduli::{classify, norm_obstruction, CaseTag, ClassifyInput, MNPoint, ModuliError};
use crate::poly::UniPoly;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("N(eta) = {actual}, expected -(m^2 - 5n^2 - 5) = {expected}")]
    NormMismatch { expected: Rational, actual: Rational },
    #[error("eta must be nonzero")]
    ZeroEta,
    #[error("degenerate sextic: extra automorphisms or excluded locus")]
    DegenerateSextic,
    #[error("-(m^2 - 5n^2 - 5) = {value} is not a norm from Q(sqrt5): Hilbert symbol (5, {value}) = -1 at {place}")]
    NormFails { value: Rational, place: Place },
    #[error("point is in case {0}, not a generic case-(1) point")]
    ClassificationMismatch(&'static str),
    #[error("5a^2 - b^2 + 5c^2 = 1")]
    DenominatorZero,
    #[error("invariants of the model do not match the point")]
    RoundTrip,
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn s5(x: &Rational) -> Sqrt5 {
    Sqrt5::from_rational(x.clone())
}

/// `-(m^2 - 5n^2 - 5)`, the norm that `eta` must have.
pub fn eta_norm_target(m: &Rational, n: &Rational) -> Rational {
    -(m * m - q(5) * n * n - q(5))
}

fn linear(c0: Sqrt5, c1: Sqrt5) -> UniPoly<Sqrt5> {
    UniPoly::new(vec![c0, c1])
}

fn constant(c: Sqrt5) -> UniPoly<Sqrt5> {
    UniPoly::new(vec![c])
}

fn power(p: &UniPoly<Sqrt5>, e: u32) -> UniPoly<Sqrt5> {
    (0..e).fold(constant(<Sqrt5 as Ring>::one()), |acc, _| acc.mul(p))
}

fn add(a: &UniPoly<Sqrt5>, b: &UniPoly<Sqrt5>) -> UniPoly<Sqrt5> {
    let n = a.coeffs().len().max(b.coeffs().len());
    UniPoly::new((0..n).map(|i| a.coeff(i).add(&b.coeff(i))).collect())
}

/// The sextic `Tr(mu^2 eta^3 X^3 - 2N(mu) mu eta^2 X^2 - 5N(mu)(N(mu) - 5)) (1 - 5x^2)^3`
/// with `mu = m + n sqrt5` and `X = (1 - x sqrt5)/(1 + x sqrt5)`.
pub fn model_general(m: &Rational, n: &Rational, eta: &Sqrt5) -> Result<SexticModel, ModelError> {
    if eta.is_zero() {
        return Err(ModelError::ZeroEta);
    }
    let expected = eta_norm_target(m, n);
    if eta.norm() != expected {
        return Err(ModelError::NormMismatch { expected, actual: eta.norm() });
    }
    let mu = Sqrt5::new(m.clone(), n.clone());
    let nm = s5(&mu.norm());
    let minus = linear(<Sqrt5 as Ring>::one(), -Sqrt5::sqrt_d());
    let plus = linear(<Sqrt5 as Ring>::one(), Sqrt5::sqrt_d());
    let t1 = power(&minus, 6).mul(&constant(mu.pow(2).mul(&eta.pow(3))));
    let c2 = nm.mul(&mu).mul(&eta.pow(2)).scale(&q(-2));
    let t2 = power(&minus, 5).mul(&plus).mul(&constant(c2));
    let c3 = nm.mul(&nm.sub(&s5(&q(5)))).scale(&q(-5));
    let t3 = power(&minus, 3).mul(&power(&plus, 3)).mul(&constant(c3));
    let s = add(&add(&t1, &t2), &t3);
    let coeffs: Vec<Rational> = (0..7).map(|i| s.coeff(i).trace()).collect();
    let model = SexticModel::from_slice(&coeffs).map_err(|_| ModelError::DegenerateSextic)?;
    if !model.is_squarefree() {
        return Err(ModelError::DegenerateSextic);
    }
    Ok(model)
}

/// The coefficient list of the model over a field containing `sqrt5`;
/// the `x^4` and `x^2` coefficients vanish.
pub fn model_sqrt5_coeffs(m: &Sqrt5, n: &Sqrt5) -> [Sqrt5; 7] {
    let r5 = Sqrt5::sqrt_d();
    let a = m.sub(&n.mul(&r5));
    let b = m.add(&n.mul(&r5));
    let nn = m.mul(m).sub(&n.mul(n).scale(&q(5)));
    let e = nn.sub(&s5(&q(5)));
    let zero = <Sqrt5 as Ring>::zero();
    [
        e.pow(3).mul(&b.pow(2)).neg(),
        nn.mul(&e.pow(2)).mul(&b).scale(&q(-2)),
        zero.clone(),
        nn.mul(&e).scale(&q(-10)),
        zero,
        nn.mul(&a).scale(&q(-2)),
        a.pow(2),
    ]
}

pub fn model_sqrt5(m: &Sqrt5, n: &Sqrt5) -> Result<SexticModel<Sqrt5>, ModelError> {
    let c = model_sqrt5_coeffs(m, n);
    debug_assert!(c[4].is_zero() && c[2].is_zero());
    let model = SexticModel::new(c).map_err(|_| ModelError::DegenerateSextic)?;
    if !model.is_squarefree() {
        return Err(ModelError::DegenerateSextic);
    }
    Ok(model)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelRequest {
    pub point: MNPoint,
    pub field: FieldTag,
    /// `(u, v)` with `u^2 - 5v^2 = -(m^2 - 5n^2 - 5)`.
    pub witness: Option<(Rational, Rational)>,
}

impl ModelRequest {
    pub fn new(m: Rational, n: Rational, field: FieldTag) -> Self {
        ModelRequest { point: MNPoint::new(m, n), field, witness: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Rational { model: SexticModel, eta: Sqrt5 },
    Sqrt5(SexticModel<Sqrt5>),
}

impl Model {
    pub fn coeffs(&self) -> Vec<Sqrt5> {
        match self {
            Model::Rational { model, .. } => model.coeffs().iter().map(s5).collect(),
            Model::Sqrt5(model) => model.coeffs().to_vec(),
        }
    }

    pub fn field(&self) -> FieldTag {
        match self {
            Model::Rational { .. } => FieldTag::Rational,
            Model::Sqrt5(_) => FieldTag::RationalSqrt5,
        }
    }

    pub fn igusa_clebsch(&self) -> Result<IgusaClebsch<Sqrt5>, InvariantError> {
        let cs: [Sqrt5; 7] = core::array::from_fn(|i| self.coeffs()[i].clone());
        igusa_clebsch_from_sextic(&SexticModel::new(cs)?)
    }

    pub fn to_sqrt5(&self) -> SexticModel<Sqrt5> {
        let cs: [Sqrt5; 7] = core::array::from_fn(|i| self.coeffs()[i].clone());
        SexticModel::new(cs).expect("degree checked on construction")
    }
}

/// Whether the invariants of `model` are those of `(m, n)`, up to weighted
/// scaling over the model's field.
pub fn model_matches_point(model: &Model, m: &Sqrt5, n: &Sqrt5) -> bool {
    match model.igusa_clebsch() {
        Ok(ic) => ic_weighted_equal(&ic, &ic_from_mn(m, n), model.field()),
        Err(_) => false,
    }
}

/// Classifies the point, finds `eta` over `Q` when no witness is supplied,
/// and builds the model. The witness from the norm solver is deterministic,
/// so the output is canonical only up to isomorphism over the algebraic closure.
pub fn model_from_point(req: &ModelRequest) -> Result<Model, ModelError> {
    let (m, n) = (&req.point.m, &req.point.n);
    let field = if req.field == FieldTag::Complex { FieldTag::RationalSqrt5 } else { req.field };
    let class = classify(&ClassifyInput::MN(req.point.clone()), field)?;
    let target = eta_norm_target(m, n);
    if field == FieldTag::Rational && !target.is_zero() {
        if let Some(place) = norm_obstruction(&target)? {
            return Err(ModelError::NormFails { value: target, place });
        }
    }
    match class.case {
        CaseTag::One | CaseTag::OneA => {}
        CaseTag::Four if !n.is_zero() || m.is_zero() => return Err(ModelError::ClassificationMismatch("4")),
        CaseTag::Four => {}
        c => return Err(ModelError::ClassificationMismatch(c.as_str())),
    }
    let model = match field {
        FieldTag::Rational => {
            let (u, v) = match &req.witness {
                Some(w) => w.clone(),
                None => solve_norm_equation(&target)?.ok_or(ModelError::NormFails {
                    value: target.clone(),
                    place: Place::Infinity,
                })?,
            };
            let eta = Sqrt5::new(u, v);
            Model::Rational { model: model_general(m, n, &eta)?, eta }
        }
        _ => Model::Sqrt5(model_sqrt5(&s5(m), &s5(n))?),
    };
    if !model_matches_point(&model, &s5(m), &s5(n)) {
        return Err(ModelError::RoundTrip);
    }
    Ok(model)
}

/// `v = (4a + 2c)/(5a^2 - b^2 + 5c^2 - 1)`, `m = 5av - 2`, `n = -bv`, `u = 5cv - 1`,
/// a point of `m^2 - 5n^2 - 5 + u^2 - 5v^2 = 0`.
pub fn abc_to_mnuv(a: &Rational, b: &Rational, c: &Rational) -> Result<[Rational; 4], ModelError> {
    let den = q(5) * a * a - b * b + q(5) * c * c - q(1);
    if den.is_zero() {
        return Err(ModelError::DenominatorZero);
    }
    let v = (q(4) * a + q(2) * c) / den;
    let m = q(5) * a * &v - q(2);
    let n = -(b * &v);
    let u = q(5) * c * &v - q(1);
    debug_assert!((&m * &m - q(5) * &n * &n - q(5) + &u * &u - q(5) * &v * &v).is_zero());
    Ok([m, n, u, v])
}

/// Human-readable description of a model, one coefficient per line.
pub fn describe(model: &Model) -> String {
    match model {
        Model::Rational { model, eta } => alloc::format!("y^2 = {}\neta = {}", model, eta),
        Model::Sqrt5(model) => alloc::format!("y^2 = {}", model),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_square, rat, rint};
    use crate::moduli::{gh_from_mn, wilson_delta_prime, WilsonPoint};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rat(rng: &mut ChaCha8Rng, h: i64) -> Rational {
        rat(rng.gen_range(-h..=h), rng.gen_range(1..=h))
    }

    #[test]
    fn sqrt5_model_at_one_zero() {
        let model = model_sqrt5(&s5(&rint(1)), &s5(&rint(0))).unwrap();
        let expected: Vec<Sqrt5> = [64, -32, 0, 40, 0, -2, 1].iter().map(|c| s5(&rint(*c))).collect();
        assert_eq!(model.coeffs().to_vec(), expected);
        assert!(model_matches_point(&Model::Sqrt5(model), &s5(&rint(1)), &s5(&rint(0))));
    }

    #[test]
    fn sqrt5_model_conjugation() {
        let (m, n) = (s5(&rat(3, 7)), s5(&rat(-2, 5)));
        let a = model_sqrt5_coeffs(&m, &n);
        let b = model_sqrt5_coeffs(&m, &n.neg());
        for i in 0..7 {
            assert_eq!(a[i].conj(), b[i]);
        }
    }

    #[test]
    fn general_model_at_one_zero() {
        let eta = s5(&rint(2));
        let model = model_general(&rint(1), &rint(0), &eta).unwrap();
        let ic = igusa_clebsch_from_sextic(&model).unwrap();
        assert!(ic_weighted_equal(&ic, &ic_from_mn(&rint(1), &rint(0)), FieldTag::Rational));
        assert!(matches!(
            model_general(&rint(1), &rint(0), &s5(&rint(1))),
            Err(ModelError::NormMismatch { .. })
        ));
    }

    #[test]
    fn general_model_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 15 {
            let (m, n) = (random_rat(&mut rng, 9), random_rat(&mut rng, 9));
            let target = eta_norm_target(&m, &n);
            if target.is_zero() || n.is_zero() {
                continue;
            }
            let Some((u, v)) = solve_norm_equation(&target).unwrap() else { continue };
            let Ok(model) = model_general(&m, &n, &Sqrt5::new(u, v)) else { continue };
            let ic = igusa_clebsch_from_sextic(&model).unwrap();
            assert!(ic_weighted_equal(&ic, &ic_from_mn(&m, &n), FieldTag::Rational), "({m}, {n})");
            done += 1;
        }
    }

    #[test]
    fn pipeline() {
        let m = model_from_point(&ModelRequest::new(rint(1), rint(0), FieldTag::Rational)).unwrap();
        assert!(matches!(m, Model::Rational { .. }));
        let m = model_from_point(&ModelRequest::new(rint(1), rint(0), FieldTag::RationalSqrt5)).unwrap();
        assert_eq!(m, Model::Sqrt5(model_sqrt5(&s5(&rint(1)), &s5(&rint(0))).unwrap()));
        let err = model_from_point(&ModelRequest::new(rint(4), rint(1), FieldTag::Rational)).unwrap_err();
        assert!(matches!(err, ModelError::NormFails { .. }), "{err}");
        let m = model_from_point(&ModelRequest::new(rint(1), rint(1), FieldTag::Rational)).unwrap();
        assert!(model_matches_point(&m, &s5(&rint(1)), &s5(&rint(1))));
    }

    #[test]
    fn abc_parametrization() {
        assert_eq!(abc_to_mnuv(&rint(0), &rint(0), &rint(0)).unwrap(), [rint(-2), rint(0), rint(-1), rint(0)]);
        assert_eq!(abc_to_mnuv(&rint(0), &rint(2), &rint(1)), Err(ModelError::DenominatorZero));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let (a, b, c) = (random_rat(&mut rng, 20), random_rat(&mut rng, 20), random_rat(&mut rng, 20));
            let Ok([m, n, u, v]) = abc_to_mnuv(&a, &b, &c) else { continue };
            assert!((&m * &m - rint(5) * &n * &n - rint(5) + &u * &u - rint(5) * &v * &v).is_zero());
        }
    }

    #[test]
    fn rational_models_from_irrational_n() {
        // n = q sqrt5 gives rational coefficients, and Delta' lies in the class of 5
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut done = 0;
        while done < 10 {
            let (m, k) = (random_rat(&mut rng, 12), random_rat(&mut rng, 12));
            if k.is_zero() {
                continue;
            }
            let n = Sqrt5::new(rint(0), k.clone());
            let c = model_sqrt5_coeffs(&s5(&m), &n);
            assert!(c.iter().all(|x| x.is_rational()));
            let (g, h, _) = gh_from_mn(&s5(&m), &n);
            let (g, h) = (g.as_rational().unwrap().clone(), h.as_rational().unwrap().clone());
            let dp = wilson_delta_prime(&WilsonPoint::new(rint(1), -(rint(12) * &g) - rint(2), rint(64) * &h));
            if dp.is_zero() {
                continue;
            }
            assert!(!is_square(&dp));
            assert!(is_square(&(dp * rint(5))));
            done += 1;
        }
    }
}
