//! Coordinates on the Hilbert modular surface `Y_-(5)` and the
//! classification of rational points by the shape of their invariants.
//!
//! Charts:
//! - the double cover `z^2 = ek_rhs(g, h)` of the `(g, h)` plane,
//! - the rational `(m, n)` parametrization with `30g + 9 = m^2 - 5n^2`,
//! - Wilson's weighted coordinates `(z6 : s2 : sigma5)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{
    hilbert_symbol, is_square, local_places, solve_norm_equation, ArithError, Place, Rational,
    Sqrt5,
};
use crate::invariants::{
    ic_from_gh, ic_weighted_equal, FieldTag, IgusaClebsch, InvariantScalar, SexticModel,
};
use crate::ring::{Field, Ring};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModuliError {
    #[error("point does not satisfy z^2 = ek_rhs(g, h)")]
    NotOnSurface,
    #[error("excluded locus: (30g + 9)(15g + 2) = 0")]
    ExcludedLocus,
    #[error("z6 = 0: the point lies on the curve at infinity")]
    WilsonAtInfinity,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `2(-972g^5 - 324g^4 - 27g^3 - 4500g^2 h - 1350gh + 6250h^2 - 108h)`.
pub fn ek_rhs<R: Ring>(g: &R, h: &R) -> R {
    let g2 = g.mul(g);
    let g3 = g2.mul(g);
    let terms = [
        g3.mul(&g2).scale(&q(-972)),
        g2.mul(&g2).scale(&q(-324)),
        g3.scale(&q(-27)),
        g2.mul(h).scale(&q(-4500)),
        g.mul(h).scale(&q(-1350)),
        h.mul(h).scale(&q(6250)),
        h.scale(&q(-108)),
    ];
    terms.iter().fold(R::zero(), |acc, t| acc.add(t)).scale(&q(2))
}

/// `(g, h, z)` as functions of `(m, n)`.
pub fn gh_from_mn<R: Ring>(m: &R, n: &R) -> (R, R, R) {
    let norm = m.mul(m).sub(&n.mul(n).scale(&q(5)));
    let g = norm.sub(&R::from_int(9)).scale(&r(1, 30));
    let a = g.scale(&q(30)).add(&R::from_int(9));
    let b = g.scale(&q(15)).add(&R::from_int(2));
    let quad = g.mul(&g).scale(&q(250)).add(&g.scale(&q(75))).add(&R::from_int(6));
    let h = m.mul(&a).mul(&b).add(&quad.scale(&q(9))).scale(&r(1, 6250));
    let z = n.mul(&a).mul(&b).scale(&r(1, 25));
    (g, h, z)
}

/// A point `(z, g, h)` with `z^2 = ek_rhs(g, h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfacePoint<F = Rational> {
    pub z: F,
    pub g: F,
    pub h: F,
}

impl<F: Ring> SurfacePoint<F> {
    pub fn new(z: F, g: F, h: F) -> Result<Self, ModuliError> {
        if z.mul(&z) != ek_rhs(&g, &h) {
            return Err(ModuliError::NotOnSurface);
        }
        Ok(SurfacePoint { z, g, h })
    }

    pub fn igusa_clebsch(&self) -> IgusaClebsch<F> {
        ic_from_gh(&self.g, &self.h)
    }
}

impl<F: fmt::Display> fmt::Display for SurfacePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(z, g, h) = ({}, {}, {})", self.z, self.g, self.h)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MNPoint<F = Rational> {
    pub m: F,
    pub n: F,
}

impl<F> MNPoint<F> {
    pub fn new(m: F, n: F) -> Self {
        MNPoint { m, n }
    }
}

impl<F: fmt::Display> fmt::Display for MNPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m, n) = ({}, {})", self.m, self.n)
    }
}

pub fn mn_to_zgh<F: Ring>(p: &MNPoint<F>) -> SurfacePoint<F> {
    let (g, h, z) = gh_from_mn(&p.m, &p.n);
    assert!(z.mul(&z) == ek_rhs(&g, &h), "(m, n) chart off the surface");
    SurfacePoint { z, g, h }
}

pub fn zgh_to_mn<F: Field>(p: &SurfacePoint<F>) -> Result<MNPoint<F>, ModuliError> {
    let g = &p.g;
    let den = g
        .scale(&q(30))
        .add(&F::from_int(9))
        .mul(&g.scale(&q(15)).add(&F::from_int(2)));
    if den.is_zero() {
        return Err(ModuliError::ExcludedLocus);
    }
    let quad = g.mul(g).scale(&q(250)).add(&g.scale(&q(75))).add(&F::from_int(6));
    let num = p.h.scale(&q(6250)).sub(&quad.scale(&q(9)));
    let m = num.div(&den).expect("nonzero");
    let n = p.z.scale(&q(25)).div(&den).expect("nonzero");
    Ok(MNPoint { m, n })
}

/// Wilson's weighted coordinates `(z6 : s2 : sigma5)` of weights 1, 2, 5.
#[derive(Clone, Debug, PartialEq)]
pub struct WilsonPoint<F = Rational> {
    pub z6: F,
    pub s2: F,
    pub sigma5: F,
}

impl<F> WilsonPoint<F> {
    pub fn new(z6: F, s2: F, sigma5: F) -> Self {
        WilsonPoint { z6, s2, sigma5 }
    }
}

pub fn wilson_to_gh<F: Field>(p: &WilsonPoint<F>) -> Result<(F, F), ModuliError> {
    if p.z6.is_zero() {
        return Err(ModuliError::WilsonAtInfinity);
    }
    let z2 = p.z6.mul(&p.z6);
    let g = z2
        .scale(&q(2))
        .add(&p.s2)
        .neg()
        .div(&z2.scale(&q(12)))
        .expect("nonzero");
    let h = p.sigma5.div(&z2.mul(&z2).mul(&p.z6).scale(&q(64))).expect("nonzero");
    Ok((g, h))
}

/// Wilson's discriminant `Delta'`.
pub fn wilson_delta_prime<R: Ring>(p: &WilsonPoint<R>) -> R {
    let (z, s, t) = (&p.z6, &p.s2, &p.sigma5);
    let zp = |e: u32| z.pow(e);
    let sp = |e: u32| s.pow(e);
    let terms = [
        zp(6).mul(&sp(2)).scale(&q(64)),
        zp(4).mul(&sp(3)).scale(&q(96)),
        zp(2).mul(&sp(4)).scale(&q(48)),
        zp(5).mul(t).scale(&q(-256)),
        sp(5).scale(&q(8)),
        zp(3).mul(s).mul(t).scale(&q(-400)),
        z.mul(&sp(2)).mul(t).scale(&q(-1000)),
        t.mul(t).scale(&q(3125)),
    ];
    terms.iter().fold(R::zero(), |acc, x| acc.add(x))
}

/// `32h^2 - 4g^2 h - g^5`.
pub fn x6_equation<R: Ring>(g: &R, h: &R) -> R {
    h.mul(h)
        .scale(&q(32))
        .sub(&g.mul(g).mul(h).scale(&q(4)))
        .sub(&g.pow(5))
}

pub fn on_shimura_x6<R: Ring>(g: &R, h: &R) -> bool {
    x6_equation(g, h).is_zero()
}

/// The parametrization `u -> ((u^2 - 1)/8, (u - 1)^2 (u + 1)^3/1024)` of `X6`.
pub fn x6_param<R: Ring>(u: &R) -> (R, R) {
    let one = R::one();
    let g = u.mul(u).sub(&one).scale(&r(1, 8));
    let um = u.sub(&one);
    let up = u.add(&one);
    let h = um.mul(&um).mul(&up.pow(3)).scale(&r(1, 1024));
    (g, h)
}

/// The second `(g, h)` with the same invariants, for points of `X6`.
pub fn duplicate_partner<F: Field>(g: &F, h: &F) -> Option<(F, F)> {
    if !on_shimura_x6(g, h) || g.is_zero() {
        return None;
    }
    let d = g.scale(&q(8)).add(&F::one());
    let dinv = d.inv()?;
    let g2 = g.neg().mul(&dinv);
    let h2 = g.pow(3).add(&h.scale(&q(2))).mul(&dinv.pow(3)).scale(&r(1, 2));
    Some((g2, h2))
}

/// Whether `disc(f)` is a square in the base field of `f`.
///
/// A necessary condition only: a transitive `A5` inside `S6` lies in `A6`.
pub fn galois_necessary_check<F: InvariantScalar>(f: &SexticModel<F>) -> bool {
    let d = f.discriminant();
    !d.is_zero() && d.has_root_in(2, F::native_tag())
}

/// Case labels for rational points of `Y_-(5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    One,
    OneA,
    OneB,
    OneC,
    Two,
    Three,
    Four,
    Five,
    Six,
    None,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::One => "1",
            CaseTag::OneA => "1a",
            CaseTag::OneB => "1b",
            CaseTag::OneC => "1c",
            CaseTag::Two => "2",
            CaseTag::Three => "3",
            CaseTag::Four => "4",
            CaseTag::Five => "5",
            CaseTag::Six => "6",
            CaseTag::None => "none",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub name: String,
    pub value: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RM5Class {
    pub case: CaseTag,
    pub field: FieldTag,
    pub conditions: Vec<Condition>,
    pub witnesses: Vec<(String, String)>,
    pub ic: Option<IgusaClebsch<Sqrt5>>,
}

impl RM5Class {
    fn new(field: FieldTag) -> Self {
        RM5Class { case: CaseTag::None, field, conditions: Vec::new(), witnesses: Vec::new(), ic: None }
    }

    fn check(&mut self, name: &str, value: impl fmt::Display, holds: bool) -> bool {
        self.conditions.push(Condition { name: name.to_string(), value: value.to_string(), holds });
        holds
    }

    fn witness(&mut self, name: &str, value: impl fmt::Display) {
        self.witnesses.push((name.to_string(), value.to_string()));
    }

    fn done(mut self, case: CaseTag) -> Self {
        self.case = case;
        self
    }

    /// The first condition that failed, if the tag is `none`.
    pub fn failed_condition(&self) -> Option<&Condition> {
        if self.case != CaseTag::None {
            return None;
        }
        self.conditions.iter().rev().find(|c| !c.holds)
    }

    pub fn is_rm5(&self) -> bool {
        self.case != CaseTag::None
    }

    /// `case 1a; norm witness u=1 v=1 for -4`-style summary line.
    pub fn summary(&self) -> String {
        let mut s = format!("case {}", self.case);
        if let Some(c) = self.failed_condition() {
            s.push_str(&format!("; failed: {} ({})", c.name, c.value));
        }
        for (k, v) in &self.witnesses {
            if k == "norm witness" {
                s.push_str(&format!("; norm witness {}", v));
            }
        }
        s
    }
}

impl fmt::Display for RM5Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        writeln!(f, "field: {}", self.field)?;
        if let Some(ic) = &self.ic {
            writeln!(f, "IC: {}", ic)?;
        }
        for c in &self.conditions {
            writeln!(f, "  [{}] {} = {}", if c.holds { "ok" } else { "FAIL" }, c.name, c.value)?;
        }
        for (k, v) in &self.witnesses {
            writeln!(f, "  {}: {}", k, v)?;
        }
        Ok(())
    }
}

/// What to classify.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassifyInput {
    MN(MNPoint),
    /// `(g, h)` with an optional `z`; without `z` its existence in `k` is tested.
    GH { g: Rational, h: Rational, z: Option<Rational> },
    IC(IgusaClebsch),
}

fn s5(x: &Rational) -> Sqrt5 {
    Sqrt5::from_rational(x.clone())
}

fn in_field(x: &Sqrt5, field: FieldTag) -> bool {
    field.contains_sqrt5() || x.is_rational()
}

fn is_square_in(x: &Sqrt5, field: FieldTag) -> bool {
    match field {
        FieldTag::Rational => x.as_rational().is_some_and(is_square),
        _ => x.sqrt().is_some(),
    }
}

/// A place where `(5, c)_v = -1`, witnessing that `c` is not a norm from `Q(sqrt 5)`.
pub fn norm_obstruction(c: &Rational) -> Result<Option<Place>, ArithError> {
    let five = q(5);
    for place in local_places([&five, c]) {
        if hilbert_symbol(&five, c, &place)? == -1 {
            return Ok(Some(place));
        }
    }
    Ok(None)
}

/// Records whether `c` is a norm from `k(sqrt 5)`, with a witness or certificate.
fn norm_check(out: &mut RM5Class, name: &str, c: &Sqrt5, field: FieldTag) -> Result<bool, ArithError> {
    if field.contains_sqrt5() {
        return Ok(out.check(name, format!("{} (automatic: sqrt5 in k)", c), true));
    }
    let c = c.as_rational().expect("rational over Q").clone();
    if c == q(0) {
        return Ok(out.check(name, "0", false));
    }
    match solve_norm_equation(&c)? {
        Some((u, v)) => {
            out.witness("norm witness", format!("u={} v={} for {}", u, v, c));
            Ok(out.check(name, &c, true))
        }
        None => {
            if let Some(p) = norm_obstruction(&c)? {
                out.witness("norm certificate", format!("Hilbert symbol (5, {})_{} = -1", c, p));
            }
            Ok(out.check(name, &c, false))
        }
    }
}

fn sqrt_in_field(x: &Sqrt5, field: FieldTag) -> Option<Sqrt5> {
    let s = x.sqrt()?;
    in_field(&s, field).then_some(s)
}

/// Classifies a point of the `(g, h)` plane; `z` is computed when absent.
fn classify_gh(g: &Sqrt5, h: &Sqrt5, z: Option<Sqrt5>, field: FieldTag) -> Result<RM5Class, ModuliError> {
    let mut out = RM5Class::new(field);
    out.ic = Some(ic_from_gh(g, h));
    out.witness("(g, h)", format!("({}, {})", g, h));
    let ek = ek_rhs(g, h);
    let z = match z {
        Some(z) => {
            if z.mul(&z) != ek {
                return Err(ModuliError::NotOnSurface);
            }
            z
        }
        None => match sqrt_in_field(&ek, field) {
            Some(z) => z,
            None => {
                out.check("ek_rhs(g, h) is a square in k", &ek, false);
                return Ok(out);
            }
        },
    };
    out.witness("z", &z);
    if !out.check("h != 0", h, !h.is_zero()) {
        return Ok(out);
    }
    let g_a = s5(&r(-3, 10));
    let g_b = s5(&r(-2, 15));
    if z.is_zero() {
        out.check("z = 0", &z, true);
        let m = if *g == g_a {
            <Sqrt5 as Ring>::zero()
        } else if *g == g_b {
            Sqrt5::sqrt_d()
        } else {
            zgh_to_mn(&SurfacePoint { z: z.clone(), g: g.clone(), h: h.clone() })?.m
        };
        let (g4, h4, _) = gh_from_mn(&m, &<Sqrt5 as Ring>::zero());
        debug_assert!(g4 == *g && h4 == *h);
        out.witness("case 4 parameter m", &m);
        return Ok(out.done(CaseTag::Four));
    }
    let e = h.scale(&q(8)).sub(&g.mul(g).scale(&q(9)));
    if e.is_zero() {
        out.check("8h - 9g^2 = 0", &e, true);
        let t = g.scale(&q(128)).add(&Sqrt5::from_int(9)).scale(&q(-3));
        let ok = out.check("-3(128g + 9) is a square in k", &t, is_square_in(&t, field));
        return Ok(out.done(if ok { CaseTag::Three } else { CaseTag::None }));
    }
    out.check("hz(8h - 9g^2) != 0", h.mul(&z).mul(&e), true);
    if *g == g_a || *g == g_b {
        // z is rational only when sqrt5 lies in k
        let tag = if *g == g_a { CaseTag::OneB } else { CaseTag::OneC };
        let ok = out.check("sqrt5 in k", field, field.contains_sqrt5());
        return Ok(out.done(if ok { tag } else { CaseTag::None }));
    }
    let c = g.scale(&q(30)).add(&Sqrt5::from_int(4));
    if !norm_check(&mut out, "30g + 4 is a norm from k(sqrt5)", &c, field)? {
        return Ok(out);
    }
    let mn = zgh_to_mn(&SurfacePoint { z, g: g.clone(), h: h.clone() })?;
    out.witness("(m, n)", &mn);
    Ok(out.done(CaseTag::One))
}

fn one_a_conditions(out: &mut RM5Class, m: &Sqrt5, n: &Sqrt5) {
    let nn = m.mul(m).sub(&n.mul(n).scale(&q(5)));
    let nn5 = nn.sub(&Sqrt5::from_int(5));
    let prod = n.mul(&nn).mul(&nn5);
    out.check("n(m^2 - 5n^2)(m^2 - 5n^2 - 5) != 0", &prod, !prod.is_zero());
    let (g, h, _) = gh_from_mn(m, n);
    let p = h.scale(&q(8)).sub(&g.mul(&g).scale(&q(9))).scale(&q(12500));
    out.check("8m^5 - 80m^3n^2 + ... - 9261 != 0", &p, !p.is_zero());
}

fn classify_mn(p: &MNPoint, field: FieldTag) -> Result<RM5Class, ModuliError> {
    let (m, n) = (s5(&p.m), s5(&p.n));
    let sp = mn_to_zgh(&MNPoint::new(m.clone(), n.clone()));
    let mut out = classify_gh(&sp.g, &sp.h, Some(sp.z.clone()), field)?;
    out.witnesses.insert(0, ("(m, n)".to_string(), p.to_string()));
    if out.case == CaseTag::One {
        one_a_conditions(&mut out, &m, &n);
        out.case = CaseTag::OneA;
    }
    Ok(out)
}

/// Candidates `(lambda, g, h)` with `lambda * ic = ic_from_gh(g, h)` over `k`.
fn invert_gh(ic: &IgusaClebsch<Sqrt5>, field: FieldTag) -> Vec<(Sqrt5, Sqrt5)> {
    let mut lambdas = Vec::new();
    if ic.i4.is_zero() {
        if !ic.i2.is_zero() {
            lambdas.push(Sqrt5::from_int(6).mul(&ic.i2.inv().expect("nonzero")));
        }
    } else if let Some(rt) = sqrt_in_field(&ic.i4, field) {
        // lambda I2 - 6 = +-8 lambda sqrt(I4)
        for sign in [1, -1] {
            let den = ic.i2.sub(&rt.scale(&q(8 * sign)));
            if let Some(inv) = den.inv() {
                lambdas.push(Sqrt5::from_int(6).mul(&inv));
            }
        }
    }
    let mut out: Vec<(Sqrt5, Sqrt5)> = Vec::new();
    for l in lambdas {
        let g = l.mul(&ic.i2).sub(&Sqrt5::from_int(6)).scale(&r(1, 24));
        let g2 = g.mul(&g);
        let h = l
            .pow(3)
            .mul(&ic.i6)
            .sub(&g2.mul(&g).scale(&q(81)))
            .sub(&g2.scale(&q(18)))
            .scale(&r(1, 36));
        let target = ic_from_gh(&g, &h);
        let scaled = ic.weighted_scale(&l);
        if scaled == target && !out.contains(&(g.clone(), h.clone())) {
            out.push((g, h));
        }
    }
    out
}

fn classify_ic(ic: &IgusaClebsch, field: FieldTag) -> Result<RM5Class, ModuliError> {
    let ic5 = ic.map(s5);
    let mut out = RM5Class::new(field);
    out.ic = Some(ic5.clone());
    if !out.check("I10 != 0", &ic.i10, ic.i10 != q(0)) {
        return Ok(out);
    }
    let zero = q(0);
    if ic.i2 == zero && ic.i4 == zero && ic.i6 == zero {
        out.check("I2 = I4 = I6 = 0", "true", true);
        let ok = out.check("sqrt5 in k", field, field.contains_sqrt5());
        return Ok(out.done(if ok { CaseTag::Six } else { CaseTag::None }));
    }
    let five = IgusaClebsch::new(q(8), q(1), q(3), r(8, 3125));
    if ic_weighted_equal(ic, &five, field) {
        out.check("IC ~ (8 : 1 : 3 : 8/3125)", "true", true);
        return Ok(out.done(CaseTag::Five));
    }
    let mut pattern_failure: Option<RM5Class> = None;
    if ic.i2 != zero {
        let l = Sqrt5::from_int(8).mul(&ic5.i2.inv().expect("nonzero"));
        let scaled = ic5.weighted_scale(&l);
        if scaled.i4 == <Sqrt5 as Ring>::one() && scaled.i6 == Sqrt5::from_int(3) {
            let s = scaled.i10.clone();
            let mut c2 = out.clone();
            c2.check("IC ~ (8 : 1 : 3 : s)", format!("s = {}", s), true);
            c2.witness("s", &s);
            let t = s.mul(&s.scale(&q(3125)).sub(&Sqrt5::from_int(8)));
            let sq = c2.check("s(3125s - 8) is a square in k", &t, is_square_in(&t, field));
            let nm = sq && norm_check(&mut c2, "2s is a norm from k(sqrt5)", &s.scale(&q(2)), field)?;
            if nm {
                return Ok(c2.done(CaseTag::Two));
            }
            pattern_failure = Some(c2);
        }
    }
    let cands = invert_gh(&ic5, field);
    if cands.len() > 1 {
        out.witness("ambiguous (g, h)", format!("{} candidates", cands.len()));
    }
    let mut first_failure = None;
    for (g, h) in &cands {
        let mut c = classify_gh(g, h, None, field)?;
        c.ic = Some(ic5.clone());
        c.witnesses.splice(0..0, out.witnesses.iter().cloned());
        if c.is_rm5() {
            return Ok(c);
        }
        first_failure.get_or_insert(c);
    }
    if let Some(c) = pattern_failure.or(first_failure) {
        return Ok(c);
    }
    out.check("IC matches a (g, h) chart point or a pattern of cases 2, 5, 6", "false", false);
    Ok(out)
}

/// Decides which case of the moduli classification applies over `field`
/// (`Rational` or `RationalSqrt5`).
pub fn classify(input: &ClassifyInput, field: FieldTag) -> Result<RM5Class, ModuliError> {
    let field = if field == FieldTag::Complex { FieldTag::RationalSqrt5 } else { field };
    match input {
        ClassifyInput::MN(p) => classify_mn(p, field),
        ClassifyInput::GH { g, h, z } => classify_gh(&s5(g), &s5(h), z.as_ref().map(s5), field),
        ClassifyInput::IC(ic) => classify_ic(ic, field),
    }
}

/// Every listed condition of the `(m, n)` case: nondegeneracy and the norm condition.
pub fn is_case_1a(m: &Rational, n: &Rational, field: FieldTag) -> bool {
    classify(&ClassifyInput::MN(MNPoint::new(m.clone(), n.clone())), field)
        .map(|c| c.case == CaseTag::OneA)
        .unwrap_or(false)
}

/// `m^2 - 5n^2 - 5`, the norm that controls the Mestre obstruction.
pub fn mn_norm_target(m: &Rational, n: &Rational) -> Rational {
    m * m - q(5) * n * n - q(5)
}

/// Convenience used by tests and the CLI: the Hilbert-symbol places of `(5, c)`.
pub fn norm_places(c: &Rational) -> Vec<Place> {
    local_places(vec![&q(5), c])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rint};
    use crate::invariants::{ic_from_mn, ic_gh_polys, ic_mn_polys, ic_weighted_equal_symbolic};
    use crate::poly::{poly, MultiPoly};

    fn mn(m: i64, n: i64) -> ClassifyInput {
        ClassifyInput::MN(MNPoint::new(rint(m), rint(n)))
    }

    #[test]
    fn ek_examples() {
        assert_eq!(ek_rhs(&rint(0), &rat(54, 3125)), rint(0));
        let h = poly("h");
        let a = ek_rhs(&MultiPoly::constant(rat(-3, 10)), &h);
        let t = h.scale(&rint(3125)).sub(&MultiPoly::int(27));
        assert_eq!(a, t.mul(&t).scale(&rat(4, 3125)));
        let b = ek_rhs(&MultiPoly::constant(rat(-2, 15)), &h);
        let t = h.scale(&rint(3125)).sub(&MultiPoly::int(2));
        assert_eq!(b, t.mul(&t).scale(&rat(4, 3125)));
    }

    #[test]
    fn mn_chart() {
        let p = mn_to_zgh(&MNPoint::new(rint(3), rint(0)));
        assert_eq!(p, SurfacePoint { z: rint(0), g: rint(0), h: rat(54, 3125) });
        assert_eq!(zgh_to_mn(&p).unwrap(), MNPoint::new(rint(3), rint(0)));
        let bad = SurfacePoint { z: rint(0), g: rat(-3, 10), h: rat(27, 3125) };
        assert_eq!(zgh_to_mn(&bad), Err(ModuliError::ExcludedLocus));
        // symbolic: the chart lands on the surface
        let (g, h, z) = gh_from_mn(&poly("m"), &poly("n"));
        assert_eq!(z.mul(&z), ek_rhs(&g, &h));
        let via_gh = ic_from_gh(&g, &h);
        assert!(ic_weighted_equal_symbolic(&via_gh, &ic_mn_polys()));
        let _ = ic_gh_polys();
    }

    #[test]
    fn wilson_chart() {
        let (g, h) = wilson_to_gh(&WilsonPoint::new(rint(1), rint(-2), rint(64 * 7))).unwrap();
        assert_eq!((g, h), (rint(0), rint(7)));
        let (g, h) = wilson_to_gh(&WilsonPoint::new(rint(1), rint(0), rint(5))).unwrap();
        assert_eq!((g, h), (rat(-1, 6), rat(5, 64)));
        assert_eq!(
            wilson_delta_prime(&WilsonPoint::new(rint(0), rat(-5, 2), rat(1, 2))),
            rint(0)
        );
        assert_eq!(wilson_delta_prime(&WilsonPoint::new(rint(0), rint(0), rint(0))), rint(0));
        let p = WilsonPoint::new(MultiPoly::zero(), poly("s"), poly("t"));
        assert_eq!(wilson_delta_prime(&p), poly("8*s^5 + 3125*t^2"));
        assert!(wilson_to_gh(&WilsonPoint::new(rint(0), rint(1), rint(1))).is_err());
    }

    #[test]
    fn wilson_delta_is_ek() {
        // z6 = 1: g = -(2 + s)/12, h = t/64
        let (s, t) = (poly("s"), poly("t"));
        let g = s.add(&MultiPoly::int(2)).scale(&rat(-1, 12));
        let h = t.scale(&rat(1, 64));
        let p = WilsonPoint::new(MultiPoly::one(), s, t);
        assert_eq!(wilson_delta_prime(&p), ek_rhs(&g, &h).scale(&rint(1024)));
    }

    #[test]
    fn x6_and_duplicates() {
        let (g, h) = x6_param(&rint(3));
        assert_eq!((g.clone(), h.clone()), (rint(1), rat(1, 4)));
        assert!(on_shimura_x6(&g, &h));
        assert!(on_shimura_x6(&rint(0), &rint(0)));
        assert!(!on_shimura_x6(&rint(1), &rint(1)));
        let (g2, h2) = duplicate_partner(&g, &h).unwrap();
        assert_eq!((g2.clone(), h2.clone()), x6_param(&rat(1, 3)));
        assert!(ic_weighted_equal(&ic_from_gh(&g, &h), &ic_from_gh(&g2, &h2), FieldTag::Rational));
        assert_eq!(duplicate_partner(&rint(1), &rint(1)), None);
        assert_eq!(duplicate_partner(&rint(0), &rint(0)), None);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&mn(3, 0), FieldTag::Rational).unwrap();
        assert_eq!(c.case, CaseTag::Four);
        // n = 0 forces z = 0
        let c = classify(&mn(1, 0), FieldTag::Rational).unwrap();
        assert_eq!(c.case, CaseTag::Four);
        let c = classify(&mn(1, 1), FieldTag::Rational).unwrap();
        assert_eq!(c.case, CaseTag::OneA, "{}", c);
        assert!(c.summary().contains("norm witness"));
        // m^2 - 5n^2 - 5 = 2 is not a norm
        let c = classify(&mn(4, 1), FieldTag::Rational).unwrap();
        assert_eq!(c.case, CaseTag::None);
        assert!(c.witnesses.iter().any(|(k, _)| k == "norm certificate"));
        assert_eq!(classify(&mn(4, 1), FieldTag::RationalSqrt5).unwrap().case, CaseTag::OneA);

        let six = ClassifyInput::IC(IgusaClebsch::new(rint(0), rint(0), rint(0), rint(1)));
        assert_eq!(classify(&six, FieldTag::Rational).unwrap().case, CaseTag::None);
        assert_eq!(classify(&six, FieldTag::RationalSqrt5).unwrap().case, CaseTag::Six);
        let two = ClassifyInput::IC(IgusaClebsch::new(rint(8), rint(1), rint(3), rat(2, 25)));
        assert_eq!(classify(&two, FieldTag::Rational).unwrap().case, CaseTag::Two);
        let five = ClassifyInput::IC(IgusaClebsch::new(rint(16), rint(4), rint(24), rat(256, 3125)));
        assert_eq!(classify(&five, FieldTag::Rational).unwrap().case, CaseTag::Five);
    }

    #[test]
    fn classify_ic_routes_through_gh() {
        let ic = ic_from_mn(&rint(1), &rint(1));
        let c = classify(&ClassifyInput::IC(ic), FieldTag::Rational).unwrap();
        assert_eq!(c.case, CaseTag::One, "{}", c);
        // h = 9g^2/8 from a genus-2 curve with extra structure
        let case3 = IgusaClebsch::new(rint(88), rint(169), rint(28561), rint(57122));
        let c = classify(&ClassifyInput::IC(case3), FieldTag::Rational).unwrap();
        assert_eq!(c.case, CaseTag::Three, "{}", c);
        // g = -3/10 requires sqrt5
        let g = ClassifyInput::GH { g: rat(-3, 10), h: rint(1), z: None };
        assert_eq!(classify(&g, FieldTag::Rational).unwrap().case, CaseTag::None);
        assert_eq!(classify(&g, FieldTag::RationalSqrt5).unwrap().case, CaseTag::OneB);
        let g = ClassifyInput::GH { g: rat(-2, 15), h: rint(1), z: None };
        assert_eq!(classify(&g, FieldTag::RationalSqrt5).unwrap().case, CaseTag::OneC);
        // m = sqrt5 on the z = 0 curve has rational invariants
        let g = ClassifyInput::GH { g: rat(-2, 15), h: rat(2, 3125), z: Some(rint(0)) };
        let c = classify(&g, FieldTag::Rational).unwrap();
        assert_eq!(c.case, CaseTag::Four);
        assert!(c.witnesses.iter().any(|(_, v)| v == "1*sqrt5"));
        let off = ClassifyInput::GH { g: rint(0), h: rint(1), z: Some(rint(1)) };
        assert_eq!(classify(&off, FieldTag::Rational), Err(ModuliError::NotOnSurface));
    }

    #[test]
    fn galois_check() {
        let f = SexticModel::from_slice(&[rint(-1), rint(0), rint(0), rint(0), rint(0), rint(1)]).unwrap();
        let d = f.discriminant();
        assert_eq!(galois_necessary_check(&f), is_square(&d));
        assert!(!galois_necessary_check(&f));
    }
}
