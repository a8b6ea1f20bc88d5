//! Randomized comparison of Mestre conics with `x1^2 - D x2^2 - p_D(m, n) x3^2`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::invariants::{clebsch_from_ic, ic_mn_polys, IgusaClebsch};
use crate::matrix::Matrix;
use crate::mestre::mestre_conic;
use crate::poly::MultiPoly;
use crate::moduli::gh_from_mn;
use crate::qf_reduce::forms_equivalent_over_q_hinted;
use crate::ring::Ring;

pub const SUPPORTED_D: [u32; 5] = [5, 8, 12, 13, 17];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExperimentError {
    #[error("D = {0} is not one of 5, 8, 12, 13, 17")]
    UnsupportedD(u32),
    #[error("provider required for D = {0}")]
    ProviderRequired(u32),
    #[error("provider is for D = {provider}, experiment asks for D = {requested}")]
    ProviderMismatch { provider: u32, requested: u32 },
    #[error("provider invariants are identically zero or use variables other than m, n")]
    DegenerateProvider,
}

/// `p_D(m, n)`.
pub fn pd_polynomial(d: u32) -> Result<MultiPoly, ExperimentError> {
    let s = match d {
        5 => "-m^2 + 5*n^2 + 5",
        8 => "m + 1",
        12 => "-27*m^2 + n^2 + 27",
        13 => "1803*m^2 - 72*m*n + n^2 + 3168*m - 1440*n - 768",
        17 => "1",
        _ => return Err(ExperimentError::UnsupportedD(d)),
    };
    Ok(MultiPoly::parse_with_vars(s, &["m", "n"]).expect("valid literal"))
}

/// Igusa-Clebsch invariants of a rational model of `Y_-(D)` in the variables `m, n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ICProvider {
    pub d: u32,
    pub ic: IgusaClebsch<MultiPoly>,
    pub provenance: String,
}

impl ICProvider {
    pub fn builtin_d5() -> Self {
        ICProvider { d: 5, ic: ic_mn_polys(), provenance: "builtin-D5".to_string() }
    }

    pub fn new(d: u32, ic: IgusaClebsch<MultiPoly>, provenance: &str) -> Result<Self, ExperimentError> {
        if !SUPPORTED_D.contains(&d) {
            return Err(ExperimentError::UnsupportedD(d));
        }
        let ok_vars = ic.to_array().iter().all(|p| p.used_vars().iter().all(|v| v == "m" || v == "n"));
        if ic.is_all_zero() || !ok_vars {
            return Err(ExperimentError::DegenerateProvider);
        }
        Ok(ICProvider { d, ic, provenance: provenance.to_string() })
    }

    /// Rationals whose primes cover the discriminant of the specialized conic
    /// in the common cases; other primes are found by factoring.
    pub fn hints(&self, m: &Rational, n: &Rational) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.eval(m, n).to_array().into_iter().filter(|x| !x.is_zero()).collect();
        out.extend([m.clone(), n.clone(), Rational::from_integer(30.into())]);
        if self.provenance == "builtin-D5" {
            let (g, h, _) = gh_from_mn(m, n);
            let nn = m * m - Rational::from_integer(5.into()) * n * n;
            let e = Rational::from_integer(8.into()) * &h - Rational::from_integer(9.into()) * &g * &g;
            out.extend([nn.clone(), nn - Rational::from_integer(5.into()), h, e]);
        }
        out.retain(|x| !x.is_zero());
        out
    }

    pub fn eval(&self, m: &Rational, n: &Rational) -> IgusaClebsch<Rational> {
        self.ic.map(|p| p.eval(&[("m", m.clone()), ("n", n.clone())]).expect("variables checked"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExperimentParams {
    pub d: u32,
    pub samples: usize,
    pub height: i64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SampleOutcome {
    Equivalent,
    NotEquivalent,
    Skipped(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleResult {
    pub index: usize,
    pub m: Rational,
    pub n: Rational,
    pub outcome: SampleOutcome,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub params: ExperimentParams,
    pub provenance: String,
    pub results: Vec<SampleResult>,
}

impl ExperimentReport {
    fn count(&self, f: impl Fn(&SampleOutcome) -> bool) -> usize {
        self.results.iter().filter(|r| f(&r.outcome)).count()
    }

    pub fn passes(&self) -> usize {
        self.count(|o| *o == SampleOutcome::Equivalent)
    }

    pub fn failures(&self) -> Vec<&SampleResult> {
        self.results.iter().filter(|r| r.outcome == SampleOutcome::NotEquivalent).collect()
    }

    pub fn skips(&self) -> usize {
        self.count(|o| matches!(o, SampleOutcome::Skipped(_)))
    }
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "# rm5 experiment")?;
        writeln!(f, "version: {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(f, "seed: {}", p.seed)?;
        writeln!(f, "D: {}", p.d)?;
        writeln!(f, "samples: {}", p.samples)?;
        writeln!(f, "height: {}", p.height)?;
        writeln!(f, "provider: {}", self.provenance)?;
        writeln!(f, "target: x1^2 - {}*x2^2 - p_D(m, n)*x3^2", p.d)?;
        writeln!(f, "equivalent: {}", self.passes())?;
        writeln!(f, "not equivalent: {}", self.failures().len())?;
        writeln!(f, "skipped: {}", self.skips())?;
        for r in self.failures() {
            writeln!(f, "FAIL sample {}: m = {}, n = {}", r.index, r.m, r.n)?;
        }
        Ok(())
    }
}

/// Numerator uniform in `[-h, h]`, denominator uniform in `[1, h]`.
pub fn random_rational<R: Rng>(rng: &mut R, height: i64) -> Rational {
    let num = rng.gen_range(-height..=height);
    let den = rng.gen_range(1..=height);
    Rational::new(num.into(), den.into())
}

/// The deterministic sample sequence used by experiments.
pub fn sample_points(samples: usize, height: i64, seed: u64) -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| (random_rational(&mut rng, height), random_rational(&mut rng, height))).collect()
}

/// The specialized Mestre conic of an invariant tuple, or `None` when singular.
pub fn specialized_conic(ic: &IgusaClebsch<Rational>) -> Option<Matrix<Rational>> {
    if ic.i10.is_zero() {
        return None;
    }
    let l = mestre_conic(&clebsch_from_ic(ic));
    if l.det().is_zero() {
        None
    } else {
        Some(l)
    }
}

pub fn pd_target(d: u32, pd: &Rational) -> Matrix<Rational> {
    Matrix::diagonal(&[Rational::from_integer(1.into()), Rational::from_integer((-(d as i64)).into()), -pd.clone()])
}

pub fn run_sample(provider: &ICProvider, pd: &MultiPoly, m: &Rational, n: &Rational) -> SampleOutcome {
    let Some(conic) = specialized_conic(&provider.eval(m, n)) else {
        return SampleOutcome::Skipped("singular conic");
    };
    let pdv = pd.eval(&[("m", m.clone()), ("n", n.clone())]).expect("m, n bound");
    if pdv.is_zero() {
        return SampleOutcome::Skipped("p_D vanishes");
    }
    match forms_equivalent_over_q_hinted(&conic, &pd_target(provider.d, &pdv), &provider.hints(m, n)) {
        Ok(true) => SampleOutcome::Equivalent,
        Ok(false) => SampleOutcome::NotEquivalent,
        Err(_) => SampleOutcome::Skipped("singular form"),
    }
}

pub fn run_pd_experiment(params: ExperimentParams, provider: Option<&ICProvider>) -> Result<ExperimentReport, ExperimentError> {
    let pd = pd_polynomial(params.d)?;
    let builtin;
    let provider = match provider {
        Some(p) => p,
        None if params.d == 5 => {
            builtin = ICProvider::builtin_d5();
            &builtin
        }
        None => return Err(ExperimentError::ProviderRequired(params.d)),
    };
    if provider.d != params.d {
        return Err(ExperimentError::ProviderMismatch { provider: provider.d, requested: params.d });
    }
    let results = sample_points(params.samples, params.height, params.seed)
        .into_iter()
        .enumerate()
        .map(|(index, (m, n))| {
            let outcome = run_sample(provider, &pd, &m, &n);
            SampleResult { index, m, n, outcome }
        })
        .collect();
    Ok(ExperimentReport { params, provenance: format!("{}", provider.provenance), results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rint;

    #[test]
    fn pd_table() {
        assert_eq!(pd_polynomial(17).unwrap(), MultiPoly::int(1));
        let p8 = pd_polynomial(8).unwrap();
        assert!(p8.eval(&[("m", rint(-1)), ("n", rint(3))]).unwrap().is_zero());
        let p5 = pd_polynomial(5).unwrap();
        assert_eq!(p5.neg(), MultiPoly::parse("m^2 - 5*n^2 - 5").unwrap());
        assert_eq!(pd_polynomial(7), Err(ExperimentError::UnsupportedD(7)));
    }

    #[test]
    fn d5_experiment() {
        let params = ExperimentParams { d: 5, samples: 40, height: 20, seed: 7 };
        let report = run_pd_experiment(params, None).unwrap();
        assert!(report.failures().is_empty(), "{report}");
        assert_eq!(report.passes() + report.skips(), 40);
        assert_eq!(report, run_pd_experiment(params, None).unwrap());
    }

    #[test]
    fn singular_samples_are_skipped() {
        let provider = ICProvider::builtin_d5();
        let pd = pd_polynomial(5).unwrap();
        assert!(matches!(run_sample(&provider, &pd, &rint(2), &rint(0)), SampleOutcome::Skipped(_)));
    }

    #[test]
    fn other_d_needs_provider() {
        let params = ExperimentParams { d: 8, samples: 1, height: 5, seed: 0 };
        assert_eq!(run_pd_experiment(params, None), Err(ExperimentError::ProviderRequired(8)));
    }
}
