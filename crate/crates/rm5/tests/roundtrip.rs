use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rm5::formats::{from_text, to_text, Curve, CurveFile, IcProviderFile, PolynomialFile, QfFile};
use rm5_core::arith::{rat, Rational, Sqrt5};
use rm5_core::experiments::{ICProvider, SUPPORTED_D};
use rm5_core::invariants::{IgusaClebsch, SexticModel};
use rm5_core::matrix::Matrix;
use rm5_core::poly::MultiPoly;
use rm5_core::qf_reduce::PolyQF;

const INSTANCES: usize = 50;

fn rand_q(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-99..=99), rng.gen_range(1..=40))
}

fn rand_poly(rng: &mut ChaCha8Rng, vars: &[&str]) -> MultiPoly {
    let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    let terms: Vec<(Vec<u32>, Rational)> =
        (0..rng.gen_range(0..6)).map(|_| ((0..vars.len()).map(|_| rng.gen_range(0..4)).collect(), rand_q(rng))).collect();
    MultiPoly::from_terms(vars, terms).unwrap()
}

/// Text is canonical: parsing and re-emitting gives the same bytes.
fn stable<T: serde::Serialize + serde::de::DeserializeOwned>(v: &T) -> String {
    let text = to_text(v);
    let back: T = from_text(&text).unwrap();
    assert_eq!(to_text(&back), text);
    text
}

#[test]
fn polynomial_files() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let var_sets: [&[&str]; 4] = [&[], &["t"], &["g", "h"], &["m", "n", "s"]];
    for k in 0..INSTANCES {
        let p = rand_poly(&mut rng, var_sets[k % 4]);
        let f = PolynomialFile::from_poly(&p);
        let text = stable(&f);
        let back = from_text::<PolynomialFile>(&text).unwrap().to_poly().unwrap();
        assert_eq!(back, p);
        assert_eq!(PolynomialFile::from_poly(&back), f);
    }
}

#[test]
fn curve_files() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..INSTANCES {
        let mut cs: Vec<Rational> = (0..7).map(|_| rand_q(&mut rng)).collect();
        if k % 3 == 0 {
            cs[6] = rat(0, 1);
        }
        if cs[5] == rat(0, 1) {
            cs[5] = rat(1, 1);
        }
        let curve = if k % 2 == 0 {
            Curve::Rational(SexticModel::from_slice(&cs).unwrap())
        } else {
            let ds: Vec<Sqrt5> = cs.iter().map(|c| Sqrt5::new(c.clone(), rand_q(&mut rng))).collect();
            Curve::Sqrt5(SexticModel::from_slice(&ds).unwrap())
        };
        let text = stable(&curve.to_file());
        let back = Curve::from_file(&from_text::<CurveFile>(&text).unwrap()).unwrap();
        assert_eq!(back, curve);
    }
}

#[test]
fn qf_files() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..INSTANCES {
        let vars: &[&str] = if k % 2 == 0 { &["g", "h"] } else { &["t"] };
        let mut m = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in i..3 {
                m.set_sym(i, j, rand_poly(&mut rng, vars).with_vars(&vars.iter().map(|v| v.to_string()).collect::<Vec<_>>()).unwrap());
            }
        }
        let q = PolyQF::new(m, vars).unwrap();
        let text = stable(&QfFile::from_form(&q));
        let back = from_text::<QfFile>(&text).unwrap().to_form().unwrap();
        assert_eq!(back, q);
    }
}

#[test]
fn ic_provider_files() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut k = 0;
    while k < INSTANCES {
        let ic = IgusaClebsch::new(
            rand_poly(&mut rng, &["m", "n"]),
            rand_poly(&mut rng, &["m", "n"]),
            rand_poly(&mut rng, &["m", "n"]),
            rand_poly(&mut rng, &["m", "n"]),
        );
        let Ok(provider) = ICProvider::new(SUPPORTED_D[k % SUPPORTED_D.len()], ic, "file") else { continue };
        let text = stable(&IcProviderFile::from_provider(&provider));
        let back = from_text::<IcProviderFile>(&text).unwrap().to_provider("file").unwrap();
        assert_eq!(back, provider);
        k += 1;
    }
}

#[test]
fn builtin_provider_file_has_expected_keys() {
    let text = to_text(&IcProviderFile::from_provider(&ICProvider::builtin_d5()));
    for key in ["\"D\": 5", "\"I2\"", "\"I4\"", "\"I6\"", "\"I10\""] {
        assert!(text.contains(key), "{key}");
    }
}

#[test]
fn malformed_files_are_rejected() {
    assert!(from_text::<PolynomialFile>(r#"{"vars": ["x"], "terms": [{"e": [1], "c": "0.5"}]}"#).unwrap().to_poly().is_err());
    assert!(from_text::<PolynomialFile>(r#"{"vars": ["x"], "terms": [{"e": [1, 2], "c": "1"}]}"#).unwrap().to_poly().is_err());
    assert!(from_text::<PolynomialFile>(r#"{"vars": ["x", "x"], "terms": []}"#).unwrap().to_poly().is_err());
    assert!(from_text::<QfFile>(r#"{"vars": [], "gram": ["1", "2", "3"]}"#).unwrap().to_form().is_err());
    assert!(from_text::<CurveFile>(r#"{"field": "r", "coeffs": ["1","1","1","1","1","1","1"]}"#).map(|f| Curve::from_file(&f)).unwrap().is_err());
    assert!(from_text::<CurveFile>("{").is_err());
}
