use proptest::prelude::*;
use rm5_core::arith::{hilbert_symbol, local_places, rat, Place, Rational, Sqrt5};
use rm5_core::invariants::{ic_weighted_equal, igusa_clebsch_from_sextic, normalize_ic, FieldTag, IgusaClebsch, SexticModel};
use rm5_core::matrix::Matrix;
use rm5_core::mestre::{conic_rational_point, conic_solvability, ConicSolvability};
use rm5_core::moduli::{mn_to_zgh, zgh_to_mn, MNPoint};
use rm5_core::poly::MultiPoly;
use rm5_core::qf_reduce::forms_equivalent_over_q;
use rm5_core::ring::Ring;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=30).prop_map(|(n, d)| rat(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn sqrt5() -> impl Strategy<Value = Sqrt5> {
    (rational(), rational()).prop_map(|(a, b)| Sqrt5::new(a, b))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), rational()), 0..5).prop_map(|ts| {
        let vars = vec!["a".to_string(), "b".to_string()];
        MultiPoly::from_terms(vars, ts.into_iter().map(|((i, j), c)| (vec![i, j], c))).unwrap()
    })
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Coefficients of `f(x + c)`.
fn translate(cs: &[Rational], c: &Rational) -> Vec<Rational> {
    let mut out = vec![rat(0, 1); cs.len()];
    for (i, a) in cs.iter().enumerate() {
        for k in 0..=i {
            out[k] = &out[k] + a * Rational::from_integer(binom(i, k).into()) * c.pow((i - k) as i32);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sqrt5_norm_is_multiplicative(x in sqrt5(), y in sqrt5()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        if !x.is_zero() {
            let inv = x.inv().unwrap();
            prop_assert_eq!(&x * &inv, Sqrt5::one());
        }
    }

    #[test]
    fn poly_display_parses_back(p in poly()) {
        let back = MultiPoly::parse(&p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn poly_exact_division(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        let pq = p.mul(&q);
        prop_assert_eq!(pq.div_exact(&q).unwrap(), p.clone());
        prop_assert!(pq.rem(&q).unwrap().is_zero());
    }

    #[test]
    fn hilbert_symbol_is_symmetric_and_bimultiplicative(a in nonzero(), b in nonzero(), c in nonzero()) {
        for place in local_places([&a, &b, &c]).into_iter().chain([Place::Infinity]) {
            let ab = hilbert_symbol(&a, &b, &place).unwrap();
            prop_assert_eq!(ab, hilbert_symbol(&b, &a, &place).unwrap());
            let ac = hilbert_symbol(&a, &c, &place).unwrap();
            prop_assert_eq!(hilbert_symbol(&a, &(&b * &c), &place).unwrap(), ab * ac);
        }
    }

    #[test]
    fn ic_is_invariant_under_translation(cs in prop::collection::vec(rational(), 6), c in rational()) {
        let mut cs = cs;
        cs.push(rat(1, 1));
        let f = SexticModel::from_slice(&cs).unwrap();
        prop_assume!(!f.discriminant().is_zero());
        let g = SexticModel::from_slice(&translate(&cs, &c)).unwrap();
        let (a, b) = (igusa_clebsch_from_sextic(&f).unwrap(), igusa_clebsch_from_sextic(&g).unwrap());
        prop_assert_eq!(&a, &b);
        prop_assert!(ic_weighted_equal(&a, &b, FieldTag::Rational));
    }

    #[test]
    fn normalization_is_a_class_function(xs in prop::collection::vec(rational(), 4), l in nonzero()) {
        let ic = IgusaClebsch::new(xs[0].clone(), xs[1].clone(), xs[2].clone(), xs[3].clone());
        let n = normalize_ic(&ic);
        prop_assert_eq!(normalize_ic(&n), n.clone());
        prop_assert_eq!(normalize_ic(&ic.weighted_scale(&l)), n);
    }

    #[test]
    fn mn_chart_round_trip(m in rational(), n in rational()) {
        let p = MNPoint::new(m, n);
        if let Ok(back) = zgh_to_mn(&mn_to_zgh(&p)) {
            prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn conic_points_lie_on_the_conic(d in prop::collection::vec(-30i64..=30, 6)) {
        let q = Matrix::from_fn(3, 3, |i, j| {
            let k = match (i.min(j), i.max(j)) { (0, 0) => 0, (0, 1) => 1, (0, 2) => 2, (1, 1) => 3, (1, 2) => 4, _ => 5 };
            rat(d[k], 1)
        });
        prop_assume!(!q.det().is_zero());
        match conic_solvability(&q).unwrap() {
            ConicSolvability::Solvable => {
                let p = conic_rational_point(&q).unwrap();
                prop_assert!(q.quad(&p).is_zero());
                prop_assert!(p.iter().any(|x| !x.is_zero()));
            }
            ConicSolvability::Unsolvable(_) => prop_assert!(conic_rational_point(&q).is_err()),
        }
    }

    #[test]
    fn congruent_forms_are_equivalent(d in prop::collection::vec(nonzero(), 3), t in prop::collection::vec(-4i64..=4, 9)) {
        let q = Matrix::diagonal(&d);
        let t = Matrix::from_fn(3, 3, |i, j| rat(t[3 * i + j], 1));
        prop_assume!(!t.det().is_zero());
        let q2 = q.congruence(&t).scale(&d[0]);
        prop_assert!(forms_equivalent_over_q(&q, &q2).unwrap());
    }
}
