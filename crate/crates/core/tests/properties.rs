use num_rational::BigRational;
use proptest::prelude::*;

use nodal_sextic::algebra::{rat, rat_frac, sylvester_resultant, Monomial, QMatrix, QPoly, Rationals, VarSet};
use nodal_sextic::parse::parse_poly;
use nodal_sextic::pipeline::{run_construct, RunConfig, Stage};
use nodal_sextic::surface::{apply_point_transform, x_vars, PointTransform, SexticSurface};

fn poly(vars: VarSet, terms: Vec<(Vec<u32>, i64, i64)>) -> QPoly {
    QPoly::from_terms(
        vars,
        Rationals,
        terms.into_iter().map(|(e, n, d)| (Monomial::from_exponents(&e), rat_frac(n, d))),
    )
}

fn small_poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -9i64..=9, 1i64..=4), 0..=max_terms)
        .prop_map(move |terms| poly(VarSet::indexed("x", nvars), terms))
}

fn homogeneous(nvars: usize, degree: u32, max_terms: usize) -> impl Strategy<Value = QPoly> {
    let monomials = nodal_sextic::algebra::monomials_of_degree(nvars, degree);
    prop::collection::vec((0..monomials.len(), -5i64..=5), 1..=max_terms).prop_map(move |picks| {
        QPoly::from_terms(
            VarSet::indexed("x", nvars),
            Rationals,
            picks.into_iter().map(|(i, c)| (monomials[i].clone(), rat(c))),
        )
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(3, 3, 5), b in small_poly(3, 3, 5), c in small_poly(3, 3, 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn degree_is_additive(a in small_poly(3, 4, 6), b in small_poly(3, 4, 6)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (da, db) = (a.total_degree().unwrap(), b.total_degree().unwrap());
        prop_assert_eq!((&a * &b).total_degree(), Some(da + db));
    }

    #[test]
    fn resultant_is_multiplicative(
        a in prop::collection::vec(-3i64..=3, 2),
        b in prop::collection::vec(-3i64..=3, 3),
        c in prop::collection::vec(-3i64..=3, 3),
        shift in -2i64..=2,
    ) {
        // monic in T (variable 0), coefficients involving the parameter s
        let vars = VarSet::new(["T", "s"]);
        let build = |coeffs: &[i64]| {
            let n = coeffs.len() as u32;
            let mut terms = vec![(vec![n, 0], 1, 1)];
            for (k, &x) in coeffs.iter().enumerate() {
                terms.push((vec![k as u32, 0], x, 1));
                terms.push((vec![k as u32, 1], x + shift, 1));
            }
            poly(vars.clone(), terms)
        };
        let (a, b, c) = (build(&a), build(&b), build(&c));
        let lhs = sylvester_resultant(&(&a * &b), &c, 0).unwrap();
        let rhs = &sylvester_resultant(&a, &c, 0).unwrap() * &sylvester_resultant(&b, &c, 0).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transforms_act_on_the_right(
        s in homogeneous(4, 6, 3),
        m in prop::collection::vec(-2i64..=2, 16),
        n in prop::collection::vec(-2i64..=2, 16),
    ) {
        let to_transform = |v: &[i64]| {
            PointTransform::new(v.chunks(4).map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
        };
        let (Ok(m), Ok(n)) = (to_transform(&m), to_transform(&n)) else {
            return Err(TestCaseError::reject("singular matrix"));
        };
        prop_assume!(!s.is_zero());
        let surface = SexticSurface::new(s.rename(x_vars())).unwrap();
        let stepwise = apply_point_transform(&apply_point_transform(&surface, &m), &n);
        let at_once = apply_point_transform(&surface, &m.compose(&n));
        prop_assert_eq!(stepwise.poly, at_once.poly);
    }

    #[test]
    fn modular_nullity_matches_rational(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 1..=6), 1..=6)) {
        let cols = rows.iter().map(Vec::len).min().unwrap();
        let rows: Vec<Vec<BigRational>> = rows.iter().map(|r| r[..cols].iter().map(|&x| rat(x)).collect()).collect();
        let m = QMatrix::from_rows(rows, cols);
        // every minor is below 6! * 5^6 < p, so no prime can drop the rank
        let nullity = m.nullspace().len();
        prop_assert_eq!(m.nullity_mod_p(1_000_000_007), nullity);
        prop_assert_eq!(m.nullity_mod_p(998_244_353), nullity);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_parse_round_trip(p in small_poly(4, 6, 8)) {
        let p = p.rename(x_vars());
        prop_assert_eq!(parse_poly(&p.to_string(), &x_vars()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn constructed_sextics_are_even(f in homogeneous(3, 4, 15)) {
        let text = f.rename(VarSet::indexed("z", 3)).to_string();
        let mut cfg = RunConfig::for_quartic(&text);
        cfg.fields.clear();
        let report = match run_construct(&cfg) {
            Ok(r) => r,
            Err(e) if e.stage == Stage::Smoothness => return Err(TestCaseError::reject("singular quartic")),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let surface = parse_poly(report.surface.as_deref().unwrap(), &x_vars()).unwrap();
        prop_assert!(surface.terms().all(|(m, _)| m.exponent(3) % 2 == 0));
        let flip = PointTransform::diagonal([1, 1, 1, -1]).unwrap();
        let flipped = apply_point_transform(&SexticSurface::new(surface.clone()).unwrap(), &flip);
        prop_assert_eq!(flipped.poly, surface);
    }
}

#[test]
fn evenness_on_named_quartics() {
    for text in [
        "z0*z1^3 + z1*z2^3 + z2*z0^3",
        "z0^4 + z1^4 + z2^4",
        "z0^4 + z1^4 + z2^4 + z0^2*z1*z2",
        "z0^4 + 2*z1^4 + 3*z2^4 - z0*z1*z2^2",
        "z0^3*z1 + z1^3*z2 + z2^3*z0 + z0^2*z2^2",
    ] {
        let mut cfg = RunConfig::for_quartic(text);
        cfg.fields.clear();
        let report = run_construct(&cfg).unwrap_or_else(|e| panic!("{text}: {e}"));
        let surface = parse_poly(report.surface.as_deref().unwrap(), &x_vars()).unwrap();
        assert!(surface.terms().all(|(m, _)| m.exponent(3) % 2 == 0), "{text}");
    }
}
