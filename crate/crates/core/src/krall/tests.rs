use super::*;
use crate::dops::catalog;
use crate::families::{explicit_poly, sample_specs};
use crate::opalg::DifferenceOperator;
use crate::rational::rat;

fn charlier_k2() -> KrallConstruction {
    let p = NamedParams {
        k: 2,
        a: int(1),
        ..Default::default()
    };
    named(Theorem::Charlier, &p, 10).unwrap().construction
}

#[test]
fn charlier_k2_a1_values() {
    let kc = charlier_k2();
    // P2 = c_2^{-1}(x - 1) from the explicit sum
    let c2 = explicit_poly(&FamilySpec::charlier(int(-1)).unwrap(), 2).unwrap();
    let p2 = c2.shift(&int(-1));
    assert_eq!(kc.p2.as_ref(), Some(&p2));
    assert_eq!(p2, Polynomial::new(vec![rat(1, 2), rat(-1, 2), rat(1, 2)]));
    for n in 1..=8 {
        assert_eq!(kc.gamma(n).unwrap(), rat(n * n - n + 1, 2));
    }
    assert_eq!(kc.beta(1).unwrap(), int(3));
    assert_eq!(kc.q(1).unwrap(), Polynomial::from_ints(&[2, 1]));
    assert_eq!(kc.lambda(0).unwrap(), rat(-1, 6));
    assert_eq!(kc.lambda0, rat(-1, 6));
    assert_eq!(kc.lambda(1).unwrap(), rat(1, 3));
    let rep = verify_eigen(&kc, 10);
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.order, Some(6));
    assert_eq!(rep.genre, Some((-3, 3)));
}

#[test]
fn type1_sequences_telescope() {
    let kc = charlier_k2();
    for n in 1..=10 {
        assert_eq!(
            kc.lambda(n).unwrap() - kc.lambda(n - 1).unwrap(),
            kc.gamma(n).unwrap()
        );
    }
}

#[test]
fn n_zero_eigenvalue_is_constant_image() {
    let kc = charlier_k2();
    let img = kc.dq.as_ref().unwrap().apply(&Polynomial::one());
    assert_eq!(img, Polynomial::constant(kc.lambda0.clone()));
}

#[test]
fn constant_p2_degenerates() {
    for spec in sample_specs() {
        if spec.theta_step().is_none() {
            continue;
        }
        let Ok(dops) = catalog(&spec) else { continue };
        for dop in dops.into_iter().filter(|d| d.kind == DKind::Type1) {
            let kc = construct_type1(&spec, &dop, &Polynomial::one(), 8).unwrap();
            for n in 1..=8 {
                assert_eq!(kc.gamma(n).unwrap(), int(1));
                assert_eq!(kc.beta(n).unwrap(), dop.eps(n).unwrap());
                assert_eq!(kc.lambda(n).unwrap(), &kc.lambda0 + int(n));
            }
            let rep = verify_eigen(&kc, 8);
            assert!(rep.failures.is_empty(), "{} {:?}", dop.label, rep.failures);
            assert_eq!(rep.order, Some(2));
        }
    }
}

#[test]
fn type1_rejects_bad_inputs() {
    let spec = FamilySpec::hahn(rat(7, 2), rat(5, 2), rat(1, 3)).unwrap();
    let dop = catalog(&spec).unwrap().remove(0);
    assert!(matches!(
        construct_type1(&spec, &dop, &Polynomial::one(), 4),
        Err(Error::WrongConstruction(_))
    ));
    let ch = FamilySpec::charlier(int(1)).unwrap();
    let dop = catalog(&ch).unwrap().remove(0);
    // P2 = x + 3 vanishes at theta_2 = -3
    let err = construct_type1(&ch, &dop, &Polynomial::from_ints(&[3, 1]), 5).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { n: 4, .. }), "{err:?}");
}

#[test]
fn hahn_k1_type2() {
    let (alpha, c, big_n) = (rat(7, 2), rat(5, 2), rat(1, 3));
    let spec = FamilySpec::hahn(alpha.clone(), c.clone(), big_n.clone()).unwrap();
    let w = [int(0), int(1)];
    for dop in catalog(&spec).unwrap() {
        let kc = construct_type2(&spec, &dop, &w, 8).unwrap();
        for n in 1..=8i64 {
            let nn = int(n);
            let expected = &nn * (-&nn - &alpha - &c + &big_n + int(2));
            assert_eq!(kc.gamma(n).unwrap(), expected);
            assert_eq!(
                kc.lambda(n).unwrap() - kc.lambda(n - 1).unwrap(),
                spec.sigma(n).unwrap() * kc.gamma(n).unwrap()
            );
        }
        for n in 0..8i64 {
            assert_eq!(
                kc.lambda(n + 1).unwrap() + kc.lambda(n).unwrap(),
                kc.p1.as_ref().unwrap().eval(&spec.theta(n).unwrap())
            );
        }
        let rep = verify_eigen(&kc, 8);
        assert!(rep.passed(), "{} {rep:?}", dop.label);
        assert_eq!(rep.genre, Some((-2, 2)));
    }
}

#[test]
fn jacobi_k1_type2() {
    let spec = FamilySpec::jacobi(rat(1, 2), rat(2, 3)).unwrap();
    for dop in catalog(&spec).unwrap() {
        let kc = construct_type2(&spec, &dop, &[int(0), int(1)], 8).unwrap();
        let rep = verify_eigen(&kc, 8);
        assert!(rep.passed(), "{} {rep:?}", dop.label);
        assert_eq!(rep.order, Some(4));
    }
}

#[test]
fn type2_requires_positive_degree() {
    let spec = FamilySpec::hahn(rat(7, 2), rat(5, 2), rat(1, 3)).unwrap();
    let dop = catalog(&spec).unwrap().remove(0);
    assert!(matches!(
        construct_type2(&spec, &dop, &[int(3)], 4),
        Err(Error::WrongConstruction(_))
    ));
    assert!(matches!(
        construct_type2(&spec, &dop, &[int(3), int(0)], 4),
        Err(Error::WrongConstruction(_))
    ));
    let ch = FamilySpec::charlier(int(1)).unwrap();
    let chdop = catalog(&ch).unwrap().remove(0);
    assert!(construct_type2(&ch, &chdop, &[int(0), int(1)], 4).is_err());
}

#[test]
fn generalized_operator_cases() {
    let kc = charlier_k2();
    let (op, p1g) = generalized_operator(&kc, &Polynomial::one()).unwrap();
    assert_eq!(Some(&op), kc.dq.as_ref());
    assert_eq!(Some(&p1g), kc.p1.as_ref());

    let ch = FamilySpec::charlier(int(1)).unwrap();
    let dop = catalog(&ch).unwrap().remove(0);
    let p2 = Polynomial::new(vec![rat(1, 2), int(1)]);
    let kc = construct_type1(&ch, &dop, &p2, 6).unwrap();
    let (op, p1g) = generalized_operator(&kc, &Polynomial::x()).unwrap();
    assert_eq!(p1g.degree(), Some(3));
    for n in 0..=6 {
        let q = kc.q(n).unwrap();
        assert_eq!(op.apply(&q), q.scale(&p1g.eval(&ch.theta(n as i64).unwrap())));
    }

    let spec = FamilySpec::jacobi(rat(1, 2), rat(2, 3)).unwrap();
    let dop = catalog(&spec).unwrap().remove(0);
    let t2 = construct_type2(&spec, &dop, &[int(0), int(1)], 4).unwrap();
    assert!(matches!(
        generalized_operator(&t2, &Polynomial::x()),
        Err(Error::Unsupported(_))
    ));
}

fn sample_params() -> Vec<(Theorem, NamedParams)> {
    let d = NamedParams::default;
    vec![
        (Theorem::Charlier, NamedParams { k: 2, a: int(1), ..d() }),
        (Theorem::Meixner1, NamedParams { k: 2, a: rat(1, 2), c: rat(7, 2), ..d() }),
        (Theorem::Meixner2, NamedParams { k: 2, a: rat(1, 2), c: rat(7, 2), ..d() }),
        (Theorem::Krawtchouk, NamedParams { k: 2, a: rat(1, 2), big_n: rat(15, 2), ..d() }),
        (
            Theorem::Hahn1,
            NamedParams { k: 2, alpha: rat(7, 2), c: rat(11, 2), big_n: rat(1, 3), ..d() },
        ),
        (
            Theorem::Hahn2,
            NamedParams { k: 2, alpha: rat(7, 2), c: rat(11, 2), big_n: rat(1, 3), ..d() },
        ),
        (Theorem::Laguerre, NamedParams { alpha: int(2), mass: int(1), ..d() }),
        (Theorem::Jacobi, NamedParams { alpha: rat(1, 2), beta: int(2), mass: int(1), ..d() }),
    ]
}

#[test]
fn named_constructions_verify() {
    for (t, p) in sample_params() {
        let nc = named(t, &p, 10).unwrap_or_else(|e| panic!("{t}: {e}"));
        let rep = verify_eigen(&nc.construction, 10);
        assert!(rep.passed(), "{t}: {rep:?}");
        assert!(nc.ranges.iter().any(|(_, ok)| *ok), "{t}");
    }
}

#[test]
fn perturbed_beta_fails_at_one() {
    let kc = charlier_k2();
    let b = kc.beta.clone();
    let bad = kc.with_beta(Arc::new(move |n| {
        let v = b(n)?;
        Ok(if n == 1 { v + int(1) } else { v })
    }));
    let rep = verify_eigen(&bad, 6);
    assert!(!rep.passed());
    assert_eq!(rep.failures.iter().map(|f| f.n).collect::<Vec<_>>(), vec![1]);
}

#[test]
fn hahn1_hypothesis_is_reported() {
    // with k = 1, P2 = h*_{1,1} is linear; pick N so that it vanishes at a theta_(n-1)
    let mut seen = false;
    'outer: for ai in 1..12 {
        for ci in 1..12 {
            for ni in -12..12 {
                let p = NamedParams {
                    k: 1,
                    alpha: rat(2 * ai + 1, 2),
                    c: rat(2 * ci + 1, 2),
                    big_n: rat(ni, 3),
                    ..Default::default()
                };
                if let Err(Error::Hypothesis { theorem, n, .. }) = named(Theorem::Hahn1, &p, 10) {
                    assert_eq!(theorem, "hahn1");
                    assert!((1..=11).contains(&n));
                    seen = true;
                    break 'outer;
                }
            }
        }
    }
    assert!(seen);
}

#[test]
fn hahn_parameter_exclusions() {
    let p = NamedParams {
        k: 2,
        alpha: rat(7, 2),
        c: int(3),
        big_n: rat(1, 3),
        ..Default::default()
    };
    assert!(named(Theorem::Hahn1, &p, 4).is_err());
}

#[test]
fn meixner1_nabla_fails() {
    let p = NamedParams {
        k: 2,
        a: rat(1, 2),
        c: rat(7, 2),
        ..Default::default()
    };
    let nc = named(Theorem::Meixner1, &p, 8).unwrap();
    let kc = &nc.construction;
    let a = &p.a;
    let nabla = Operator::Difference(DifferenceOperator::nabla().scale(&(a / (Rational::one() - a))));
    let mut dop = kc.dop.clone();
    dop.closed_form = nabla;
    let literal = construct_type1_with_p1(&kc.family, &dop, kc.p1.as_ref().unwrap(), 8).unwrap();
    assert!(!verify_eigen(&literal, 8).failures.is_empty());
    assert!(verify_eigen(kc, 8).passed());
}

#[test]
fn krawtchouk_extra_factor_fails() {
    let p = NamedParams {
        k: 2,
        a: rat(1, 2),
        big_n: rat(15, 2),
        ..Default::default()
    };
    let kc = named(Theorem::Krawtchouk, &p, 8).unwrap().construction;
    let b = kc.beta.clone();
    let with_n = kc.with_beta(Arc::new(move |n| Ok(b(n)? * int(n))));
    let rep = verify_eigen(&with_n, 8);
    assert!(!rep.passed());
    assert!(rep.failures.iter().all(|f| f.n >= 2));
}

#[test]
fn meixner_rejects_excluded_c() {
    let p = NamedParams {
        k: 2,
        a: rat(1, 2),
        c: int(3),
        ..Default::default()
    };
    assert!(matches!(
        named(Theorem::Meixner1, &p, 4),
        Err(Error::Inadmissible { .. })
    ));
}

#[test]
fn laguerre_concordance() {
    for ai in 1..=3i64 {
        let alpha = int(ai);
        let p = NamedParams {
            alpha: alpha.clone(),
            mass: rat(3, 2),
            ..Default::default()
        };
        let kc = named(Theorem::Laguerre, &p, 10).unwrap().construction;
        let m = laguerre_mass_from_m(&alpha, &Rational::one()).map(|k1| &p.mass / k1).unwrap();
        for n in 0..=10i64 {
            let prod: Rational = (0..=ai).map(|i| int(n + i)).product();
            let expected = int(n) + &m / (&alpha + int(1)) * prod;
            assert_eq!(kc.lambda(n).unwrap(), expected);
        }
        // gamma_n from the mass formula
        for n in 1..=10i64 {
            let g = Rational::one()
                + &p.mass * pochhammer(&(&alpha + int(1)), (n - 1) as usize) / factorial((n - 1) as usize);
            assert_eq!(kc.gamma(n).unwrap(), g);
            assert_eq!(kc.beta(n).unwrap(), -kc.gamma(n + 1).unwrap() / kc.gamma(n).unwrap());
        }
        assert!(verify_eigen(&kc, 10).passed());
    }
}

#[test]
fn jacobi_concordance() {
    let alpha = rat(1, 2);
    for bi in 1..=2i64 {
        let beta = int(bi);
        let p = NamedParams {
            alpha: alpha.clone(),
            beta: beta.clone(),
            mass: rat(2, 3),
            ..Default::default()
        };
        let kc = named(Theorem::Jacobi, &p, 10).unwrap().construction;
        let m = &p.mass / jacobi_mass_from_m(&alpha, &beta, &Rational::one()).unwrap();
        let b = bi as usize;
        for n in 0..=10i64 {
            let nn = int(n);
            let inner = &nn
                + &m * pochhammer(&(&nn + &alpha), b)
                    * pochhammer(&nn, b)
                    * (Rational::one() + (&nn - int(1)) / (&beta + int(1)));
            let expected = (&nn + &alpha + &beta) * inner + &alpha * &beta;
            assert_eq!(kc.lambda(n).unwrap(), expected, "beta={bi} n={n}");
        }
        for n in 1..=10i64 {
            let m1 = (n - 1) as usize;
            let one = Rational::one();
            let g = &one
                + &p.mass * pochhammer(&(&alpha + &beta + &one), m1) * pochhammer(&(&beta + &one), m1)
                    / (pochhammer(&(&alpha + &one), m1) * factorial(m1));
            assert_eq!(kc.gamma(n).unwrap(), g);
        }
        assert!(verify_eigen(&kc, 10).passed());
    }
}

#[test]
fn non_integer_masses_are_sequence_only() {
    let p = NamedParams {
        alpha: rat(1, 2),
        mass: int(1),
        ..Default::default()
    };
    let kc = named(Theorem::Laguerre, &p, 6).unwrap().construction;
    assert!(kc.dq.is_none());
    assert_eq!(kc.lambda(0).unwrap(), int(0));
    for n in 1..=6 {
        assert_eq!(kc.lambda(n).unwrap() - kc.lambda(n - 1).unwrap(), kc.gamma(n).unwrap());
    }
    assert!(!verify_eigen(&kc, 3).passed());
    let p = NamedParams {
        alpha: rat(1, 2),
        beta: rat(3, 2),
        mass: int(1),
        ..Default::default()
    };
    let kc = named(Theorem::Jacobi, &p, 6).unwrap().construction;
    assert!(kc.dq.is_none());
    for n in 1..=6 {
        assert_eq!(
            kc.lambda(n).unwrap() - kc.lambda(n - 1).unwrap(),
            kc.family.sigma(n).unwrap() * kc.gamma(n).unwrap()
        );
    }
}

#[test]
fn mass_conversions() {
    assert_eq!(laguerre_mass_from_m(&int(3), &int(2)).unwrap(), int(12));
    assert!(laguerre_mass_from_m(&rat(1, 2), &int(2)).is_err());
    // beta = 2, alpha = 1/2: 2! (3/2)(5/2) = 15/2
    assert_eq!(jacobi_mass_from_m(&rat(1, 2), &int(2), &int(1)).unwrap(), rat(15, 2));
}

#[test]
fn bands() {
    let kc = charlier_k2();
    let one = band_profile(&kc, &Polynomial::one(), 8).unwrap();
    assert!(one.rows.iter().all(|r| r.offsets == vec![0]));

    let lag = named(
        Theorem::Laguerre,
        &NamedParams { alpha: int(1), mass: int(1), ..Default::default() },
        12,
    )
    .unwrap()
    .construction;
    let rep = band_profile(&lag, &Polynomial::x().pow(2), 10).unwrap();
    assert!(rep.rows[4..].iter().all(|r| r.offsets.iter().all(|j| (-2..=2).contains(j))));
    assert_eq!(rep.span(), Some((-2, 2)));

    let jac = named(
        Theorem::Jacobi,
        &NamedParams { alpha: rat(1, 2), beta: int(2), mass: int(1), ..Default::default() },
        12,
    )
    .unwrap()
    .construction;
    let rep = band_profile(&jac, &Polynomial::from_ints(&[1, 1]).pow(3), 8).unwrap();
    assert!(rep.within(-3, 3));
}

#[test]
fn charlier_extreme_shift_coefficients() {
    for k in 1..=3usize {
        for a in [int(1), rat(1, 2), int(3)] {
            let p = NamedParams {
                k,
                a: a.clone(),
                ..Default::default()
            };
            let kc = match named(Theorem::Charlier, &p, 4) {
                Ok(nc) => nc.construction,
                Err(Error::Hypothesis { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let (u1, u2) = (
                kc.p1.as_ref().unwrap().leading(),
                kc.p2.as_ref().unwrap().leading(),
            );
            let (low, high) = extreme_coefficients(&kc).unwrap();
            let mut expected_low = Polynomial::new(vec![-u2.clone(), u1.clone()]);
            for i in 1..=k as i64 {
                expected_low = &expected_low * &Polynomial::from_ints(&[-i, 1]);
            }
            assert_eq!(low, expected_low, "k={k}");
            assert_eq!(high, Polynomial::constant(&u1 * crate::rational::powi(&a, k as i64 + 1)));
        }
    }
}

#[test]
fn theorem_names_roundtrip() {
    for t in Theorem::ALL {
        assert_eq!(Theorem::parse(t.name()), Some(t));
    }
    assert_eq!(Theorem::parse("legendre"), None);
}

#[test]
fn json_has_tables() {
    let kc = charlier_k2();
    let v = kc.to_json(3).unwrap();
    assert_eq!(v["table"].as_array().unwrap().len(), 4);
    assert_eq!(v["table"][1]["beta"], "3/1");
    assert_eq!(v["lambda0"], "-1/6");
    let op = Operator::from_json(&serde_json::to_string(&v["dq"]).unwrap()).unwrap();
    assert_eq!(Some(&op), kc.dq.as_ref());
}

#[test]
fn lambda_scalar_matches() {
    let kc = charlier_k2();
    let s = lambda_scalar(&kc, 2).unwrap();
    let q = kc.q(2).unwrap();
    assert_eq!(s.apply(&q), kc.dq.as_ref().unwrap().apply(&q));
}
