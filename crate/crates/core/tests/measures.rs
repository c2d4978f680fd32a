//! Orthogonality statements checked through moment functionals.

mod common;

use common::*;
use krall::dops::catalog;
use krall::error::Error;
use krall::families::FamilySpec;
use krall::krall::{construct_type1, named, NamedParams, Theorem};
use krall::moments::{
    self, casorati, gram_check, ip_lemma_check, occ_form, orthoseq, Base, IpKind, IpParams, MomentFunctional,
};
use krall::poly::{expand_in_basis, Polynomial};
use krall::rational::{int, pochhammer, rat, Rational};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn addel_on_discrete_measure() {
    // nu on 9 points, mu = (x - lambda) nu, p_n orthogonal for mu
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let points: Vec<(Rational, Rational)> = (0..9)
        .map(|i| (rat(2 * i - 5, 3), rat(1 + (i * i) % 7, 1 + i % 3)))
        .collect();
    for _ in 0..3 {
        let lambda = small_rational(&mut rng, 9, 5) + rat(1, 7);
        let m = small_rational(&mut rng, 4, 3) + rat(1, 11);
        let nu = MomentFunctional::new(Base::Discrete(points.clone()));
        let mu = nu.clone().christoffel(Polynomial::linear(-lambda.clone()));
        let ps = orthoseq(&mu, 7).unwrap();
        let alpha: Vec<Rational> = ps.iter().map(|p| nu.pairing(p).unwrap()).collect();
        let mut qs = vec![ps[0].clone()];
        for n in 1..=7 {
            let num = &alpha[n] + &m * ps[n].eval(&lambda);
            let den = &alpha[n - 1] + &m * ps[n - 1].eval(&lambda);
            assert!(!den.is_zero());
            qs.push(&ps[n] + &ps[n - 1].scale(&(-num / den)));
        }
        let target = nu.clone().add_delta(lambda.clone(), m.clone());
        let rep = gram_check(&target, &qs, 7);
        assert!(rep.passed(), "{rep:?}");
        // and the untouched p_n are not orthogonal for the target
        assert!(!gram_check(&target, &ps, 7).passed());
    }
}

fn first_zero_theta(f: &MomentFunctional, nmax: usize) -> Option<usize> {
    match orthoseq(f, nmax) {
        Ok(_) => None,
        Err(Error::NoOps(n)) => Some(n),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn christoffel_criterion_matches_casorati() {
    // Theta_n of the transformed functional vanishes exactly when the
    // Casorati determinant at level n + 1 does
    let mut seen_zero = false;
    for k in 1..=3usize {
        for a in [int(1), int(2), int(3), rat(1, 2), int(-1), int(-2), rat(5, 2)] {
            let spec = FamilySpec::charlier(a.clone()).unwrap();
            let nmax = 8;
            let dets: Vec<Rational> = (0..=nmax + 1).map(|n| casorati(&spec, k, n).unwrap().0).collect();
            assert!(!dets[0].is_zero());
            let first_det_zero = dets.iter().position(|d| d.is_zero());
            let f = moments::charlier_tilde(k, &a).unwrap();
            let theta_zero = first_zero_theta(&f, nmax);
            assert_eq!(theta_zero.map(|n| n + 1), first_det_zero, "k={k} a={a}");
            seen_zero |= theta_zero.is_some();
        }
    }
    assert!(seen_zero);
}

#[test]
fn christoffel_negative_control() {
    // c_1^{-2}(-2) = 0: the transformed Charlier functional for (k, a) = (1, 2)
    // loses its orthogonal polynomials
    let c1 = FamilySpec::charlier(int(-2)).unwrap().poly(1).unwrap();
    assert!(c1.eval(&int(-2)).is_zero());
    let spec = FamilySpec::charlier(int(2)).unwrap();
    assert!(casorati(&spec, 1, 2).unwrap().0.is_zero());
    assert_eq!(first_zero_theta(&moments::charlier_tilde(1, &int(2)).unwrap(), 6), Some(1));
    assert!(matches!(
        named(Theorem::Charlier, &NamedParams { k: 1, a: int(2), ..Default::default() }, 6),
        Err(Error::Hypothesis { n: 2, .. })
    ));
}

#[test]
fn casorati_grid() {
    for a in [int(1), rat(1, 2), int(3)] {
        let spec = FamilySpec::charlier(a).unwrap();
        for k in 1..=4 {
            for n in 0..=8 {
                let (lhs, rhs) = casorati(&spec, k, n).unwrap();
                assert_eq!(lhs, rhs, "k={k} n={n}");
            }
        }
    }
}

#[test]
fn even_k_positive_a_never_vanishes() {
    for (a, k) in [(int(1), 2usize), (int(3), 2), (rat(1, 2), 4)] {
        let dual = FamilySpec::charlier(-a).unwrap().poly(k).unwrap();
        for n in 1..=50 {
            assert!(!dual.eval(&int(-n)).is_zero(), "k={k} n={n}");
        }
    }
}

#[test]
fn orthoseq_recovers_charlier_construction() {
    let f = moments::charlier_tilde(2, &int(1)).unwrap();
    let ps = orthoseq(&f, 6).unwrap();
    let kc = named(Theorem::Charlier, &NamedParams { k: 2, a: int(1), ..Default::default() }, 6)
        .unwrap()
        .construction;
    for n in 0..=6 {
        let q = kc.q(n).unwrap();
        assert_eq!(ps[n], q.scale(&q.leading().recip()), "n={n}");
    }
}

#[test]
fn untransformed_basis_is_not_orthogonal() {
    let f = moments::charlier_tilde(2, &int(1)).unwrap();
    let ps = FamilySpec::charlier(int(1)).unwrap().polys(6).unwrap();
    assert!(!gram_check(&f, &ps, 6).off_diagonal.is_empty());
}

#[test]
fn favard_three_term() {
    let fs = [
        moments::charlier_tilde(2, &int(1)).unwrap(),
        moments::laguerre_tilde(&rat(1, 2), &int(1)).unwrap(),
        moments::jacobi_tilde(&rat(1, 2), &int(2), &int(1)).unwrap(),
    ];
    for f in fs {
        let ps = orthoseq(&f, 8).unwrap();
        for n in 1..8 {
            let c = expand_in_basis(&(&Polynomial::x() * &ps[n]), &ps[..=n + 1]).unwrap();
            for (j, v) in c.iter().enumerate() {
                if j + 1 < n {
                    assert!(v.is_zero());
                }
            }
            assert!(!c[n - 1].is_zero());
            assert_eq!(c[n + 1], int(1));
        }
    }
}

#[test]
fn shifted_measure_orthogonality() {
    for spec in [
        FamilySpec::charlier(rat(3, 2)).unwrap(),
        FamilySpec::meixner(rat(1, 3), rat(5, 2)).unwrap(),
        FamilySpec::laguerre(rat(1, 2)).unwrap(),
    ] {
        for lambda in [int(3), rat(-5, 4)] {
            let f = MomentFunctional::family(spec.clone()).shift(lambda.clone());
            let ps: Vec<Polynomial> = spec.polys(6).unwrap().iter().map(|p| p.shift(&lambda)).collect();
            assert!(gram_check(&f, &ps, 6).passed());
        }
    }
}

#[test]
fn inner_product_lemmas() {
    let cases = [
        (IpKind::Chxx, IpParams { k: 2, a: int(1), c: int(0), alpha: int(0), big_n: int(0) }),
        (IpKind::Chxx, IpParams { k: 3, a: rat(1, 2), c: int(0), alpha: int(0), big_n: int(0) }),
        (IpKind::Lme1x, IpParams { k: 2, a: rat(1, 2), c: rat(7, 2), alpha: int(0), big_n: int(0) }),
        (IpKind::MeixnerII, IpParams { k: 2, a: rat(1, 2), c: rat(7, 2), alpha: int(0), big_n: int(0) }),
        (IpKind::Krawtchouk, IpParams { k: 2, a: rat(1, 2), c: int(0), alpha: int(0), big_n: rat(15, 2) }),
        (IpKind::HahnI, IpParams { k: 2, a: int(0), c: rat(11, 2), alpha: rat(7, 2), big_n: rat(1, 3) }),
        (IpKind::HahnII, IpParams { k: 2, a: int(0), c: rat(11, 2), alpha: rat(7, 2), big_n: rat(1, 3) }),
    ];
    for (kind, p) in cases {
        let rep = ip_lemma_check(kind, &p, 8);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.rows.len(), 9);
    }
}

fn laguerre_q(alpha: &Rational, p2: &Polynomial, nmax: usize) -> Option<Vec<Polynomial>> {
    let spec = FamilySpec::laguerre(alpha.clone()).ok()?;
    let dop = catalog(&spec).ok()?.remove(0);
    construct_type1(&spec, &dop, p2, nmax).ok()?.qs(nmax).ok()
}

#[test]
fn occ_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let nmax = 10usize;
    for alpha in [rat(1, 2), rat(5, 2)] {
        for k in 1..=2usize {
            let mut done = 0;
            while done < 3 {
                let p2 = random_poly(&mut rng, k);
                let Some(qs) = laguerre_q(&alpha, &p2, nmax) else { continue };
                let form = |f: &Polynomial, g: &Polynomial| occ_form(&alpha, &p2, f, g).unwrap();
                for n in 0..=nmax {
                    for j in 0..n {
                        assert!(form(&qs[n], &qs[j]).is_zero(), "(1) n={n} j={j}");
                    }
                    assert!(!form(&qs[n], &qs[n]).is_zero(), "(2) n={n}");
                    let xq = &Polynomial::x().pow(k + 1) * &qs[n];
                    if n >= k + 2 {
                        for j in 0..=n - k - 2 {
                            assert!(form(&xq, &qs[j]).is_zero(), "(3) n={n} j={j}");
                        }
                    }
                }
                let one = Polynomial::one();
                let p1 = p2.eval(&Rational::one());
                if !p1.is_zero() {
                    let kk = int(k as i64);
                    assert_eq!(
                        form(&one, &one),
                        pochhammer(&(&alpha - &kk), k) * p2.eval(&Rational::zero()) / p1
                    );
                }
                done += 1;
            }
        }
    }
}

#[test]
fn occ_branch_with_vanishing_p2_at_one() {
    // P2(1) = 0 switches Q to degree k
    let p2 = Polynomial::from_ints(&[-3, 1, 2]);
    assert!(p2.eval(&Rational::one()).is_zero());
    let alpha = rat(5, 2);
    let (q, vanishes) = moments::occ_q(&alpha, &p2).unwrap();
    assert!(vanishes);
    assert_eq!(q.degree(), Some(2));
    let qs = laguerre_q(&alpha, &p2, 8).unwrap();
    for n in 0..=8 {
        for j in 0..n {
            assert!(occ_form(&alpha, &p2, &qs[n], &qs[j]).unwrap().is_zero());
        }
    }
    assert!(occ_form(&int(2), &p2, &qs[1], &qs[0]).is_err());
}
