use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::combinatorics::binomial;
use crate::error::Error;
use crate::exactla::FieldSpec;
use crate::poly::{Monomial, Poly};
use crate::random;

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

fn one(n: usize) -> Monomial {
    Monomial::one(n)
}

fn t(n: usize, i: usize) -> Monomial {
    Monomial::variable(n, i)
}

fn mono(e: &[i32]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn bar(n: usize, terms: &[(i64, Vec<Monomial>)]) -> BarElement {
    let q_deg = terms[0].1.len() - 2;
    BarElement::from_words(
        n,
        q(),
        q_deg,
        terms
            .iter()
            .map(|(c, w)| TensorWord::new(q().from_i64(*c), w.clone())),
    )
    .unwrap()
}

fn chain(n: usize, field: FieldSpec, terms: &[(i64, Vec<Monomial>)]) -> ChainElement {
    let q_deg = terms[0].1.len() - 1;
    ChainElement::from_words(
        n,
        field,
        q_deg,
        terms
            .iter()
            .map(|(c, w)| TensorWord::new(field.from_i64(*c), w.clone())),
    )
    .unwrap()
}

#[test]
fn bar_differential_examples() {
    let x = bar(1, &[(1, vec![one(1), t(1, 0), one(1)])]);
    let expected = bar(
        1,
        &[(1, vec![t(1, 0), one(1)]), (-1, vec![one(1), t(1, 0)])],
    );
    assert_eq!(bar_differential(&x).unwrap(), expected);

    // two faces on B_1 cancel; three alternating faces on B_2 leave one
    let ones = bar(1, &[(1, vec![one(1), one(1), one(1)])]);
    assert!(bar_differential(&ones).unwrap().is_zero());
    let ones = bar(1, &[(1, vec![one(1); 4])]);
    assert_eq!(
        bar_differential(&ones).unwrap(),
        bar(1, &[(1, vec![one(1); 3])])
    );

    let b0 = bar(1, &[(1, vec![one(1), one(1)])]);
    assert_eq!(bar_differential(&b0), Err(Error::DegreeTooLow(0)));
}

#[test]
fn bar_differential_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        for qd in 2..=4 {
            let x = random::bar(&mut rng, n, q(), qd, 3, 4);
            let dd = bar_differential(&bar_differential(&x).unwrap()).unwrap();
            assert!(dd.is_zero(), "n={n} q={qd}: {dd}");
        }
    }
}

#[test]
fn splitting_examples() {
    let x = bar(2, &[(1, vec![t(2, 0), t(2, 1)])]);
    let expected = bar(2, &[(1, vec![t(2, 0), t(2, 1), one(2)])]);
    assert_eq!(bar_splitting(&x), expected);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let x = random::bar(&mut rng, 2, q(), 2, 3, 3);
        let a = random::poly(&mut rng, 2, q(), 2, 3);
        let lhs = bar_splitting(&act_first_slot(&a, &x).unwrap());
        let rhs = act_first_slot(&a, &bar_splitting(&x)).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn contracting_homotopy_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=2 {
        // B_0: ∂h + section∘augmentation = id
        let x = random::bar(&mut rng, n, q(), 0, 3, 4);
        let lhs = bar_differential(&contracting_homotopy(&x))
            .unwrap()
            .try_add(&unit_section(&augmentation(&x).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, x);
        // A: augmentation∘section = id
        let a = random::poly(&mut rng, n, q(), 3, 4);
        assert_eq!(augmentation(&unit_section(&a).unwrap()).unwrap(), a);
        for qd in 1..=3 {
            let x = random::bar(&mut rng, n, q(), qd, 3, 4);
            let lhs = bar_differential(&contracting_homotopy(&x))
                .unwrap()
                .try_add(&contracting_homotopy(&bar_differential(&x).unwrap()))
                .unwrap();
            assert_eq!(lhs, x, "n={n} q={qd}");
        }
    }
}

#[test]
fn tilde_d_examples() {
    let d11 = tilde_d(1, 0, 1, 1, q()).unwrap();
    assert_eq!(
        d11,
        bar(
            1,
            &[
                (1, vec![one(1), t(1, 0), one(1)]),
                (-1, vec![one(1), one(1), t(1, 0)])
            ]
        )
    );
    let d01 = tilde_d(0, 0, 1, 1, q()).unwrap();
    assert_eq!(
        d01,
        bar(
            1,
            &[
                (1, vec![t(1, 0), one(1), one(1)]),
                (-1, vec![one(1), one(1), t(1, 0)])
            ]
        )
    );
    assert!(matches!(
        tilde_d(2, 0, 1, 1, q()),
        Err(Error::IndexOutOfRange(_))
    ));
    assert!(matches!(
        tilde_d(0, 1, 1, 1, q()),
        Err(Error::IndexOutOfRange(_))
    ));
}

#[test]
fn boundary_of_tilde_d_is_a_multiple_of_tau() {
    for n in 1..=3 {
        for i in 0..n {
            let image = bar_differential(&tilde_d(1, i, 1, n, q()).unwrap()).unwrap();
            let tau = bar(
                n,
                &[(1, vec![t(n, i), one(n)]), (-1, vec![one(n), t(n, i)])],
            );
            assert_eq!(image, tau);
        }
    }
}

#[test]
fn chain_differential_examples() {
    let x = chain(1, q(), &[(1, vec![one(1), t(1, 0)])]);
    assert!(chain_differential(&x).unwrap().is_zero());

    let x = chain(2, q(), &[(1, vec![one(2), t(2, 0), t(2, 1)])]);
    let expected = chain(
        2,
        q(),
        &[
            (1, vec![t(2, 0), t(2, 1)]),
            (-1, vec![one(2), mono(&[1, 1])]),
            (1, vec![t(2, 1), t(2, 0)]),
        ],
    );
    assert_eq!(chain_differential(&x).unwrap(), expected);

    let c0 = chain(1, q(), &[(1, vec![t(1, 0)])]);
    assert_eq!(chain_differential(&c0), Err(Error::DegreeTooLow(0)));
}

#[test]
fn chain_differential_is_the_reduced_bar_differential() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for qd in 1..=4 {
        let x = random::bar(&mut rng, 2, q(), qd, 2, 5);
        let via_bar = bar_differential(&x).unwrap().to_chain();
        let via_chain = chain_differential(&x.to_chain()).unwrap();
        assert_eq!(via_bar, via_chain, "q={qd}");
    }
}

#[test]
fn chain_differential_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for field in [q(), f2()] {
        for _ in 0..10 {
            let x = random::chain(&mut rng, 2, field, 3, 3, 5);
            let bb = chain_differential(&chain_differential(&x).unwrap()).unwrap();
            assert!(bb.is_zero());
        }
    }
}

#[test]
fn graded_piece_dimensions() {
    let p = graded_piece(1, q(), 1, 1).unwrap();
    assert_eq!(p.basis.len(), 2);
    assert_eq!(p.basis, vec![vec![t(1, 0), one(1)], vec![one(1), t(1, 0)]]);
    assert_eq!(graded_piece(2, q(), 1, 0).unwrap().basis.len(), 1);
    assert_eq!(graded_piece(1, q(), 2, 2).unwrap().basis.len(), 6);
    assert_eq!(
        graded_piece(1, q(), 0, 2).unwrap_err(),
        Error::DegreeTooLow(0)
    );
}

#[test]
fn graded_piece_invariants() {
    for n in 1..=3 {
        for qd in 1..=3 {
            for d in 0..=3 {
                let p = graded_piece(n, q(), qd, d).unwrap();
                assert!(p.d_out.mul(&p.d_in).unwrap().is_zero());
                assert_eq!(p.basis.len(), chain_dimension(n, qd, d));
                // monomials in (q+1)n variables
                assert_eq!(
                    p.basis.len(),
                    binomial(d + (qd + 1) * n - 1, (qd + 1) * n - 1)
                );
                assert_eq!(p.basis_above.len(), chain_dimension(n, qd + 1, d));
                assert_eq!(p.basis_below.len(), chain_dimension(n, qd - 1, d));
            }
        }
    }
}

#[test]
fn hkr_pi_examples() {
    let x = chain(2, q(), &[(1, vec![one(2), t(2, 0), t(2, 1)])]);
    assert_eq!(
        hkr_pi(&x),
        DifferentialForm::basis(2, q(), one(2), &[0, 1]).unwrap()
    );
    let x = chain(2, q(), &[(1, vec![one(2), t(2, 0), t(2, 0)])]);
    assert!(hkr_pi(&x).is_zero());
    // swapped slots flip the sign
    let x = chain(2, q(), &[(1, vec![one(2), t(2, 1), t(2, 0)])]);
    assert_eq!(
        hkr_pi(&x),
        DifferentialForm::basis(2, q(), one(2), &[1, 0]).unwrap()
    );
    assert_eq!(hkr_pi(&x).to_string(), "-1*dt1^dt2");
}

#[test]
fn hkr_pi_matches_polynomial_formula() {
    // π(1; f, g) = df ∧ dg for polynomial slots
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let n = 2;
        let f = random::poly(&mut rng, n, q(), 3, 3);
        let g = random::poly(&mut rng, n, q(), 3, 3);
        let x = ChainElement::tensor(n, q(), &[Poly::one(n, q()), f.clone(), g.clone()]).unwrap();
        let mut expected = DifferentialForm::zero(n, q(), 2);
        for (df, i) in f.exterior_derivative().unwrap() {
            for (dg, j) in g.exterior_derivative().unwrap() {
                let prod = &df * &dg;
                let terms = prod
                    .terms()
                    .map(|(m, c)| (m.clone(), vec![i, j], c.clone()));
                let part = DifferentialForm::from_terms(n, q(), 2, terms).unwrap();
                expected = expected.try_add(&part).unwrap();
            }
        }
        assert_eq!(hkr_pi(&x), expected);
    }
}

#[test]
fn pi_kills_boundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for field in [q(), f2()] {
        for n in 1..=3 {
            let x = random::chain(&mut rng, n, field, 3, 3, 5);
            assert!(hkr_pi(&chain_differential(&x).unwrap()).is_zero());
        }
    }
}

#[test]
fn eps_examples() {
    let w = DifferentialForm::basis(1, q(), one(1), &[0]).unwrap();
    assert_eq!(
        antisymmetrization_eps(&w),
        chain(1, q(), &[(1, vec![one(1), t(1, 0)])])
    );

    let w = DifferentialForm::basis(2, q(), one(2), &[0, 1]).unwrap();
    let e = antisymmetrization_eps(&w);
    assert_eq!(hkr_pi(&e), w.scale(&q().from_i64(2)));
    assert!(chain_differential(&e).unwrap().is_zero());
}

#[test]
fn pi_eps_is_q_factorial() {
    for field in [q(), FieldSpec::prime(5).unwrap(), f2()] {
        for n in 1..=3 {
            for qd in 0..=3 {
                for d in qd..=qd + 2 {
                    for w in omega_spanning_set(n, field, qd, d) {
                        let e = antisymmetrization_eps(&w);
                        assert_eq!(hkr_pi(&e), w.scale(&field.factorial(qd)));
                        if qd >= 1 {
                            assert!(chain_differential(&e).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn pi_cd_examples() {
    let d1 = PolyVector::basis(2, q(), one(2), &[0]).unwrap();
    let x = chain(2, q(), &[(1, vec![one(2), t(2, 0)])]);
    assert_eq!(pi_cd_evaluate(&d1, &x).unwrap(), Poly::one(2, q()));

    let d12 = PolyVector::basis(2, q(), one(2), &[0, 1]).unwrap();
    let x = chain(2, q(), &[(1, vec![one(2), t(2, 1), t(2, 0)])]);
    assert_eq!(
        pi_cd_evaluate(&d12, &x).unwrap(),
        Poly::constant(2, q().from_i64(-1))
    );
    let x = chain(2, q(), &[(1, vec![one(2), t(2, 0), t(2, 0)])]);
    assert!(pi_cd_evaluate(&d12, &x).unwrap().is_zero());

    let x = chain(2, q(), &[(1, vec![one(2), t(2, 0)])]);
    assert!(matches!(
        pi_cd_evaluate(&d12, &x),
        Err(Error::DegreeMismatch { .. })
    ));
}

#[test]
fn pi_cd_is_adjoint_to_pi() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for n in 1..=3 {
        for qd in 0..=n {
            let v = random::polyvector(&mut rng, n, q(), qd, 2, 3);
            let x = random::chain(&mut rng, n, q(), qd, 3, 4);
            assert_eq!(
                pi_cd_evaluate(&v, &x).unwrap(),
                pairing(&v, &hkr_pi(&x)).unwrap()
            );
        }
    }
}

#[test]
fn maps_preserve_total_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for d in 0..=4 {
        let basis = chain_basis(2, 2, d);
        for w in basis.iter().take(30) {
            let x = ChainElement::word(2, q(), w.clone()).unwrap();
            for y in [chain_differential(&x).unwrap()] {
                assert!(y.degrees().iter().all(|&e| e == d as i64));
            }
            assert!(hkr_pi(&x).degrees().iter().all(|&e| e == d as i64));
        }
        let w = random::form(&mut rng, 2, q(), 1, 3, 1);
        let degs = w.degrees();
        assert!(antisymmetrization_eps(&w)
            .degrees()
            .iter()
            .all(|e| degs.contains(e)));
    }
}

#[test]
fn chain_homology_examples() {
    assert_eq!(chain_homology_rank(2, q(), 0, 2).unwrap(), 3);
    assert_eq!(chain_homology_rank(2, q(), 1, 1).unwrap(), 2);
    assert_eq!(chain_homology_rank(2, f2(), 2, 2).unwrap(), 1);
}

#[test]
fn euler_characteristic_of_graded_piece() {
    // over the window 0..=top the alternating sum of dimensions equals the
    // alternating sum of homology plus the boundary entering from top+1
    for n in 1..=2 {
        for d in 0..=3 {
            let top = d + 1;
            let mut chi_dims: i64 = 0;
            let mut chi_h: i64 = 0;
            for k in 0..=top {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                chi_dims += sign * chain_dimension(n, k, d) as i64;
                chi_h += sign * chain_homology_rank(n, q(), k, d).unwrap() as i64;
            }
            let last = crate::exactla::rank(&differential_matrix(n, q(), top + 1, d)) as i64;
            let sign = if top % 2 == 0 { 1 } else { -1 };
            assert_eq!(chi_dims, chi_h + sign * last, "n={n} d={d}");
        }
    }
}

#[test]
fn pi_induced_rank_examples() {
    assert_eq!(pi_induced_rank(2, q(), 2, 2).unwrap(), 1);
    assert_eq!(pi_induced_rank(2, f2(), 2, 2).unwrap(), 0);
    assert_eq!(pi_induced_rank(1, f2(), 1, 1).unwrap(), 1);
}
