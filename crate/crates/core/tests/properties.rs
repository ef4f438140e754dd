use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hhlab_core::cech::{line_bundle_cohomology, multidegree_piece};
use hhlab_core::combinatorics::subsets;
use hhlab_core::exactla::{homology_rank, rank, FieldSpec, SparseMatrix};
use hhlab_core::ext::{comparison_is_chain_map, koszul_ext};
use hhlab_core::hochschild::{
    antisymmetrization_eps, augmentation, bar_differential, chain_differential,
    contracting_homotopy, hkr_pi, pairing, pi_cd_evaluate, unit_section, BarElement,
};
use hhlab_core::random;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(0u64), Just(2), Just(3), Just(5), Just(1_000_000_007)]
        .prop_map(|c| FieldSpec::from_characteristic(c).unwrap())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn int_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], c),
            r,
        )
    })
}

fn dense_rank(rows: &[Vec<i64>], p: u64) -> usize {
    // Plain Gaussian elimination over GF(p), p small.
    let p = p as i64;
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = (1..p).find(|x| x * m[r][c] % p == 1).unwrap();
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c] * inv % p;
                for j in 0..ncols {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_dense_elimination(rows in int_matrix(7), p in prop_oneof![Just(2u64), Just(3), Just(7)]) {
        let f = FieldSpec::prime(p).unwrap();
        let m = SparseMatrix::from_dense(f, &rows).unwrap();
        prop_assert_eq!(rank(&m), dense_rank(&rows, p));
        prop_assert_eq!(rank(&m.transpose()), rank(&m));
    }

    #[test]
    fn rational_rank_dominates_modular_rank(rows in int_matrix(7)) {
        let q = SparseMatrix::from_dense(FieldSpec::rationals(), &rows).unwrap();
        let r = rank(&q);
        prop_assert!(r <= rows.len().min(rows[0].len()));
        for p in [2u64, 3, 5] {
            prop_assert!(rank(&SparseMatrix::from_dense(FieldSpec::prime(p).unwrap(), &rows).unwrap()) <= r);
        }
    }

    #[test]
    fn homology_with_zero_incoming_map_is_nullity(rows in int_matrix(6)) {
        // H = ker(A) when nothing comes in.
        let f = FieldSpec::rationals();
        let a = SparseMatrix::from_dense(f, &rows).unwrap();
        let zero = SparseMatrix::zeros(a.ncols(), 1, f);
        prop_assert_eq!(homology_rank(&zero, &a).unwrap(), a.ncols() - rank(&a));
    }

    #[test]
    fn polynomial_ring_axioms(seed: u64, f in field(), n in 1usize..=3) {
        let mut g = rng(seed);
        let a = random::poly(&mut g, n, f, 3, 4);
        let b = random::poly(&mut g, n, f, 3, 4);
        let c = random::poly(&mut g, n, f, 3, 4);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        for i in 0..n {
            let lhs = (&a * &b).partial_derivative(i).unwrap();
            let rhs = &(&a.partial_derivative(i).unwrap() * &b) + &(&a * &b.partial_derivative(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn boundaries_square_to_zero(seed: u64, f in field(), n in 1usize..=3, q in 2usize..=4) {
        let mut g = rng(seed);
        let x = random::chain(&mut g, n, f, q, 2, 3);
        prop_assert!(chain_differential(&chain_differential(&x).unwrap()).unwrap().is_zero());
        let y = random::bar(&mut g, n, f, q, 2, 3);
        prop_assert!(bar_differential(&bar_differential(&y).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn hkr_maps_are_chain_maps(seed: u64, f in field(), n in 1usize..=3, q in 1usize..=4) {
        let mut g = rng(seed);
        let x = random::chain(&mut g, n, f, q, 2, 3);
        prop_assert!(hkr_pi(&chain_differential(&x).unwrap()).is_zero());
        let w = random::form(&mut g, n, f, q.min(n), 2, 3);
        prop_assert!(chain_differential(&antisymmetrization_eps(&w)).unwrap().is_zero());
        prop_assert_eq!(hkr_pi(&antisymmetrization_eps(&w)), w.scale(&f.factorial(q.min(n))));
    }

    #[test]
    fn splitting_is_a_contracting_homotopy(seed: u64, f in field(), n in 1usize..=3, q in 0usize..=4) {
        let mut g = rng(seed);
        let x: BarElement = random::bar(&mut g, n, f, q, 2, 3);
        let dh = bar_differential(&contracting_homotopy(&x)).unwrap();
        let rest = if q == 0 {
            unit_section(&augmentation(&x).unwrap()).unwrap()
        } else {
            contracting_homotopy(&bar_differential(&x).unwrap())
        };
        prop_assert_eq!(dh.try_add(&rest).unwrap(), x);
    }

    #[test]
    fn pi_cd_is_adjoint_to_pi(seed: u64, f in field(), n in 1usize..=3, q in 0usize..=3) {
        let mut g = rng(seed);
        let q = q.min(n);
        let v = random::polyvector(&mut g, n, f, q, 2, 3);
        let x = random::chain(&mut g, n, f, q, 2, 3);
        prop_assert_eq!(pi_cd_evaluate(&v, &x).unwrap(), pairing(&v, &hkr_pi(&x)).unwrap());
    }

    #[test]
    fn serre_duality(n in 1usize..=3, d in -9i64..=9) {
        let f = FieldSpec::rationals();
        let h = line_bundle_cohomology(n, f, d).unwrap();
        let dual = line_bundle_cohomology(n, f, -d - n as i64 - 1).unwrap();
        for i in 0..=n {
            prop_assert_eq!(h[i], dual[n - i]);
        }
    }

    #[test]
    fn multidegree_pieces_are_bicomplexes(a in prop::collection::vec(-3i64..=3, 3), p in 0usize..=2, f in field()) {
        let piece = multidegree_piece(2, p, &a, f).unwrap();
        prop_assert!(piece.cech.mul(&piece.cech).unwrap().is_zero());
        prop_assert!(piece.koszul.mul(&piece.koszul).unwrap().is_zero());
        prop_assert_eq!(piece.cech.mul(&piece.koszul).unwrap(), piece.koszul.mul(&piece.cech).unwrap());
        prop_assert!(piece.total.mul(&piece.total).unwrap().is_zero());
    }
}

#[test]
fn koszul_ext_and_comparison_for_small_n() {
    for c in [0u64, 2, 3] {
        let f = FieldSpec::from_characteristic(c).unwrap();
        for n in 1..=4 {
            for q in 0..=n + 1 {
                assert_eq!(koszul_ext(n, f, q).unwrap(), subsets(n, q).len());
            }
        }
        for n in 1..=3 {
            for q in 1..=n {
                for s in subsets(n, q) {
                    assert!(comparison_is_chain_map(n, f, &s).unwrap());
                }
            }
        }
    }
}
