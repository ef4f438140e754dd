//! Seeded random elements for the property suites.

use rand::Rng;

use crate::combinatorics::subsets;
use crate::exactla::{FieldSpec, Scalar};
use crate::hochschild::{BarElement, ChainElement, DifferentialForm, PolyVector, TensorWord};
use crate::poly::{Monomial, Poly};

pub fn scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    let v = rng.gen_range(-5..=5);
    match rng.gen_range(0..4) {
        0 if field.is_rationals() => field.fraction(v, rng.gen_range(1..=4)).unwrap(),
        _ => field.from_i64(v),
    }
}

pub fn monomial<R: Rng>(rng: &mut R, n: usize, max_degree: usize) -> Monomial {
    let mut e = vec![0i32; n];
    let d = rng.gen_range(0..=max_degree);
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(e)
}

pub fn poly<R: Rng>(
    rng: &mut R,
    n: usize,
    field: FieldSpec,
    max_degree: usize,
    terms: usize,
) -> Poly {
    Poly::from_terms(
        n,
        field,
        (0..terms).map(|_| (monomial(rng, n, max_degree), scalar(rng, field))),
    )
    .expect("consistent arity")
}

fn words<R: Rng>(
    rng: &mut R,
    n: usize,
    field: FieldSpec,
    slots: usize,
    max_degree: usize,
    terms: usize,
) -> Vec<TensorWord> {
    (0..terms)
        .map(|_| {
            TensorWord::new(
                scalar(rng, field),
                (0..slots).map(|_| monomial(rng, n, max_degree)).collect(),
            )
        })
        .collect()
}

pub fn chain<R: Rng>(
    rng: &mut R,
    n: usize,
    field: FieldSpec,
    q: usize,
    max_degree: usize,
    terms: usize,
) -> ChainElement {
    ChainElement::from_words(n, field, q, words(rng, n, field, q + 1, max_degree, terms)).unwrap()
}

pub fn bar<R: Rng>(
    rng: &mut R,
    n: usize,
    field: FieldSpec,
    q: usize,
    max_degree: usize,
    terms: usize,
) -> BarElement {
    BarElement::from_words(n, field, q, words(rng, n, field, q + 2, max_degree, terms)).unwrap()
}

fn alternating_terms<R: Rng>(
    rng: &mut R,
    n: usize,
    field: FieldSpec,
    q: usize,
    max_degree: usize,
    terms: usize,
) -> Vec<(Monomial, Vec<usize>, Scalar)> {
    let sets = subsets(n, q);
    if sets.is_empty() {
        return Vec::new();
    }
    (0..terms)
        .map(|_| {
            let idx = sets[rng.gen_range(0..sets.len())].clone();
            (monomial(rng, n, max_degree), idx, scalar(rng, field))
        })
        .collect()
}

pub fn form<R: Rng>(
    rng: &mut R,
    n: usize,
    field: FieldSpec,
    q: usize,
    max_degree: usize,
    terms: usize,
) -> DifferentialForm {
    DifferentialForm::from_terms(
        n,
        field,
        q,
        alternating_terms(rng, n, field, q, max_degree, terms),
    )
    .unwrap()
}

pub fn polyvector<R: Rng>(
    rng: &mut R,
    n: usize,
    field: FieldSpec,
    q: usize,
    max_degree: usize,
    terms: usize,
) -> PolyVector {
    PolyVector::from_terms(
        n,
        field,
        q,
        alternating_terms(rng, n, field, q, max_degree, terms),
    )
    .unwrap()
}
