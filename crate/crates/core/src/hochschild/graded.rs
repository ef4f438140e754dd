use std::collections::HashMap;

use rayon::prelude::*;

use crate::combinatorics::{binomial, compositions};
use crate::error::{Error, Result};
use crate::exactla::{homology_rank, induced_rank_on_homology, FieldSpec, SparseMatrix};
use crate::poly::{enumerate_monomials, Monomial};

use super::forms::{omega_basis, pi_word};
use super::tensor::chain_faces;

pub type Word = Vec<Monomial>;

/// Tensor-word basis of `C_{q,d}`: slot-degree compositions of `d` (first
/// slot heaviest first), then monomials slot by slot in monomial order.
pub fn chain_basis(n: usize, q: usize, d: usize) -> Vec<Word> {
    let per_degree: Vec<Vec<Monomial>> = (0..=d).map(|k| enumerate_monomials(n, k)).collect();
    let mut out = Vec::new();
    for comp in compositions(d, q + 1) {
        let mut partial: Vec<Word> = vec![Vec::with_capacity(q + 1)];
        for &dj in &comp {
            let mut next = Vec::with_capacity(partial.len() * per_degree[dj].len());
            for w in &partial {
                for m in &per_degree[dj] {
                    let mut w2 = w.clone();
                    w2.push(m.clone());
                    next.push(w2);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

/// `dim C_{q,d} = Σ_{d_0+...+d_q = d} Π_j C(d_j + n - 1, n - 1)`.
pub fn chain_dimension(n: usize, q: usize, d: usize) -> usize {
    compositions(d, q + 1)
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|&dj| binomial(dj + n - 1, n - 1))
                .product::<usize>()
        })
        .sum()
}

fn index_of(basis: &[Word]) -> HashMap<&[Monomial], usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect()
}

/// Matrix of `b: C_{k,d} -> C_{k-1,d}` in the `chain_basis` bases; for
/// `k = 0` the zero map to the zero space.
pub fn differential_matrix(n: usize, field: FieldSpec, k: usize, d: usize) -> SparseMatrix {
    let source = chain_basis(n, k, d);
    if k == 0 {
        return SparseMatrix::zeros(0, source.len(), field);
    }
    let target = chain_basis(n, k - 1, d);
    differential_matrix_between(field, &source, &target)
}

fn differential_matrix_between(field: FieldSpec, source: &[Word], target: &[Word]) -> SparseMatrix {
    let index = index_of(target);
    let triplets: Vec<(usize, usize, i64)> = source
        .par_iter()
        .enumerate()
        .flat_map_iter(|(col, w)| {
            let index = &index;
            chain_faces(w).map(move |(face, i)| {
                let row = index[face.as_slice()];
                (row, col, if i % 2 == 0 { 1 } else { -1 })
            })
        })
        .collect();
    SparseMatrix::from_int_triplets(target.len(), source.len(), field, triplets)
        .expect("faces stay inside the graded piece")
}

/// The window `C_{q+1,d} -> C_{q,d} -> C_{q-1,d}` of the Hochschild complex.
#[derive(Clone, Debug)]
pub struct GradedComplexPiece {
    pub n: usize,
    pub field: FieldSpec,
    pub q: usize,
    pub d: usize,
    pub basis_above: Vec<Word>,
    pub basis: Vec<Word>,
    pub basis_below: Vec<Word>,
    pub d_in: SparseMatrix,
    pub d_out: SparseMatrix,
}

impl GradedComplexPiece {
    pub fn homology_rank(&self) -> Result<usize> {
        homology_rank(&self.d_in, &self.d_out)
    }
}

pub fn graded_piece(n: usize, field: FieldSpec, q: usize, d: usize) -> Result<GradedComplexPiece> {
    if q < 1 {
        return Err(Error::DegreeTooLow(q));
    }
    let basis_above = chain_basis(n, q + 1, d);
    let basis = chain_basis(n, q, d);
    let basis_below = chain_basis(n, q - 1, d);
    let d_in = differential_matrix_between(field, &basis_above, &basis);
    let d_out = differential_matrix_between(field, &basis, &basis_below);
    Ok(GradedComplexPiece {
        n,
        field,
        q,
        d,
        basis_above,
        basis,
        basis_below,
        d_in,
        d_out,
    })
}

/// `dim H_q(C)_d`, by exact ranks of the two differentials at `C_{q,d}`.
pub fn chain_homology_rank(n: usize, field: FieldSpec, q: usize, d: usize) -> Result<usize> {
    let (d_in, d_out) = rayon::join(
        || differential_matrix(n, field, q + 1, d),
        || differential_matrix(n, field, q, d),
    );
    homology_rank(&d_in, &d_out)
}

/// `dim (Ω^q)_d = C(n, q) C(d - q + n - 1, n - 1)` for `d ≥ q`, else 0.
pub fn omega_dimension(n: usize, q: usize, d: usize) -> usize {
    if d < q {
        0
    } else {
        binomial(n, q) * binomial(d - q + n - 1, n - 1)
    }
}

/// Matrix of `π: C_{q,d} -> (Ω^q)_d` with rows in `omega_basis` order.
pub fn pi_matrix(n: usize, field: FieldSpec, q: usize, d: usize) -> SparseMatrix {
    let source = chain_basis(n, q, d);
    let target = omega_basis(n, q, d);
    let index: HashMap<(&[usize], &Monomial), usize> = target
        .iter()
        .enumerate()
        .map(|(i, (idx, m))| ((idx.as_slice(), m), i))
        .collect();
    let mut triplets = Vec::new();
    for (col, w) in source.iter().enumerate() {
        for (idx, m, c) in pi_word(w) {
            triplets.push((index[&(idx.as_slice(), &m)], col, c));
        }
    }
    SparseMatrix::from_int_triplets(target.len(), source.len(), field, triplets)
        .expect("π preserves total degree")
}

/// Rank of `H_q(C)_d -> (Ω^q)_d` induced by `π` (the target complex has
/// zero differentials).
pub fn pi_induced_rank(n: usize, field: FieldSpec, q: usize, d: usize) -> Result<usize> {
    let d_in = differential_matrix(n, field, q + 1, d);
    let d_out = differential_matrix(n, field, q, d);
    let f = pi_matrix(n, field, q, d);
    let omega_q = f.nrows();
    let t_in = SparseMatrix::zeros(omega_q, omega_dimension(n, q + 1, d), field);
    let below = if q == 0 {
        0
    } else {
        omega_dimension(n, q - 1, d)
    };
    let t_out = SparseMatrix::zeros(below, omega_q, field);
    induced_rank_on_homology(&f, (&d_in, &d_out), (&t_in, &t_out))
}
