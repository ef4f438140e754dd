//! Decomposition of Hochschild cohomology into sheaf cohomology of
//! polyvector bundles, and the scan for the characteristic criterion.

use rayon::prelude::*;
use serde::Serialize;

use crate::cech::{sheaf_cohomology, SheafSpec};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::exactla::FieldSpec;
use crate::ext::koszul_ext;
use crate::hochschild::{chain_homology_rank, omega_dimension, pi_induced_rank};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum Space {
    Affine(usize),
    Projective(usize),
}

impl Space {
    pub fn dimension(&self) -> usize {
        match *self {
            Space::Affine(n) | Space::Projective(n) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub space: Space,
    pub field: FieldSpec,
    /// `HH^i` for `i = 0..=2n`; absent when `validity` is false.
    pub hh: Option<Vec<usize>>,
    /// `summands[i][q] = dim H^{i-q}(X, ⋀^q T)`.
    pub summands: Vec<Vec<usize>>,
    /// Whether `n!` is invertible in the field.
    pub validity: bool,
}

impl DecompositionReport {
    fn assemble(space: Space, field: FieldSpec, summands: Vec<Vec<usize>>, validity: bool) -> Self {
        let hh = validity.then(|| summands.iter().map(|row| row.iter().sum()).collect());
        DecompositionReport {
            space,
            field,
            hh,
            summands,
            validity,
        }
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    Ok(())
}

/// `HH^i(A^n)` as free `A`-module ranks `C(n, i)`, checked against the
/// Koszul computation.
pub fn hh_affine(n: usize, field: FieldSpec) -> Result<DecompositionReport> {
    check_dimension(n)?;
    let mut summands = vec![vec![0; n + 1]; 2 * n + 1];
    for q in 0..=n {
        let ext = koszul_ext(n, field, q)?;
        if ext != binomial(n, q) {
            return Err(Error::CrossCheck(format!(
                "Ext^{q} has rank {ext}, expected {}",
                binomial(n, q)
            )));
        }
        summands[q][q] = ext;
    }
    Ok(DecompositionReport::assemble(
        Space::Affine(n),
        field,
        summands,
        true,
    ))
}

/// `HH^i(P^n) = Σ_q h^{i-q}(⋀^q T)`, reported without totals when
/// `0 < char ≤ n`.
pub fn hh_projective(n: usize, field: FieldSpec) -> Result<DecompositionReport> {
    check_dimension(n)?;
    let columns = (0..=n)
        .into_par_iter()
        .map(|q| sheaf_cohomology(SheafSpec::wedge_tangent(n, q), field))
        .collect::<Result<Vec<_>>>()?;
    let mut summands = vec![vec![0; n + 1]; 2 * n + 1];
    for (q, h) in columns.iter().enumerate() {
        for (j, &x) in h.iter().enumerate() {
            summands[q + j][q] = x;
        }
    }
    let p = field.characteristic();
    let validity = p == 0 || p > n as u64;
    Ok(DecompositionReport::assemble(
        Space::Projective(n),
        field,
        summands,
        validity,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

/// A graded piece on which `π` is not an isomorphism on homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeficientPiece {
    pub q: usize,
    pub d: usize,
    pub homology_dim: usize,
    pub omega_dim: usize,
    pub induced_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicWitness {
    pub n: usize,
    pub p: u64,
    pub q_max: usize,
    pub d_max: usize,
    pub verdict: Verdict,
    pub witness: Option<DeficientPiece>,
}

impl CharacteristicWitness {
    pub fn summary(&self) -> String {
        match (&self.verdict, &self.witness) {
            (Verdict::Holds, _) => format!(
                "holds up to (q_max = {}, d_max = {})",
                self.q_max, self.d_max
            ),
            (Verdict::Fails, Some(w)) => format!(
                "fails at q = {}, d = {}: dim H = {}, induced rank = {}",
                w.q, w.d, w.homology_dim, w.induced_rank
            ),
            (Verdict::Fails, None) => "fails".into(),
        }
    }
}

/// Scans `q ≤ q_max`, `d ≤ d_max` (in that order) for a piece where `π`
/// fails to induce an isomorphism `H_q(C)_d -> (Ω^q)_d`.
pub fn characteristic_criterion(
    n: usize,
    p: u64,
    q_max: usize,
    d_max: usize,
) -> Result<CharacteristicWitness> {
    check_dimension(n)?;
    if q_max < n || d_max < n {
        return Err(Error::Precondition(format!(
            "bounds (q_max = {q_max}, d_max = {d_max}) must be at least n = {n}"
        )));
    }
    let field = FieldSpec::from_characteristic(p)?;
    let pieces: Vec<(usize, usize)> = (0..=q_max)
        .flat_map(|q| (0..=d_max).map(move |d| (q, d)))
        .collect();
    let scanned = pieces
        .par_iter()
        .map(|&(q, d)| {
            let homology_dim = chain_homology_rank(n, field, q, d)?;
            let induced_rank = pi_induced_rank(n, field, q, d)?;
            Ok(DeficientPiece {
                q,
                d,
                homology_dim,
                omega_dim: omega_dimension(n, q, d),
                induced_rank,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = scanned
        .into_iter()
        .find(|w| w.induced_rank != w.homology_dim || w.induced_rank != w.omega_dim);
    Ok(CharacteristicWitness {
        n,
        p,
        q_max,
        d_max,
        verdict: if witness.is_some() {
            Verdict::Fails
        } else {
            Verdict::Holds
        },
        witness,
    })
}
