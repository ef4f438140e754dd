//! Čech cohomology on `P^n` for line bundles, twisted forms and polyvector
//! bundles, split into finite pieces by `Z^{n+1}`-multidegree.
//!
//! `Ω^p(k)` is quasi-isomorphic to the Euler–Koszul complex
//! `⋀^p E(k) -> ⋀^{p-1} E(k) -> ... -> O(k)` with `E = O(-1)^{n+1}` in
//! cohomological positions `0..=p`, differential contraction with
//! `(x_0, ..., x_n)`. Its hypercohomology is read off the total complex of
//! the Čech bicomplex on the standard cover `U_i = {x_i ≠ 0}`.
//!
//! A cell is `(S, I, g)`: a basis symbol `e_S` of `⋀^{|S|} E`, an
//! increasing chart tuple `I`, and a Laurent monomial `g` regular on `U_I`
//! (exponents nonnegative outside `I`). The piece of multidegree `a` holds
//! the cells with `exps(g) + χ_S = a`, so contraction and restriction both
//! stay inside one piece. Within a piece `g = a - χ_S` is determined, which
//! leaves finitely many cells.
//!
//! Signs: `(δc)_{i_0..i_{r+1}} = Σ_m (-1)^m c_{i_0..î_m..i_{r+1}}`,
//! `κ(e_S) = Σ_m (-1)^m x_{s_m} e_{S \ s_m}`, and on Čech degree `r` the
//! total differential is `δ + (-1)^r κ`.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, binomial_i, compositions, subsets};
use crate::error::{Error, Result};
use crate::exactla::{rank, FieldSpec, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SheafKind {
    LineBundle { d: i64 },
    OmegaTwist { p: usize, k: i64 },
    WedgeTangent { q: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafSpec {
    pub n: usize,
    #[serde(flatten)]
    pub kind: SheafKind,
}

impl SheafSpec {
    pub fn line_bundle(n: usize, d: i64) -> Self {
        SheafSpec {
            n,
            kind: SheafKind::LineBundle { d },
        }
    }

    pub fn omega_twist(n: usize, p: usize, k: i64) -> Self {
        SheafSpec {
            n,
            kind: SheafKind::OmegaTwist { p, k },
        }
    }

    pub fn wedge_tangent(n: usize, q: usize) -> Self {
        SheafSpec {
            n,
            kind: SheafKind::WedgeTangent { q },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec(
                "projective dimension must be at least 1".into(),
            ));
        }
        match self.kind {
            SheafKind::OmegaTwist { p, .. } if p > self.n => {
                Err(Error::InvalidSpec(format!("Ω^{p} on P^{}", self.n)))
            }
            SheafKind::WedgeTangent { q } if q > self.n => {
                Err(Error::InvalidSpec(format!("⋀^{q} T on P^{}", self.n)))
            }
            _ => Ok(()),
        }
    }

    /// `(p, k)` with the sheaf isomorphic to `Ω^p(k)`. Uses
    /// `⋀^q T ≅ Ω^{n-q} ⊗ ω^{-1}` and `ω = O(-n-1)`.
    pub fn as_omega_twist(&self) -> Result<(usize, i64)> {
        self.validate()?;
        Ok(match self.kind {
            SheafKind::LineBundle { d } => (0, d),
            SheafKind::OmegaTwist { p, k } => (p, k),
            SheafKind::WedgeTangent { q } => (self.n - q, self.n as i64 + 1),
        })
    }
}

/// One basis vector of a multidegree piece: `e_S` on the chart tuple `I`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub degree: usize,
    pub charts: Vec<usize>,
    pub wedge: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct MultidegreePiece {
    pub n: usize,
    pub p: usize,
    pub a: Vec<i64>,
    pub field: FieldSpec,
    /// Sorted by total degree, then chart tuple, then `e_S`.
    pub cells: Vec<Cell>,
    pub cech: SparseMatrix,
    pub koszul: SparseMatrix,
    pub total: SparseMatrix,
    offsets: Vec<usize>,
}

fn nonempty_subsets(m: usize) -> Vec<Vec<usize>> {
    (1..=m).flat_map(|k| subsets(m, k)).collect()
}

pub fn multidegree_piece(
    n: usize,
    p: usize,
    a: &[i64],
    field: FieldSpec,
) -> Result<MultidegreePiece> {
    if a.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "multidegree of length {} on P^{n}",
            a.len()
        )));
    }
    if p > n + 1 {
        return Err(Error::InvalidSpec(format!(
            "⋀^{p} of a rank {} bundle",
            n + 1
        )));
    }
    let charts = nonempty_subsets(n + 1);
    let mut cells = Vec::new();
    for j in 0..=p {
        for s in subsets(n + 1, j) {
            for i in &charts {
                let regular = (0..=n).all(|x| i.contains(&x) || a[x] - s.contains(&x) as i64 >= 0);
                if regular {
                    cells.push(Cell {
                        degree: (p - j) + i.len() - 1,
                        charts: i.clone(),
                        wedge: s.clone(),
                    });
                }
            }
        }
    }
    cells.sort();
    let index: HashMap<(&[usize], &[usize]), usize> = cells
        .iter()
        .enumerate()
        .map(|(k, c)| ((c.charts.as_slice(), c.wedge.as_slice()), k))
        .collect();

    let mut delta = Vec::new();
    let mut kappa = Vec::new();
    let mut total = Vec::new();
    for (col, cell) in cells.iter().enumerate() {
        let r = cell.charts.len() - 1;
        for x in (0..=n).filter(|x| !cell.charts.contains(x)) {
            let mut bigger = cell.charts.clone();
            let pos = bigger.partition_point(|&y| y < x);
            bigger.insert(pos, x);
            let row = index[&(bigger.as_slice(), cell.wedge.as_slice())];
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            delta.push((row, col, sign));
            total.push((row, col, sign));
        }
        for m in 0..cell.wedge.len() {
            let mut smaller = cell.wedge.clone();
            smaller.remove(m);
            let row = index[&(cell.charts.as_slice(), smaller.as_slice())];
            let sign = if m % 2 == 0 { 1 } else { -1 };
            kappa.push((row, col, sign));
            total.push((row, col, if r % 2 == 0 { sign } else { -sign }));
        }
    }
    let size = cells.len();
    let top = p + n;
    let offsets = (0..=top + 1)
        .map(|t| cells.partition_point(|c| c.degree < t))
        .collect();
    Ok(MultidegreePiece {
        n,
        p,
        a: a.to_vec(),
        field,
        cech: SparseMatrix::from_int_triplets(size, size, field, delta)?,
        koszul: SparseMatrix::from_int_triplets(size, size, field, kappa)?,
        total: SparseMatrix::from_int_triplets(size, size, field, total)?,
        cells,
        offsets,
    })
}

fn block(m: &SparseMatrix, rows: Range<usize>, cols: Range<usize>) -> SparseMatrix {
    let triplets: Vec<_> = m
        .entries()
        .filter(|(r, c, _)| rows.contains(r) && cols.contains(c))
        .map(|(r, c, v)| (r - rows.start, c - cols.start, v.clone()))
        .collect();
    SparseMatrix::from_triplets(rows.len(), cols.len(), m.field(), triplets)
        .expect("block in range")
}

impl MultidegreePiece {
    fn range(&self, t: usize) -> Range<usize> {
        if t + 1 >= self.offsets.len() {
            return self.cells.len()..self.cells.len();
        }
        self.offsets[t]..self.offsets[t + 1]
    }

    /// The total differential from total degree `t` to `t + 1`.
    pub fn total_block(&self, t: usize) -> SparseMatrix {
        block(&self.total, self.range(t + 1), self.range(t))
    }

    /// Cohomology dimensions of the total complex in degrees `0..=p+n`.
    pub fn cohomology(&self) -> Vec<usize> {
        let top = self.p + self.n;
        let ranks: Vec<usize> = (0..=top).map(|t| rank(&self.total_block(t))).collect();
        (0..=top)
            .map(|t| {
                let incoming = if t == 0 { 0 } else { ranks[t - 1] };
                self.range(t).len() - ranks[t] - incoming
            })
            .collect()
    }
}

/// The cells and matrices of a piece depend on `a` only through which
/// entries are negative, zero or positive.
fn sign_pattern(a: &[i64]) -> Vec<i8> {
    a.iter().map(|&x| x.signum() as i8).collect()
}

/// Every `a ∈ Z^{n+1}` with entries `≥ lower` summing to `k`.
fn multidegrees(n: usize, k: i64, lower: i64) -> Vec<Vec<i64>> {
    let shifted = k - (n as i64 + 1) * lower;
    if shifted < 0 {
        return Vec::new();
    }
    compositions(shifted as usize, n + 1)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x as i64 + lower).collect())
        .collect()
}

/// Per sign pattern: a representative multidegree and how many times the
/// pattern occurs.
fn group(list: Vec<Vec<i64>>) -> BTreeMap<Vec<i8>, (Vec<i64>, usize)> {
    let mut out: BTreeMap<Vec<i8>, (Vec<i64>, usize)> = BTreeMap::new();
    for a in list {
        out.entry(sign_pattern(&a)).or_insert_with(|| (a, 0)).1 += 1;
    }
    out
}

/// The enumeration bound `B`: multidegrees with every entry `≥ -B` are
/// summed, and the shell with minimum entry `-(B + 1)` is checked to be
/// exact.
pub fn enumeration_bound(n: usize, k: i64) -> i64 {
    k.abs() + n as i64 + 2
}

/// Hypercohomology of the Euler–Koszul complex of `Ω^p(k)`, in total
/// degrees `0..=p+n`.
pub fn omega_twist_hypercohomology(
    n: usize,
    p: usize,
    k: i64,
    field: FieldSpec,
) -> Result<Vec<usize>> {
    let bound = enumeration_bound(n, k);
    let inside = group(multidegrees(n, k, -bound));
    let shell = group(
        multidegrees(n, k, -bound - 1)
            .into_iter()
            .filter(|a| a.iter().min() == Some(&(-bound - 1)))
            .collect(),
    );

    let shell_results = shell
        .par_iter()
        .map(|(_, (a, _))| Ok((a, multidegree_piece(n, p, a, field)?.cohomology())))
        .collect::<Result<Vec<_>>>()?;
    for (a, h) in shell_results {
        if h.iter().any(|&x| x != 0) {
            return Err(Error::ShellNotExact(a.clone()));
        }
    }

    let per_pattern = inside
        .par_iter()
        .map(|(_, (a, count))| Ok((multidegree_piece(n, p, a, field)?.cohomology(), *count)))
        .collect::<Result<Vec<_>>>()?;
    let mut total = vec![0usize; p + n + 1];
    for (h, count) in per_pattern {
        for (t, x) in h.into_iter().enumerate() {
            total[t] += x * count;
        }
    }
    Ok(total)
}

/// `h^0..h^n` of the sheaf.
pub fn sheaf_cohomology(spec: SheafSpec, field: FieldSpec) -> Result<Vec<usize>> {
    let (p, k) = spec.as_omega_twist()?;
    let n = spec.n;
    let mut h = omega_twist_hypercohomology(n, p, k, field)?;
    if let Some(t) = h.iter().skip(n + 1).position(|&x| x != 0) {
        return Err(Error::CrossCheck(format!(
            "nonzero hypercohomology in degree {} > {n}",
            t + n + 1
        )));
    }
    h.truncate(n + 1);
    Ok(h)
}

pub fn line_bundle_cohomology(n: usize, field: FieldSpec, d: i64) -> Result<Vec<usize>> {
    sheaf_cohomology(SheafSpec::line_bundle(n, d), field)
}

/// `h^0..h^n` of `O(d)` on `P^n` from the closed form.
pub fn line_bundle_closed_form(n: usize, d: i64) -> Vec<usize> {
    let mut h = vec![0; n + 1];
    if d >= 0 {
        h[0] = binomial_i(n as i64 + d, n as i64);
    }
    if d <= -(n as i64) - 1 {
        h[n] = binomial_i(-d - 1, n as i64);
    }
    h
}

/// `h^0(P^n, ⋀^q T)` from the Euler sequence. The sequences
/// `0 -> ⋀^{j-1} T -> ⋀^j O(1)^{n+1} -> ⋀^j T -> 0` have acyclic middle
/// terms, so the sections are an alternating sum.
pub fn wedge_tangent_sections(n: usize, q: usize) -> usize {
    let mut acc: i64 = 0;
    for j in 0..=q {
        let term = (binomial(n + 1, j) * binomial(n + j, n)) as i64;
        if (q - j) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc as usize
}
