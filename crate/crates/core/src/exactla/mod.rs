//! Exact scalars over the rationals and prime fields, sparse matrices, and
//! the rank computations every homology check reduces to.

mod elim;
mod matrix;
mod scalar;

pub use elim::rank;
pub use matrix::SparseMatrix;
pub use scalar::{is_prime, FieldKind, FieldSpec, Scalar};

use crate::error::{Error, Result};

/// Dimension of the kernel of `m`.
pub fn nullity(m: &SparseMatrix) -> usize {
    m.ncols() - rank(m)
}

/// `dim ker(d_out) - rank(d_in)` for a window `d_in: X -> Y`, `d_out: Y -> Z`.
pub fn homology_rank(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize> {
    check_window(d_in, d_out)?;
    Ok(nullity(d_out) - rank(d_in))
}

fn check_window(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<()> {
    if d_in.nrows() != d_out.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in lands in dimension {} but d_out starts from dimension {}",
            d_in.nrows(),
            d_out.ncols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::CompositionNotZero);
    }
    Ok(())
}

/// Rank of the map `H(source) -> H(target)` induced by `f`.
///
/// With `Z = ker d_out` and `B' = im d_in'`, the induced rank is
/// `dim(f(Z) + B') - dim B'`, and `dim(f(Z) + B')` is the rank of
/// `[f | d_in']` restricted to `ker [d_out | 0]`, which equals
/// `rank [[f, d_in'], [d_out, 0]] - rank d_out`.
pub fn induced_rank_on_homology(
    f: &SparseMatrix,
    source: (&SparseMatrix, &SparseMatrix),
    target: (&SparseMatrix, &SparseMatrix),
) -> Result<usize> {
    let (d_in, d_out) = source;
    let (t_in, t_out) = target;
    check_window(d_in, d_out)?;
    check_window(t_in, t_out)?;
    if f.ncols() != d_out.ncols() || f.nrows() != t_out.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "f is {}x{} but the windows need {}x{}",
            f.nrows(),
            f.ncols(),
            t_out.ncols(),
            d_out.ncols()
        )));
    }
    let rank_out = rank(d_out);
    let rank_t_in = rank(t_in);

    // cycles go to cycles
    if rank(&t_out.mul(f)?.vstack(d_out)?) != rank_out {
        return Err(Error::NotAChainMap(
            "a cycle maps outside the target cycles",
        ));
    }
    // boundaries go to boundaries
    if rank(&t_in.hstack(&f.mul(d_in)?)?) != rank_t_in {
        return Err(Error::NotAChainMap(
            "a boundary maps outside the target boundaries",
        ));
    }

    let zero = SparseMatrix::zeros(d_out.nrows(), t_in.ncols(), f.field());
    let block = f.hstack(t_in)?.vstack(&d_out.hstack(&zero)?)?;
    Ok(rank(&block) - rank_out - rank_t_in)
}
