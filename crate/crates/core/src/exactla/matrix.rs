use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::scalar::{FieldSpec, Scalar};

/// A sparse matrix over an exact field, stored by rows. Entries are kept
/// sorted by column and no stored entry is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    field: FieldSpec,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize, field: FieldSpec) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            field,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Self::zeros(n, n, field);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row.push((i, field.one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions
    /// are summed and zero results dropped.
    pub fn from_triplets<I>(
        nrows: usize,
        ncols: usize,
        field: FieldSpec,
        triplets: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); nrows];
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(Error::IndexOutOfRange(format!(
                    "entry ({r}, {c}) in a {nrows}x{ncols} matrix"
                )));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: v.field(),
                });
            }
            match acc[r].get_mut(&c) {
                Some(slot) => *slot = &*slot + &v,
                None => {
                    acc[r].insert(c, v);
                }
            }
        }
        let rows = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix {
            nrows,
            ncols,
            field,
            rows,
        })
    }

    /// Integer triplets, reduced into `field`.
    pub fn from_int_triplets<I>(
        nrows: usize,
        ncols: usize,
        field: FieldSpec,
        triplets: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        Self::from_triplets(
            nrows,
            ncols,
            field,
            triplets
                .into_iter()
                .map(|(r, c, v)| (r, c, field.from_i64(v))),
        )
    }

    pub fn from_dense(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged dense rows".into()));
        }
        Self::from_int_triplets(
            nrows,
            ncols,
            field,
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v))),
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, Scalar)]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) => self.rows[r][i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.ncols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            field: self.field,
            rows,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zeros(self.nrows, self.ncols, self.field);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect())
            .collect();
        SparseMatrix { rows, ..*self }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        if self.ncols != rhs.nrows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &rhs.rows[*k] {
                        let t = a * b;
                        match acc.get_mut(c) {
                            Some(slot) => *slot = &*slot + &t,
                            None => {
                                acc.insert(*c, t);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: rhs.ncols,
            field: self.field,
            rows,
        })
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        if self.nrows != rhs.nrows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.nrows, rhs.nrows
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| {
                a.iter()
                    .cloned()
                    .chain(b.iter().map(|(c, v)| (c + self.ncols, v.clone())))
                    .collect()
            })
            .collect();
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols + rhs.ncols,
            field: self.field,
            rows,
        })
    }

    /// `self` stacked above `rhs`.
    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        if self.ncols != rhs.ncols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.ncols, rhs.ncols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(rhs.rows.iter().cloned());
        Ok(SparseMatrix {
            nrows: self.nrows + rhs.nrows,
            ncols: self.ncols,
            field: self.field,
            rows,
        })
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SparseMatrix {}x{} over {}",
            self.nrows, self.ncols, self.field
        )?;
        if self.nrows * self.ncols <= 400 {
            for r in 0..self.nrows {
                let cells: Vec<String> = (0..self.ncols)
                    .map(|c| self.get(r, c).to_string())
                    .collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}
