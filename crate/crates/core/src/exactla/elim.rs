//! Sparse exact elimination.
//!
//! The rank of a matrix is the sum of the ranks of the connected components
//! of its row/column incidence graph, so every matrix is first split into
//! independent blocks (for graded complexes these are the multidegree
//! pieces). Each block is then reduced with a minimum-column-count pivot
//! rule: pick the live column touched by the fewest rows, use the shortest
//! of those rows as pivot, clear the column. Ties break on the smallest
//! index, so the pivot sequence is a function of the input alone.
//!
//! Over the rationals rows are scaled to primitive integer vectors and
//! reduced fraction-free (`r <- a*r - b*pivot`, then divided by content).
//! Blocks first run on checked `i64`; a block that overflows is redone on
//! `BigInt`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::matrix::SparseMatrix;
use super::scalar::{mul_mod, pow_mod, FieldKind, Scalar};

type Row<E> = Vec<(usize, E)>;

trait Kernel {
    type E: Clone;
    fn prepare_pivot(&self, pivot: &mut Row<Self::E>, col: usize);
    /// Clears `col` from `row` using `pivot`; `None` signals overflow.
    fn eliminate(
        &self,
        row: &[(usize, Self::E)],
        pivot: &[(usize, Self::E)],
        col: usize,
    ) -> Option<Row<Self::E>>;
}

fn entry<E>(row: &[(usize, E)], col: usize) -> &E {
    let i = row
        .binary_search_by_key(&col, |(c, _)| *c)
        .expect("pivot column present in row");
    &row[i].1
}

/// Merges `a*x + b*y` over sorted sparse rows, dropping zeros.
fn combine<E, F>(x: &[(usize, E)], y: &[(usize, E)], mut f: F) -> Option<Row<E>>
where
    E: Clone,
    F: FnMut(Option<&E>, Option<&E>) -> Option<Option<E>>,
{
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, vy))) if cx == cy => {
                i += 1;
                j += 1;
                (*cx, f(Some(vx), Some(vy))?)
            }
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                i += 1;
                (*cx, f(Some(vx), None)?)
            }
            (Some((cx, vx)), None) => {
                i += 1;
                (*cx, f(Some(vx), None)?)
            }
            (_, Some((cy, vy))) => {
                j += 1;
                (*cy, f(None, Some(vy))?)
            }
            (None, None) => unreachable!(),
        };
        if let Some(v) = v {
            out.push((c, v));
        }
    }
    Some(out)
}

struct ModKernel {
    p: u64,
}

impl Kernel for ModKernel {
    type E = u64;

    fn prepare_pivot(&self, pivot: &mut Row<u64>, col: usize) {
        let inv = pow_mod(*entry(pivot, col), self.p - 2, self.p);
        for (_, v) in pivot.iter_mut() {
            *v = mul_mod(*v, inv, self.p);
        }
    }

    fn eliminate(
        &self,
        row: &[(usize, u64)],
        pivot: &[(usize, u64)],
        col: usize,
    ) -> Option<Row<u64>> {
        let p = self.p;
        let factor = p - entry(row, col);
        combine(row, pivot, |a, b| {
            let a = a.copied().unwrap_or(0);
            let b = b.map_or(0, |b| mul_mod(*b, factor, p));
            let s = ((a as u128 + b as u128) % p as u128) as u64;
            Some((s != 0).then_some(s))
        })
    }
}

trait IntLike: Clone + Zero + One + Integer + Signed {
    fn checked_mul_(&self, o: &Self) -> Option<Self>;
    fn checked_sub_(&self, o: &Self) -> Option<Self>;
}

impl IntLike for i64 {
    fn checked_mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn checked_sub_(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
}

impl IntLike for BigInt {
    fn checked_mul_(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn checked_sub_(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
}

struct IntKernel<T>(std::marker::PhantomData<T>);

fn make_primitive<T: IntLike>(row: &mut Row<T>) {
    let g = row.iter().fold(T::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
}

impl<T: IntLike> Kernel for IntKernel<T> {
    type E = T;

    fn prepare_pivot(&self, _pivot: &mut Row<T>, _col: usize) {}

    fn eliminate(&self, row: &[(usize, T)], pivot: &[(usize, T)], col: usize) -> Option<Row<T>> {
        let pc = entry(pivot, col);
        let rc = entry(row, col);
        let g = pc.gcd(rc);
        let a = pc.div_floor(&g);
        let b = rc.div_floor(&g);
        let mut out = combine(row, pivot, |x, y| {
            let x = match x {
                Some(x) => x.checked_mul_(&a)?,
                None => T::zero(),
            };
            let y = match y {
                Some(y) => y.checked_mul_(&b)?,
                None => T::zero(),
            };
            let s = x.checked_sub_(&y)?;
            Some((!s.is_zero()).then_some(s))
        })?;
        make_primitive(&mut out);
        Some(out)
    }
}

/// Minimum-column-count elimination; `None` when the kernel overflowed.
fn eliminate_rank<K: Kernel>(kernel: &K, ncols: usize, mut rows: Vec<Row<K::E>>) -> Option<usize> {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut queue: BTreeSet<(usize, usize)> = col_rows
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(c, s)| (s.len(), c))
        .collect();

    fn set_member(
        col_rows: &mut [BTreeSet<usize>],
        queue: &mut BTreeSet<(usize, usize)>,
        c: usize,
        r: usize,
        present: bool,
    ) {
        let before = col_rows[c].len();
        let changed = if present {
            col_rows[c].insert(r)
        } else {
            col_rows[c].remove(&r)
        };
        if changed {
            queue.remove(&(before, c));
            let after = col_rows[c].len();
            if after > 0 {
                queue.insert((after, c));
            }
        }
    }

    let mut rank = 0;
    while let Some((_, col)) = queue.pop_first() {
        let candidates = std::mem::take(&mut col_rows[col]);
        let pivot_row = *candidates
            .iter()
            .min_by_key(|&&r| (rows[r].len(), r))
            .expect("queued column has rows");
        rank += 1;
        let mut pivot = std::mem::take(&mut rows[pivot_row]);
        for (c, _) in &pivot {
            if *c != col {
                set_member(&mut col_rows, &mut queue, *c, pivot_row, false);
            }
        }
        kernel.prepare_pivot(&mut pivot, col);
        for &r in candidates.iter().filter(|&&r| r != pivot_row) {
            let old = std::mem::take(&mut rows[r]);
            let new = kernel.eliminate(&old, &pivot, col)?;
            for (c, _) in &pivot {
                if *c == col {
                    continue;
                }
                let had = old.binary_search_by_key(c, |(x, _)| *x).is_ok();
                let has = new.binary_search_by_key(c, |(x, _)| *x).is_ok();
                if had != has {
                    set_member(&mut col_rows, &mut queue, *c, r, has);
                }
            }
            rows[r] = new;
        }
    }
    Some(rank)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits the nonzero rows into connected components. Each block lists
/// its rows (with columns renumbered locally) and its column count.
fn components(m: &SparseMatrix) -> Vec<(usize, Vec<&[(usize, Scalar)]>, HashMap<usize, usize>)> {
    let mut parent: Vec<usize> = (0..m.ncols()).collect();
    for row in m.rows() {
        if let Some((first, _)) = row.first() {
            let a = find(&mut parent, *first);
            for (c, _) in &row[1..] {
                let b = find(&mut parent, *c);
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut block_of_root: HashMap<usize, usize> = HashMap::new();
    let mut blocks: Vec<(usize, Vec<&[(usize, Scalar)]>, HashMap<usize, usize>)> = Vec::new();
    for row in m.rows() {
        let Some((first, _)) = row.first() else {
            continue;
        };
        let root = find(&mut parent, *first);
        let idx = *block_of_root.entry(root).or_insert_with(|| {
            blocks.push((0, Vec::new(), HashMap::new()));
            blocks.len() - 1
        });
        let block = &mut blocks[idx];
        for (c, _) in row {
            let next = block.2.len();
            block.2.entry(*c).or_insert(next);
        }
        block.1.push(row);
    }
    for block in &mut blocks {
        block.0 = block.2.len();
    }
    blocks
}

fn rational_row_to_ints(row: &[(usize, Scalar)], cols: &HashMap<usize, usize>) -> Row<BigInt> {
    let denoms = row.iter().fold(BigInt::one(), |l, (_, v)| {
        l.lcm(v.as_rational().expect("rational entry").denom())
    });
    let mut out: Row<BigInt> = row
        .iter()
        .map(|(c, v)| {
            let r = v.as_rational().expect("rational entry");
            (cols[c], r.numer() * (&denoms / r.denom()))
        })
        .collect();
    out.sort_by_key(|(c, _)| *c);
    make_primitive(&mut out);
    out
}

fn block_rank(
    kind: FieldKind,
    ncols: usize,
    rows: &[&[(usize, Scalar)]],
    cols: &HashMap<usize, usize>,
) -> usize {
    if rows.len() == 1 {
        return 1;
    }
    match kind {
        FieldKind::PrimeField(p) => {
            let local: Vec<Row<u64>> = rows
                .iter()
                .map(|row| {
                    let mut out: Row<u64> = row
                        .iter()
                        .map(|(c, v)| match v {
                            Scalar::Modular { value, .. } => (cols[c], *value),
                            Scalar::Rational(_) => unreachable!("field checked"),
                        })
                        .collect();
                    out.sort_by_key(|(c, _)| *c);
                    out
                })
                .collect();
            eliminate_rank(&ModKernel { p }, ncols, local)
                .expect("modular elimination cannot overflow")
        }
        FieldKind::Rationals => {
            let big: Vec<Row<BigInt>> = rows
                .iter()
                .map(|row| rational_row_to_ints(row, cols))
                .collect();
            let small: Option<Vec<Row<i64>>> = big
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(c, v)| v.to_i64().map(|v| (*c, v)))
                        .collect()
                })
                .collect();
            small
                .and_then(|small| {
                    eliminate_rank(&IntKernel::<i64>(Default::default()), ncols, small)
                })
                .unwrap_or_else(|| {
                    eliminate_rank(&IntKernel::<BigInt>(Default::default()), ncols, big)
                        .expect("bigint elimination cannot overflow")
                })
        }
    }
}

/// Exact rank of `m` over its field.
pub fn rank(m: &SparseMatrix) -> usize {
    let kind = m.field().kind();
    components(m)
        .par_iter()
        .map(|(ncols, rows, cols)| block_rank(kind, *ncols, rows, cols))
        .sum()
}
