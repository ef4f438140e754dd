//! Small counting helpers shared by the basis enumerations.

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(n, k)` with the convention that it vanishes for negative `n` or `k`.
pub fn binomial_i(n: i64, k: i64) -> usize {
    if n < 0 || k < 0 {
        0
    } else {
        binomial(n as usize, k as usize)
    }
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All permutations of `0..q` with their signs, in lexicographic order.
pub fn signed_permutations(q: usize) -> Vec<(Vec<usize>, i64)> {
    use itertools::Itertools;
    (0..q)
        .permutations(q)
        .map(|p| {
            let sign = permutation_sign(&p);
            (p, sign)
        })
        .collect()
}

/// Sign of the permutation sorting `seq` (distinct entries), by counting
/// inversions.
pub fn permutation_sign<T: Ord>(seq: &[T]) -> i64 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Compositions of `d` into `parts` nonnegative parts, first part largest
/// first.
pub fn compositions(d: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            go(left - e, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(d, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

pub fn factorial(q: usize) -> u64 {
    (1..=q as u64).product()
}
