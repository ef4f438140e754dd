//! Sparse multivariate (Laurent) polynomials over an exact field.
//!
//! Monomials are ordered graded-lexicographically: lower total degree first,
//! and within a degree `t1` dominates `t2` dominates ... so that
//! `enumerate_monomials(2, 2)` yields `t1^2, t1*t2, t2^2`. This single order
//! fixes every basis layout in the crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[i32]>,
}

impl Monomial {
    pub fn new(exps: impl Into<Box<[i32]>>) -> Self {
        Monomial { exps: exps.into() }
    }

    pub fn one(n: usize) -> Self {
        Monomial::new(vec![0; n])
    }

    /// `t_{i+1}` (variables are indexed from zero).
    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    /// No negative exponents.
    pub fn is_ordinary(&self) -> bool {
        self.exps.iter().all(|&e| e >= 0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect::<Vec<_>>(),
        )
    }

    /// `self / t_i` together with the exponent of `t_i`, or `None` if that
    /// exponent is zero.
    pub fn differentiate(&self, i: usize) -> Option<(i32, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.to_vec();
        exps[i] -= 1;
        Some((e, Monomial::new(exps)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "t{}", i + 1)?;
            } else {
                write!(f, "t{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All ordinary monomials in `n` variables of total degree exactly `d`,
/// in the crate-wide monomial order.
pub fn enumerate_monomials(n: usize, d: usize) -> Vec<Monomial> {
    fn go(n: usize, left: i32, prefix: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            go(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(n, d as i32, &mut Vec::with_capacity(n), &mut out);
    out
}

/// A polynomial with finitely many nonzero terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        Poly {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn one(n: usize, field: FieldSpec) -> Self {
        Self::constant(n, field.one())
    }

    pub fn variable(n: usize, field: FieldSpec, i: usize) -> Self {
        Self::term(Monomial::variable(n, i), field.one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(m.arity(), c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(n: usize, field: FieldSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Poly::zero(n, field);
        for (m, c) in terms {
            if m.arity() != n {
                return Err(Error::ArityMismatch {
                    left: n,
                    right: m.arity(),
                });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: c.field(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let s = &*slot + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// The constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_ordinary(&self) -> bool {
        self.terms.keys().all(Monomial::is_ordinary)
    }

    fn compatible(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = Poly::zero(self.n, self.field);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.n, self.field);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            n: self.n,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if !self.is_ordinary() {
            return Err(Error::LaurentNotSupported);
        }
        if i >= self.n {
            return Err(Error::IndexOutOfRange(format!(
                "variable {i} of {}",
                self.n
            )));
        }
        let mut out = Poly::zero(self.n, self.field);
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.differentiate(i) {
                out.add_term(rest, c * &self.field.from_i64(e as i64));
            }
        }
        Ok(out)
    }

    /// The nonzero components `(df/dt_i, i)` of `df`.
    pub fn exterior_derivative(&self) -> Result<Vec<(Poly, usize)>> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let p = self.partial_derivative(i)?;
            if !p.is_zero() {
                out.push((p, i));
            }
        }
        Ok(out)
    }

    /// Ring map sending variable `j` to variable `map[j]` of a polynomial
    /// ring in `new_n` variables.
    pub fn rename_variables(&self, new_n: usize, map: &[usize]) -> Result<Poly> {
        if map.len() != self.n || map.iter().any(|&j| j >= new_n) {
            return Err(Error::IndexOutOfRange("variable renaming".into()));
        }
        let mut out = Poly::zero(new_n, self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_n];
            for (j, &x) in m.exponents().iter().enumerate() {
                e[map[j]] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    /// `c*t1^a1*...*tn^an` terms joined by ` + `, in monomial order;
    /// zero exponents are omitted and `t1^1` is written `t1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.field)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("compatible polynomials")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-self.field.one())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.multiply(rhs).expect("compatible polynomials")
    }
}
