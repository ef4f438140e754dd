use std::collections::BTreeMap;
use std::fmt;

use crate::combinatorics::{permutation_sign, signed_permutations, subsets};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Scalar};
use crate::poly::{enumerate_monomials, Monomial, Poly};

use super::tensor::{ChainElement, Tensor};

/// Terms `c * m * e_{i_1} ∧ ... ∧ e_{i_q}` keyed by `(i_1 < ... < i_q, m)`.
#[derive(Clone, PartialEq, Eq)]
struct Alternating {
    n: usize,
    field: FieldSpec,
    q: usize,
    terms: BTreeMap<(Vec<usize>, Monomial), Scalar>,
}

impl Alternating {
    fn new(n: usize, field: FieldSpec, q: usize) -> Self {
        Alternating {
            n,
            field,
            q,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c * m * e_{indices}` for indices in any order; repeated indices
    /// give zero.
    fn add(&mut self, m: Monomial, indices: &[usize], c: Scalar) -> Result<()> {
        if indices.len() != self.q {
            return Err(Error::DegreeMismatch {
                left: self.q,
                right: indices.len(),
            });
        }
        if m.arity() != self.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: m.arity(),
            });
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange(format!(
                "index {i} with n = {}",
                self.n
            )));
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(());
        }
        let c = if permutation_sign(indices) < 0 { -c } else { c };
        self.add_sorted(sorted, m, c);
        Ok(())
    }

    fn add_sorted(&mut self, indices: Vec<usize>, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (indices, m);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                let s = &*slot + &c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn scale(&self, s: &Scalar) -> Self {
        let mut out = Alternating::new(self.n, self.field, self.q);
        for ((i, m), c) in &self.terms {
            out.add_sorted(i.clone(), m.clone(), c * s);
        }
        out
    }

    fn plus(&self, other: &Self) -> Result<Self> {
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
        if self.q != other.q {
            return Err(Error::DegreeMismatch {
                left: self.q,
                right: other.q,
            });
        }
        let mut out = self.clone();
        for ((i, m), c) in &other.terms {
            out.add_sorted(i.clone(), m.clone(), c.clone());
        }
        Ok(out)
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, symbol: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((idx, m), c)| {
                let wedge: Vec<String> = idx.iter().map(|i| format!("{symbol}{}", i + 1)).collect();
                let mut s = c.to_string();
                if !m.is_one() {
                    s.push_str(&format!("*{m}"));
                }
                if !wedge.is_empty() {
                    s.push_str(&format!("*{}", wedge.join("^")));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! alternating_newtype {
    ($ty:ident, $symbol:expr) => {
        #[derive(Clone, PartialEq, Eq)]
        pub struct $ty(Alternating);

        impl $ty {
            pub fn zero(n: usize, field: FieldSpec, q: usize) -> Self {
                $ty(Alternating::new(n, field, q))
            }

            /// `m * e_{i_1} ∧ ... ∧ e_{i_q}`; indices may come in any order.
            pub fn basis(
                n: usize,
                field: FieldSpec,
                m: Monomial,
                indices: &[usize],
            ) -> Result<Self> {
                let mut a = Alternating::new(n, field, indices.len());
                a.add(m, indices, field.one())?;
                Ok($ty(a))
            }

            pub fn from_terms<I>(n: usize, field: FieldSpec, q: usize, terms: I) -> Result<Self>
            where
                I: IntoIterator<Item = (Monomial, Vec<usize>, Scalar)>,
            {
                let mut a = Alternating::new(n, field, q);
                for (m, idx, c) in terms {
                    if c.field() != field {
                        return Err(Error::FieldMismatch {
                            left: field,
                            right: c.field(),
                        });
                    }
                    a.add(m, &idx, c)?;
                }
                Ok($ty(a))
            }

            pub fn degree(&self) -> usize {
                self.0.q
            }

            pub fn arity(&self) -> usize {
                self.0.n
            }

            pub fn field(&self) -> FieldSpec {
                self.0.field
            }

            pub fn is_zero(&self) -> bool {
                self.0.terms.is_empty()
            }

            /// `(indices, coefficient monomial, scalar)` in canonical order.
            pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Monomial, &Scalar)> {
                self.0.terms.iter().map(|((i, m), c)| (i.as_slice(), m, c))
            }

            pub fn scale(&self, s: &Scalar) -> Self {
                $ty(self.0.scale(s))
            }

            pub fn try_add(&self, other: &Self) -> Result<Self> {
                Ok($ty(self.0.plus(&other.0)?))
            }

            /// Distinct total degrees, counting each wedge factor as degree one.
            pub fn degrees(&self) -> Vec<i64> {
                let mut d: Vec<i64> = self
                    .0
                    .terms
                    .keys()
                    .map(|(i, m)| m.degree() + i.len() as i64)
                    .collect();
                d.sort_unstable();
                d.dedup();
                d
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.render(f, $symbol)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}[q={}]({self})", stringify!($ty), self.0.q)
            }
        }
    };
}

alternating_newtype!(DifferentialForm, "dt");
alternating_newtype!(PolyVector, "D");

/// Basis `m * dt_I` of `(Ω^q)_d`: index sets in lexicographic order, then
/// coefficient monomials of degree `d - q` in monomial order.
pub fn omega_basis(n: usize, q: usize, d: usize) -> Vec<(Vec<usize>, Monomial)> {
    if d < q {
        return Vec::new();
    }
    let monomials = enumerate_monomials(n, d - q);
    subsets(n, q)
        .into_iter()
        .flat_map(|idx| monomials.iter().map(move |m| (idx.clone(), m.clone())))
        .collect()
}

pub fn omega_spanning_set(n: usize, field: FieldSpec, q: usize, d: usize) -> Vec<DifferentialForm> {
    omega_basis(n, q, d)
        .into_iter()
        .map(|(idx, m)| DifferentialForm::basis(n, field, m, &idx).expect("valid basis element"))
        .collect()
}

/// Integer expansion of `m_0 dm_1 ∧ ... ∧ dm_q` for one word, as
/// `(sorted indices, coefficient monomial, integer coefficient)` before
/// combining like terms.
pub(crate) fn pi_word(word: &[Monomial]) -> Vec<(Vec<usize>, Monomial, i64)> {
    let n = word[0].arity();
    let mut partial: Vec<(Vec<usize>, Monomial, i64)> = vec![(Vec::new(), word[0].clone(), 1)];
    for m in &word[1..] {
        let mut next = Vec::new();
        for (idx, coef, c) in &partial {
            for i in 0..n {
                if idx.contains(&i) {
                    continue;
                }
                if let Some((e, rest)) = m.differentiate(i) {
                    let mut idx2 = idx.clone();
                    idx2.push(i);
                    next.push((idx2, coef.mul(&rest), c * e as i64));
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(idx, m, c)| {
            let s = permutation_sign(&idx);
            let mut sorted = idx;
            sorted.sort_unstable();
            (sorted, m, c * s)
        })
        .collect()
}

/// `π(m_0; m_1, ..., m_q) = m_0 dm_1 ∧ ... ∧ dm_q`, extended linearly.
pub fn hkr_pi(x: &ChainElement) -> DifferentialForm {
    let field = x.field();
    let mut out = Alternating::new(x.arity(), field, x.q());
    for (w, c) in x.iter() {
        for (idx, m, k) in pi_word(w) {
            out.add_sorted(idx, m, c * &field.from_i64(k));
        }
    }
    DifferentialForm(out)
}

/// `ε(m dt_{i_1} ∧ ... ∧ dt_{i_q}) = Σ_σ sgn(σ) (m; t_{i_σ(1)}, ..., t_{i_σ(q)})`.
pub fn antisymmetrization_eps(omega: &DifferentialForm) -> ChainElement {
    let n = omega.arity();
    let field = omega.field();
    let q = omega.degree();
    let perms = signed_permutations(q);
    let mut out = Tensor::new(n, field, q + 1);
    for (idx, m, c) in omega.terms() {
        for (p, s) in &perms {
            let mut w = Vec::with_capacity(q + 1);
            w.push(m.clone());
            w.extend(p.iter().map(|&k| Monomial::variable(n, idx[k])));
            out.add_word(w, c * &field.from_i64(*s));
        }
    }
    ChainElement(out)
}

/// `π_cd(v)(x)`: for `v = f ∂_{i_1} ∧ ... ∧ ∂_{i_q}` and `x = (m_0; a_1, ..., a_q)`
/// this is `f m_0 Σ_σ sgn(σ) ∂_{i_σ(1)}(a_1) ... ∂_{i_σ(q)}(a_q)`, extended
/// bilinearly over `A`.
pub fn pi_cd_evaluate(v: &PolyVector, x: &ChainElement) -> Result<Poly> {
    if v.degree() != x.q() {
        return Err(Error::DegreeMismatch {
            left: v.degree(),
            right: x.q(),
        });
    }
    if v.arity() != x.arity() {
        return Err(Error::ArityMismatch {
            left: v.arity(),
            right: x.arity(),
        });
    }
    if v.field() != x.field() {
        return Err(Error::FieldMismatch {
            left: v.field(),
            right: x.field(),
        });
    }
    let n = v.arity();
    let field = v.field();
    let q = v.degree();
    let perms = signed_permutations(q);
    let mut out = Poly::zero(n, field);
    for (idx, f, vc) in v.terms() {
        for (w, xc) in x.iter() {
            for (p, s) in &perms {
                let mut mono = f.mul(&w[0]);
                let mut k: i64 = *s;
                for (slot, &pk) in p.iter().enumerate() {
                    match w[slot + 1].differentiate(idx[pk]) {
                        Some((e, rest)) => {
                            mono = mono.mul(&rest);
                            k *= e as i64;
                        }
                        None => {
                            k = 0;
                            break;
                        }
                    }
                }
                if k != 0 {
                    out.add_term(mono, &(vc * xc) * &field.from_i64(k));
                }
            }
        }
    }
    Ok(out)
}

/// The pairing of `⋀^q T` with `Ω^q` dual to the bases `∂_I` and `dt_I`.
pub fn pairing(v: &PolyVector, omega: &DifferentialForm) -> Result<Poly> {
    if v.degree() != omega.degree() {
        return Err(Error::DegreeMismatch {
            left: v.degree(),
            right: omega.degree(),
        });
    }
    if v.arity() != omega.arity() {
        return Err(Error::ArityMismatch {
            left: v.arity(),
            right: omega.arity(),
        });
    }
    let mut out = Poly::zero(v.arity(), v.field());
    for (i, f, a) in v.terms() {
        for (j, g, b) in omega.terms() {
            if i == j {
                out.add_term(f.mul(g), a * b);
            }
        }
    }
    Ok(out)
}
