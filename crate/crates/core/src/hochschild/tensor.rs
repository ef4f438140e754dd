use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Scalar};
use crate::poly::{Monomial, Poly};

/// One basis tensor `c * (m_0 ⊗ m_1 ⊗ ... )` with monomial slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorWord {
    pub coefficient: Scalar,
    pub slots: Vec<Monomial>,
}

impl TensorWord {
    pub fn new(coefficient: Scalar, slots: Vec<Monomial>) -> Self {
        TensorWord { coefficient, slots }
    }

    /// Total polynomial degree summed over all slots.
    pub fn degree(&self) -> i64 {
        self.slots.iter().map(Monomial::degree).sum()
    }
}

/// Linear combination of monomial tensor words with a fixed slot count,
/// kept canonical: one entry per slot tuple, no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Tensor {
    pub(crate) n: usize,
    pub(crate) field: FieldSpec,
    pub(crate) slots: usize,
    pub(crate) terms: BTreeMap<Vec<Monomial>, Scalar>,
}

impl Tensor {
    pub(crate) fn new(n: usize, field: FieldSpec, slots: usize) -> Self {
        Tensor {
            n,
            field,
            slots,
            terms: BTreeMap::new(),
        }
    }

    fn check_word(&self, slots: &[Monomial]) -> Result<()> {
        if slots.len() != self.slots {
            return Err(Error::DegreeMismatch {
                left: self.slots,
                right: slots.len(),
            });
        }
        for m in slots {
            if m.arity() != self.n {
                return Err(Error::ArityMismatch {
                    left: self.n,
                    right: m.arity(),
                });
            }
            if !m.is_ordinary() {
                return Err(Error::LaurentNotSupported);
            }
        }
        Ok(())
    }

    pub(crate) fn push(&mut self, word: TensorWord) -> Result<()> {
        self.check_word(&word.slots)?;
        if word.coefficient.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: word.coefficient.field(),
            });
        }
        self.add_word(word.slots, word.coefficient);
        Ok(())
    }

    pub(crate) fn add_word(&mut self, slots: Vec<Monomial>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&slots) {
            Some(slot) => {
                let s = &*slot + &c;
                if s.is_zero() {
                    self.terms.remove(&slots);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(slots, c);
            }
        }
    }

    /// Multilinear expansion of `p_0 ⊗ p_1 ⊗ ...`.
    pub(crate) fn from_polys(n: usize, field: FieldSpec, polys: &[Poly]) -> Result<Self> {
        let mut out = Tensor::new(n, field, polys.len());
        for p in polys {
            if p.arity() != n {
                return Err(Error::ArityMismatch {
                    left: n,
                    right: p.arity(),
                });
            }
            if p.field() != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: p.field(),
                });
            }
            if !p.is_ordinary() {
                return Err(Error::LaurentNotSupported);
            }
        }
        let mut partial: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::new(), field.one())];
        for p in polys {
            let mut next = Vec::with_capacity(partial.len() * p.len());
            for (w, c) in &partial {
                for (m, a) in p.terms() {
                    let mut w2 = w.clone();
                    w2.push(m.clone());
                    next.push((w2, c * a));
                }
            }
            partial = next;
        }
        for (w, c) in partial {
            out.add_word(w, c);
        }
        Ok(out)
    }

    pub(crate) fn compatible(&self, other: &Tensor) -> Result<()> {
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
        if self.slots != other.slots {
            return Err(Error::DegreeMismatch {
                left: self.slots,
                right: other.slots,
            });
        }
        Ok(())
    }

    pub(crate) fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub(crate) fn scale(&self, s: &Scalar) -> Tensor {
        let mut out = Tensor::new(self.n, self.field, self.slots);
        for (w, c) in &self.terms {
            out.add_word(w.clone(), c * s);
        }
        out
    }

    pub(crate) fn words(&self) -> Vec<TensorWord> {
        self.terms
            .iter()
            .map(|(w, c)| TensorWord::new(c.clone(), w.clone()))
            .collect()
    }

    pub(crate) fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self
            .terms
            .keys()
            .map(|w| w.iter().map(Monomial::degree).sum())
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn render(
        &self,
        f: &mut fmt::Formatter<'_>,
        open: &str,
        sep0: &str,
        sep: &str,
        close: &str,
    ) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut s = format!("{c}*{open}");
                for (k, m) in w.iter().enumerate() {
                    if k == 1 {
                        s.push_str(sep0);
                    } else if k > 1 {
                        s.push_str(sep);
                    }
                    s.push_str(&m.to_string());
                }
                if w.len() == 1 {
                    s.push_str(sep0.trim_end());
                }
                s.push_str(close);
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! tensor_newtype_common {
    ($ty:ident, $offset:expr) => {
        impl $ty {
            pub fn zero(n: usize, field: FieldSpec, q: usize) -> Self {
                $ty(Tensor::new(n, field, q + $offset))
            }

            pub fn from_words<I>(n: usize, field: FieldSpec, q: usize, words: I) -> Result<Self>
            where
                I: IntoIterator<Item = TensorWord>,
            {
                let mut t = Tensor::new(n, field, q + $offset);
                for w in words {
                    t.push(w)?;
                }
                Ok($ty(t))
            }

            /// A single word with coefficient one.
            pub fn word(n: usize, field: FieldSpec, slots: Vec<Monomial>) -> Result<Self> {
                if slots.len() < $offset {
                    return Err(Error::DegreeTooLow(slots.len()));
                }
                let q = slots.len() - $offset;
                Self::from_words(n, field, q, [TensorWord::new(field.one(), slots)])
            }

            /// Multilinear expansion of a tensor of polynomials.
            pub fn tensor(n: usize, field: FieldSpec, polys: &[Poly]) -> Result<Self> {
                if polys.len() < $offset {
                    return Err(Error::DegreeTooLow(polys.len()));
                }
                Ok($ty(Tensor::from_polys(n, field, polys)?))
            }

            pub fn q(&self) -> usize {
                self.0.slots - $offset
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

            pub fn len(&self) -> usize {
                self.0.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.terms.is_empty()
            }

            pub fn words(&self) -> Vec<TensorWord> {
                self.0.words()
            }

            pub fn iter(&self) -> impl Iterator<Item = (&[Monomial], &Scalar)> {
                self.0.terms.iter().map(|(w, c)| (w.as_slice(), c))
            }

            pub fn coefficient(&self, slots: &[Monomial]) -> Scalar {
                self.0
                    .terms
                    .get(slots)
                    .cloned()
                    .unwrap_or_else(|| self.0.field.zero())
            }

            /// Distinct total degrees of the words present.
            pub fn degrees(&self) -> Vec<i64> {
                self.0.degrees()
            }

            pub fn try_add(&self, other: &Self) -> Result<Self> {
                Ok($ty(self.0.add(&other.0)?))
            }

            pub fn try_sub(&self, other: &Self) -> Result<Self> {
                self.try_add(&other.scale(&-self.0.field.one()))
            }

            pub fn scale(&self, s: &Scalar) -> Self {
                $ty(self.0.scale(s))
            }
        }
    };
}

/// An element of the Hochschild chain module `C_q(A) = A ⊗ A^{⊗q}`,
/// written `(m_0; m_1, ..., m_q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainElement(pub(crate) Tensor);

/// An element of the bar module `B_q(A) = A^{⊗(q+2)}`.
#[derive(Clone, PartialEq, Eq)]
pub struct BarElement(pub(crate) Tensor);

tensor_newtype_common!(ChainElement, 1);
tensor_newtype_common!(BarElement, 2);

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.render(f, "(", "; ", ", ", ")")
    }
}

impl fmt::Debug for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainElement[q={}]({self})", self.q())
    }
}

impl fmt::Display for BarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.render(f, "[", " ⊗ ", " ⊗ ", "]")
    }
}

impl fmt::Debug for BarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BarElement[q={}]({self})", self.q())
    }
}

fn sign(field: FieldSpec, i: usize) -> Scalar {
    if i % 2 == 0 {
        field.one()
    } else {
        -field.one()
    }
}

/// Faces of a bar word: `sum_{i=0}^{len-2} (-1)^i (.., a_i a_{i+1}, ..)`.
pub(crate) fn bar_faces(word: &[Monomial]) -> impl Iterator<Item = (Vec<Monomial>, usize)> + '_ {
    (0..word.len() - 1).map(move |i| {
        let mut w = Vec::with_capacity(word.len() - 1);
        w.extend_from_slice(&word[..i]);
        w.push(word[i].mul(&word[i + 1]));
        w.extend_from_slice(&word[i + 2..]);
        (w, i)
    })
}

/// Faces of a chain word `(m_0; m_1, ..., m_q)`: the inner contractions
/// `i = 0..q-1` followed by the cyclic face `(m_q m_0; m_1, ..., m_{q-1})`
/// with sign index `q`.
pub(crate) fn chain_faces(word: &[Monomial]) -> impl Iterator<Item = (Vec<Monomial>, usize)> + '_ {
    let q = word.len() - 1;
    bar_faces(word).take(q).chain(std::iter::once_with(move || {
        let mut w = Vec::with_capacity(q);
        w.push(word[q].mul(&word[0]));
        w.extend_from_slice(&word[1..q]);
        (w, q)
    }))
}

/// `∂(a_0 ⊗ ... ⊗ a_{q+1}) = Σ_{i=0}^{q} (-1)^i a_0 ⊗ ... ⊗ a_i a_{i+1} ⊗ ... ⊗ a_{q+1}`.
pub fn bar_differential(x: &BarElement) -> Result<BarElement> {
    let q = x.q();
    if q < 1 {
        return Err(Error::DegreeTooLow(q));
    }
    let field = x.field();
    let mut out = Tensor::new(x.arity(), field, x.0.slots - 1);
    for (w, c) in &x.0.terms {
        for (face, i) in bar_faces(w) {
            out.add_word(face, c * &sign(field, i));
        }
    }
    Ok(BarElement(out))
}

/// `s(a_0 ⊗ ... ⊗ a_{q+1}) = a_0 ⊗ ... ⊗ a_{q+1} ⊗ 1`.
pub fn bar_splitting(x: &BarElement) -> BarElement {
    let mut out = Tensor::new(x.arity(), x.field(), x.0.slots + 1);
    let one = Monomial::one(x.arity());
    for (w, c) in &x.0.terms {
        let mut w2 = w.clone();
        w2.push(one.clone());
        out.add_word(w2, c.clone());
    }
    BarElement(out)
}

/// The signed splitting `h = (-1)^{q+1} s` on `B_q`. Together with the unit
/// section `a -> a ⊗ 1` on `A` it satisfies `∂h + h∂ = id` on `B_q` for
/// `q ≥ 1`, `∂h + section∘augmentation = id` on `B_0`, and
/// `augmentation∘section = id` on `A`.
pub fn contracting_homotopy(x: &BarElement) -> BarElement {
    let s = bar_splitting(x);
    s.scale(&sign(x.field(), x.q() + 1))
}

/// The augmentation `B_0 -> A`, `a_0 ⊗ a_1 -> a_0 a_1`.
pub fn augmentation(x: &BarElement) -> Result<Poly> {
    if x.q() != 0 {
        return Err(Error::DegreeMismatch {
            left: 0,
            right: x.q(),
        });
    }
    let mut out = Poly::zero(x.arity(), x.field());
    for (w, c) in &x.0.terms {
        out.add_term(w[0].mul(&w[1]), c.clone());
    }
    Ok(out)
}

/// `a -> a ⊗ 1`, the splitting of the augmentation.
pub fn unit_section(a: &Poly) -> Result<BarElement> {
    BarElement::tensor(
        a.arity(),
        a.field(),
        &[a.clone(), Poly::one(a.arity(), a.field())],
    )
}

/// The action of `a ∈ A` through `a -> a ⊗ 1 ∈ A^e`, i.e. on the first slot.
pub fn act_first_slot(a: &Poly, x: &BarElement) -> Result<BarElement> {
    act_on_slot(a, x, 0)
}

/// The action of `a ∈ A` through `a -> 1 ⊗ a ∈ A^e`, i.e. on the last slot.
pub fn act_last_slot(a: &Poly, x: &BarElement) -> Result<BarElement> {
    act_on_slot(a, x, x.0.slots - 1)
}

fn act_on_slot(a: &Poly, x: &BarElement, slot: usize) -> Result<BarElement> {
    if a.arity() != x.arity() {
        return Err(Error::ArityMismatch {
            left: x.arity(),
            right: a.arity(),
        });
    }
    if a.field() != x.field() {
        return Err(Error::FieldMismatch {
            left: x.field(),
            right: a.field(),
        });
    }
    if !a.is_ordinary() {
        return Err(Error::LaurentNotSupported);
    }
    let mut out = Tensor::new(x.arity(), x.field(), x.0.slots);
    for (w, c) in &x.0.terms {
        for (m, k) in a.terms() {
            let mut w2 = w.clone();
            w2[slot] = w2[slot].mul(m);
            out.add_word(w2, c * k);
        }
    }
    Ok(BarElement(out))
}

/// `d̃_j t_i` in `B_q`: for `1 ≤ j ≤ q` the element
/// `1^{⊗j} ⊗ (t_i ⊗ 1 - 1 ⊗ t_i) ⊗ 1^{⊗(q-j)}`, and for `j = 0` the element
/// `t_i ⊗ 1 ⊗ ... ⊗ 1 - 1 ⊗ ... ⊗ 1 ⊗ t_i`. Variables are indexed from zero.
pub fn tilde_d(j: usize, i: usize, q: usize, n: usize, field: FieldSpec) -> Result<BarElement> {
    if j > q {
        return Err(Error::IndexOutOfRange(format!(
            "slot index {j} exceeds q = {q}"
        )));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange(format!(
            "variable index {i} with n = {n}"
        )));
    }
    let one = Monomial::one(n);
    let t = Monomial::variable(n, i);
    let slots = q + 2;
    let (first, second) = if j == 0 { (0, slots - 1) } else { (j, j + 1) };
    let mut a = vec![one.clone(); slots];
    a[first] = t.clone();
    let mut b = vec![one; slots];
    b[second] = t;
    BarElement::from_words(
        n,
        field,
        q,
        [
            TensorWord::new(field.one(), a),
            TensorWord::new(-field.one(), b),
        ],
    )
}

impl BarElement {
    /// The image in `C_q(A) = B_q(A) ⊗_{A^e} A`:
    /// `a_0 ⊗ a_1 ⊗ ... ⊗ a_{q+1} -> (a_{q+1} a_0; a_1, ..., a_q)`.
    pub fn to_chain(&self) -> ChainElement {
        let q = self.q();
        let mut out = Tensor::new(self.arity(), self.field(), q + 1);
        for (w, c) in &self.0.terms {
            let mut w2 = Vec::with_capacity(q + 1);
            w2.push(w[q + 1].mul(&w[0]));
            w2.extend_from_slice(&w[1..=q]);
            out.add_word(w2, c.clone());
        }
        ChainElement(out)
    }
}

impl ChainElement {
    /// The lift `(m_0; m_1, ..., m_q) -> m_0 ⊗ m_1 ⊗ ... ⊗ m_q ⊗ 1`.
    pub fn to_bar(&self) -> BarElement {
        let mut out = Tensor::new(self.arity(), self.field(), self.0.slots + 1);
        let one = Monomial::one(self.arity());
        for (w, c) in &self.0.terms {
            let mut w2 = w.clone();
            w2.push(one.clone());
            out.add_word(w2, c.clone());
        }
        BarElement(out)
    }
}

/// The Hochschild boundary
/// `b(m_0; m_1, ..., m_q) = Σ_{i=0}^{q-1} (-1)^i (..., m_i m_{i+1}, ...) + (-1)^q (m_q m_0; m_1, ..., m_{q-1})`.
pub fn chain_differential(x: &ChainElement) -> Result<ChainElement> {
    let q = x.q();
    if q < 1 {
        return Err(Error::DegreeTooLow(q));
    }
    let field = x.field();
    let mut out = Tensor::new(x.arity(), field, q);
    for (w, c) in &x.0.terms {
        for (face, i) in chain_faces(w) {
            out.add_word(face, c * &sign(field, i));
        }
    }
    Ok(ChainElement(out))
}
