//! Hochschild cohomology through the Koszul resolution of `A` over `A^e`,
//! and through graded duals of the chain complex.
//!
//! `A^e = A ⊗ A` is modelled as a polynomial ring in `2n` variables with
//! `t_i ⊗ 1 -> u_i` (index `i`) and `1 ⊗ t_i -> v_i` (index `n + i`). The
//! Koszul complex on `τ_i = u_i - v_i` has basis `e_S` for `S ⊆ {0..n}` and
//! differential `d(e_S) = Σ_k (-1)^k τ_{s_k} e_{S \ s_k}`.
//!
//! Orientation: the dual basis element `e_I^*` of `Hom_{A^e}(K_q, A)` is
//! identified with `∂_{i_1} ∧ ... ∧ ∂_{i_q}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::combinatorics::{binomial, signed_permutations, subsets};
use crate::error::{Error, Result};
use crate::exactla::{homology_rank, FieldSpec, Scalar, SparseMatrix};
use crate::hochschild::{
    antisymmetrization_eps, bar_differential, differential_matrix, pi_cd_evaluate, BarElement,
    DifferentialForm, PolyVector, TensorWord,
};
use crate::poly::{enumerate_monomials, Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KoszulComplexSpec {
    pub n: usize,
    pub field: FieldSpec,
}

/// A matrix with polynomial entries, keyed by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: BTreeMap<(usize, usize), Poly>,
}

impl PolyMatrix {
    pub fn is_zero(&self) -> bool {
        self.entries.values().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), p)| ((c, r), p.clone()))
                .collect(),
        }
    }
}

impl KoszulComplexSpec {
    pub fn new(n: usize, field: FieldSpec) -> Self {
        KoszulComplexSpec { n, field }
    }

    /// `τ_i = u_i - v_i ∈ A^e`.
    pub fn generators(&self) -> Vec<Poly> {
        let m = 2 * self.n;
        (0..self.n)
            .map(|i| &Poly::variable(m, self.field, i) - &Poly::variable(m, self.field, self.n + i))
            .collect()
    }

    /// Basis `e_S` of `K_q = ⋀^q (A^e)^n`, subsets in lexicographic order.
    pub fn basis(&self, q: usize) -> Vec<Vec<usize>> {
        subsets(self.n, q)
    }

    /// `d: K_q -> K_{q-1}` over `A^e`.
    pub fn differential(&self, q: usize) -> PolyMatrix {
        let source = self.basis(q);
        let target = if q == 0 {
            Vec::new()
        } else {
            self.basis(q - 1)
        };
        let index: BTreeMap<&[usize], usize> = target
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let tau = self.generators();
        let mut entries = BTreeMap::new();
        for (col, s) in source.iter().enumerate() {
            for (k, &sk) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(k);
                let coef = if k % 2 == 0 {
                    tau[sk].clone()
                } else {
                    -&tau[sk]
                };
                entries.insert((index[rest.as_slice()], col), coef);
            }
        }
        PolyMatrix {
            nrows: target.len(),
            ncols: source.len(),
            entries,
        }
    }

    /// The multiplication `A^e -> A`, `u_i, v_i -> t_i`.
    pub fn multiplication(&self, p: &Poly) -> Result<Poly> {
        let map: Vec<usize> = (0..2 * self.n).map(|j| j % self.n).collect();
        p.rename_variables(self.n, &map)
    }

    /// `δ: Hom(K_{q-1}, A) -> Hom(K_q, A)`, the transpose of `d_q` with
    /// entries pushed through the multiplication map.
    pub fn dual_coboundary(&self, q: usize) -> Result<PolyMatrix> {
        let d = self.differential(q);
        let mut entries = BTreeMap::new();
        for (&(r, c), p) in &d.entries {
            entries.insert((c, r), self.multiplication(p)?);
        }
        Ok(PolyMatrix {
            nrows: d.ncols,
            ncols: d.nrows,
            entries,
        })
    }

    /// The Koszul complex over `A^e` in internal degree `d` (`τ_i` of
    /// degree one), as a matrix over the field: `K_{q,d} -> K_{q-1,d}`.
    /// For `q = 0` this is the augmentation `K_{0,d} = A^e_d -> A_d`.
    pub fn graded_differential(&self, q: usize, d: usize) -> SparseMatrix {
        let m = 2 * self.n;
        let field = self.field;
        let source = self.graded_basis(q, d);
        if q == 0 {
            let target = enumerate_monomials(self.n, d);
            let index: BTreeMap<&Monomial, usize> =
                target.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let triplets = source.iter().enumerate().map(|(col, (_, mono))| {
                let image = self
                    .multiplication(&Poly::term(mono.clone(), field.one()))
                    .expect("valid renaming");
                let (x, c) = image.terms().next().expect("monomial image");
                (index[x], col, c.clone())
            });
            return SparseMatrix::from_triplets(
                target.len(),
                source.len(),
                field,
                triplets.collect::<Vec<_>>(),
            )
            .expect("consistent field");
        }
        let target = self.graded_basis(q - 1, d);
        let index: BTreeMap<(&[usize], &Monomial), usize> = target
            .iter()
            .enumerate()
            .map(|(i, (s, x))| ((s.as_slice(), x), i))
            .collect();
        let mut triplets = Vec::new();
        for (col, (s, mono)) in source.iter().enumerate() {
            for (k, &sk) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(k);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let u = mono.mul(&Monomial::variable(m, sk));
                let v = mono.mul(&Monomial::variable(m, self.n + sk));
                triplets.push((index[&(rest.as_slice(), &u)], col, sign));
                triplets.push((index[&(rest.as_slice(), &v)], col, -sign));
            }
        }
        SparseMatrix::from_int_triplets(target.len(), source.len(), field, triplets)
            .expect("in range")
    }

    fn graded_basis(&self, q: usize, d: usize) -> Vec<(Vec<usize>, Monomial)> {
        if d < q {
            return Vec::new();
        }
        let monos = enumerate_monomials(2 * self.n, d - q);
        self.basis(q)
            .into_iter()
            .flat_map(|s| monos.iter().map(move |x| (s.clone(), x.clone())))
            .collect()
    }

    /// Homology of the augmented Koszul complex `... -> K_1 -> K_0 -> A -> 0`
    /// at `K_q` in internal degree `d`; zero everywhere when the `τ_i` form a
    /// regular sequence generating the kernel of the multiplication map.
    pub fn resolution_defect(&self, q: usize, d: usize) -> Result<usize> {
        homology_rank(
            &self.graded_differential(q + 1, d),
            &self.graded_differential(q, d),
        )
    }
}

/// `rank_A Ext^q_{A^e}(A, A)` via the Koszul resolution.
pub fn koszul_ext(n: usize, field: FieldSpec, q: usize) -> Result<usize> {
    let spec = KoszulComplexSpec::new(n, field);
    // δ^q: Hom(K_{q-1}) -> Hom(K_q) and δ^{q+1}: Hom(K_q) -> Hom(K_{q+1})
    let incoming = if q == 0 {
        None
    } else {
        Some(spec.dual_coboundary(q)?)
    };
    let outgoing = spec.dual_coboundary(q + 1)?;
    for m in incoming.iter().chain(std::iter::once(&outgoing)) {
        if !m.is_zero() {
            return Err(Error::KoszulCoboundaryNonzero);
        }
    }
    // Hom(K_q, A) is free on the dual basis; with zero coboundaries every
    // basis element survives.
    Ok(spec.basis(q).len())
}

/// Cohomology of the graded dual of the chain complex at `C^{q,d}`,
/// computed from transposed differential matrices.
pub fn cochain_cohomology_rank(n: usize, field: FieldSpec, q: usize, d: usize) -> Result<usize> {
    // δ^{q-1} = b_q^T : C^{q-1} -> C^q, δ^q = b_{q+1}^T : C^q -> C^{q+1}
    let delta_in = differential_matrix(n, field, q, d).transpose();
    let delta_out = differential_matrix(n, field, q + 1, d).transpose();
    homology_rank(&delta_in, &delta_out)
}

/// The comparison map `K -> B`,
/// `e_S -> Σ_σ sgn(σ) 1 ⊗ t_{s_σ(1)} ⊗ ... ⊗ t_{s_σ(q)} ⊗ 1`.
pub fn koszul_comparison(n: usize, field: FieldSpec, s: &[usize]) -> Result<BarElement> {
    if let Some(&i) = s.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange(format!("index {i} with n = {n}")));
    }
    let q = s.len();
    let one = Monomial::one(n);
    let words = signed_permutations(q).into_iter().map(|(p, sign)| {
        let mut w = vec![one.clone()];
        w.extend(p.iter().map(|&k| Monomial::variable(n, s[k])));
        w.push(one.clone());
        TensorWord::new(field.from_i64(sign), w)
    });
    BarElement::from_words(n, field, q, words)
}

/// `d e_S` mapped into the bar complex: `Σ_k (-1)^k τ_{s_k} · ι(e_{S \ s_k})`
/// where `τ_i` acts on the outer slots.
pub fn koszul_comparison_of_boundary(
    n: usize,
    field: FieldSpec,
    s: &[usize],
) -> Result<BarElement> {
    use crate::hochschild::{act_first_slot, act_last_slot};
    let q = s.len();
    if q == 0 {
        return Err(Error::DegreeTooLow(0));
    }
    let mut out = BarElement::zero(n, field, q - 1);
    for (k, &sk) in s.iter().enumerate() {
        let mut rest = s.to_vec();
        rest.remove(k);
        let base = koszul_comparison(n, field, &rest)?;
        let t = Poly::variable(n, field, sk);
        let tau_x = act_first_slot(&t, &base)?.try_sub(&act_last_slot(&t, &base)?)?;
        let signed = if k % 2 == 0 {
            tau_x
        } else {
            tau_x.scale(&-field.one())
        };
        out = out.try_add(&signed)?;
    }
    Ok(out)
}

/// Checks `∂ ι = ι d` on `e_S`.
pub fn comparison_is_chain_map(n: usize, field: FieldSpec, s: &[usize]) -> Result<bool> {
    let lhs = bar_differential(&koszul_comparison(n, field, s)?)?;
    Ok(lhs == koszul_comparison_of_boundary(n, field, s)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    pub n: usize,
    pub field: FieldSpec,
    pub ranks: Vec<usize>,
    pub matches_binomial: Vec<bool>,
}

/// `koszul_ext` for `q = 0..=q_max`, flagged against `C(n, q)`.
pub fn ext_report(n: usize, field: FieldSpec, q_max: usize) -> Result<ExtReport> {
    let ranks = (0..=q_max)
        .map(|q| koszul_ext(n, field, q))
        .collect::<Result<Vec<_>>>()?;
    let matches_binomial = ranks
        .iter()
        .enumerate()
        .map(|(q, &r)| r == binomial(n, q))
        .collect();
    Ok(ExtReport {
        n,
        field,
        ranks,
        matches_binomial,
    })
}

/// The scalar relating the bar-side class `π_cd(∂_I)` to the Koszul class
/// `e_I^*`: the cochain `π_cd(∂_I)` is pulled back along the comparison map
/// `ι` (whose image in `C_q` is `ε(dt_J)`) and must equal `c · e_I^*` for
/// one constant `c` shared by every `I`.
pub fn hkr_scaling_check(n: usize, field: FieldSpec, q: usize) -> Result<Scalar> {
    if q > n {
        return Err(Error::Precondition(format!("q = {q} exceeds n = {n}")));
    }
    if field.factorial(q).inverse().is_none() {
        return Err(Error::Precondition(format!(
            "{q}! is not invertible in {field}"
        )));
    }
    let one = Monomial::one(n);
    let basis = subsets(n, q);
    let mut factor: Option<Scalar> = None;
    for i in &basis {
        let v = PolyVector::basis(n, field, one.clone(), i)?;
        for j in &basis {
            let chain = koszul_comparison(n, field, j)?.to_chain();
            debug_assert_eq!(
                chain,
                antisymmetrization_eps(&DifferentialForm::basis(n, field, one.clone(), j)?)
            );
            let value = pi_cd_evaluate(&v, &chain)?;
            let c = value.as_constant().ok_or(Error::FactorNotScalar)?;
            if i == j {
                match &factor {
                    None => factor = Some(c),
                    Some(f) if *f == c => {}
                    Some(_) => return Err(Error::FactorNotScalar),
                }
            } else if !c.is_zero() {
                return Err(Error::FactorNotScalar);
            }
        }
    }
    Ok(factor.unwrap_or_else(|| field.one()))
}
