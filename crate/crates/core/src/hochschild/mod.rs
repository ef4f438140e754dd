//! Hochschild chains of the polynomial algebra `A = K[t_1, ..., t_n]`.
//!
//! # From the bar resolution to the cyclic boundary
//!
//! The bar module `B_q(A) = A^{⊗(q+2)}` is an `A^e`-module through the outer
//! slots, `(a ⊗ b)·(x_0 ⊗ ... ⊗ x_{q+1}) = a x_0 ⊗ ... ⊗ x_{q+1} b`, and its
//! differential is
//!
//! ```text
//! ∂(a_0 ⊗ ... ⊗ a_{q+1}) = Σ_{i=0}^{q} (-1)^i a_0 ⊗ ... ⊗ a_i a_{i+1} ⊗ ... ⊗ a_{q+1}.
//! ```
//!
//! Every element of `B_q(A)` is an `A^e`-combination of the words
//! `1 ⊗ a_1 ⊗ ... ⊗ a_q ⊗ 1`, so `C_q(A) = B_q(A) ⊗_{A^e} A` is
//! `A ⊗ A^{⊗q}` via
//! `(x_0 ⊗ ... ⊗ x_{q+1}) ⊗ 1 -> (x_{q+1} x_0; x_1, ..., x_q)`
//! (see [`BarElement::to_chain`]). Lift a chain `(m_0; m_1, ..., m_q)` to
//! `m_0 ⊗ m_1 ⊗ ... ⊗ m_q ⊗ 1` and apply `∂`. The faces `i < q` keep the
//! trailing `1` and project to `(..., m_i m_{i+1}, ...)`. The last face
//! `(-1)^q m_0 ⊗ m_1 ⊗ ... ⊗ m_{q-1} ⊗ m_q` has `m_q` in the outer right slot,
//! which the projection moves onto the coefficient. The result is
//!
//! ```text
//! b(m_0; m_1, ..., m_q) = Σ_{i=0}^{q-1} (-1)^i (m_0; ..., m_i m_{i+1}, ...)
//!                         + (-1)^q (m_q m_0; m_1, ..., m_{q-1}).
//! ```
//!
//! # Splitting convention
//!
//! `s` appends a unit slot. On `B_q` one has `∂s - s∂ = (-1)^{q+1} id`, so
//! the contracting homotopy of the augmented complex is
//! `h = (-1)^{q+1} s` on `B_q` and `h(a) = a ⊗ 1` on `A`
//! ([`contracting_homotopy`], [`unit_section`]).
//!
//! # Grading
//!
//! Chains are graded by total polynomial degree over all slots. `b`, `π` and
//! `ε` preserve it (`dt_i` counts as degree one), so every computation runs
//! on the finite pieces `C_{q,d}`.
//!
//! # Antisymmetrization
//!
//! `ε(m dt_{i_1} ∧ ... ∧ dt_{i_q}) = Σ_σ sgn(σ) (m; t_{i_σ(1)}, ..., t_{i_σ(q)})`:
//! the permutation acts on the positions of the index tuple.

mod forms;
mod graded;
mod tensor;

pub use forms::{
    antisymmetrization_eps, hkr_pi, omega_basis, omega_spanning_set, pairing, pi_cd_evaluate,
    DifferentialForm, PolyVector,
};
pub use graded::{
    chain_basis, chain_dimension, chain_homology_rank, differential_matrix, graded_piece,
    omega_dimension, pi_induced_rank, pi_matrix, GradedComplexPiece, Word,
};
pub use tensor::{
    act_first_slot, act_last_slot, augmentation, bar_differential, bar_splitting,
    chain_differential, contracting_homotopy, tilde_d, unit_section, BarElement, ChainElement,
    TensorWord,
};

#[cfg(test)]
mod tests;
