//! Exact-arithmetic workbench for positive Dehn twist words of extended
//! involutions and the topological invariants of the Lefschetz fibrations
//! they define.
//!
//! The pipeline, bottom to top:
//!
//! * [`config`] — surface configuration strings `(l k r,l k r,...)` and the
//!   genus bookkeeping `h = Σ(l_j+r_j)`, `k = Σ k_j`, `g = h + k`.
//! * [`linalg`] / [`homology`] — exact symplectic linear algebra: the
//!   intersection form, Picard–Lefschetz transvections, word evaluation in
//!   `Sp(2G, Z)`, and signatures of symmetric forms.
//! * [`catalog`] — a homology class for every named cycle of a
//!   configuration, validated against involution and signature oracles.
//! * [`words`] — the twist-word generators (main, alternate, hyperelliptic).
//! * [`meyer`] — the Meyer cocycle and the fibration signature `σ(X)`.
//! * [`invariants`] — per-configuration reports (`χ`, `σ`, `c₁²`, `χ_h`) and
//!   the signature-conjecture scan.
//! * [`rewrite`] — a relation calculus (braid, commutation, cancellation,
//!   conjugation) over twist words with symplectic equivalence checking.
//!
//! All arithmetic is exact: integers are arbitrary precision and every
//! division happens over the rationals. No floating point exists anywhere in
//! the computation paths.

pub mod catalog;
pub mod config;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod meyer;
pub mod rewrite;
pub mod words;

/// Exact integer scalar used for homology classes and symplectic matrices.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar used wherever elimination requires division.
pub type Rat = num_rational::BigRational;

/// Dense exact integer matrix.
pub type IntMatrix = linalg::Matrix<Int>;
/// Dense exact rational matrix.
pub type RatMatrix = linalg::Matrix<Rat>;

pub use config::{CopySpec, GenusSummary, SurfaceSpec};
pub use homology::{HomologyClass, SymmetricForm, SymplecticMatrix};
pub use words::{CycleId, TwistWord};
