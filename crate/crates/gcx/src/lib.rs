//! gcx — graph complexes with ordered orientations, and the stratum
//! bookkeeping that goes with them.
//!
//! The library implements the combinatorial layer behind configuration-space
//! integrals: directed multigraphs with totally ordered vertices and edges,
//! the odd/even orientation relations and their boundary operators, exact
//! integer linear algebra for homology, the signed permutation group on edge
//! indices, and the type 1–4 classification of collision subsets together
//! with the permutations σ_A and σ_{e₁e₂} that glue boundary strata.
//!
//! The best way to get a feel for the pieces is the `examples/` directory;
//! each one is runnable on its own:
//!
//! ```text
//! cargo run --example automorphisms        # Aut^u(Γ), signs, ψ_Γ
//! cargo run --example signed_permutations  # the group S̃_I and its action
//! cargo run --example enumerate_basis      # bases of the graph complex
//! cargo run --example boundary_homology    # δ matrices, δ²=0, homology
//! cargo run --example closedness_pairing   # closedness + Γ-pairing certificates
//! cargo run --example strata_audit         # subset types, σ_A, cancellation audit
//! cargo run --example smith_normal_form    # exact SNF and kernel bases
//! ```
//!
//! There is also a small `gcx` binary exposing the same functionality for
//! batch use (`gcx basis`, `gcx boundary`, `gcx homology`, `gcx check-closed`,
//! `gcx pairing`, `gcx strata`, `gcx aut`, `gcx selftest`).
//!
//! Conventions used throughout: vertices and edges are 0-based in the API and
//! 1-based in all JSON artifacts; an edge is a `(tail, head)` pair meaning
//! tail → head; a self-loop contributes 2 to the valence of its vertex.

pub mod cli;
pub mod complex;
pub mod graph;
pub mod intlinalg;
pub mod signed_perm;
pub mod strata;

pub use complex::{Basis, CanonicalClass, Parity, SignedGraphSum};
pub use graph::{Graph, GraphIso};
pub use intlinalg::{SmithForm, SparseIntMatrix};
pub use signed_perm::{SgnPrimeMode, SignedPerm};
