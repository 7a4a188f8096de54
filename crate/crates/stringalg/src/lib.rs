//! Tensor product decomposition for string and band modules.
//!
//! This crate works with finite-dimensional *string algebras*: path algebras
//! of quivers modulo monomial relations, subject to the usual combinatorial
//! axioms (at most two arrows in and out of each vertex, unique admissible
//! continuations, no relation-free cycle).  Over such an algebra the
//! indecomposable modules relevant here are *strings* (parametrized by walk
//! words) and *bands* (cyclic walk words with a nonzero eigenvalue parameter
//! and a Jordan size), and the vertex-wise tensor product of two such modules
//! decomposes again into strings and bands.
//!
//! The crate computes that decomposition symbolically via fibre products of
//! walk shapes, exposes the induced ring structure on string classes (an
//! integral basis of orthogonal idempotents), computes principal tensor
//! ideals, and ships an exact-arithmetic matrix oracle that verifies every
//! symbolic claim on concrete rational representations.
//!
//! Modules:
//! - [`quiver`]: presentations, admissible paths, string-algebra validation.
//! - [`shape`]: walk words, shapes, canonical forms, factorization counting.
//! - [`fibre`]: fibre products of shapes and their component decomposition.
//! - [`decompose`]: Jordan block arithmetic and the tensor decomposition.
//! - [`repring`]: the ring of string classes in its idempotent basis.
//! - [`ideal`]: principal tensor ideals, truncated to finite bounds.
//! - [`oracle`]: exact rational representations and decomposition checks.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod decompose;
pub mod fibre;
pub mod ideal;
pub mod oracle;
pub mod quiver;
pub mod repring;
pub mod par;
pub mod presets;
pub mod shape;
