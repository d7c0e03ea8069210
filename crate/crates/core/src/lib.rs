//! Presentation calculus for affine Kac-Moody groups, loop groups, and
//! Chevalley groups over finite fields.
//!
//! The engine assembles short presentations of infinite families of groups
//! out of a fixed catalog of presentation blocks for finite quasisimple
//! groups (special linear, symplectic, spin and G2 blocks).  Blocks are
//! glued along shared subgroups with explicit bridge relations; generator
//! and relation budgets are tracked exactly, so every assembly reproduces
//! a verifiable (generators, relations) pair.
//!
//! Module map:
//! - [`dynkin`]: Dynkin diagrams, Cartan matrices, classification of
//!   subdiagrams, admissibility of a field size for a diagram.
//! - [`field`]: prime-power field parameters.
//! - [`presentation`]: finite presentations, Tietze transformations with an
//!   audit trail, generating-set reduction, presentation merging.
//! - [`verify`]: coset enumeration (Todd-Coxeter) used to certify finite
//!   quotients and block orders.
//! - [`catalog`]: the block catalog with exact generator/relation counts
//!   and containment structure, plus loading of explicit relator data.
//! - [`assembly`]: assembly plans mapping a diagram to a sequence of
//!   block-gluing steps, with budget and explicit execution modes.
//! - [`rootdatum`]: integer Smith normal form, fundamental groups of root
//!   data, and presentation sizes for central quotients (adjoint and
//!   orthogonal/projective linear families).
//! - [`tables`]: recomputed summary tables and an audit mode comparing
//!   them against frozen reference values.

pub mod assembly;
pub mod catalog;
pub mod dynkin;
pub mod field;
pub mod presentation;
pub mod rootdatum;
pub mod tables;
pub mod verify;
