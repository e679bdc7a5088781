//! Core calculus of words and finitely presented groups, plus the
//! 4-manifold building blocks and assembly operators built on top of it.
//!
//! The crate is organized bottom-up:
//!
//! - [`word`]: freely reduced words over an indexed generator alphabet.
//! - [`presentation`]: finitely presented groups and their normalization.
//! - [`grammar`]: the `<g1, g2 | w1, w2>` text format shared with the CLI.
//! - [`snf`]: integer Smith normal form and abelian invariants.
//! - [`todd_coxeter`]: HLT coset enumeration with a hard coset cap.
//! - [`tietze`]: presentation simplification by Tietze transformations.
//! - [`certificate`]: finite witnesses that a word lies in the normal
//!   closure of the relators.
//! - [`surface`]: surface groups, Dehn's algorithm, and the named curve
//!   words of the genus-2k fibrations.
//! - [`blocks`]: the Lefschetz-fibration and Luttinger-surgery building
//!   blocks with their characteristic numbers.
//! - [`assemble`]: fiber sum (Van Kampen amalgamation) and torus surgery.
//! - [`constructions`]: the full pipelines that build each manifold
//!   family and verify its fundamental-group claims.
//!
//! Everything is a pure function over immutable data; no operation here
//! performs IO. The companion CLI crate carries manifests and file formats.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod assemble;
pub mod blocks;
pub mod certificate;
pub mod constructions;
pub mod grammar;
pub mod presentation;
pub mod snf;
pub mod surface;
pub mod tietze;
pub mod todd_coxeter;
pub mod word;

pub use presentation::{GeneratorSymbol, Presentation};
pub use snf::AbelianInvariants;
pub use word::{Letter, Word};
