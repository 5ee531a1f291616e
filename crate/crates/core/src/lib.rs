//! Site percolation on random regular graphs.
//!
//! Random `d`-regular (multi)graphs are drawn from the configuration model,
//! each vertex is deleted independently with probability `n^-alpha`, and
//! the survivor is taken apart into its 2-core, kernel, bushes and
//! components. Expansion is measured exactly on small graphs and bounded on
//! large ones, and [`theory`] gives the predicted counts to compare with.
//!
//! ```
//! use percolab::{pairing, percolation, decomposition};
//!
//! let seq = pairing::DegreeSequence::regular(1000, 4).unwrap();
//! let config = pairing::sample_configuration(&seq, 1).unwrap();
//! let deleted = percolation::choose_deletion_set(
//!     &percolation::DeletionParams::with_alpha(1000, 0.5, 1),
//! ).unwrap();
//! let outcome = percolation::apply_deletion(&config, &deleted).unwrap();
//! let g = pairing::project(&outcome.survivor);
//! let dec = decomposition::decompose(&g, 3);
//! assert_eq!(g.vertex_count(), 1000 - outcome.r());
//! assert!(dec.components.giant_size() > 900);
//! ```

pub mod decomposition;
pub mod error;
pub mod expansion;
pub mod graph;
pub mod harness;
pub mod io;
pub mod pairing;
pub mod percolation;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
pub use graph::Multigraph;

// The book's code blocks run as doc-tests, one module per chapter.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/pairing.md")]
mod book_pairing {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/percolation.md")]
mod book_percolation {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/decomposition.md")]
mod book_decomposition {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/expansion.md")]
mod book_expansion {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/theory.md")]
mod book_theory {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/experiments.md")]
mod book_experiments {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
