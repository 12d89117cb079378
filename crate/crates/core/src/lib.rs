//! Exact calculus for biliaison classes of coherent sheaves.
//!
//! Sheaves are never constructed. A class member is represented by its very
//! primitive ancestor (a [`classrep::PrimitiveDescriptor`]) together with its
//! Σ function, an integer step function. On top of that the crate provides:
//!
//! * [`seqlattice`]: the lattice of finite sorted integer sequences,
//! * [`sigmacalc`]: signed step functions and admissibility of Σ profiles,
//! * [`classrep`]: class members, composition, preorder, meets, Hilbert functions,
//! * [`minimality`]: necessary/sufficient criteria, pool minima, descent bounds,
//! * [`moves`]: elementary biliaison/rigid/reduction chains, replay and synthesis,
//! * [`io`]: the JSON document forms used by the command line tool.

pub mod classrep;
pub mod error;
pub mod io;
pub mod minimality;
pub mod moves;
pub mod seqlattice;
pub mod sigmacalc;

pub use classrep::{Ambient, ClassElement, DescriptorRegistry, Presentation, PrimitiveDescriptor};
pub use error::{ClassError, MinimalityError, MoveError, SeqError};
pub use minimality::Verdict;
pub use moves::Move;
pub use seqlattice::SortedSeq;
pub use sigmacalc::{ProfileBounds, SignedStep};
