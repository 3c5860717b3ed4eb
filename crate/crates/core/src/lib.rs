//! Finite-group graph representations and their censuses.
//!
//! The crate builds Cayley digraphs, Haar graphs, and m-Cayley (di)graphs of
//! concrete finite groups, computes exact automorphism groups by
//! individualization-refinement, classifies regular and semiregular
//! representations (DRR, GRR, HGR, DmSR, GmSR, m-PGSR), runs exhaustive and
//! Monte-Carlo censuses over connection-set families, evaluates the relevant
//! asymptotic bound formulas, and brute-force verifies a battery of
//! finitely-checkable counting identities.

pub mod aut;
pub mod bits;
pub mod bounds;
pub mod census;
pub mod checks;
pub mod error;
pub mod graph;
pub mod group;
pub mod perm;
pub mod rng;

pub use bits::Bitset;
pub use error::{Error, Result};
pub use graph::{BlockPartition, ColoredDigraph, SetMatrix};
pub use group::{ElementSet, GroupClass, GroupTable};
pub use perm::{PermGroup, Permutation};
