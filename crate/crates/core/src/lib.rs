//! Free-group toolkit: reduced words, Stallings subgroup graphs with
//! Reidemeister–Schreier rewriting, truncated Magnus expansions, and an
//! engine producing certificates that the commutator subgroup of a cyclic
//! kernel `G = Ker(F → Z_d)` contains no lower central term `F_m`.

pub mod cli;
pub mod error;
pub mod magnus;
pub mod stallings;
pub mod subgroup_file;
pub mod theorem;
pub mod word;

pub use error::{Error, Result};
pub use magnus::{in_lcs, lcs_weight, magnus_expand, NoncommSeries, Weight};
pub use stallings::{restrict_kernel, Index, KernelMap, SchreierBasis, SchreierSystem, SubgroupGraph, Transversal};
pub use subgroup_file::{LoadedSubgroup, SubgroupDescription};
pub use theorem::{witness, CanonicalKernel, PVector, WitnessCertificate};
pub use word::{omega, Alphabet, ExponentVector, Letter, Word};
