//! Steady-state parametrization via network translation.
//!
//! Pipeline: [`translate`] a (sub)network into a weakly reversible,
//! deficiency-zero form, compute its tree constants, [`parametrize`] positive
//! steady states as monomials in rate-constant ratios and free parameters,
//! and [`merge`] the parts of an independent decomposition into a
//! parametrization of the full network.

pub mod coeff;
pub mod param;
pub mod solve;
pub mod translate;
pub mod trees;

pub use coeff::{Atom, CanonPoly, Coefficient};
pub use param::{
    merge, parametrize, verify_parametrization, Parametrization, PartSolution, VerifyReport,
};
pub use solve::{solve_builtin, solve_network, BranchChoice, NetworkSolution, PartBranches};
pub use translate::{
    shifts_from_pairs, translate, SignedComplex, TranslatedEdge, TranslatedNetwork, TranslatedNode,
};
pub use trees::{tree_constants, tree_constants_matrix_tree, TreeConstants};
