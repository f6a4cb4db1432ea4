//! Restricted arc-connectivity of oriented graphs.
//!
//! Computes girth, arc-connectivity `λ`, the degree-sum bound `ξ` and the
//! restricted arc-connectivity `λ'` of small oriented graphs, recognizes the
//! seven girth-4 exception families H1–H7, and sweeps exhaustively or by
//! sampling over labelled oriented graphs to check the girth-cycle
//! characterization of `λ'`-connectedness and the bound `λ ≤ λ' ≤ ξ`.

pub mod canon;
pub mod connectivity;
pub mod cycles;
pub mod digraph;
pub mod error;
pub mod families;
pub mod flow;
pub mod io;
pub mod verify;

pub use connectivity::{
    arc_connectivity, is_restricted_arc_cut, lambda_prime_bruteforce, lambda_prime_exact,
    lambda_prime_exists, proof_cut_constructions, xi, xi_of_cycle, DefinitionReading,
    RestrictedCut, RestrictedCutCertificate, XiResult,
};
pub use cycles::{cycles_of_length, girth, girth_cycles, Cycle};
pub use digraph::{Arc, ArcSet, Digraph, VertexSet};
pub use error::{AnalysisError, FormatError, GraphError, SweepError};
pub use families::{family_census, generate, match_family, Family, FamilyMatch, FamilyParams};
