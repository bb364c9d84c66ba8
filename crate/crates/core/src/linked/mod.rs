//! Linked systems of symmetric GDDs of type II: parameter theory and
//! constructions.

mod conference;
mod gcm;
mod mub;
mod params;
mod system;
mod tilde_l;
mod twin;

pub use conference::conference_to_gdd;
pub use gcm::{bgw_generate, conference_as_gcm, gcm_to_gdd, verify_gcm, Gcm};
pub use mub::{build_from_mub_bush, bush_search, BushOutcome};
pub use params::{lemma_identities, sigma_tau_rho, Candidate, LinkedParams, Triple, TripleCandidates};
pub use system::{verify_linked_system, LinkedSystemII};
pub use tilde_l::{build_tilde_l, tilde_l_block};
pub use twin::{build_twin, signed_permutation_weighing, TwinPair};
