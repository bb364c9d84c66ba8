//! Symmetric association schemes: axiom certification, the 5-class scheme of
//! a linked system, its closed-form spectra and Krein parameters, the
//! 3-class fusion, and extraction of a linked system from a scheme.

mod assemble;
mod extract;
mod fusion;
mod krein;
mod scheme;
mod spectra;

pub use assemble::assemble_scheme;
pub use extract::{extract_linked_system, Extraction};
pub use fusion::{check_fusion, fuse, FusionReport, CANONICAL_FUSION, CANONICAL_IDEMPOTENT_PARTITION};
pub use krein::{b2_star_closed_form, compute_krein, krein_parameters, KreinTensor};
pub use scheme::{certify_scheme, AssociationScheme};
pub use spectra::{closed_form_spectra, compute_spectra, idempotent, SchemeParams, Spectra};
