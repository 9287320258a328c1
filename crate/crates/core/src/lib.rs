//! Degree-constrained spanning subgraphs of multigraphs: exact (weighted)
//! enumeration, zero localization of the resulting polynomials, coefficient
//! inequalities, and a harness that checks the known zero-location results.

pub mod enumeration;
pub mod error;
pub mod fugacities;
pub mod inequalities;
pub mod multigraph;
pub mod polynomials;
pub mod scalar;
pub mod verify;

pub use enumeration::{brute_counts, dp_counts, factor_counts, CoeffSeq};
pub use error::{Error, Result};
pub use fugacities::FugacitySpec;
pub use multigraph::{parse_graph, DegreeBounds, Multigraph};
pub use polynomials::{Region, RegionVerdict, UniPoly};
pub use scalar::Surd;
