//! Poset Ramsey toolkit over small Boolean lattices.
//!
//! The host object throughout is the subset lattice Q_N of a ground set
//! {0, .., N-1} with N <= 24, encoded so that a subset IS its vertex index
//! (bit i set iff element i present). On top of that substrate:
//!
//! * [`poset`] — finite pattern posets, induced copy search, Λ/V structure
//!   classification;
//! * [`coloring`] — blue/red vertex colorings with a stable text format;
//! * [`embedding`] — X-good copies: normalization, the ordering-shift search
//!   dichotomy (red X-good copy vs blue chain), pigeonhole blue squares, and
//!   the chains-vs-cube split;
//! * [`duality`] — embeddability tables and the exact red-copy / blue-shrub
//!   dichotomy, plus the scan over all Y-choices;
//! * [`shrub`] — factorial trees, canonical shrubs, and the randomized
//!   framework construction that certifies lower bounds;
//! * [`search`] — exact small Ramsey numbers by exhaustive search, and the
//!   independent certificate checker;
//! * [`cert`] — verifiable witness objects and their line format.

pub mod cert;
pub mod coloring;
pub mod duality;
pub mod embedding;
pub mod error;
pub mod lattice;
pub mod poset;
pub mod search;
pub mod shrub;

pub use cert::Certificate;
pub use coloring::{Color, Coloring};
pub use error::Error;
pub use lattice::{GroundSet, Partition, Relation, Subset};
pub use poset::{EmbeddingMap, FinitePoset, StructureClass};
