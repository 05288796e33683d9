//! Graph powers, quotients, and Weisfeiler-Lehman refinement with exact
//! spectral invariants.
//!
//! The crate builds the k-th power, the restricted k-th power, and the
//! k-th symmetric power of a graph, runs the k-dimensional
//! Weisfeiler-Lehman refinement over tuple spaces, and decides
//! cospectrality exactly through integer power sums and characteristic
//! polynomials (multi-prime computation with Chinese-remainder
//! reconstruction; no floating point on any decision path). A
//! verification harness checks, on concrete instances, the identities
//! tying quotient graphs to their base graphs and the conditional
//! statements relating refinement equivalence to cospectral powers, and
//! ships generators for the instance corpus: named graphs, seeded random
//! graphs, the Shrikhande/rook strongly regular pair, and plain/twisted
//! gadget pairs that fool low-dimensional refinement.
//!
//! Module map:
//!
//! * [`graph`]: simple undirected graphs with O(1) adjacency.
//! * [`io`]: graph6 and edge-list text formats.
//! * [`tuples`]: tuple-space index arithmetic and atomic types.
//! * [`wl`]: the refinement engine (rounds, stabilization, histograms).
//! * [`powers`]: products, powers, quotients, transfer matrices.
//! * [`spectra`]: exact power sums, characteristic polynomials, trace
//!   identities.
//! * [`generators`]: named graphs, random graphs, gadget pairs.
//! * [`harness`]: verification reports and budgets.
//!
//! Each major capability has a runnable example under `examples/`; the
//! `wlspectra` binary exposes the same functionality as subcommands.

pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod powers;
pub mod spectra;
pub mod tuples;
pub mod wl;

pub use graph::{Graph, GraphError, VertexId};
