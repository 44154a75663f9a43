//! Partitioning the vertices of edge-coloured uniform hypergraphs into
//! monochromatic tight cycles.
//!
//! The library provides the hypergraph substrate, tight-cycle machinery and
//! crown absorbers, bounded searches, the stand-alone combinatorial lemmas
//! (block grouping, cycle covers, independent transversals), the absorption
//! pipeline, an end-to-end partition driver emitting brute-force-checkable
//! certificates, and independent verification oracles for tiny instances.

#![forbid(unsafe_code)]

pub mod absorption;
pub mod driver;
pub mod error;
pub mod hypergraph;
pub mod lemmas;
pub mod oracle;
pub mod search;
pub mod tight;

pub use error::{Error, LiftError, Result, Soft, SoftFailure};
pub use hypergraph::{Colour, ColouredHypergraph, Edge, Hypergraph, LinkGraph, Vertex, VertexPartition};
pub use tight::{Conventions, Crown, CycleColour, CycleFailure, TightCycle, TightPath};
