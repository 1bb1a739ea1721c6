//! Instance generators for quadratic assignment problems.
//!
//! Each generator builds a distance matrix, a flow matrix, or both,
//! reproducibly from a single `u64` seed. The families:
//!
//! * [`gen_uniform_random`] — unstructured integer matrices, the
//!   classic hard-but-featureless baseline;
//! * [`gen_hypercube`] — cubic lattices whose distances fall into three
//!   bands by grid distance and whose flows link grid neighbours;
//! * [`gen_terminal`] — tree-structured ("terminal") instances whose
//!   distances follow paths through a branching hierarchy;
//! * [`gen_tai_b`] — clustered points in a disc with exponentially
//!   skewed flows and an optional asymmetric tilt;
//! * [`gen_sf_distance`] / [`gen_sf_flow`] — real-like composites:
//!   Euclidean clusters or Manhattan grids paired with sparse random,
//!   distance-structured, or structured-plus-outliers flows;
//! * [`gen_flow_cluster`] — triangle, tree, and square flow patterns
//!   laid over a grid;
//! * [`gen_evolvable_flow`] — the five-knob clustered flow family used
//!   for instance evolution, with [`map_raw_params`] mapping raw
//!   `[0, 1]` knobs onto a validated [`EvolvableFlowConfig`];
//! * [`combine_hybrid`] — stitches a distance matrix from one family
//!   and a flow matrix from another into a labelled instance.
//!
//! [`GeneratorSpec`] ties the families to a textual form
//! (`kind:key=value,...`) used by batch tooling; see [`specs`] for the
//! grammar. Randomness is organised into named sub-streams of the seed
//! ([`Stream`]) so that, for example, redrawing flows never perturbs
//! point placement.

pub mod error;
pub mod evolvable;
pub mod flow_cluster;
pub mod grid;
pub mod hybrid;
pub mod hypercube;
pub mod rng;
pub mod sf;
pub mod specs;
pub mod taib;
pub mod terminal;
pub mod uniform;

pub use error::{GenError, MAX_GENERATED_SIZE};
pub use evolvable::{gen_evolvable_flow, map_raw_params, EvolvableFlowConfig};
pub use flow_cluster::{gen_flow_cluster, FlowClusterConfig, FlowClusterVariant};
pub use grid::GridStructure;
pub use hybrid::combine_hybrid;
pub use hypercube::{gen_hypercube, HypercubeConfig};
pub use rng::{derive_rng, Stream};
pub use sf::{gen_sf_distance, gen_sf_flow, SfDistanceKind, SfFlowKind};
pub use specs::{parse_generator_spec, GeneratorSpec, SfDistanceSpec, SfFlowSpec, TiltSpec};
pub use taib::{gen_tai_b, TaiBParams};
pub use terminal::gen_terminal;
pub use uniform::gen_uniform_random;
