//! Flat tangles, tangle diagrams, and the builtin diagram catalog.

pub mod builtin;
mod diagram;
mod flat;

pub use diagram::{Crossing, CrossingKind, Edge, End, Resolution, Smoothing, State, StateEntry, TangleDiagram};
pub use flat::{glue, FlatTangle, Glued, Side, UnionFind};
