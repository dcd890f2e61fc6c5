//! Colour-balanced perfect matchings in balanced 2-edge-coloured complete
//! graphs.
//!
//! Given a 2-edge-colouring of `K_{4n}` with equally many black and red edges,
//! [`balancer::balance`] walks from any perfect matching to one with `n`
//! edges of each colour using swaps `uv, xy -> ux, vy`, and returns a
//! [`balancer::Trace`] that [`verify::replay_trace`] can check independently.
//! [`oracle`] supplies brute-force ground truth at small order.

pub mod balancer;
pub mod cli;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod swap;
pub mod text;
pub mod verify;

pub use balancer::{balance, step, Case, StepRecord, Trace};
pub use error::{Error, Result};
pub use graph::{Colour, ColouredGraph, EdgeColouring, Matching};
pub use swap::{swap, SwapQuad};
