//! Isometry-reduced breadth-first search on the Cayley graph of `GL(n, 2)`
//! generated by transvections (CNOT gates), for `n <= 8`.
//!
//! Matrices are packed into a `u64`; orbits under qubit relabelling (and
//! optionally transpose-inverse) are represented by their minimum packing.

pub mod bfs;
pub mod bounds;
pub mod error;
pub mod essential;
pub mod gf2;
pub mod isometry;
pub mod permcheck;
pub mod store;

pub use bfs::{
    bidirectional_distance, distance_of, isometry_bfs, isometry_bfs_with_progress, synthesize, BidirOutcome,
    DistanceTable, ExplorationResult, LevelReport, SearchLimits,
};
pub use bounds::{ell, gl_order, quadratic_bound, sphere_profile, SphereProfile};
pub use error::{Error, Result};
pub use essential::{classify, bundled_coeffs, extract_coeffs, EssentialClassTable, PolyCoeffs};
pub use gf2::{BitMatrix, Circuit, IndexSet, Permutation, Transvection, MAX_ORDER};
pub use isometry::{canonicalize, IsometrySpec, OrbitInfo, Sign};
pub use permcheck::{glue_cycles, perm_circuit, verify_conjecture, CycleType};
