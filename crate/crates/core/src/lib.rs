//! Bijections and exact enumeration for nested pairs of lattice paths and
//! for walks in the plane with unit steps.
//!
//! The crate is organised around a handful of value types:
//!
//! * [`LatticePath`]: a word over `U = (1,1)` and `D = (1,-1)` starting at the origin.
//! * [`TriPath`]: a word over `U`, `D` and `H = (1,0)`, used for disagreement and
//!   agreement paths of a pair.
//! * [`PlaneWalk`]: a word over `N`, `S`, `E`, `W`.
//! * [`PlanePartition`]: a box-bounded array, weakly decreasing in rows and columns.
//!
//! Every map comes with its inverse, and every counting formula has a
//! brute-force census next to it so that the two can be compared exhaustively.

pub mod enumeration;
pub mod error;
pub mod matching;
pub mod pairs;
pub mod paths;
pub mod plane_partitions;
pub mod single;
pub mod verify;
pub mod walks;

pub use enumeration::BigCount;
pub use error::{Error, Result};
pub use matching::{match_faces, Matching, TriPath, TriStep};
pub use pairs::{FlipRecord, PathPair};
pub use paths::{FamilySpec, LatticePath, NestedTuple, PathClass, Step};
pub use plane_partitions::{PlanePartition, YoungDiagram};
pub use walks::{PlaneWalk, ShadowRegion, WalkGeometry, WalkStep};
