//! Plane constructions built on fixed points of composed vertex rotations.
//!
//! For a simple quadrilateral and an integer family index `n`, each vertex
//! carries the rotation through `(2n+1)/2` times its interior angle.
//! Products of the four rotations are half-turns, and their fixed points
//! (`b-points`) assemble into six families of parallelograms with a web of
//! congruence and area relations between them. When the input quadrilateral
//! is itself a parallelogram, four of those families are squares; running
//! the construction twice therefore manufactures squares out of an arbitrary
//! simple quadrilateral.
//!
//! Every geometric statement the crate relies on is also exposed as a
//! residual-based check (see [`verify`]) so the whole construction can be
//! validated numerically on any input, and [`sweep`] drives those checks
//! over seeded random polygons. The flanking classical results are covered
//! too: the Connes fixed-point form of Morley's trisector theorem
//! ([`morley`]) and the alternating-sum identity for hexagons ([`hexagon`]).

pub mod doc;
pub mod error;
pub mod hexagon;
pub mod isometry;
pub mod morley;
pub mod point;
pub mod polygon;
pub mod quad;
pub mod square;
pub mod svg;
pub mod sweep;
pub mod verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use error::{Error, Result};
pub use isometry::{compose_chain, DirectIsometry, FixedPoint, IsometryClass, Rotor};
pub use point::Point;
pub use polygon::Orientation;
pub use quad::{
    b_point, b_point_via_chain, congruence_rotation, offset_variants, parallelogram, pivot_center,
    signed_area, six_families, vertex_rotation, AngleOffsets, AreaDecomposition, InteriorAngles,
    LabeledParallelogram, Perm, PivotCenter, Quadrilateral,
};
pub use square::{
    center_lines, centers_parallelogram, central_symmetry_check, diagonal_parallel_check,
    four_distinct_squares, pivot_center_simplified, square, square_center, squares_from_any_quad,
    AdmissibleTuple, CenterLine, LabeledSquare, ParallelogramQuad, Parity, SquareCenter,
};
