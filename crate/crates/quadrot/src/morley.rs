//! Morley's trisector theorem in Connes' fixed-point form.
//!
//! With `g_i` the rotation about vertex `a_i` through two thirds of the
//! interior angle, the three fixed points of `g_1 g_2`, `g_2 g_3`, `g_3 g_1`
//! are the vertices of Morley's equilateral triangle, and they satisfy
//! `fix(g1 g2) + j fix(g2 g3) + j^2 fix(g3 g1) = 0` with `j` the cube root
//! of unity below. The construction assumes a positively oriented vertex
//! list, so the constructor normalizes clockwise input.

use crate::error::{Error, Result};
use crate::isometry::DirectIsometry;
use crate::point::Point;
use crate::polygon::{interior_angles, max_pairwise_distance, shoelace_area, Orientation};
use num_complex::Complex64;

/// `j = e^{2 pi i / 3}`, satisfying `j^3 = 1` and `1 + j + j^2 = 0`.
pub fn cube_root_of_unity() -> Complex64 {
    Complex64::new(-0.5, 3.0f64.sqrt() / 2.0)
}

/// Non-degenerate triangle, stored counterclockwise. Clockwise input is
/// accepted and normalized by swapping the last two vertices.
#[derive(Clone, Copy, Debug)]
pub struct Triangle {
    vertices: [Point; 3],
    angles: [f64; 3],
    scale: f64,
    flipped: bool,
}

impl Triangle {
    pub fn new(vertices: [Point; 3]) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateTriangle(
                "vertex coordinates must be finite".into(),
            ));
        }
        let mut vs: Vec<Complex64> = vertices.iter().map(|p| p.to_complex()).collect();
        let scale = max_pairwise_distance(&vs);
        if scale <= 0.0 {
            return Err(Error::DegenerateTriangle("all vertices coincide".into()));
        }
        let area = shoelace_area(&vs);
        if area.abs() < 1e-9 * scale * scale {
            return Err(Error::DegenerateTriangle(format!(
                "area {area:.3e} is below 1e-9 * scale^2"
            )));
        }
        let flipped = area < 0.0;
        if flipped {
            vs.swap(1, 2);
        }
        let (angles, orientation) = interior_angles(&vs).map_err(Error::DegenerateTriangle)?;
        debug_assert_eq!(orientation, Orientation::Ccw);
        let stored = [
            Point::from_complex(vs[0]),
            Point::from_complex(vs[1]),
            Point::from_complex(vs[2]),
        ];
        Ok(Triangle {
            vertices: stored,
            angles: [angles[0], angles[1], angles[2]],
            scale,
            flipped,
        })
    }

    /// Vertices in the normalized (counterclockwise) order.
    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    /// Interior angles in the normalized order; they sum to pi.
    pub fn angles(&self) -> [f64; 3] {
        self.angles
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// True when the input was clockwise and got reordered.
    pub fn was_flipped(&self) -> bool {
        self.flipped
    }

    fn rotations(&self) -> [DirectIsometry; 3] {
        [0, 1, 2].map(|i| {
            DirectIsometry::rotation_about(
                self.vertices[i].to_complex(),
                2.0 * self.angles[i] / 3.0,
            )
        })
    }
}

/// The three Morley points `fix(g1 g2)`, `fix(g2 g3)`, `fix(g3 g1)`.
pub fn morley_points(t: &Triangle) -> [Point; 3] {
    let [g1, g2, g3] = t.rotations();
    let fix = |outer: &DirectIsometry, inner: &DirectIsometry| {
        // each product rotates through 2(angle_a + angle_b)/3, which stays
        // well clear of a full turn for a valid triangle
        Point::from_complex(
            outer
                .compose(inner)
                .fixed_point()
                .expect("pairwise products of trisector rotations are genuine rotations")
                .point,
        )
    };
    [fix(&g1, &g2), fix(&g2, &g3), fix(&g3, &g1)]
}

/// Residual of `fix(g1 g2) + j fix(g2 g3) + j^2 fix(g3 g1) = 0` (absolute).
pub fn morley_identity_residual(t: &Triangle) -> f64 {
    let [f12, f23, f31] = morley_points(t).map(|p| p.to_complex());
    let j = cube_root_of_unity();
    (f12 + j * f23 + j * j * f31).norm()
}

/// Spread between the longest and shortest side of the Morley triangle
/// (absolute); zero when it is equilateral.
pub fn morley_equilateral_spread(t: &Triangle) -> f64 {
    let [m1, m2, m3] = morley_points(t);
    let sides = [m1.distance(m2), m2.distance(m3), m3.distance(m1)];
    let hi = sides.iter().cloned().fold(0.0f64, f64::max);
    let lo = sides.iter().cloned().fold(f64::INFINITY, f64::min);
    hi - lo
}
