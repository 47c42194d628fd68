//! The hexagon analogue of the parallelogram closure: with
//! `alpha(i,n) = (2n+1)/4 * angle_i`, any product of the six vertex
//! rotations is a half-turn, and the fixed points of six particular
//! orderings satisfy the alternating-sum identity
//!
//! ```text
//! b(123456) - b(123564) + b(231564) - b(231645) + b(312645) - b(312456) = 0
//! ```

use crate::error::{DegenerateIsometry, Error, Result};
use crate::isometry::{compose_chain, DirectIsometry, ROTOR_SINGULAR_TOL};
use crate::point::Point;
use crate::polygon::{interior_angles, max_pairwise_distance, segments_intersect, Orientation};
use num_complex::Complex64;
use std::f64::consts::PI;

/// The six orderings of the identity, with alternating signs +,-,+,-,+,-.
pub const ALTERNATING_SUM_TERMS: [[u8; 6]; 6] = [
    [1, 2, 3, 4, 5, 6],
    [1, 2, 3, 5, 6, 4],
    [2, 3, 1, 5, 6, 4],
    [2, 3, 1, 6, 4, 5],
    [3, 1, 2, 6, 4, 5],
    [3, 1, 2, 4, 5, 6],
];

/// Simple hexagon with interior angles precomputed; they sum to 4*pi.
#[derive(Clone, Copy, Debug)]
pub struct Hexagon {
    vertices: [Point; 6],
    angles: [f64; 6],
    orientation: Orientation,
    scale: f64,
}

impl Hexagon {
    pub fn new(vertices: [Point; 6]) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateHexagon(
                "vertex coordinates must be finite".into(),
            ));
        }
        let vs: Vec<Complex64> = vertices.iter().map(|p| p.to_complex()).collect();
        let scale = max_pairwise_distance(&vs);
        if scale <= 0.0 {
            return Err(Error::DegenerateHexagon("all vertices coincide".into()));
        }
        for i in 0..6 {
            for j in (i + 1)..6 {
                if (vs[i] - vs[j]).norm() <= 1e-9 * scale {
                    return Err(Error::DegenerateHexagon(format!(
                        "vertices {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        // non-adjacent edge pairs must not meet
        for i in 0..6usize {
            for j in (i + 2)..6 {
                if i == 0 && j == 5 {
                    continue;
                }
                if segments_intersect(vs[i], vs[(i + 1) % 6], vs[j], vs[(j + 1) % 6]) {
                    return Err(Error::DegenerateHexagon(format!(
                        "edges {}-{} and {}-{} intersect",
                        i + 1,
                        (i + 1) % 6 + 1,
                        j + 1,
                        (j + 1) % 6 + 1
                    )));
                }
            }
        }
        let (angles, orientation) = interior_angles(&vs).map_err(Error::DegenerateHexagon)?;
        let sum: f64 = angles.iter().sum();
        if (sum - 4.0 * PI).abs() > 1e-9 {
            return Err(Error::DegenerateHexagon(format!(
                "interior angles sum to {sum}, expected 4*pi"
            )));
        }
        let mut stored_angles = [0.0; 6];
        stored_angles.copy_from_slice(&angles);
        Ok(Hexagon {
            vertices,
            angles: stored_angles,
            orientation,
            scale,
        })
    }

    pub fn vertices(&self) -> [Point; 6] {
        self.vertices
    }

    pub fn angles(&self) -> [f64; 6] {
        self.angles
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `alpha(i,n) = (2n+1)/4 * angle_i` for the 1-based vertex label.
    pub fn alpha(&self, i: u8, n: i32) -> f64 {
        assert!((1..=6).contains(&i), "vertex label must be 1..=6");
        (2.0 * n as f64 + 1.0) / 4.0 * self.angles[(i - 1) as usize]
    }

    fn rotation(&self, i: u8, n: i32) -> DirectIsometry {
        DirectIsometry::rotation_about(
            self.vertices[(i - 1) as usize].to_complex(),
            self.alpha(i, n),
        )
    }
}

/// Fixed point of the product of the six vertex rotations taken in `order`
/// (rightmost acts first).
pub fn six_rotation_fixed_point(h: &Hexagon, order: [u8; 6], n: i32) -> Result<Point> {
    let maps: Vec<DirectIsometry> = order.iter().map(|&i| h.rotation(i, n)).collect();
    let chain = compose_chain(&maps);
    // defensive: a valid alpha scheme always totals an odd multiple of pi
    let rotor = chain.rotor().as_complex();
    if (rotor - 1.0).norm() <= 1e-9 {
        let off = chain.offset();
        let kind = if off.norm() <= ROTOR_SINGULAR_TOL {
            DegenerateIsometry::Identity
        } else {
            DegenerateIsometry::Translation {
                dx: off.re,
                dy: off.im,
            }
        };
        return Err(Error::NoUniqueFixedPoint(kind));
    }
    Ok(Point::from_complex(chain.fixed_point()?.point))
}

fn alternating_sum(h: &Hexagon, terms: &[[u8; 6]; 6], n: i32) -> Result<f64> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sign = 1.0;
    for order in terms {
        sum += sign * six_rotation_fixed_point(h, *order, n)?.to_complex();
        sign = -sign;
    }
    Ok(sum.norm())
}

/// Absolute value of the six-term alternating sum; vanishes for every simple
/// hexagon and family index.
pub fn hexagon_relation_residual(h: &Hexagon, n: i32) -> Result<f64> {
    alternating_sum(h, &ALTERNATING_SUM_TERMS, n)
}

/// Control quantity establishing the identity is not vacuous: the last two
/// subscripts of the first term are swapped, which breaks the telescoping
/// and leaves a generically large residual.
pub fn hexagon_negative_control_residual(h: &Hexagon, n: i32) -> Result<f64> {
    let mut terms = ALTERNATING_SUM_TERMS;
    terms[0] = [1, 2, 3, 4, 6, 5];
    alternating_sum(h, &terms, n)
}
