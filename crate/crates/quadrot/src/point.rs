//! Plane points and the complex-number view of them.
//!
//! The algebra of the crate runs on `Complex64` (a point's coordinate is the
//! complex number x + iy); `Point` is the plain struct used at the polygon
//! and I/O boundary.

use num_complex::Complex64;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self { x: z.re, y: z.im }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.to_complex() - other.to_complex()).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::from_complex(z)
    }
}

impl From<Point> for Complex64 {
    fn from(p: Point) -> Self {
        p.to_complex()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// z-component of the cross product of two plane vectors.
pub(crate) fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Euclidean dot product of two plane vectors.
pub(crate) fn dot(u: Complex64, v: Complex64) -> f64 {
    u.re * v.re + u.im * v.im
}
