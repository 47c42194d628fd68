//! Shared polygon machinery: orientation, interior angles, simplicity tests.
//!
//! Interior angles use one convention everywhere: traversal is normalized to
//! counterclockwise (by the sign of the shoelace area) and the angle at each
//! vertex is `pi - turn`, where `turn` is the signed turning angle of the
//! normalized traversal. Reflex vertices of non-convex simple polygons get
//! angles in (pi, 2*pi). The angles then sum to 2*pi for a simple
//! quadrilateral and 4*pi for a simple hexagon, for either input orientation.

use crate::point::{cross, dot};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        }
    }
}

/// Twice-signed-area-free shoelace sum: positive for counterclockwise input.
pub(crate) fn shoelace_area(pts: &[Complex64]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        s += a.re * b.im - b.re * a.im;
    }
    0.5 * s
}

/// Largest pairwise vertex distance; the characteristic length used by every
/// scale-relative tolerance in the crate.
pub(crate) fn max_pairwise_distance(pts: &[Complex64]) -> f64 {
    let mut m = 0.0f64;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            m = m.max((pts[i] - pts[j]).norm());
        }
    }
    m
}

/// Interior angles under the CCW-normalized convention, plus the orientation
/// the input arrived in. Fails (with a reason) on repeated vertices or a
/// collinear consecutive triple.
pub(crate) fn interior_angles(
    pts: &[Complex64],
) -> std::result::Result<(Vec<f64>, Orientation), String> {
    let n = pts.len();
    let scale = max_pairwise_distance(pts);
    if scale <= 0.0 || !scale.is_finite() {
        return Err("vertices coincide or are not finite".into());
    }
    let orientation = if shoelace_area(pts) >= 0.0 {
        Orientation::Ccw
    } else {
        Orientation::Cw
    };
    let sigma = orientation.sign();
    let mut angles = Vec::with_capacity(n);
    for i in 0..n {
        let u = pts[i] - pts[(i + n - 1) % n];
        let v = pts[(i + 1) % n] - pts[i];
        let c = cross(u, v);
        if c.abs() <= 1e-9 * u.norm() * v.norm() {
            return Err(format!(
                "vertices {}, {}, {} are collinear",
                (i + n - 1) % n + 1,
                i + 1,
                (i + 1) % n + 1
            ));
        }
        let turn = c.atan2(dot(u, v));
        angles.push(std::f64::consts::PI - sigma * turn);
    }
    Ok((angles, orientation))
}

/// Do the closed segments p1p2 and q1q2 share any point? Orientation values
/// are zeroed below a length-relative cutoff, so touching and collinear
/// overlap both count as intersection.
pub(crate) fn segments_intersect(
    p1: Complex64,
    p2: Complex64,
    q1: Complex64,
    q2: Complex64,
) -> bool {
    let lp = (p2 - p1).norm();
    let lq = (q2 - q1).norm();
    let eps = 1e-12 * lp * lq;
    let orient = |a: Complex64, b: Complex64, c: Complex64| -> f64 {
        let d = cross(b - a, c - a);
        if d.abs() <= eps {
            0.0
        } else {
            d
        }
    };
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on_segment = |a: Complex64, b: Complex64, c: Complex64| -> bool {
        c.re >= a.re.min(b.re) - eps
            && c.re <= a.re.max(b.re) + eps
            && c.im >= a.im.min(b.im) - eps
            && c.im <= a.im.max(b.im) + eps
    };
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Tolerant unordered comparison of two four-point sets via greedy matching.
/// Safe because theorem-equal points agree to machine precision while points
/// of different families are macroscopically apart.
pub(crate) fn same_vertex_set(a: &[Complex64; 4], b: &[Complex64; 4], tol: f64) -> bool {
    let mut used = [false; 4];
    'outer: for pa in a {
        for (idx, pb) in b.iter().enumerate() {
            if !used[idx] && (pa - pb).norm() <= tol {
                used[idx] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}
