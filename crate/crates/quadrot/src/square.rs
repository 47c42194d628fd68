//! Square constructions on parallelogram inputs, and the two-stage map that
//! produces squares from an arbitrary simple quadrilateral.
//!
//! When the input quadrilateral is a parallelogram, opposite interior angles
//! coincide and adjacent ones sum to pi, so for the eight admissible index
//! tuples the parallelogram families degenerate into squares. Their centers,
//! center lines, diagonals and mutual symmetries all satisfy closed-form
//! relations that this module computes and measures.

use crate::error::{Error, Result};
use crate::isometry::DirectIsometry;
use crate::point::{cross, Point};
use crate::polygon::same_vertex_set;
use crate::quad::{
    effective_alphas, parallelogram, AngleOffsets, LabeledParallelogram, Perm, PivotCenter,
    Quadrilateral,
};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

/// Default acceptance tolerance (scale-relative) for the closure relation.
pub const PARALLELOGRAM_ACCEPT_TOL: f64 = 1e-9;

/// Looser acceptance used by the two-stage pipeline, whose first stage is
/// exact only up to rounding.
pub const TWO_STAGE_ACCEPT_TOL: f64 = 1e-7;

/// The eight index tuples for which the construction yields squares:
/// (1,2,3,4), (1,4,3,2) and their cyclic shifts.
const ADMISSIBLE_DIGITS: [[u8; 4]; 8] = [
    [1, 2, 3, 4],
    [2, 3, 4, 1],
    [3, 4, 1, 2],
    [4, 1, 2, 3],
    [1, 4, 3, 2],
    [4, 3, 2, 1],
    [3, 2, 1, 4],
    [2, 1, 4, 3],
];

/// Representative tuples of the four distinct square vertex sets.
pub const FOUR_SQUARE_TUPLES: [[u8; 4]; 4] =
    [[1, 2, 3, 4], [3, 2, 1, 4], [3, 4, 1, 2], [1, 4, 3, 2]];

fn sign_of_n(n: i32) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Builds the theorem parallelogram for inputs whose total rotation angle is
/// an odd multiple of pi by construction.
fn family(q: &Quadrilateral, perm: Perm, n: i32) -> LabeledParallelogram {
    parallelogram(q, perm, n, None)
        .expect("total rotation angle is an odd multiple of pi for valid inputs")
}

/// A quadrilateral accepted as a parallelogram: `a1 - a2 + a3 - a4 = 0`
/// within a scale-relative tolerance, with the implied angle relations
/// cross-checked. Carries the center `C = (a1 + a3)/2`.
#[derive(Clone, Copy, Debug)]
pub struct ParallelogramQuad {
    quad: Quadrilateral,
    center: Point,
}

impl ParallelogramQuad {
    pub fn new(q: &Quadrilateral, tol: f64) -> Result<Self> {
        let vs = q.vertices_c();
        let closure = (vs[0] - vs[1] + vs[2] - vs[3]).norm() / q.scale();
        if closure > tol {
            return Err(Error::NotAParallelogram {
                residual: closure,
                tolerance: tol,
            });
        }
        // consistency: opposite angles equal, adjacent angles supplementary
        let angle_tol = (1e3 * tol).max(1e-9);
        let a = q.interior_angles().as_array();
        let worst = (a[0] - a[2])
            .abs()
            .max((a[1] - a[3]).abs())
            .max((a[0] + a[1] - PI).abs());
        if worst > angle_tol {
            return Err(Error::NotAParallelogram {
                residual: worst,
                tolerance: angle_tol,
            });
        }
        let center = Point::from_complex((vs[0] + vs[2]) * 0.5);
        Ok(ParallelogramQuad { quad: *q, center })
    }

    pub fn quad(&self) -> &Quadrilateral {
        &self.quad
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn scale(&self) -> f64 {
        self.quad.scale()
    }
}

/// Index tuple drawn from the eight admissible ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibleTuple(Perm);

impl AdmissibleTuple {
    pub fn new(perm: Perm) -> Result<Self> {
        if ADMISSIBLE_DIGITS.contains(&perm.digits()) {
            Ok(AdmissibleTuple(perm))
        } else {
            Err(Error::NotAdmissibleTuple {
                digits: perm.digits(),
            })
        }
    }

    pub fn identity() -> Self {
        AdmissibleTuple(Perm::identity())
    }

    pub fn all() -> [AdmissibleTuple; 8] {
        ADMISSIBLE_DIGITS
            .map(|d| AdmissibleTuple(Perm::new(d).expect("admissible digits are permutations")))
    }

    pub fn perm(&self) -> Perm {
        self.0
    }
}

impl fmt::Display for AdmissibleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A labeled parallelogram that is additionally a square.
#[derive(Clone, Copy, Debug)]
pub struct LabeledSquare {
    quad: LabeledParallelogram,
    side: f64,
    orientation: i8,
}

impl LabeledSquare {
    fn from_parallelogram(p: LabeledParallelogram) -> Self {
        let vs = p.vertices_c();
        let side = (0..4)
            .map(|i| (vs[(i + 1) % 4] - vs[i]).norm())
            .sum::<f64>()
            / 4.0;
        let orientation = if p.area() >= 0.0 { 1 } else { -1 };
        LabeledSquare {
            quad: p,
            side,
            orientation,
        }
    }

    pub fn vertices(&self) -> [Point; 4] {
        self.quad.vertices()
    }

    pub fn as_parallelogram(&self) -> &LabeledParallelogram {
        &self.quad
    }

    pub fn tuple(&self) -> Perm {
        self.quad.perm()
    }

    pub fn family(&self) -> i32 {
        self.quad.family()
    }

    /// Mean side length.
    pub fn side(&self) -> f64 {
        self.side
    }

    /// +1 for counterclockwise, -1 for clockwise.
    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn side_spread(&self) -> f64 {
        self.quad.side_spread()
    }

    pub fn right_angle_residual(&self) -> f64 {
        self.quad.right_angle_residual()
    }

    /// A square with sides below `1e-9 * scale` is degenerate-but-valid:
    /// every invariant holds vacuously on a point.
    pub fn is_degenerate(&self, scale: f64) -> bool {
        self.side <= 1e-9 * scale
    }

    /// Residual of the defining relations
    /// `b(ijkl) - b(ijlk) = -s (b(ijkl) - b(jikl))` and
    /// `b(ijlk) - b(ijkl) =  s (b(ijlk) - b(jilk))`
    /// with `s = e^{i(alpha_i + alpha_j)}`, which is `(-1)^n i` for the
    /// unshifted scheme and `+-i` under the square-preserving offsets.
    pub fn diagonal_relation_residual(&self) -> f64 {
        let [v1, v2, v3, v4] = self.quad.vertices_c();
        let alphas = self.quad.alphas();
        let [i, j, _, _] = self.quad.perm().idx();
        let s = Complex64::from_polar(1.0, alphas[i] + alphas[j]);
        let first = ((v1 - v2) + s * (v1 - v4)).norm();
        let second = ((v2 - v1) - s * (v2 - v3)).norm();
        first.max(second)
    }
}

fn validate_remark3_offsets(offsets: &AngleOffsets, t: AdmissibleTuple) -> Result<()> {
    if offsets.modulus() != 2 {
        return Err(Error::InvalidOffsets(
            "square offsets use modulus M=2 (quarter-turn steps)".into(),
        ));
    }
    let m = offsets.m();
    let [i, j, k, l] = t.perm().idx();
    if m[i] != m[k] || m[j] != m[l] {
        return Err(Error::InvalidOffsets(
            "square offsets need m_i = m_k and m_j = m_l".into(),
        ));
    }
    if !(m[i] + m[j]).is_multiple_of(2) {
        return Err(Error::InvalidOffsets(
            "square offsets need m_i + m_j even".into(),
        ));
    }
    Ok(())
}

/// The square `P(ijkl,n)` of an admissible tuple. Offsets, when given, are
/// restricted to the eight square-preserving tuples (m_i = m_k, m_j = m_l,
/// m_i + m_j even, over modulus 2).
pub fn square(
    qp: &ParallelogramQuad,
    t: AdmissibleTuple,
    n: i32,
    offsets: Option<&AngleOffsets>,
) -> Result<LabeledSquare> {
    if let Some(o) = offsets {
        validate_remark3_offsets(o, t)?;
    }
    let p = parallelogram(qp.quad(), t.perm(), n, offsets)?;
    Ok(LabeledSquare::from_parallelogram(p))
}

/// Number of distinct b-point vertex sets over the eight admissible tuples.
pub fn distinct_square_vertex_sets(qp: &ParallelogramQuad, n: i32) -> Result<usize> {
    let tol = 1e-9 * qp.scale();
    let mut reps: Vec<[Complex64; 4]> = Vec::new();
    for t in AdmissibleTuple::all() {
        let s = square(qp, t, n, None)?;
        let vs = s.as_parallelogram().vertices_c();
        if !reps.iter().any(|r| same_vertex_set(r, &vs, tol)) {
            reps.push(vs);
        }
    }
    Ok(reps.len())
}

/// The four squares with distinct vertex sets at family index `n`. Computes
/// all eight admissible tuples and checks the collapse before returning the
/// canonical representatives.
pub fn four_distinct_squares(qp: &ParallelogramQuad, n: i32) -> Result<[LabeledSquare; 4]> {
    let found = distinct_square_vertex_sets(qp, n)?;
    assert!(
        found == 4,
        "the 8 admissible tuples must produce exactly 4 vertex sets, found {found}"
    );
    let mut out = Vec::with_capacity(4);
    for digits in FOUR_SQUARE_TUPLES {
        let t = AdmissibleTuple::new(Perm::new(digits).expect("fixed digits"))
            .expect("representatives are admissible");
        out.push(square(qp, t, n, None)?);
    }
    Ok(out.try_into().expect("four representatives"))
}

/// Pivot center for parallelogram input, where the barycentric weights
/// simplify to
///
/// ```text
/// mu_i = (1 - cos a_i + (-1)^n sin a_i) / 2,   mu_j = 1 - mu_i
/// ```
///
/// and the congruence rotation angle collapses to `-(2n+1) pi / 2`.
/// `(i,j)` must be an edge of the parallelogram (adjacent labels).
pub fn pivot_center_simplified(qp: &ParallelogramQuad, i: u8, j: u8, n: i32) -> PivotCenter {
    assert!(
        (1..=4).contains(&i) && (1..=4).contains(&j),
        "vertex labels must be 1..=4"
    );
    let gap = (i as i32 - j as i32).rem_euclid(4);
    assert!(
        gap == 1 || gap == 3,
        "({i},{j}) is not an edge of the parallelogram"
    );
    let alphas = effective_alphas(qp.quad(), n, None);
    let ai = alphas[(i - 1) as usize];
    let sgn = sign_of_n(n);
    let mu_i = (1.0 - ai.cos() + sgn * ai.sin()) / 2.0;
    let mu_j = (1.0 + ai.cos() - sgn * ai.sin()) / 2.0;
    let vs = qp.quad().vertices_c();
    let point = mu_i * vs[(i - 1) as usize] + mu_j * vs[(j - 1) as usize];
    PivotCenter {
        point: Point::from_complex(point),
        mu_i,
        mu_j,
        edge: (i, j),
        family: n,
    }
}

/// Residuals of the half-turn symmetry about the parallelogram center:
/// the rotation through pi about `C` carries `P(ijkl,n)` onto `P(klij,n)`
/// vertex by vertex, and `C` is the midpoint of `b(ijkl,n)` and `b(klij,n)`.
#[derive(Clone, Copy, Debug)]
pub struct SymmetryCheck {
    /// Worst distance between a mapped vertex and its labeled image.
    pub vertex_residual: f64,
    /// Distance between the midpoint of the diagonal b-point pair and `C`.
    pub midpoint_residual: f64,
}

pub fn central_symmetry_check(qp: &ParallelogramQuad, t: AdmissibleTuple, n: i32) -> SymmetryCheck {
    let q = qp.quad();
    let c = qp.center().to_complex();
    let half_turn = DirectIsometry::rotation_about(c, PI);
    let src = family(q, t.perm(), n);
    let img = family(q, t.perm().halves_swapped(), n);
    let mut vertex_residual = 0.0f64;
    for (s, d) in src.vertices_c().iter().zip(img.vertices_c()) {
        vertex_residual = vertex_residual.max((half_turn.apply(*s) - d).norm());
    }
    let [i, _, k, _] = t.perm().idx();
    let vs = q.vertices_c();
    let midpoint = (src.vertices_c()[0] + img.vertices_c()[0]) * 0.5;
    let midpoint_residual = (midpoint - (vs[i] + vs[k]) * 0.5).norm();
    SymmetryCheck {
        vertex_residual,
        midpoint_residual,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i32) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Center of a square family member: the midpoint of the diagonal
/// `b(ijkl,n) b(jilk,n)`.
#[derive(Clone, Copy, Debug)]
pub struct SquareCenter {
    pub point: Point,
    pub tuple: AdmissibleTuple,
    pub family: i32,
    pub parity: Parity,
}

pub fn square_center(qp: &ParallelogramQuad, t: AdmissibleTuple, n: i32) -> SquareCenter {
    let p = family(qp.quad(), t.perm(), n);
    let vs = p.vertices_c();
    SquareCenter {
        point: Point::from_complex((vs[0] + vs[2]) * 0.5),
        tuple: t,
        family: n,
        parity: Parity::of(n),
    }
}

/// A fitted line through the square centers of one parity class.
#[derive(Clone, Copy, Debug)]
pub struct CenterLine {
    /// Centroid of the class.
    pub anchor: Point,
    /// Unit direction of the fitted line.
    pub direction: Complex64,
    pub parity: Parity,
    pub edge: (u8, u8),
    /// Worst perpendicular distance of a center from the fitted line.
    pub max_residual: f64,
}

fn fit_center_line(
    centers: &[Complex64],
    parity: Parity,
    edge: (u8, u8),
    edge_vec: Complex64,
    scale: f64,
) -> CenterLine {
    let nc = centers.len() as f64;
    let centroid = centers.iter().sum::<Complex64>() / nc;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for c in centers {
        let d = c - centroid;
        sxx += d.re * d.re;
        sxy += d.re * d.im;
        syy += d.im * d.im;
    }
    // principal axis of the scatter; when the class collapses onto a point,
    // fall back to the direction the centers are predicted to line up along
    let spread = (sxx + syy).sqrt();
    let direction = if spread <= 1e-12 * scale * nc.sqrt() {
        let perp = Complex64::new(0.0, 1.0) * edge_vec;
        perp / perp.norm()
    } else {
        let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
        Complex64::from_polar(1.0, theta)
    };
    let mut max_residual = 0.0f64;
    for c in centers {
        max_residual = max_residual.max(cross(direction, c - centroid).abs());
    }
    CenterLine {
        anchor: Point::from_complex(centroid),
        direction,
        parity,
        edge,
        max_residual,
    }
}

/// Fits one line through the even-`n` square centers and one through the
/// odd-`n` ones. Both are perpendicular to the edge `a_i a_j` of the tuple.
pub fn center_lines(
    qp: &ParallelogramQuad,
    t: AdmissibleTuple,
    n_values: &[i32],
) -> Result<(CenterLine, CenterLine)> {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for &n in n_values {
        let c = square_center(qp, t, n).point.to_complex();
        match Parity::of(n) {
            Parity::Even => even.push(c),
            Parity::Odd => odd.push(c),
        }
    }
    if even.len() < 2 || odd.len() < 2 {
        return Err(Error::InsufficientPoints {
            even: even.len(),
            odd: odd.len(),
        });
    }
    let [i, j] = [t.perm().digits()[0], t.perm().digits()[1]];
    let vs = qp.quad().vertices_c();
    let edge_vec = vs[(j - 1) as usize] - vs[(i - 1) as usize];
    let scale = qp.scale();
    Ok((
        fit_center_line(&even, Parity::Even, (i, j), edge_vec, scale),
        fit_center_line(&odd, Parity::Odd, (i, j), edge_vec, scale),
    ))
}

/// Measurements of the diagonal `b(ijkl,n) b(jilk,n)`, which is parallel to
/// the edge `a_i a_j` with the real proportionality factor
/// `1 - cos a_i - (-1)^n sin a_i`.
#[derive(Clone, Copy, Debug)]
pub struct DiagonalCheck {
    /// `|cross(diagonal, a_j - a_i)|` (scales with length squared).
    pub cross_residual: f64,
    /// Real part of `(b(ijkl) - b(jilk)) / (a_i - a_j)`.
    pub coefficient: f64,
    /// Imaginary part of the same ratio; zero for a parallel diagonal.
    pub imag_residual: f64,
    /// The closed-form value the coefficient should take.
    pub predicted_coefficient: f64,
}

pub fn diagonal_parallel_check(
    qp: &ParallelogramQuad,
    t: AdmissibleTuple,
    n: i32,
) -> DiagonalCheck {
    let p = family(qp.quad(), t.perm(), n);
    let vs = p.vertices_c();
    let diagonal = vs[0] - vs[2];
    let [i, j, _, _] = t.perm().idx();
    let qvs = qp.quad().vertices_c();
    let edge = qvs[i] - qvs[j];
    let ratio = diagonal / edge;
    let alphas = effective_alphas(qp.quad(), n, None);
    let predicted = 1.0 - alphas[i].cos() - sign_of_n(n) * alphas[i].sin();
    DiagonalCheck {
        cross_residual: cross(diagonal, -edge).abs(),
        coefficient: ratio.re,
        imag_residual: ratio.im.abs(),
        predicted_coefficient: predicted,
    }
}

/// The parallelogram of square centers
/// `[C(1234,n), C(3214,n), C(3412,n), C(1432,n)]`; its center coincides with
/// the center `C` of the input parallelogram.
pub fn centers_parallelogram(qp: &ParallelogramQuad, n: i32) -> LabeledParallelogram {
    let centers = FOUR_SQUARE_TUPLES.map(|digits| {
        let t = AdmissibleTuple::new(Perm::new(digits).expect("fixed digits"))
            .expect("representatives are admissible");
        square_center(qp, t, n).point.to_complex()
    });
    LabeledParallelogram::from_parts(
        centers,
        Perm::identity(),
        n,
        qp.quad().vertices_c(),
        effective_alphas(qp.quad(), n, None),
    )
}

/// Two applications of the vertex-rotation construction: the first stage
/// turns any simple quadrilateral into a parallelogram, the second stage
/// turns that parallelogram into the four distinct squares.
///
/// The stage-1 parallelogram is consumed in its stored vertex order, with no
/// orientation normalization; the square whose vertex set matches
/// `second_tuple` is returned first.
pub fn squares_from_any_quad(
    q: &Quadrilateral,
    first_perm: Perm,
    first_n: i32,
    second_tuple: AdmissibleTuple,
    second_n: i32,
) -> Result<[LabeledSquare; 4]> {
    let stage1 = parallelogram(q, first_perm, first_n, None)?;
    let stage1_scale = stage1.scale();
    let area = stage1.area();
    if stage1_scale <= 1e-12 * q.scale() || area.abs() <= 1e-9 * stage1_scale * stage1_scale {
        return Err(Error::DegenerateIntermediate { area });
    }
    let inner = Quadrilateral::new(stage1.vertices())?;
    let qp = ParallelogramQuad::new(&inner, TWO_STAGE_ACCEPT_TOL)?;
    let mut squares = four_distinct_squares(&qp, second_n)?;
    let requested = square(&qp, second_tuple, second_n, None)?;
    let tol = 1e-9 * qp.scale();
    let lead = squares
        .iter()
        .position(|s| {
            same_vertex_set(
                &s.as_parallelogram().vertices_c(),
                &requested.as_parallelogram().vertices_c(),
                tol,
            )
        })
        .expect("requested tuple matches one of the four distinct vertex sets");
    squares.rotate_left(lead);
    Ok(squares)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::dot;
    use crate::quad::pivot_center;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn fig3() -> ParallelogramQuad {
        let q = Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(1.5, 2.0), p(0.5, 2.0)]).unwrap();
        ParallelogramQuad::new(&q, PARALLELOGRAM_ACCEPT_TOL).unwrap()
    }

    fn fig1_quad() -> Quadrilateral {
        Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(2.0, 1.0), p(0.5, 2.0)]).unwrap()
    }

    #[test]
    fn acceptance_of_parallelograms() {
        let qp = fig3();
        assert!(qp.center().distance(p(0.75, 1.0)) < 1e-15);

        let sq = Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap();
        let qp2 = ParallelogramQuad::new(&sq, PARALLELOGRAM_ACCEPT_TOL).unwrap();
        assert!(qp2.center().distance(p(0.5, 0.5)) < 1e-15);

        match ParallelogramQuad::new(&fig1_quad(), PARALLELOGRAM_ACCEPT_TOL) {
            Err(Error::NotAParallelogram { residual, .. }) => assert!(residual > 0.01),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn admissible_tuples() {
        assert_eq!(AdmissibleTuple::all().len(), 8);
        assert!(AdmissibleTuple::new(Perm::new([2, 3, 4, 1]).unwrap()).is_ok());
        match AdmissibleTuple::new(Perm::new([1, 3, 2, 4]).unwrap()) {
            Err(Error::NotAdmissibleTuple { digits }) => assert_eq!(digits, [1, 3, 2, 4]),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn fig3_square_frozen() {
        let qp = fig3();
        let s = square(&qp, AdmissibleTuple::identity(), 0, None).unwrap();
        let scale = qp.scale();
        assert!(s.side_spread() <= 1e-9 * scale);
        assert!(s.right_angle_residual() <= 1e-9);
        assert!(s.diagonal_relation_residual() <= 1e-9 * scale);
        // frozen from an independent evaluation
        let b1 = s.vertices()[0];
        assert!((b1.x - -0.048191176290627).abs() < 1e-12);
        assert!((b1.y - 1.163603385693263).abs() < 1e-12);
        assert!((s.side() - 0.285400775496355).abs() < 1e-12);
        assert_eq!(s.orientation(), 1);
        assert!(!s.is_degenerate(scale));
    }

    #[test]
    fn remark3_offsets() {
        let qp = fig3();
        let t = AdmissibleTuple::identity();
        let good = AngleOffsets::new([0, 2, 0, 2], 2).unwrap();
        let s = square(&qp, t, 0, Some(&good)).unwrap();
        assert!(s.side_spread() <= 1e-9 * qp.scale());
        assert!(s.right_angle_residual() <= 1e-9);

        // valid angle offsets that do not preserve squares are refused
        let bad = AngleOffsets::new([2, 1, 1, 0], 2).unwrap();
        assert!(matches!(
            square(&qp, t, 0, Some(&bad)),
            Err(Error::InvalidOffsets(_))
        ));
        let unequal = AngleOffsets::new([0, 2, 2, 0], 2).unwrap();
        assert!(matches!(
            square(&qp, t, 0, Some(&unequal)),
            Err(Error::InvalidOffsets(_))
        ));
        let wrong_modulus = AngleOffsets::new([0, 0, 0, 0], 3).unwrap();
        assert!(matches!(
            square(&qp, t, 0, Some(&wrong_modulus)),
            Err(Error::InvalidOffsets(_))
        ));
    }

    #[test]
    fn eight_tuples_collapse_to_four_sets() {
        let qp = fig3();
        for n in [-2, 0, 3] {
            let squares = four_distinct_squares(&qp, n).unwrap();
            for s in &squares {
                assert!(s.side_spread() <= 1e-9 * qp.scale());
            }
        }
    }

    #[test]
    fn simplified_pivot_matches_general_formula() {
        let qp = fig3();
        for (i, j) in [(1u8, 2u8), (2, 3), (3, 4), (4, 1), (1, 4), (2, 1)] {
            for n in -3..=3 {
                let simplified = pivot_center_simplified(&qp, i, j, n);
                let general = pivot_center(qp.quad(), i, j, n).unwrap();
                assert!(simplified.point.distance(general.point) <= 1e-12 * qp.scale());
                assert!((simplified.mu_i + simplified.mu_j - 1.0).abs() <= 1e-15);
                // the congruence rotation angle collapses to -(2n+1) pi/2
                let alphas = effective_alphas(qp.quad(), n, None);
                let total = alphas[(i - 1) as usize] + alphas[(j - 1) as usize];
                let expected = (2.0 * n as f64 + 1.0) * PI / 2.0;
                let wrapped = (total - expected).rem_euclid(2.0 * PI);
                assert!(wrapped.min(2.0 * PI - wrapped) <= 1e-9);
            }
        }
    }

    #[test]
    fn fig3_pivots_frozen() {
        let qp = fig3();
        let o12 = pivot_center_simplified(&qp, 1, 2, 0);
        assert!((o12.point.x - 0.586396614306737).abs() < 1e-12);
        assert!(o12.point.y.abs() < 1e-12);
        let o14 = pivot_center_simplified(&qp, 1, 4, 0);
        assert!((o14.point.x - 0.293198307153368).abs() < 1e-12);
        assert!((o14.point.y - 1.172793228613473).abs() < 1e-12);
    }

    #[test]
    #[should_panic(expected = "not an edge")]
    fn simplified_pivot_rejects_diagonal_pairs() {
        pivot_center_simplified(&fig3(), 1, 3, 0);
    }

    #[test]
    fn central_symmetry() {
        let qp = fig3();
        for t in AdmissibleTuple::all() {
            for n in -2..=2 {
                let check = central_symmetry_check(&qp, t, n);
                assert!(check.vertex_residual <= 1e-9 * qp.scale());
                assert!(check.midpoint_residual <= 1e-9 * qp.scale());
            }
        }
    }

    #[test]
    fn square_center_midpoint_and_parity() {
        let qp = fig3();
        let t = AdmissibleTuple::identity();
        for n in -3..=3 {
            let c = square_center(&qp, t, n);
            let vs = family(qp.quad(), t.perm(), n).vertices_c();
            assert!((c.point.to_complex() - (vs[0] + vs[2]) * 0.5).norm() <= 1e-12 * qp.scale());
            assert_eq!(c.parity, Parity::of(n));
        }
        assert_eq!(Parity::of(-2), Parity::Even);
        assert_eq!(Parity::of(-3), Parity::Odd);
    }

    #[test]
    fn center_step_identity() {
        // the step between same-parity centers follows the closed form
        // i sin(a_i) (cos(alpha(i,n-1)) + (-1)^n sin(alpha(i,n-1))) (z_j - z_i)
        let qp = fig3();
        let t = AdmissibleTuple::identity();
        let angles = qp.quad().interior_angles();
        let vs = qp.quad().vertices_c();
        for n in -2..=4 {
            let c_now = square_center(&qp, t, n).point.to_complex();
            let c_prev = square_center(&qp, t, n - 2).point.to_complex();
            let a_mid = angles.alpha(1, n - 1);
            let coef = angles.get(1).sin() * (a_mid.cos() + sign_of_n(n) * a_mid.sin());
            let predicted = Complex64::new(0.0, 1.0) * coef * (vs[1] - vs[0]);
            assert!((c_now - c_prev - predicted).norm() <= 1e-9 * qp.scale());
        }
    }

    #[test]
    fn center_lines_are_perpendicular_to_the_edge() {
        let qp = fig3();
        let t = AdmissibleTuple::identity();
        let ns: Vec<i32> = (0..=5).collect();
        let (even, odd) = center_lines(&qp, t, &ns).unwrap();
        assert!(even.max_residual <= 1e-9 * qp.scale());
        assert!(odd.max_residual <= 1e-9 * qp.scale());
        let vs = qp.quad().vertices_c();
        let edge = (vs[1] - vs[0]) / (vs[1] - vs[0]).norm();
        assert!(dot(even.direction, edge).abs() <= 1e-9);
        assert!(dot(odd.direction, edge).abs() <= 1e-9);
        assert_eq!(even.parity, Parity::Even);
        assert_eq!(odd.parity, Parity::Odd);
        assert_eq!(even.edge, (1, 2));
    }

    #[test]
    fn center_lines_need_two_points_per_parity() {
        let qp = fig3();
        match center_lines(&qp, AdmissibleTuple::identity(), &[0, 1, 2]) {
            Err(Error::InsufficientPoints { even: 2, odd: 1 }) => {}
            other => panic!("expected insufficient points, got {other:?}"),
        }
    }

    #[test]
    fn rectangle_center_lines_follow_the_other_edge_pair() {
        // right angles collapse each parity class onto a single point; the
        // fallback direction must still be perpendicular to a1 a2, which for
        // a rectangle is parallel to a2 a3
        let q = Quadrilateral::new([p(0.0, 0.0), p(3.0, 0.0), p(3.0, 1.0), p(0.0, 1.0)]).unwrap();
        let qp = ParallelogramQuad::new(&q, PARALLELOGRAM_ACCEPT_TOL).unwrap();
        let ns: Vec<i32> = (-6..=6).collect();
        let (even, odd) = center_lines(&qp, AdmissibleTuple::identity(), &ns).unwrap();
        let vs = q.vertices_c();
        let other_edge = (vs[2] - vs[1]) / (vs[2] - vs[1]).norm();
        for line in [even, odd] {
            assert!(line.max_residual <= 1e-9 * qp.scale());
            assert!(cross(line.direction, other_edge).abs() <= 1e-9);
        }
    }

    #[test]
    fn diagonal_parallel_to_edge() {
        let qp = fig3();
        for t in AdmissibleTuple::all() {
            for n in -3..=3 {
                let check = diagonal_parallel_check(&qp, t, n);
                let s2 = qp.scale() * qp.scale();
                assert!(check.cross_residual <= 1e-9 * s2);
                assert!(check.imag_residual <= 1e-12 * (1.0 + check.coefficient.abs()));
                assert!((check.coefficient - check.predicted_coefficient).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn centers_form_a_parallelogram_centered_at_c() {
        let qp = fig3();
        for n in -3..=3 {
            let pn = centers_parallelogram(&qp, n);
            assert!(pn.closure_residual() <= 1e-9 * qp.scale());
            let vs = pn.vertices_c();
            let center = (vs[0] + vs[2]) * 0.5;
            assert!((center - qp.center().to_complex()).norm() <= 1e-9 * qp.scale());
        }
        let pn0 = centers_parallelogram(&qp, 0);
        let vs = pn0.vertices_c();
        assert!(((vs[0] + vs[2]) * 0.5 - Complex64::new(0.75, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn two_stage_map_produces_squares() {
        let q = fig1_quad();
        let squares =
            squares_from_any_quad(&q, Perm::identity(), 0, AdmissibleTuple::identity(), 0).unwrap();
        for s in &squares {
            let scale = s.as_parallelogram().scale();
            assert!(s.side_spread() <= 1e-7 * scale);
            assert!(s.right_angle_residual() <= 1e-7);
        }
    }

    #[test]
    fn two_stage_map_accepts_negatively_oriented_intermediates() {
        // P(1324,0) of the fig1 quadrilateral has negative area; the second
        // stage must consume it as-is
        let q = fig1_quad();
        let first = Perm::new([1, 3, 2, 4]).unwrap();
        let stage1 = parallelogram(&q, first, 0, None).unwrap();
        assert!(stage1.area() < 0.0);
        let squares = squares_from_any_quad(&q, first, 0, AdmissibleTuple::identity(), 0).unwrap();
        for s in &squares {
            assert!(s.side_spread() <= 1e-7 * s.as_parallelogram().scale());
        }
    }

    #[test]
    fn two_stage_map_reports_degenerate_intermediates() {
        // chords (a2 - a1) and (a4 - a3) perpendicular: stage-1 family
        // P(1234,0) has zero area
        let q = Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(2.0, 1.0), p(2.0, 2.0)]).unwrap();
        match squares_from_any_quad(&q, Perm::identity(), 0, AdmissibleTuple::identity(), 0) {
            Err(Error::DegenerateIntermediate { area }) => assert!(area.abs() < 1e-12),
            other => panic!("expected degenerate intermediate, got {other:?}"),
        }
    }

    #[test]
    fn non_parallelogram_input_fails_the_square_property() {
        // the checker is not vacuous: on a quadrilateral that is far from a
        // parallelogram, the theorem-1 family is not a square
        let q = fig1_quad();
        let par = parallelogram(&q, Perm::identity(), 0, None).unwrap();
        assert!(par.side_spread() > 1e-6 * q.scale());
    }
}
