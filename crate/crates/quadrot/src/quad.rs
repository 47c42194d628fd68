//! Constructions on a simple quadrilateral: for a family index `n` every
//! vertex gets the rotation through `(2n+1)/2` times its interior angle, and
//! the fixed points of four-fold products of these rotations (the b-points)
//! assemble into parallelograms.
//!
//! The b-point `b(ijkl,n)` is the fixed point of the product
//! `r_i r_j r_k r_l` (rightmost factor acts first). Because the four angles
//! sum to an odd multiple of pi, the product is a half-turn and the fixed
//! point has the closed form
//!
//! ```text
//! b = 1/2 [ z_i (1 - e_i) + z_j e_i (1 - e_j)
//!         + z_k e_i e_j (1 - e_k) + z_l e_i e_j e_k (1 - e_l) ]
//! ```
//!
//! with `e_v = exp(i * alpha_v)`. The same point is also computed as the
//! fixed point of the composed rotation chain; the two routes are compared
//! against each other throughout the test and verification suites.

use crate::error::{DegenerateIsometry, Error, Result};
use crate::isometry::{DirectIsometry, ROTOR_SINGULAR_TOL};
use crate::point::Point;
use crate::polygon::{
    interior_angles, max_pairwise_distance, same_vertex_set, segments_intersect, Orientation,
};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Composed four-rotation products whose total rotor lands within this
/// distance of 1 are rejected as having no unique fixed point.
const TOTAL_ROTOR_GUARD: f64 = 1e-9;

/// Representative permutations of the six distinct parallelogram families.
pub const SIX_FAMILY_PERMS: [[u8; 4]; 6] = [
    [1, 2, 3, 4],
    [3, 4, 1, 2],
    [1, 3, 2, 4],
    [2, 4, 1, 3],
    [1, 4, 3, 2],
    [3, 2, 1, 4],
];

/// Permutation of the vertex labels (1,2,3,4).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Perm {
    digits: [u8; 4],
}

impl Perm {
    pub fn new(digits: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &d in &digits {
            if !(1..=4).contains(&d) || seen[(d - 1) as usize] {
                return Err(Error::InvalidPermutation { digits });
            }
            seen[(d - 1) as usize] = true;
        }
        Ok(Perm { digits })
    }

    pub fn identity() -> Self {
        Perm {
            digits: [1, 2, 3, 4],
        }
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> Vec<Perm> {
        let mut out = Vec::with_capacity(24);
        for a in 1..=4u8 {
            for b in 1..=4u8 {
                for c in 1..=4u8 {
                    for d in 1..=4u8 {
                        if let Ok(p) = Perm::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn digits(&self) -> [u8; 4] {
        self.digits
    }

    /// Zero-based vertex indices.
    pub fn idx(&self) -> [usize; 4] {
        [
            (self.digits[0] - 1) as usize,
            (self.digits[1] - 1) as usize,
            (self.digits[2] - 1) as usize,
            (self.digits[3] - 1) as usize,
        ]
    }

    /// (j,i,k,l)
    pub fn swap_first_pair(&self) -> Self {
        let [i, j, k, l] = self.digits;
        Perm {
            digits: [j, i, k, l],
        }
    }

    /// (i,j,l,k)
    pub fn swap_second_pair(&self) -> Self {
        let [i, j, k, l] = self.digits;
        Perm {
            digits: [i, j, l, k],
        }
    }

    /// (l,k,j,i)
    pub fn reversed(&self) -> Self {
        let [i, j, k, l] = self.digits;
        Perm {
            digits: [l, k, j, i],
        }
    }

    /// (k,l,i,j)
    pub fn halves_swapped(&self) -> Self {
        let [i, j, k, l] = self.digits;
        Perm {
            digits: [k, l, i, j],
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}{}",
            self.digits[0], self.digits[1], self.digits[2], self.digits[3]
        )
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ds: Vec<u8> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).unwrap_or(0))
            .collect();
        let digits: [u8; 4] = ds
            .try_into()
            .map_err(|_| Error::InvalidPermutation { digits: [0; 4] })?;
        Perm::new(digits)
    }
}

/// Simple quadrilateral with its interior angles precomputed under the
/// CCW-normalized convention. Construction validates the polygon.
#[derive(Clone, Copy, Debug)]
pub struct Quadrilateral {
    vertices: [Point; 4],
    angles: [f64; 4],
    orientation: Orientation,
    scale: f64,
}

impl Quadrilateral {
    pub fn new(vertices: [Point; 4]) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateQuadrilateral(
                "vertex coordinates must be finite".into(),
            ));
        }
        let vs: Vec<Complex64> = vertices.iter().map(|p| p.to_complex()).collect();
        let scale = max_pairwise_distance(&vs);
        if scale <= 0.0 {
            return Err(Error::DegenerateQuadrilateral(
                "all vertices coincide".into(),
            ));
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if (vs[i] - vs[j]).norm() <= 1e-9 * scale {
                    return Err(Error::DegenerateQuadrilateral(format!(
                        "vertices {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        // the two pairs of non-adjacent edges must not meet
        if segments_intersect(vs[0], vs[1], vs[2], vs[3])
            || segments_intersect(vs[1], vs[2], vs[3], vs[0])
        {
            return Err(Error::DegenerateQuadrilateral(
                "opposite edges intersect (self-crossing quadrilateral)".into(),
            ));
        }
        let (angles, orientation) = interior_angles(&vs).map_err(Error::DegenerateQuadrilateral)?;
        let sum: f64 = angles.iter().sum();
        if (sum - 2.0 * PI).abs() > 1e-9 {
            return Err(Error::DegenerateQuadrilateral(format!(
                "interior angles sum to {sum}, expected 2*pi"
            )));
        }
        Ok(Quadrilateral {
            vertices,
            angles: [angles[0], angles[1], angles[2], angles[3]],
            orientation,
            scale,
        })
    }

    pub fn vertices(&self) -> [Point; 4] {
        self.vertices
    }

    /// Vertex by 1-based label.
    pub fn vertex(&self, i: u8) -> Point {
        assert!((1..=4).contains(&i), "vertex label must be 1..=4");
        self.vertices[(i - 1) as usize]
    }

    pub(crate) fn vertices_c(&self) -> [Complex64; 4] {
        [
            self.vertices[0].to_complex(),
            self.vertices[1].to_complex(),
            self.vertices[2].to_complex(),
            self.vertices[3].to_complex(),
        ]
    }

    pub fn interior_angles(&self) -> InteriorAngles {
        InteriorAngles {
            angles: self.angles,
        }
    }

    /// Orientation of the vertex list as given.
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Largest pairwise vertex distance; tolerances are taken relative to it.
    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// The four interior angles, each in (0, 2*pi), summing to 2*pi.
#[derive(Clone, Copy, Debug)]
pub struct InteriorAngles {
    angles: [f64; 4],
}

impl InteriorAngles {
    /// Angle at vertex `i` (1-based).
    pub fn get(&self, i: u8) -> f64 {
        assert!((1..=4).contains(&i), "vertex label must be 1..=4");
        self.angles[(i - 1) as usize]
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.angles
    }

    pub fn sum(&self) -> f64 {
        self.angles.iter().sum()
    }

    /// `alpha(i,n) = (2n+1)/2 * angle_i`.
    pub fn alpha(&self, i: u8, n: i32) -> f64 {
        (2.0 * n as f64 + 1.0) / 2.0 * self.get(i)
    }
}

/// Extra rotation shifts `m_i * pi / M` with `sum(m_i)` a multiple of `2M`,
/// which keeps the total angle of any four-fold product an odd multiple of pi.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AngleOffsets {
    m: [u32; 4],
    modulus: u32,
}

impl AngleOffsets {
    pub fn new(m: [u32; 4], modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidOffsets("modulus M must be positive".into()));
        }
        if m.iter().any(|&mi| mi >= 2 * modulus) {
            return Err(Error::InvalidOffsets(format!(
                "each m_i must lie in 0..{}",
                2 * modulus
            )));
        }
        let s: u32 = m.iter().sum();
        if !s.is_multiple_of(2 * modulus) {
            return Err(Error::InvalidOffsets(format!(
                "sum of m_i is {s}, not a multiple of {}",
                2 * modulus
            )));
        }
        Ok(AngleOffsets { m, modulus })
    }

    pub fn m(&self) -> [u32; 4] {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Shift at vertex `i` (1-based): `m_i * pi / M`.
    pub fn shift(&self, i: u8) -> f64 {
        assert!((1..=4).contains(&i), "vertex label must be 1..=4");
        self.shift_idx((i - 1) as usize)
    }

    pub(crate) fn shift_idx(&self, idx: usize) -> f64 {
        self.m[idx] as f64 * PI / self.modulus as f64
    }
}

impl fmt::Display for AngleOffsets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{}) mod M={}",
            self.m[0], self.m[1], self.m[2], self.m[3], self.modulus
        )
    }
}

/// Effective rotation angle at each vertex for family `n`, offsets included.
pub(crate) fn effective_alphas(
    q: &Quadrilateral,
    n: i32,
    offsets: Option<&AngleOffsets>,
) -> [f64; 4] {
    let mut a = [0.0; 4];
    for (v, slot) in a.iter_mut().enumerate() {
        *slot =
            (2.0 * n as f64 + 1.0) / 2.0 * q.angles[v] + offsets.map_or(0.0, |o| o.shift_idx(v));
    }
    a
}

/// Offset and rotor of the product of the four vertex rotations taken in
/// `order` (rightmost acts first). The offset accumulates exactly the terms
/// of the closed b-point formula.
fn chain_parts(
    vs: &[Complex64; 4],
    alphas: &[f64; 4],
    order: [usize; 4],
) -> (Complex64, Complex64) {
    let mut offset = Complex64::new(0.0, 0.0);
    let mut phase = Complex64::new(1.0, 0.0);
    for &v in &order {
        let e = Complex64::from_polar(1.0, alphas[v]);
        offset += vs[v] * phase * (1.0 - e);
        phase *= e;
    }
    (offset, phase)
}

fn b_closed(vs: &[Complex64; 4], alphas: &[f64; 4], order: [usize; 4]) -> Result<Complex64> {
    let (offset, phase) = chain_parts(vs, alphas, order);
    if (phase - 1.0).norm() <= TOTAL_ROTOR_GUARD {
        let kind = if offset.norm() <= ROTOR_SINGULAR_TOL {
            DegenerateIsometry::Identity
        } else {
            DegenerateIsometry::Translation {
                dx: offset.re,
                dy: offset.im,
            }
        };
        return Err(Error::NoUniqueFixedPoint(kind));
    }
    // total angle is an odd multiple of pi, so 1 - e^{i*total} = 2 exactly
    Ok(offset * 0.5)
}

/// Rotation about vertex `i` through `alpha(i,n)` plus the offset shift.
pub fn vertex_rotation(
    q: &Quadrilateral,
    i: u8,
    n: i32,
    offsets: Option<&AngleOffsets>,
) -> DirectIsometry {
    assert!((1..=4).contains(&i), "vertex label must be 1..=4");
    let alphas = effective_alphas(q, n, offsets);
    DirectIsometry::rotation_about(q.vertices_c()[(i - 1) as usize], alphas[(i - 1) as usize])
}

/// Fixed point of the four-rotation product in the order given by `perm`,
/// evaluated by the closed half-offset formula.
pub fn b_point(
    q: &Quadrilateral,
    perm: Perm,
    n: i32,
    offsets: Option<&AngleOffsets>,
) -> Result<Point> {
    let alphas = effective_alphas(q, n, offsets);
    b_closed(&q.vertices_c(), &alphas, perm.idx()).map(Point::from_complex)
}

/// Same point obtained by composing the four rotations and solving for the
/// fixed point; this is the independent route the closed form is checked
/// against.
pub fn b_point_via_chain(
    q: &Quadrilateral,
    perm: Perm,
    n: i32,
    offsets: Option<&AngleOffsets>,
) -> Result<Point> {
    let maps: Vec<DirectIsometry> = perm
        .digits()
        .iter()
        .map(|&i| vertex_rotation(q, i, n, offsets))
        .collect();
    let chain = crate::isometry::compose_chain(&maps);
    Ok(Point::from_complex(chain.fixed_point()?.point))
}

/// Four b-points labeled by a permutation and family index, in the order
/// `[b(ijkl), b(ijlk), b(jilk), b(jikl)]`; always a parallelogram.
#[derive(Clone, Copy, Debug)]
pub struct LabeledParallelogram {
    vertices: [Point; 4],
    perm: Perm,
    family: i32,
    reversed: bool,
    source: [Complex64; 4],
    alphas: [f64; 4],
}

impl LabeledParallelogram {
    pub(crate) fn from_parts(
        vertices: [Complex64; 4],
        perm: Perm,
        family: i32,
        source: [Complex64; 4],
        alphas: [f64; 4],
    ) -> Self {
        LabeledParallelogram {
            vertices: vertices.map(Point::from_complex),
            perm,
            family,
            reversed: false,
            source,
            alphas,
        }
    }

    pub fn vertices(&self) -> [Point; 4] {
        self.vertices
    }

    pub(crate) fn vertices_c(&self) -> [Complex64; 4] {
        self.vertices.map(|p| p.to_complex())
    }

    pub fn perm(&self) -> Perm {
        self.perm
    }

    pub fn family(&self) -> i32 {
        self.family
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// The same vertex set traversed with opposite orientation,
    /// `[v1, v4, v3, v2]`.
    pub fn reversed(&self) -> Self {
        let [a, b, c, d] = self.vertices;
        LabeledParallelogram {
            vertices: [a, d, c, b],
            perm: self.perm,
            family: self.family,
            reversed: !self.reversed,
            source: self.source,
            alphas: self.alphas,
        }
    }

    /// `|v1 - v2 + v3 - v4|`; zero exactly when the four points close up
    /// into a parallelogram.
    pub fn closure_residual(&self) -> f64 {
        let [a, b, c, d] = self.vertices_c();
        (a - b + c - d).norm()
    }

    /// Signed area `Im[(v4 - v1) * conj(v2 - v1)]`; positive when the
    /// traversal is counterclockwise.
    pub fn area(&self) -> f64 {
        let [a, b, _, d] = self.vertices_c();
        ((d - a) * (b - a).conj()).im
    }

    /// Difference between the longest and shortest side.
    pub fn side_spread(&self) -> f64 {
        let vs = self.vertices_c();
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..4 {
            let len = (vs[(i + 1) % 4] - vs[i]).norm();
            lo = lo.min(len);
            hi = hi.max(len);
        }
        hi - lo
    }

    /// Worst deviation of the four corner angles from a right angle, in
    /// radians. Returns infinity when a side degenerates to a point.
    pub fn right_angle_residual(&self) -> f64 {
        let vs = self.vertices_c();
        let mut worst = 0.0f64;
        for i in 0..4 {
            let u = vs[(i + 1) % 4] - vs[i];
            let v = vs[(i + 2) % 4] - vs[(i + 1) % 4];
            if u.norm() == 0.0 || v.norm() == 0.0 {
                return f64::INFINITY;
            }
            worst = worst.max(((v / u).arg().abs() - PI / 2.0).abs());
        }
        worst
    }

    /// Largest pairwise distance between the four vertices.
    pub fn scale(&self) -> f64 {
        max_pairwise_distance(&self.vertices_c())
    }

    pub(crate) fn source(&self) -> [Complex64; 4] {
        self.source
    }

    pub(crate) fn alphas(&self) -> [f64; 4] {
        self.alphas
    }
}

/// The labeled parallelogram `P(ijkl,n)` of a permutation and family index.
pub fn parallelogram(
    q: &Quadrilateral,
    perm: Perm,
    n: i32,
    offsets: Option<&AngleOffsets>,
) -> Result<LabeledParallelogram> {
    let alphas = effective_alphas(q, n, offsets);
    let vs = q.vertices_c();
    let b1 = b_closed(&vs, &alphas, perm.idx())?;
    let b2 = b_closed(&vs, &alphas, perm.swap_second_pair().idx())?;
    let b3 = b_closed(
        &vs,
        &alphas,
        perm.swap_first_pair().swap_second_pair().idx(),
    )?;
    let b4 = b_closed(&vs, &alphas, perm.swap_first_pair().idx())?;
    Ok(LabeledParallelogram::from_parts(
        [b1, b2, b3, b4],
        perm,
        n,
        vs,
        alphas,
    ))
}

/// Number of distinct b-point vertex sets over all 24 permutations.
pub fn distinct_family_vertex_sets(q: &Quadrilateral, n: i32) -> Result<usize> {
    let tol = 1e-9 * q.scale();
    let mut reps: Vec<[Complex64; 4]> = Vec::new();
    for perm in Perm::all() {
        let p = parallelogram(q, perm, n, None)?;
        let vs = p.vertices_c();
        if !reps.iter().any(|r| same_vertex_set(r, &vs, tol)) {
            reps.push(vs);
        }
    }
    Ok(reps.len())
}

/// The six parallelograms with distinct vertex sets at family index `n`.
/// Computes all 24 permutations and checks that they collapse to exactly six
/// vertex sets before returning the canonical representatives.
pub fn six_families(q: &Quadrilateral, n: i32) -> Result<[LabeledParallelogram; 6]> {
    let tol = 1e-9 * q.scale();
    let found = distinct_family_vertex_sets(q, n)?;
    assert!(
        found == 6,
        "the 24 permutations must produce exactly 6 vertex sets, found {found}"
    );
    let mut out = Vec::with_capacity(6);
    for digits in SIX_FAMILY_PERMS {
        out.push(parallelogram(
            q,
            Perm::new(digits).expect("fixed digits"),
            n,
            None,
        )?);
    }
    for a in 0..6 {
        for b in (a + 1)..6 {
            assert!(
                !same_vertex_set(&out[a].vertices_c(), &out[b].vertices_c(), tol),
                "family representatives {:?} and {:?} coincide",
                SIX_FAMILY_PERMS[a],
                SIX_FAMILY_PERMS[b]
            );
        }
    }
    Ok(out.try_into().expect("six representatives"))
}

/// Center of the rotation carrying one parallelogram family onto another,
/// with its barycentric weights along the edge line through `a_i` and `a_j`.
#[derive(Clone, Copy, Debug)]
pub struct PivotCenter {
    pub point: Point,
    pub mu_i: f64,
    pub mu_j: f64,
    pub edge: (u8, u8),
    pub family: i32,
}

/// Pivot center `O(ij,n)` through the real barycentric weights
///
/// ```text
/// mu_i = (1 - cos a_i + cos a_j - cos(a_i + a_j)) / (2 (1 - cos(a_i + a_j)))
/// ```
///
/// and symmetrically for `mu_j`; the weights sum to 1 so the center lies on
/// the line through `a_i` and `a_j`.
pub fn pivot_center(q: &Quadrilateral, i: u8, j: u8, n: i32) -> Result<PivotCenter> {
    assert!(
        (1..=4).contains(&i) && (1..=4).contains(&j) && i != j,
        "pivot labels must be distinct and in 1..=4"
    );
    let alphas = effective_alphas(q, n, None);
    let ai = alphas[(i - 1) as usize];
    let aj = alphas[(j - 1) as usize];
    let eij = Complex64::from_polar(1.0, ai + aj);
    if (1.0 - eij).norm() <= ROTOR_SINGULAR_TOL {
        return Err(Error::PivotUndefined { i, j, n });
    }
    let cij = (ai + aj).cos();
    let den = 2.0 * (1.0 - cij);
    let mu_i = (1.0 - ai.cos() + aj.cos() - cij) / den;
    let mu_j = (1.0 - aj.cos() + ai.cos() - cij) / den;
    let vs = q.vertices_c();
    let point = mu_i * vs[(i - 1) as usize] + mu_j * vs[(j - 1) as usize];
    Ok(PivotCenter {
        point: Point::from_complex(point),
        mu_i,
        mu_j,
        edge: (i, j),
        family: n,
    })
}

/// Pivot center through the complex closed form
/// `(z_i (1-e_i)(1+e_j) + z_j (1-e_j)(1+e_i)) / (2 (1 - e_i e_j))`,
/// the second route the barycentric form is checked against.
pub fn pivot_center_direct(q: &Quadrilateral, i: u8, j: u8, n: i32) -> Result<Point> {
    assert!(
        (1..=4).contains(&i) && (1..=4).contains(&j) && i != j,
        "pivot labels must be distinct and in 1..=4"
    );
    let alphas = effective_alphas(q, n, None);
    let ei = Complex64::from_polar(1.0, alphas[(i - 1) as usize]);
    let ej = Complex64::from_polar(1.0, alphas[(j - 1) as usize]);
    let denom = 2.0 * (1.0 - ei * ej);
    if denom.norm() <= 2.0 * ROTOR_SINGULAR_TOL {
        return Err(Error::PivotUndefined { i, j, n });
    }
    let vs = q.vertices_c();
    let zi = vs[(i - 1) as usize];
    let zj = vs[(j - 1) as usize];
    Ok(Point::from_complex(
        (zi * (1.0 - ei) * (1.0 + ej) + zj * (1.0 - ej) * (1.0 + ei)) / denom,
    ))
}

/// The congruence rotation `R(ij,n)`: rotation through `-(alpha_i + alpha_j)`
/// about the pivot center. It carries `P(ijkl,n)` onto the reversed
/// `P(klji,n)` vertex by vertex:
/// `[b(ijkl), b(ijlk), b(jilk), b(jikl)] -> [b(klji), b(lkji), b(lkij), b(klij)]`.
pub fn congruence_rotation(q: &Quadrilateral, i: u8, j: u8, n: i32) -> Result<DirectIsometry> {
    let pivot = pivot_center(q, i, j, n)?;
    let alphas = effective_alphas(q, n, None);
    let angle = -(alphas[(i - 1) as usize] + alphas[(j - 1) as usize]);
    Ok(DirectIsometry::rotation_about(
        pivot.point.to_complex(),
        angle,
    ))
}

/// Signed area together with the two real factors it splits into:
/// `area = 1/4 * factor_im * chord_product_re`.
#[derive(Clone, Copy, Debug)]
pub struct AreaDecomposition {
    pub area: f64,
    /// Imaginary part of `(1-conj e_i)(1-conj e_j)(1-conj e_k)(1-conj e_l)`,
    /// expanded by the seven-sine formula.
    pub factor_im: f64,
    /// `Re[(z_j - z_i) * conj(z_l - z_k)]`.
    pub chord_product_re: f64,
}

/// Signed area of a labeled parallelogram and its factor decomposition.
/// The decomposition applies to parallelograms as returned by
/// [`parallelogram`] and [`six_families`] (not reversed ones).
pub fn signed_area(p: &LabeledParallelogram) -> AreaDecomposition {
    let area = p.area();
    let [i, j, k, l] = p.perm.idx();
    let a = p.alphas();
    let (ai, aj, ak) = (a[i], a[j], a[k]);
    let factor_im = 2.0
        * (ai.sin() + aj.sin() + ak.sin() - (ai + aj).sin() - (ai + ak).sin() - (aj + ak).sin()
            + (ai + aj + ak).sin());
    let src = p.source();
    let chord_product_re = ((src[j] - src[i]) * (src[l] - src[k]).conj()).re;
    AreaDecomposition {
        area,
        factor_im,
        chord_product_re,
    }
}

/// All valid offset tuples for a modulus: `0 <= m_i < 2M` with the sum a
/// multiple of `2M`, in lexicographic order.
pub fn offset_variants(modulus: u32) -> Vec<AngleOffsets> {
    assert!(modulus >= 1, "modulus must be positive");
    let lim = 2 * modulus;
    let mut out = Vec::new();
    for m1 in 0..lim {
        for m2 in 0..lim {
            for m3 in 0..lim {
                for m4 in 0..lim {
                    if (m1 + m2 + m3 + m4) % lim == 0 {
                        out.push(AngleOffsets {
                            m: [m1, m2, m3, m4],
                            modulus,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Histogram of offset tuples by sorted multiset (descending), used to
/// summarize the enumeration.
pub fn offset_class_histogram(variants: &[AngleOffsets]) -> Vec<([u32; 4], usize)> {
    let mut hist: Vec<([u32; 4], usize)> = Vec::new();
    for v in variants {
        let mut key = v.m();
        key.sort_unstable_by(|a, b| b.cmp(a));
        match hist.iter_mut().find(|(k, _)| *k == key) {
            Some((_, count)) => *count += 1,
            None => hist.push((key, 1)),
        }
    }
    hist.sort_unstable_by_key(|a| a.0);
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::IsometryClass;

    pub(crate) fn fig1() -> Quadrilateral {
        Quadrilateral::new([
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(0.5, 2.0),
        ])
        .unwrap()
    }

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn unit_square_angles() {
        let q = Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap();
        for i in 1..=4u8 {
            assert!((q.interior_angles().get(i) - PI / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn fig1_angles_frozen() {
        // independently computed with a law-of-cosines oracle
        let q = fig1();
        let expected = [
            1.325817663668032,
            2.356194490192345, // 3*pi/4 at the (1,0) corner
            1.373400766945016,
            1.227772386374193,
        ];
        let a = q.interior_angles().as_array();
        for (got, want) in a.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!((q.interior_angles().sum() - 2.0 * PI).abs() < 1e-12);
        assert!(a.iter().all(|&x| x < PI), "fig1 quadrilateral is convex");
    }

    #[test]
    fn law_of_cosines_oracle_agrees_on_convex_quad() {
        let q = fig1();
        let vs = q.vertices_c();
        for i in 0..4usize {
            let u = vs[(i + 3) % 4] - vs[i];
            let v = vs[(i + 1) % 4] - vs[i];
            let oracle = (crate::point::dot(u, v) / (u.norm() * v.norm())).acos();
            assert!((q.interior_angles().as_array()[i] - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn dart_has_one_reflex_angle() {
        let q = Quadrilateral::new([p(0.0, 0.0), p(2.0, 0.0), p(1.0, 0.2), p(1.0, 2.0)]).unwrap();
        let a = q.interior_angles().as_array();
        assert_eq!(a.iter().filter(|&&x| x > PI).count(), 1);
        assert!((q.interior_angles().sum() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        // repeated vertex
        assert!(matches!(
            Quadrilateral::new([p(0.0, 0.0), p(0.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]),
            Err(Error::DegenerateQuadrilateral(_))
        ));
        // collinear triple
        assert!(matches!(
            Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0), p(0.5, 2.0)]),
            Err(Error::DegenerateQuadrilateral(_))
        ));
        // self-crossing (butterfly)
        assert!(matches!(
            Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0)]),
            Err(Error::DegenerateQuadrilateral(_))
        ));
        // non-finite coordinate
        assert!(matches!(
            Quadrilateral::new([p(f64::NAN, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]),
            Err(Error::DegenerateQuadrilateral(_))
        ));
    }

    #[test]
    fn alpha_values() {
        let q = Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap();
        let angles = q.interior_angles();
        assert!((angles.alpha(1, 0) - PI / 4.0).abs() < 1e-15);
        for i in 1..=4u8 {
            assert!((angles.alpha(i, -1) + angles.alpha(i, 0)).abs() < 1e-15);
        }
        let fig = fig1();
        let sum: f64 = (1..=4u8).map(|i| fig.interior_angles().alpha(i, 2)).sum();
        assert!((sum - 5.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn vertex_rotation_with_offsets() {
        let q = Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap();
        let r = vertex_rotation(&q, 1, 0, None);
        assert!((r.rotor().angle() - PI / 4.0).abs() < 1e-15);

        let o = AngleOffsets::new([2, 1, 1, 0], 2).unwrap();
        assert!((o.shift(1) - PI).abs() < 1e-15);
        assert!((o.shift(2) - PI / 2.0).abs() < 1e-15);
        assert!((o.shift(4) - 0.0).abs() < 1e-15);
        let rs = vertex_rotation(&q, 2, 0, Some(&o));
        // pi/4 + pi/2 = 3*pi/4
        assert!((rs.rotor().angle() - 3.0 * PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_offsets_rejected() {
        assert!(matches!(
            AngleOffsets::new([1, 0, 0, 0], 2),
            Err(Error::InvalidOffsets(_))
        ));
        assert!(matches!(
            AngleOffsets::new([4, 0, 0, 0], 2),
            Err(Error::InvalidOffsets(_))
        ));
        assert!(matches!(
            AngleOffsets::new([0, 0, 0, 0], 0),
            Err(Error::InvalidOffsets(_))
        ));
    }

    #[test]
    fn b_point_fig1_frozen_and_dual_route() {
        let q = fig1();
        let perm = Perm::identity();
        let b = b_point(&q, perm, 0, None).unwrap();
        // frozen from an independent evaluation of the closed form
        assert!((b.x - 0.353815915924380).abs() < 1e-12);
        assert!((b.y - 0.815352670048870).abs() < 1e-12);
        let via_chain = b_point_via_chain(&q, perm, 0, None).unwrap();
        assert!(b.distance(via_chain) <= 1e-9 * q.scale());
    }

    #[test]
    fn b_point_symmetry_under_n_reflection() {
        let q = fig1();
        for digits in [[1, 2, 3, 4], [2, 4, 1, 3], [4, 3, 2, 1], [3, 1, 4, 2]] {
            let perm = Perm::new(digits).unwrap();
            for n in -3..=2 {
                let b1 = b_point(&q, perm, n, None).unwrap();
                let b2 = b_point(&q, perm.reversed(), -n - 1, None).unwrap();
                assert!(b1.distance(b2) <= 1e-9 * q.scale());
            }
        }
    }

    #[test]
    fn degenerate_offsets_make_translation() {
        // bypass validation to hit the guard: sum(m) = 2 is not a multiple of 4,
        // so the total angle becomes an even multiple of pi
        let q = fig1();
        let bad = AngleOffsets {
            m: [1, 1, 0, 0],
            modulus: 2,
        };
        match b_point(&q, Perm::identity(), 0, Some(&bad)) {
            Err(Error::NoUniqueFixedPoint(DegenerateIsometry::Translation { .. })) => {}
            other => panic!("expected translation degeneracy, got {other:?}"),
        }
    }

    #[test]
    fn parallelogram_closure_and_side_identities() {
        let q = fig1();
        let vs = q.vertices_c();
        for digits in [[1, 2, 3, 4], [3, 1, 4, 2], [2, 4, 3, 1]] {
            let perm = Perm::new(digits).unwrap();
            for n in -2..=2 {
                let par = parallelogram(&q, perm, n, None).unwrap();
                assert!(par.closure_residual() <= 1e-9 * q.scale());

                let [i, j, k, l] = perm.idx();
                let a = effective_alphas(&q, n, None);
                let ei = Complex64::from_polar(1.0, a[i]);
                let ej = Complex64::from_polar(1.0, a[j]);
                let ek = Complex64::from_polar(1.0, a[k]);
                let el = Complex64::from_polar(1.0, a[l]);
                let [b1, b2, _, b4] = par.vertices_c();
                let side1 = 0.5 * (1.0 - ei) * (1.0 - ej) * (vs[j] - vs[i]);
                assert!((b4 - b1 - side1).norm() <= 1e-9 * q.scale());
                let side2 = 0.5 * ei * ej * (1.0 - ek) * (1.0 - el) * (vs[l] - vs[k]);
                assert!((b2 - b1 - side2).norm() <= 1e-9 * q.scale());
            }
        }
    }

    #[test]
    fn six_families_fig1_signs_frozen() {
        let q = fig1();
        let fams = six_families(&q, 0).unwrap();
        let expected_areas = [
            0.110336676959342,
            0.110336676959342,
            -0.073557784639562,
            -0.073557784639562,
            0.183894461598904,
            0.183894461598904,
        ];
        for (fam, want) in fams.iter().zip(expected_areas) {
            assert!(
                (fam.area() - want).abs() < 1e-12,
                "{} vs {want}",
                fam.area()
            );
        }
    }

    #[test]
    fn all_permutations_collapse_to_six_sets() {
        let q = Quadrilateral::new([p(-1.0, 0.3), p(2.0, -0.5), p(2.5, 2.0), p(0.0, 1.5)]).unwrap();
        for n in [-2, 0, 1] {
            six_families(&q, n).unwrap();
        }
    }

    #[test]
    fn pivot_center_fig1_frozen() {
        let q = fig1();
        let o = pivot_center(&q, 1, 2, 0).unwrap();
        assert!((o.point.x - 0.660040751719678).abs() < 1e-12);
        assert!(o.point.y.abs() < 1e-12, "O(12,0) lies on the x-axis edge");
        assert!((o.mu_i + o.mu_j - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pivot_center_properties() {
        let q = fig1();
        let vs = q.vertices_c();
        for (i, j) in [(1u8, 2u8), (1, 3), (1, 4), (2, 3), (3, 4)] {
            for n in -2..=2 {
                let piv = pivot_center(&q, i, j, n).unwrap();
                // on the line through a_i and a_j
                let zi = vs[(i - 1) as usize];
                let zj = vs[(j - 1) as usize];
                let d = (zj - zi) / (zj - zi).norm();
                let off = (piv.point.to_complex() - zi) * d.conj();
                assert!(off.im.abs() <= 1e-9 * q.scale());
                // same center for n and -n-1
                let piv2 = pivot_center(&q, i, j, -n - 1).unwrap();
                assert!(piv.point.distance(piv2.point) <= 1e-9 * q.scale());
                // barycentric route matches the complex closed form
                let direct = pivot_center_direct(&q, i, j, n).unwrap();
                assert!(piv.point.distance(direct) <= 1e-12 * q.scale());
            }
        }
    }

    #[test]
    fn congruence_rotation_maps_family_onto_family() {
        let q = fig1();
        for digits in [[1, 2, 3, 4], [2, 3, 1, 4], [4, 1, 3, 2]] {
            let perm = Perm::new(digits).unwrap();
            let [i, j, _, _] = perm.digits();
            for n in -2..=2 {
                let r = congruence_rotation(&q, i, j, n).unwrap();
                let src = parallelogram(&q, perm, n, None).unwrap();
                // images: [b(klji), b(lkji), b(lkij), b(klij)]
                let t = perm.halves_swapped(); // (k,l,i,j)
                let dst = [
                    b_point(&q, t.swap_second_pair(), n, None).unwrap(),
                    b_point(&q, perm.reversed(), n, None).unwrap(),
                    b_point(&q, t.swap_first_pair(), n, None).unwrap(),
                    b_point(&q, t, n, None).unwrap(),
                ];
                for (s, d) in src.vertices().iter().zip(dst) {
                    let img = Point::from_complex(r.apply(s.to_complex()));
                    assert!(img.distance(d) <= 1e-9 * q.scale());
                }
                // inverse brings each b-point back
                let inv = r.inverse();
                for s in src.vertices() {
                    let back = inv.apply(r.apply(s.to_complex()));
                    assert!((back - s.to_complex()).norm() <= 1e-9 * q.scale());
                }
            }
        }
    }

    #[test]
    fn involution_of_four_rotation_product() {
        let q = fig1();
        for n in -3..=3 {
            let maps: Vec<DirectIsometry> =
                (1..=4u8).map(|i| vertex_rotation(&q, i, n, None)).collect();
            let f = crate::isometry::compose_chain(&maps);
            let ff = f.compose(&f);
            assert_eq!(ff.classify(1e-9, q.scale()), IsometryClass::Identity);
        }
    }

    #[test]
    fn area_identities_and_decomposition() {
        let q = fig1();
        let s2 = q.scale() * q.scale();
        for digits in [[1, 2, 3, 4], [2, 3, 4, 1], [4, 2, 1, 3]] {
            let perm = Perm::new(digits).unwrap();
            let [i, j, k, l] = perm.digits();
            for n in -2..=2 {
                let a_ijkl = parallelogram(&q, perm, n, None).unwrap().area();
                let a_ikjl = parallelogram(&q, Perm::new([i, k, j, l]).unwrap(), n, None)
                    .unwrap()
                    .area();
                let a_ilkj = parallelogram(&q, Perm::new([i, l, k, j]).unwrap(), n, None)
                    .unwrap()
                    .area();
                assert!((a_ijkl - a_ikjl - a_ilkj).abs() <= 1e-9 * s2);

                let a_reflected = parallelogram(&q, perm.swap_second_pair(), -n - 1, None)
                    .unwrap()
                    .area();
                assert!((a_ijkl - a_reflected).abs() <= 1e-9 * s2);

                let dec = signed_area(&parallelogram(&q, perm, n, None).unwrap());
                assert!(
                    (dec.area - 0.25 * dec.factor_im * dec.chord_product_re).abs() <= 1e-9 * s2
                );
            }
        }
    }

    #[test]
    fn coincident_b_points_give_zero_area_but_closure_holds() {
        // chords (a2 - a1) and (a4 - a3) are perpendicular, so the family
        // P(1234,0) collapses onto a segment
        let q = Quadrilateral::new([p(0.0, 0.0), p(1.0, 0.0), p(2.0, 1.0), p(2.0, 2.0)]).unwrap();
        let par = parallelogram(&q, Perm::identity(), 0, None).unwrap();
        assert!(par.area().abs() <= 1e-12);
        assert!(par.closure_residual() <= 1e-9 * q.scale());
        let vs = par.vertices();
        assert!(vs[0].distance(vs[2]) <= 1e-12, "diagonal b-points coincide");
    }

    #[test]
    fn offset_variant_enumeration() {
        let m1 = offset_variants(1);
        assert_eq!(m1.len(), 8);
        let m2 = offset_variants(2);
        assert_eq!(m2.len(), 64);
        let hist = offset_class_histogram(&m2);
        let expected: &[([u32; 4], usize)] = &[
            ([0, 0, 0, 0], 1),
            ([1, 1, 1, 1], 1),
            ([2, 1, 1, 0], 12),
            ([2, 2, 0, 0], 6),
            ([2, 2, 2, 2], 1),
            ([3, 1, 0, 0], 12),
            ([3, 2, 2, 1], 12),
            ([3, 3, 1, 1], 6),
            ([3, 3, 2, 0], 12),
            ([3, 3, 3, 3], 1),
        ];
        assert_eq!(hist, expected);
        assert_eq!(offset_variants(3).len(), 216);
    }

    #[test]
    fn offset_closure_holds_for_valid_variants() {
        let q = fig1();
        for modulus in [1, 2, 3] {
            for o in offset_variants(modulus) {
                let par = parallelogram(&q, Perm::identity(), 0, Some(&o)).unwrap();
                assert!(par.closure_residual() <= 1e-9 * q.scale(), "offsets {o}");
            }
        }
    }

    #[test]
    fn perm_parsing_and_display() {
        let perm: Perm = "3142".parse().unwrap();
        assert_eq!(perm.digits(), [3, 1, 4, 2]);
        assert_eq!(perm.to_string(), "3142");
        assert!("1123".parse::<Perm>().is_err());
        assert!("123".parse::<Perm>().is_err());
        assert!("12a4".parse::<Perm>().is_err());
        assert_eq!(Perm::all().len(), 24);
    }
}
