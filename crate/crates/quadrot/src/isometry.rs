//! Direct (orientation-preserving) plane isometries as `z -> rotor * z + offset`.
//!
//! The rotor is stored multiplicatively as a renormalized unit complex number
//! rather than as an angle, so long composition chains never accumulate
//! wrap-around error; the angle is recovered by `arg` only at classification
//! time.
//!
//! Composition convention: `f.compose(&g)` applies `g` first, then `f`,
//! matching the left-to-right product notation `f g` acting on `z`.
//! [`compose_chain`] folds a slice the same way: the last element acts first.

use crate::error::{DegenerateIsometry, Error, Result};
use num_complex::Complex64;

/// Rotor treated as exactly 1 below this distance; past it a fixed point
/// cannot be solved for.
pub const ROTOR_SINGULAR_TOL: f64 = 1e-12;

/// Fixed points solved with `1e-12 < |1 - rotor| <= 1e-9` are flagged
/// ill-conditioned.
pub const ROTOR_ILL_CONDITIONED_TOL: f64 = 1e-9;

/// Default classification tolerance on `|rotor - 1|`.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Unit complex multiplier `e^{i*alpha}` of a direct isometry.
/// Renormalized on every construction; `re^2 + im^2 = 1` within 1e-12.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotor(Complex64);

impl Rotor {
    pub fn from_angle(angle: f64) -> Self {
        Rotor::from_complex(Complex64::from_polar(1.0, angle))
    }

    pub fn from_complex(z: Complex64) -> Self {
        let n = z.norm();
        assert!(
            n > 0.0 && n.is_finite(),
            "rotor must be a nonzero finite complex number"
        );
        Rotor(z / n)
    }

    pub fn identity() -> Self {
        Rotor(Complex64::new(1.0, 0.0))
    }

    /// Argument of the rotor in (-pi, pi].
    pub fn angle(self) -> f64 {
        self.0.arg()
    }

    pub fn conjugate(self) -> Self {
        Rotor(self.0.conj())
    }

    pub fn as_complex(self) -> Complex64 {
        self.0
    }
}

impl std::ops::Mul for Rotor {
    type Output = Rotor;

    fn mul(self, rhs: Rotor) -> Rotor {
        Rotor::from_complex(self.0 * rhs.0)
    }
}

/// Classification of a direct isometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IsometryClass {
    Identity,
    Translation { vector: Complex64 },
    Rotation { center: Complex64, angle: f64 },
}

/// Fixed-point solution of a rotation, flagged when the rotor sits in the
/// near-singular band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPoint {
    pub point: Complex64,
    pub ill_conditioned: bool,
}

/// Orientation-preserving plane isometry `z -> rotor * z + offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectIsometry {
    rotor: Rotor,
    offset: Complex64,
}

impl DirectIsometry {
    pub fn new(rotor: Rotor, offset: Complex64) -> Self {
        Self { rotor, offset }
    }

    pub fn identity() -> Self {
        Self {
            rotor: Rotor::identity(),
            offset: Complex64::new(0.0, 0.0),
        }
    }

    /// Rotation about `center` through `angle`:
    /// `z -> e^{i*angle} (z - center) + center`.
    pub fn rotation_about(center: Complex64, angle: f64) -> Self {
        let rotor = Rotor::from_angle(angle);
        Self {
            rotor,
            offset: center - rotor.as_complex() * center,
        }
    }

    pub fn translation(vector: Complex64) -> Self {
        Self {
            rotor: Rotor::identity(),
            offset: vector,
        }
    }

    pub fn rotor(&self) -> Rotor {
        self.rotor
    }

    pub fn offset(&self) -> Complex64 {
        self.offset
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.rotor.as_complex() * z + self.offset
    }

    /// `self.compose(&inner)` applies `inner` first:
    /// rotor = r1 r2, offset = r1 b2 + b1.
    pub fn compose(&self, inner: &DirectIsometry) -> DirectIsometry {
        DirectIsometry {
            rotor: self.rotor * inner.rotor,
            offset: self.rotor.as_complex() * inner.offset + self.offset,
        }
    }

    pub fn inverse(&self) -> DirectIsometry {
        let r = self.rotor.conjugate();
        DirectIsometry {
            rotor: r,
            offset: -(r.as_complex() * self.offset),
        }
    }

    /// Total classification. `tol` bounds `|rotor - 1|`; the identity/translation
    /// split compares the offset against `tol * scale`, with `scale` the
    /// caller's coordinate scale.
    pub fn classify(&self, tol: f64, scale: f64) -> IsometryClass {
        let d = (self.rotor.as_complex() - 1.0).norm();
        if d <= tol {
            if self.offset.norm() <= tol * scale {
                IsometryClass::Identity
            } else {
                IsometryClass::Translation {
                    vector: self.offset,
                }
            }
        } else {
            IsometryClass::Rotation {
                center: self.offset / (1.0 - self.rotor.as_complex()),
                angle: self.rotor.angle(),
            }
        }
    }

    pub fn classify_default(&self) -> IsometryClass {
        self.classify(CLASSIFY_TOL, 1.0)
    }

    /// Unique fixed point `offset / (1 - rotor)` of a rotation.
    pub fn fixed_point(&self) -> Result<FixedPoint> {
        let denom = 1.0 - self.rotor.as_complex();
        let d = denom.norm();
        if d <= ROTOR_SINGULAR_TOL {
            let kind = if self.offset.norm() <= ROTOR_SINGULAR_TOL {
                DegenerateIsometry::Identity
            } else {
                DegenerateIsometry::Translation {
                    dx: self.offset.re,
                    dy: self.offset.im,
                }
            };
            return Err(Error::NoUniqueFixedPoint(kind));
        }
        Ok(FixedPoint {
            point: self.offset / denom,
            ill_conditioned: d <= ROTOR_ILL_CONDITIONED_TOL,
        })
    }
}

/// Product of a chain in written order: `compose_chain(&[f, g, h])` is
/// `f g h`, i.e. `h` acts first.
pub fn compose_chain(maps: &[DirectIsometry]) -> DirectIsometry {
    let mut acc = DirectIsometry::identity();
    for m in maps {
        acc = acc.compose(m);
    }
    acc
}
