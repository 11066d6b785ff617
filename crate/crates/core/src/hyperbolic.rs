//! Upper half-plane model: isometries, points, triangles and oriented angles.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::dd::{diff_of_products, sum_of_products, DdMat};
use crate::error::{Error, Result};
use crate::tol::{DET_DRIFT, EPS_DEG, EPS_ELL, MIN_Y};

/// Reduces an angle to its representative in `[0, 2π)`.
pub fn normalize_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_gap(s: f64, t: f64) -> f64 {
    let d = normalize_angle(s - t);
    d.min(TAU - d)
}

/// A point `x + iy` of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointH {
    x: f64,
    y: f64,
}

impl PointH {
    /// The complex unit `i`.
    pub const I: PointH = PointH { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && y > MIN_Y {
            Ok(PointH { x, y })
        } else {
            Err(Error::InvalidPoint { x, y })
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Hyperbolic distance to `other`.
    pub fn dist(&self, other: &PointH) -> f64 {
        dist(*self, *other)
    }
}

impl fmt::Display for PointH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Conjugacy type of an isometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// An element of PSL(2,ℝ), stored as a determinant one matrix whose first
/// nonzero entry is positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    m: [f64; 4],
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        m: [1.0, 0.0, 0.0, 1.0],
    };

    /// Builds the class of `[[a, b], [c, d]]`, rescaling to determinant one.
    /// Entries of an isometry read back through [`Isometry::entries`] are
    /// kept exactly.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = diff_of_products(a, d, b, c);
        if !(det.is_finite() && det > 0.0) || ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidMatrix { det });
        }
        Ok(Self::from_raw([a, b, c, d]))
    }

    /// Wraps a matrix already known to have determinant close to one. The
    /// determinant of a rounded matrix is only known to about `ε‖m‖²`, so
    /// smaller drift is left alone.
    pub(crate) fn from_raw(m: [f64; 4]) -> Self {
        let det = diff_of_products(m[0], m[3], m[1], m[2]);
        let size = m.iter().map(|v| v * v).sum::<f64>().max(1.0);
        if (det - 1.0).abs() > DET_DRIFT * size && det > 0.0 {
            let s = det.sqrt();
            Self::canonical([m[0] / s, m[1] / s, m[2] / s, m[3] / s])
        } else {
            Self::canonical(m)
        }
    }

    fn canonical(m: [f64; 4]) -> Self {
        let lead = m.iter().copied().find(|v| *v != 0.0).unwrap_or(1.0);
        if lead < 0.0 {
            Isometry {
                m: [-m[0], -m[1], -m[2], -m[3]],
            }
        } else {
            Isometry { m }
        }
    }

    /// Entries `[a, b, c, d]` in row-major order.
    pub fn entries(&self) -> [f64; 4] {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m[0] + self.m[3]
    }

    pub fn det(&self) -> f64 {
        diff_of_products(self.m[0], self.m[3], self.m[1], self.m[2])
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m;
        Self::canonical([d, -b, -c, a])
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Self {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        Self::from_raw([
            sum_of_products(a, e, b, g),
            sum_of_products(a, f, b, h),
            sum_of_products(c, e, d, g),
            sum_of_products(c, f, d, h),
        ])
    }

    /// `self · g · self⁻¹`.
    pub fn conjugate(&self, g: &Isometry) -> Self {
        let h = DdMat::from_f64(self.m);
        Self::from_raw(h.mul(&DdMat::from_f64(g.m)).mul(&h.adjugate()).round())
    }

    /// Möbius action `(az + b)/(cz + d)`.
    pub fn apply(&self, z: PointH) -> Result<PointH> {
        let [a, b, c, d] = self.m;
        let den = Complex64::new(c * z.x + d, c * z.y);
        let n2 = den.norm_sqr();
        if den.norm() < 1e-300 || !n2.is_finite() || n2 == 0.0 {
            return Err(Error::NumericOverflow);
        }
        let num = Complex64::new(a * z.x + b, a * z.y);
        let w = num / den;
        // Im((az+b)/(cz+d)) = y / |cz+d|² keeps the sign exact.
        let y = z.y * self.det() / n2;
        PointH::new(w.re, y).map_err(|_| Error::NumericOverflow)
    }

    /// Largest entrywise gap to `other`, minimized over the sign ambiguity.
    pub fn max_entry_distance(&self, other: &Isometry) -> f64 {
        let plus = (0..4)
            .map(|k| (self.m[k] - other.m[k]).abs())
            .fold(0.0, f64::max);
        let minus = (0..4)
            .map(|k| (self.m[k] + other.m[k]).abs())
            .fold(0.0, f64::max);
        plus.min(minus)
    }

    pub fn classify(&self) -> IsometryKind {
        if self.max_entry_distance(&Isometry::IDENTITY) < EPS_ELL {
            return IsometryKind::Identity;
        }
        let t = self.trace().abs();
        if t < 2.0 - EPS_ELL {
            IsometryKind::Elliptic
        } else if (t - 2.0).abs() <= EPS_ELL {
            IsometryKind::Parabolic
        } else {
            IsometryKind::Hyperbolic
        }
    }

    /// True for elliptic elements, and for elements in the parabolic band
    /// `||tr| − 2| ≤ ε_ell` whose discriminant `4 − tr²` is still resolved,
    /// which are small rotations rather than parabolics.
    pub fn has_fixed_point(&self) -> bool {
        match self.classify() {
            IsometryKind::Elliptic => true,
            IsometryKind::Parabolic => {
                let [a, b, c, d] = self.m;
                self.discriminant() > 1e-14 * (a * a + b * b + c * c + d * d)
            }
            _ => false,
        }
    }

    fn require_elliptic(&self) -> Result<()> {
        if self.has_fixed_point() {
            Ok(())
        } else {
            Err(Error::NotElliptic {
                trace: self.trace(),
            })
        }
    }

    /// `4 - tr²`, evaluated as `-(a-d)² - 4bc` in double-double to keep
    /// small rotations accurate.
    fn discriminant(&self) -> f64 {
        DdMat::from_f64(self.m).discriminant().to_f64().max(0.0)
    }

    /// Fixed point of an isometry with [`Isometry::has_fixed_point`].
    pub fn fix(&self) -> Result<PointH> {
        self.require_elliptic()?;
        let [a, _, c, d] = self.m;
        PointH::new(
            (a - d) / (2.0 * c),
            self.discriminant().sqrt() / (2.0 * c.abs()),
        )
    }

    /// Counterclockwise rotation angle in `(0, 2π)`; same precondition as [`Isometry::fix`].
    pub fn rotation_angle(&self) -> Result<f64> {
        self.require_elliptic()?;
        let [a, _, c, d] = self.m;
        let t = a + d;
        let s = -c.signum();
        // Both terms are homogeneous of degree two, so determinant drift cancels.
        let num = s * t * self.discriminant().sqrt();
        let den = t * t - 2.0 * self.det();
        let angle = if den == 0.0 {
            if num > 0.0 {
                PI / 2.0
            } else {
                1.5 * PI
            }
        } else {
            let base = (num / den).atan();
            if den < 0.0 {
                base + PI
            } else if t * s > 0.0 {
                base
            } else {
                base + TAU
            }
        };
        Ok(angle)
    }

    /// Counterclockwise rotation by `theta ∈ (0, 2π)` about `z`.
    pub fn rot(theta: f64, z: PointH) -> Result<Self> {
        if !(theta > 0.0 && theta < TAU) {
            return Err(Error::Domain(format!(
                "rotation angle {theta} not in (0, 2pi)"
            )));
        }
        Ok(Self::rotation_about(z, theta))
    }

    /// Rotation about `z` by any real angle; multiples of 2π give the identity.
    pub fn rotation_about(z: PointH, theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        let (x, y) = (z.x, z.y);
        Self::from_raw([
            c - x / y * s,
            (x * x / y + y) * s,
            -s / y,
            c + x / y * s,
        ])
    }

    /// The map `z ↦ (z - x_p)/y_p`, sending `p` to `i` and vertical rays to
    /// vertical rays.
    pub fn to_i(p: PointH) -> Self {
        let r = p.y.sqrt();
        Isometry {
            m: [1.0 / r, -p.x / r, 0.0, r],
        }
    }

    /// Inverse of [`Isometry::to_i`].
    pub fn from_i(p: PointH) -> Self {
        let r = p.y.sqrt();
        Isometry {
            m: [r, p.x / r, 0.0, 1.0 / r],
        }
    }
}

impl Mul for Isometry {
    type Output = Isometry;

    fn mul(self, rhs: Isometry) -> Isometry {
        self.compose(&rhs)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Reflection in a geodesic, stored as a determinant `-1` matrix acting by
/// `z ↦ (a z̄ + b)/(c z̄ + d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reflection {
    m: [f64; 4],
}

impl Reflection {
    /// Reflection in the geodesic through `p` with direction `psi`, measured
    /// as by [`gamma_at`].
    pub fn across(p: PointH, psi: f64) -> Self {
        let h = Isometry::from_i(p).compose(&Isometry::rotation_about(PointH::I, psi));
        let [a, b, c, d] = h.m;
        let [e, f, g, k] = h.inverse().m;
        // h · diag(-1, 1) · h⁻¹
        Reflection {
            m: [
                -a * e + b * g,
                -a * f + b * k,
                -c * e + d * g,
                -c * f + d * k,
            ],
        }
    }

    /// The orientation-preserving product `self ∘ other`.
    pub fn then_after(&self, other: &Reflection) -> Isometry {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        Isometry::from_raw([
            a * e + b * g,
            a * f + b * h,
            c * e + d * g,
            c * f + d * h,
        ])
    }

    pub fn apply(&self, z: PointH) -> Result<PointH> {
        let [a, b, c, d] = self.m;
        let zb = Complex64::new(z.x, -z.y);
        let den = c * zb + d;
        if den.norm() < 1e-300 {
            return Err(Error::NumericOverflow);
        }
        let w = (a * zb + b) / den;
        PointH::new(w.re, w.im).map_err(|_| Error::NumericOverflow)
    }
}

/// Hyperbolic distance for the curvature `-1` metric `|dz|/y`.
pub fn dist(p: PointH, q: PointH) -> f64 {
    let dz = Complex64::new(p.x - q.x, p.y - q.y).norm();
    2.0 * (dz / (2.0 * (p.y * q.y).sqrt())).asinh()
}

/// Oriented angle at `i` from the upward vertical ray to the ray toward `z`,
/// counterclockwise, in `[0, 2π)`.
pub fn gamma(z: PointH) -> Result<f64> {
    if dist(z, PointH::I) <= EPS_DEG {
        return Err(Error::DegeneratePoint);
    }
    Ok(gamma_table(z.x, z.y))
}

/// `Γ_p(z)`: the angle [`gamma`] measured at `p` instead of `i`.
pub fn gamma_at(p: PointH, z: PointH) -> Result<f64> {
    if dist(p, z) <= EPS_DEG {
        return Err(Error::DegeneratePoint);
    }
    Ok(gamma_table((z.x - p.x) / p.y, z.y / p.y))
}

fn gamma_table(x: f64, y: f64) -> f64 {
    let r = x * x + (y - 1.0) * (y + 1.0);
    let g = if x == 0.0 {
        if y > 1.0 {
            0.0
        } else {
            PI
        }
    } else if r == 0.0 {
        if x > 0.0 {
            1.5 * PI
        } else {
            PI / 2.0
        }
    } else if r < 0.0 {
        PI - (2.0 * x / r).atan()
    } else {
        -(2.0 * x / r).atan()
    };
    normalize_angle(g)
}

/// Counterclockwise angle at `base` from the ray toward `toward1` to the ray
/// toward `toward2`.
pub fn oriented_ray_angle(base: PointH, toward1: PointH, toward2: PointH) -> Result<f64> {
    Ok(normalize_angle(
        gamma_at(base, toward2)? - gamma_at(base, toward1)?,
    ))
}

/// The point at distance `d` from `p` along the ray with `Γ_p = psi`.
pub fn shoot(p: PointH, psi: f64, d: f64) -> PointH {
    let g = Isometry::from_i(p).compose(&Isometry::rotation_about(PointH::I, psi));
    g.apply(PointH { x: 0.0, y: d.exp() })
        .expect("rotation about an interior point is finite")
}

/// An ordered geodesic triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle {
    pub v1: PointH,
    pub v2: PointH,
    pub v3: PointH,
}

impl Triangle {
    pub fn new(v1: PointH, v2: PointH, v3: PointH) -> Self {
        Triangle { v1, v2, v3 }
    }

    pub fn vertices(&self) -> [PointH; 3] {
        [self.v1, self.v2, self.v3]
    }

    /// True when some pair of vertices is within the degeneracy threshold.
    pub fn is_degenerate(&self) -> bool {
        dist(self.v1, self.v2) <= EPS_DEG
            || dist(self.v2, self.v3) <= EPS_DEG
            || dist(self.v3, self.v1) <= EPS_DEG
    }

    /// Counterclockwise turn at each vertex from the next vertex to the one
    /// after; all lie in `(π, 2π)` for a clockwise triangle.
    fn turns(&self) -> Option<[f64; 3]> {
        if self.is_degenerate() {
            return None;
        }
        let v = self.vertices();
        let mut out = [0.0; 3];
        for k in 0..3 {
            out[k] = oriented_ray_angle(v[k], v[(k + 1) % 3], v[(k + 2) % 3]).ok()?;
        }
        Some(out)
    }

    /// Interior angles at `v1, v2, v3`, or `None` when degenerate.
    pub fn interior_angles(&self) -> Option<[f64; 3]> {
        self.turns().map(|t| t.map(|d| d.min(TAU - d)))
    }

    /// True when the vertices run clockwise. Degenerate triangles are not.
    pub fn is_clockwise(&self) -> bool {
        match self.turns() {
            Some(t) => t.iter().map(|d| d.sin()).sum::<f64>() < 0.0,
            None => false,
        }
    }

    /// Area with sign: positive for clockwise vertex order.
    pub fn signed_area(&self) -> f64 {
        signed_area(self)
    }
}

/// Signed area of a geodesic triangle, clockwise positive, computed from the
/// angle defect. Degenerate triangles have area zero.
pub fn signed_area(t: &Triangle) -> f64 {
    let Some(turns) = t.turns() else {
        return 0.0;
    };
    let sum: f64 = turns.iter().map(|d| d.min(TAU - d)).sum();
    let area = (PI - sum).max(0.0);
    if turns.iter().map(|d| d.sin()).sum::<f64>() < 0.0 {
        area
    } else {
        -area
    }
}
