//! Representations of the punctured-sphere group with prescribed boundary
//! angles: membership, volume, β functions and the Euler class.

use std::f64::consts::{PI, TAU};

use crate::chain;
use crate::error::{Error, Result};
use crate::hyperbolic::{angle_gap, Isometry, IsometryKind, PointH, Reflection, Triangle};
use crate::tol;
use crate::words::{make_pants_curves, Word};

/// Boundary angles `α ∈ (0, 2π)^n` with positive scaling factor
/// `λ = Σα − 2π(n − 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleVector {
    alpha: Vec<f64>,
    lambda: f64,
}

impl AngleVector {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        check_angles(&alpha)?;
        let lambda = scaling_factor(&alpha);
        if !(lambda > 0.0) {
            return Err(Error::InfeasibleAngles { lambda });
        }
        Ok(AngleVector { alpha, lambda })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.alpha
    }

    /// `α_i` with 1-based `i`.
    pub fn get(&self, i: usize) -> f64 {
        self.alpha[i - 1]
    }
}

/// `Σα − 2π(n − 1)`.
pub fn scaling_factor(alpha: &[f64]) -> f64 {
    alpha.iter().sum::<f64>() - TAU * (alpha.len() as f64 - 1.0)
}

fn check_angles(alpha: &[f64]) -> Result<()> {
    if alpha.len() < 3 {
        return Err(Error::Domain(format!(
            "need at least 3 angles, got {}",
            alpha.len()
        )));
    }
    if let Some(a) = alpha.iter().find(|a| !(**a > 0.0 && **a < TAU)) {
        return Err(Error::Domain(format!("angle {a} not in (0, 2pi)")));
    }
    Ok(())
}

/// A tuple of generator images `φ(c_1), …, φ(c_n)` for given angles.
#[derive(Clone, Debug, PartialEq)]
pub struct DtRepresentation {
    alpha: AngleVector,
    gens: Vec<Isometry>,
}

/// Residuals reported by [`DtRepresentation::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct RepDiagnostics {
    pub relator_residual: f64,
    /// Circular distance from `α_i`; infinite for a non-elliptic generator.
    pub angle_residuals: Vec<f64>,
    pub volume: f64,
    pub volume_residual: f64,
    pub passed: bool,
}

/// Volume together with the relative Euler class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerData {
    pub volume: f64,
    pub euler_class: i64,
}

impl DtRepresentation {
    /// Wraps generator images; only the count is checked; use
    /// [`DtRepresentation::validate`] for membership.
    pub fn new(alpha: AngleVector, gens: Vec<Isometry>) -> Result<Self> {
        if gens.len() != alpha.n() {
            return Err(Error::Domain(format!(
                "{} generators for {} angles",
                gens.len(),
                alpha.n()
            )));
        }
        Ok(DtRepresentation { alpha, gens })
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn alpha(&self) -> &AngleVector {
        &self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.alpha.lambda()
    }

    pub fn gens(&self) -> &[Isometry] {
        &self.gens
    }

    /// `φ(c_i)` with 1-based `i`.
    pub fn gen(&self, i: usize) -> Isometry {
        self.gens[i - 1]
    }

    pub fn evaluate(&self, w: &Word) -> Result<Isometry> {
        w.evaluate(&self.gens)
    }

    /// The representation `h φ h⁻¹`.
    pub fn conjugated_by(&self, h: &Isometry) -> Self {
        DtRepresentation {
            alpha: self.alpha.clone(),
            gens: self.gens.iter().map(|g| h.conjugate(g)).collect(),
        }
    }

    /// Distance of `φ(c_1)⋯φ(c_n)` from the identity.
    pub fn relator_residual(&self) -> f64 {
        self.gens
            .iter()
            .fold(Isometry::IDENTITY, |acc, g| acc.compose(g))
            .max_entry_distance(&Isometry::IDENTITY)
    }

    pub fn validate(&self) -> RepDiagnostics {
        let relator_residual = self.relator_residual();
        let angle_residuals: Vec<f64> = self
            .gens
            .iter()
            .zip(self.alpha.as_slice())
            .map(|(g, a)| match g.rotation_angle() {
                Ok(t) => angle_gap(t, *a),
                Err(_) => f64::INFINITY,
            })
            .collect();
        let volume = volume_cocycle(&self.gens, PointH::I).unwrap_or(f64::NAN);
        let volume_residual = (volume + self.lambda()).abs();
        let passed = relator_residual <= tol::REP
            && angle_residuals.iter().all(|r| *r <= tol::REP)
            && volume_residual <= tol::VOLUME;
        RepDiagnostics {
            relator_residual,
            angle_residuals,
            volume,
            volume_residual,
            passed,
        }
    }

    /// `β_i` for `0 ≤ i ≤ n − 2`.
    pub fn beta(&self, i: usize) -> Result<f64> {
        let n = self.n();
        if i == 0 {
            Ok(TAU - self.alpha.get(1))
        } else if i == n - 2 {
            Ok(self.alpha.get(n))
        } else if i < n - 2 {
            let curves = make_pants_curves(n)?;
            self.evaluate(&curves.b_words()[i - 1])?.rotation_angle()
        } else {
            Err(Error::Index {
                index: i,
                len: n - 1,
            })
        }
    }

    /// `β_0, …, β_{n−2}`.
    pub fn betas(&self) -> Result<Vec<f64>> {
        (0..=self.n() - 2).map(|i| self.beta(i)).collect()
    }

    pub fn volume_cocycle(&self, z: PointH) -> Result<f64> {
        volume_cocycle(&self.gens, z)
    }

    /// `−2 Σ [Δ_i]` over the chain of triangles.
    pub fn volume_chain(&self) -> Result<f64> {
        let (chain, _) = chain::local_chain(self)?;
        Ok(-2.0 * chain.areas().iter().sum::<f64>())
    }

    /// Volume of each pants piece `(φ(b_i)⁻¹, φ(c_{i+2}), φ(b_{i+1}))`.
    pub fn pants_volumes(&self) -> Result<Vec<f64>> {
        let n = self.n();
        let curves = make_pants_curves(n)?;
        let b = (0..=n - 2)
            .map(|i| self.evaluate(&curves.b(i)?))
            .collect::<Result<Vec<_>>>()?;
        (0..=n - 3)
            .map(|i| {
                volume_cocycle(&[b[i].inverse(), self.gen(i + 2), b[i + 1]], PointH::I)
            })
            .collect()
    }

    pub fn euler_class(&self) -> Result<EulerData> {
        euler_data(&self.gens, self.volume_cocycle(PointH::I)?)
    }
}

/// The volume of a tuple of elliptic isometries with trivial product,
/// evaluated from the triangle cocycle at base point `z`.
pub fn volume_cocycle(gens: &[Isometry], z: PointH) -> Result<f64> {
    let n = gens.len();
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 generators, got {n}")));
    }
    let mut total = 0.0;
    let mut prefix = gens[0];
    let mut prev = prefix.apply(z)?;
    for g in &gens[1..n - 1] {
        prefix = prefix.compose(g);
        let next = prefix.apply(z)?;
        total += Triangle::new(z, prev, next).signed_area();
        prev = next;
    }
    for g in gens {
        let c = g.fix()?;
        total -= Triangle::new(c, z, g.apply(z)?).signed_area();
    }
    Ok(total)
}

/// `θ̄(g)`: the rotation angle on elliptic elements, `0` on hyperbolic and
/// positively parabolic ones, `2π` on the identity and negatively parabolic
/// ones. A parabolic element is positive when it is conjugate to `z ↦ z + 1`.
pub fn theta_bar(g: &Isometry) -> Result<f64> {
    if g.has_fixed_point() {
        return g.rotation_angle();
    }
    match g.classify() {
        IsometryKind::Elliptic => g.rotation_angle(),
        IsometryKind::Hyperbolic => Ok(0.0),
        IsometryKind::Identity => Ok(TAU),
        IsometryKind::Parabolic => {
            let [a, b, c, d] = g.entries();
            let s = (a + d).signum();
            Ok(if s * (b - c) > 0.0 { 0.0 } else { TAU })
        }
    }
}

/// Euler class `k = (vol + Σ θ̄(g_i)) / 2π`, required to be an integer.
pub fn euler_data(gens: &[Isometry], volume: f64) -> Result<EulerData> {
    let mut s = volume;
    for g in gens {
        s += theta_bar(g)?;
    }
    let k = (s / TAU).round();
    let residual = s / TAU - k;
    if residual.abs() > 1e-5 {
        return Err(Error::NonIntegerEuler { residual });
    }
    Ok(EulerData {
        volume,
        euler_class: k as i64,
    })
}

/// The three configurations of fixed points for `n = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleConfig {
    Coincident,
    ClockwiseTriangle,
    AnticlockwiseTriangle,
}

/// Decides the configuration of `(C_1, C_2, C_3)` and checks its interior
/// angles.
pub fn classify_triple(alpha: [f64; 3], gens: &[Isometry; 3]) -> Result<TripleConfig> {
    let product = gens[0].compose(&gens[1]).compose(&gens[2]);
    let res = product.max_entry_distance(&Isometry::IDENTITY);
    if res > tol::REP {
        return Err(Error::InconsistentConfiguration(format!(
            "product residual {res:e}"
        )));
    }
    let c = [gens[0].fix()?, gens[1].fix()?, gens[2].fix()?];
    let t = Triangle::new(c[0], c[1], c[2]);
    let close = |p: PointH, q: PointH| p.dist(&q) <= tol::EPS_DEG;
    if close(c[0], c[1]) && close(c[1], c[2]) && close(c[0], c[2]) {
        return Ok(TripleConfig::Coincident);
    }
    let angles = t.interior_angles().ok_or_else(|| {
        Error::InconsistentConfiguration("two fixed points coincide, the third does not".into())
    })?;
    let (config, expected) = if t.is_clockwise() {
        (TripleConfig::ClockwiseTriangle, alpha.map(|a| PI - a / 2.0))
    } else {
        (TripleConfig::AnticlockwiseTriangle, alpha.map(|a| a / 2.0))
    };
    for k in 0..3 {
        let r = (angles[k] - expected[k]).abs();
        if r > tol::CHAIN_ANGLE {
            return Err(Error::InconsistentConfiguration(format!(
                "interior angle at C_{} off by {r:e}",
                k + 1
            )));
        }
    }
    Ok(config)
}

/// Builds the unique triple with angles `alpha` and trivial product from
/// reflections in the sides of the triangle of fixed points.
pub fn construct_triple(alpha: [f64; 3]) -> Result<[Isometry; 3]> {
    check_angles(&alpha)?;
    let sum: f64 = alpha.iter().sum();
    if (sum - 2.0 * TAU).abs() <= 1e-12 || (sum - TAU).abs() <= 1e-12 {
        return Ok(alpha.map(|a| Isometry::rotation_about(PointH::I, a)));
    }
    if sum > TAU && sum < 2.0 * TAU {
        return Err(Error::EmptyVariety { sum });
    }
    let clockwise = sum > 2.0 * TAU;
    let angles = if clockwise {
        alpha.map(|a| PI - a / 2.0)
    } else {
        alpha.map(|a| a / 2.0)
    };
    let [a1, a2, a3] = angles;
    let side = side_opposite(a3, a1, a2);
    let c1 = PointH::I;
    let c2 = PointH::new(0.0, side.exp())?;
    let turn = if clockwise { 1.0 } else { -1.0 };
    let tau3 = Reflection::across(c1, 0.0);
    let tau2 = Reflection::across(c1, -turn * a1);
    let tau1 = Reflection::across(c2, turn * a2);
    Ok([
        tau2.then_after(&tau3),
        tau3.then_after(&tau1),
        tau1.then_after(&tau2),
    ])
}

/// Length of the side opposite the angle `c` in a triangle with angles
/// `a, b, c`, from `cosh ℓ − 1 = 2 sin(δ/2) cos((a+b−c)/2) / (sin a sin b)`
/// where `δ` is the angle defect.
pub(crate) fn side_opposite(c: f64, a: f64, b: f64) -> f64 {
    let defect = PI - a - b - c;
    let ch1 = 2.0 * (defect / 2.0).sin() * ((a + b - c) / 2.0).cos() / (a.sin() * b.sin());
    2.0 * (ch1.max(0.0) / 2.0).sqrt().asinh()
}
