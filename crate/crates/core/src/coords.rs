//! Action-angle coordinates and the map to complex projective space.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::chain::{from_chain, local_chain, TriangleChain};
use crate::error::{Error, Result};
use crate::hyperbolic::{gamma_at, normalize_angle, oriented_ray_angle, shoot, Isometry, PointH, Triangle};
use crate::repspace::{side_opposite, AngleVector, DtRepresentation};
use crate::tol;

/// Homogeneous coordinates `[z_0 : … : z_{n−3}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint {
    z: Vec<Complex64>,
}

impl ProjectivePoint {
    pub fn new(z: Vec<Complex64>) -> Result<Self> {
        if z.is_empty() || z.iter().any(|w| !w.is_finite()) || z.iter().all(|w| w.norm() == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjectivePoint { z })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z.iter().map(|w| w.norm_sqr()).sum()
    }

    /// The representative with `Σ|z_i|² = scale` whose first nonzero
    /// coordinate is a positive real.
    pub fn normalized(&self, scale: f64) -> Self {
        let lead = self.z.iter().position(|w| w.norm() != 0.0).unwrap_or(0);
        let f = Complex64::from_polar((scale / self.norm_sqr()).sqrt(), -self.z[lead].arg());
        let mut z: Vec<Complex64> = self.z.iter().map(|w| w * f).collect();
        z[lead] = Complex64::new(z[lead].norm(), 0.0);
        ProjectivePoint { z }
    }
}

/// Fubini-Study distance, computed as `2 asin(|ẑ − ŵ|/2)` after scaling both
/// to unit length and aligning the phase of `w` with `z`.
pub fn fs_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    let np = p.norm_sqr().sqrt();
    let nq = q.norm_sqr().sqrt();
    let inner: Complex64 = p.z.iter().zip(&q.z).map(|(a, b)| a.conj() * b).sum();
    let phase = if inner.norm() > 0.0 {
        inner.conj() / inner.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let gap: f64 = p
        .z
        .iter()
        .zip(&q.z)
        .map(|(a, b)| (a / np - b * phase / nq).norm_sqr())
        .sum::<f64>()
        .sqrt();
    2.0 * (gap / 2.0).min(1.0).asin()
}

/// Area parameters `a_0, …, a_{n−3}` with angle parameters `γ_i` and their
/// partial sums `σ_i`, `i = 1, …, n−3`.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionAngleCoords {
    pub a: Vec<f64>,
    pub gamma: Vec<f64>,
    pub sigma: Vec<f64>,
}

impl ActionAngleCoords {
    /// Builds coordinates from `a` and `σ`, recovering `γ` as differences.
    pub fn from_area_sigma(a: Vec<f64>, sigma: Vec<f64>) -> Self {
        let gamma = (0..sigma.len())
            .map(|k| normalize_angle(sigma[k] - if k == 0 { 0.0 } else { sigma[k - 1] }))
            .collect();
        ActionAngleCoords { a, gamma, sigma }
    }

    /// `[√a_0 : √a_1 e^{iσ_1} : … ]`.
    pub fn to_projective(&self) -> Result<ProjectivePoint> {
        let mut z = vec![Complex64::new(self.a[0].max(0.0).sqrt(), 0.0)];
        for (a, s) in self.a[1..].iter().zip(&self.sigma) {
            z.push(Complex64::from_polar(a.max(0.0).sqrt(), *s));
        }
        ProjectivePoint::new(z)
    }
}

/// Moment map values `μ_1, …, μ_{n−3}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentValue {
    pub mu: Vec<f64>,
}

impl MomentValue {
    /// Signed distance into the simplex `μ_i ≥ 0, Σμ_i ≤ 1/2`.
    pub fn simplex_margin(&self) -> f64 {
        let low = self.mu.iter().copied().fold(f64::INFINITY, f64::min);
        let top = 0.5 - self.mu.iter().sum::<f64>();
        low.min(top)
    }
}

/// `a_i = 2 [Δ_i]`.
pub fn area_params(chain: &TriangleChain) -> Vec<f64> {
    chain.areas().iter().map(|s| 2.0 * s).collect()
}

/// `a_i = α_{i+2} + β_{i+1} − β_i − 2π` from the rotation angles of the
/// pants curves.
pub fn area_params_from_betas(alpha: &AngleVector, betas: &[f64]) -> Vec<f64> {
    (0..betas.len() - 1)
        .map(|i| alpha.get(i + 2) + betas[i + 1] - betas[i] - TAU)
        .collect()
}

/// Area parameter of `Δ_i` from the side `B_i C_{i+2}`:
/// `4 asin( sin(α/2) sin(β_i/2) (cosh d − 1) / (2 sin((α + 2π − β_{i+1} − β_i)/4)) )`.
pub fn area_param_arcsin(alpha_i2: f64, beta_i: f64, beta_next: f64, b_i: PointH, c_i2: PointH) -> f64 {
    let dx = c_i2.x() - b_i.x();
    let dy = c_i2.y() - b_i.y();
    let cosh_d_minus_1 = (dx * dx + dy * dy) / (2.0 * c_i2.y() * b_i.y());
    let ratio = (alpha_i2 / 2.0).sin() * (beta_i / 2.0).sin()
        / (2.0 * ((alpha_i2 + TAU - beta_next - beta_i) / 4.0).sin());
    4.0 * (ratio * cosh_d_minus_1).clamp(-1.0, 1.0).asin()
}

/// Angle parameters `(γ, σ)` with the conventions for degenerate triangles.
pub fn angle_params(chain: &TriangleChain) -> Result<(Vec<f64>, Vec<f64>)> {
    let a = area_params(chain);
    let n = chain.n();
    let mut gamma = Vec::with_capacity(n - 3);
    let mut last_positive = if a[0] > 0.0 { Some(0) } else { None };
    for i in 1..=n - 3 {
        let g = match last_positive {
            None => 0.0,
            Some(_) if a[i] <= 0.0 => PI - chain.alpha().get(i + 2) / 2.0,
            Some(m) => oriented_ray_angle(chain.b(i), chain.c(i + 2), chain.c(m + 2))?,
        };
        gamma.push(g);
        if a[i] > 0.0 {
            last_positive = Some(i);
        }
    }
    let mut sigma = Vec::with_capacity(n - 3);
    let mut acc = 0.0;
    for g in &gamma {
        acc = normalize_angle(acc + g);
        sigma.push(acc);
    }
    Ok((gamma, sigma))
}

/// Area and angle parameters of a representation.
pub fn action_angle(rep: &DtRepresentation) -> Result<ActionAngleCoords> {
    let (chain, _) = local_chain(rep)?;
    let a = area_params(&chain).into_iter().map(|x| x.max(0.0)).collect();
    let (gamma, sigma) = angle_params(&chain)?;
    Ok(ActionAngleCoords { a, gamma, sigma })
}

/// The map `𝔠`, returned in normalized form.
pub fn coordinate_map(rep: &DtRepresentation) -> Result<ProjectivePoint> {
    Ok(action_angle(rep)?.to_projective()?.normalized(rep.lambda()))
}

/// Triangle with interior angles `angle_a` at `v1`, `angle_b` at `v2` and
/// the given area, with `v1 = i`, `v2` straight above it and clockwise
/// vertex order. Area zero gives three copies of `i`.
pub fn solve_triangle(area: f64, angle_a: f64, angle_b: f64) -> Result<Triangle> {
    if area == 0.0 {
        return Ok(Triangle::new(PointH::I, PointH::I, PointH::I));
    }
    if !(area > 0.0 && area < PI) {
        return Err(Error::InfeasibleTriangle(format!("area {area} not in [0, pi)")));
    }
    let angle_c = PI - area - angle_a - angle_b;
    for (name, t) in [("first", angle_a), ("second", angle_b), ("third", angle_c)] {
        if !(t > 0.0 && t < PI) {
            return Err(Error::InfeasibleTriangle(format!("{name} angle {t} not in (0, pi)")));
        }
    }
    let side_ab = side_opposite(angle_c, angle_a, angle_b);
    let side_ac = side_opposite(angle_b, angle_a, angle_c);
    Ok(Triangle::new(
        PointH::I,
        PointH::new(0.0, side_ab.exp())?,
        shoot(PointH::I, -angle_a, side_ac),
    ))
}

/// Rebuilds the chain of triangles with coordinates `p`, one triangle at a
/// time, starting from `C_1 = i`.
pub fn construct_chain(alpha: &AngleVector, p: &ProjectivePoint) -> Result<TriangleChain> {
    let n = alpha.n();
    if p.len() != n - 2 {
        return Err(Error::Domain(format!(
            "{} homogeneous coordinates for n = {n}, expected {}",
            p.len(),
            n - 2
        )));
    }
    let lambda = alpha.lambda();
    let z = p.normalized(lambda);
    let z = z.coords();
    let mut c = vec![PointH::I];
    let mut b_ext = vec![PointH::I];
    let mut beta = TAU - alpha.get(1);
    let mut last: Option<usize> = None;
    let mut gap_sum = 0.0;
    for k in 0..=n - 3 {
        let a_k = z[k].norm_sqr();
        let b_k = b_ext[k];
        let beta_next = a_k - alpha.get(k + 2) + beta + TAU;
        if z[k].norm() == 0.0 {
            c.push(b_k);
            b_ext.push(b_k);
            if last.is_some() {
                gap_sum += PI - alpha.get(k + 2) / 2.0;
            }
        } else {
            let t = solve_triangle(a_k / 2.0, beta / 2.0, PI - alpha.get(k + 2) / 2.0)?;
            let psi = match last {
                None => 0.0,
                Some(m) => {
                    let want = z[k].arg() - z[m].arg() - gap_sum;
                    gamma_at(b_k, c[m + 1])? - want
                }
            };
            let place = Isometry::from_i(b_k).compose(&Isometry::rotation_about(PointH::I, psi));
            c.push(place.apply(t.v2)?);
            b_ext.push(place.apply(t.v3)?);
            last = Some(k);
            gap_sum = 0.0;
        }
        beta = beta_next;
    }
    let end = (beta - alpha.get(n)).abs();
    if end > tol::CHAIN_ANGLE {
        return Err(Error::InconsistentConfiguration(format!(
            "angle at C_n off by {end:e}"
        )));
    }
    c.push(b_ext[n - 2]);
    let b = b_ext[1..n - 2].to_vec();
    TriangleChain::new(alpha.clone(), c, b)
}

/// The inverse map `𝔠⁻¹`.
pub fn construct_from_projective(alpha: &AngleVector, p: &ProjectivePoint) -> Result<DtRepresentation> {
    from_chain(&construct_chain(alpha, p)?)
}

/// `μ_i = (α_{i+2} + β_{i+1} − β_i − 2π) / 2λ`.
pub fn moment_mu(rep: &DtRepresentation) -> Result<MomentValue> {
    let betas = rep.betas()?;
    let a = area_params_from_betas(rep.alpha(), &betas);
    let lambda = rep.lambda();
    Ok(MomentValue {
        mu: a[1..].iter().map(|x| x / (2.0 * lambda)).collect(),
    })
}

/// `ν_i = |z_i|² / (2|z|²)` for `i = 1, …, n−3`.
pub fn moment_nu(p: &ProjectivePoint) -> MomentValue {
    let total = p.norm_sqr();
    MomentValue {
        mu: p.z[1..].iter().map(|w| w.norm_sqr() / (2.0 * total)).collect(),
    }
}

fn hermitian(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Fubini-Study form at `p` on ambient tangent vectors `u, v`, normalized
/// so that `ℂP¹` has area `π`. Components along `p` are projected away.
pub fn fubini_study(p: &ProjectivePoint, u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    let z = p.coords();
    if u.len() != z.len() || v.len() != z.len() {
        return Err(Error::Domain("tangent vector has the wrong length".into()));
    }
    let n2 = p.norm_sqr();
    let project = |w: &[Complex64]| -> Vec<Complex64> {
        let f = hermitian(z, w) / n2;
        w.iter().zip(z).map(|(wi, zi)| wi - f * zi).collect()
    };
    Ok(hermitian(&project(u), &project(v)).im / n2)
}

/// Values of `λ·𝔠*ω_FS` on coordinate vector fields of the `(a, σ)` chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WolpertReport {
    /// `λ ω(∂/∂a_i, ∂/∂σ_j)`, expected `δ_ij / 2`.
    pub area_angle: f64,
    /// `λ ω(∂/∂a_i, ∂/∂a_j)`, expected `0`.
    pub area_area: f64,
    /// `λ ω(∂/∂σ_i, ∂/∂σ_j)`, expected `0`.
    pub angle_angle: f64,
    pub residual: f64,
}

/// Finite-difference step for the chart derivatives.
pub const WOLPERT_STEP: f64 = 1e-4;

/// Evaluates `λ·𝔠*ω_FS` on the chart `(a_1, …, a_{n−3}, σ_1, …, σ_{n−3})`
/// with `a_0 = λ − Σa_i`, through `𝔠 ∘ 𝔠⁻¹`, for 1-based `i, j`.
pub fn wolpert_check(alpha: &AngleVector, base: &ActionAngleCoords, i: usize, j: usize) -> Result<WolpertReport> {
    let n = alpha.n();
    let m = n - 3;
    if !(1..=m).contains(&i) || !(1..=m).contains(&j) {
        return Err(Error::Index { index: i.max(j), len: m });
    }
    let lambda = alpha.lambda();
    let min_area = base.a.iter().copied().fold(f64::INFINITY, f64::min);
    if min_area <= tol::BOUNDARY_FRACTION * lambda {
        return Err(Error::BoundaryProximity { min_area });
    }
    let chart = |x: &[f64]| -> Result<ProjectivePoint> {
        let mut a = vec![lambda - x[..m].iter().sum::<f64>()];
        a.extend_from_slice(&x[..m]);
        let p = ActionAngleCoords::from_area_sigma(a, x[m..].to_vec()).to_projective()?;
        coordinate_map(&construct_from_projective(alpha, &p)?)
    };
    let mut x0: Vec<f64> = base.a[1..].to_vec();
    x0.extend_from_slice(&base.sigma);
    let p0 = chart(&x0)?;
    let derivative = |k: usize| -> Result<Vec<Complex64>> {
        let h = WOLPERT_STEP * x0[k].abs().max(1.0);
        let mut xp = x0.clone();
        let mut xm = x0.clone();
        xp[k] += h;
        xm[k] -= h;
        let (fp, fm) = (chart(&xp)?, chart(&xm)?);
        Ok(fp.coords().iter().zip(fm.coords()).map(|(a, b)| (a - b) / (2.0 * h)).collect())
    };
    let da_i = derivative(i - 1)?;
    let da_j = derivative(j - 1)?;
    let ds_i = derivative(m + i - 1)?;
    let ds_j = derivative(m + j - 1)?;
    let area_angle = lambda * fubini_study(&p0, &da_i, &ds_j)?;
    let area_area = lambda * fubini_study(&p0, &da_i, &da_j)?;
    let angle_angle = lambda * fubini_study(&p0, &ds_i, &ds_j)?;
    let expected = if i == j { 0.5 } else { 0.0 };
    let residual = (area_angle - expected).abs().max(area_area.abs()).max(angle_angle.abs());
    Ok(WolpertReport {
        area_angle,
        area_area,
        angle_angle,
        residual,
    })
}
