//! The torus action by twists along the pants curves.

use crate::chain::{local_chain, TriangleChain};
use crate::coords::{action_angle, ActionAngleCoords, ProjectivePoint};
use crate::error::{Error, Result};
use crate::hyperbolic::{normalize_angle, Isometry, PointH};
use crate::repspace::DtRepresentation;
use crate::tol;

use num_complex::Complex64;

/// An element `θ = (θ_1, …, θ_{n−3})` of the torus.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement {
    theta: Vec<f64>,
}

impl TorusElement {
    pub fn new(theta: Vec<f64>) -> Self {
        TorusElement {
            theta: theta.into_iter().map(normalize_angle).collect(),
        }
    }

    pub fn zero(len: usize) -> Self {
        TorusElement {
            theta: vec![0.0; len],
        }
    }

    /// `t` in coordinate `i` (1-based), zero elsewhere.
    pub fn along(len: usize, i: usize, t: f64) -> Self {
        let mut theta = vec![0.0; len];
        theta[i - 1] = t;
        TorusElement::new(theta)
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Increments `θ̄_i = θ_i − θ_{i−1}` with `θ_0 = 0`.
    pub fn bars(&self) -> Vec<f64> {
        (0..self.theta.len())
            .map(|i| self.theta[i] - if i == 0 { 0.0 } else { self.theta[i - 1] })
            .collect()
    }

    /// Group law.
    pub fn add(&self, other: &TorusElement) -> Self {
        TorusElement::new(self.theta.iter().zip(&other.theta).map(|(a, b)| a + b).collect())
    }
}

fn check_len(theta: &TorusElement, n: usize) -> Result<()> {
    if theta.len() != n - 3 {
        return Err(Error::Domain(format!(
            "torus element has {} angles, expected {}",
            theta.len(),
            n - 3
        )));
    }
    Ok(())
}

/// `P_0 = id`, `P_k = rot_{θ̄_1}(B_1) ⋯ rot_{θ̄_k}(B_k)`.
fn prefix_rotations(theta: &TorusElement, b: &[PointH]) -> Vec<Isometry> {
    let mut out = vec![Isometry::IDENTITY];
    for (bar, p) in theta.bars().iter().zip(b) {
        let next = out.last().unwrap().compose(&Isometry::rotation_about(*p, *bar));
        out.push(next);
    }
    out
}

/// Index of the prefix product that moves `C_k`.
fn c_prefix(k: usize, n: usize) -> usize {
    k.saturating_sub(2).min(n - 3)
}

/// `(θ·φ)(c_k) = P φ(c_k) P⁻¹` with `P = P_{k−2}`, and `P_{n−3}` for `c_n`.
pub fn act_on_rep(theta: &TorusElement, rep: &DtRepresentation) -> Result<DtRepresentation> {
    let n = rep.n();
    check_len(theta, n)?;
    let (chain, back) = local_chain(rep)?;
    let local = rep.conjugated_by(&back.inverse());
    let p = prefix_rotations(theta, chain.b_points());
    let gens = (1..=n)
        .map(|k| back.compose(&p[c_prefix(k, n)]).conjugate(&local.gen(k)))
        .collect();
    DtRepresentation::new(rep.alpha().clone(), gens)
}

/// Rotates the sub-chain `Δ_i, …, Δ_{n−3}` about `B_i` by `θ̄_i`, for each `i`.
pub fn act_on_chain(theta: &TorusElement, chain: &TriangleChain) -> Result<TriangleChain> {
    let n = chain.n();
    check_len(theta, n)?;
    let p = prefix_rotations(theta, chain.b_points());
    let c = (1..=n)
        .map(|k| p[c_prefix(k, n)].apply(chain.c(k)))
        .collect::<Result<Vec<_>>>()?;
    let b = (1..=n - 3)
        .map(|k| p[k - 1].apply(chain.b(k)))
        .collect::<Result<Vec<_>>>()?;
    TriangleChain::new(chain.alpha().clone(), c, b)
}

/// `[z_0 : e^{−iθ_1} z_1 : … : e^{−iθ_{n−3}} z_{n−3}]`.
pub fn act_on_cp(theta: &TorusElement, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    if theta.len() + 1 != p.len() {
        return Err(Error::Domain(format!(
            "torus element has {} angles for {} coordinates",
            theta.len(),
            p.len()
        )));
    }
    let z = p.coords();
    let mut out = vec![z[0]];
    for (w, t) in z[1..].iter().zip(theta.theta()) {
        out.push(w * Complex64::from_polar(1.0, -t));
    }
    ProjectivePoint::new(out)
}

/// Samples of the flow `θ(t) = t e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub direction: usize,
    pub samples: Vec<(f64, ActionAngleCoords)>,
    /// Set when some area parameter is below `10⁻³ λ`.
    pub near_boundary: bool,
}

/// Records `(t, a, γ, σ)` along the flow in direction `i` (1-based) at
/// `t = 0, dt, …, steps·dt`.
pub fn flow_trajectory(rep: &DtRepresentation, direction: usize, steps: usize, dt: f64) -> Result<Trajectory> {
    let n = rep.n();
    if !(1..=n.saturating_sub(3)).contains(&direction) {
        return Err(Error::Index {
            index: direction,
            len: n.saturating_sub(3),
        });
    }
    let start = action_angle(rep)?;
    let min_area = start.a.iter().copied().fold(f64::INFINITY, f64::min);
    let near_boundary = min_area < tol::BOUNDARY_FRACTION * rep.lambda();
    let samples = (0..=steps)
        .map(|s| {
            let t = s as f64 * dt;
            let moved = act_on_rep(&TorusElement::along(n - 3, direction, t), rep)?;
            Ok((t, action_angle(&moved)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        direction,
        samples,
        near_boundary,
    })
}
