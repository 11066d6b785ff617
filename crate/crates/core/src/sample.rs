//! Random inputs for tests, batteries and the command line.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::coords::{construct_from_projective, ProjectivePoint};
use crate::error::Result;
use crate::hyperbolic::{Isometry, PointH};
use crate::repspace::{scaling_factor, AngleVector, DtRepresentation};
use crate::torus::TorusElement;

/// Rejection-samples `α ∈ (0, 2π)^n` until `λ > min_lambda`.
pub fn random_alpha<R: Rng + ?Sized>(n: usize, min_lambda: f64, rng: &mut R) -> Result<AngleVector> {
    loop {
        let alpha: Vec<f64> = (0..n).map(|_| open_unit(rng) * TAU).collect();
        if scaling_factor(&alpha) > min_lambda {
            return AngleVector::new(alpha);
        }
    }
}

fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// A point of `ℂP^{len−1}` drawn from the unitarily invariant measure.
pub fn random_projective<R: Rng + ?Sized>(len: usize, rng: &mut R) -> ProjectivePoint {
    loop {
        let z: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(p) = ProjectivePoint::new(z) {
            return p;
        }
    }
}

/// Like [`random_projective`] with `zeros` coordinates set to zero, never all.
pub fn random_boundary_projective<R: Rng + ?Sized>(len: usize, zeros: usize, rng: &mut R) -> ProjectivePoint {
    let zeros = zeros.min(len - 1);
    let mut idx: Vec<usize> = (0..len).collect();
    for k in (1..len).rev() {
        idx.swap(k, rng.random_range(0..=k));
    }
    let mut z = random_projective(len, rng).coords().to_vec();
    for k in &idx[..zeros] {
        z[*k] = Complex64::new(0.0, 0.0);
    }
    ProjectivePoint::new(z).expect("at least one coordinate survives")
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R) -> PointH {
    let x = rng.random_range(-3.0..3.0);
    let y = (rng.random_range(-2.0f64..2.0)).exp();
    PointH::new(x, y).expect("y is positive")
}

/// `z ↦ y_p·rot_ψ(z) + x_p` for random `p` and `ψ`.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R) -> Isometry {
    let p = random_point(rng);
    let psi = rng.random_range(0.0..TAU);
    Isometry::from_i(p).compose(&Isometry::rotation_about(PointH::I, psi))
}

pub fn random_torus<R: Rng + ?Sized>(len: usize, rng: &mut R) -> TorusElement {
    TorusElement::new((0..len).map(|_| rng.random_range(0.0..TAU)).collect())
}

/// `𝔠⁻¹` of a random point, conjugated by a random isometry.
pub fn random_dt_rep<R: Rng + ?Sized>(alpha: &AngleVector, rng: &mut R) -> Result<DtRepresentation> {
    let p = random_projective(alpha.n() - 2, rng);
    let rep = construct_from_projective(alpha, &p)?;
    Ok(rep.conjugated_by(&random_isometry(rng)))
}
