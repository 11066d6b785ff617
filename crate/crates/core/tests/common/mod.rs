#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::test_runner::{Config as ProptestConfig, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trichain::{to_chain, DtRepresentation, Isometry, PointH};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fixed-seed property test settings, so failures reproduce.
pub fn prop_config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(0x7269),
        ..ProptestConfig::default()
    }
}

pub fn pt(x: f64, y: f64) -> PointH {
    PointH::new(x, y).unwrap()
}

/// Γ from the argument of `x² + y² − 1 − 2ix`.
pub fn gamma_oracle(z: PointH) -> f64 {
    let (x, y) = (z.x(), z.y());
    (-2.0 * x).atan2(x * x + y * y - 1.0).rem_euclid(TAU)
}

/// Distance from the textbook `cosh d = 1 + |p − q|² / (2 y_p y_q)`.
pub fn dist_oracle(p: PointH, q: PointH) -> f64 {
    let d2 = (p.x() - q.x()).powi(2) + (p.y() - q.y()).powi(2);
    (1.0 + d2 / (2.0 * p.y() * q.y())).acosh()
}

/// Image in the Klein disk, where geodesics are straight chords.
pub fn klein(z: PointH) -> (f64, f64) {
    let z = z.to_complex();
    let w = (z - Complex64::i()) / (z + Complex64::i());
    let k = 2.0 * w / (1.0 + w.norm_sqr());
    (k.re, k.im)
}

/// Euclidean orientation of the Klein images: true for clockwise.
pub fn clockwise_oracle(p: PointH, q: PointH, r: PointH) -> bool {
    let (a, b, c) = (klein(p), klein(q), klein(r));
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) < 0.0
}

/// Unsigned area from the hyperbolic law of cosines on the side lengths.
pub fn area_oracle(p: PointH, q: PointH, r: PointH) -> f64 {
    let a = dist_oracle(q, r);
    let b = dist_oracle(p, r);
    let c = dist_oracle(p, q);
    let angle = |opp: f64, s: f64, t: f64| {
        ((s.cosh() * t.cosh() - opp.cosh()) / (s.sinh() * t.sinh())).clamp(-1.0, 1.0).acos()
    };
    (PI - angle(a, b, c) - angle(b, a, c) - angle(c, a, b)).max(0.0)
}

/// Isometry `h` with `h φ h⁻¹ ≈ ψ`, found by matching `C_1` and the chain
/// point farthest from it.
pub fn aligning_isometry(from: &DtRepresentation, to: &DtRepresentation) -> Isometry {
    let (cf, ct) = (to_chain(from).unwrap(), to_chain(to).unwrap());
    let walk = |c: &trichain::TriangleChain| -> Vec<PointH> {
        (0..=c.n() - 3).flat_map(|i| [c.c(i + 2), c.b(i + 1)]).collect()
    };
    let (wf, wt) = (walk(&cf), walk(&ct));
    let far = (0..wf.len())
        .max_by(|a, b| wf[*a].dist(&cf.c(1)).total_cmp(&wf[*b].dist(&cf.c(1))))
        .unwrap();
    let frame = |c1: PointH, p: PointH| -> Isometry {
        let t = Isometry::to_i(c1);
        let psi = trichain::gamma_at(c1, p).unwrap_or(0.0);
        Isometry::rotation_about(PointH::I, -psi).compose(&t)
    };
    frame(ct.c(1), wt[far]).inverse().compose(&frame(cf.c(1), wf[far]))
}

/// Largest entrywise gap between `h φ h⁻¹` and `ψ`, relative to the
/// entry size of `ψ`.
pub fn conjugacy_residual(from: &DtRepresentation, to: &DtRepresentation) -> f64 {
    let h = aligning_isometry(from, to);
    from.gens()
        .iter()
        .zip(to.gens())
        .map(|(g, t)| {
            let scale = t.entries().iter().fold(1.0f64, |m, v| m.max(v.abs()));
            h.conjugate(g).max_entry_distance(t) / scale
        })
        .fold(0.0, f64::max)
}

/// Circular gap, in `[0, π]`.
pub fn circ(s: f64, t: f64) -> f64 {
    let d = (s - t).rem_euclid(TAU);
    d.min(TAU - d)
}
