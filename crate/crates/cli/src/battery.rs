//! Randomized trials for `roundtrip` and `verify`, sharded over threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use trichain::sample::{random_alpha, random_boundary_projective, random_isometry, random_point, random_torus};
use trichain::{
    act_on_cp, act_on_rep, construct_from_projective, coordinate_map, fs_distance, moment_mu, moment_nu, to_chain,
    validate_chain, PointH,
};

/// Named tolerances, overridable with `--tol.<name>`.
pub fn default_tolerances() -> BTreeMap<String, f64> {
    [
        ("fs", 1e-9),
        ("conjugacy", 1e-9),
        ("relator", 1e-9),
        ("angle", 1e-9),
        ("volume", 1e-7),
        ("base_point", 1e-8),
        ("chain_angle", 1e-8),
        ("equivariance", 1e-9),
        ("moment", 1e-10),
        ("margin", 1e-10),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

/// RNG for one trial, independent of how trials are split across workers.
pub fn trial_rng(seed: u64, n: usize, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 48));
    r.set_stream(index);
    r
}

/// Runs `f` on `0..count`, split into contiguous blocks over `workers`
/// threads; results come back in index order.
pub fn sharded<T: Send>(count: u64, workers: usize, f: impl Fn(u64) -> T + Sync) -> Vec<T> {
    let workers = workers.clamp(1, count.max(1) as usize);
    let block = count.div_ceil(workers as u64);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let f = &f;
                s.spawn(move || (w * block..((w + 1) * block).min(count)).map(f).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Largest residual per check over a batch, with counts of hard failures.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Metrics {
    pub max: BTreeMap<String, f64>,
    pub chain_failures: u64,
    pub euler_failures: u64,
    pub errors: Vec<String>,
}

impl Metrics {
    fn record(&mut self, name: &str, value: f64) {
        let slot = self.max.entry(name.to_string()).or_insert(0.0);
        if value > *slot || value.is_nan() {
            *slot = value;
        }
    }

    pub fn merge(&mut self, other: Metrics) {
        for (k, v) in other.max {
            self.record(&k, v);
        }
        self.chain_failures += other.chain_failures;
        self.euler_failures += other.euler_failures;
        self.errors.extend(other.errors);
    }

    /// Names of checks whose maximum exceeds its tolerance.
    pub fn failed_checks(&self, tol: &BTreeMap<String, f64>) -> Vec<String> {
        let mut out: Vec<String> = self
            .max
            .iter()
            .filter(|(k, v)| !(**v <= tol[*k]))
            .map(|(k, _)| k.clone())
            .collect();
        if self.chain_failures > 0 {
            out.push("chain".into());
        }
        if self.euler_failures > 0 {
            out.push("euler".into());
        }
        if !self.errors.is_empty() {
            out.push("errors".into());
        }
        out
    }
}

/// `𝔠 ∘ 𝔠⁻¹` and `𝔠⁻¹ ∘ 𝔠` on one random point, with up to `n − 4` zero
/// coordinates.
pub fn roundtrip_trial(seed: u64, n: usize, index: u64) -> Metrics {
    let mut m = Metrics::default();
    let mut r = trial_rng(seed, n, index);
    if let Err(e) = roundtrip_into(&mut m, &mut r, n) {
        m.errors.push(format!("trial {index}: {e}"));
    }
    m
}

fn roundtrip_into(m: &mut Metrics, r: &mut ChaCha8Rng, n: usize) -> trichain::Result<()> {
    let alpha = random_alpha(n, 0.05, r)?;
    let zeros = if n > 4 && r.random_bool(0.5) { r.random_range(1..=n - 4) } else { 0 };
    let p = random_boundary_projective(n - 2, zeros, r);
    let rep = construct_from_projective(&alpha, &p)?;
    m.record("relator", rep.relator_residual());
    m.record("fs", fs_distance(&coordinate_map(&rep)?, &p));
    let moved = rep.conjugated_by(&random_isometry(r));
    m.record("conjugacy", fs_distance(&coordinate_map(&moved)?, &p));
    Ok(())
}

/// The full invariant battery on one random representation.
pub fn verify_trial(seed: u64, n: usize, index: u64) -> Metrics {
    let mut m = Metrics::default();
    let mut r = trial_rng(seed, n, index);
    if let Err(e) = verify_into(&mut m, &mut r, n) {
        m.errors.push(format!("n = {n}, trial {index}: {e}"));
    }
    m
}

fn verify_into(m: &mut Metrics, r: &mut ChaCha8Rng, n: usize) -> trichain::Result<()> {
    roundtrip_into(m, r, n)?;
    let alpha = random_alpha(n, 0.05, r)?;
    let zeros = if n > 3 && r.random_bool(0.3) { r.random_range(1..=n - 3) } else { 0 };
    let p = random_boundary_projective(n - 2, zeros, r);
    let rep = construct_from_projective(&alpha, &p)?;
    let lambda = alpha.lambda();

    let diag = rep.validate();
    m.record("relator", diag.relator_residual);
    m.record("angle", diag.angle_residuals.iter().copied().fold(0.0, f64::max));

    let chain = validate_chain(&to_chain(&rep)?);
    if !chain.passed {
        m.chain_failures += 1;
    }
    let angles = chain.triangles.iter().flat_map(|t| t.angle_residuals);
    let supp = chain.supplementary.iter().map(|(_, g)| *g);
    m.record("chain_angle", angles.chain(supp).fold(0.0, f64::max));

    let v0 = rep.volume_cocycle(PointH::I)?;
    m.record("volume", (v0 + lambda).abs().max((rep.volume_chain()? + lambda).abs()));
    for _ in 0..3 {
        m.record("base_point", (rep.volume_cocycle(random_point(r))? - v0).abs());
    }
    if rep.euler_class()?.euler_class != n as i64 - 1 {
        m.euler_failures += 1;
    }

    let c = coordinate_map(&rep)?;
    let theta = random_torus(n - 3, r);
    let moved = act_on_rep(&theta, &rep)?;
    m.record("equivariance", fs_distance(&coordinate_map(&moved)?, &act_on_cp(&theta, &c)?));
    let mu = moment_mu(&rep)?;
    let nu = moment_nu(&c);
    m.record("moment", mu.mu.iter().zip(&nu.mu).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    if !mu.mu.is_empty() {
        m.record("margin", (-mu.simplex_margin()).max(0.0));
    }
    Ok(())
}
