//! Chains of triangles `Δ_i = Δ(B_i, C_{i+2}, B_{i+1})` and the bijection
//! with representations.

use std::f64::consts::{PI, TAU};

use crate::dd::DdMat;
use crate::error::{Error, Result};
use crate::hyperbolic::{gamma_at, Isometry, PointH, Triangle};
use crate::repspace::{AngleVector, DtRepresentation};
use crate::tol;
use crate::words::make_pants_curves;

/// Points `C_1, …, C_n` and `B_1, …, B_{n−3}`, with `B_0 = C_1` and
/// `B_{n−2} = C_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleChain {
    alpha: AngleVector,
    c: Vec<PointH>,
    b: Vec<PointH>,
}

impl TriangleChain {
    pub fn new(alpha: AngleVector, c: Vec<PointH>, b: Vec<PointH>) -> Result<Self> {
        let n = alpha.n();
        if c.len() != n || b.len() != n - 3 {
            return Err(Error::InvalidChain(format!(
                "expected {} C points and {} B points, got {} and {}",
                n,
                n - 3,
                c.len(),
                b.len()
            )));
        }
        Ok(TriangleChain { alpha, c, b })
    }

    pub fn alpha(&self) -> &AngleVector {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// `C_1, …, C_n`.
    pub fn c_points(&self) -> &[PointH] {
        &self.c
    }

    /// `B_1, …, B_{n−3}`.
    pub fn b_points(&self) -> &[PointH] {
        &self.b
    }

    /// `C_k` with 1-based `k`.
    pub fn c(&self, k: usize) -> PointH {
        self.c[k - 1]
    }

    /// `B_i` for `0 ≤ i ≤ n − 2`, with the boundary aliases.
    pub fn b(&self, i: usize) -> PointH {
        if i == 0 {
            self.c[0]
        } else if i == self.n() - 2 {
            self.c[self.n() - 1]
        } else {
            self.b[i - 1]
        }
    }

    /// `Δ_i` for `0 ≤ i ≤ n − 3`.
    pub fn triangle(&self, i: usize) -> Triangle {
        Triangle::new(self.b(i), self.c(i + 2), self.b(i + 1))
    }

    pub fn triangles(&self) -> Vec<Triangle> {
        (0..=self.n() - 3).map(|i| self.triangle(i)).collect()
    }

    /// Signed areas `[Δ_i]`.
    pub fn areas(&self) -> Vec<f64> {
        self.triangles().iter().map(Triangle::signed_area).collect()
    }

    /// The chain moved by `h`.
    pub fn mapped(&self, h: &Isometry) -> Result<Self> {
        Ok(TriangleChain {
            alpha: self.alpha.clone(),
            c: self.c.iter().map(|p| h.apply(*p)).collect::<Result<_>>()?,
            b: self.b.iter().map(|p| h.apply(*p)).collect::<Result<_>>()?,
        })
    }

    /// Points in the order `C_2, B_1, C_3, B_2, …, C_n`.
    fn walk(&self) -> impl Iterator<Item = PointH> + '_ {
        (0..=self.n() - 3).flat_map(move |i| [self.c(i + 2), self.b(i + 1)])
    }

    /// The isometry sending `C_1` to `i` and the first chain point farther
    /// than `min_dist` from `C_1` onto the upward vertical ray.
    pub fn normalizer_with(&self, min_dist: f64) -> Isometry {
        let c1 = self.c[0];
        let t = Isometry::to_i(c1);
        match self.walk().find(|p| p.dist(&c1) > min_dist) {
            Some(p) => {
                let psi = gamma_at(c1, p).expect("point is away from C_1");
                Isometry::rotation_about(PointH::I, -psi).compose(&t)
            }
            None => t,
        }
    }

    /// [`TriangleChain::normalizer_with`] at the degeneracy threshold.
    pub fn normalizer(&self) -> Isometry {
        self.normalizer_with(tol::EPS_DEG)
    }

    /// The representative with `C_1 = i` and the first non-degenerate edge
    /// from `C_1` pointing straight up.
    pub fn normalized(&self) -> Result<Self> {
        self.mapped(&self.normalizer())
    }
}

/// Per-triangle part of [`ChainDiagnostics`].
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleReport {
    pub index: usize,
    pub area: f64,
    pub degenerate: bool,
    pub clockwise: bool,
    /// Gaps to the expected interior angles at `B_i, C_{i+2}, B_{i+1}`;
    /// zero for degenerate triangles.
    pub angle_residuals: [f64; 3],
    /// Largest pairwise distance between the three vertices.
    pub spread: f64,
    pub passed: bool,
}

/// Outcome of [`validate_chain`].
#[derive(Clone, Debug, PartialEq)]
pub struct ChainDiagnostics {
    pub triangles: Vec<TriangleReport>,
    /// `β_0, …, β_{n−2}` from the area recursion.
    pub betas: Vec<f64>,
    /// `|2 Σ [Δ_i] − λ|`.
    pub area_sum_residual: f64,
    /// `|β_{n−2} − α_n|` for the recursively computed `β_{n−2}`.
    pub endpoint_residual: f64,
    /// Supplementary-angle gaps at `B_{i+1}` for consecutive non-degenerate
    /// triangles, as `(i, gap)`.
    pub supplementary: Vec<(usize, f64)>,
    pub passed: bool,
}

impl ChainDiagnostics {
    /// Human-readable description of the first failed check.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(t) = self.triangles.iter().find(|t| !t.passed) {
            return Some(if t.degenerate {
                format!("triangle {} is degenerate but its vertices spread {:e}", t.index, t.spread)
            } else if !t.clockwise {
                format!("triangle {} is not clockwise", t.index)
            } else {
                format!(
                    "triangle {} interior angles off by {:?}",
                    t.index, t.angle_residuals
                )
            });
        }
        if let Some(b) = self.betas.iter().position(|b| !(*b > 0.0 && *b < TAU)) {
            return Some(format!("beta_{b} = {} outside (0, 2pi)", self.betas[b]));
        }
        if let Some((i, g)) = self
            .supplementary
            .iter()
            .find(|(_, g)| *g > tol::CHAIN_ANGLE)
        {
            return Some(format!("angles at B_{} not supplementary (gap {g:e})", i + 1));
        }
        if self.area_sum_residual > tol::CHAIN_ANGLE {
            return Some(format!("area sum off by {:e}", self.area_sum_residual));
        }
        if self.endpoint_residual > tol::CHAIN_ANGLE {
            return Some(format!("beta at C_n off by {:e}", self.endpoint_residual));
        }
        None
    }
}

/// Checks orientation, interior angles, degeneracy and the area sum of
/// every triangle, using `β_{i+1} = a_i − α_{i+2} + β_i + 2π`.
pub fn validate_chain(chain: &TriangleChain) -> ChainDiagnostics {
    let n = chain.n();
    let alpha = chain.alpha();
    let mut betas = vec![TAU - alpha.get(1)];
    let mut triangles = Vec::with_capacity(n - 2);
    for i in 0..=n - 3 {
        let t = chain.triangle(i);
        let area = t.signed_area();
        let beta_i = betas[i];
        let beta_next = 2.0 * area - alpha.get(i + 2) + beta_i + TAU;
        betas.push(beta_next);
        let v = t.vertices();
        let spread = [(0, 1), (1, 2), (0, 2)]
            .iter()
            .map(|(p, q)| v[*p].dist(&v[*q]))
            .fold(0.0, f64::max);
        let report = match t.interior_angles() {
            None => TriangleReport {
                index: i,
                area,
                degenerate: true,
                clockwise: false,
                angle_residuals: [0.0; 3],
                spread,
                passed: spread <= tol::EPS_DEG,
            },
            Some(angles) => {
                let expected = [
                    beta_i / 2.0,
                    PI - alpha.get(i + 2) / 2.0,
                    PI - beta_next / 2.0,
                ];
                let residuals = [0, 1, 2].map(|k| (angles[k] - expected[k]).abs());
                let clockwise = t.is_clockwise();
                TriangleReport {
                    index: i,
                    area,
                    degenerate: false,
                    clockwise,
                    angle_residuals: residuals,
                    spread,
                    passed: clockwise && residuals.iter().all(|r| *r <= tol::CHAIN_ANGLE),
                }
            }
        };
        triangles.push(report);
    }
    let mut supplementary = Vec::new();
    for i in 0..n.saturating_sub(3) {
        let (s, t) = (chain.triangle(i), chain.triangle(i + 1));
        if let (Some(x), Some(y)) = (s.interior_angles(), t.interior_angles()) {
            supplementary.push((i, (x[2] + y[0] - PI).abs()));
        }
    }
    let area_sum: f64 = triangles.iter().map(|t| t.area).sum();
    let area_sum_residual = (2.0 * area_sum - alpha.lambda()).abs();
    let endpoint_residual = (betas[n - 2] - alpha.get(n)).abs();
    let mut diag = ChainDiagnostics {
        triangles,
        betas,
        area_sum_residual,
        endpoint_residual,
        supplementary,
        passed: false,
    };
    diag.passed = diag.first_failure().is_none();
    diag
}

/// Fixed points `C_i` of `φ(c_i)` and `B_i` of `φ(b_i)`.
pub fn to_chain(rep: &DtRepresentation) -> Result<TriangleChain> {
    let (chain, back) = local_chain(rep)?;
    chain.mapped(&back)
}

/// The chain of `t φ t⁻¹` for `t = to_i(C_1)`, together with `t⁻¹`.
///
/// Words are evaluated in this frame because the products stay well
/// scaled there even when `φ` is far from normal form.
pub(crate) fn local_chain(rep: &DtRepresentation) -> Result<(TriangleChain, Isometry)> {
    let t = Isometry::to_i(rep.gen(1).fix()?);
    let td = DdMat::from_f64(t.entries());
    let local: Vec<DdMat> = rep
        .gens()
        .iter()
        .map(|g| DdMat::from_f64(g.entries()).conjugated_by(&td))
        .collect();
    let mut c = vec![PointH::I];
    for g in &local[1..] {
        c.push(dd_fix(g)?);
    }
    let b = make_pants_curves(rep.n())?
        .b_words()
        .iter()
        .map(|w| dd_fix(&w.evaluate_dd(&local)?))
        .collect::<Result<Vec<_>>>()?;
    Ok((TriangleChain::new(rep.alpha().clone(), c, b)?, t.inverse()))
}

/// Fixed point from the unrounded product, after the usual ellipticity check.
fn dd_fix(m: &DdMat) -> Result<PointH> {
    let g = Isometry::from_raw(m.round());
    g.fix()?;
    match m.fixed_point() {
        Some((x, y)) => PointH::new(x, y),
        None => g.fix(),
    }
}

/// Rotations by `α_i` about `C_i`, after checking the chain.
pub fn from_chain(chain: &TriangleChain) -> Result<DtRepresentation> {
    let diag = validate_chain(chain);
    if let Some(msg) = diag.first_failure() {
        return Err(Error::InvalidChain(msg));
    }
    let gens = chain
        .c_points()
        .iter()
        .zip(chain.alpha().as_slice())
        .map(|(p, a)| Isometry::rot(*a, *p))
        .collect::<Result<Vec<_>>>()?;
    DtRepresentation::new(chain.alpha().clone(), gens)
}

impl DtRepresentation {
    /// The conjugate whose chain is in normal form.
    pub fn normalized(&self) -> Result<Self> {
        Ok(self.conjugated_by(&to_chain(self)?.normalizer()))
    }
}
