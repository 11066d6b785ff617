//! JSON shapes for representations, chains and projective points.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use trichain::hyperbolic::shoot;
use trichain::{
    gamma_at, ActionAngleCoords, AngleVector, Complex64, DtRepresentation, Isometry, PointH, ProjectivePoint,
    TriangleChain,
};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub n: usize,
    pub alpha: Vec<f64>,
    pub generators: Vec<[[f64; 2]; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainJson {
    pub alpha: Vec<f64>,
    #[serde(rename = "C")]
    pub c: Vec<[f64; 2]>,
    #[serde(rename = "B")]
    pub b: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub z: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoordsJson {
    pub a: Vec<f64>,
    pub gamma: Vec<f64>,
    pub sigma: Vec<f64>,
}

impl RepJson {
    pub fn from_rep(rep: &DtRepresentation) -> Self {
        RepJson {
            n: rep.n(),
            alpha: rep.alpha().as_slice().to_vec(),
            generators: rep
                .gens()
                .iter()
                .map(|g| {
                    let [a, b, c, d] = g.entries();
                    [[a, b], [c, d]]
                })
                .collect(),
        }
    }

    pub fn to_rep(&self) -> Result<DtRepresentation, CliError> {
        if self.n != self.alpha.len() {
            return Err(CliError::malformed(format!("n = {} but {} angles", self.n, self.alpha.len())));
        }
        let alpha = AngleVector::new(self.alpha.clone())?;
        let gens = self
            .generators
            .iter()
            .map(|[[a, b], [c, d]]| Isometry::new(*a, *b, *c, *d))
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::malformed)?;
        DtRepresentation::new(alpha, gens).map_err(CliError::malformed)
    }
}

impl ChainJson {
    pub fn from_chain(chain: &TriangleChain) -> Self {
        ChainJson {
            alpha: chain.alpha().as_slice().to_vec(),
            c: chain.c_points().iter().map(xy).collect(),
            b: chain.b_points().iter().map(xy).collect(),
        }
    }
}

impl PointJson {
    pub fn from_point(p: &ProjectivePoint) -> Self {
        PointJson {
            z: p.coords().iter().map(|w| [w.re, w.im]).collect(),
        }
    }

    pub fn to_point(&self) -> Result<ProjectivePoint, CliError> {
        ProjectivePoint::new(self.z.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
            .map_err(CliError::malformed)
    }
}

impl CoordsJson {
    pub fn from_coords(c: &ActionAngleCoords) -> Self {
        CoordsJson {
            a: c.a.clone(),
            gamma: c.gamma.clone(),
            sigma: c.sigma.clone(),
        }
    }
}

pub fn xy(p: &PointH) -> [f64; 2] {
    [p.x(), p.y()]
}

/// `segments + 1` points along the geodesic from `p` to `q`.
pub fn geodesic_arc(p: PointH, q: PointH, segments: usize) -> Vec<[f64; 2]> {
    let d = p.dist(&q);
    let Ok(psi) = gamma_at(p, q) else {
        return vec![xy(&p); segments + 1];
    };
    (0..=segments)
        .map(|k| match k {
            0 => xy(&p),
            k if k == segments => xy(&q),
            k => xy(&shoot(p, psi, d * k as f64 / segments as f64)),
        })
        .collect()
}

/// Reads `field` from an object that carries it, or the whole value when it
/// already has the expected shape, so that `construct` output can be piped
/// into the other commands.
pub fn pick<T: for<'de> Deserialize<'de>>(value: &Value, field: &str) -> Result<T, CliError> {
    let inner = value.get(field).unwrap_or(value);
    serde_json::from_value(inner.clone()).map_err(|e| CliError::malformed(format!("{field}: {e}")))
}

/// Angles from `{"alpha": [...]}` or a bare array.
pub fn read_alpha(value: &Value) -> Result<AngleVector, CliError> {
    let alpha: Vec<f64> = pick(value, "alpha")?;
    Ok(AngleVector::new(alpha)?)
}
