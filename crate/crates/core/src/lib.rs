//! Totally elliptic representations of the fundamental group of an
//! `n`-punctured sphere into PSL(2,ℝ), modelled as chains of hyperbolic
//! triangles.
//!
//! The modules build on each other:
//!
//! * [`hyperbolic`]: isometries, points, triangles and the Γ angle functions
//!   on the upper half-plane.
//! * [`words`]: words in the generators and the pants curves `b_i`.
//! * [`repspace`]: angle vectors, representations, volume and Euler class.
//! * [`chain`]: chains of triangles and the bijection with representations.
//! * [`coords`]: area and angle parameters, the map `𝔠` to `ℂP^{n−3}`, its
//!   inverse and the Fubini-Study form.
//! * [`torus`]: the torus action and its flows.
//!
//! ```
//! use trichain::{coordinate_map, construct_from_projective, fs_distance, AngleVector, Complex64, ProjectivePoint};
//!
//! let alpha = AngleVector::new(vec![5.5, 5.0, 5.8, 5.6]).unwrap();
//! let p = ProjectivePoint::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.8)]).unwrap();
//! let rep = construct_from_projective(&alpha, &p).unwrap();
//! assert!(rep.validate().passed);
//! assert!(fs_distance(&coordinate_map(&rep).unwrap(), &p) < 1e-9);
//! ```

pub mod chain;
pub mod coords;
mod dd;
mod error;
pub mod hyperbolic;
pub mod repspace;
pub mod sample;
pub mod tol;
pub mod torus;
pub mod words;

pub use chain::{from_chain, to_chain, validate_chain, ChainDiagnostics, TriangleChain};
pub use coords::{
    action_angle, angle_params, area_params, construct_from_projective, coordinate_map, fs_distance,
    fubini_study, moment_mu, moment_nu, solve_triangle, wolpert_check, ActionAngleCoords,
    MomentValue, ProjectivePoint,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use hyperbolic::{
    dist, gamma, gamma_at, oriented_ray_angle, signed_area, Isometry, IsometryKind, PointH, Triangle,
};
pub use repspace::{
    classify_triple, construct_triple, volume_cocycle, AngleVector, DtRepresentation, EulerData,
    TripleConfig,
};
pub use torus::{act_on_chain, act_on_cp, act_on_rep, flow_trajectory, TorusElement, Trajectory};
pub use words::{make_pants_curves, PantsCurves, Word};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hyperbolic.md")]
    mod hyperbolic {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/coordinates.md")]
    mod coordinates {}
    #[doc = include_str!("../../../book/src/torus.md")]
    mod torus {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
}
