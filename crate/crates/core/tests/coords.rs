mod common;

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use trichain::coords::{area_param_arcsin, construct_chain, WOLPERT_STEP};
use trichain::sample::{random_alpha, random_boundary_projective, random_isometry, random_projective};
use trichain::{
    action_angle, angle_params, area_params, construct_from_projective, construct_triple, coordinate_map, fs_distance,
    fubini_study, moment_mu, moment_nu, solve_triangle, to_chain, wolpert_check, AngleVector, DtRepresentation, Error,
    PointH, ProjectivePoint,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn proj(z: &[(f64, f64)]) -> ProjectivePoint {
    ProjectivePoint::new(z.iter().map(|(a, b)| c(*a, *b)).collect()).unwrap()
}

fn alpha5() -> AngleVector {
    AngleVector::new(vec![5.5, 5.9, 5.3, 6.0, 5.7]).unwrap()
}

#[test]
fn projective_points() {
    assert!(matches!(ProjectivePoint::new(vec![c(0.0, 0.0); 3]), Err(Error::ZeroVector)));
    assert!(ProjectivePoint::new(vec![]).is_err());
    assert!(ProjectivePoint::new(vec![c(f64::NAN, 0.0)]).is_err());
    let p = proj(&[(0.0, 0.0), (0.0, 2.0), (1.0, 1.0)]);
    let q = p.normalized(3.0);
    assert!((q.norm_sqr() - 3.0).abs() < 1e-14);
    assert_eq!(q.coords()[1].im, 0.0);
    assert!(q.coords()[1].re > 0.0);
    assert!(fs_distance(&p, &q) < 1e-12);
    let r = proj(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
    let s = proj(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
    assert!((fs_distance(&r, &s) - PI / 2.0).abs() < 1e-12);
}

#[test]
fn n3_coordinates_are_a_single_point() {
    let alpha = AngleVector::new(vec![5.0, 5.2, 5.4]).unwrap();
    let gens = construct_triple([5.0, 5.2, 5.4]).unwrap();
    let rep = DtRepresentation::new(alpha.clone(), gens.to_vec()).unwrap();
    let p = coordinate_map(&rep).unwrap();
    assert_eq!(p.len(), 1);
    assert!((p.coords()[0] - c(alpha.lambda().sqrt(), 0.0)).norm() < 1e-9);
    let again = construct_from_projective(&alpha, &proj(&[(-0.3, 2.0)])).unwrap();
    assert!(again.validate().passed);
    assert!(moment_mu(&again).unwrap().mu.is_empty());
}

#[test]
fn polytope_vertex_has_one_area() {
    let alpha = alpha5();
    let lambda = alpha.lambda();
    let rep = construct_from_projective(&alpha, &proj(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)])).unwrap();
    let aa = action_angle(&rep).unwrap();
    assert!((aa.a[0] - lambda).abs() < 1e-9);
    assert!(aa.a[1..].iter().all(|a| a.abs() < 1e-9));
    assert!(moment_mu(&rep).unwrap().mu.iter().all(|m| m.abs() < 1e-10));
}

#[test]
fn first_beta_from_the_leading_coordinate() {
    let alpha = alpha5();
    let p = proj(&[(0.6, 0.0), (0.2, 0.5), (-0.4, 0.1)]);
    let rep = construct_from_projective(&alpha, &p).unwrap();
    let z0 = p.normalized(alpha.lambda()).coords()[0].norm_sqr();
    let beta1 = z0 - alpha.get(1) - alpha.get(2) + 2.0 * TAU;
    assert!(beta1 > 0.0 && beta1 < TAU);
    assert!((rep.beta(1).unwrap() - beta1).abs() < 1e-9);
}

#[test]
fn gamma_conventions_on_degenerate_triangles() {
    let alpha = AngleVector::new(vec![5.5, 5.9, 5.3, 6.0, 5.7, 5.8]).unwrap();
    // No positive area before Δ_2: γ_1 = γ_2 = 0.
    let late = construct_chain(&alpha, &proj(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.5, 0.5)])).unwrap();
    let (gamma, _) = angle_params(&late).unwrap();
    assert_eq!(&gamma[..2], &[0.0, 0.0]);
    // Positive Δ_0 then empty Δ_1: γ_1 = π − α_3/2.
    let gap = construct_chain(&alpha, &proj(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.5, 0.5)])).unwrap();
    let (gamma, _) = angle_params(&gap).unwrap();
    assert!((gamma[0] - (PI - alpha.get(3) / 2.0)).abs() < 1e-15);
}

#[test]
fn sigma_is_the_cumulative_gamma() {
    let alpha = alpha5();
    let rep = construct_from_projective(&alpha, &proj(&[(0.6, 0.0), (0.2, 0.5), (-0.4, 0.1)])).unwrap();
    let aa = action_angle(&rep).unwrap();
    assert!(circ(aa.sigma[0], aa.gamma[0]) < 1e-12);
    assert!(circ(aa.sigma[1], aa.gamma[0] + aa.gamma[1]) < 1e-12);
}

#[test]
fn angle_parameters_are_continuous_on_regular_fibres() {
    let mut r = rng(7);
    let alpha = random_alpha(6, 0.5, &mut r).unwrap();
    let p = random_projective(4, &mut r);
    let base = action_angle(&construct_from_projective(&alpha, &p).unwrap()).unwrap();
    for h in [1e-3, 1e-4, 1e-5] {
        let z: Vec<Complex64> = p.coords().iter().enumerate().map(|(k, w)| w + c(h * k as f64, -h)).collect();
        let q = ProjectivePoint::new(z).unwrap();
        let moved = action_angle(&construct_from_projective(&alpha, &q).unwrap()).unwrap();
        let gap = base.gamma.iter().zip(&moved.gamma).map(|(s, t)| circ(*s, *t)).fold(0.0, f64::max);
        assert!(gap < 100.0 * h, "step {h}: gamma moved {gap}");
    }
}

#[test]
fn solve_triangle_examples() {
    let t = solve_triangle(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4).unwrap();
    let [v1, v2, _] = t.vertices();
    assert_eq!(v1, PointH::I);
    assert!(v2.x() == 0.0 && v2.y() > 1.0);
    for a in t.interior_angles().unwrap() {
        assert!((a - FRAC_PI_4).abs() < 1e-12);
    }
    assert!((t.signed_area() - FRAC_PI_4).abs() < 1e-12);
    assert_eq!(solve_triangle(0.0, 1.0, 1.0).unwrap().vertices(), [PointH::I; 3]);
    assert!(solve_triangle(-0.1, 1.0, 1.0).is_err());
    assert!(solve_triangle(1.0, 1.5, 1.0).is_err());
    assert!(solve_triangle(PI, 0.0, 0.0).is_err());
}

#[test]
fn nu_examples() {
    let nu = moment_nu(&proj(&[(1.0, 0.0), (1.0, 0.0)]));
    assert!((nu.mu[0] - 0.25).abs() < 1e-15);
    assert_eq!(moment_nu(&proj(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)])).mu, vec![0.0, 0.0]);
    let p = proj(&[(0.3, 0.1), (-1.0, 0.4), (0.2, 0.2)]);
    let scaled = ProjectivePoint::new(p.coords().iter().map(|w| w * c(-2.0, 3.0)).collect()).unwrap();
    for (a, b) in moment_nu(&p).mu.iter().zip(moment_nu(&scaled).mu) {
        assert!((a - b).abs() < 1e-15);
    }
    assert!((moment_nu(&p).simplex_margin() - 0.08 / (2.0 * 1.34)).abs() < 1e-12);
}

#[test]
fn fubini_study_normalization() {
    // ℂP¹ in the chart [1 : w]: integrate over w = tan(s) e^{iφ}.
    let (ns, nphi) = (400, 8);
    let mut total = 0.0;
    for i in 0..ns {
        let s = (i as f64 + 0.5) * (PI / 2.0) / ns as f64;
        let radius = s.tan();
        let jac = radius / s.cos().powi(2);
        for k in 0..nphi {
            let phi = k as f64 * TAU / nphi as f64;
            let p = ProjectivePoint::new(vec![c(1.0, 0.0), Complex64::from_polar(radius, phi)]).unwrap();
            let form = fubini_study(&p, &[c(0.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
            total += form * jac * (PI / 2.0 / ns as f64) * (TAU / nphi as f64);
        }
    }
    assert!((total - PI).abs() < 1e-3, "{total}");
    let p = proj(&[(1.0, 0.0), (0.3, 0.0)]);
    assert!(fubini_study(&p, &[c(1.0, 0.0)], &[c(1.0, 0.0)]).is_err());
}

#[test]
fn wolpert_blocks() {
    let mut r = rng(9);
    for n in 4..=6 {
        let alpha = random_alpha(n, 0.5, &mut r).unwrap();
        let lambda = alpha.lambda();
        let p = loop {
            let p = random_projective(n - 2, &mut r);
            if moment_nu(&p).simplex_margin() > 0.02 && p.coords()[0].norm_sqr() / p.norm_sqr() > 0.04 {
                break p;
            }
        };
        let base = action_angle(&construct_from_projective(&alpha, &p).unwrap()).unwrap();
        assert!(base.a.iter().all(|a| *a > 1e-3 * lambda));
        for i in 1..=n - 3 {
            for j in 1..=n - 3 {
                let w = wolpert_check(&alpha, &base, i, j).unwrap();
                assert!(w.residual < 1e-4, "n = {n}, ({i}, {j}): {w:?}");
            }
        }
        assert!(wolpert_check(&alpha, &base, 0, 1).is_err());
    }
    assert!(WOLPERT_STEP > 0.0);
    let alpha = alpha5();
    let corner = action_angle(&construct_from_projective(&alpha, &proj(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)])).unwrap())
        .unwrap();
    assert!(matches!(wolpert_check(&alpha, &corner, 1, 1), Err(Error::BoundaryProximity { .. })));
}

#[test]
fn wrong_coordinate_count() {
    assert!(matches!(construct_from_projective(&alpha5(), &proj(&[(1.0, 0.0)])), Err(Error::Domain(_))));
}

proptest! {
    #![proptest_config(prop_config(64))]

    #[test]
    fn coordinates_round_trip(n in 4usize..9, seed in 0u64..10_000, zeros in 0usize..5) {
        let mut r = rng(seed);
        let alpha = random_alpha(n, 0.05, &mut r).unwrap();
        let p = random_boundary_projective(n - 2, zeros.min(n - 4), &mut r);
        let rep = construct_from_projective(&alpha, &p).unwrap();
        prop_assert!(rep.validate().passed);
        prop_assert!(fs_distance(&coordinate_map(&rep).unwrap(), &p) < 1e-9);
    }

    #[test]
    fn coordinates_ignore_conjugation(n in 4usize..9, seed in 0u64..10_000) {
        let mut r = rng(seed);
        let alpha = random_alpha(n, 0.05, &mut r).unwrap();
        let rep = construct_from_projective(&alpha, &random_projective(n - 2, &mut r)).unwrap();
        let moved = rep.conjugated_by(&random_isometry(&mut r));
        prop_assert!(fs_distance(&coordinate_map(&rep).unwrap(), &coordinate_map(&moved).unwrap()) < 1e-9);
    }

    #[test]
    fn areas_and_moments(n in 4usize..9, seed in 0u64..10_000) {
        let mut r = rng(seed);
        let alpha = random_alpha(n, 0.05, &mut r).unwrap();
        let rep = construct_from_projective(&alpha, &random_projective(n - 2, &mut r)).unwrap();
        let chain = to_chain(&rep).unwrap();
        let a = area_params(&chain);
        prop_assert!((a.iter().sum::<f64>() - alpha.lambda()).abs() < 1e-8);
        let betas = rep.betas().unwrap();
        for i in 0..=n - 3 {
            let via = area_param_arcsin(alpha.get(i + 2), betas[i], betas[i + 1], chain.b(i), chain.c(i + 2));
            prop_assert!((via - a[i]).abs() < 1e-8, "triangle {}: {} vs {}", i, via, a[i]);
        }
        let mu = moment_mu(&rep).unwrap();
        prop_assert!(mu.mu.iter().all(|m| *m > 0.0 && *m < 0.5));
        let nu = moment_nu(&coordinate_map(&rep).unwrap());
        for (x, y) in mu.mu.iter().zip(&nu.mu) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn fubini_study_is_antisymmetric(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let p = random_projective(4, &mut r);
        let u = random_projective(4, &mut r).coords().to_vec();
        let v = random_projective(4, &mut r).coords().to_vec();
        prop_assert!(fubini_study(&p, &u, &u).unwrap().abs() < 1e-15);
        let (x, y) = (fubini_study(&p, &u, &v).unwrap(), fubini_study(&p, &v, &u).unwrap());
        prop_assert!((x + y).abs() < 1e-12);
        let along: Vec<Complex64> = p.coords().iter().map(|w| w * c(0.4, -1.3)).collect();
        prop_assert!(fubini_study(&p, &along, &v).unwrap().abs() < 1e-12);
    }
}
