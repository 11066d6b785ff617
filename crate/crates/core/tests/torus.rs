mod common;

use std::f64::consts::TAU;

use common::*;
use proptest::prelude::*;
use trichain::sample::{random_alpha, random_projective, random_torus};
use trichain::{
    act_on_chain, act_on_cp, act_on_rep, action_angle, construct_from_projective, coordinate_map, flow_trajectory,
    fs_distance, moment_nu, to_chain, AngleVector, DtRepresentation, Error, TorusElement,
};

fn interior_rep(n: usize, seed: u64) -> DtRepresentation {
    let mut r = rng(seed);
    let alpha = random_alpha(n, 0.5, &mut r).unwrap();
    loop {
        let p = random_projective(n - 2, &mut r);
        if moment_nu(&p).simplex_margin() > 0.02 && p.coords()[0].norm_sqr() / p.norm_sqr() > 0.04 {
            return construct_from_projective(&alpha, &p).unwrap();
        }
    }
}

#[test]
fn torus_elements() {
    let t = TorusElement::new(vec![7.0, -1.0]);
    assert!((t.theta()[0] - (7.0 - TAU)).abs() < 1e-15);
    assert!((t.theta()[1] - (TAU - 1.0)).abs() < 1e-15);
    assert_eq!(TorusElement::along(3, 2, 0.5).theta(), &[0.0, 0.5, 0.0]);
    assert_eq!(TorusElement::new(vec![0.3, 0.5, 0.4]).bars().len(), 3);
    let bars = TorusElement::new(vec![0.3, 0.5, 0.4]).bars();
    assert!((bars[1] - 0.2).abs() < 1e-15 && (bars[2] + 0.1).abs() < 1e-15);
    assert!(TorusElement::zero(0).is_empty());
}

#[test]
fn zero_acts_trivially() {
    let rep = interior_rep(6, 1);
    let same = act_on_rep(&TorusElement::zero(3), &rep).unwrap();
    for (g, h) in rep.gens().iter().zip(same.gens()) {
        assert!(g.max_entry_distance(h) < 1e-12);
    }
    let p = coordinate_map(&rep).unwrap();
    assert_eq!(act_on_cp(&TorusElement::zero(3), &p).unwrap(), p);
}

#[test]
fn length_mismatches_are_rejected() {
    let rep = interior_rep(5, 2);
    let bad = TorusElement::zero(3);
    assert!(matches!(act_on_rep(&bad, &rep), Err(Error::Domain(_))));
    assert!(act_on_chain(&bad, &to_chain(&rep).unwrap()).is_err());
    assert!(act_on_cp(&bad, &coordinate_map(&rep).unwrap()).is_err());
    assert!(matches!(flow_trajectory(&rep, 3, 1, 0.1), Err(Error::Index { .. })));
}

#[test]
fn first_triangle_stays_put() {
    let rep = interior_rep(6, 3);
    let chain = to_chain(&rep).unwrap();
    let moved = act_on_chain(&TorusElement::new(vec![0.7, 1.9, 4.0]), &chain).unwrap();
    assert_eq!(moved.triangle(0).vertices(), chain.triangle(0).vertices());
    assert_eq!(moved.b(1), chain.b(1));
    assert!(moved.c(3).dist(&chain.c(3)) > 1e-3);
}

#[test]
fn flow_is_linear_in_the_angle() {
    for n in 4..=6 {
        let rep = interior_rep(n, 10 + n as u64);
        for i in 1..=n - 3 {
            let dt = 0.05;
            let traj = flow_trajectory(&rep, i, 8, dt).unwrap();
            assert!(!traj.near_boundary);
            let (_, first) = &traj.samples[0];
            for w in traj.samples.windows(2) {
                let (s0, s1) = (&w[0].1, &w[1].1);
                let slope = -circ(s1.sigma[i - 1], s0.sigma[i - 1]) / dt;
                assert!((slope + 1.0).abs() < 1e-6, "n = {n}, i = {i}: {slope}");
                for (k, s) in s1.sigma.iter().enumerate() {
                    if k != i - 1 {
                        assert!(circ(*s, first.sigma[k]) < 1e-8);
                    }
                }
            }
            for (_, s) in &traj.samples {
                for (a, b) in s.a.iter().zip(&first.a) {
                    assert!((a - b).abs() < 1e-10);
                }
            }
            let half = TorusElement::along(n - 3, i, TAU / 2.0);
            let closed = act_on_rep(&half, &act_on_rep(&half, &rep).unwrap()).unwrap();
            assert!(fs_distance(&coordinate_map(&closed).unwrap(), &coordinate_map(&rep).unwrap()) < 1e-9);
        }
    }
}

#[test]
fn flow_flags_points_near_the_boundary() {
    let alpha = AngleVector::new(vec![5.5, 5.9, 5.3, 6.0, 5.7]).unwrap();
    let p = trichain::ProjectivePoint::new(vec![
        trichain::Complex64::new(1.0, 0.0),
        trichain::Complex64::new(1e-3, 0.0),
        trichain::Complex64::new(0.5, 0.0),
    ])
    .unwrap();
    let rep = construct_from_projective(&alpha, &p).unwrap();
    assert!(flow_trajectory(&rep, 1, 2, 0.1).unwrap().near_boundary);
}

proptest! {
    #![proptest_config(prop_config(64))]

    #[test]
    fn action_is_equivariant(n in 4usize..9, seed in 0u64..10_000) {
        let mut r = rng(seed);
        let alpha = random_alpha(n, 0.05, &mut r).unwrap();
        let rep = construct_from_projective(&alpha, &random_projective(n - 2, &mut r)).unwrap();
        let theta = random_torus(n - 3, &mut r);
        let moved = act_on_rep(&theta, &rep).unwrap();
        prop_assert!(moved.validate().passed);
        prop_assert!((moved.volume_chain().unwrap() + alpha.lambda()).abs() < 1e-7);
        let lhs = coordinate_map(&moved).unwrap();
        let rhs = act_on_cp(&theta, &coordinate_map(&rep).unwrap()).unwrap();
        prop_assert!(fs_distance(&lhs, &rhs) < 1e-9);
        let (a, b) = (moment_nu(&lhs), moment_nu(&coordinate_map(&rep).unwrap()));
        for (x, y) in a.mu.iter().zip(&b.mu) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn chain_and_rep_actions_agree(n in 4usize..9, seed in 0u64..10_000) {
        let mut r = rng(seed);
        let alpha = random_alpha(n, 0.05, &mut r).unwrap();
        let rep = construct_from_projective(&alpha, &random_projective(n - 2, &mut r)).unwrap();
        let theta = random_torus(n - 3, &mut r);
        let chain = to_chain(&rep).unwrap();
        let via_chain = act_on_chain(&theta, &chain).unwrap();
        let via_rep = to_chain(&act_on_rep(&theta, &rep).unwrap()).unwrap();
        let pairs = via_chain.c_points().iter().chain(via_chain.b_points())
            .zip(via_rep.c_points().iter().chain(via_rep.b_points()));
        for (p, q) in pairs {
            prop_assert!(p.dist(q) < 1e-9);
        }
        for (a, b) in via_chain.areas().iter().zip(chain.areas()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn group_law(n in 4usize..8, seed in 0u64..10_000) {
        let mut r = rng(seed);
        let alpha = random_alpha(n, 0.05, &mut r).unwrap();
        let rep = construct_from_projective(&alpha, &random_projective(n - 2, &mut r)).unwrap();
        let (s, t) = (random_torus(n - 3, &mut r), random_torus(n - 3, &mut r));
        let twice = act_on_rep(&s, &act_on_rep(&t, &rep).unwrap()).unwrap();
        let once = act_on_rep(&s.add(&t), &rep).unwrap();
        prop_assert!(conjugacy_residual(&twice, &once) < 1e-8);
        let p = coordinate_map(&rep).unwrap();
        let q = act_on_cp(&s, &act_on_cp(&t, &p).unwrap()).unwrap();
        prop_assert!(fs_distance(&q, &act_on_cp(&s.add(&t), &p).unwrap()) < 1e-12);
    }

    #[test]
    fn cp_action_keeps_moduli(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let p = random_projective(5, &mut r);
        let q = act_on_cp(&random_torus(4, &mut r), &p).unwrap();
        for (a, b) in p.coords().iter().zip(q.coords()) {
            prop_assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
        prop_assert_eq!(q.coords()[0], p.coords()[0]);
    }
}

#[test]
fn action_angle_matches_trajectory_start() {
    let rep = interior_rep(5, 20);
    let traj = flow_trajectory(&rep, 2, 0, 0.1).unwrap();
    assert_eq!(traj.samples.len(), 1);
    assert_eq!(traj.samples[0].1, action_angle(&rep).unwrap());
}
