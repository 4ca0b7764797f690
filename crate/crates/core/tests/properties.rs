//! Randomized invariant checks: identities the model must hold over whole
//! parameter ranges, not just at hand-picked values.

use proptest::prelude::*;
use tauorbit_core::forward::solve_orbit_radius;
use tauorbit_core::inverse::{hydrogen_potential, oscillator_potential, RadiusProfile, SpectrumLaw, SpectrumSpec};
use tauorbit_core::{DiscreteParams, Extrapolation, PotentialModel};

use std::f64::consts::PI;

fn central_difference(pot: &PotentialModel, r: f64) -> f64 {
    let h = 1e-6 * r.max(1.0);
    (pot.evaluate(r + h).unwrap() - pot.evaluate(r - h).unwrap()) / (2.0 * h)
}

proptest! {
    // regression files would be dead weight here: every failure minimizes
    // quickly and the generators are cheap
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    /// The stiffness is pinned to the step: xi tau^2 = 4 pi^2 m, however the
    /// parameters were constructed.
    #[test]
    fn stiffness_step_identity(tau in 0.05f64..10.0, mass in 0.05f64..10.0) {
        let params = DiscreteParams::new(tau, mass).unwrap();
        let target = 4.0 * PI * PI * mass;
        prop_assert!((params.xi() * tau * tau - target).abs() <= 8.0 * f64::EPSILON * target);

        let via_xi = DiscreteParams::with_xi(params.xi(), mass).unwrap();
        prop_assert!((via_xi.tau() - tau).abs() <= 8.0 * f64::EPSILON * tau);
    }

    /// Analytic derivatives agree with a central finite difference at
    /// h = 1e-6 max(r, 1) for every closed-form family.
    #[test]
    fn derivatives_match_finite_differences(
        alpha in 0.2f64..4.0,
        gamma in 0.5f64..15.0,
        beta in 0.0f64..1.2,
        xi in 0.3f64..3.0,
        sigma in prop::sample::select(vec![-1.5, -0.5, 2.0 / 3.0, 1.5, 1.9]),
        r in 0.3f64..15.0,
    ) {
        // attractive force needs alpha and sigma of equal sign
        let p_alpha = if sigma > 0.0 { alpha } else { -alpha };
        let pots = [
            PotentialModel::coulomb(alpha).unwrap(),
            PotentialModel::linear(alpha).unwrap(),
            PotentialModel::logarithmic(alpha).unwrap(),
            PotentialModel::polynomial(p_alpha, sigma).unwrap(),
            hydrogen_potential(gamma, beta, xi).unwrap(),
            oscillator_potential(alpha, beta, xi).unwrap(),
        ];
        for pot in &pots {
            let d = pot.derivative(r).unwrap();
            let fd = central_difference(pot, r);
            prop_assert!(
                (fd - d).abs() <= 1e-6 * d.abs(),
                "{pot:?} at r = {r}: analytic {d}, finite difference {fd}"
            );
        }
    }

    /// A power law with exponent -1 is the coulomb potential, pointwise in
    /// value and slope.
    #[test]
    fn reciprocal_power_law_is_coulomb(alpha in 0.1f64..10.0, r in 0.05f64..50.0) {
        let p = PotentialModel::polynomial(-alpha, -1.0).unwrap();
        let c = PotentialModel::coulomb(alpha).unwrap();
        let pv = p.evaluate(r).unwrap();
        let cv = c.evaluate(r).unwrap();
        prop_assert!((pv - cv).abs() <= 1e-14 * cv.abs(), "value {pv} vs {cv}");
        let pd = p.derivative(r).unwrap();
        let cd = c.derivative(r).unwrap();
        prop_assert!((pd - cd).abs() <= 1e-14 * cd.abs(), "slope {pd} vs {cd}");
    }

    /// The tabulated interpolant reproduces its knot values exactly, whatever
    /// the data.
    #[test]
    fn tabulated_interpolant_reproduces_knots(
        r0 in 0.1f64..2.0,
        gaps in prop::collection::vec(0.05f64..1.5, 3..40),
        seed_values in prop::collection::vec(-10.0f64..10.0, 43),
    ) {
        let mut grid = Vec::with_capacity(gaps.len() + 1);
        let mut r = r0;
        grid.push(r);
        for g in &gaps {
            r += g;
            grid.push(r);
        }
        let values: Vec<f64> = seed_values[..grid.len()].to_vec();
        let pot = PotentialModel::tabulated(grid.clone(), values.clone(), Extrapolation::Error).unwrap();
        for (rk, uk) in grid.iter().zip(&values) {
            prop_assert_eq!(pot.evaluate(*rk).unwrap(), *uk);
        }
    }

    /// Every accepted orbit radius satisfies the balance residual bound the
    /// solver advertises, closed-form and numeric paths alike.
    #[test]
    fn accepted_radii_satisfy_residual_bound(
        family in 0usize..4,
        alpha in 0.2f64..4.0,
        xi in 0.3f64..20.0,
        n in 1u32..40,
    ) {
        let pot = match family {
            0 => PotentialModel::coulomb(alpha).unwrap(),
            1 => PotentialModel::linear(alpha).unwrap(),
            2 => PotentialModel::logarithmic(alpha).unwrap(),
            _ => PotentialModel::polynomial(alpha, 2.0 / 3.0).unwrap(),
        };
        let params = DiscreteParams::with_xi(xi, 1.0).unwrap();
        let r = solve_orbit_radius(&pot, &params, n).unwrap();
        let nf = n as f64;
        let lhs = params.xi() * r / (nf * nf);
        let residual = (lhs - pot.derivative(r).unwrap()).abs();
        prop_assert!(residual <= 1e-12 * (lhs.abs() + pot.derivative(r).unwrap().abs()));
    }

    /// The reconstruction anchor holds by construction: xi r(1)^2 = eps for
    /// every law and every admissible anchor value.
    #[test]
    fn radius_profile_anchors_at_ground_index(
        law_pick in 0usize..3,
        gamma in 0.5f64..20.0,
        alpha in 0.2f64..5.0,
        xi in 0.2f64..20.0,
        eps in 0.1f64..10.0,
    ) {
        let spec = match law_pick {
            0 => SpectrumSpec::Hydrogen { gamma },
            1 => SpectrumSpec::Linear { alpha },
            _ => SpectrumSpec::Power { coeff: -0.5 * alpha, exponent: -2.0 / 3.0 },
        };
        let law = SpectrumLaw::from_spec(&spec).unwrap();
        let profile = RadiusProfile::new(law, xi, eps).unwrap();
        let r1 = profile.radius(1.0).unwrap();
        prop_assert!((xi * r1 * r1 - eps).abs() <= 1e-12 * eps);
    }
}
