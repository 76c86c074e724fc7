mod common;

use common::{direct_cost, grid_best_response, random_profile, random_scenario, schemes, three_size_scenario};
use jamteams_core::comms::ModulationScheme;
use jamteams_core::power::{
    best_response, coefficients, link_sinrs, outcome, pssge_condition, solve_power_game, solve_power_game_from,
    Agent, AllocationProfile, PowerGameOptions, Team,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn coefficients_reproduce_direct_sinrs() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let config = random_scenario(&mut rng);
        let profile = random_profile(&mut rng);
        let direct = link_sinrs(&config, &profile);
        for agent in Agent::SWEEP_ORDER {
            let c = coefficients(agent, &config, &profile);
            let own = profile.get(agent);
            let mate_sinr = direct.team(agent.team)[agent.teammate().index];
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
            assert!(rel(c.comm_sinr(own.comm), mate_sinr) < 1e-12);
            for k in 0..2 {
                let victim = direct.team(agent.team.opponent())[k];
                assert!(rel(c.victim_sinr(k, own.jam[k]), victim) < 1e-12);
            }
        }
    }
}

#[test]
fn equilibrium_is_mutual_best_response() {
    let config = three_size_scenario();
    let opts = PowerGameOptions::default();
    for &ma in &config.menu_a {
        for &mb in &config.menu_b {
            let (sa, sb) = (ModulationScheme::new(ma).unwrap(), ModulationScheme::new(mb).unwrap());
            let r = solve_power_game(&config, &sa, &sb, &opts).unwrap();
            assert!(r.converged, "{ma}/{mb}");
            for agent in Agent::SWEEP_ORDER {
                let here = direct_cost(agent, &config, &r.profile, &sa, &sb, *r.profile.get(agent));
                let (_, grid) = grid_best_response(agent, &config, &r.profile, &sa, &sb, 0.005);
                assert!(grid >= here - 1e-7, "{ma}/{mb} {}: grid {grid} beats equilibrium {here}", agent.label());
            }
            assert!((r.value - outcome(&config, &sa, &sb, &r.profile)).abs() < 1e-15);
        }
    }
}

#[test]
fn swapping_teams_negates_the_value() {
    let config = three_size_scenario();
    let (sa, sb) = (ModulationScheme::new(64).unwrap(), ModulationScheme::new(256).unwrap());
    let opts = PowerGameOptions::default();
    let r = solve_power_game(&config, &sa, &sb, &opts).unwrap();
    let s = solve_power_game(&config.swapped(), &sb, &sa, &opts).unwrap();
    assert!((r.value + s.value).abs() < 1e-7, "{} vs {}", r.value, s.value);
    assert!(r.profile.max_abs_diff(&s.profile.swapped()) < 1e-6);
}

#[test]
fn warm_start_reaches_the_same_point() {
    let config = three_size_scenario();
    let (sa, sb) = (ModulationScheme::new(16).unwrap(), ModulationScheme::new(64).unwrap());
    let opts = PowerGameOptions::default();
    let cold = solve_power_game(&config, &sa, &sb, &opts).unwrap();
    let warm = solve_power_game_from(&config, &sa, &sb, &opts, &cold.profile).unwrap();
    assert!(warm.converged && warm.iterations <= 2);
    assert!((warm.value - cold.value).abs() < 1e-9);
}

#[test]
fn iteration_cap_reports_non_convergence() {
    let config = three_size_scenario();
    let (sa, sb) = (ModulationScheme::new(256).unwrap(), ModulationScheme::new(64).unwrap());
    let opts = PowerGameOptions { max_iterations: 1, ..Default::default() };
    let r = solve_power_game(&config, &sa, &sb, &opts).unwrap();
    assert!(!r.converged);
    assert_eq!(r.iterations, 1);
    assert!(r.residual > opts.tolerance);
}

#[test]
fn bad_options_are_rejected() {
    let config = three_size_scenario();
    let (sa, sb) = (ModulationScheme::new(16).unwrap(), ModulationScheme::new(16).unwrap());
    for opts in [
        PowerGameOptions { damping: 0.0, ..Default::default() },
        PowerGameOptions { damping: 1.5, ..Default::default() },
        PowerGameOptions { tolerance: -1.0, ..Default::default() },
    ] {
        assert!(solve_power_game(&config, &sa, &sb, &opts).is_err());
    }
    let mut bad = config.clone();
    bad.noise_power = 0.0;
    assert!(solve_power_game(&bad, &sa, &sb, &PowerGameOptions::default()).is_err());
}

#[test]
fn certificate_arithmetic() {
    let config = three_size_scenario();
    for &ma in &config.menu_a {
        for &mb in &config.menu_b {
            let c = pssge_condition(&config, &ModulationScheme::new(ma).unwrap(), &ModulationScheme::new(mb).unwrap());
            let hand = 100.0
                * f64::max(0.0570 / 20.6309f64.powi(2) / (ma as f64 - 1.0), 0.0517 / 26.3224f64.powi(2) / (mb as f64 - 1.0));
            assert!((c.lhs - hand).abs() <= 1e-12 * hand);
            assert_eq!(c.holds, hand < 1e-3);
            assert_eq!(c.min_rate_threshold.is_some(), ma == mb);
        }
    }
}

#[test]
fn damped_iteration_converges_to_the_same_point() {
    let config = three_size_scenario();
    let (sa, sb) = (ModulationScheme::new(256).unwrap(), ModulationScheme::new(256).unwrap());
    let plain = solve_power_game(&config, &sa, &sb, &PowerGameOptions::default()).unwrap();
    let damped = solve_power_game(&config, &sa, &sb, &PowerGameOptions { damping: 0.7, max_iterations: 2000, ..Default::default() }).unwrap();
    assert!(damped.converged);
    assert!((plain.value - damped.value).abs() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn best_response_is_feasible_and_no_worse_than_staying(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let config = random_scenario(&mut rng);
        let others = random_profile(&mut rng);
        let (sa, sb) = schemes(&config);
        for agent in Agent::SWEEP_ORDER {
            let br = best_response(agent, &config, &others, &sa, &sb).unwrap();
            prop_assert!(br.allocation.on_simplex());
            prop_assert!(br.allocation.comm >= br.comm_floor - 1e-12);
            // staying put is only a fair comparison when it meets the floor
            let current = *others.get(agent);
            if current.comm >= br.comm_floor {
                let stay = direct_cost(agent, &config, &others, &sa, &sb, current);
                let moved = direct_cost(agent, &config, &others, &sa, &sb, br.allocation);
                prop_assert!(moved <= stay + 1e-12);
            }
            let sign = if agent.team == Team::A { 1.0 } else { -1.0 };
            let direct = direct_cost(agent, &config, &others, &sa, &sb, br.allocation);
            prop_assert!((sign * br.objective - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_profile_value_flips_with_team_swap(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let config = random_scenario(&mut rng);
        let (sa, sb) = schemes(&config);
        let p = AllocationProfile::uniform();
        let v = outcome(&config, &sa, &sb, &p);
        let w = outcome(&config.swapped(), &sb, &sa, &p.swapped());
        prop_assert!((v + w).abs() < 1e-14);
    }
}
