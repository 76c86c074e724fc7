#![allow(dead_code)]

use jamteams_core::comms::{rate, ModulationScheme};
use jamteams_core::power::{
    agent_objective, link_sinrs, Agent, Allocation, AllocationProfile, Distances, ScenarioConfig, Team,
};
use jamteams_core::sim::distances_from_positions;
use rand::Rng;

/// Two pairs about 20 m apart, three QAM sizes per team.
pub fn three_size_scenario() -> ScenarioConfig {
    ScenarioConfig {
        distances: Distances::new(17.7864, 15.3376, 19.8951, 14.1128, 20.6309, 26.3224),
        rho_a: 0.0570,
        rho_b: 0.0517,
        alpha: 2.0,
        noise_power: 1e-3,
        p_max: 100.0,
        energy: 100.0,
        min_rate: 1.0,
        menu_a: vec![16, 64, 256],
        menu_b: vec![16, 64, 256],
    }
}

/// Payoff matrix for [`three_size_scenario`] as printed with four decimals.
pub const REFERENCE_MATRIX: [[f64; 3]; 3] =
    [[0.0158, 0.0533, 0.1229], [-0.0356, 0.0091, 0.0728], [-0.1155, -0.0677, 0.0040]];

/// Three agents bunched together, one far away; used for SNR sweeps.
pub fn sweep_scenario() -> ScenarioConfig {
    ScenarioConfig {
        distances: Distances::new(2.2036, 33.6830, 2.4211, 33.6393, 4.5607, 33.2022),
        rho_a: 0.0570,
        rho_b: 0.0517,
        alpha: 3.0,
        noise_power: 1e-5,
        p_max: 1.0,
        energy: 1.0,
        min_rate: 1.0,
        menu_a: vec![16, 20, 24, 28],
        menu_b: vec![16, 20, 24, 28],
    }
}

/// Mirror-image teams: swapping the team labels maps the world onto itself.
pub fn symmetric_scenario() -> ScenarioConfig {
    ScenarioConfig {
        distances: Distances::new(12.0, 15.0, 15.0, 12.0, 10.0, 10.0),
        rho_a: 0.05,
        rho_b: 0.05,
        alpha: 2.0,
        noise_power: 0.5,
        p_max: 10.0,
        energy: 10.0,
        min_rate: 0.5,
        menu_a: vec![4, 16, 64],
        menu_b: vec![4, 16, 64],
    }
}

const SIZES: [u32; 4] = [4, 16, 64, 256];

pub fn random_scenario(rng: &mut impl Rng) -> ScenarioConfig {
    let distances = loop {
        let mut p = [[0.0; 2]; 4];
        for xy in p.iter_mut() {
            *xy = [rng.gen_range(0.0..40.0), rng.gen_range(0.0..40.0)];
        }
        if let Ok(d) = distances_from_positions(&p) {
            let all = [d.cross[0][0], d.cross[0][1], d.cross[1][0], d.cross[1][1], d.team_a, d.team_b];
            if all.iter().all(|&x| x > 1.0) {
                break d;
            }
        }
    };
    ScenarioConfig {
        distances,
        rho_a: rng.gen_range(0.02..0.08),
        rho_b: rng.gen_range(0.02..0.08),
        alpha: rng.gen_range(2.0..4.0),
        noise_power: 10f64.powf(rng.gen_range(-5.0..-1.0)),
        p_max: 10f64.powf(rng.gen_range(-1.0..2.0)),
        energy: 10.0,
        min_rate: rng.gen_range(0.0..2.0),
        menu_a: vec![SIZES[rng.gen_range(0..4)]],
        menu_b: vec![SIZES[rng.gen_range(0..4)]],
    }
}

pub fn random_allocation(rng: &mut impl Rng) -> Allocation {
    let w: [f64; 3] = [rng.gen_range(0.01..1.0), rng.gen_range(0.01..1.0), rng.gen_range(0.01..1.0)];
    let total: f64 = w.iter().sum();
    let comm = w[0] / total;
    let j0 = w[1] / total;
    Allocation { comm, jam: [j0, 1.0 - comm - j0] }
}

pub fn random_profile(rng: &mut impl Rng) -> AllocationProfile {
    AllocationProfile {
        team_a: [random_allocation(rng), random_allocation(rng)],
        team_b: [random_allocation(rng), random_allocation(rng)],
    }
}

pub fn schemes(config: &ScenarioConfig) -> (ModulationScheme, ModulationScheme) {
    (ModulationScheme::new(config.menu_a[0]).unwrap(), ModulationScheme::new(config.menu_b[0]).unwrap())
}

/// Brute-force best response evaluated straight from the link SINRs: a
/// regular grid of spacing `step` over the feasible part of the simplex,
/// plus the same spacing along the rate-floor edge. Returns the allocation
/// and the agent's objective written as a cost (Team B's is negated).
pub fn grid_best_response(
    agent: Agent,
    config: &ScenarioConfig,
    others: &AllocationProfile,
    sa: &ModulationScheme,
    sb: &ModulationScheme,
    step: f64,
) -> (Allocation, f64) {
    let sign = match agent.team {
        Team::A => 1.0,
        Team::B => -1.0,
    };
    let mut profile = *others;
    // the teammate's SINR is proportional to this agent's comm share
    profile.set(agent, Allocation::ALL_COMM);
    let full = link_sinrs(config, &profile).team(agent.team)[agent.teammate().index];
    let floor = (2f64.powf(config.min_rate) - 1.0) / full;
    if floor >= 1.0 {
        return (Allocation::ALL_COMM, sign * agent_objective(agent, config, sa, sb, &profile));
    }
    let spare = 1.0 - floor;
    let n = (spare / step).floor() as usize;
    let mut nodes = Vec::new();
    for i in 0..=n {
        for j in 0..=(n - i) {
            nodes.push((i as f64 * step, j as f64 * step));
        }
        nodes.push((i as f64 * step, spare - i as f64 * step));
    }
    nodes.push((spare, 0.0));
    let mut best: Option<(Allocation, f64)> = None;
    for (j0, j1) in nodes {
        let a = Allocation { comm: (1.0 - j0 - j1).max(floor), jam: [j0, j1] };
        profile.set(agent, a);
        let mate_sinr = link_sinrs(config, &profile).team(agent.team)[agent.teammate().index];
        assert!(rate(mate_sinr) >= config.min_rate - 1e-9, "grid node below the rate floor");
        let cost = sign * agent_objective(agent, config, sa, sb, &profile);
        if best.is_none_or(|(_, c)| cost < c) {
            best = Some((a, cost));
        }
    }
    best.expect("grid has nodes")
}

/// Cost of `allocation` for `agent` against `others`, evaluated directly.
pub fn direct_cost(
    agent: Agent,
    config: &ScenarioConfig,
    others: &AllocationProfile,
    sa: &ModulationScheme,
    sb: &ModulationScheme,
    allocation: Allocation,
) -> f64 {
    let mut profile = *others;
    profile.set(agent, allocation);
    let sign = match agent.team {
        Team::A => 1.0,
        Team::B => -1.0,
    };
    sign * agent_objective(agent, config, sa, sb, &profile)
}
