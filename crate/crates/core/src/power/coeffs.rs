//! Reduction of an agent's three relevant SINRs to five scalars.
//!
//! With everyone else's fractions frozen, the SINR of the agent's own link
//! is linear in its communication share and the SINR at each opposing
//! receiver is a hyperbola in the matching jamming share:
//!
//! ```text
//! s_comm   = comm_gain * comm
//! s_victim = victim_signal[k] / (victim_offset[k] + jam[k])
//! ```
//!
//! Team B agents use the same shapes with the roles of the teams swapped.

use super::profile::AllocationProfile;
use super::scenario::{Agent, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestResponseCoefficients {
    pub comm_gain: f64,
    pub victim_signal: [f64; 2],
    pub victim_offset: [f64; 2],
    /// Opponent over own antenna constant.
    pub rho_ratio: f64,
}

impl BestResponseCoefficients {
    pub fn comm_sinr(&self, comm: f64) -> f64 {
        self.comm_gain * comm
    }

    pub fn victim_sinr(&self, k: usize, jam: f64) -> f64 {
        self.victim_signal[k] / (self.victim_offset[k] + jam)
    }
}

/// Coefficients for `agent` given the fractions of the other three agents
/// in `others` (the agent's own entry is ignored).
pub fn coefficients(agent: Agent, config: &ScenarioConfig, others: &AllocationProfile) -> BestResponseCoefficients {
    let team = agent.team;
    let opp = team.opponent();
    let mate = agent.teammate();
    let d = &config.distances;
    let alpha = config.alpha;
    let p = config.p_max;
    let rho_own = config.rho(team);
    let rho_ratio = config.rho(opp) / rho_own;
    let ratio_pow = |num: f64, den: f64| libm::pow(num / den, -alpha);

    let d_own = d.within(team);
    let noise_comm = config.noise_power / (p * rho_own * libm::pow(d_own, -alpha));
    let jamming_at_mate: f64 = (0..2)
        .map(|k| {
            let jammer = others.get(Agent { team: opp, index: k });
            rho_ratio * jammer.jam[mate.index] * ratio_pow(d.to_opponent(mate, k), d_own)
        })
        .sum();
    let comm_gain = 1.0 / (noise_comm + jamming_at_mate);

    let mut victim_signal = [0.0; 2];
    let mut victim_offset = [0.0; 2];
    for k in 0..2 {
        let to_victim = d.to_opponent(agent, k);
        // the victim hears its own teammate
        let victim_sender = others.get(Agent { team: opp, index: 1 - k });
        victim_signal[k] = rho_ratio * victim_sender.comm * ratio_pow(d.within(opp), to_victim);
        let noise = config.noise_power / (p * rho_own * libm::pow(to_victim, -alpha));
        victim_offset[k] = noise + others.get(mate).jam[k] * ratio_pow(d.to_opponent(mate, k), to_victim);
    }

    BestResponseCoefficients { comm_gain, victim_signal, victim_offset, rho_ratio }
}

/// Smallest communication share that meets the rate floor,
/// `min((2^R - 1) / comm_gain, 1)`. A value of 1 means the floor cannot be
/// met and all power goes to the teammate.
pub fn rate_floor(comm_gain: f64, min_rate: f64) -> f64 {
    let need = libm::exp2(min_rate) - 1.0;
    (need / comm_gain).min(1.0)
}
