use crate::comms::ModulationScheme;
use crate::error::{Error, Result};

use super::scenario::{Agent, ScenarioConfig, Team};

/// Tolerance on the simplex equality.
pub const SIMPLEX_TOLERANCE: f64 = 1e-12;

/// How one agent splits its power: a share for its teammate and one share
/// per opposing agent to jam. `jam[k]` targets agent `k` of the other team.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Allocation {
    pub comm: f64,
    pub jam: [f64; 2],
}

impl Allocation {
    pub const UNIFORM: Allocation = Allocation { comm: 1.0 / 3.0, jam: [1.0 / 3.0, 1.0 / 3.0] };
    pub const ALL_COMM: Allocation = Allocation { comm: 1.0, jam: [0.0, 0.0] };

    pub fn new(comm: f64, jam_first: f64, jam_second: f64) -> Result<Self> {
        let a = Allocation { comm, jam: [jam_first, jam_second] };
        if a.on_simplex() {
            Ok(a)
        } else {
            Err(Error::Precondition("allocation must be non-negative and sum to one"))
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.comm, self.jam[0], self.jam[1]]
    }

    pub fn on_simplex(&self) -> bool {
        let parts = self.to_array();
        parts.iter().all(|p| (0.0..=1.0).contains(p))
            && (parts.iter().sum::<f64>() - 1.0).abs() <= SIMPLEX_TOLERANCE
    }

    /// `(1 - theta) * self + theta * target`.
    pub fn blend(&self, target: &Allocation, theta: f64) -> Allocation {
        let mix = |a: f64, b: f64| (1.0 - theta) * a + theta * b;
        Allocation { comm: mix(self.comm, target.comm), jam: [mix(self.jam[0], target.jam[0]), mix(self.jam[1], target.jam[1])] }
    }

    /// Raise the communication share to `floor`, shrinking the jamming
    /// shares proportionally. Leaves the allocation alone if it already
    /// meets the floor.
    pub fn lift_comm(&self, floor: f64) -> Allocation {
        if self.comm >= floor {
            return *self;
        }
        let spare = 1.0 - floor;
        let jam_total = self.jam[0] + self.jam[1];
        let jam = if jam_total > 0.0 {
            [spare * self.jam[0] / jam_total, spare * self.jam[1] / jam_total]
        } else {
            [0.5 * spare, 0.5 * spare]
        };
        Allocation { comm: floor, jam }
    }

    pub fn max_abs_diff(&self, other: &Allocation) -> f64 {
        self.to_array().iter().zip(other.to_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// The twelve power fractions of all four agents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllocationProfile {
    pub team_a: [Allocation; 2],
    pub team_b: [Allocation; 2],
}

impl Default for AllocationProfile {
    fn default() -> Self {
        Self::uniform()
    }
}

impl AllocationProfile {
    pub fn uniform() -> Self {
        Self { team_a: [Allocation::UNIFORM; 2], team_b: [Allocation::UNIFORM; 2] }
    }

    pub fn get(&self, agent: Agent) -> &Allocation {
        match agent.team {
            Team::A => &self.team_a[agent.index],
            Team::B => &self.team_b[agent.index],
        }
    }

    pub fn set(&mut self, agent: Agent, allocation: Allocation) {
        match agent.team {
            Team::A => self.team_a[agent.index] = allocation,
            Team::B => self.team_b[agent.index] = allocation,
        }
    }

    pub fn team(&self, team: Team) -> &[Allocation; 2] {
        match team {
            Team::A => &self.team_a,
            Team::B => &self.team_b,
        }
    }

    /// Fractions in agent order 1a, 2a, 1b, 2b, each as (comm, jam 1, jam 2).
    pub fn fractions(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        let all = [self.team_a[0], self.team_a[1], self.team_b[0], self.team_b[1]];
        for (chunk, a) in out.chunks_mut(3).zip(all) {
            chunk.copy_from_slice(&a.to_array());
        }
        out
    }

    pub fn max_abs_diff(&self, other: &AllocationProfile) -> f64 {
        self.fractions().iter().zip(other.fractions()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Same profile with the team labels exchanged.
    pub fn swapped(&self) -> Self {
        Self { team_a: self.team_b, team_b: self.team_a }
    }
}

/// SINR at each receiver: `team_a[i]` is what Team A agent `i` hears from
/// its teammate, and likewise for Team B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSinrs {
    pub team_a: [f64; 2],
    pub team_b: [f64; 2],
}

impl LinkSinrs {
    pub fn team(&self, team: Team) -> &[f64; 2] {
        match team {
            Team::A => &self.team_a,
            Team::B => &self.team_b,
        }
    }
}

/// Received power `rho * P * fraction * d^-alpha`.
fn received(rho: f64, power: f64, fraction: f64, d: f64, alpha: f64) -> f64 {
    rho * power * fraction * libm::pow(d, -alpha)
}

/// Evaluate every receiver's SINR directly from the geometry, with each
/// agent transmitting at `P_max`.
pub fn link_sinrs(config: &ScenarioConfig, profile: &AllocationProfile) -> LinkSinrs {
    let p = config.p_max;
    let alpha = config.alpha;
    let d = &config.distances;
    let sinr_at = |receiver: Agent| {
        let team = receiver.team;
        let opp = team.opponent();
        let sender = profile.get(receiver.teammate());
        let signal = received(config.rho(team), p, sender.comm, d.within(team), alpha);
        let interference: f64 = (0..2)
            .map(|k| {
                let jammer = profile.get(Agent { team: opp, index: k });
                received(config.rho(opp), p, jammer.jam[receiver.index], d.to_opponent(receiver, k), alpha)
            })
            .sum();
        crate::comms::sinr(signal, interference, config.noise_power)
    };
    LinkSinrs {
        team_a: [sinr_at(Agent::A1), sinr_at(Agent::A2)],
        team_b: [sinr_at(Agent::B1), sinr_at(Agent::B2)],
    }
}

/// Instantaneous outcome `p^a_1 + p^a_2 - p^b_1 - p^b_2`; Team A minimizes it.
pub fn outcome(config: &ScenarioConfig, scheme_a: &ModulationScheme, scheme_b: &ModulationScheme, profile: &AllocationProfile) -> f64 {
    let s = link_sinrs(config, profile);
    s.team_a.iter().map(|&x| scheme_a.ber_unchecked(x)).sum::<f64>()
        - s.team_b.iter().map(|&x| scheme_b.ber_unchecked(x)).sum::<f64>()
}

/// The part of the outcome an agent's own fractions can move:
/// `p^a_j - p^b_1 - p^b_2` for a Team A agent (minimized) and
/// `p^a_1 + p^a_2 - p^b_j` for a Team B agent (maximized).
pub fn agent_objective(
    agent: Agent,
    config: &ScenarioConfig,
    scheme_a: &ModulationScheme,
    scheme_b: &ModulationScheme,
    profile: &AllocationProfile,
) -> f64 {
    let s = link_sinrs(config, profile);
    let mate = agent.teammate().index;
    match agent.team {
        Team::A => {
            scheme_a.ber_unchecked(s.team_a[mate])
                - scheme_b.ber_unchecked(s.team_b[0])
                - scheme_b.ber_unchecked(s.team_b[1])
        }
        Team::B => {
            scheme_a.ber_unchecked(s.team_a[0]) + scheme_a.ber_unchecked(s.team_a[1])
                - scheme_b.ber_unchecked(s.team_b[mate])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allocation_validation() {
        assert!(Allocation::new(0.5, 0.25, 0.25).is_ok());
        assert!(Allocation::new(0.5, 0.5, 0.5).is_err());
        assert!(Allocation::new(1.1, -0.1, 0.0).is_err());
    }

    #[test]
    fn lift_comm_stays_on_simplex() {
        let a = Allocation::new(0.1, 0.6, 0.3).unwrap();
        let lifted = a.lift_comm(0.4);
        assert!(lifted.on_simplex());
        assert_eq!(lifted.comm, 0.4);
        assert!((lifted.jam[0] / lifted.jam[1] - 2.0).abs() < 1e-12);
        assert_eq!(a.lift_comm(0.05), a);
    }

    #[test]
    fn fractions_order() {
        let mut p = AllocationProfile::uniform();
        p.set(Agent::B2, Allocation::ALL_COMM);
        let f = p.fractions();
        assert_eq!(&f[9..], &[1.0, 0.0, 0.0]);
        assert_eq!(p.swapped().team_a[1], Allocation::ALL_COMM);
    }
}
