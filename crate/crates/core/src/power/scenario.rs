use alloc::vec::Vec;

use crate::comms::{check_distance, ModulationScheme};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Team {
    A,
    B,
}

impl Team {
    pub fn opponent(self) -> Team {
        match self {
            Team::A => Team::B,
            Team::B => Team::A,
        }
    }
}

/// One of the four agents: `index` is 0 for agent 1 and 1 for agent 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Agent {
    pub team: Team,
    pub index: usize,
}

impl Agent {
    pub const A1: Agent = Agent { team: Team::A, index: 0 };
    pub const A2: Agent = Agent { team: Team::A, index: 1 };
    pub const B1: Agent = Agent { team: Team::B, index: 0 };
    pub const B2: Agent = Agent { team: Team::B, index: 1 };

    /// Fixed Gauss-Seidel order, alternating teams.
    pub const SWEEP_ORDER: [Agent; 4] = [Agent::A1, Agent::B1, Agent::A2, Agent::B2];

    pub fn teammate(self) -> Agent {
        Agent { team: self.team, index: 1 - self.index }
    }

    pub fn label(self) -> &'static str {
        match (self.team, self.index) {
            (Team::A, 0) => "1a",
            (Team::A, _) => "2a",
            (Team::B, 0) => "1b",
            (Team::B, _) => "2b",
        }
    }
}

/// The six pairwise distances between the agents (m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distances {
    /// `cross[i][j]` separates Team A agent `i` from Team B agent `j`.
    pub cross: [[f64; 2]; 2],
    /// Between the two Team A agents.
    pub team_a: f64,
    /// Between the two Team B agents.
    pub team_b: f64,
}

impl Distances {
    pub fn new(d11: f64, d12: f64, d21: f64, d22: f64, team_a: f64, team_b: f64) -> Self {
        Self { cross: [[d11, d12], [d21, d22]], team_a, team_b }
    }

    /// Distance between `agent` and agent `k` of the opposing team.
    pub fn to_opponent(&self, agent: Agent, k: usize) -> f64 {
        match agent.team {
            Team::A => self.cross[agent.index][k],
            Team::B => self.cross[k][agent.index],
        }
    }

    pub fn within(&self, team: Team) -> f64 {
        match team {
            Team::A => self.team_a,
            Team::B => self.team_b,
        }
    }

    /// Swap team roles: Team B becomes Team A.
    pub fn swapped(&self) -> Self {
        let c = self.cross;
        Self { cross: [[c[0][0], c[1][0]], [c[0][1], c[1][1]]], team_a: self.team_b, team_b: self.team_a }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            ("d11", self.cross[0][0]),
            ("d12", self.cross[0][1]),
            ("d21", self.cross[1][0]),
            ("d22", self.cross[1][1]),
            ("dA", self.team_a),
            ("dB", self.team_b),
        ];
        for (field, d) in all {
            if check_distance(d).is_err() {
                return Err(Error::InvalidScenario { field, reason: "must be a finite distance above 1e-6 m" });
            }
        }
        Ok(())
    }
}

/// Everything about the physical world that the power and modulation
/// games need.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub distances: Distances,
    pub rho_a: f64,
    pub rho_b: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Receiver noise power (W).
    pub noise_power: f64,
    /// Per-agent instantaneous power cap (W).
    pub p_max: f64,
    /// Per-agent energy budget (J).
    pub energy: f64,
    /// Minimum rate each agent must sustain (bits per channel use).
    pub min_rate: f64,
    /// Constellation sizes Team A may choose from (matrix rows).
    pub menu_a: Vec<u32>,
    /// Constellation sizes Team B may choose from (matrix columns).
    pub menu_b: Vec<u32>,
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidScenario { field, reason: "must be positive and finite" })
    }
}

fn check_menu(field: &'static str, menu: &[u32]) -> Result<()> {
    if menu.is_empty() {
        return Err(Error::InvalidScenario { field, reason: "must not be empty" });
    }
    if menu.iter().any(|&m| m < 2) {
        return Err(Error::InvalidScenario { field, reason: "sizes must be at least 2" });
    }
    for (i, m) in menu.iter().enumerate() {
        if menu[..i].contains(m) {
            return Err(Error::InvalidScenario { field, reason: "sizes must be distinct" });
        }
    }
    Ok(())
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.distances.validate()?;
        positive("rho_a", self.rho_a)?;
        positive("rho_b", self.rho_b)?;
        if !(self.alpha >= 1.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidScenario { field: "alpha", reason: "must be at least 1" });
        }
        positive("sigma2", self.noise_power)?;
        positive("p_max", self.p_max)?;
        positive("energy", self.energy)?;
        if !(self.min_rate >= 0.0 && self.min_rate.is_finite()) {
            return Err(Error::InvalidScenario { field: "min_rate", reason: "must be non-negative" });
        }
        check_menu("team_a", &self.menu_a)?;
        check_menu("team_b", &self.menu_b)?;
        Ok(())
    }

    pub fn rho(&self, team: Team) -> f64 {
        match team {
            Team::A => self.rho_a,
            Team::B => self.rho_b,
        }
    }

    pub fn menu(&self, team: Team) -> &[u32] {
        match team {
            Team::A => &self.menu_a,
            Team::B => &self.menu_b,
        }
    }

    pub fn schemes(&self, team: Team) -> Result<Vec<ModulationScheme>> {
        self.menu(team).iter().map(|&m| ModulationScheme::new(m)).collect()
    }

    /// Same world with the team labels exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            distances: self.distances.swapped(),
            rho_a: self.rho_b,
            rho_b: self.rho_a,
            menu_a: self.menu_b.clone(),
            menu_b: self.menu_a.clone(),
            ..self.clone()
        }
    }

    pub fn with_noise_power(&self, noise_power: f64) -> Self {
        Self { noise_power, ..self.clone() }
    }

    pub fn with_distances(&self, distances: Distances) -> Self {
        Self { distances, ..self.clone() }
    }
}

/// The fixed length of the game when every agent transmits at full power:
/// `E / P_max` seconds.
pub fn game_horizon(config: &ScenarioConfig) -> f64 {
    config.energy / config.p_max
}
