use crate::comms::ModulationScheme;
use crate::error::{Error, Result};

use super::best_response::best_response;
use super::certificate::pssge_condition;
use super::profile::{outcome, AllocationProfile};
use super::scenario::{Agent, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerGameOptions {
    /// Stop once no fraction moves by more than this in a full sweep.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Weight of the best response in each update, in (0, 1].
    pub damping: f64,
}

impl Default for PowerGameOptions {
    fn default() -> Self {
        Self { tolerance: 1e-8, max_iterations: 500, damping: 1.0 }
    }
}

impl PowerGameOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Precondition("tolerance must be positive"));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::Precondition("damping must lie in (0, 1]"));
        }
        if self.max_iterations == 0 {
            return Err(Error::Precondition("max_iterations must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerGameResult {
    pub profile: AllocationProfile,
    /// Outcome `p^a_1 + p^a_2 - p^b_1 - p^b_2` at `profile`.
    pub value: f64,
    pub converged: bool,
    /// Completed sweeps.
    pub iterations: usize,
    /// Largest change of any fraction during the last sweep.
    pub residual: f64,
    /// The sufficient condition for a unique pure saddle point holds.
    pub existence_certified: bool,
}

/// Gauss-Seidel best-response iteration from the uniform profile.
pub fn solve_power_game(
    config: &ScenarioConfig,
    scheme_a: &ModulationScheme,
    scheme_b: &ModulationScheme,
    opts: &PowerGameOptions,
) -> Result<PowerGameResult> {
    solve_power_game_from(config, scheme_a, scheme_b, opts, &AllocationProfile::uniform())
}

/// Gauss-Seidel best-response iteration from `initial`.
///
/// Agents update in the order 1a, 1b, 2a, 2b; each moves to
/// `(1 - damping) * old + damping * best_response`. Hitting the iteration
/// cap is not an error: the last iterate comes back with `converged` unset.
pub fn solve_power_game_from(
    config: &ScenarioConfig,
    scheme_a: &ModulationScheme,
    scheme_b: &ModulationScheme,
    opts: &PowerGameOptions,
    initial: &AllocationProfile,
) -> Result<PowerGameResult> {
    config.validate()?;
    opts.validate()?;
    let mut profile = *initial;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        let before = profile;
        for agent in Agent::SWEEP_ORDER {
            let br = best_response(agent, config, &profile, scheme_a, scheme_b)?;
            let next = if opts.damping == 1.0 {
                br.allocation
            } else {
                // the blend can dip below a floor that moved with the opponents
                profile.get(agent).blend(&br.allocation, opts.damping).lift_comm(br.comm_floor)
            };
            profile.set(agent, next);
        }
        iterations += 1;
        residual = profile.max_abs_diff(&before);
        if residual <= opts.tolerance {
            converged = true;
            break;
        }
    }
    Ok(PowerGameResult {
        profile,
        value: outcome(config, scheme_a, scheme_b, &profile),
        converged,
        iterations,
        residual,
        existence_certified: pssge_condition(config, scheme_a, scheme_b).holds,
    })
}
