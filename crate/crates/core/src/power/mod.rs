//! The continuous-kernel power-allocation game for one pair of
//! constellation sizes.

mod best_response;
mod certificate;
mod coeffs;
mod profile;
mod scenario;
mod solve;

pub use best_response::{best_response, BestResponseSolution, CandidateKind, SearchDiagnostics};
pub use certificate::{pssge_condition, ExistenceCertificate};
pub use coeffs::{coefficients, rate_floor, BestResponseCoefficients};
pub use profile::{agent_objective, link_sinrs, outcome, Allocation, AllocationProfile, LinkSinrs, SIMPLEX_TOLERANCE};
pub use scenario::{game_horizon, Agent, Distances, ScenarioConfig, Team};
pub use solve::{solve_power_game, solve_power_game_from, PowerGameOptions, PowerGameResult};
