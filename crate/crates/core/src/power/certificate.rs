use crate::comms::ModulationScheme;

use super::scenario::ScenarioConfig;

/// Sufficient condition for a unique pure saddle point of the power game:
/// `P_max * max(rho_a dA^-alpha / (Ma - 1), rho_b dB^-alpha / (Mb - 1)) < sigma^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExistenceCertificate {
    pub holds: bool,
    /// Left-hand side (W).
    pub lhs: f64,
    /// Noise power (W).
    pub rhs: f64,
    /// For equal constellation sizes the condition reads
    /// `log2(M) > min_rate_threshold`; `None` when the sizes differ.
    pub min_rate_threshold: Option<f64>,
}

pub fn pssge_condition(config: &ScenarioConfig, scheme_a: &ModulationScheme, scheme_b: &ModulationScheme) -> ExistenceCertificate {
    let alpha = config.alpha;
    let gain_a = config.rho_a * libm::pow(config.distances.team_a, -alpha);
    let gain_b = config.rho_b * libm::pow(config.distances.team_b, -alpha);
    let lhs = config.p_max
        * f64::max(
            gain_a / (scheme_a.size() as f64 - 1.0),
            gain_b / (scheme_b.size() as f64 - 1.0),
        );
    let rhs = config.noise_power;
    let min_rate_threshold = (scheme_a.size() == scheme_b.size())
        .then(|| libm::log2(1.0 + config.p_max * gain_a.max(gain_b) / rhs));
    ExistenceCertificate { holds: lhs < rhs, lhs, rhs, min_rate_threshold }
}
