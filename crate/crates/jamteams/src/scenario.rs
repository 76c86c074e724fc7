//! Scenario files in TOML.
//!
//! ```toml
//! [distances]            # or [positions] with 1a, 2a, 1b, 2b = [x, y]
//! d11 = 17.7864
//! d12 = 15.3376
//! d21 = 19.8951
//! d22 = 14.1128
//! dA = 20.6309
//! dB = 26.3224
//!
//! [channel]
//! alpha = 2.0
//! sigma2 = 1e-3
//! rho_a = 0.057          # or a [channel.team_a] table with gain_tx, gain_rx, freq_hz
//! rho_b = 0.0517
//!
//! [power]
//! p_max = 100.0
//! energy = 100.0
//!
//! [rate]
//! min_rate = 1.0
//!
//! [modulation]
//! team_a = [16, 64, 256]
//! team_b = [16, 64, 256]
//! ```

use std::fmt;
use std::ops::Range;

use jamteams_core::comms::antenna_constant;
use jamteams_core::power::{Distances, ScenarioConfig};
use jamteams_core::sim::distances_from_positions;
use jamteams_core::Error as CoreError;
use serde::{Deserialize, Serialize};
use toml::Spanned;

/// A problem in a scenario file, located by key path and line.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioError {
    pub key: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.key.is_empty() {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        } else {
            write!(f, "line {}, column {}: `{}` {}", self.line, self.column, self.key, self.message)
        }
    }
}

impl std::error::Error for ScenarioError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    distances: Option<Spanned<RawDistances>>,
    positions: Option<Spanned<RawPositions>>,
    channel: Spanned<RawChannel>,
    power: RawPower,
    rate: RawRate,
    modulation: RawModulation,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDistances {
    d11: Spanned<f64>,
    d12: Spanned<f64>,
    d21: Spanned<f64>,
    d22: Spanned<f64>,
    #[serde(rename = "dA")]
    team_a: Spanned<f64>,
    #[serde(rename = "dB")]
    team_b: Spanned<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPositions {
    #[serde(rename = "1a")]
    a1: [f64; 2],
    #[serde(rename = "2a")]
    a2: [f64; 2],
    #[serde(rename = "1b")]
    b1: [f64; 2],
    #[serde(rename = "2b")]
    b2: [f64; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannel {
    alpha: Spanned<f64>,
    sigma2: Spanned<f64>,
    rho_a: Option<Spanned<f64>>,
    rho_b: Option<Spanned<f64>>,
    team_a: Option<Spanned<RawAntennas>>,
    team_b: Option<Spanned<RawAntennas>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAntennas {
    gain_tx: f64,
    gain_rx: f64,
    freq_hz: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPower {
    p_max: Spanned<f64>,
    energy: Spanned<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRate {
    min_rate: Spanned<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModulation {
    team_a: Spanned<Vec<u32>>,
    team_b: Spanned<Vec<u32>>,
}

/// 1-based line and column of a byte offset.
fn locate(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

struct Located<'a> {
    text: &'a str,
}

impl Located<'_> {
    fn error(&self, key: &str, span: Range<usize>, message: impl Into<String>) -> ScenarioError {
        let (line, column) = locate(self.text, span.start);
        ScenarioError { key: key.to_owned(), line, column, message: message.into() }
    }
}

/// Parse and validate a scenario.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig, ScenarioError> {
    let at = Located { text };
    let raw: RawScenario = toml::from_str(text).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        at.error("", span, e.message().trim_end().to_owned())
    })?;

    let whole = 0..0;
    let (distances, geometry_span, from_positions) = match (&raw.distances, &raw.positions) {
        (Some(_), Some(p)) => {
            return Err(at.error("positions", p.span(), "cannot be given together with [distances]"));
        }
        (None, None) => return Err(at.error("distances", whole, "missing: give [distances] or [positions]")),
        (Some(d), None) => {
            let r = d.get_ref();
            let dist = Distances::new(
                *r.d11.get_ref(),
                *r.d12.get_ref(),
                *r.d21.get_ref(),
                *r.d22.get_ref(),
                *r.team_a.get_ref(),
                *r.team_b.get_ref(),
            );
            (dist, d.span(), false)
        }
        (None, Some(p)) => {
            let r = p.get_ref();
            let dist = distances_from_positions(&[r.a1, r.a2, r.b1, r.b2])
                .map_err(|e| at.error("positions", p.span(), format!("invalid: {e}")))?;
            (dist, p.span(), true)
        }
    };

    let channel = raw.channel.get_ref();
    let rho = |team: &str, direct: &Option<Spanned<f64>>, gains: &Option<Spanned<RawAntennas>>| match (direct, gains) {
        (Some(_), Some(g)) => Err(at.error(
            &format!("channel.{team}"),
            g.span(),
            format!("cannot be given together with channel.rho_{}", &team[5..]),
        )),
        (None, None) => Err(at.error(
            &format!("channel.rho_{}", &team[5..]),
            raw.channel.span(),
            format!("missing: give rho_{} or a [channel.{team}] table", &team[5..]),
        )),
        (Some(v), None) => Ok(*v.get_ref()),
        (None, Some(g)) => {
            let a = g.get_ref();
            antenna_constant(a.gain_tx, a.gain_rx, a.freq_hz)
                .map_err(|e| at.error(&format!("channel.{team}"), g.span(), format!("invalid: {e}")))
        }
    };
    let rho_a = rho("team_a", &channel.rho_a, &channel.team_a)?;
    let rho_b = rho("team_b", &channel.rho_b, &channel.team_b)?;

    let config = ScenarioConfig {
        distances,
        rho_a,
        rho_b,
        alpha: *channel.alpha.get_ref(),
        noise_power: *channel.sigma2.get_ref(),
        p_max: *raw.power.p_max.get_ref(),
        energy: *raw.power.energy.get_ref(),
        min_rate: *raw.rate.min_rate.get_ref(),
        menu_a: raw.modulation.team_a.get_ref().clone(),
        menu_b: raw.modulation.team_b.get_ref().clone(),
    };

    // Constraint checks live in the core; map its field names back to keys.
    if let Err(CoreError::InvalidScenario { field, reason }) = config.validate() {
        let distance_span = |s: fn(&RawDistances) -> &Spanned<f64>| match &raw.distances {
            Some(d) if !from_positions => s(d.get_ref()).span(),
            _ => geometry_span.clone(),
        };
        let geometry_key = |name: &str| {
            if from_positions {
                "positions".to_owned()
            } else {
                format!("distances.{name}")
            }
        };
        let rho_span = |direct: &Option<Spanned<f64>>, gains: &Option<Spanned<RawAntennas>>| {
            direct.as_ref().map(|v| v.span()).or_else(|| gains.as_ref().map(|g| g.span())).unwrap_or(0..0)
        };
        let (key, span) = match field {
            "d11" => (geometry_key(field), distance_span(|d| &d.d11)),
            "d12" => (geometry_key(field), distance_span(|d| &d.d12)),
            "d21" => (geometry_key(field), distance_span(|d| &d.d21)),
            "d22" => (geometry_key(field), distance_span(|d| &d.d22)),
            "dA" => (geometry_key(field), distance_span(|d| &d.team_a)),
            "dB" => (geometry_key(field), distance_span(|d| &d.team_b)),
            "rho_a" => ("channel.rho_a".to_owned(), rho_span(&channel.rho_a, &channel.team_a)),
            "rho_b" => ("channel.rho_b".to_owned(), rho_span(&channel.rho_b, &channel.team_b)),
            "alpha" => ("channel.alpha".to_owned(), channel.alpha.span()),
            "sigma2" => ("channel.sigma2".to_owned(), channel.sigma2.span()),
            "p_max" => ("power.p_max".to_owned(), raw.power.p_max.span()),
            "energy" => ("power.energy".to_owned(), raw.power.energy.span()),
            "min_rate" => ("rate.min_rate".to_owned(), raw.rate.min_rate.span()),
            "team_a" => ("modulation.team_a".to_owned(), raw.modulation.team_a.span()),
            "team_b" => ("modulation.team_b".to_owned(), raw.modulation.team_b.span()),
            other => (other.to_owned(), 0..0),
        };
        return Err(at.error(&key, span, reason));
    }
    Ok(config)
}

#[derive(Serialize)]
struct DumpScenario {
    distances: DumpDistances,
    channel: DumpChannel,
    power: DumpPower,
    rate: DumpRate,
    modulation: DumpModulation,
}

#[derive(Serialize)]
struct DumpDistances {
    d11: f64,
    d12: f64,
    d21: f64,
    d22: f64,
    #[serde(rename = "dA")]
    team_a: f64,
    #[serde(rename = "dB")]
    team_b: f64,
}

#[derive(Serialize)]
struct DumpChannel {
    alpha: f64,
    sigma2: f64,
    rho_a: f64,
    rho_b: f64,
}

#[derive(Serialize)]
struct DumpPower {
    p_max: f64,
    energy: f64,
}

#[derive(Serialize)]
struct DumpRate {
    min_rate: f64,
}

#[derive(Serialize)]
struct DumpModulation {
    team_a: Vec<u32>,
    team_b: Vec<u32>,
}

/// Canonical TOML for `config`: distances and antenna constants written
/// out directly. Parses back to an identical config.
pub fn dump_scenario(config: &ScenarioConfig) -> String {
    let d = &config.distances;
    let dump = DumpScenario {
        distances: DumpDistances {
            d11: d.cross[0][0],
            d12: d.cross[0][1],
            d21: d.cross[1][0],
            d22: d.cross[1][1],
            team_a: d.team_a,
            team_b: d.team_b,
        },
        channel: DumpChannel { alpha: config.alpha, sigma2: config.noise_power, rho_a: config.rho_a, rho_b: config.rho_b },
        power: DumpPower { p_max: config.p_max, energy: config.energy },
        rate: DumpRate { min_rate: config.min_rate },
        modulation: DumpModulation { team_a: config.menu_a.clone(), team_b: config.menu_b.clone() },
    };
    toml::to_string(&dump).expect("scenario dump is plain tables of numbers")
}
