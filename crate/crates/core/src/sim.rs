//! Time-stepped runs along a trajectory, and SNR sweeps.

use alloc::vec::Vec;

use crate::comms::check_distance;
use crate::error::{Error, Result};
use crate::exec::{Executor, Sequential};
use crate::matrix::{
    build_payoff_matrix_with, expected_payoff, solve_zero_sum, EquilibriumKind, EquilibriumSolution, PayoffMatrix,
    PayoffOptions,
};
use crate::power::{game_horizon, AllocationProfile, Distances, ScenarioConfig};

/// Where the agents are at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrameGeometry {
    /// Planar coordinates of 1a, 2a, 1b, 2b (m).
    Positions([[f64; 2]; 4]),
    Distances(Distances),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryFrame {
    /// Seconds since the start of the game.
    pub t: f64,
    pub geometry: FrameGeometry,
}

impl TrajectoryFrame {
    pub fn distances(&self) -> Result<Distances> {
        match &self.geometry {
            FrameGeometry::Positions(p) => distances_from_positions(p),
            FrameGeometry::Distances(d) => {
                d.validate()?;
                Ok(*d)
            }
        }
    }
}

/// Pairwise distances of agents at planar positions 1a, 2a, 1b, 2b.
pub fn distances_from_positions(positions: &[[f64; 2]; 4]) -> Result<Distances> {
    if positions.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Domain { what: "position", value: f64::NAN });
    }
    let dist = |i: usize, j: usize| {
        let [x0, y0] = positions[i];
        let [x1, y1] = positions[j];
        let d = libm::hypot(x1 - x0, y1 - y0);
        check_distance(d).map(|_| d)
    };
    Ok(Distances::new(dist(0, 2)?, dist(0, 3)?, dist(1, 2)?, dist(1, 3)?, dist(0, 1)?, dist(2, 3)?))
}

/// One completed time step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub t: f64,
    pub dt: f64,
    /// Team A's constellation size (the most likely one for mixed play).
    pub size_a: u32,
    pub size_b: u32,
    /// Equilibrium outcome rate during the step.
    pub value: f64,
    /// Outcome accumulated up to the end of this step.
    pub pi_cum: f64,
    pub kind: EquilibriumKind,
    /// Every power game behind the step converged.
    pub certified: bool,
    /// The existence condition held for every modulation pair.
    pub existence_certified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeAccumulator {
    /// Total bits transmitted; the outcome scales linearly with it.
    pub bits: f64,
    pub pi: f64,
    pub steps: Vec<StepRecord>,
    /// Time covered so far (s).
    pub elapsed: f64,
    /// `E / P_max`.
    pub horizon: f64,
    /// Energy left per agent (J); the same for all four.
    pub remaining_energy: f64,
    /// The trajectory ended before the horizon.
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimOptions {
    pub payoff: PayoffOptions,
    /// Largest allowed gap between consecutive frames (s).
    pub max_dt: f64,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self { payoff: PayoffOptions::default(), max_dt: f64::INFINITY }
    }
}

fn check_frames(frames: &[TrajectoryFrame], max_dt: f64) -> Result<Vec<Distances>> {
    if frames.is_empty() {
        return Err(Error::InvalidTrajectory { frame: 0, reason: "no frames" });
    }
    if frames[0].t != 0.0 {
        return Err(Error::InvalidTrajectory { frame: 0, reason: "first frame must be at t = 0" });
    }
    let mut out = Vec::with_capacity(frames.len());
    for (k, f) in frames.iter().enumerate() {
        if !f.t.is_finite() {
            return Err(Error::InvalidTrajectory { frame: k, reason: "time is not finite" });
        }
        if k > 0 {
            let gap = f.t - frames[k - 1].t;
            if !(gap > 0.0) {
                return Err(Error::InvalidTrajectory { frame: k, reason: "times must be strictly increasing" });
            }
            if gap > max_dt {
                return Err(Error::InvalidTrajectory { frame: k, reason: "gap to previous frame exceeds max_dt" });
            }
        }
        out.push(f.distances().map_err(|_| Error::InvalidTrajectory {
            frame: k,
            reason: "geometry is not finite or has coincident agents",
        })?);
    }
    Ok(out)
}

/// Value of a solved matrix game: the entry itself for pure play, `x^T A y`
/// otherwise.
fn step_value(a: &PayoffMatrix, eq: &EquilibriumSolution) -> f64 {
    match eq.kind {
        EquilibriumKind::Pure { row, col } => a.value(row, col),
        EquilibriumKind::Mixed => expected_payoff(a, eq.row.weights(), eq.col.weights()),
    }
}

/// Play the nested game along `frames`.
///
/// Frame `k` fixes the geometry on `[t_k, t_{k+1})`; the outcome rate is
/// held constant over each interval. The run stops at the horizon
/// `E / P_max`, or at the last frame if the trajectory ends earlier (then
/// `truncated` is set). Each step's power games start from the previous
/// step's equilibria.
pub fn run_simulation<E: Executor>(
    config: &ScenarioConfig,
    frames: &[TrajectoryFrame],
    bits: f64,
    opts: &SimOptions,
    exec: &E,
) -> Result<OutcomeAccumulator> {
    config.validate()?;
    if !bits.is_finite() {
        return Err(Error::Domain { what: "bit count", value: bits });
    }
    let geometry = check_frames(frames, opts.max_dt)?;
    let horizon = game_horizon(config);
    let mut acc = OutcomeAccumulator {
        bits,
        pi: 0.0,
        steps: Vec::new(),
        elapsed: 0.0,
        horizon,
        remaining_energy: config.energy,
        truncated: false,
    };
    let mut warm: Option<Vec<AllocationProfile>> = None;
    for k in 0..frames.len().saturating_sub(1) {
        let t = frames[k].t;
        if t >= horizon {
            break;
        }
        let end = frames[k + 1].t.min(horizon);
        let dt = end - t;
        let scenario = config.with_distances(geometry[k]);
        let built = build_payoff_matrix_with(&scenario, &opts.payoff, exec, warm.as_deref())?;
        let eq = solve_zero_sum(&built.matrix)?;
        let value = step_value(&built.matrix, &eq);
        let (size_a, size_b) = eq.chosen_labels(&built.matrix);
        acc.pi += bits * value * dt;
        acc.elapsed = end;
        acc.remaining_energy = config.energy - config.p_max * end;
        acc.steps.push(StepRecord {
            t,
            dt,
            size_a,
            size_b,
            value,
            pi_cum: acc.pi,
            kind: eq.kind,
            certified: built.matrix.all_converged(),
            existence_certified: built.matrix.all_existence_certified(),
        });
        warm = Some(built.profiles());
    }
    acc.truncated = acc.elapsed < horizon;
    if acc.truncated {
        acc.remaining_energy = config.energy - config.p_max * acc.elapsed;
    } else {
        acc.remaining_energy = 0.0;
    }
    Ok(acc)
}

/// One point of an SNR sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub size_a: u32,
    pub size_b: u32,
    pub value: f64,
    pub kind: EquilibriumKind,
    pub certified: bool,
    pub existence_certified: bool,
}

/// Noise power giving `P_max / noise = snr` with `snr` in decibels.
pub fn noise_for_snr(p_max: f64, snr_db: f64) -> f64 {
    p_max / libm::pow(10.0, snr_db / 10.0)
}

/// Solve the nested game at each SNR of `snr_db` (decibels).
/// Sweep points run through `exec`; entries within a point run in order.
pub fn snr_sweep<E: Executor>(
    config: &ScenarioConfig,
    snr_db: &[f64],
    opts: &PayoffOptions,
    exec: &E,
) -> Result<Vec<SweepRow>> {
    config.validate()?;
    if let Some(&bad) = snr_db.iter().find(|s| !s.is_finite()) {
        return Err(Error::Domain { what: "SNR (dB)", value: bad });
    }
    let points: Vec<f64> = snr_db.to_vec();
    let rows = exec.map(points, |snr| -> Result<SweepRow> {
        let noise = noise_for_snr(config.p_max, snr);
        if !(noise > 0.0 && noise.is_finite()) {
            return Err(Error::Domain { what: "SNR (dB)", value: snr });
        }
        let scenario = config.with_noise_power(noise);
        let built = build_payoff_matrix_with(&scenario, opts, &Sequential, None)?;
        let eq = solve_zero_sum(&built.matrix)?;
        let (size_a, size_b) = eq.chosen_labels(&built.matrix);
        Ok(SweepRow {
            snr_db: snr,
            size_a,
            size_b,
            value: step_value(&built.matrix, &eq),
            kind: eq.kind,
            certified: built.matrix.all_converged(),
            existence_certified: built.matrix.all_existence_certified(),
        })
    });
    rows.into_iter().collect()
}
