//! Exact best responses via enumeration of the KKT candidates.
//!
//! An agent's feasible set is the triangle `comm + jam[0] + jam[1] = 1`,
//! all shares non-negative and `comm >= floor`. Every share has negative
//! marginal cost, so the optimum is one of: a vertex of the triangle, a
//! stationary point on one of its three edges, or a stationary point of the
//! interior where all three marginal costs agree.

use alloc::vec::Vec;

use crate::comms::ModulationScheme;
use crate::error::{Error, Result};
use crate::root::{bisect, first_root, scan_roots, EDGE_SCAN_POINTS};

use super::coeffs::{coefficients, rate_floor, BestResponseCoefficients};
use super::profile::{Allocation, AllocationProfile};
use super::scenario::{Agent, ScenarioConfig, Team};

const INTERIOR_OUTER_POINTS: usize = 64;
const INTERIOR_INNER_POINTS: usize = 32;
const FALLBACK_GRID: usize = 200;

/// Which face of the feasible triangle a best response came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CandidateKind {
    Vertex,
    /// Communication share pinned at the rate floor.
    EdgeRateFloor,
    /// No power on the first opposing agent.
    EdgeNoFirstJam,
    /// No power on the second opposing agent.
    EdgeNoSecondJam,
    Interior,
}

impl CandidateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CandidateKind::Vertex => "vertex",
            CandidateKind::EdgeRateFloor => "edge-rate-floor",
            CandidateKind::EdgeNoFirstJam => "edge-no-first-jam",
            CandidateKind::EdgeNoSecondJam => "edge-no-second-jam",
            CandidateKind::Interior => "interior",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchDiagnostics {
    pub candidates: usize,
    /// Edges whose stationarity equation had no bracketed root.
    pub edges_without_root: u8,
    /// The interior grid search ran because no candidate was first-order optimal.
    pub interior_fallback: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestResponseSolution {
    pub allocation: Allocation,
    pub kind: CandidateKind,
    /// The agent's part of the outcome (minimized by Team A, maximized by Team B).
    pub objective: f64,
    /// Lowest admissible communication share.
    pub comm_floor: f64,
    pub coefficients: BestResponseCoefficients,
    pub diagnostics: SearchDiagnostics,
}

/// One agent's problem written as a minimization for either team.
struct AgentProblem<'a> {
    coef: BestResponseCoefficients,
    own: &'a ModulationScheme,
    opp: &'a ModulationScheme,
}

impl AgentProblem<'_> {
    /// Own link BER minus the BER at both opposing receivers.
    fn cost(&self, a: &Allocation) -> f64 {
        self.own.ber_unchecked(self.coef.comm_sinr(a.comm))
            - self.opp.ber_unchecked(self.coef.victim_sinr(0, a.jam[0]))
            - self.opp.ber_unchecked(self.coef.victim_sinr(1, a.jam[1]))
    }

    /// d cost / d comm.
    fn comm_slope(&self, comm: f64) -> f64 {
        if comm <= 0.0 {
            return f64::NEG_INFINITY;
        }
        self.own.scaled_slope(self.coef.comm_sinr(comm)) / comm
    }

    /// d cost / d jam[k].
    fn jam_slope(&self, k: usize, jam: f64) -> f64 {
        let s = self.coef.victim_sinr(k, jam);
        self.opp.scaled_slope(s) / (self.coef.victim_offset[k] + jam)
    }

    /// Most negative directional derivative over feasible transfers of
    /// power between two shares, relative to the slope magnitudes. A
    /// non-negative value means `a` satisfies the KKT conditions.
    fn first_order_gap(&self, a: &Allocation, floor: f64) -> f64 {
        let shares = a.to_array();
        let slopes = [self.comm_slope(a.comm), self.jam_slope(0, a.jam[0]), self.jam_slope(1, a.jam[1])];
        let lower = [floor, 0.0, 0.0];
        let scale = slopes.iter().filter(|s| s.is_finite()).fold(0.0f64, |m, s| m.max(s.abs())) + 1e-300;
        let mut gap = f64::INFINITY;
        for from in 0..3 {
            if shares[from] <= lower[from] + 1e-12 {
                continue;
            }
            for to in 0..3 {
                if to != from {
                    gap = gap.min((slopes[to] - slopes[from]) / scale);
                }
            }
        }
        gap
    }
}

/// Best reply of `agent` when the other three agents play as in `others`.
pub fn best_response(
    agent: Agent,
    config: &ScenarioConfig,
    others: &AllocationProfile,
    scheme_a: &ModulationScheme,
    scheme_b: &ModulationScheme,
) -> Result<BestResponseSolution> {
    let coef = coefficients(agent, config, others);
    let (own, opp) = match agent.team {
        Team::A => (scheme_a, scheme_b),
        Team::B => (scheme_b, scheme_a),
    };
    let problem = AgentProblem { coef, own, opp };
    let floor = rate_floor(coef.comm_gain, config.min_rate);
    let spare = 1.0 - floor;

    let mut diagnostics = SearchDiagnostics::default();
    let mut candidates: Vec<(Allocation, CandidateKind)> = Vec::new();
    candidates.push((Allocation::ALL_COMM, CandidateKind::Vertex));

    if spare > 0.0 {
        candidates.push((Allocation { comm: floor, jam: [spare, 0.0] }, CandidateKind::Vertex));
        candidates.push((Allocation { comm: floor, jam: [0.0, spare] }, CandidateKind::Vertex));

        // comm pinned at the floor, power traded between the two jammed receivers
        let roots = scan_roots(
            |t| problem.jam_slope(0, t) - problem.jam_slope(1, spare - t),
            0.0,
            spare,
            EDGE_SCAN_POINTS,
        );
        if roots.is_empty() {
            diagnostics.edges_without_root += 1;
        }
        for t in roots {
            candidates.push((Allocation { comm: floor, jam: [t, spare - t] }, CandidateKind::EdgeRateFloor));
        }

        // one jamming share at zero, power traded between comm and the other
        for (k, kind) in [(1usize, CandidateKind::EdgeNoFirstJam), (0usize, CandidateKind::EdgeNoSecondJam)] {
            let roots = scan_roots(
                |t| problem.comm_slope(1.0 - t) - problem.jam_slope(k, t),
                0.0,
                spare,
                EDGE_SCAN_POINTS,
            );
            if roots.is_empty() {
                diagnostics.edges_without_root += 1;
            }
            for t in roots {
                let mut jam = [0.0; 2];
                jam[k] = t;
                candidates.push((Allocation { comm: 1.0 - t, jam }, kind));
            }
        }

        if let Some(a) = interior_stationary_point(&problem, spare) {
            candidates.push((a, CandidateKind::Interior));
        }
    }

    let mut best: Option<(Allocation, CandidateKind, f64)> = None;
    for (a, kind) in candidates.iter().copied() {
        let feasible = a.comm >= floor - 1e-15 && a.jam.iter().all(|&j| j >= 0.0);
        if !feasible {
            continue;
        }
        diagnostics.candidates += 1;
        let c = problem.cost(&a);
        if c.is_nan() {
            continue;
        }
        if best.is_none_or(|(_, _, bc)| c < bc) {
            best = Some((a, kind, c));
        }
    }
    let (mut allocation, mut kind, mut cost) = best.ok_or(Error::Internal("no feasible best-response candidate"))?;

    if spare > 0.0 && problem.first_order_gap(&allocation, floor) < -1e-6 {
        diagnostics.interior_fallback = true;
        let (a, c) = grid_refine(&problem, floor);
        if c < cost {
            allocation = a;
            kind = CandidateKind::Interior;
            cost = c;
        }
    }

    let objective = match agent.team {
        Team::A => cost,
        Team::B => -cost,
    };
    Ok(BestResponseSolution { allocation, kind, objective, comm_floor: floor, coefficients: coef, diagnostics })
}

/// Interior point where the three marginal costs agree, by nested
/// bisection: for each first jamming share the second one balances comm
/// against the second victim, and the outer search balances comm against
/// the first victim.
fn interior_stationary_point(problem: &AgentProblem<'_>, spare: f64) -> Option<Allocation> {
    let inner = |x: f64| {
        first_root(
            |y| problem.comm_slope(1.0 - x - y) - problem.jam_slope(1, y),
            0.0,
            spare - x,
            INTERIOR_INNER_POINTS,
        )
    };
    let outer = |x: f64| inner(x).map(|y| (problem.comm_slope(1.0 - x - y) - problem.jam_slope(0, x), y));

    let pad = 1e-13;
    let n = INTERIOR_OUTER_POINTS - 1;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let x = match i {
            0 => pad,
            _ if i == n => spare - pad,
            _ => spare * i as f64 / n as f64,
        };
        let Some((g, _)) = outer(x) else {
            prev = None;
            continue;
        };
        if g == 0.0 {
            return finish_interior(x, inner(x)?);
        }
        if let Some((px, pg)) = prev {
            if (pg < 0.0) != (g < 0.0) {
                // bisect on x; if the inner root vanishes mid-bracket give up on it
                let mut lost = false;
                let x_star = bisect(
                    |x| match outer(x) {
                        Some((g, _)) => g,
                        None => {
                            lost = true;
                            0.0
                        }
                    },
                    px,
                    x,
                    pg,
                );
                if !lost {
                    return finish_interior(x_star, inner(x_star)?);
                }
            }
        }
        prev = Some((x, g));
    }
    None
}

fn finish_interior(x: f64, y: f64) -> Option<Allocation> {
    let comm = 1.0 - x - y;
    (comm > 0.0).then_some(Allocation { comm, jam: [x, y] })
}

/// Brute-force search of the feasible triangle on a regular grid, then a
/// few rounds of zooming in around the best node.
fn grid_refine(problem: &AgentProblem<'_>, floor: f64) -> (Allocation, f64) {
    let spare = 1.0 - floor;
    let at = |x: f64, y: f64| {
        let x = x.clamp(0.0, spare);
        let y = y.clamp(0.0, spare - x);
        Allocation { comm: 1.0 - x - y, jam: [x, y] }
    };
    let mut best = (Allocation { comm: floor, jam: [spare, 0.0] }, f64::INFINITY);
    let n = FALLBACK_GRID;
    for i in 0..=n {
        for j in 0..=(n - i) {
            let a = at(spare * i as f64 / n as f64, spare * j as f64 / n as f64);
            let c = problem.cost(&a);
            if c < best.1 {
                best = (a, c);
            }
        }
    }
    let mut cell = spare / n as f64;
    for _ in 0..6 {
        let (centre, _) = best;
        for i in -10i32..=10 {
            for j in -10i32..=10 {
                let x = centre.jam[0] + cell * i as f64 / 10.0;
                let y = centre.jam[1] + cell * j as f64 / 10.0;
                if x < 0.0 || y < 0.0 || x + y > spare {
                    continue;
                }
                let a = at(x, y);
                let c = problem.cost(&a);
                if c < best.1 {
                    best = (a, c);
                }
            }
        }
        cell /= 10.0;
    }
    best
}
