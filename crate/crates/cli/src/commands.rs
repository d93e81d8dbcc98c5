//! Every command turns a [`RunConfig`] into a [`ResultTable`]. Grid points
//! are evaluated through [`engine::map`], so rows come out in grid order
//! whatever the execution mode.

use std::fmt;
use std::result::Result;
use std::str::FromStr;

use gravent_core::engine::{self, Execution};
use gravent_core::oracles::{self, CoherenceCase};
use gravent_core::prelude::*;

use crate::config::{FieldKind, RunConfig};
use crate::error::CliError;
use crate::table::ResultTable;

/// Periods covered by a time axis when `t_max` is not configured.
pub const DEFAULT_PERIODS: f64 = 2.0;
/// Samples per default time axis; puts phases 0 and π on the grid.
pub const DEFAULT_T_STEPS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig2,
    Fig3a,
    Fig3b,
    Fig5a,
    Fig5b,
}

impl Figure {
    pub const ALL: [Figure; 5] = [Figure::Fig2, Figure::Fig3a, Figure::Fig3b, Figure::Fig5a, Figure::Fig5b];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig3a => "fig3a",
            Figure::Fig3b => "fig3b",
            Figure::Fig5a => "fig5a",
            Figure::Fig5b => "fig5b",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CliError::UnknownFigure(s.to_string()))
    }
}

/// Which phase sets the natural time scale of an axis.
#[derive(Debug, Clone, Copy)]
enum Clock {
    /// `(Δ1 + Δ2) t / ħ`
    Entangling,
    /// `Δ3 t / ħ`
    Teleport,
    /// Whichever of the two is slower.
    Both,
}

fn time_axis(cfg: &RunConfig, p: &PhaseSet, clock: Clock, default_steps: usize) -> Result<Vec<f64>, CliError> {
    let t_max = match cfg.t_max {
        Some(t) => t,
        None => {
            let period = match clock {
                Clock::Entangling => p.entangling_period(),
                Clock::Teleport => p.teleport_period(),
                Clock::Both => p.entangling_period().max(p.teleport_period()),
            };
            if !period.is_finite() {
                return Err(CliError::Domain {
                    field: "t_max",
                    line: None,
                    message: "phase gap is zero, so there is no natural period; set t_max".into(),
                });
            }
            cfg.t_min + DEFAULT_PERIODS * period
        }
    };
    Ok(engine::linspace(cfg.t_min, t_max, cfg.t_steps.unwrap_or(default_steps)))
}

fn k_axis(cfg: &RunConfig, default_steps: usize) -> Vec<f64> {
    engine::linspace(cfg.k_min, cfg.k_max, cfg.k_steps.unwrap_or(default_steps))
}

fn tabulate<T, F>(columns: &[&str], points: &[T], exec: Execution, f: F) -> Result<ResultTable, CliError>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<f64>, CliError> + Sync + Send,
{
    let mut table = ResultTable::new(columns);
    for row in engine::map(points, exec, f) {
        table.push(row?)?;
    }
    Ok(table)
}

/// One row: the branch energies and the phase gaps.
pub fn cmd_phases(cfg: &RunConfig) -> Result<ResultTable, CliError> {
    let g = cfg.gravity()?;
    let h = pair_potentials(&g)?;
    let p = phase_gaps(&g)?;
    let mut table = ResultTable::new(&["h00", "h01", "h10", "delta1", "delta2", "delta3"]);
    table.push(vec![h.h00, h.h01, h.h10, p.delta1, p.delta2, p.delta3])?;
    Ok(table)
}

/// Mutual information and coherence of the configured state and field over
/// the time axis.
pub fn cmd_evolve(cfg: &RunConfig, exec: Execution) -> Result<ResultTable, CliError> {
    let p = cfg.phases()?;
    let field = cfg.field_model()?;
    let s = cfg.state;
    let times = time_axis(cfg, &p, Clock::Entangling, DEFAULT_T_STEPS)?;
    tabulate(
        &[
            "t",
            "phase",
            "mutual_info",
            "mutual_info_oracle",
            "coherence",
            "coherence_oracle",
        ],
        &times,
        exec,
        |&t| {
            let rho = evolve(&s, &p, t, &field)?.rho;
            Ok(vec![
                t,
                p.angle3(t),
                mutual_information(&rho)?,
                oracles::mutual_info_closed(&s, &p, t, &field)?,
                l1_coherence(&rho)?,
                oracles::coherence_general(&s, &field),
            ])
        },
    )
}

pub fn cmd_figure(fig: Figure, cfg: &RunConfig, exec: Execution) -> Result<ResultTable, CliError> {
    let p = cfg.phases()?;
    match fig {
        Figure::Fig2 => {
            let s = PureBipartiteState::uniform_product();
            let times = time_axis(cfg, &p, Clock::Entangling, DEFAULT_T_STEPS)?;
            tabulate(
                &["t", "phase", "entangling_phase", "value", "oracle"],
                &times,
                exec,
                |&t| {
                    let rho = evolve_separable(&s, &p, t).rho;
                    Ok(vec![
                        t,
                        p.angle3(t),
                        p.entangling_angle(t),
                        mutual_information(&rho)?,
                        oracles::separable_mutual_info(&s, &p, t)?,
                    ])
                },
            )
        }
        Figure::Fig3a | Figure::Fig3b => {
            let (s, case) = if fig == Figure::Fig3a {
                (PureBipartiteState::uniform_product(), CoherenceCase::UniformProduct)
            } else {
                (PureBipartiteState::bell(), CoherenceCase::Bell)
            };
            let reduction = cfg.reduction;
            let t = cfg.t_min;
            let ks = k_axis(cfg, 101);
            tabulate(
                &["k", "value", "oracle", "coherence", "coherence_oracle"],
                &ks,
                exec,
                |&k| {
                    let kc = Complex64::new(k, 0.0);
                    let rho = evolve_overlap(&s, &p, t, kc, reduction)?.rho;
                    let (mi_oracle, coh_oracle) = match (reduction, case) {
                        (Reduction::PaperLiteral, CoherenceCase::UniformProduct) => {
                            (oracles::igd_closed(k), oracles::coherence_closed(case, k))
                        }
                        (Reduction::PaperLiteral, CoherenceCase::Bell) => {
                            (oracles::igb_closed(k), oracles::coherence_closed(case, k))
                        }
                        (Reduction::GramTrace, _) => (
                            oracles::overlap_mutual_info(&s, kc, reduction),
                            oracles::coherence_general(&s, &FieldModel::Overlap { k: kc, reduction }),
                        ),
                    };
                    Ok(vec![
                        k,
                        mutual_information(&rho)?,
                        mi_oracle,
                        l1_coherence(&rho)?,
                        coh_oracle,
                    ])
                },
            )
        }
        Figure::Fig5a => {
            let times = time_axis(cfg, &p, Clock::Teleport, DEFAULT_T_STEPS)?;
            let method = cfg.averaging;
            tabulate(&["t", "phase", "value", "oracle"], &times, exec, |&t| {
                let field = FieldModel::Separable;
                Ok(vec![
                    t,
                    p.angle3(t),
                    averaged_fidelity(&p, t, &field, method)?.fbar,
                    oracles::fbar_closed(t, &p, &field),
                ])
            })
        }
        Figure::Fig5b => {
            let times = time_axis(cfg, &p, Clock::Teleport, DEFAULT_T_STEPS)?;
            let grid = engine::cartesian(&times, &k_axis(cfg, 11));
            let (method, reduction) = (cfg.averaging, cfg.reduction);
            tabulate(&["t", "phase", "k", "value", "oracle"], &grid, exec, |&(t, k)| {
                let field = FieldModel::overlap(Complex64::new(k, 0.0), reduction)?;
                Ok(vec![
                    t,
                    p.angle3(t),
                    k,
                    averaged_fidelity(&p, t, &field, method)?.fbar,
                    oracles::fbar_closed(t, &p, &field),
                ])
            })
        }
    }
}

/// Cartesian `(t, k)` sweep, `t` major. The `k` axis replaces the real part
/// of the overlap and is ignored by the separable and orthogonal fields.
pub fn cmd_sweep(cfg: &RunConfig, exec: Execution) -> Result<ResultTable, CliError> {
    let p = cfg.phases()?;
    let times = time_axis(cfg, &p, Clock::Both, 21)?;
    let grid = engine::cartesian(&times, &k_axis(cfg, 11));
    let s = cfg.state;
    tabulate(
        &[
            "t",
            "phase",
            "k",
            "mutual_info",
            "mutual_info_oracle",
            "coherence",
            "coherence_oracle",
            "fbar",
            "fbar_oracle",
        ],
        &grid,
        exec,
        |&(t, k)| {
            let field = cfg.field_model_at(k)?;
            let rho = evolve(&s, &p, t, &field)?.rho;
            Ok(vec![
                t,
                p.angle3(t),
                k,
                mutual_information(&rho)?,
                oracles::mutual_info_closed(&s, &p, t, &field)?,
                l1_coherence(&rho)?,
                oracles::coherence_general(&s, &field),
                averaged_fidelity(&p, t, &field, cfg.averaging)?.fbar,
                oracles::fbar_closed(t, &p, &field),
            ])
        },
    )
}

/// All four measurement branches for the configured input qubit, at each
/// time on the axis (just `t_min` unless `t_steps` is set).
pub fn cmd_teleport(cfg: &RunConfig, exec: Execution) -> Result<ResultTable, CliError> {
    let p = cfg.phases()?;
    let field = cfg.field_model()?;
    let q = UnknownQubit::new(cfg.theta, cfg.phi).map_err(|e| CliError::Validation {
        field: "theta",
        line: None,
        message: e.to_string(),
    })?;
    let times = time_axis(cfg, &p, Clock::Teleport, 1)?;
    let branches: Vec<(f64, u8)> = times.iter().flat_map(|&t| (0..4u8).map(move |o| (t, o))).collect();
    let oracle_field = match cfg.field {
        // the circuit treats fully distinguishable fields as k = 0
        FieldKind::Orthogonal => FieldModel::overlap(Complex64::new(0.0, 0.0), cfg.reduction)?,
        _ => field,
    };
    tabulate(
        &[
            "t",
            "phase",
            "outcome",
            "m1",
            "m2",
            "probability",
            "fidelity",
            "fidelity_oracle",
        ],
        &branches,
        exec,
        |&(t, o)| {
            let b = run_teleport(&q, &p, t, &field, o)?;
            Ok(vec![
                t,
                p.angle3(t),
                o as f64,
                (o >> 1) as f64,
                (o & 1) as f64,
                b.probability,
                branch_fidelity(&q, &b)?,
                oracles::fidelity_closed(q.theta(), t, &p, &oracle_field),
            ])
        },
    )
}
