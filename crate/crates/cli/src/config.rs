//! Flat `key = value` run configuration.
//!
//! ```text
//! # two unit masses, Bell state, fields fully overlapping
//! mass_a = 1
//! mass_b = 1
//! dist_d = 2
//! dist_l = 1
//! state  = bell
//! field  = overlap
//! k_re   = 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Every key may appear
//! at most once. Anything left unset takes the default in [`RunConfig::default`].

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::result::Result;

use gravent_core::gravity::{G_SI, HBAR_SI};
use gravent_core::prelude::*;

use crate::error::CliError;

/// Largest accepted deviation of `Σ|amplitude|²` from one before the state
/// is renormalised.
pub const STATE_NORM_TOL: f64 = 1e-6;

/// Rounding allowance on `|k| ≤ 1`, matching the model's own check.
const OVERLAP_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldKind {
    #[default]
    Separable,
    Orthogonal,
    Overlap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub units: Units,
    pub g: f64,
    pub hbar: f64,
    pub mass_a: f64,
    pub mass_b: f64,
    pub dist_d: f64,
    pub dist_l: f64,
    pub state: PureBipartiteState,
    pub field: FieldKind,
    pub k_re: f64,
    pub k_im: f64,
    pub reduction: Reduction,
    pub averaging: AveragingMethod,
    pub t_min: f64,
    /// `None` lets each command pick a span of whole periods.
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub k_min: f64,
    pub k_max: f64,
    pub k_steps: Option<usize>,
    /// Input qubit on the Bloch sphere for `teleport`.
    pub theta: f64,
    pub phi: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            units: Units::Dimensionless,
            g: 1.0,
            hbar: 1.0,
            mass_a: 1.0,
            mass_b: 1.0,
            dist_d: 2.0,
            dist_l: 1.0,
            state: PureBipartiteState::bell(),
            field: FieldKind::Separable,
            k_re: 0.0,
            k_im: 0.0,
            reduction: Reduction::PaperLiteral,
            averaging: AveragingMethod::Analytic,
            t_min: 0.0,
            t_max: None,
            t_steps: None,
            k_min: 0.0,
            k_max: 1.0,
            k_steps: None,
            theta: std::f64::consts::FRAC_PI_2,
            phi: 0.0,
            output: None,
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    pub fn gravity(&self) -> Result<GravityConfig, CliError> {
        GravityConfig::new(
            self.units,
            self.mass_a,
            self.mass_b,
            self.dist_d,
            self.dist_l,
            self.g,
            self.hbar,
        )
        .map_err(CliError::from)
    }

    pub fn phases(&self) -> Result<PhaseSet, CliError> {
        Ok(phase_gaps(&self.gravity()?)?)
    }

    pub fn overlap(&self) -> Complex64 {
        Complex64::new(self.k_re, self.k_im)
    }

    /// The configured field with the configured overlap.
    pub fn field_model(&self) -> Result<FieldModel, CliError> {
        self.field_model_at(self.k_re)
    }

    /// The configured field with the real part of the overlap replaced.
    pub fn field_model_at(&self, k_re: f64) -> Result<FieldModel, CliError> {
        Ok(match self.field {
            FieldKind::Separable => FieldModel::Separable,
            FieldKind::Orthogonal => FieldModel::Orthogonal,
            FieldKind::Overlap => FieldModel::overlap(Complex64::new(k_re, self.k_im), self.reduction)?,
        })
    }
}

struct Entry {
    line: usize,
    value: String,
}

const KEYS: &[&str] = &[
    "units",
    "g",
    "hbar",
    "mass_a",
    "mass_b",
    "dist_d",
    "dist_l",
    "state",
    "field",
    "k_re",
    "k_im",
    "reduction",
    "averaging",
    "t_min",
    "t_max",
    "t_steps",
    "k_min",
    "k_max",
    "k_steps",
    "theta",
    "phi",
    "output",
    "format",
];

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let mut entries: BTreeMap<&str, Entry> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| CliError::Parse {
            line,
            message: format!("expected `key = value`, found `{content}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let Some(&known) = KEYS.iter().find(|&&k| k == key) else {
            return Err(CliError::Parse {
                line,
                message: format!("unknown key `{key}`"),
            });
        };
        if value.is_empty() {
            return Err(CliError::Parse {
                line,
                message: format!("`{key}` has no value"),
            });
        }
        if let Some(prev) = entries.get(known) {
            return Err(CliError::Parse {
                line,
                message: format!("duplicate key `{key}` (first set on line {})", prev.line),
            });
        }
        entries.insert(
            known,
            Entry {
                line,
                value: value.to_string(),
            },
        );
    }
    build(&entries)
}

fn invalid(field: &'static str, line: Option<usize>, message: impl Into<String>) -> CliError {
    CliError::Validation {
        field,
        line,
        message: message.into(),
    }
}

fn real(entries: &BTreeMap<&str, Entry>, key: &'static str) -> Result<Option<f64>, CliError> {
    let Some(e) = entries.get(key) else {
        return Ok(None);
    };
    let x: f64 = e
        .value
        .parse()
        .map_err(|_| invalid(key, Some(e.line), format!("`{}` is not a number", e.value)))?;
    if !x.is_finite() {
        return Err(invalid(key, Some(e.line), "must be finite"));
    }
    Ok(Some(x))
}

fn count(entries: &BTreeMap<&str, Entry>, key: &'static str) -> Result<Option<usize>, CliError> {
    let Some(e) = entries.get(key) else {
        return Ok(None);
    };
    match e.value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(Some(n)),
        _ => Err(invalid(
            key,
            Some(e.line),
            format!("`{}` is not a positive integer", e.value),
        )),
    }
}

fn choice<T: Copy>(
    entries: &BTreeMap<&str, Entry>,
    key: &'static str,
    options: &[(&str, T)],
) -> Result<Option<T>, CliError> {
    let Some(e) = entries.get(key) else {
        return Ok(None);
    };
    let wanted = e.value.to_ascii_lowercase();
    match options.iter().find(|(name, _)| *name == wanted) {
        Some(&(_, v)) => Ok(Some(v)),
        None => {
            let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
            Err(invalid(
                key,
                Some(e.line),
                format!("`{}` is not one of {}", e.value, names.join(", ")),
            ))
        }
    }
}

fn line_of(entries: &BTreeMap<&str, Entry>, key: &str) -> Option<usize> {
    entries.get(key).map(|e| e.line)
}

/// `bell`, `uniform`, a basis label `00`..`11`, or four `re,im` pairs
/// separated by `;`.
fn parse_state(value: &str, line: usize) -> Result<PureBipartiteState, CliError> {
    match value.to_ascii_lowercase().as_str() {
        "bell" => return Ok(PureBipartiteState::bell()),
        "uniform" => return Ok(PureBipartiteState::uniform_product()),
        "00" => return Ok(PureBipartiteState::basis(0)),
        "01" => return Ok(PureBipartiteState::basis(1)),
        "10" => return Ok(PureBipartiteState::basis(2)),
        "11" => return Ok(PureBipartiteState::basis(3)),
        _ => {}
    }
    let bad = |msg: String| invalid("state", Some(line), msg);
    let parts: Vec<&str> = value.split(';').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(bad(format!(
            "expected a preset or four `re,im` pairs separated by `;`, found {} part(s)",
            parts.len()
        )));
    }
    let mut amps = [Complex64::new(0.0, 0.0); 4];
    for (slot, part) in amps.iter_mut().zip(&parts) {
        let (re, im) = part.split_once(',').unwrap_or((part, "0"));
        let re: f64 = re
            .trim()
            .parse()
            .map_err(|_| bad(format!("`{part}` is not a complex pair")))?;
        let im: f64 = im
            .trim()
            .parse()
            .map_err(|_| bad(format!("`{part}` is not a complex pair")))?;
        *slot = Complex64::new(re, im);
    }
    let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > STATE_NORM_TOL {
        return Err(bad(format!("amplitudes are not normalised (Σ|a|² = {norm_sqr})")));
    }
    PureBipartiteState::normalized(amps).map_err(|e| bad(e.to_string()))
}

fn build(entries: &BTreeMap<&str, Entry>) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();

    if let Some(units) = choice(
        entries,
        "units",
        &[("dimensionless", Units::Dimensionless), ("si", Units::Si)],
    )? {
        cfg.units = units;
        if units == Units::Si {
            cfg.g = G_SI;
            cfg.hbar = HBAR_SI;
        }
    }
    for (key, slot) in [
        ("g", &mut cfg.g),
        ("hbar", &mut cfg.hbar),
        ("mass_a", &mut cfg.mass_a),
        ("mass_b", &mut cfg.mass_b),
        ("dist_d", &mut cfg.dist_d),
        ("dist_l", &mut cfg.dist_l),
    ] {
        if let Some(x) = real(entries, key)? {
            if x <= 0.0 {
                return Err(invalid(key, line_of(entries, key), "must be positive"));
            }
            *slot = x;
        }
    }
    if cfg.dist_d <= cfg.dist_l {
        let line = line_of(entries, "dist_d").or(line_of(entries, "dist_l"));
        return Err(CliError::Domain {
            field: "dist_d",
            line,
            message: format!("d must exceed L (d = {}, L = {})", cfg.dist_d, cfg.dist_l),
        });
    }

    if let Some(e) = entries.get("state") {
        cfg.state = parse_state(&e.value, e.line)?;
    }
    if let Some(f) = choice(
        entries,
        "field",
        &[
            ("separable", FieldKind::Separable),
            ("orthogonal", FieldKind::Orthogonal),
            ("overlap", FieldKind::Overlap),
        ],
    )? {
        cfg.field = f;
    }
    cfg.k_re = real(entries, "k_re")?.unwrap_or(0.0);
    cfg.k_im = real(entries, "k_im")?.unwrap_or(0.0);
    let magnitude = cfg.overlap().norm();
    if magnitude > 1.0 + OVERLAP_SLACK {
        return Err(CliError::Domain {
            field: "k_re",
            line: line_of(entries, "k_re").or(line_of(entries, "k_im")),
            message: format!("overlap magnitude > 1 (|k| = {magnitude})"),
        });
    }
    if let Some(r) = choice(
        entries,
        "reduction",
        &[("paper", Reduction::PaperLiteral), ("gram", Reduction::GramTrace)],
    )? {
        cfg.reduction = r;
    }
    if let Some(a) = choice(
        entries,
        "averaging",
        &[
            ("analytic", AveragingMethod::Analytic),
            ("quadrature", AveragingMethod::Quadrature),
        ],
    )? {
        cfg.averaging = a;
    }

    cfg.t_min = real(entries, "t_min")?.unwrap_or(0.0);
    cfg.t_max = real(entries, "t_max")?;
    cfg.t_steps = count(entries, "t_steps")?;
    if let Some(t_max) = cfg.t_max {
        if t_max < cfg.t_min {
            return Err(invalid("t_max", line_of(entries, "t_max"), "must not be below t_min"));
        }
    }
    cfg.k_min = real(entries, "k_min")?.unwrap_or(0.0);
    // by default the k axis runs to the edge of the unit disc
    cfg.k_max = real(entries, "k_max")?.unwrap_or_else(|| (1.0 - cfg.k_im * cfg.k_im).max(0.0).sqrt());
    cfg.k_steps = count(entries, "k_steps")?;
    if cfg.k_max < cfg.k_min {
        return Err(invalid("k_max", line_of(entries, "k_max"), "must not be below k_min"));
    }
    for key in ["k_min", "k_max"] {
        let x = if key == "k_min" { cfg.k_min } else { cfg.k_max };
        let magnitude = Complex64::new(x, cfg.k_im).norm();
        if magnitude > 1.0 + OVERLAP_SLACK {
            return Err(CliError::Domain {
                field: key,
                line: line_of(entries, key),
                message: format!("overlap magnitude > 1 (|k| = {magnitude})"),
            });
        }
    }

    if let Some(theta) = real(entries, "theta")? {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(invalid("theta", line_of(entries, "theta"), "must lie in [0, π]"));
        }
        cfg.theta = theta;
    }
    if let Some(phi) = real(entries, "phi")? {
        cfg.phi = phi;
    }

    cfg.output = entries.get("output").map(|e| PathBuf::from(&e.value));
    if let Some(f) = choice(entries, "format", &[("csv", Format::Csv), ("json", Format::Json)])? {
        cfg.format = f;
    }
    Ok(cfg)
}
