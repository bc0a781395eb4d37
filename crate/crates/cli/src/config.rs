//! Sweep configuration files: TOML, one `[section]` per concern.
//!
//! ```toml
//! [family]
//! kind = "rademacher_sum"   # binomial | poisson | rademacher_sum | bounded_iid | custom
//! normalize = true
//!
//! [grid]
//! values = [4, 16, 64]
//!
//! [metrics]
//! distances = ["rho", "levy", "w1", "w2", "wpsi"]
//! orlicz = "exp"
//!
//! [output]
//! csv = "out/rows.csv"
//!
//! [assertions]
//! max_w1_over_tau = 3.0
//! ```
//!
//! Relative paths are resolved against the directory of the config file.

use std::path::{Path, PathBuf};

use clt_transport::bounds::C10_SWEEP;
use clt_transport::cumulants::CUMULANT_ORDER_CAP;
use clt_transport::transport::{OrliczConfig, OrliczCost};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub family: FamilyConfig,
    pub grid: GridConfig,
    #[serde(default)]
    pub metrics: MetricsConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub run: RunConfig,
    #[serde(default)]
    pub assertions: Assertions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    #[serde(flatten)]
    pub kind: FamilyKind,
    /// Rescale every instance to unit variance after centering.
    #[serde(default)]
    pub normalize: bool,
}

/// Named families. The grid parameter is `n` for sums and `λ` for Poisson.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// Binomial(n, p).
    Binomial { p: f64 },
    /// Poisson(λ).
    Poisson,
    /// Sum of n independent Rademacher signs.
    RademacherSum,
    /// Sum of n independent copies of the bounded law in `file`.
    BoundedIid { file: PathBuf },
    /// n-fold convolution of the law in `file`, with the Statulevičius τ.
    Custom { file: PathBuf },
}

impl FamilyKind {
    pub fn id(&self) -> &'static str {
        match self {
            FamilyKind::Binomial { .. } => "binomial",
            FamilyKind::Poisson => "poisson",
            FamilyKind::RademacherSum => "rademacher_sum",
            FamilyKind::BoundedIid { .. } => "bounded_iid",
            FamilyKind::Custom { .. } => "custom",
        }
    }

    /// Whether the grid parameter counts summands.
    pub fn integer_parameter(&self) -> bool {
        !matches!(self, FamilyKind::Poisson)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Rho,
    Levy,
    W1,
    W2,
    Wpsi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrliczKind {
    Exp,
    Abs,
    Pow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MetricsConfig {
    pub distances: Vec<Metric>,
    pub orlicz: OrliczKind,
    /// Exponent for `orlicz = "pow"`.
    pub orlicz_p: Option<f64>,
    /// Highest cumulant order used by the τ certificates.
    pub cumulant_order: usize,
    /// Coupling displacement bands (c₇, c₁₁).
    pub bands: bool,
    /// Smoothing-inequality bound on ρ at `T = 1/τ`.
    pub smoothing: bool,
    /// Tail comparison at every nonnegative atom.
    pub tail: bool,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        Self {
            distances: vec![Metric::Rho, Metric::Levy, Metric::W1, Metric::W2, Metric::Wpsi],
            orlicz: OrliczKind::Exp,
            orlicz_p: None,
            cumulant_order: 8,
            bands: true,
            smoothing: true,
            tail: true,
        }
    }
}

impl MetricsConfig {
    pub fn wants(&self, m: Metric) -> bool {
        self.distances.contains(&m)
    }

    pub fn cost(&self) -> Result<OrliczCost> {
        match (self.orlicz, self.orlicz_p) {
            (OrliczKind::Exp, None) => Ok(OrliczCost::ExpMinusOne),
            (OrliczKind::Abs, None) => Ok(OrliczCost::Absolute),
            (OrliczKind::Pow, Some(p)) => Ok(OrliczCost::power(p)?),
            (OrliczKind::Pow, None) => Err(CliError::Config("orlicz = \"pow\" needs orlicz_p".into())),
            (_, Some(_)) => Err(CliError::Config("orlicz_p only applies to orlicz = \"pow\"".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub orlicz_rel: f64,
    pub orlicz_abs: f64,
    pub objective: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let d = OrliczConfig::default();
        Self { orlicz_rel: d.rel_tol, orlicz_abs: d.abs_tol, objective: d.objective_tol }
    }
}

impl Tolerances {
    pub fn orlicz(&self) -> OrliczConfig {
        OrliczConfig {
            rel_tol: self.orlicz_rel,
            abs_tol: self.orlicz_abs,
            objective_tol: self.objective,
            ..OrliczConfig::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
    /// Plot-ready companion: parameter against the ratio columns.
    pub plot: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    /// Wall-clock time per row. Kept apart from the row files, which are
    /// reproducible byte for byte.
    pub timings: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Rows computed concurrently.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { threads: 1 }
    }
}

/// Checks evaluated over the finished rows. Unset entries are skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Assertions {
    /// Every row computed without error.
    pub rows_complete: bool,
    /// `W_ψ <= max_wpsi` on every row.
    pub max_wpsi: Option<f64>,
    /// `max W_ψ <= factor * max{W_ψ : parameter <= reference}`.
    pub wpsi_growth_factor: Option<f64>,
    pub wpsi_growth_reference: Option<f64>,
    /// `max W_ψ √n <= spread * min W_ψ √n`.
    pub wpsi_sqrt_n_spread: Option<f64>,
    pub max_w1_over_tau: Option<f64>,
    pub max_rho_sigma_over_tau: Option<f64>,
    /// Smoothing bound at `T = 1/τ` at least the exact ρ on every row.
    pub smoothing_bounds_rho: bool,
    /// Tail comparison holds with multiplier 1 on every row.
    pub tail_bound: bool,
    /// `max c <= spread * min c` for c₇ and for c₁₁ at `band_c10`.
    pub band_spread: Option<f64>,
    pub max_c7: Option<f64>,
    pub max_c11: Option<f64>,
    pub band_c10: f64,
    /// `L <= C τ^{1/2} ln^{1/4}(1/τ)` on rows with `τ < 1`.
    pub levy_constant: Option<f64>,
}

impl Default for Assertions {
    fn default() -> Self {
        Self {
            rows_complete: true,
            max_wpsi: None,
            wpsi_growth_factor: None,
            wpsi_growth_reference: None,
            wpsi_sqrt_n_spread: None,
            max_w1_over_tau: None,
            max_rho_sigma_over_tau: None,
            smoothing_bounds_rho: false,
            tail_bound: false,
            band_spread: None,
            max_c7: None,
            max_c11: None,
            band_c10: 0.5,
            levy_constant: None,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} must be positive and finite, got {v}")))
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads, resolves relative paths against the file's directory and
    /// validates.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg: SweepConfig = toml::from_str(&text)?;
        let dir = path.parent().unwrap_or(Path::new("."));
        cfg.resolve_paths(dir);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn resolve_paths(&mut self, dir: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        match &mut self.family.kind {
            FamilyKind::BoundedIid { file } | FamilyKind::Custom { file } => fix(file),
            _ => {}
        }
        let out = &mut self.output;
        for p in [&mut out.csv, &mut out.json, &mut out.plot, &mut out.summary, &mut out.timings]
            .into_iter()
            .flatten()
        {
            fix(p);
        }
    }

    pub fn validate(&self) -> Result<()> {
        let values = &self.grid.values;
        if values.is_empty() {
            return Err(CliError::Config("parameter grid is empty".into()));
        }
        for &v in values {
            positive("grid value", v)?;
            if self.family.kind.integer_parameter() && v.fract() != 0.0 {
                return Err(CliError::Config(format!("{} needs integer n, got {v}", self.family.kind.id())));
            }
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CliError::Config("parameter grid has repeated values".into()));
        }
        if let FamilyKind::Binomial { p } = self.family.kind {
            if !(p > 0.0 && p < 1.0) {
                return Err(CliError::Config(format!("binomial p must lie in (0, 1), got {p}")));
            }
        }
        if self.metrics.distances.is_empty() {
            return Err(CliError::Config("distance list is empty".into()));
        }
        self.metrics.cost()?;
        let order = self.metrics.cumulant_order;
        if !(3..=CUMULANT_ORDER_CAP).contains(&order) {
            return Err(CliError::Config(format!(
                "cumulant_order must lie in 3..={CUMULANT_ORDER_CAP}, got {order}"
            )));
        }
        positive("orlicz_rel", self.tolerances.orlicz_rel)?;
        positive("orlicz_abs", self.tolerances.orlicz_abs)?;
        positive("objective", self.tolerances.objective)?;
        if self.run.threads == 0 {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        let a = &self.assertions;
        if a.wpsi_growth_factor.is_some() != a.wpsi_growth_reference.is_some() {
            return Err(CliError::Config(
                "wpsi_growth_factor and wpsi_growth_reference go together".into(),
            ));
        }
        if !C10_SWEEP.contains(&a.band_c10) {
            return Err(CliError::Config(format!("band_c10 must be one of {C10_SWEEP:?}, got {}", a.band_c10)));
        }
        for (name, v) in [
            ("max_wpsi", a.max_wpsi),
            ("wpsi_growth_factor", a.wpsi_growth_factor),
            ("wpsi_growth_reference", a.wpsi_growth_reference),
            ("wpsi_sqrt_n_spread", a.wpsi_sqrt_n_spread),
            ("max_w1_over_tau", a.max_w1_over_tau),
            ("max_rho_sigma_over_tau", a.max_rho_sigma_over_tau),
            ("band_spread", a.band_spread),
            ("max_c7", a.max_c7),
            ("max_c11", a.max_c11),
            ("levy_constant", a.levy_constant),
        ] {
            if let Some(v) = v {
                positive(name, v)?;
            }
        }
        Ok(())
    }
}
