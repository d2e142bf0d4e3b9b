//! Experiment configuration files.
//!
//! A config is a flat TOML document. Every key is optional and falls back
//! to the defaults shown here:
//!
//! ```toml
//! generator = "er:30:0.3"     # complete:N | er:N:P | ring:N:K
//! q_pos = 0.5                 # initial probability of a positive tie
//! types = "equal_mix"         # or UD / CO / UC for a homogeneous start
//! mode = "dyadic"             # or triadic
//! p_pos = 0.5
//! p_neg = 0.5
//! p_inv = 1.0
//! T = 5.0
//! R = 3.0
//! P = 1.0
//! S = 0.0
//! seeds = [0]                 # or a range string such as "0..50"
//! max_steps = 1000000
//! check_interval = 1000
//! sample_interval = 100
//! out = "out"
//!
//! [sweep]                     # only read by `sweep`
//! replicates = 5              # seeds first_seed .. first_seed + 5
//! p_neg = [0.0, 0.25]
//! p_pos = [0.5, 0.75, "1-p_neg"]
//! mode = ["dyadic", "triadic"]
//! generator = ["complete:15", "ring:30:3"]
//! ```
//!
//! Sweep axes are taken in file order; the first axis varies slowest.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::{Mode, ModelParams, RunOptions};
use crate::error::{Error, Result};
use crate::game::{PayoffMatrix, StrategyType};
use crate::graph::{Generator, TypeInit};

/// Everything needed to reproduce a batch of runs. The output directory is
/// deliberately not part of it so that artifacts do not depend on where they
/// are written.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub generator: Generator,
    pub q_pos: f64,
    pub type_init: TypeInit,
    pub params: ModelParams,
    pub seeds: Vec<u64>,
    pub options: RunOptions,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            generator: Generator::ErdosRenyi { n: 30, p: 0.3 },
            q_pos: 0.5,
            type_init: TypeInit::EqualMix,
            params: ModelParams::default(),
            seeds: vec![0],
            options: RunOptions::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.generator
            .validate()
            .map_err(|e| Error::config("generator", e.to_string()))?;
        if !(0.0..=1.0).contains(&self.q_pos) {
            return Err(Error::config("q_pos", format!("{} outside [0, 1]", self.q_pos)));
        }
        self.params.validate().map_err(as_config)?;
        self.options.validate().map_err(as_config)?;
        if self.seeds.is_empty() {
            return Err(Error::config("seeds", "seed list is empty"));
        }
        Ok(())
    }
}

fn as_config(e: Error) -> Error {
    match e {
        Error::Parameter { name, reason } => Error::config(name, reason),
        other => other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    PPos,
    PNeg,
    PInv,
    QPos,
    Mode,
    Generator,
}

impl AxisName {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisName::PPos => "p_pos",
            AxisName::PNeg => "p_neg",
            AxisName::PInv => "p_inv",
            AxisName::QPos => "q_pos",
            AxisName::Mode => "mode",
            AxisName::Generator => "generator",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "p_pos" => AxisName::PPos,
            "p_neg" => AxisName::PNeg,
            "p_inv" => AxisName::PInv,
            "q_pos" => AxisName::QPos,
            "mode" => AxisName::Mode,
            "generator" => AxisName::Generator,
            other => return Err(Error::config(format!("sweep.{other}"), "not a sweepable parameter")),
        })
    }

    fn is_probability(self) -> bool {
        matches!(self, AxisName::PPos | AxisName::PNeg | AxisName::PInv | AxisName::QPos)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum AxisValue {
    Number(f64),
    /// `1 - <other probability>`, resolved after the other axes of the cell.
    Complement(AxisName),
    Mode(Mode),
    Generator(Generator),
}

impl fmt::Display for AxisValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisValue::Number(v) => write!(f, "{v}"),
            AxisValue::Complement(a) => write!(f, "1-{}", a.as_str()),
            AxisValue::Mode(m) => write!(f, "{m}"),
            AxisValue::Generator(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub name: AxisName,
    pub values: Vec<AxisValue>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
    /// When set, replicate `r` uses seed `first_seed + r`; otherwise the
    /// config's seed list is used.
    pub replicates: Option<usize>,
}

/// One point of a sweep: the base config with axis values applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub assignments: Vec<(AxisName, AxisValue)>,
    pub config: ExperimentConfig,
}

impl Cell {
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .assignments
            .iter()
            .map(|(n, v)| format!("{}={v}", n.as_str()))
            .collect();
        format!("cell {} ({})", self.index, parts.join(", "))
    }
}

impl SweepSpec {
    pub fn cell_count(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    /// All cells in deterministic order (first axis slowest). Fails on the
    /// first cell whose parameters are invalid, naming the cell.
    pub fn cells(&self, base: &ExperimentConfig) -> Result<Vec<Cell>> {
        let seeds = match self.replicates {
            Some(r) => {
                let first = base.seeds.first().copied().unwrap_or(0);
                (0..r as u64).map(|i| first + i).collect()
            }
            None => base.seeds.clone(),
        };
        let total = self.cell_count();
        let mut cells = Vec::with_capacity(total);
        for index in 0..total {
            let mut rest = index;
            let mut picks = vec![0; self.axes.len()];
            for (k, axis) in self.axes.iter().enumerate().rev() {
                picks[k] = rest % axis.values.len();
                rest /= axis.values.len();
            }
            let assignments: Vec<(AxisName, AxisValue)> = self
                .axes
                .iter()
                .zip(&picks)
                .map(|(axis, &i)| (axis.name, axis.values[i].clone()))
                .collect();
            let mut config = base.clone();
            config.seeds = seeds.clone();
            for (name, value) in &assignments {
                if !matches!(value, AxisValue::Complement(_)) {
                    apply(&mut config, *name, value);
                }
            }
            for (name, value) in &assignments {
                if let AxisValue::Complement(of) = value {
                    let v = 1.0 - probability(&config, *of);
                    apply(&mut config, *name, &AxisValue::Number(v));
                }
            }
            let cell = Cell {
                index,
                assignments,
                config,
            };
            cell.config
                .validate()
                .map_err(|e| Error::config("sweep", format!("{}: {e}", cell.describe())))?;
            cells.push(cell);
        }
        Ok(cells)
    }
}

fn probability(config: &ExperimentConfig, name: AxisName) -> f64 {
    match name {
        AxisName::PPos => config.params.p_pos,
        AxisName::PNeg => config.params.p_neg,
        AxisName::PInv => config.params.p_inv,
        AxisName::QPos => config.q_pos,
        AxisName::Mode | AxisName::Generator => unreachable!("complements only refer to probabilities"),
    }
}

fn apply(config: &mut ExperimentConfig, name: AxisName, value: &AxisValue) {
    match (name, value) {
        (AxisName::PPos, AxisValue::Number(v)) => config.params.p_pos = *v,
        (AxisName::PNeg, AxisValue::Number(v)) => config.params.p_neg = *v,
        (AxisName::PInv, AxisValue::Number(v)) => config.params.p_inv = *v,
        (AxisName::QPos, AxisValue::Number(v)) => config.q_pos = *v,
        (AxisName::Mode, AxisValue::Mode(m)) => config.params.mode = *m,
        (AxisName::Generator, AxisValue::Generator(g)) => config.generator = *g,
        _ => unreachable!("axis values are type-checked when parsed"),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    generator: Option<String>,
    q_pos: Option<f64>,
    types: Option<String>,
    mode: Option<String>,
    p_pos: Option<f64>,
    p_neg: Option<f64>,
    p_inv: Option<f64>,
    #[serde(rename = "T")]
    t: Option<f64>,
    #[serde(rename = "R")]
    r: Option<f64>,
    #[serde(rename = "P")]
    p: Option<f64>,
    #[serde(rename = "S")]
    s: Option<f64>,
    seeds: Option<toml::Value>,
    max_steps: Option<u64>,
    check_interval: Option<u64>,
    sample_interval: Option<u64>,
    out: Option<PathBuf>,
    sweep: Option<toml::Table>,
}

/// A parsed config file: the experiment, where to write, and the optional sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub experiment: ExperimentConfig,
    pub out: Option<PathBuf>,
    pub sweep: Option<SweepSpec>,
}

fn parse_seeds(value: &toml::Value) -> Result<Vec<u64>> {
    let bad = |why: &str| Error::config("seeds", why.to_string());
    match value {
        toml::Value::Integer(i) => Ok(vec![u64::try_from(*i).map_err(|_| bad("seeds must be non-negative"))?]),
        toml::Value::Array(items) => items
            .iter()
            .map(|v| {
                v.as_integer()
                    .and_then(|i| u64::try_from(i).ok())
                    .ok_or_else(|| bad("seed list must contain non-negative integers"))
            })
            .collect(),
        toml::Value::String(s) => {
            let (a, b) = s
                .split_once("..")
                .ok_or_else(|| bad("range must look like \"START..END\""))?;
            let a: u64 = a.trim().parse().map_err(|_| bad("bad range start"))?;
            let b: u64 = b.trim().parse().map_err(|_| bad("bad range end"))?;
            Ok((a..b).collect())
        }
        _ => Err(bad("expected an integer, a list or a \"START..END\" range")),
    }
}

fn parse_axis(name: &str, value: &toml::Value) -> Result<Axis> {
    let axis = AxisName::parse(name)?;
    let field = || format!("sweep.{name}");
    let items = value
        .as_array()
        .ok_or_else(|| Error::config(field(), "axis values must be a list"))?;
    if items.is_empty() {
        return Err(Error::config(field(), "axis has no values"));
    }
    let values = items
        .iter()
        .map(|v| -> Result<AxisValue> {
            match (axis, v) {
                (a, toml::Value::Float(x)) if a.is_probability() => Ok(AxisValue::Number(*x)),
                (a, toml::Value::Integer(x)) if a.is_probability() => Ok(AxisValue::Number(*x as f64)),
                (a, toml::Value::String(s)) if a.is_probability() => {
                    let other = s
                        .replace(' ', "")
                        .strip_prefix("1-")
                        .map(AxisName::parse)
                        .transpose()?
                        .filter(|o| o.is_probability() && *o != a)
                        .ok_or_else(|| {
                            Error::config(field(), format!("{s:?} is neither a number nor 1-<other probability>"))
                        })?;
                    Ok(AxisValue::Complement(other))
                }
                (AxisName::Mode, toml::Value::String(s)) => Ok(AxisValue::Mode(
                    s.parse().map_err(|e: Error| Error::config(field(), e.to_string()))?,
                )),
                (AxisName::Generator, toml::Value::String(s)) => Ok(AxisValue::Generator(
                    s.parse().map_err(|e: Error| Error::config(field(), e.to_string()))?,
                )),
                _ => Err(Error::config(field(), format!("unsupported value {v}"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Axis { name: axis, values })
}

fn parse_sweep(table: &toml::Table) -> Result<SweepSpec> {
    let mut spec = SweepSpec::default();
    for (key, value) in table {
        if key == "replicates" {
            let r = value
                .as_integer()
                .filter(|&r| r >= 1)
                .ok_or_else(|| Error::config("sweep.replicates", "must be a positive integer"))?;
            spec.replicates = Some(r as usize);
        } else {
            if spec.axes.iter().any(|a| a.name.as_str() == key) {
                return Err(Error::config(format!("sweep.{key}"), "axis listed twice"));
            }
            spec.axes.push(parse_axis(key, value)?);
        }
    }
    Ok(spec)
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| {
            let field = e
                .message()
                .split('`')
                .nth(1)
                .map(str::to_string)
                .unwrap_or_else(|| "config".into());
            Error::config(field, e.to_string())
        })?;
        let mut experiment = ExperimentConfig::default();
        if let Some(g) = &raw.generator {
            experiment.generator = g
                .parse()
                .map_err(|e: Error| Error::config("generator", e.to_string()))?;
        }
        if let Some(q) = raw.q_pos {
            experiment.q_pos = q;
        }
        if let Some(t) = &raw.types {
            experiment.type_init = match t.trim().to_ascii_lowercase().as_str() {
                "equal_mix" | "equal" => TypeInit::EqualMix,
                other => TypeInit::All(
                    other
                        .parse::<StrategyType>()
                        .map_err(|_| Error::config("types", format!("expected equal_mix, UD, CO or UC, got {t:?}")))?,
                ),
            };
        }
        if let Some(m) = &raw.mode {
            experiment.params.mode = m.parse().map_err(|e: Error| Error::config("mode", e.to_string()))?;
        }
        let p = &mut experiment.params;
        p.p_pos = raw.p_pos.unwrap_or(p.p_pos);
        p.p_neg = raw.p_neg.unwrap_or(p.p_neg);
        p.p_inv = raw.p_inv.unwrap_or(p.p_inv);
        let d = PayoffMatrix::default();
        p.payoffs = PayoffMatrix::new(
            raw.t.unwrap_or(d.t()),
            raw.r.unwrap_or(d.r()),
            raw.p.unwrap_or(d.p()),
            raw.s.unwrap_or(d.s()),
        )
        .map_err(|e| Error::config("T/R/P/S", e.to_string()))?;
        if let Some(seeds) = &raw.seeds {
            experiment.seeds = parse_seeds(seeds)?;
        }
        let o = &mut experiment.options;
        o.max_steps = raw.max_steps.unwrap_or(o.max_steps);
        o.check_interval = raw.check_interval.unwrap_or(o.check_interval);
        o.sample_interval = raw.sample_interval.unwrap_or(o.sample_interval);
        experiment.validate()?;
        let sweep = raw.sweep.as_ref().map(parse_sweep).transpose()?;
        Ok(Self {
            experiment,
            out: raw.out,
            sweep,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("--config", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
