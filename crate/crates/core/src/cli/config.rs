use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde_json::Value;

use super::CliError;
use crate::entanglement::Cut;
use crate::lattice::Boundary;

/// Inclusive grid `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(format!("grid '{s}' is not of the form start:stop:count"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("grid '{s}': {e}"));
        let (start, stop) = (num(a)?, num(b)?);
        let count: usize = n.trim().parse().map_err(|e| format!("grid '{s}': {e}"))?;
        if count == 0 {
            return Err(format!("grid '{s}' is empty"));
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err(format!("grid '{s}' has non-finite bounds"));
        }
        if count > 1 && !(stop > start) {
            return Err(format!("grid '{s}' is not ascending"));
        }
        Ok(Self { start, stop, count })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}

/// Chain lengths given as `a,b,c` or as an integer grid `start:stop:count`.
fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let sizes: Vec<usize> = if s.contains(':') {
        let g: Grid = s.parse()?;
        let v = g.values();
        if v.iter().any(|x| (x - x.round()).abs() > 1e-9 || *x < 0.0) {
            return Err(format!("size grid '{s}' does not land on integers"));
        }
        v.iter().map(|x| x.round() as usize).collect()
    } else {
        s.split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| format!("size list '{s}': {e}")))
            .collect::<Result<_, _>>()?
    };
    if sizes.is_empty() || sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(format!("size list '{s}' must be non-empty and strictly increasing"));
    }
    Ok(sizes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::Subcommand)]
pub enum Task {
    /// Real-space eigenvalues and the periodic (Bloch or surrogate) reference.
    Spectrum,
    /// Winding number and particle-hole label on a (t1, delta) grid.
    PhaseDiagram,
    /// Bulk and edge entropy and bulk heat capacity against temperature.
    Thermo,
    /// Half-filled ground-state entanglement entropy against delta.
    Ee,
    /// Entanglement entropy against chain length and its log slope.
    EeScaling,
    /// Delta derivatives of the zero-temperature grand potentials.
    Derivatives,
    /// Bulk heat capacity against inverse temperature and its resonance period.
    Itc,
}

impl Task {
    pub const ALL: [Task; 7] = [
        Task::Spectrum,
        Task::PhaseDiagram,
        Task::Thermo,
        Task::Ee,
        Task::EeScaling,
        Task::Derivatives,
        Task::Itc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Task::Spectrum => "spectrum",
            Task::PhaseDiagram => "phase-diagram",
            Task::Thermo => "thermo",
            Task::Ee => "ee",
            Task::EeScaling => "ee-scaling",
            Task::Derivatives => "derivatives",
            Task::Itc => "itc",
        }
    }

    fn default_length(self) -> usize {
        match self {
            Task::Spectrum | Task::Derivatives => 80,
            Task::Ee => 120,
            _ => 200,
        }
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Task::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown task '{s}'"))
    }
}

/// Keys accepted in configuration files and sidecars; flags use the same
/// names with a `--` prefix.
pub const KEYS: [&str; 18] = [
    "task",
    "t1",
    "t2",
    "delta",
    "delta-range",
    "t1-range",
    "L",
    "L-list",
    "T-range",
    "beta-range",
    "beta-max",
    "beta-points",
    "k-points",
    "cut",
    "order",
    "step",
    "boundary",
    "jobs",
];

/// Raw `key -> value` pairs before validation.
pub type RawConfig = BTreeMap<String, String>;

/// Reads a flat `key = value` file or a JSON object. A JSON sidecar is
/// recognized by its `config` member.
pub fn read_config_file(path: &Path) -> Result<RawConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let raw = if text.trim_start().starts_with('{') {
        parse_json(&text)
    } else {
        parse_flat(&text)
    }
    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    if let Some(bad) = raw.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(CliError::Config(format!("{}: unknown key '{bad}'", path.display())));
    }
    Ok(raw)
}

fn parse_flat(text: &str) -> Result<RawConfig, String> {
    let mut out = RawConfig::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
        let k = k.trim().trim_start_matches("--").to_string();
        out.insert(k, v.trim().trim_matches('"').to_string());
    }
    Ok(out)
}

fn parse_json(text: &str) -> Result<RawConfig, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let obj = match value.get("config") {
        Some(Value::Object(c)) => c.clone(),
        _ => match value {
            Value::Object(o) => o,
            _ => return Err("expected a JSON object".into()),
        },
    };
    obj.into_iter()
        .map(|(k, v)| {
            let s = match v {
                Value::String(s) => s,
                Value::Number(n) => n.to_string(),
                other => return Err(format!("key '{k}': unsupported value {other}")),
            };
            Ok((k, s))
        })
        .collect()
}

/// Validated configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub task: Task,
    pub t1: f64,
    pub t2: f64,
    pub delta: f64,
    pub length: usize,
    pub delta_range: Option<Grid>,
    pub t1_range: Option<Grid>,
    pub sizes: Option<Vec<usize>>,
    pub t_range: Option<Grid>,
    pub beta_range: Option<Grid>,
    pub k_points: Option<usize>,
    pub cut: Cut,
    pub order: u8,
    pub step: f64,
    pub boundary: Boundary,
    pub jobs: Option<usize>,
}

fn get<T: FromStr>(raw: &RawConfig, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: fmt::Display,
{
    raw.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|e| CliError::Config(format!("--{key} {v}: {e}")))
        })
        .transpose()
}

fn finite(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("--{key} must be finite, got {v}")))
    }
}

impl SweepConfig {
    /// Applies defaults and checks ranges. `task` overrides any `task` key.
    pub fn resolve(task: Option<Task>, raw: &RawConfig) -> Result<Self, CliError> {
        let from_file: Option<Task> = get::<String>(raw, "task")?
            .map(|s| s.parse().map_err(CliError::Config))
            .transpose()?;
        let task = match (task, from_file) {
            (Some(a), Some(b)) if a != b => {
                return Err(CliError::Config(format!(
                    "task '{}' conflicts with configured task '{}'",
                    a.as_str(),
                    b.as_str()
                )))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(CliError::Config("no task given".into())),
        };
        let t1 = finite("t1", get(raw, "t1")?.unwrap_or(1.1))?;
        let t2 = finite("t2", get(raw, "t2")?.unwrap_or(1.0))?;
        let delta = finite("delta", get(raw, "delta")?.unwrap_or(0.0))?;
        let length: usize = get(raw, "L")?.unwrap_or(task.default_length());
        let sizes = raw
            .get("L-list")
            .map(|s| parse_sizes(s).map_err(|e| CliError::Config(format!("--L-list: {e}"))))
            .transpose()?;
        let beta_max: Option<f64> = get(raw, "beta-max")?;
        let beta_points: Option<usize> = get(raw, "beta-points")?;
        let mut beta_range: Option<Grid> = get(raw, "beta-range")?;
        if beta_max.is_some() || beta_points.is_some() {
            if beta_range.is_some() {
                return Err(CliError::Config("--beta-range conflicts with --beta-max/--beta-points".into()));
            }
            let max = beta_max.unwrap_or(60.0);
            let n = beta_points.unwrap_or(6000);
            if !(max > 0.0) || n < 2 {
                return Err(CliError::Config("--beta-max must be positive and --beta-points at least 2".into()));
            }
            beta_range = Some(Grid { start: max / n as f64, stop: max, count: n });
        }
        let order: u8 = get(raw, "order")?.unwrap_or(2);
        if order != 1 && order != 2 {
            return Err(CliError::Config(format!("--order must be 1 or 2, got {order}")));
        }
        let step: f64 = get(raw, "step")?.unwrap_or(1e-3);
        if !(step > 0.0 && step.is_finite()) {
            return Err(CliError::Config(format!("--step must be positive, got {step}")));
        }
        let boundary = match raw.get("boundary").map(String::as_str) {
            None | Some("obc") => Boundary::Obc,
            Some("pbc") => Boundary::Pbc,
            Some(other) => return Err(CliError::Config(format!("--boundary must be obc or pbc, got '{other}'"))),
        };
        let cut = match raw.get("cut") {
            None => Cut::Half,
            Some(s) => s.parse().map_err(|e: crate::Error| CliError::Config(e.to_string()))?,
        };
        let jobs: Option<usize> = get(raw, "jobs")?;
        if jobs == Some(0) {
            return Err(CliError::Config("--jobs must be at least 1".into()));
        }
        let cfg = Self {
            task,
            t1,
            t2,
            delta,
            length,
            delta_range: get(raw, "delta-range")?,
            t1_range: get(raw, "t1-range")?,
            sizes,
            t_range: get(raw, "T-range")?,
            beta_range,
            k_points: get(raw, "k-points")?,
            cut,
            order,
            step,
            boundary,
            jobs,
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if self.length < 2 {
            return bad("--L must be at least 2");
        }
        if let Some(t) = self.t_range {
            if !(t.start > 0.0) {
                return bad("--T-range must be positive");
            }
        }
        if let Some(b) = self.beta_range {
            if !(b.start > 0.0) {
                return bad("--beta-range must be positive");
            }
        }
        if self.k_points.is_some_and(|k| k < 2) {
            return bad("--k-points must be at least 2");
        }
        if self.task == Task::PhaseDiagram && self.t2 != 1.0 {
            return bad("phase-diagram is defined for t2 = 1");
        }
        Ok(())
    }

    pub fn delta_grid(&self) -> Vec<f64> {
        self.delta_range.map_or_else(|| vec![self.delta], |g| g.values())
    }

    /// Canonical `key -> value` form; feeding it back reproduces the run.
    pub fn to_raw(&self) -> BTreeMap<&'static str, Value> {
        let mut m = BTreeMap::new();
        let num = |x: f64| serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null);
        m.insert("task", Value::String(self.task.as_str().into()));
        m.insert("t1", num(self.t1));
        m.insert("t2", num(self.t2));
        m.insert("delta", num(self.delta));
        m.insert("L", Value::from(self.length));
        if let Some(g) = self.delta_range {
            m.insert("delta-range", Value::String(g.to_string()));
        }
        if let Some(g) = self.t1_range {
            m.insert("t1-range", Value::String(g.to_string()));
        }
        if let Some(s) = &self.sizes {
            let list: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            m.insert("L-list", Value::String(list.join(",")));
        }
        if let Some(g) = self.t_range {
            m.insert("T-range", Value::String(g.to_string()));
        }
        if let Some(g) = self.beta_range {
            m.insert("beta-range", Value::String(g.to_string()));
        }
        if let Some(k) = self.k_points {
            m.insert("k-points", Value::from(k));
        }
        m.insert("cut", Value::String(self.cut.as_str().into()));
        m.insert("order", Value::from(self.order));
        m.insert("step", num(self.step));
        let boundary = match self.boundary {
            Boundary::Obc => "obc",
            Boundary::Pbc => "pbc",
        };
        m.insert("boundary", Value::String(boundary.into()));
        m
    }
}
