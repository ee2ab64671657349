//! Typed job specifications parsed from key = value configuration plus flag
//! overrides, and their canonical echo back into output metadata.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use nonclassical::{
    binomial_state, coherent_cutoff, evaluate, ngbs_state, truncated_coherent_state, Criterion,
    FockSuperposition, NgbsParams,
};

use crate::config::RawConfig;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFamily {
    Ngbs,
    Binomial,
    Fock,
    Coherent,
}

impl StateFamily {
    /// Parameter names of the family, in canonical order. `cutoff` of the
    /// coherent family is optional.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            StateFamily::Ngbs => &["M", "p", "q"],
            StateFamily::Binomial => &["M", "p"],
            StateFamily::Fock => &["n"],
            StateFamily::Coherent => &["alpha", "cutoff"],
        }
    }

    fn required_params(&self) -> &'static [&'static str] {
        match self {
            StateFamily::Ngbs => &["M", "p", "q"],
            StateFamily::Binomial => &["M", "p"],
            StateFamily::Fock => &["n"],
            StateFamily::Coherent => &["alpha"],
        }
    }
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateFamily::Ngbs => "ngbs",
            StateFamily::Binomial => "binomial",
            StateFamily::Fock => "fock",
            StateFamily::Coherent => "coherent",
        })
    }
}

impl FromStr for StateFamily {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ngbs" => Ok(StateFamily::Ngbs),
            "binomial" => Ok(StateFamily::Binomial),
            "fock" => Ok(StateFamily::Fock),
            "coherent" => Ok(StateFamily::Coherent),
            other => Err(CliError::Param(format!(
                "unknown state family '{other}' (expected ngbs | binomial | fock | coherent)"
            ))),
        }
    }
}

/// A state family with its fixed parameters, kept in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpec {
    pub family: StateFamily,
    params: Vec<(String, f64)>,
}

impl StateSpec {
    pub fn new(family: StateFamily) -> Self {
        Self {
            family,
            params: Vec::new(),
        }
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let family: StateFamily = raw
            .get("family")
            .ok_or_else(|| CliError::Param("missing 'family'".into()))?
            .parse()?;
        let mut spec = StateSpec::new(family);
        for &name in family.param_names() {
            if let Some(v) = raw.get_f64(name)? {
                spec.set_param(name, v)?;
            }
        }
        // reject parameters that belong to a different family
        for name in ["M", "p", "q", "n", "alpha", "cutoff"] {
            if raw.get(name).is_some() && !family.param_names().contains(&name) {
                return Err(CliError::Param(format!(
                    "'{name}' is not a parameter of family {family}"
                )));
            }
        }
        Ok(spec)
    }

    pub fn get_param(&self, name: &str) -> Option<f64> {
        self.params
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
    }

    pub fn set_param(&mut self, name: &str, value: f64) -> Result<()> {
        if !self.family.param_names().contains(&name) {
            return Err(CliError::Param(format!(
                "'{name}' is not a parameter of family {}",
                self.family
            )));
        }
        if let Some(slot) = self.params.iter_mut().find(|(k, _)| k == name) {
            slot.1 = value;
        } else {
            self.params.push((name.to_string(), value));
        }
        // canonical order for stable metadata echo
        let order = self.family.param_names();
        self.params
            .sort_by_key(|(k, _)| order.iter().position(|n| n == k).unwrap());
        Ok(())
    }

    /// Copy with one parameter substituted; used at each sweep point.
    pub fn with_param(&self, name: &str, value: f64) -> Result<StateSpec> {
        let mut copy = self.clone();
        copy.set_param(name, value)?;
        Ok(copy)
    }

    /// All mandatory parameters present, except an exempted (swept) one.
    pub fn check_complete(&self, except: Option<&str>) -> Result<()> {
        for &name in self.family.required_params() {
            if Some(name) == except {
                continue;
            }
            if self.get_param(name).is_none() {
                return Err(CliError::Param(format!(
                    "family {} requires parameter '{name}'",
                    self.family
                )));
            }
        }
        Ok(())
    }

    fn required(&self, name: &str) -> Result<f64> {
        self.get_param(name)
            .ok_or_else(|| CliError::Param(format!("family {} requires '{name}'", self.family)))
    }

    fn as_index(&self, name: &str) -> Result<u32> {
        let v = self.required(name)?;
        let rounded = v.round();
        if v < 0.0 || (v - rounded).abs() > 1e-9 * v.abs().max(1.0) || rounded > u32::MAX as f64 {
            return Err(CliError::Param(format!(
                "'{name}' = {v} must be a non-negative integer"
            )));
        }
        Ok(rounded as u32)
    }

    /// Construct the state. Parameter errors at sweep points degrade to
    /// tagged rows upstream rather than aborting a whole sweep.
    pub fn build(&self) -> Result<FockSuperposition> {
        match self.family {
            StateFamily::Ngbs => {
                let params = NgbsParams::new(
                    self.as_index("M")?,
                    self.required("p")?,
                    self.required("q")?,
                )?;
                Ok(ngbs_state(params))
            }
            StateFamily::Binomial => {
                Ok(binomial_state(self.as_index("M")?, self.required("p")?)?)
            }
            StateFamily::Fock => Ok(FockSuperposition::fock(self.as_index("n")? as usize)),
            StateFamily::Coherent => {
                let alpha = self.required("alpha")?;
                let cutoff = match self.get_param("cutoff") {
                    Some(_) => self.as_index("cutoff")? as usize,
                    None => coherent_cutoff(alpha),
                };
                Ok(truncated_coherent_state(alpha, cutoff))
            }
        }
    }

    pub fn echo_into(&self, raw: &mut RawConfig) {
        raw.push("family", self.family.to_string());
        for (k, v) in &self.params {
            raw.push(k, format!("{v}"));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("csv")
    }
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            other => Err(CliError::Param(format!(
                "unsupported output format '{other}' (tabular data is csv)"
            ))),
        }
    }
}

/// Parse `name:order` into a witness request.
pub fn parse_witness(text: &str) -> Result<(Criterion, u32)> {
    let (name, order) = text.split_once(':').ok_or_else(|| {
        CliError::Param(format!("witness '{text}' must have the form name:order"))
    })?;
    let criterion: Criterion = name.trim().parse().map_err(CliError::Param)?;
    let order: u32 = order
        .trim()
        .parse()
        .map_err(|_| CliError::Param(format!("witness order '{order}' is not an integer")))?;
    Ok((criterion, order))
}

/// A parameter sweep over one state parameter, evaluating a list of
/// witnesses at every point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub state: StateSpec,
    pub sweep_param: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub witnesses: Vec<(Criterion, u32)>,
    pub output: PathBuf,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let state = StateSpec::from_raw(raw)?;
        let sweep_param = raw
            .get("sweep")
            .ok_or_else(|| CliError::Param("missing 'sweep' parameter name".into()))?
            .to_string();
        let start = raw
            .get_f64("from")?
            .ok_or_else(|| CliError::Param("missing 'from'".into()))?;
        let stop = raw
            .get_f64("to")?
            .ok_or_else(|| CliError::Param("missing 'to'".into()))?;
        let count = raw
            .get_usize("count")?
            .ok_or_else(|| CliError::Param("missing 'count'".into()))?;
        let witnesses = raw
            .get_all("witness")
            .into_iter()
            .map(parse_witness)
            .collect::<Result<Vec<_>>>()?;
        let output = PathBuf::from(
            raw.get("out")
                .ok_or_else(|| CliError::Param("missing 'out' path".into()))?,
        );
        let format = match raw.get("format") {
            Some(f) => f.parse()?,
            None => OutputFormat::Csv,
        };
        let spec = SweepSpec {
            state,
            sweep_param,
            start,
            stop,
            count,
            witnesses,
            output,
            format,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self
            .state
            .family
            .param_names()
            .contains(&self.sweep_param.as_str())
        {
            return Err(CliError::Param(format!(
                "cannot sweep '{}': not a parameter of family {}",
                self.sweep_param, self.state.family
            )));
        }
        if self.state.get_param(&self.sweep_param).is_some() {
            return Err(CliError::Param(format!(
                "sweep parameter '{}' must not also be fixed",
                self.sweep_param
            )));
        }
        self.state.check_complete(Some(&self.sweep_param))?;
        if self.count < 2 {
            return Err(CliError::Param("count must be >= 2".into()));
        }
        if !(self.start < self.stop) {
            return Err(CliError::Param(format!(
                "sweep range requires from < to, got {} .. {}",
                self.start, self.stop
            )));
        }
        if self.witnesses.is_empty() {
            return Err(CliError::Param(
                "at least one 'witness = name:order' is required".into(),
            ));
        }
        // order-domain errors would hit every sweep point; reject them now
        let probe = FockSuperposition::fock(1);
        for &(criterion, order) in &self.witnesses {
            if let Err(nonclassical::Error::OrderDomain { .. }) = evaluate(&probe, criterion, order)
            {
                return Err(CliError::Param(format!(
                    "witness {criterion}:{order} has an out-of-domain order"
                )));
            }
        }
        Ok(())
    }

    pub fn to_raw(&self) -> RawConfig {
        let mut raw = RawConfig::new();
        self.state.echo_into(&mut raw);
        raw.push("sweep", self.sweep_param.clone());
        raw.push("from", format!("{}", self.start));
        raw.push("to", format!("{}", self.stop));
        raw.push("count", format!("{}", self.count));
        for (criterion, order) in &self.witnesses {
            raw.push("witness", format!("{criterion}:{order}"));
        }
        raw.push("format", self.format.to_string());
        raw.push("out", self.output.display().to_string());
        raw
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Wigner,
    Tomogram,
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridKind::Wigner => "wigner",
            GridKind::Tomogram => "tomogram",
        })
    }
}

impl FromStr for GridKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wigner" => Ok(GridKind::Wigner),
            "tomogram" => Ok(GridKind::Tomogram),
            other => Err(CliError::Param(format!(
                "unknown grid kind '{other}' (expected wigner | tomogram)"
            ))),
        }
    }
}

/// Grid evaluation job: a Wigner surface over (x, p′) or a tomogram over
/// (X, theta).
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub kind: GridKind,
    pub state: StateSpec,
    /// Half-width of the square window / X range; default sqrt(2N) + 6.
    pub window_radius: Option<f64>,
    /// Points per axis: (x-axis, second axis).
    pub resolution: (usize, usize),
    pub output: PathBuf,
}

impl GridSpec {
    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let kind: GridKind = raw
            .get("kind")
            .ok_or_else(|| CliError::Param("missing 'kind' (wigner | tomogram)".into()))?
            .parse()?;
        let state = StateSpec::from_raw(raw)?;
        state.check_complete(None)?;
        let window_radius = raw.get_f64("window")?;
        if let Some(r) = window_radius {
            if !(r > 0.0) {
                return Err(CliError::Param(format!("window radius {r} must be > 0")));
            }
        }
        let resolution = match raw.get("resolution") {
            Some(text) => parse_resolution(text)?,
            None => match kind {
                GridKind::Wigner => (201, 201),
                GridKind::Tomogram => (201, 64),
            },
        };
        let output = PathBuf::from(
            raw.get("out")
                .ok_or_else(|| CliError::Param("missing 'out' path".into()))?,
        );
        Ok(GridSpec {
            kind,
            state,
            window_radius,
            resolution,
            output,
        })
    }

    pub fn to_raw(&self) -> RawConfig {
        let mut raw = RawConfig::new();
        raw.push("kind", self.kind.to_string());
        self.state.echo_into(&mut raw);
        if let Some(r) = self.window_radius {
            raw.push("window", format!("{r}"));
        }
        raw.push(
            "resolution",
            format!("{}x{}", self.resolution.0, self.resolution.1),
        );
        raw.push("out", self.output.display().to_string());
        raw
    }
}

fn parse_resolution(text: &str) -> Result<(usize, usize)> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Param(format!("resolution '{text}' is not N or NxM")))
    };
    match text.split_once(['x', 'X']) {
        Some((a, b)) => Ok((parse(a)?, parse(b)?)),
        None => {
            let n = parse(text)?;
            Ok((n, n))
        }
    }
}

/// Nonclassical-volume job.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeSpec {
    pub state: StateSpec,
    pub tolerance: f64,
    pub window_radius: Option<f64>,
    pub initial_resolution: usize,
    pub max_refinements: usize,
    pub output: PathBuf,
}

impl VolumeSpec {
    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let state = StateSpec::from_raw(raw)?;
        state.check_complete(None)?;
        let tolerance = raw.get_f64("tolerance")?.unwrap_or(1e-5);
        if !(tolerance > 0.0) {
            return Err(CliError::Param(format!(
                "tolerance {tolerance} must be > 0"
            )));
        }
        let window_radius = raw.get_f64("window")?;
        let initial_resolution = raw.get_usize("resolution")?.unwrap_or(201);
        let max_refinements = raw.get_usize("max_refinements")?.unwrap_or(5);
        let output = PathBuf::from(
            raw.get("out")
                .ok_or_else(|| CliError::Param("missing 'out' path".into()))?,
        );
        Ok(VolumeSpec {
            state,
            tolerance,
            window_radius,
            initial_resolution,
            max_refinements,
            output,
        })
    }
}

/// Coefficient / distribution dump job.
#[derive(Debug, Clone, PartialEq)]
pub struct StateDumpSpec {
    pub state: StateSpec,
    pub output: PathBuf,
}

impl StateDumpSpec {
    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let state = StateSpec::from_raw(raw)?;
        state.check_complete(None)?;
        let output = PathBuf::from(
            raw.get("out")
                .ok_or_else(|| CliError::Param("missing 'out' path".into()))?,
        );
        Ok(StateDumpSpec { state, output })
    }

    pub fn to_raw(&self) -> RawConfig {
        let mut raw = RawConfig::new();
        self.state.echo_into(&mut raw);
        raw.push("out", self.output.display().to_string());
        raw
    }
}
