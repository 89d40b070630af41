//! Scenario configuration: JSON file and/or flat command-line flags, with
//! flags taking precedence over the file.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use quartic_scattering::quartic::BoundaryCondition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    HalflineExact,
    HalflineShortrange,
    Fullline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Scatter,
    Eigen,
    Resonance,
    Ssf,
    Levinson,
    Resolvent,
    Density,
    Checks,
}

impl FromStr for OutputKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "scatter" => OutputKind::Scatter,
            "eigen" => OutputKind::Eigen,
            "resonance" => OutputKind::Resonance,
            "ssf" => OutputKind::Ssf,
            "levinson" => OutputKind::Levinson,
            "resolvent" => OutputKind::Resolvent,
            "density" => OutputKind::Density,
            "checks" => OutputKind::Checks,
            other => return Err(format!("unknown output kind `{other}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LambdaGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl LambdaGrid {
    pub fn validate(&self) -> Result<(), String> {
        if self.count < 2 {
            return Err(format!("grid count must be >= 2, got {}", self.count));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return Err(format!("grid needs min < max, got {}:{}", self.min, self.max));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err("log spacing needs min > 0".into());
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let s = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.min + s * (self.max - self.min),
                    Spacing::Log => self.min * (self.max / self.min).powf(s),
                }
            })
            .collect()
    }
}

impl FromStr for LambdaGrid {
    type Err = String;
    /// Parses `min:max:count[:log]`.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(format!("lambda grid must be min:max:count[:log], got `{s}`"));
        }
        let min: f64 = parts[0].parse().map_err(|e| format!("grid min: {e}"))?;
        let max: f64 = parts[1].parse().map_err(|e| format!("grid max: {e}"))?;
        let count: usize = parts[2].parse().map_err(|e| format!("grid count: {e}"))?;
        let spacing = match parts.get(3) {
            None | Some(&"linear") => Spacing::Linear,
            Some(&"log") => Spacing::Log,
            Some(other) => return Err(format!("unknown spacing `{other}`")),
        };
        let grid = LambdaGrid { min, max, count, spacing };
        grid.validate()?;
        Ok(grid)
    }
}

/// Boundary-condition description as it appears in configs and flags.
#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct BcSpec {
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub alpha: Option<String>,
    #[serde(default)]
    pub alpha1: Option<f64>,
    #[serde(default)]
    pub alpha2: Option<f64>,
}

/// Parses `1.5+0.5i`, `-2`, `0.3i` into a complex number.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim().replace(' ', "");
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some(body) = t.strip_suffix('i') {
        // Split into real and imaginary pieces at the last +/- that is not
        // an exponent sign or the leading sign.
        let bytes = body.as_bytes();
        for pos in (1..bytes.len()).rev() {
            let c = bytes[pos] as char;
            if (c == '+' || c == '-') && !matches!(bytes[pos - 1] as char, 'e' | 'E') {
                let re: f64 = body[..pos].parse().map_err(|e| format!("real part: {e}"))?;
                let im_str = &body[pos..];
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str.parse().map_err(|e| format!("imaginary part: {e}"))?
                };
                return Ok(Complex64::new(re, im));
            }
        }
        let im: f64 = if body.is_empty() || body == "+" {
            1.0
        } else if body == "-" {
            -1.0
        } else {
            body.parse().map_err(|e| format!("imaginary part: {e}"))?
        };
        return Ok(Complex64::new(0.0, im));
    }
    Err(format!("cannot parse complex number `{s}`"))
}

impl BcSpec {
    /// Parses the flag syntax `alpha=RE+IMi,alpha1=V,alpha2=V,family=NAME`.
    pub fn parse_flag(s: &str) -> Result<Self, String> {
        let mut spec = BcSpec::default();
        for item in s.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value in --bc, got `{item}`"))?;
            match key {
                "family" => spec.family = Some(value.to_string()),
                "alpha" => spec.alpha = Some(value.to_string()),
                "alpha1" => {
                    spec.alpha1 = Some(value.parse().map_err(|e| format!("alpha1: {e}"))?)
                }
                "alpha2" => {
                    spec.alpha2 = Some(value.parse().map_err(|e| format!("alpha2: {e}"))?)
                }
                other => return Err(format!("unknown --bc field `{other}`")),
            }
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<BoundaryCondition, String> {
        let alpha = match &self.alpha {
            Some(s) => parse_complex(s)?,
            None => Complex64::new(0.0, 0.0),
        };
        let a1 = self.alpha1.unwrap_or(0.0);
        let a2 = self.alpha2.unwrap_or(0.0);
        let family = self.family.as_deref().unwrap_or("generic");
        Ok(match family {
            "generic" => BoundaryCondition::generic(alpha, a1, a2),
            "three_param" => BoundaryCondition::three_param(alpha, a2),
            "one_param" => BoundaryCondition::one_param(a1),
            "clamped" => BoundaryCondition::clamped(),
            "free" => BoundaryCondition::free(),
            "navier_h00" => BoundaryCondition::navier_h00(),
            other => return Err(format!("unknown boundary-condition family `{other}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (use csv or json)")),
        }
    }
}

/// Full scenario configuration (the JSON file mirrors this).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub mode: Mode,
    #[serde(default)]
    pub bc: Option<BcSpec>,
    #[serde(default)]
    pub potential: Option<String>,
    pub lambda_grid: LambdaGrid,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default = "default_format")]
    pub output_format: Format,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub jobs: Option<usize>,
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Scatter]
}

fn default_format() -> Format {
    Format::Csv
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), String> {
        self.lambda_grid.validate()?;
        if self.outputs.contains(&OutputKind::Scatter) && self.lambda_grid.min <= 0.0 {
            return Err("scatter output needs a lambda grid with min > 0".into());
        }
        for (name, &v) in &self.tolerances {
            if v < f64::EPSILON {
                return Err(format!("tolerance `{name}` = {v} is below machine epsilon"));
            }
        }
        match self.mode {
            Mode::HalflineExact => {
                if self.bc.is_none() {
                    return Err("halfline_exact mode needs --bc".into());
                }
            }
            Mode::HalflineShortrange | Mode::Fullline => {
                if self.potential.is_none() {
                    return Err("potential modes need --potential".into());
                }
            }
        }
        Ok(())
    }
}
