//! Potential pairs `(v0, v1)` for the full-line operator
//! `u -> u'''' - (v1 u')' + v0 u`, with a small text mini-language.
//!
//! Specification syntax (entries separated by `;`, an entry without a `v0=`
//! or `v1=` prefix sets `v0`):
//!
//! ```text
//! gaussian:amp=1,width=1[,center=0]
//! box:amp=0.5,lo=-1,hi=1
//! exp:amp=1,rate=3
//! sech2:amp=0.4,width=1
//! grid:file=path.csv          (CSV rows "x,value", cubic interpolation)
//! zero
//! ```

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::quad::adaptive_simpson_real;

/// Mass threshold beyond the numerical support radius.
pub const TAIL_EPS: f64 = 1e-12;

/// A single closed-form (or sampled) potential profile.
#[derive(Clone, Debug)]
pub enum Shape {
    Zero,
    Gaussian { amp: f64, width: f64, center: f64 },
    BoxCar { amp: f64, lo: f64, hi: f64 },
    Exponential { amp: f64, rate: f64 },
    Sech2 { amp: f64, width: f64 },
    Grid { xs: Vec<f64>, vs: Vec<f64> },
}

impl Shape {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Shape::Zero => 0.0,
            Shape::Gaussian { amp, width, center } => {
                let u = (x - center) / width;
                amp * (-u * u).exp()
            }
            Shape::BoxCar { amp, lo, hi } => {
                if x >= *lo && x <= *hi {
                    *amp
                } else {
                    0.0
                }
            }
            Shape::Exponential { amp, rate } => amp * (-rate * x.abs()).exp(),
            Shape::Sech2 { amp, width } => {
                let u = x / width;
                amp / u.cosh().powi(2)
            }
            Shape::Grid { xs, vs } => grid_eval(xs, vs, x),
        }
    }

    /// Radius beyond which the remaining mass of `|shape|` is below `eps`.
    pub fn support_radius(&self, eps: f64) -> f64 {
        match self {
            Shape::Zero => 0.0,
            Shape::Gaussian { amp, width, center } => {
                let w = width.abs().max(1e-6);
                let u = ((amp.abs() * w / eps).ln()).max(1.0).sqrt();
                center.abs() + w * u
            }
            Shape::BoxCar { lo, hi, .. } => lo.abs().max(hi.abs()),
            Shape::Exponential { amp, rate } => {
                let r = rate.abs().max(1e-6);
                ((amp.abs() / (r * eps)).ln()).max(0.0) / r
            }
            Shape::Sech2 { amp, width } => {
                let w = width.abs().max(1e-6);
                0.5 * w * ((2.0 * amp.abs() * w / eps).ln()).max(0.0)
            }
            Shape::Grid { xs, .. } => xs.iter().fold(0.0f64, |m, x| m.max(x.abs())),
        }
    }

    /// True for profiles decaying faster than every exponential.
    pub fn is_super_exponential(&self) -> bool {
        matches!(self, Shape::Zero | Shape::Gaussian { .. } | Shape::BoxCar { .. })
    }
}

/// Local cubic (4-point Lagrange) interpolation on a sorted sample grid;
/// zero outside the sampled range.
fn grid_eval(xs: &[f64], vs: &[f64], x: f64) -> f64 {
    let n = xs.len();
    if n == 0 || x < xs[0] || x > xs[n - 1] {
        return 0.0;
    }
    if n < 4 {
        // Fall back to linear interpolation on short tables.
        let j = xs.partition_point(|&t| t <= x).min(n - 1).max(1);
        let (x0, x1) = (xs[j - 1], xs[j]);
        let t = if x1 > x0 { (x - x0) / (x1 - x0) } else { 0.0 };
        return vs[j - 1] * (1.0 - t) + vs[j] * t;
    }
    let j = xs.partition_point(|&t| t <= x).clamp(2, n - 2);
    let i0 = j - 2;
    let mut acc = 0.0;
    for p in 0..4 {
        let mut l = 1.0;
        for q in 0..4 {
            if q != p {
                l *= (x - xs[i0 + q]) / (xs[i0 + p] - xs[i0 + q]);
            }
        }
        acc += l * vs[i0 + p];
    }
    acc
}

/// The pair `(v0, v1)` together with its numerical support radius `a`:
/// both profiles carry less than `TAIL_EPS` mass beyond `|x| > a`.
#[derive(Clone, Debug)]
pub struct Potential {
    pub v0: Shape,
    pub v1: Shape,
    pub radius: f64,
}

impl Potential {
    pub fn new(v0: Shape, v1: Shape) -> Self {
        let radius = v0
            .support_radius(TAIL_EPS)
            .max(v1.support_radius(TAIL_EPS))
            .max(1.0);
        Self { v0, v1, radius }
    }

    pub fn zero() -> Self {
        Self::new(Shape::Zero, Shape::Zero)
    }

    pub fn v0_at(&self, x: f64) -> f64 {
        self.v0.eval(x)
    }

    pub fn v1_at(&self, x: f64) -> f64 {
        self.v1.eval(x)
    }

    /// Numerically integrated mass of `|v0| + |v1|` beyond radius `r`.
    pub fn tail_mass(&self, r: f64) -> f64 {
        let f = |x: f64| self.v0_at(x).abs() + self.v1_at(x).abs();
        adaptive_simpson_real(&|x| f(x) + f(-x), r, r + 60.0, 1e-16)
    }

    pub fn is_super_exponential(&self) -> bool {
        self.v0.is_super_exponential() && self.v1.is_super_exponential()
    }

    /// Parses the text mini-language described in the module docs.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut v0 = Shape::Zero;
        let mut v1 = Shape::Zero;
        for raw in spec.split(';') {
            let entry = raw.trim();
            if entry.is_empty() {
                continue;
            }
            let (slot, body) = if let Some(rest) = entry.strip_prefix("v0=") {
                (0, rest)
            } else if let Some(rest) = entry.strip_prefix("v1=") {
                (1, rest)
            } else {
                (0, entry)
            };
            let shape = parse_shape(body)?;
            if slot == 0 {
                v0 = shape;
            } else {
                v1 = shape;
            }
        }
        Ok(Self::new(v0, v1))
    }
}

fn parse_shape(body: &str) -> Result<Shape> {
    let (name, args) = match body.split_once(':') {
        Some((n, a)) => (n.trim(), a),
        None => (body.trim(), ""),
    };
    let mut kv: HashMap<&str, &str> = HashMap::new();
    for pair in args.split(',') {
        let pair = pair.trim();
        if pair.is_empty() {
            continue;
        }
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::InvalidPotential(format!("malformed parameter `{pair}`")))?;
        kv.insert(k.trim(), v.trim());
    }
    let get = |key: &str| -> Result<f64> {
        kv.get(key)
            .ok_or_else(|| Error::InvalidPotential(format!("`{name}` requires parameter `{key}`")))?
            .parse::<f64>()
            .map_err(|_| Error::InvalidPotential(format!("parameter `{key}` is not a number")))
    };
    let get_or = |key: &str, default: f64| -> Result<f64> {
        match kv.get(key) {
            Some(v) => v
                .parse::<f64>()
                .map_err(|_| Error::InvalidPotential(format!("parameter `{key}` is not a number"))),
            None => Ok(default),
        }
    };
    match name {
        "zero" => Ok(Shape::Zero),
        "gaussian" => Ok(Shape::Gaussian {
            amp: get("amp")?,
            width: get("width")?,
            center: get_or("center", 0.0)?,
        }),
        "box" => {
            let (lo, hi) = (get("lo")?, get("hi")?);
            if lo >= hi {
                return Err(Error::InvalidPotential("box requires lo < hi".into()));
            }
            Ok(Shape::BoxCar { amp: get("amp")?, lo, hi })
        }
        "exp" => {
            let rate = get("rate")?;
            if rate <= 0.0 {
                return Err(Error::InvalidPotential("exp requires rate > 0".into()));
            }
            Ok(Shape::Exponential { amp: get("amp")?, rate })
        }
        "sech2" => {
            let width = get("width")?;
            if width <= 0.0 {
                return Err(Error::InvalidPotential("sech2 requires width > 0".into()));
            }
            Ok(Shape::Sech2 { amp: get("amp")?, width })
        }
        "grid" => {
            let file = kv
                .get("file")
                .ok_or_else(|| Error::InvalidPotential("grid requires file=PATH".into()))?;
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::InvalidPotential(format!("cannot read `{file}`: {e}")))?;
            let mut xs = Vec::new();
            let mut vs = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut it = line.split(',');
                let x: f64 = it
                    .next()
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| Error::InvalidPotential(format!("bad grid row `{line}`")))?;
                let v: f64 = it
                    .next()
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| Error::InvalidPotential(format!("bad grid row `{line}`")))?;
                xs.push(x);
                vs.push(v);
            }
            if xs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidPotential("grid abscissae must increase".into()));
            }
            Ok(Shape::Grid { xs, vs })
        }
        other => Err(Error::InvalidPotential(format!("unknown shape `{other}`"))),
    }
}
