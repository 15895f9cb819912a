use std::io::{Read, Write};

use crate::domain::Order;
use crate::error::{Error, Result};

/// Allowed deviation of a grid density's trapezoid integral from 1.
pub const MASS_TOLERANCE: f64 = 1e-6;

/// Default grid spacing, `2^-12`.
pub const DEFAULT_SPACING: f64 = 1.0 / 4096.0;

/// A probability density sampled on the uniform grid `origin + k * spacing`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity {
    origin: f64,
    spacing: f64,
    values: Vec<f64>,
}

/// Composite trapezoid rule on a uniform grid.
pub fn trapezoid(values: &[f64], spacing: f64) -> f64 {
    match values {
        [] => 0.0,
        [_] => 0.0,
        [first, .., last] => spacing * (values.iter().sum::<f64>() - 0.5 * (first + last)),
    }
}

impl GridDensity {
    /// Wraps samples that already integrate to 1 (within [`MASS_TOLERANCE`]).
    pub fn new(origin: f64, spacing: f64, values: Vec<f64>) -> Result<Self> {
        check_layout(origin, spacing, &values)?;
        let mass = trapezoid(&values, spacing);
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidInput(format!("density integrates to {mass}, not 1")));
        }
        Ok(Self {
            origin,
            spacing,
            values,
        })
    }

    /// Rescales arbitrary nonnegative samples to unit trapezoid mass.
    pub fn normalized(origin: f64, spacing: f64, mut values: Vec<f64>) -> Result<Self> {
        check_layout(origin, spacing, &values)?;
        let mass = trapezoid(&values, spacing);
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::ZeroDensity);
        }
        values.iter_mut().for_each(|v| *v /= mass);
        Ok(Self {
            origin,
            spacing,
            values,
        })
    }

    /// Samples `pdf` on `lo, lo + h, ...` up to the last grid point not beyond `hi`.
    pub fn sample(lo: f64, hi: f64, spacing: f64, pdf: impl Fn(f64) -> f64) -> Result<Self> {
        if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInput(format!("empty sampling range [{lo}, {hi}]")));
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::InvalidInput(format!("spacing must be positive, got {spacing}")));
        }
        let steps = ((hi - lo) / spacing * (1.0 + 1e-12)).floor() as usize;
        let values = (0..=steps).map(|k| pdf(lo + k as f64 * spacing)).collect();
        Self::normalized(lo, spacing, values)
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, k: usize) -> f64 {
        self.origin + k as f64 * self.spacing
    }

    pub fn mass(&self) -> f64 {
        trapezoid(&self.values, self.spacing)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Density of `lambda X` for `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidInput(format!("scale must be positive, got {lambda}")));
        }
        Ok(Self {
            origin: self.origin * lambda,
            spacing: self.spacing * lambda,
            values: self.values.iter().map(|v| v / lambda).collect(),
        })
    }

    /// Density of `X + shift`.
    pub fn translated(&self, shift: f64) -> Self {
        Self {
            origin: self.origin + shift,
            ..self.clone()
        }
    }

    /// Writes `x,f` rows with a header line.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(writer);
        let io = |e: csv::Error| Error::InvalidInput(format!("csv write failed: {e}"));
        out.write_record(["x", "f"]).map_err(io)?;
        for (k, v) in self.values.iter().enumerate() {
            out.write_record([self.x(k).to_string(), v.to_string()]).map_err(io)?;
        }
        out.flush()
            .map_err(|e| Error::InvalidInput(format!("csv write failed: {e}")))
    }

    /// Reads `x,f` rows. The `x` column must be uniformly spaced; the samples
    /// are renormalized to unit mass.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
        if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "f" {
            return Err(Error::Parse(format!(
                "expected header `x,f`, got `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut xs = Vec::new();
        let mut fs = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: `{s}` is not a number", line + 1)))
            };
            xs.push(parse(&record[0])?);
            fs.push(parse(&record[1])?);
        }
        if xs.len() < 2 {
            return Err(Error::Parse("need at least two grid points".into()));
        }
        let spacing = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::Parse("x column must be increasing".into()));
        }
        for (k, x) in xs.iter().enumerate() {
            let expected = xs[0] + k as f64 * spacing;
            if (x - expected).abs() > 1e-6 * spacing {
                return Err(Error::Parse(format!(
                    "x column is not uniformly spaced at row {}",
                    k + 1
                )));
            }
        }
        Self::normalized(xs[0], spacing, fs)
    }
}

fn check_layout(origin: f64, spacing: f64, values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::InvalidInput("a grid density needs at least two samples".into()));
    }
    if !origin.is_finite() {
        return Err(Error::InvalidInput(format!("origin must be finite, got {origin}")));
    }
    if !(spacing > 0.0) || !spacing.is_finite() {
        return Err(Error::InvalidInput(format!("spacing must be positive, got {spacing}")));
    }
    if let Some(bad) = values.iter().find(|v| !(**v >= 0.0) || v.is_infinite()) {
        return Err(Error::InvalidInput(format!(
            "density sample {bad} is not a finite nonnegative number"
        )));
    }
    Ok(())
}

/// Rényi entropy of a grid density in nats.
///
/// Finite orders use `ln(trapezoid(f^alpha)) / (1 - alpha)`, evaluated after
/// factoring out the maximum so large orders cannot overflow; `alpha = inf`
/// gives `-ln max f`.
pub fn renyi_entropy_of_grid(f: &GridDensity, order: Order) -> Result<f64> {
    let peak = f.max_value();
    if !(peak > 0.0) {
        return Err(Error::ZeroDensity);
    }
    if order.is_infinite() {
        return Ok(-peak.ln());
    }
    let alpha = order.alpha();
    let powered: Vec<f64> = f.values().iter().map(|v| (v / peak).powf(alpha)).collect();
    let integral = trapezoid(&powered, f.spacing());
    if !(integral > 0.0) {
        return Err(Error::ZeroDensity);
    }
    Ok((alpha * peak.ln() + integral.ln()) / (1.0 - alpha))
}

/// One-dimensional entropy power `exp(2 h_alpha)` of a grid density.
pub fn entropy_power_of_grid(f: &GridDensity, order: Order) -> Result<f64> {
    Ok((2.0 * renyi_entropy_of_grid(f, order)?).exp())
}
