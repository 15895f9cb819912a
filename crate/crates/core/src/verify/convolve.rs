use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::grid::GridDensity;
use crate::error::{Error, Result};

/// Output lengths up to this size use direct summation; longer ones use FFT.
pub const DIRECT_LIMIT: usize = 1 << 14;

/// Density of `X + Y` for independent `X ~ f`, `Y ~ g` on a common grid.
pub fn convolve(f: &GridDensity, g: &GridDensity) -> Result<GridDensity> {
    check_spacing(f, g)?;
    let out_len = f.len() + g.len() - 1;
    let raw = if out_len <= DIRECT_LIMIT {
        direct_sum(f.values(), g.values())
    } else {
        fft_sum(f.values(), g.values())
    };
    finish(f, g, raw)
}

/// [`convolve`] forced onto the direct-summation path.
pub fn convolve_direct(f: &GridDensity, g: &GridDensity) -> Result<GridDensity> {
    check_spacing(f, g)?;
    finish(f, g, direct_sum(f.values(), g.values()))
}

/// [`convolve`] forced onto the FFT path.
pub fn convolve_fft(f: &GridDensity, g: &GridDensity) -> Result<GridDensity> {
    check_spacing(f, g)?;
    finish(f, g, fft_sum(f.values(), g.values()))
}

fn check_spacing(f: &GridDensity, g: &GridDensity) -> Result<()> {
    let (a, b) = (f.spacing(), g.spacing());
    if (a - b).abs() > 1e-12 * a.max(b) {
        return Err(Error::SpacingMismatch(a, b));
    }
    Ok(())
}

fn finish(f: &GridDensity, g: &GridDensity, mut raw: Vec<f64>) -> Result<GridDensity> {
    let h = f.spacing();
    raw.iter_mut().for_each(|v| *v = (*v * h).max(0.0));
    GridDensity::normalized(f.origin() + g.origin(), h, raw)
}

fn direct_sum(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o += x * y;
        }
    }
    out
}

fn fft_sum(a: &[f64], b: &[f64]) -> Vec<f64> {
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(size);
    let inverse = planner.plan_fft_inverse(size);

    let pad = |v: &[f64]| {
        let mut buf: Vec<Complex<f64>> = v.iter().map(|&x| Complex::new(x, 0.0)).collect();
        buf.resize(size, Complex::new(0.0, 0.0));
        buf
    };
    let mut fa = pad(a);
    let mut fb = pad(b);
    forward.process(&mut fa);
    forward.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inverse.process(&mut fa);
    let scale = 1.0 / size as f64;
    fa.iter().take(out_len).map(|c| c.re * scale).collect()
}
