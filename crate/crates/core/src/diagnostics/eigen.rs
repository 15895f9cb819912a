//! Two independent eigenvalue routes for `D + rho z z^T`: cyclic Jacobi on the
//! explicit matrix, and root-finding on the secular function
//! `W(x) = 1 + rho sum_j z_j^2 / (d_j - x)` inside the interlacing brackets.

use crate::error::{Error, Result};

/// Symmetric rank-one modification `D + rho z z^T` of a diagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneSymmetric {
    diagonal: Vec<f64>,
    rho: f64,
    z: Vec<f64>,
}

impl RankOneSymmetric {
    pub fn new(diagonal: Vec<f64>, rho: f64, z: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::InvalidInput("matrix must be at least 1x1".into()));
        }
        if z.len() != diagonal.len() {
            return Err(Error::DimensionMismatch {
                expected: diagonal.len(),
                got: z.len(),
            });
        }
        if !rho.is_finite() || diagonal.iter().chain(&z).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Self { diagonal, rho, z })
    }

    /// `D + rho 1 1^T`.
    pub fn with_ones(diagonal: Vec<f64>, rho: f64) -> Result<Self> {
        let z = vec![1.0; diagonal.len()];
        Self::new(diagonal, rho, z)
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Row-major dense matrix.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let base = if i == j { self.diagonal[i] } else { 0.0 };
                        base + self.rho * self.z[i] * self.z[j]
                    })
                    .collect()
            })
            .collect()
    }
}

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(matrix: &[Vec<f64>]) -> Result<Vec<f64>> {
    let m = matrix.len();
    if matrix.iter().any(|row| row.len() != m) {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let frob: f64 = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * frob || off == 0.0 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (head, tail) = a.split_at_mut(q);
                for (apk, aqk) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (x, y) = (*apk, *aqk);
                    *apk = c * x - s * y;
                    *aqk = s * x + c * y;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Eigenvalues of `D + rho z z^T` from the secular equation, ascending.
///
/// Entries with `z_j = 0` and repeated diagonal values are deflated first;
/// each remaining eigenvalue is bracketed by consecutive poles of `W` and
/// found by bisection.
pub fn secular_eigenvalues(m: &RankOneSymmetric) -> Vec<f64> {
    let mut pairs: Vec<(f64, f64)> = m.diagonal.iter().copied().zip(m.z.iter().map(|z| z * z)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let scale = pairs
        .iter()
        .map(|(d, _)| d.abs())
        .fold(m.rho.abs(), f64::max)
        .max(f64::MIN_POSITIVE);
    let z2_total: f64 = pairs.iter().map(|(_, z2)| z2).sum();

    let mut eig = Vec::with_capacity(pairs.len());
    if m.rho == 0.0 || z2_total == 0.0 {
        eig.extend(pairs.iter().map(|(d, _)| *d));
        return eig;
    }

    // merge equal poles: a rotation concentrates their weight on one vector
    let mut poles: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
    for (d, z2) in pairs {
        if z2 <= f64::EPSILON * f64::EPSILON * z2_total {
            eig.push(d);
            continue;
        }
        match poles.last_mut() {
            Some(last) if (d - last.0).abs() <= 4.0 * f64::EPSILON * scale => {
                last.1 += z2;
                eig.push(d);
            }
            _ => poles.push((d, z2)),
        }
    }

    let rho = m.rho;
    let weight: f64 = poles.iter().map(|(_, z2)| z2).sum();
    let secular = |x: f64| 1.0 + rho * poles.iter().map(|(d, z2)| z2 / (d - x)).sum::<f64>();
    let k = poles.len();
    for i in 0..k {
        let (lo, hi) = if rho > 0.0 {
            let hi = if i + 1 < k {
                poles[i + 1].0
            } else {
                poles[i].0 + rho * weight
            };
            (poles[i].0, hi)
        } else {
            let lo = if i == 0 {
                poles[0].0 + rho * weight
            } else {
                poles[i - 1].0
            };
            (lo, poles[i].0)
        };
        eig.push(bisect_secular(secular, lo, hi, rho > 0.0));
    }
    eig.sort_by(f64::total_cmp);
    eig
}

/// Bisection for the root of `W` on `(lo, hi)`. `W` increases between poles
/// when `rho > 0` and decreases when `rho < 0`.
fn bisect_secular(w: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, increasing: bool) -> f64 {
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = w(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
