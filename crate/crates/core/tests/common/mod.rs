//! Seeded property checks shared by the property suite and the acceptance
//! runner. Each returns a short summary on success.

#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repi::bounds::thm1_constant;
use repi::diagnostics::{
    hessian_f, jacobi_eigenvalues, lemma_oracles, max_eigenvalue, secular_eigenvalues, RankOneSymmetric,
};
use repi::optimizer::{
    bv_asymptotically_tight, kkt_residual, n2_constant, optimal_weights, phi, thm2_constant, RatioVector,
};
use repi::{Order, PowerVector};

pub type Check = Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn order(alpha: f64) -> Order {
    Order::new(alpha).unwrap()
}

/// `alpha` log-uniform on `(1 + 1e-3, 1 + 1e6)`.
fn random_alpha(rng: &mut ChaCha8Rng) -> f64 {
    1.0 + 10f64.powf(rng.random_range(-3.0..6.0))
}

/// A uniform point of the open simplex with `n` entries.
pub fn dirichlet(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|r| r / total).collect()
}

struct Instance {
    ratios: Vec<f64>,
    order: Order,
}

fn instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=10usize);
            let ratios = (0..n - 1).map(|_| rng.random_range(0.0..=1.0)).collect();
            Instance {
                ratios,
                order: order(random_alpha(&mut rng)),
            }
        })
        .collect()
}

fn powers_of(inst: &Instance) -> PowerVector {
    let mut p = inst.ratios.clone();
    p.push(1.0);
    PowerVector::new(p).unwrap()
}

/// `phi(x) - 1` changes sign exactly once on a 10^4-point grid of `[0, 1]`.
pub fn root_uniqueness() -> Check {
    let cases = instances(11, 500);
    for (i, inst) in cases.iter().enumerate() {
        let rv = RatioVector::from_ratios(inst.ratios.clone()).unwrap();
        let mut changes = 0;
        let mut prev = phi(0.0, &rv, inst.order).unwrap() - 1.0;
        for k in 1..=10_000 {
            let r = phi(k as f64 / 10_000.0, &rv, inst.order).unwrap() - 1.0;
            if (prev < 0.0) != (r < 0.0) {
                changes += 1;
            }
            prev = r;
        }
        if changes != 1 {
            return Err(format!(
                "instance {i}: {changes} sign changes (alpha {}, c {:?})",
                inst.order, inst.ratios
            ));
        }
    }
    Ok(format!("{} instances, one sign change each", cases.len()))
}

pub fn kkt_residuals() -> Check {
    let cases = instances(11, 500);
    let mut worst: f64 = 0.0;
    for (i, inst) in cases.iter().enumerate() {
        let p = powers_of(inst);
        let t = optimal_weights(&p, inst.order).map_err(|e| format!("instance {i}: {e}"))?;
        let r = kkt_residual(&t, &p, inst.order).unwrap();
        if r > 1e-9 {
            return Err(format!("instance {i}: KKT residual {r:e}"));
        }
        worst = worst.max(r);
    }
    Ok(format!("max KKT residual {worst:.1e} over {} instances", cases.len()))
}

/// thm2 >= thm1, with equality exactly when the positive powers are equal,
/// and thm2 * sum N >= max N.
pub fn thm2_dominates() -> Check {
    let cases = instances(12, 500);
    for (i, inst) in cases.iter().enumerate() {
        let p = powers_of(inst);
        let n = p.positive_count();
        let t2 = thm2_constant(&p, inst.order).unwrap();
        let t1 = thm1_constant(inst.order, n).unwrap();
        if t2 < t1 * (1.0 - 1e-12) {
            return Err(format!("instance {i}: thm2 {t2} < thm1 {t1}"));
        }
        if t2 * p.sum() < p.max() * (1.0 - 1e-12) {
            return Err(format!("instance {i}: thm2 sum {} < max {}", t2 * p.sum(), p.max()));
        }
    }
    let mut r = rng(13);
    for _ in 0..100 {
        let n = r.random_range(2..=10usize);
        let o = order(random_alpha(&mut r));
        let level = r.random_range(0.1..100.0);
        let p = PowerVector::new(vec![level; n]).unwrap();
        let (t2, t1) = (thm2_constant(&p, o).unwrap(), thm1_constant(o, n).unwrap());
        if (t2 - t1).abs() > 1e-12 {
            return Err(format!("equal powers, n {n}, alpha {o}: thm2 {t2} vs thm1 {t1}"));
        }
        let mut q = p.as_slice().to_vec();
        q[0] *= 0.5;
        let t2 = thm2_constant(&PowerVector::new(q).unwrap(), o).unwrap();
        if !(t2 > t1) {
            return Err(format!(
                "unequal powers, n {n}, alpha {o}: thm2 {t2} not above thm1 {t1}"
            ));
        }
    }
    Ok("500 random + 100 equal/unequal instances".into())
}

pub fn order_one_limit() -> Check {
    let o = order(1.001);
    let mut r = rng(14);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = r.random_range(2..=10usize);
        let p = PowerVector::new((0..n).map(|_| r.random_range(0.01..10.0)).collect()).unwrap();
        let gap = (thm2_constant(&p, o).unwrap() - 1.0).abs();
        if gap > 2e-3 {
            return Err(format!(
                "thm2 at alpha 1.001 is {gap} away from 1 for {:?}",
                p.as_slice()
            ));
        }
        worst = worst.max(gap);
    }
    Ok(format!("max |thm2 - 1| = {worst:.2e} at alpha 1.001"))
}

/// Large-order behavior of thm2 splits on whether the non-maximal powers sum
/// to at most the maximal one.
pub fn large_order_dichotomy() -> Check {
    let tight = [vec![10.0, 20.0, 90.0], vec![1.0, 1.0, 5.0], vec![3.0, 7.0]];
    let loose = [vec![40.0, 40.0, 40.0], vec![1.0, 2.0, 2.0], vec![5.0, 5.0, 5.0, 8.0]];
    for p in &tight {
        let pv = PowerVector::new(p.clone()).unwrap();
        assert!(bv_asymptotically_tight(&pv));
        let lb = thm2_constant(&pv, order(1e4)).unwrap() * pv.sum();
        if (lb / pv.max() - 1.0).abs() > 0.01 {
            return Err(format!("{p:?}: thm2 bound {lb} not within 1% of {}", pv.max()));
        }
    }
    for p in &loose {
        let pv = PowerVector::new(p.clone()).unwrap();
        assert!(!bv_asymptotically_tight(&pv));
        let limit_gap = thm2_constant(&pv, Order::infinity()).unwrap() * pv.sum() - pv.max();
        if !(limit_gap > 0.0) {
            return Err(format!("{p:?}: limit gap {limit_gap} not positive"));
        }
        for a in [1e2, 1e3, 1e4] {
            let gap = thm2_constant(&pv, order(a)).unwrap() * pv.sum() - pv.max();
            if gap < 0.5 * limit_gap {
                return Err(format!(
                    "{p:?}: gap {gap} at alpha {a} shrinks below half the limit gap {limit_gap}"
                ));
            }
        }
    }
    Ok("3 tight and 3 loose power vectors".into())
}

pub fn n2_equivalence() -> Check {
    let alphas = [1.01, 1.5, 2.0, 5.0, 10.0, 1000.0];
    let mut worst: f64 = 0.0;
    for i in 0..30 {
        let beta = 0.01 + 0.99 * i as f64 / 29.0;
        for &a in &alphas {
            let o = order(a);
            let closed = n2_constant(beta, o).unwrap();
            let generic = thm2_constant(&PowerVector::new(vec![beta, 1.0]).unwrap(), o).unwrap();
            let gap = (closed - generic).abs();
            if gap > 1e-9 {
                return Err(format!("beta {beta}, alpha {a}: closed {closed} vs solver {generic}"));
            }
            worst = worst.max(gap);
        }
    }
    Ok(format!("30x6 grid, max gap {worst:.1e}"))
}

/// Largest Hessian eigenvalue at 1000 random interior points stays <= 1e-10.
pub fn hessian_concavity() -> Check {
    let mut r = rng(15);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..1000 {
        let n = r.random_range(2..=8usize);
        let conj = if i % 2 == 0 {
            r.random_range(1.0001..2.0)
        } else {
            r.random_range(2.0..10.0)
        };
        let o = order(conj / (conj - 1.0));
        let t = dirichlet(&mut r, n);
        let h = hessian_f(&t[..n - 1], o).map_err(|e| format!("point {i}: {e}"))?;
        let top = max_eigenvalue(&h).map_err(|e| format!("point {i}: {e}"))?;
        if top > 1e-10 {
            return Err(format!("point {i}: eigenvalue {top} at t {t:?}, alpha' {conj}"));
        }
        worst = worst.max(top);
    }
    Ok(format!("1000 points, largest eigenvalue {worst:.3e}"))
}

fn random_rank_one(r: &mut ChaCha8Rng, positive: bool) -> RankOneSymmetric {
    let m = r.random_range(1..=12usize);
    let mut d: Vec<f64> = (0..m).map(|_| r.random_range(-10.0..10.0)).collect();
    d.sort_by(f64::total_cmp);
    d.dedup();
    let raw: Vec<f64> = (0..d.len()).map(|_| r.random_range(0.1..1.0)).collect();
    let norm = raw.iter().map(|z| z * z).sum::<f64>().sqrt();
    let z = raw.iter().map(|v| v / norm).collect();
    let rho = r.random_range(0.1..5.0) * if positive { 1.0 } else { -1.0 };
    RankOneSymmetric::new(d, rho, z).unwrap()
}

/// Eigenvalues interlace with the diagonal and shift by `rho * mu_i`,
/// `mu_i >= 0`, `sum mu_i = 1` for unit `z`.
pub fn interlacing() -> Check {
    let mut r = rng(16);
    for i in 0..500 {
        let positive = i % 2 == 0;
        let m = random_rank_one(&mut r, positive);
        let lam = jacobi_eigenvalues(&m.to_dense()).unwrap();
        let d = m.diagonal();
        let k = d.len();
        for j in 0..k {
            let ok = if positive {
                d[j] <= lam[j] + 1e-10 && (j + 1 == k || lam[j] <= d[j + 1] + 1e-10)
            } else {
                lam[j] <= d[j] + 1e-10 && (j == 0 || d[j - 1] <= lam[j] + 1e-10)
            };
            if !ok {
                return Err(format!(
                    "instance {i}: interlacing fails at {j}: d {d:?}, lambda {lam:?}"
                ));
            }
        }
        let mu: Vec<f64> = lam.iter().zip(d).map(|(l, dj)| (l - dj) / m.rho()).collect();
        if mu.iter().any(|v| *v < -1e-10) {
            return Err(format!("instance {i}: negative shift {mu:?}"));
        }
        let total: f64 = mu.iter().sum();
        if (total - 1.0).abs() > 1e-8 {
            return Err(format!("instance {i}: shifts sum to {total}"));
        }
    }
    Ok("500 instances, both signs of rho".into())
}

pub fn secular_matches_dense() -> Check {
    let mut r = rng(17);
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let m = random_rank_one(&mut r, i % 2 == 0);
        let dense = jacobi_eigenvalues(&m.to_dense()).unwrap();
        let sec = secular_eigenvalues(&m);
        for (a, b) in dense.iter().zip(&sec) {
            let gap = (a - b).abs() / a.abs().max(1.0);
            if gap > 1e-8 {
                return Err(format!("instance {i}: dense {dense:?} vs secular {sec:?}"));
            }
            worst = worst.max(gap);
        }
    }
    Ok(format!("500 instances, max relative gap {worst:.1e}"))
}

pub fn lemma_positivity() -> Check {
    let mut min_slack = f64::INFINITY;
    for conj in [1.05, 1.2, 1.5, 1.8, 1.95] {
        let report = lemma_oracles(order(conj / (conj - 1.0))).map_err(|e| e.to_string())?;
        if !report.all_positive() {
            return Err(format!("alpha' {conj}: {report:?}"));
        }
        min_slack = min_slack
            .min(report.lemma1_min_slack)
            .min(report.lemma2_min_slack)
            .min(report.lemma3_min_slack);
    }
    Ok(format!("5 conjugates, smallest slack {min_slack:.2e}"))
}

/// The full seeded property suite, in a fixed order.
pub type Suite = Vec<(&'static str, fn() -> Check)>;

pub fn property_suite() -> Suite {
    vec![
        ("root uniqueness", root_uniqueness as fn() -> Check),
        ("KKT residuals", kkt_residuals),
        ("thm2 dominance", thm2_dominates),
        ("order-one limit", order_one_limit),
        ("large-order dichotomy", large_order_dichotomy),
        ("n = 2 closed form", n2_equivalence),
        ("Hessian concavity", hessian_concavity),
        ("interlacing", interlacing),
        ("secular vs dense", secular_matches_dense),
        ("lemma positivity", lemma_positivity),
    ]
}
