//! Monte-Carlo evaluation harness: RMSE method comparison, percentage-error
//! profiles, the eigenvector correlation experiment, an exhaustive-ordering
//! oracle for small factors, and a wall-clock comparison of estimation
//! against explicit product eigendecomposition.
//!
//! Trials are independent and may run in parallel; results are merged by
//! trial index so output ordering is deterministic regardless of scheduling.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::eigen::{eig_symmetric, eigvals_symmetric, pearson_correlation};
use crate::error::{Error, Result};
use crate::estimator::{estimate_pipeline, OrderingMethod};
use crate::graph::Graph;
use crate::products::{product_graph, ProductKind};
use crate::randgen::{generate, GraphModel};
use crate::seeds::derive_seed;
use crate::spectrum::{Spectrum, SpectrumKind};

/// Root mean square of positional differences between two sorted spectra.
pub fn rmse(actual: &Spectrum, estimated: &Spectrum) -> Result<f64> {
    if actual.len() != estimated.len() {
        return Err(Error::Input(format!(
            "spectrum size mismatch: {} vs {}",
            actual.len(),
            estimated.len()
        )));
    }
    if actual.is_empty() {
        return Err(Error::Input("empty spectra".into()));
    }
    let sum: f64 = actual
        .values()
        .iter()
        .zip(estimated.values())
        .map(|(a, e)| (e - a) * (e - a))
        .sum();
    Ok((sum / actual.len() as f64).sqrt())
}

/// Per-rank percentage errors. `None` flags a rank where the actual
/// eigenvalue is (numerically) zero but the estimate is not, so the
/// relative error is undefined. The shared zero eigenvalue reports 0.
pub fn percentage_errors(
    actual: &Spectrum,
    estimated: &Spectrum,
    epsilon: f64,
) -> Result<Vec<Option<f64>>> {
    if actual.len() != estimated.len() {
        return Err(Error::Input(format!(
            "spectrum size mismatch: {} vs {}",
            actual.len(),
            estimated.len()
        )));
    }
    Ok(actual
        .values()
        .iter()
        .zip(estimated.values())
        .map(|(&a, &e)| {
            if a.abs() > epsilon {
                Some(100.0 * (e - a) / a)
            } else if e.abs() <= epsilon {
                Some(0.0)
            } else {
                None
            }
        })
        .collect())
}

pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Box-plot style summary of a sample. Percentile fields are monotone.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionSummary {
    pub min: f64,
    pub p5: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub p95: f64,
    pub max: f64,
    pub mean: f64,
    /// Samples beyond 1.5 IQR from the quartiles.
    pub outliers: Vec<f64>,
    pub count: usize,
}

fn percentile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = p / 100.0 * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

impl DistributionSummary {
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Input("cannot summarize empty sample".into()));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("NaN sample"));
        let q25 = percentile(&sorted, 25.0);
        let q75 = percentile(&sorted, 75.0);
        let iqr = q75 - q25;
        let outliers = sorted
            .iter()
            .copied()
            .filter(|&x| x < q25 - 1.5 * iqr || x > q75 + 1.5 * iqr)
            .collect();
        Ok(DistributionSummary {
            min: sorted[0],
            p5: percentile(&sorted, 5.0),
            q25,
            median: percentile(&sorted, 50.0),
            q75,
            p95: percentile(&sorted, 95.0),
            max: sorted[sorted.len() - 1],
            mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
            outliers,
            count: sorted.len(),
        })
    }
}

/// One evaluated factor pair under one ordering method.
#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    pub kind: ProductKind,
    pub method: OrderingMethod,
    pub rmse: f64,
    #[serde(skip)]
    pub actual: Spectrum,
    #[serde(skip)]
    pub estimated: Spectrum,
    pub t_exact_ms: f64,
    pub t_estimate_ms: f64,
}

fn run_trials<T, F>(trials: usize, jobs: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    if jobs <= 1 {
        (0..trials).map(f).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
        pool.install(|| (0..trials).into_par_iter().map(f).collect())
    }
}

fn generate_pair(
    model_g: &GraphModel,
    model_h: &GraphModel,
    trial_seed: u64,
    trial: usize,
) -> Result<(Graph, Graph)> {
    let g = generate(model_g, derive_seed(trial_seed, 1))
        .map_err(|e| Error::Infeasible(format!("trial {trial}, factor G: {e}")))?;
    let h = generate(model_h, derive_seed(trial_seed, 2))
        .map_err(|e| Error::Infeasible(format!("trial {trial}, factor H: {e}")))?;
    Ok((g, h))
}

fn exact_product_spectrum(kind: ProductKind, g: &Graph, h: &Graph) -> Result<Spectrum> {
    let product = product_graph(kind, g, h);
    Ok(Spectrum::new(
        eigvals_symmetric(&product.laplacian_matrix())?,
        SpectrumKind::Laplacian,
    ))
}

/// Per-method RMSE distributions over seeded independent factor pairs.
#[derive(Debug, Serialize)]
pub struct MethodComparison {
    pub kind: ProductKind,
    pub trials: usize,
    pub per_method: Vec<(OrderingMethod, DistributionSummary)>,
    #[serde(skip)]
    pub reports: Vec<TrialReport>,
}

impl MethodComparison {
    pub fn median(&self, method: OrderingMethod) -> f64 {
        self.per_method
            .iter()
            .find(|(m, _)| *m == method)
            .map(|(_, s)| s.median)
            .expect("all methods summarized")
    }
}

pub fn run_method_comparison(
    kind: ProductKind,
    model_g: &GraphModel,
    model_h: &GraphModel,
    trials: usize,
    base_seed: u64,
    jobs: usize,
) -> Result<MethodComparison> {
    if trials == 0 {
        return Err(Error::Input("need at least one trial".into()));
    }
    let per_trial = run_trials(trials, jobs, |trial| {
        let trial_seed = derive_seed(base_seed, trial as u64);
        let (g, h) = generate_pair(model_g, model_h, trial_seed, trial)?;
        let t0 = Instant::now();
        let actual = exact_product_spectrum(kind, &g, &h)?;
        let t_exact_ms = t0.elapsed().as_secs_f64() * 1e3;
        let mut reports = Vec::with_capacity(OrderingMethod::ALL.len());
        for method in OrderingMethod::ALL {
            let t1 = Instant::now();
            let estimated = estimate_pipeline(kind, &g, &h, method, derive_seed(trial_seed, 3))?;
            let t_estimate_ms = t1.elapsed().as_secs_f64() * 1e3;
            let err = rmse(&actual, &estimated)?;
            reports.push(TrialReport {
                trial,
                seed: trial_seed,
                kind,
                method,
                rmse: err,
                actual: actual.clone(),
                estimated,
                t_exact_ms,
                t_estimate_ms,
            });
        }
        Ok(reports)
    })?;
    let reports: Vec<TrialReport> = per_trial.into_iter().flatten().collect();
    let per_method = OrderingMethod::ALL
        .into_iter()
        .map(|method| {
            let samples: Vec<f64> = reports
                .iter()
                .filter(|r| r.method == method)
                .map(|r| r.rmse)
                .collect();
            DistributionSummary::from_samples(&samples).map(|s| (method, s))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MethodComparison {
        kind,
        trials,
        per_method,
        reports,
    })
}

/// Percentage-error profile under the correlated ordering, aggregated
/// across trials by rank.
#[derive(Debug, Serialize)]
pub struct ErrorProfile {
    pub kind: ProductKind,
    pub trials: usize,
    pub per_rank: Vec<DistributionSummary>,
    /// Fraction of defined percentage errors with |e| <= 10, pooled over
    /// all ranks and trials.
    pub fraction_within_10pct: f64,
    pub defined_count: usize,
    /// Ranks where the relative error was undefined are counted, never
    /// silently dropped.
    pub undefined_count: usize,
    #[serde(skip)]
    pub reports: Vec<TrialReport>,
}

pub fn run_error_profile(
    kind: ProductKind,
    model_g: &GraphModel,
    model_h: &GraphModel,
    trials: usize,
    base_seed: u64,
    jobs: usize,
) -> Result<ErrorProfile> {
    if trials == 0 {
        return Err(Error::Input("need at least one trial".into()));
    }
    let results = run_trials(trials, jobs, |trial| {
        let trial_seed = derive_seed(base_seed, trial as u64);
        let (g, h) = generate_pair(model_g, model_h, trial_seed, trial)?;
        let t0 = Instant::now();
        let actual = exact_product_spectrum(kind, &g, &h)?;
        let t_exact_ms = t0.elapsed().as_secs_f64() * 1e3;
        let t1 = Instant::now();
        let estimated = estimate_pipeline(
            kind,
            &g,
            &h,
            OrderingMethod::Correlated,
            derive_seed(trial_seed, 3),
        )?;
        let t_estimate_ms = t1.elapsed().as_secs_f64() * 1e3;
        let errors = percentage_errors(&actual, &estimated, DEFAULT_EPSILON)?;
        let report = TrialReport {
            trial,
            seed: trial_seed,
            kind,
            method: OrderingMethod::Correlated,
            rmse: rmse(&actual, &estimated)?,
            actual,
            estimated,
            t_exact_ms,
            t_estimate_ms,
        };
        Ok((report, errors))
    })?;
    let rank_count = results[0].1.len();
    let mut by_rank: Vec<Vec<f64>> = vec![Vec::with_capacity(trials); rank_count];
    let mut defined_count = 0usize;
    let mut undefined_count = 0usize;
    let mut within = 0usize;
    for (_, errors) in &results {
        if errors.len() != rank_count {
            return Err(Error::Input("inconsistent spectrum sizes across trials".into()));
        }
        for (rank, err) in errors.iter().enumerate() {
            match err {
                Some(e) => {
                    by_rank[rank].push(*e);
                    defined_count += 1;
                    if e.abs() <= 10.0 {
                        within += 1;
                    }
                }
                None => undefined_count += 1,
            }
        }
    }
    let per_rank = by_rank
        .iter()
        .map(|samples| DistributionSummary::from_samples(samples))
        .collect::<Result<Vec<_>>>()?;
    Ok(ErrorProfile {
        kind,
        trials,
        per_rank,
        fraction_within_10pct: within as f64 / defined_count.max(1) as f64,
        defined_count,
        undefined_count,
        reports: results.into_iter().map(|(r, _)| r).collect(),
    })
}

/// Correlation coefficients between each Kronecker factor-eigenvector pair
/// and its image under the explicit direct-product Laplacian. Pairs with
/// an undefined correlation (constant image, notably the shared constant
/// eigenvector) are excluded.
pub fn correlation_experiment(g: &Graph, h: &Graph) -> Result<Vec<f64>> {
    let pairs_g = eig_symmetric(&g.laplacian_matrix())?;
    let pairs_h = eig_symmetric(&h.laplacian_matrix())?;
    let product = product_graph(ProductKind::Direct, g, h);
    let lap = product.laplacian_matrix();
    let (m, n) = (g.node_count(), h.node_count());
    let mut coefficients = Vec::with_capacity(m * n);
    let mut x = vec![0.0; m * n];
    for i in 0..m {
        let wg = pairs_g.eigenvector(i);
        for j in 0..n {
            let wh = pairs_h.eigenvector(j);
            for a in 0..m {
                for b in 0..n {
                    x[a * n + b] = wg[a] * wh[b];
                }
            }
            let xv = ndarray::ArrayView1::from(&x);
            let y = lap.dot(&xv);
            // a numerically zero image (the shared constant eigenvector
            // maps to zero) has no defined correlation
            if y.iter().all(|v| v.abs() <= 1e-9) {
                continue;
            }
            if let Ok(c) = pearson_correlation(&x, y.as_slice().unwrap()) {
                coefficients.push(c);
            }
        }
    }
    Ok(coefficients)
}

/// Best achievable RMSE over all permutation pairs of the factor
/// eigenvalue sequences (degrees fixed ascending).
#[derive(Debug, Serialize)]
pub struct ExhaustiveResult {
    pub best_rmse: f64,
    /// Permutations of the ascending eigenvalue sequences, as index lists.
    pub best_ordering_g: Vec<usize>,
    pub best_ordering_h: Vec<usize>,
}

const EXHAUSTIVE_BUDGET: u64 = 10_000_000;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(factorial(n) as usize);
    let mut indices: Vec<usize> = (0..n).collect();
    heap_permute(&mut indices, n, &mut out);
    out
}

fn heap_permute(indices: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(indices.clone());
        return;
    }
    for i in 0..k {
        heap_permute(indices, k - 1, out);
        if k % 2 == 0 {
            indices.swap(i, k - 1);
        } else {
            indices.swap(0, k - 1);
        }
    }
}

pub fn exhaustive_ordering_oracle(
    kind: ProductKind,
    g: &Graph,
    h: &Graph,
) -> Result<ExhaustiveResult> {
    if kind == ProductKind::Cartesian {
        return Err(Error::Input(
            "cartesian product Laplacian spectra are exact; nothing to search".into(),
        ));
    }
    let (m, n) = (g.node_count(), h.node_count());
    let space = factorial(m).saturating_mul(factorial(n));
    if space > EXHAUSTIVE_BUDGET {
        return Err(Error::Input(format!(
            "search space {m}! * {n}! = {space} exceeds budget {EXHAUSTIVE_BUDGET}"
        )));
    }
    let actual = exact_product_spectrum(kind, g, h)?;
    let d_g: Vec<f64> = g.degree_spectrum().values().to_vec();
    let d_h: Vec<f64> = h.degree_spectrum().values().to_vec();
    let mu_g = {
        let mut v = eigvals_symmetric(&g.laplacian_matrix())?;
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    };
    let mu_h = {
        let mut v = eigvals_symmetric(&h.laplacian_matrix())?;
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    };
    let perms_g = permutations(m);
    let perms_h = permutations(n);
    let mut best_rmse = f64::INFINITY;
    let mut best = (perms_g[0].clone(), perms_h[0].clone());
    let mut estimate = vec![0.0; m * n];
    for pg in &perms_g {
        for ph in &perms_h {
            for (i, &gi) in pg.iter().enumerate() {
                let (mg, dg) = (mu_g[gi], d_g[i]);
                for (j, &hj) in ph.iter().enumerate() {
                    let (mh, dh) = (mu_h[hj], d_h[j]);
                    let base = mg * dh + dg * mh - mg * mh;
                    estimate[i * n + j] = match kind {
                        ProductKind::Direct => base,
                        ProductKind::Strong => mg + mh + base,
                        ProductKind::Cartesian => unreachable!(),
                    };
                }
            }
            estimate.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let sum: f64 = actual
                .values()
                .iter()
                .zip(&estimate)
                .map(|(a, e)| (e - a) * (e - a))
                .sum();
            let err = (sum / estimate.len() as f64).sqrt();
            if err < best_rmse {
                best_rmse = err;
                best = (pg.clone(), ph.clone());
            }
        }
    }
    Ok(ExhaustiveResult {
        best_rmse,
        best_ordering_g: best.0,
        best_ordering_h: best.1,
    })
}

/// Wall-clock comparison of explicit product eigendecomposition against
/// the estimation pipeline on one seeded factor pair.
#[derive(Debug, Serialize)]
pub struct TimingResult {
    pub t_exact: Duration,
    pub t_estimate: Duration,
    pub speedup: f64,
    pub product_nodes: usize,
}

pub fn timing_comparison(
    kind: ProductKind,
    model_g: &GraphModel,
    model_h: &GraphModel,
    seed: u64,
) -> Result<TimingResult> {
    let (g, h) = generate_pair(model_g, model_h, seed, 0)?;
    let t0 = Instant::now();
    let _actual = exact_product_spectrum(kind, &g, &h)?;
    let t_exact = t0.elapsed();
    let t1 = Instant::now();
    let _estimated = estimate_pipeline(kind, &g, &h, OrderingMethod::Correlated, seed)?;
    let t_estimate = t1.elapsed();
    Ok(TimingResult {
        t_exact,
        t_estimate,
        speedup: t_exact.as_secs_f64() / t_estimate.as_secs_f64().max(f64::MIN_POSITIVE),
        product_nodes: g.node_count() * h.node_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::triangle;

    fn lap(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec(), SpectrumKind::Laplacian)
    }

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn rmse_values() {
        assert_eq!(rmse(&lap(&[0.0, 2.0]), &lap(&[0.0, 2.0])).unwrap(), 0.0);
        assert!((rmse(&lap(&[0.0, 2.0]), &lap(&[0.0, 4.0])).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(
            rmse(&lap(&[1.0, 1.0, 1.0]), &lap(&[2.0, 2.0, 2.0])).unwrap(),
            1.0
        );
        assert!(rmse(&lap(&[1.0]), &lap(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn percentage_error_values() {
        let errs =
            percentage_errors(&lap(&[0.0, 2.0, 4.0]), &lap(&[0.0, 1.8, 4.4]), 1e-9).unwrap();
        assert_eq!(errs[0], Some(0.0));
        assert!((errs[1].unwrap() + 10.0).abs() < 1e-9);
        assert!((errs[2].unwrap() - 10.0).abs() < 1e-9);
        let same = percentage_errors(&lap(&[0.0, 3.0]), &lap(&[0.0, 3.0]), 1e-9).unwrap();
        assert!(same.iter().all(|e| *e == Some(0.0)));
        let undef = percentage_errors(&lap(&[0.0, 1.0]), &lap(&[0.5, 1.0]), 1e-9).unwrap();
        assert_eq!(undef, vec![None, Some(0.0)]);
    }

    #[test]
    fn summary_percentiles_monotone() {
        let s = DistributionSummary::from_samples(&[5.0, 1.0, 3.0, 2.0, 4.0, 100.0]).unwrap();
        assert!(s.min <= s.p5 && s.p5 <= s.q25 && s.q25 <= s.median);
        assert!(s.median <= s.q75 && s.q75 <= s.p95 && s.p95 <= s.max);
        assert_eq!(s.outliers, vec![100.0]);
        assert!(DistributionSummary::from_samples(&[]).is_err());
    }

    #[test]
    fn correlation_experiment_regular_factors() {
        let coeffs = correlation_experiment(&c4(), &triangle()).unwrap();
        // the constant x constant pair maps to zero and is excluded
        assert!(coeffs.len() < 12);
        for c in coeffs {
            assert!((c.abs() - 1.0).abs() <= 1e-8, "coefficient {c}");
        }
    }

    #[test]
    fn method_comparison_regular_factors_all_zero() {
        // er:3:3 and ba:3:2 both force triangles, which are regular
        let cmp = run_method_comparison(
            ProductKind::Direct,
            &GraphModel::Er { nodes: 3, edges: 3 },
            &GraphModel::Ba {
                nodes: 3,
                edges_per_node: 2,
            },
            1,
            42,
            1,
        )
        .unwrap();
        for (method, summary) in &cmp.per_method {
            assert!(summary.median.abs() <= 1e-8, "{method}");
        }
    }

    #[test]
    fn error_profile_counts_every_rank() {
        let profile = run_error_profile(
            ProductKind::Direct,
            &GraphModel::Er { nodes: 8, edges: 14 },
            &GraphModel::Er { nodes: 6, edges: 9 },
            4,
            7,
            1,
        )
        .unwrap();
        assert_eq!(profile.per_rank.len(), 48);
        assert_eq!(profile.defined_count + profile.undefined_count, 4 * 48);
        assert!(profile.fraction_within_10pct >= 0.0 && profile.fraction_within_10pct <= 1.0);
    }

    #[test]
    fn trial_reports_reproducible() {
        let run = || {
            run_error_profile(
                ProductKind::Strong,
                &GraphModel::Er { nodes: 7, edges: 10 },
                &GraphModel::Ba {
                    nodes: 6,
                    edges_per_node: 2,
                },
                3,
                123,
                1,
            )
            .unwrap()
        };
        let (a, b) = (run(), run());
        for (ra, rb) in a.reports.iter().zip(&b.reports) {
            assert_eq!(ra.seed, rb.seed);
            assert_eq!(ra.actual.values(), rb.actual.values());
            assert_eq!(ra.estimated.values(), rb.estimated.values());
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let args = (
            ProductKind::Direct,
            GraphModel::Er { nodes: 8, edges: 12 },
            GraphModel::Er { nodes: 5, edges: 7 },
            6usize,
            55u64,
        );
        let serial = run_method_comparison(args.0, &args.1, &args.2, args.3, args.4, 1).unwrap();
        let parallel = run_method_comparison(args.0, &args.1, &args.2, args.3, args.4, 4).unwrap();
        for (a, b) in serial.reports.iter().zip(&parallel.reports) {
            assert_eq!(a.rmse, b.rmse);
            assert_eq!(a.trial, b.trial);
            assert_eq!(a.method, b.method);
        }
    }

    #[test]
    fn exhaustive_regular_factors_reach_zero() {
        let result = exhaustive_ordering_oracle(ProductKind::Direct, &c4(), &triangle()).unwrap();
        assert!(result.best_rmse <= 1e-8);
    }

    #[test]
    fn exhaustive_bounded_by_correlated() {
        for seed in 0..5u64 {
            let g = generate(&GraphModel::Er { nodes: 5, edges: 6 }, seed).unwrap();
            let h = generate(&GraphModel::Er { nodes: 4, edges: 4 }, seed + 100).unwrap();
            let oracle = exhaustive_ordering_oracle(ProductKind::Direct, &g, &h).unwrap();
            let actual = exact_product_spectrum(ProductKind::Direct, &g, &h).unwrap();
            let est =
                estimate_pipeline(ProductKind::Direct, &g, &h, OrderingMethod::Correlated, 0)
                    .unwrap();
            let correlated = rmse(&actual, &est).unwrap();
            assert!(oracle.best_rmse <= correlated + 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn exhaustive_budget_enforced() {
        let g = generate(&GraphModel::Er { nodes: 12, edges: 20 }, 1).unwrap();
        let h = generate(&GraphModel::Er { nodes: 11, edges: 18 }, 2).unwrap();
        assert!(exhaustive_ordering_oracle(ProductKind::Direct, &g, &h).is_err());
    }
}
