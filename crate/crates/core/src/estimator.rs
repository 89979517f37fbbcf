//! Heuristic estimation of Laplacian spectra of direct and strong product
//! graphs from factor degree and Laplacian spectra.
//!
//! The factor degree sequences are always kept sorted ascending; only the
//! pairing of factor eigenvalues against them is varied, by one of five
//! ordering methods. The estimate never builds the product matrix: the
//! cost is two factor eigenproblems plus an O(|V_G|*|V_H|) combination.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::eigen::eigvals_symmetric;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products::ProductKind;
use crate::seeds::derive_seed;
use crate::spectrum::{Spectrum, SpectrumKind};

/// How factor eigenvalues are paired against the ascending degree sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingMethod {
    /// Uniformly random permutation.
    Uncorrelated,
    /// Ascending (pairs small eigenvalues with small degrees).
    Correlated,
    /// Ascending by a key perturbed multiplicatively by U[0.9, 1.1].
    CorrelatedRandomized,
    /// Descending.
    AntiCorrelated,
    /// Descending by the perturbed key.
    AntiCorrelatedRandomized,
}

impl OrderingMethod {
    pub const ALL: [OrderingMethod; 5] = [
        OrderingMethod::Uncorrelated,
        OrderingMethod::Correlated,
        OrderingMethod::CorrelatedRandomized,
        OrderingMethod::AntiCorrelated,
        OrderingMethod::AntiCorrelatedRandomized,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            OrderingMethod::Uncorrelated => "uncorrelated",
            OrderingMethod::Correlated => "correlated",
            OrderingMethod::CorrelatedRandomized => "correlated_randomized",
            OrderingMethod::AntiCorrelated => "anti_correlated",
            OrderingMethod::AntiCorrelatedRandomized => "anti_correlated_randomized",
        }
    }
}

impl std::str::FromStr for OrderingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderingMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown ordering method `{s}`")))
    }
}

impl std::fmt::Display for OrderingMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Returns a permutation of `mu`'s values per the ordering method. The
/// randomized methods perturb only the sort key; the emitted values are
/// the original eigenvalues.
pub fn apply_ordering(mu: &Spectrum, method: OrderingMethod, seed: u64) -> Vec<f64> {
    let mut values = mu.values().to_vec(); // ascending
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match method {
        OrderingMethod::Uncorrelated => {
            values.shuffle(&mut rng);
        }
        OrderingMethod::Correlated => {}
        OrderingMethod::AntiCorrelated => {
            values.reverse();
        }
        OrderingMethod::CorrelatedRandomized | OrderingMethod::AntiCorrelatedRandomized => {
            let mut keyed: Vec<(f64, f64)> = values
                .iter()
                .map(|&v| (v * rng.random_range(0.9..1.1), v))
                .collect();
            keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("NaN sort key"));
            if method == OrderingMethod::AntiCorrelatedRandomized {
                keyed.reverse();
            }
            values = keyed.into_iter().map(|(_, v)| v).collect();
        }
    }
    values
}

/// Factor spectra prepared for the estimation formulas: degrees ascending,
/// eigenvalues in method order.
#[derive(Debug, Clone)]
pub struct PairedFactorSpectra {
    degrees_g: Vec<f64>,
    degrees_h: Vec<f64>,
    mu_g: Vec<f64>,
    mu_h: Vec<f64>,
}

impl PairedFactorSpectra {
    /// Applies `method` to both eigenvalue sequences, with independent
    /// randomness per factor derived from `seed`.
    pub fn new(
        d_g: &Spectrum,
        d_h: &Spectrum,
        mu_g: &Spectrum,
        mu_h: &Spectrum,
        method: OrderingMethod,
        seed: u64,
    ) -> Result<Self> {
        if d_g.kind() != SpectrumKind::Degree || d_h.kind() != SpectrumKind::Degree {
            return Err(Error::Input("degree spectra required".into()));
        }
        if mu_g.kind() != SpectrumKind::Laplacian || mu_h.kind() != SpectrumKind::Laplacian {
            return Err(Error::Input("laplacian spectra required".into()));
        }
        if d_g.len() != mu_g.len() || d_h.len() != mu_h.len() {
            return Err(Error::Input("spectrum size mismatch between factors".into()));
        }
        Ok(PairedFactorSpectra {
            degrees_g: d_g.values().to_vec(),
            degrees_h: d_h.values().to_vec(),
            mu_g: apply_ordering(mu_g, method, derive_seed(seed, 1)),
            mu_h: apply_ordering(mu_h, method, derive_seed(seed, 2)),
        })
    }

    fn estimate<F: Fn(f64, f64, f64, f64) -> f64>(&self, f: F) -> Spectrum {
        let mut out = Vec::with_capacity(self.mu_g.len() * self.mu_h.len());
        for (&mg, &dg) in self.mu_g.iter().zip(&self.degrees_g) {
            for (&mh, &dh) in self.mu_h.iter().zip(&self.degrees_h) {
                out.push(f(mg, dg, mh, dh));
            }
        }
        Spectrum::new(out, SpectrumKind::Laplacian)
    }
}

/// Estimated spectrum of the direct product Laplacian:
/// { mu_g * d_h + d_g * mu_h - mu_g * mu_h } over all index pairs.
pub fn estimate_direct_laplacian(ps: &PairedFactorSpectra) -> Spectrum {
    ps.estimate(|mg, dg, mh, dh| mg * dh + dg * mh - mg * mh)
}

/// Estimated spectrum of the strong product Laplacian:
/// { mu_g + mu_h + mu_g * d_h + d_g * mu_h - mu_g * mu_h }.
pub fn estimate_strong_laplacian(ps: &PairedFactorSpectra) -> Spectrum {
    ps.estimate(|mg, dg, mh, dh| mg + mh + mg * dh + dg * mh - mg * mh)
}

/// Factor Laplacian eigenvalues with numerical zeros snapped to exact 0,
/// so the shared zero eigenvalue of connected factors propagates to an
/// exact 0 in the estimate.
fn factor_laplacian_eigenvalues(g: &Graph) -> Result<Vec<f64>> {
    let mut values = eigvals_symmetric(&g.laplacian_matrix())?;
    for v in &mut values {
        if v.abs() <= 1e-9 {
            *v = 0.0;
        }
    }
    Ok(values)
}

/// Full pipeline from factor graphs: factor degree and Laplacian spectra,
/// ordering, then the kind-specific formula. Never builds the product.
pub fn estimate_pipeline(
    kind: ProductKind,
    g: &Graph,
    h: &Graph,
    method: OrderingMethod,
    seed: u64,
) -> Result<Spectrum> {
    if kind == ProductKind::Cartesian {
        return Err(Error::Input(
            "cartesian product Laplacian spectra are exact; use compose_cartesian_laplacian"
                .into(),
        ));
    }
    let mu_g = Spectrum::new(factor_laplacian_eigenvalues(g)?, SpectrumKind::Laplacian);
    let mu_h = Spectrum::new(factor_laplacian_eigenvalues(h)?, SpectrumKind::Laplacian);
    let ps = PairedFactorSpectra::new(
        &g.degree_spectrum(),
        &h.degree_spectrum(),
        &mu_g,
        &mu_h,
        method,
        seed,
    )?;
    Ok(match kind {
        ProductKind::Direct => estimate_direct_laplacian(&ps),
        ProductKind::Strong => estimate_strong_laplacian(&ps),
        ProductKind::Cartesian => unreachable!(),
    })
}
