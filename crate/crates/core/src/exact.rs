//! Closed-form spectral compositions: degree spectra for all three products,
//! adjacency spectra for all three, and the Laplacian spectrum of a
//! Cartesian product. No closed form exists for direct/strong product
//! Laplacians; see the estimator for the heuristic alternative.

use crate::error::{Error, Result};
use crate::products::ProductKind;
use crate::spectrum::{Spectrum, SpectrumKind};

fn combine(kind: ProductKind, x: f64, y: f64) -> f64 {
    match kind {
        ProductKind::Cartesian => x + y,
        ProductKind::Direct => x * y,
        ProductKind::Strong => x + y + x * y,
    }
}

fn cross<F: Fn(f64, f64) -> f64>(a: &Spectrum, b: &Spectrum, f: F) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a.values() {
        for &y in b.values() {
            out.push(f(x, y));
        }
    }
    out
}

/// Degree spectrum of a product from factor degree spectra:
/// d_i + d_j (cartesian), d_i * d_j (direct), d_i + d_j + d_i * d_j (strong).
pub fn compose_degree_spectrum(kind: ProductKind, dg: &Spectrum, dh: &Spectrum) -> Result<Spectrum> {
    expect_kind(dg, SpectrumKind::Degree)?;
    expect_kind(dh, SpectrumKind::Degree)?;
    Ok(Spectrum::new(
        cross(dg, dh, |x, y| combine(kind, x, y)),
        SpectrumKind::Degree,
    ))
}

/// Adjacency spectrum of a product from factor adjacency spectra; the
/// same three combination rules as the degree spectra.
pub fn compose_adjacency_spectrum(
    kind: ProductKind,
    lam_g: &Spectrum,
    lam_h: &Spectrum,
) -> Result<Spectrum> {
    expect_kind(lam_g, SpectrumKind::Adjacency)?;
    expect_kind(lam_h, SpectrumKind::Adjacency)?;
    Ok(Spectrum::new(
        cross(lam_g, lam_h, |x, y| combine(kind, x, y)),
        SpectrumKind::Adjacency,
    ))
}

/// Laplacian spectrum of a Cartesian product: {mu_i + mu_j}. Exact.
pub fn compose_cartesian_laplacian(mu_g: &Spectrum, mu_h: &Spectrum) -> Result<Spectrum> {
    expect_kind(mu_g, SpectrumKind::Laplacian)?;
    expect_kind(mu_h, SpectrumKind::Laplacian)?;
    Ok(Spectrum::new(
        cross(mu_g, mu_h, |x, y| x + y),
        SpectrumKind::Laplacian,
    ))
}

fn expect_kind(s: &Spectrum, kind: SpectrumKind) -> Result<()> {
    if s.kind() != kind {
        return Err(Error::Input(format!(
            "expected {kind:?} spectrum, got {:?}",
            s.kind()
        )));
    }
    Ok(())
}
