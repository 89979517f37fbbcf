use serde::{Deserialize, Serialize};

/// What a spectrum is a spectrum *of*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Degree,
    Adjacency,
    Laplacian,
}

/// A multiset of real eigenvalues (or degrees), stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    kind: SpectrumKind,
}

impl Spectrum {
    /// Sorts `values` ascending and wraps them.
    pub fn new(mut values: Vec<f64>, kind: SpectrumKind) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).expect("NaN in spectrum"));
        Spectrum { values, kind }
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
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

    /// Positional comparison of two sorted spectra with absolute tolerance.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}
