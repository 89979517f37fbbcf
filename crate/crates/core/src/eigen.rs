//! Dense symmetric eigendecomposition (LAPACK-backed) and vector statistics.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, EigValsh, UPLO};

use crate::error::{Error, Result};
use crate::graph::DenseMatrix;
use crate::spectrum::{Spectrum, SpectrumKind};

/// Eigenvalues (ascending) with matching orthonormal eigenvectors.
/// `vectors.column(k)` pairs with `values[k]`.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: Array2<f64>,
}

impl EigenPairs {
    pub fn eigenvector(&self, k: usize) -> ndarray::ArrayView1<'_, f64> {
        self.vectors.column(k)
    }

    pub fn spectrum(&self, kind: SpectrumKind) -> Spectrum {
        Spectrum::new(self.values.clone(), kind)
    }
}

fn check_symmetric(m: &DenseMatrix) -> Result<()> {
    let (r, c) = m.dim();
    if r != c {
        return Err(Error::Input(format!("matrix is {r}x{c}, not square")));
    }
    for i in 0..r {
        for j in (i + 1)..r {
            if (m[[i, j]] - m[[j, i]]).abs() > 1e-12 {
                return Err(Error::Input(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

/// Full symmetric eigendecomposition, eigenvalues ascending.
pub fn eig_symmetric(m: &DenseMatrix) -> Result<EigenPairs> {
    check_symmetric(m)?;
    let (values, vectors) = m
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Numerical(format!("symmetric eigensolver failed: {e}")))?;
    Ok(EigenPairs {
        values: values.to_vec(),
        vectors,
    })
}

/// Eigenvalues only, ascending. Cheaper than [`eig_symmetric`] when
/// eigenvectors are not needed.
pub fn eigvals_symmetric(m: &DenseMatrix) -> Result<Vec<f64>> {
    check_symmetric(m)?;
    let values: Array1<f64> = m
        .eigvalsh(UPLO::Lower)
        .map_err(|e| Error::Numerical(format!("symmetric eigensolver failed: {e}")))?;
    Ok(values.to_vec())
}

/// Laplacian spectrum of a graph via explicit eigendecomposition.
pub fn laplacian_spectrum(g: &crate::graph::Graph) -> Result<Spectrum> {
    Ok(Spectrum::new(
        eigvals_symmetric(&g.laplacian_matrix())?,
        SpectrumKind::Laplacian,
    ))
}

/// Adjacency spectrum of a graph via explicit eigendecomposition.
pub fn adjacency_spectrum(g: &crate::graph::Graph) -> Result<Spectrum> {
    Ok(Spectrum::new(
        eigvals_symmetric(&g.adjacency_matrix())?,
        SpectrumKind::Adjacency,
    ))
}

/// Pearson correlation of two equal-length samples.
/// Errors when either sample is constant (zero variance).
pub fn pearson_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Input(format!(
            "length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 2 {
        return Err(Error::Input("need at least 2 samples".into()));
    }
    let n = a.len() as f64;
    let mean_a: f64 = a.iter().sum::<f64>() / n;
    let mean_b: f64 = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (x, y) in a.iter().zip(b) {
        let dx = x - mean_a;
        let dy = y - mean_b;
        cov += dx * dy;
        var_a += dx * dx;
        var_b += dy * dy;
    }
    if var_a == 0.0 || var_b == 0.0 {
        return Err(Error::Numerical(
            "correlation undefined for constant vector".into(),
        ));
    }
    Ok((cov / (var_a.sqrt() * var_b.sqrt())).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{star4, triangle};
    use crate::graph::Graph;
    use ndarray::Array2;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() <= tol, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn k3_laplacian_eigenvalues() {
        let pairs = eig_symmetric(&triangle().laplacian_matrix()).unwrap();
        assert_close(&pairs.values, &[0.0, 3.0, 3.0], 1e-10);
    }

    #[test]
    fn identity_eigenvalues() {
        let pairs = eig_symmetric(&Array2::<f64>::eye(4)).unwrap();
        assert_close(&pairs.values, &[1.0, 1.0, 1.0, 1.0], 1e-12);
    }

    #[test]
    fn star_laplacian_eigenvalues() {
        let pairs = eig_symmetric(&star4().laplacian_matrix()).unwrap();
        assert_close(&pairs.values, &[0.0, 1.0, 1.0, 4.0], 1e-10);
    }

    #[test]
    fn rejects_non_square_and_asymmetric() {
        assert!(eig_symmetric(&Array2::<f64>::zeros((2, 3))).is_err());
        let mut m = Array2::<f64>::zeros((2, 2));
        m[[0, 1]] = 1.0;
        assert!(eig_symmetric(&m).is_err());
    }

    #[test]
    fn residual_and_orthonormality() {
        // random symmetric matrix, decent size
        let n = 40;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut m = Array2::<f64>::zeros((n, n));
        for i in 0..n {
            for j in i..n {
                let x: f64 = rng.random_range(-1.0..1.0);
                m[[i, j]] = x;
                m[[j, i]] = x;
            }
        }
        let pairs = eig_symmetric(&m).unwrap();
        let frob = m.iter().map(|x| x * x).sum::<f64>().sqrt();
        for k in 0..n {
            let v = pairs.eigenvector(k);
            let resid = &m.dot(&v) - &(&v * pairs.values[k]);
            let norm = resid.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(norm <= 1e-8 * frob.max(1.0));
            assert!((v.dot(&v).sqrt() - 1.0).abs() <= 1e-10);
            for j in 0..k {
                assert!(v.dot(&pairs.eigenvector(j)).abs() <= 1e-8);
            }
        }
        // reconstruction
        let mut recon = Array2::<f64>::zeros((n, n));
        for k in 0..n {
            let v = pairs.eigenvector(k).to_owned();
            let outer = v
                .view()
                .insert_axis(ndarray::Axis(1))
                .dot(&v.view().insert_axis(ndarray::Axis(0)));
            recon = recon + outer * pairs.values[k];
        }
        for (a, b) in recon.iter().zip(m.iter()) {
            assert!((a - b).abs() <= 1e-7);
        }
    }

    #[test]
    fn spectrum_invariant_under_relabeling() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]).unwrap();
        // relabel nodes by the permutation 0->2, 1->4, 2->1, 3->0, 4->3
        let p = [2usize, 4, 1, 0, 3];
        let h = Graph::new(5, g.edges().map(|(u, v)| (p[u], p[v]))).unwrap();
        let sg = eigvals_symmetric(&g.laplacian_matrix()).unwrap();
        let sh = eigvals_symmetric(&h.laplacian_matrix()).unwrap();
        assert_close(&sg, &sh, 1e-8);
    }

    #[test]
    fn pearson_basics() {
        let ab = [1.0, 2.0, 3.0];
        assert!((pearson_correlation(&ab, &ab).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson_correlation(&ab, &[-1.0, -2.0, -3.0]).unwrap() + 1.0).abs() < 1e-12);
        assert!((pearson_correlation(&ab, &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!(pearson_correlation(&ab, &[5.0, 5.0, 5.0]).is_err());
        assert!(pearson_correlation(&ab, &[1.0, 2.0]).is_err());
    }
}
