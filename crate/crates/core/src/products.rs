//! Kronecker algebra and the three product-graph constructors.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DenseMatrix, Graph};

/// The three fundamental graph products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cartesian,
    Direct,
    Strong,
}

impl ProductKind {
    pub const ALL: [ProductKind; 3] = [
        ProductKind::Cartesian,
        ProductKind::Direct,
        ProductKind::Strong,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Direct => "direct",
            ProductKind::Strong => "strong",
        }
    }
}

impl std::str::FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cartesian" => Ok(ProductKind::Cartesian),
            "direct" => Ok(ProductKind::Direct),
            "strong" => Ok(ProductKind::Strong),
            other => Err(Error::Input(format!("unknown product kind `{other}`"))),
        }
    }
}

impl std::fmt::Display for ProductKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Kronecker product: block (i, j) equals a[i, j] * b.
pub fn kron_product(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::<f64>::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let scale = a[[i, j]];
            if scale == 0.0 {
                continue;
            }
            for p in 0..br {
                for q in 0..bc {
                    out[[i * br + p, j * bc + q]] = scale * b[[p, q]];
                }
            }
        }
    }
    out
}

/// Kronecker sum: a ⊗ I + I ⊗ b, for square a and b.
pub fn kron_sum(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    if ar != ac || br != bc {
        return Err(Error::Input(format!(
            "kron_sum needs square matrices, got {ar}x{ac} and {br}x{bc}"
        )));
    }
    let mut out = kron_product(a, &Array2::<f64>::eye(br));
    for i in 0..ar {
        for p in 0..br {
            for q in 0..br {
                out[[i * br + p, i * br + q]] += b[[p, q]];
            }
        }
    }
    Ok(out)
}

/// Builds the product graph on `g.node_count() * h.node_count()` nodes.
/// Node (a, b) flattens to a * h.node_count() + b, matching the Kronecker
/// block layout of the adjacency identities.
pub fn product_graph(kind: ProductKind, g: &Graph, h: &Graph) -> Graph {
    let nh = h.node_count();
    let flat = |a: usize, b: usize| a * nh + b;
    let mut edges = Vec::new();
    if matches!(kind, ProductKind::Cartesian | ProductKind::Strong) {
        // same g-node, h-edge
        for a in 0..g.node_count() {
            for (u, v) in h.edges() {
                edges.push((flat(a, u), flat(a, v)));
            }
        }
        // g-edge, same h-node
        for (a, b) in g.edges() {
            for u in 0..nh {
                edges.push((flat(a, u), flat(b, u)));
            }
        }
    }
    if matches!(kind, ProductKind::Direct | ProductKind::Strong) {
        // g-edge and h-edge, both diagonal orientations
        for (a, b) in g.edges() {
            for (u, v) in h.edges() {
                edges.push((flat(a, u), flat(b, v)));
                edges.push((flat(a, v), flat(b, u)));
            }
        }
    }
    Graph::new(g.node_count() * nh, edges).expect("product edges are valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eigvals_symmetric;
    use crate::graph::fixtures::{star4, triangle};
    use ndarray::array;

    #[test]
    fn kron_with_identity_factor_is_block_diagonal() {
        let b = array![[1.0, 2.0], [3.0, 4.0]];
        let out = kron_product(&Array2::<f64>::eye(2), &b);
        let expected = array![
            [1.0, 2.0, 0.0, 0.0],
            [3.0, 4.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 2.0],
            [0.0, 0.0, 3.0, 4.0],
        ];
        assert_eq!(out, expected);
    }

    #[test]
    fn kron_with_scalar_one_is_identity_map() {
        let a = array![[1.0, 2.0], [3.0, 4.0]];
        assert_eq!(kron_product(&a, &array![[1.0]]), a);
    }

    #[test]
    fn kron_sum_basics() {
        assert_eq!(
            kron_sum(&Array2::<f64>::zeros((2, 2)), &Array2::<f64>::zeros((3, 3))).unwrap(),
            Array2::<f64>::zeros((6, 6))
        );
        assert_eq!(
            kron_sum(&array![[2.0]], &array![[3.0]]).unwrap(),
            array![[5.0]]
        );
        assert!(kron_sum(&Array2::<f64>::zeros((2, 3)), &Array2::<f64>::eye(2)).is_err());
    }

    #[test]
    fn product_adjacency_matches_kronecker_identities() {
        let g = star4();
        let h = triangle();
        let ag = g.adjacency_matrix();
        let ah = h.adjacency_matrix();
        let cart = product_graph(ProductKind::Cartesian, &g, &h);
        assert_eq!(cart.adjacency_matrix(), kron_sum(&ag, &ah).unwrap());
        let direct = product_graph(ProductKind::Direct, &g, &h);
        assert_eq!(direct.adjacency_matrix(), kron_product(&ag, &ah));
        let strong = product_graph(ProductKind::Strong, &g, &h);
        assert_eq!(
            strong.adjacency_matrix(),
            kron_sum(&ag, &ah).unwrap() + kron_product(&ag, &ah)
        );
    }

    #[test]
    fn strong_product_shifted_kronecker_identity() {
        let g = star4();
        let h = triangle();
        let (ng, nh) = (g.node_count(), h.node_count());
        let shifted = kron_product(
            &(g.adjacency_matrix() + Array2::<f64>::eye(ng)),
            &(h.adjacency_matrix() + Array2::<f64>::eye(nh)),
        ) - Array2::<f64>::eye(ng * nh);
        assert_eq!(
            product_graph(ProductKind::Strong, &g, &h).adjacency_matrix(),
            shifted
        );
    }

    #[test]
    fn product_edge_counts() {
        let g = star4();
        let h = triangle();
        let (eg, eh) = (g.edge_count(), h.edge_count());
        let (ng, nh) = (g.node_count(), h.node_count());
        let cart = product_graph(ProductKind::Cartesian, &g, &h).edge_count();
        let direct = product_graph(ProductKind::Direct, &g, &h).edge_count();
        let strong = product_graph(ProductKind::Strong, &g, &h).edge_count();
        assert_eq!(cart, ng * eh + nh * eg);
        assert_eq!(direct, 2 * eg * eh);
        assert_eq!(strong, cart + direct);
    }

    #[test]
    fn commutative_at_spectral_level() {
        let g = star4();
        let h = triangle();
        for kind in ProductKind::ALL {
            let gh = eigvals_symmetric(&product_graph(kind, &g, &h).adjacency_matrix()).unwrap();
            let hg = eigvals_symmetric(&product_graph(kind, &h, &g).adjacency_matrix()).unwrap();
            for (a, b) in gh.iter().zip(&hg) {
                assert!((a - b).abs() <= 1e-8, "{kind}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn cartesian_with_single_node_is_isomorphic_copy() {
        let g = star4();
        let k1 = Graph::new(1, []).unwrap();
        let p = product_graph(ProductKind::Cartesian, &g, &k1);
        assert_eq!(p.adjacency_matrix(), g.adjacency_matrix());
    }
}
