//! Seeded random graph models: Erdős–Rényi G(n, M) and Barabási–Albert.
//!
//! Generation is pure given (model, seed). The PRNG is ChaCha8, fixed for
//! the lifetime of this crate so recorded seeds reproduce graphs exactly.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

const ER_CONNECTIVITY_RESAMPLES: usize = 10_000;

/// A random graph model, parsed from `er:N:M` or `ba:N:m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphModel {
    /// G(n, M): exactly `edges` distinct edges, resampled until connected.
    Er { nodes: usize, edges: usize },
    /// Preferential attachment: clique on `edges_per_node + 1` seed nodes,
    /// each newcomer attaches to `edges_per_node` distinct existing nodes
    /// with probability proportional to current degree.
    Ba { nodes: usize, edges_per_node: usize },
}

impl GraphModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GraphModel::Er { nodes, edges } => {
                if nodes == 0 {
                    return Err(Error::Infeasible("er: need at least one node".into()));
                }
                let max = nodes * (nodes - 1) / 2;
                if edges > max {
                    return Err(Error::Infeasible(format!(
                        "er: {edges} edges exceeds maximum {max} for {nodes} nodes"
                    )));
                }
                if nodes > 1 && edges < nodes - 1 {
                    return Err(Error::Infeasible(format!(
                        "er: {edges} edges cannot connect {nodes} nodes"
                    )));
                }
                Ok(())
            }
            GraphModel::Ba {
                nodes,
                edges_per_node,
            } => {
                if edges_per_node == 0 || edges_per_node >= nodes {
                    return Err(Error::Infeasible(format!(
                        "ba: need 1 <= edges_per_node < nodes, got {edges_per_node} and {nodes}"
                    )));
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for GraphModel {
    type Err = Error;

    /// `er:N:M` or `ba:N:m`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Input(format!("invalid model `{s}`, expected er:N:M or ba:N:m"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let a: usize = parts[1].parse().map_err(|_| bad())?;
        let b: usize = parts[2].parse().map_err(|_| bad())?;
        let model = match parts[0] {
            "er" => GraphModel::Er { nodes: a, edges: b },
            "ba" => GraphModel::Ba {
                nodes: a,
                edges_per_node: b,
            },
            _ => return Err(bad()),
        };
        // feasibility is checked at generation time, so an infeasible
        // configuration is distinguishable from a malformed string
        Ok(model)
    }
}

impl std::fmt::Display for GraphModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            GraphModel::Er { nodes, edges } => write!(f, "er:{nodes}:{edges}"),
            GraphModel::Ba {
                nodes,
                edges_per_node,
            } => write!(f, "ba:{nodes}:{edges_per_node}"),
        }
    }
}

/// Draws a connected simple graph from the model, deterministically from
/// the seed.
pub fn generate(model: &GraphModel, seed: u64) -> Result<Graph> {
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *model {
        GraphModel::Er { nodes, edges } => er_connected(nodes, edges, &mut rng),
        GraphModel::Ba {
            nodes,
            edges_per_node,
        } => Ok(ba(nodes, edges_per_node, &mut rng)),
    }
}

fn er_connected(nodes: usize, edges: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    // all unordered pairs, lexicographic
    let pairs: Vec<(usize, usize)> = (0..nodes)
        .flat_map(|u| ((u + 1)..nodes).map(move |v| (u, v)))
        .collect();
    for _ in 0..ER_CONNECTIVITY_RESAMPLES {
        let chosen = rand::seq::index::sample(rng, pairs.len(), edges);
        let g = Graph::new(nodes, chosen.iter().map(|i| pairs[i]))
            .expect("sampled pairs are valid edges");
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Infeasible(format!(
        "er:{nodes}:{edges} produced no connected graph in {ER_CONNECTIVITY_RESAMPLES} resamples"
    )))
}

fn ba(nodes: usize, m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..=m)
        .flat_map(|u| ((u + 1)..=m).map(move |v| (u, v)))
        .collect();
    let mut degree = vec![0usize; nodes];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    for newcomer in (m + 1)..nodes {
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        let mut total: usize = degree[..newcomer].iter().sum();
        // degree-proportional sampling without replacement
        while targets.len() < m {
            let mut pick = rng.random_range(0..total);
            let mut chosen = usize::MAX;
            for node in 0..newcomer {
                if targets.contains(&node) {
                    continue;
                }
                let w = degree[node];
                if pick < w {
                    chosen = node;
                    break;
                }
                pick -= w;
            }
            total -= degree[chosen];
            targets.push(chosen);
        }
        for &t in &targets {
            edges.push((t, newcomer));
            degree[t] += 1;
            degree[newcomer] += 1;
        }
    }
    Graph::new(nodes, edges).expect("preferential attachment yields valid simple edges")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_3_3_is_triangle() {
        let g = generate(&GraphModel::Er { nodes: 3, edges: 3 }, 1).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn ba_3_2_is_triangle() {
        let g = generate(
            &GraphModel::Ba {
                nodes: 3,
                edges_per_node: 2,
            },
            1,
        )
        .unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn er_50_100_properties() {
        let g = generate(
            &GraphModel::Er {
                nodes: 50,
                edges: 100,
            },
            7,
        )
        .unwrap();
        assert_eq!(g.edge_count(), 100);
        assert_eq!(g.degrees().iter().sum::<usize>(), 200);
        assert!(g.is_connected());
    }

    #[test]
    fn ba_edge_count_formula() {
        for (n, m) in [(50usize, 2usize), (30, 3), (10, 4)] {
            let g = generate(
                &GraphModel::Ba {
                    nodes: n,
                    edges_per_node: m,
                },
                5,
            )
            .unwrap();
            assert_eq!(g.edge_count(), m * (m + 1) / 2 + (n - m - 1) * m);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn determinism() {
        let model = GraphModel::Er {
            nodes: 20,
            edges: 40,
        };
        let a = generate(&model, 99).unwrap();
        let b = generate(&model, 99).unwrap();
        assert_eq!(a, b);
        let c = generate(&model, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn model_parsing() {
        assert_eq!(
            "er:50:100".parse::<GraphModel>().unwrap(),
            GraphModel::Er {
                nodes: 50,
                edges: 100
            }
        );
        assert_eq!(
            "ba:30:3".parse::<GraphModel>().unwrap(),
            GraphModel::Ba {
                nodes: 30,
                edges_per_node: 3
            }
        );
        assert!("er:50".parse::<GraphModel>().is_err());
        assert!("ws:10:2".parse::<GraphModel>().is_err());
        // infeasible densities parse but fail generation
        for s in ["er:10:3", "er:3:4", "ba:3:3"] {
            let model: GraphModel = s.parse().unwrap();
            assert!(matches!(generate(&model, 0), Err(Error::Infeasible(_))), "{s}");
        }
    }
}
