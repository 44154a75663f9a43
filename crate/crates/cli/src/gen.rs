//! Seeded instance generators.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use tightcycle::hypergraph::{k_subsets, Colour, ColouredHypergraph, Edge};

use crate::format::Instance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Complete host, uniformly random edge colours.
    CompleteRandom,
    /// Each k-set kept independently with probability `p`, then coloured.
    Density(f64),
}

pub fn generate(
    k: usize,
    n: usize,
    r: usize,
    model: Model,
    seed: u64,
    alpha: Option<usize>,
    lehel: bool,
) -> Result<Instance, tightcycle::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = match model {
        Model::CompleteRandom => {
            let colours: Vec<Colour> = (0..k_subsets(n, k).len())
                .map(|_| rng.random_range(1..=r))
                .collect();
            ColouredHypergraph::complete_with_colouring(k, n, r, &colours)?
        }
        Model::Density(p) => {
            let mut edges: Vec<(Edge, Colour)> = Vec::new();
            for e in k_subsets(n, k) {
                if rng.random_bool(p.clamp(0.0, 1.0)) {
                    let c = rng.random_range(1..=r);
                    edges.push((e, c));
                }
            }
            ColouredHypergraph::new(k, n, r, edges)?
        }
    };
    Ok(Instance {
        graph,
        alpha,
        lehel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_seed_deterministic() {
        let a = generate(3, 8, 2, Model::Density(0.5), 7, None, false).unwrap();
        let b = generate(3, 8, 2, Model::Density(0.5), 7, None, false).unwrap();
        let c = generate(3, 8, 2, Model::Density(0.5), 8, None, false).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_ne!(a.graph, c.graph);
    }

    #[test]
    fn complete_model_is_complete() {
        let inst = generate(3, 6, 3, Model::CompleteRandom, 1, None, false).unwrap();
        assert_eq!(inst.graph.edge_count(), 20);
    }
}
