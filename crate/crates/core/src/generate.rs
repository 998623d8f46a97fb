//! Seeded random instances for tests and benchmarks.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::Rng;

use crate::decomp::TreeDecomposition;
use crate::graph::{Color, Graph, ListAssignment, Mode};
use crate::reduction::MccInstance;

/// Shape of a random partial k-tree.
#[derive(Debug, Clone, Copy)]
pub struct KTreeParams {
    pub n: usize,
    pub k: usize,
    /// Probability that a new vertex attaches to a clique containing
    /// vertex 0, which pushes up the maximum degree.
    pub hub_bias: f64,
    /// Probability that each k-tree edge is kept.
    pub keep: f64,
}

/// A random partial k-tree with a width-k decomposition of it.
pub fn random_partial_ktree<R: Rng + ?Sized>(rng: &mut R, params: KTreeParams) -> (Graph, TreeDecomposition) {
    let KTreeParams { n, k, hub_bias, keep } = params;
    assert!(n > k, "a k-tree needs at least k + 1 vertices");
    let mut pairs = Vec::new();
    for a in 0..=k {
        for b in a + 1..=k {
            pairs.push((a, b));
        }
    }
    let mut bags: Vec<Vec<usize>> = vec![(0..=k).collect()];
    let mut tree = Vec::new();
    // k-cliques to attach to, each with a node whose bag contains it.
    let mut cliques: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut hub: Vec<usize> = Vec::new();
    let push = |c: Vec<usize>, t: usize, cliques: &mut Vec<(Vec<usize>, usize)>, hub: &mut Vec<usize>| {
        if c.first() == Some(&0) {
            hub.push(cliques.len());
        }
        cliques.push((c, t));
    };
    for skip in 0..=k {
        let c: Vec<usize> = (0..=k).filter(|&x| x != skip).collect();
        push(c, 0, &mut cliques, &mut hub);
    }
    for v in k + 1..n {
        let idx = if !hub.is_empty() && rng.gen_bool(hub_bias) {
            hub[rng.gen_range(0..hub.len())]
        } else {
            rng.gen_range(0..cliques.len())
        };
        let (clique, parent) = cliques[idx].clone();
        pairs.extend(clique.iter().map(|&u| (u, v)));
        let t = bags.len();
        let mut bag = clique.clone();
        bag.push(v);
        bags.push(bag);
        tree.push((parent, t));
        for skip in 0..k {
            let mut c: Vec<usize> = clique.iter().enumerate().filter(|&(x, _)| x != skip).map(|(_, &u)| u).collect();
            c.push(v);
            push(c, t, &mut cliques, &mut hub);
        }
    }
    pairs.retain(|_| rng.gen_bool(keep));
    let g = Graph::new(n, &pairs).expect("k-tree edges are simple");
    (g, TreeDecomposition::new(n, bags, tree))
}

/// A random tree on `n` vertices in which vertex 0 has degree at least
/// `hub_degree`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize, hub_degree: usize) -> Graph {
    assert!(hub_degree < n, "hub degree must be below n");
    let mut pairs: Vec<(usize, usize)> = (1..=hub_degree).map(|v| (0, v)).collect();
    for v in hub_degree + 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    Graph::new(n, &pairs).expect("tree edges are simple")
}

/// Lists of `len` distinct colours drawn from `1..=universe`.
pub fn random_lists<R: Rng + ?Sized>(rng: &mut R, g: &Graph, mode: Mode, len: usize, universe: usize) -> ListAssignment {
    let mut lists = ListAssignment::new();
    for x in g.elements(mode) {
        let colors = sample(rng, universe, len).into_iter().map(|c| c as Color + 1);
        lists.insert(x, colors).expect("lists are non-empty");
    }
    lists
}

/// A random k-coloured instance with classes of size `1..=p`. Each pair of
/// vertices in different classes is joined with probability `density`;
/// with `plant` set, one vertex per class is made into a clique.
pub fn random_mcc<R: Rng + ?Sized>(rng: &mut R, k: usize, p: usize, density: f64, plant: bool) -> MccInstance {
    let mut classes = Vec::with_capacity(k);
    let mut n = 0;
    for _ in 0..k {
        let size = rng.gen_range(1..=p);
        classes.push((n..n + size).collect::<Vec<_>>());
        n += size;
    }
    let planted: Vec<usize> = classes.iter().map(|c: &Vec<usize>| c[rng.gen_range(0..c.len())]).collect();
    let mut pairs = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            for &u in &classes[a] {
                for &v in &classes[b] {
                    let forced = plant && planted[a] == u && planted[b] == v;
                    if forced || rng.gen_bool(density) {
                        pairs.push((u, v));
                    }
                }
            }
        }
    }
    let graph = Graph::new(n, &pairs).expect("pairs are distinct");
    MccInstance { graph, classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ktrees_have_width_k_decompositions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 1..=3 {
            for keep in [1.0, 0.6] {
                let (g, td) = random_partial_ktree(&mut rng, KTreeParams { n: 40, k, hub_bias: 0.3, keep });
                assert_eq!(validate(&g, &td), Ok(k));
                assert!(g.m() <= k * g.n());
                if keep == 1.0 {
                    assert_eq!(g.m(), k * (k + 1) / 2 + (40 - k - 1) * k);
                }
            }
        }
    }

    #[test]
    fn hub_bias_raises_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (g, _) = random_partial_ktree(&mut rng, KTreeParams { n: 300, k: 2, hub_bias: 0.9, keep: 1.0 });
        assert!(g.max_degree() >= 128);
    }

    #[test]
    fn trees_and_lists() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_tree(&mut rng, 50, 30);
        assert_eq!(t.m(), 49);
        assert!(t.degree(0) >= 30);
        let l = random_lists(&mut rng, &t, Mode::Total, 5, 12);
        assert_eq!(l.len(), 99);
        assert_eq!(l.min_len(&t, Mode::Total), Some(5));
        assert!(l.iter().all(|(_, c)| c.iter().all(|&x| (1..=12).contains(&x))));
    }

    #[test]
    fn planted_mcc_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_mcc(&mut rng, 4, 3, 0.3, true);
        assert!(m.class_map().is_ok());
        assert_eq!(m.k(), 4);
    }
}
