//! Random inputs for property checks.

use rand::seq::index::sample;
use rand::Rng;

use crate::graphs::{is_resolving_general, Graph};
use crate::hypercube::{Dimension, Landmarks, Permutation, Vertex};
use crate::resolve::is_resolving_fast;

/// `size` distinct uniformly random vertices, in random order.
pub fn random_landmarks<R: Rng + ?Sized>(rng: &mut R, n: Dimension, size: usize) -> Landmarks {
    let size = size.clamp(1, n.vertex_count());
    let members = sample(rng, n.vertex_count(), size)
        .into_iter()
        .map(|i| Vertex::from_bits(i as u32))
        .collect();
    Landmarks::new(n, members).expect("sampled indices are distinct and in range")
}

pub fn random_vertex<R: Rng + ?Sized>(rng: &mut R, n: Dimension) -> Vertex {
    Vertex::from_bits(rng.gen_range(0..=n.mask()))
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: Dimension) -> Permutation {
    use rand::seq::SliceRandom;
    let mut images: Vec<u32> = (0..n.get()).collect();
    images.shuffle(rng);
    Permutation::new(n, images).expect("shuffle is a permutation")
}

/// Random set grown one random vertex at a time until it resolves.
pub fn random_resolving_set<R: Rng + ?Sized>(rng: &mut R, n: Dimension) -> Landmarks {
    let size = rng.gen_range(1..=n.get() as usize);
    let mut s = random_landmarks(rng, n, size);
    while !is_resolving_fast(&s).resolving {
        let v = random_vertex(rng, n);
        if !s.contains(v) {
            s = s.with(v).expect("fresh vertex");
        }
    }
    s
}

/// Connected graph on `vertex_count` vertices: a random tree plus each
/// remaining pair independently with probability `extra_edge_p`.
pub fn random_connected_graph<R: Rng + ?Sized>(
    rng: &mut R,
    vertex_count: usize,
    extra_edge_p: f64,
) -> Graph {
    let mut edges = Vec::new();
    let mut present = std::collections::HashSet::new();
    for v in 1..vertex_count {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
        present.insert((u, v));
    }
    for u in 0..vertex_count {
        for v in u + 1..vertex_count {
            if !present.contains(&(u, v)) && rng.gen_bool(extra_edge_p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(vertex_count, &edges).expect("generated edges are simple")
}

/// Random vertices added until they resolve `g`; `g` must be connected.
pub fn random_general_resolving_set<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> Vec<usize> {
    let mut set = vec![rng.gen_range(0..g.vertex_count())];
    while !is_resolving_general(g, &set)
        .expect("connected graph, valid indices")
        .resolving
    {
        let v = rng.gen_range(0..g.vertex_count());
        if !set.contains(&v) {
            set.push(v);
        }
    }
    set
}
