use std::collections::HashMap;

use crate::graph::KahanSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Bipartite weighted graph (variables on the left, clauses on the right for
/// the CVIG). Adjacency is stored per side; partitions over a bipartite graph
/// address nodes through a unified index: left node `i` is node `i`, right
/// node `j` is node `left_count + j`.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    left_offsets: Vec<usize>,
    left_neighbors: Vec<u32>,
    left_weights: Vec<f64>,
    right_offsets: Vec<usize>,
    right_neighbors: Vec<u32>,
    right_weights: Vec<f64>,
    left_degree: Vec<f64>,
    right_degree: Vec<f64>,
    /// Total edge weight, each edge counted once.
    total: f64,
}

impl BipartiteGraph {
    pub fn left_count(&self) -> usize {
        self.left_offsets.len() - 1
    }

    pub fn right_count(&self) -> usize {
        self.right_offsets.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.left_count() + self.right_count()
    }

    pub fn side(&self, node: u32) -> Side {
        if (node as usize) < self.left_count() {
            Side::Left
        } else {
            Side::Right
        }
    }

    /// Neighbors of a node in unified indexing: a left node yields unified
    /// right-node ids and vice versa.
    pub fn neighbors(&self, node: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        let left_count = self.left_count() as u32;
        let (range, neighbors, weights, shift) = if node < left_count {
            let r = self.left_offsets[node as usize]..self.left_offsets[node as usize + 1];
            (r, &self.left_neighbors, &self.left_weights, left_count)
        } else {
            let j = node - left_count;
            let r = self.right_offsets[j as usize]..self.right_offsets[j as usize + 1];
            (r, &self.right_neighbors, &self.right_weights, 0)
        };
        neighbors[range.clone()]
            .iter()
            .map(move |&other| other + shift)
            .zip(weights[range].iter().copied())
    }

    pub fn degree(&self, node: u32) -> f64 {
        let left_count = self.left_count();
        if (node as usize) < left_count {
            self.left_degree[node as usize]
        } else {
            self.right_degree[node as usize - left_count]
        }
    }

    /// W_b: sum of all edge weights, each edge once.
    pub fn total_weight(&self) -> f64 {
        self.total
    }

    pub fn weight(&self, left: u32, right: u32) -> f64 {
        let range = self.left_offsets[left as usize]..self.left_offsets[left as usize + 1];
        match self.left_neighbors[range.clone()].binary_search(&right) {
            Ok(i) => self.left_weights[range.start + i],
            Err(_) => 0.0,
        }
    }

    pub fn scaled(&self, factor: f64) -> BipartiteGraph {
        BipartiteGraph {
            left_offsets: self.left_offsets.clone(),
            left_neighbors: self.left_neighbors.clone(),
            left_weights: self.left_weights.iter().map(|w| w * factor).collect(),
            right_offsets: self.right_offsets.clone(),
            right_neighbors: self.right_neighbors.clone(),
            right_weights: self.right_weights.iter().map(|w| w * factor).collect(),
            left_degree: self.left_degree.iter().map(|d| d * factor).collect(),
            right_degree: self.right_degree.iter().map(|d| d * factor).collect(),
            total: self.total * factor,
        }
    }
}

pub struct BipartiteBuilder {
    left_count: usize,
    right_count: usize,
    edges: HashMap<(u32, u32), f64>,
}

impl BipartiteBuilder {
    pub fn new(left_count: usize, right_count: usize) -> BipartiteBuilder {
        BipartiteBuilder {
            left_count,
            right_count,
            edges: HashMap::new(),
        }
    }

    /// Adds weight between left node `x` and right node `c` (side-local ids).
    pub fn add_edge(&mut self, x: u32, c: u32, w: f64) {
        debug_assert!(w >= 0.0);
        *self.edges.entry((x, c)).or_insert(0.0) += w;
    }

    pub fn build(self) -> BipartiteGraph {
        let mut entries: Vec<((u32, u32), f64)> = self.edges.into_iter().collect();
        entries.sort_unstable_by_key(|&(k, _)| k);

        let csr = |count: usize, keyed: &[(u32, u32, f64)]| {
            let mut offsets = vec![0usize; count + 1];
            for &(s, _, _) in keyed {
                offsets[s as usize + 1] += 1;
            }
            for i in 0..count {
                offsets[i + 1] += offsets[i];
            }
            let mut cursor = offsets.clone();
            let mut neighbors = vec![0u32; keyed.len()];
            let mut weights = vec![0f64; keyed.len()];
            for &(s, t, w) in keyed {
                neighbors[cursor[s as usize]] = t;
                weights[cursor[s as usize]] = w;
                cursor[s as usize] += 1;
            }
            (offsets, neighbors, weights)
        };

        let left_keyed: Vec<(u32, u32, f64)> =
            entries.iter().map(|&((x, c), w)| (x, c, w)).collect();
        let (left_offsets, left_neighbors, left_weights) = csr(self.left_count, &left_keyed);
        let mut right_keyed: Vec<(u32, u32, f64)> =
            entries.iter().map(|&((x, c), w)| (c, x, w)).collect();
        right_keyed.sort_unstable_by_key(|&(c, x, _)| (c, x));
        let (right_offsets, right_neighbors, right_weights) = csr(self.right_count, &right_keyed);

        let row_sum = |offsets: &[usize], weights: &[f64], i: usize| {
            weights[offsets[i]..offsets[i + 1]]
                .iter()
                .copied()
                .collect::<KahanSum>()
                .value()
        };
        let left_degree: Vec<f64> = (0..self.left_count)
            .map(|i| row_sum(&left_offsets, &left_weights, i))
            .collect();
        let right_degree: Vec<f64> = (0..self.right_count)
            .map(|i| row_sum(&right_offsets, &right_weights, i))
            .collect();
        let total = left_degree.iter().copied().collect::<KahanSum>().value();

        BipartiteGraph {
            left_offsets,
            left_neighbors,
            left_weights,
            right_offsets,
            right_neighbors,
            right_weights,
            left_degree,
            right_degree,
            total,
        }
    }
}
