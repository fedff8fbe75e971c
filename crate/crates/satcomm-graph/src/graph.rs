use std::collections::HashMap;

/// Neumaier compensated summation. Modularity gaps of 1e-3 matter on graphs
/// with millions of edges, so weight totals avoid naive accumulation.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::default();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Undirected weighted graph in CSR form. Immutable once built.
///
/// Each undirected edge is stored in both endpoint rows; a self-loop appears
/// once in its node's row. `degree(x)` is the row sum (self-loop counted
/// once) and `total_weight` is the sum of all degrees, i.e. the weight mass
/// over ordered node pairs.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    weights: Vec<f64>,
    degree: Vec<f64>,
    total: f64,
}

impl WeightedGraph {
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, node: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        let range = self.offsets[node as usize]..self.offsets[node as usize + 1];
        self.neighbors[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    pub fn degree(&self, node: u32) -> f64 {
        self.degree[node as usize]
    }

    /// W = sum over ordered pairs (x, y) of w(x, y), self-loops once.
    pub fn total_weight(&self) -> f64 {
        self.total
    }

    /// Stored adjacency entries (undirected edges count twice, loops once).
    pub fn entry_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn weight(&self, x: u32, y: u32) -> f64 {
        let range = self.offsets[x as usize]..self.offsets[x as usize + 1];
        match self.neighbors[range.clone()].binary_search(&y) {
            Ok(i) => self.weights[range.start + i],
            Err(_) => 0.0,
        }
    }

    /// Copy with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> WeightedGraph {
        WeightedGraph {
            offsets: self.offsets.clone(),
            neighbors: self.neighbors.clone(),
            weights: self.weights.iter().map(|w| w * factor).collect(),
            degree: self.degree.iter().map(|d| d * factor).collect(),
            total: self.total * factor,
        }
    }
}

/// Accumulating builder: repeated contributions to the same pair sum into a
/// single weight, so clause multiplicity stacks up at build time.
pub struct GraphBuilder {
    node_count: usize,
    pairs: HashMap<(u32, u32), f64>,
}

impl GraphBuilder {
    pub fn new(node_count: usize) -> GraphBuilder {
        GraphBuilder {
            node_count,
            pairs: HashMap::new(),
        }
    }

    /// Adds weight between two distinct nodes.
    pub fn add_edge(&mut self, u: u32, v: u32, w: f64) {
        assert_ne!(u, v, "use add_self_loop for loops");
        debug_assert!(w >= 0.0);
        let key = (u.min(v), u.max(v));
        *self.pairs.entry(key).or_insert(0.0) += w;
    }

    pub fn add_self_loop(&mut self, u: u32, w: f64) {
        debug_assert!(w >= 0.0);
        *self.pairs.entry((u, u)).or_insert(0.0) += w;
    }

    pub fn build(self) -> WeightedGraph {
        let n = self.node_count;
        let mut entries: Vec<((u32, u32), f64)> = self.pairs.into_iter().collect();
        entries.sort_unstable_by_key(|&(k, _)| k);

        let mut counts = vec![0usize; n + 1];
        for &((u, v), _) in &entries {
            counts[u as usize + 1] += 1;
            if u != v {
                counts[v as usize + 1] += 1;
            }
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts.clone();
        let total_entries = offsets[n];
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0u32; total_entries];
        let mut weights = vec![0f64; total_entries];
        for ((u, v), w) in entries {
            neighbors[cursor[u as usize]] = v;
            weights[cursor[u as usize]] = w;
            cursor[u as usize] += 1;
            if u != v {
                neighbors[cursor[v as usize]] = u;
                weights[cursor[v as usize]] = w;
                cursor[v as usize] += 1;
            }
        }
        // rows stay sorted: sources are processed in (u, v) order and the
        // mirrored entries arrive in increasing u per row v
        let degree: Vec<f64> = (0..n)
            .map(|i| {
                weights[offsets[i]..offsets[i + 1]]
                    .iter()
                    .copied()
                    .collect::<KahanSum>()
                    .value()
            })
            .collect();
        let total = degree.iter().copied().collect::<KahanSum>().value();
        WeightedGraph {
            offsets,
            neighbors,
            weights,
            degree,
            total,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_accumulates_and_mirrors() {
        let mut b = GraphBuilder::new(3);
        b.add_edge(0, 1, 1.0);
        b.add_edge(1, 0, 0.5);
        b.add_self_loop(2, 2.0);
        let g = b.build();
        assert_eq!(g.weight(0, 1), 1.5);
        assert_eq!(g.weight(1, 0), 1.5);
        assert_eq!(g.weight(2, 2), 2.0);
        assert_eq!(g.degree(0), 1.5);
        assert_eq!(g.degree(2), 2.0);
        // W: edge (0,1) twice (ordered) + loop once
        assert_eq!(g.total_weight(), 5.0);
        assert_eq!(g.entry_count(), 3);
    }

    #[test]
    fn rows_are_sorted() {
        let mut b = GraphBuilder::new(4);
        b.add_edge(3, 1, 1.0);
        b.add_edge(3, 0, 1.0);
        b.add_edge(3, 2, 1.0);
        let g = b.build();
        let row: Vec<u32> = g.neighbors(3).map(|(v, _)| v).collect();
        assert_eq!(row, vec![0, 1, 2]);
    }

    #[test]
    fn kahan_handles_tiny_increments() {
        let mut acc = KahanSum::default();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            acc.add(1e-16);
        }
        assert!((acc.value() - (1.0 + 1e-10)).abs() < 1e-14);
    }

    #[test]
    fn scaled_multiplies_everything() {
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1, 2.0);
        let g = b.build().scaled(3.0);
        assert_eq!(g.weight(0, 1), 6.0);
        assert_eq!(g.total_weight(), 12.0);
    }
}
