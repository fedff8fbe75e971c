use crate::{Partition, WeightedGraph};

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Labels two nodes alike iff a positive-weight path joins them. Component
/// count and largest-component fraction come off the returned partition.
pub fn connected_components(g: &WeightedGraph) -> Partition {
    let n = g.node_count();
    let mut uf = UnionFind::new(n);
    for x in 0..n as u32 {
        for (y, w) in g.neighbors(x) {
            if w > 0.0 && y > x {
                uf.union(x, y);
            }
        }
    }
    let labels = (0..n as u32).map(|x| uf.find(x)).collect();
    Partition::from_labels(labels).compact().0
}
