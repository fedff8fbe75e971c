/// A labeling of graph nodes into communities. Labels are arbitrary ids;
/// `compact` renumbers them densely in order of first appearance, which is
/// the canonical form used by folding and by every external format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<u32>,
}

impl Partition {
    pub fn from_labels(labels: Vec<u32>) -> Partition {
        Partition { labels }
    }

    /// Every node in its own community.
    pub fn singletons(node_count: usize) -> Partition {
        Partition {
            labels: (0..node_count as u32).collect(),
        }
    }

    pub fn single_community(node_count: usize) -> Partition {
        Partition {
            labels: vec![0; node_count],
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, node: u32) -> u32 {
        self.labels[node as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Dense relabeling 0..k by first appearance; returns the community count.
    pub fn compact(&self) -> (Partition, usize) {
        let mut remap = std::collections::HashMap::new();
        let mut next = 0u32;
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                *remap.entry(l).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                })
            })
            .collect();
        (Partition { labels }, next as usize)
    }

    pub fn num_communities(&self) -> usize {
        let mut seen: Vec<u32> = self.labels.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Fraction of nodes in the largest community.
    pub fn largest_fraction(&self) -> f64 {
        if self.labels.is_empty() {
            return 0.0;
        }
        let (compact, k) = self.compact();
        let mut counts = vec![0usize; k];
        for &l in compact.labels() {
            counts[l as usize] += 1;
        }
        *counts.iter().max().unwrap() as f64 / self.labels.len() as f64
    }

    /// Member lists keyed by compact community id.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let (compact, k) = self.compact();
        let mut groups = vec![Vec::new(); k];
        for (node, &l) in compact.labels().iter().enumerate() {
            groups[l as usize].push(node as u32);
        }
        groups
    }
}
