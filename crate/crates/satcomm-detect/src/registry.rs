//! Runtime-selectable detection strategies, keyed by name.

use satcomm_graph::{BipartiteGraph, Partition, WeightedGraph};

use crate::{label_propagation, louvain, louvain_bipartite, DetectOptions, ModularityReport};

pub trait CommunityDetector: Send + Sync {
    /// Registry key; also the CLI's `--alg` value.
    fn name(&self) -> &'static str;

    fn detect(&self, g: &WeightedGraph, opts: &DetectOptions) -> (Partition, ModularityReport);

    fn supports_bipartite(&self) -> bool {
        false
    }

    /// `None` when the strategy has no bipartite form.
    fn detect_bipartite(
        &self,
        g: &BipartiteGraph,
        opts: &DetectOptions,
    ) -> Option<(Partition, ModularityReport)> {
        let _ = (g, opts);
        None
    }
}

struct LouvainDetector;

impl CommunityDetector for LouvainDetector {
    fn name(&self) -> &'static str {
        "louvain"
    }

    fn detect(&self, g: &WeightedGraph, opts: &DetectOptions) -> (Partition, ModularityReport) {
        louvain(g, opts)
    }

    fn supports_bipartite(&self) -> bool {
        true
    }

    fn detect_bipartite(
        &self,
        g: &BipartiteGraph,
        opts: &DetectOptions,
    ) -> Option<(Partition, ModularityReport)> {
        Some(louvain_bipartite(g, opts))
    }
}

struct LpaDetector;

impl CommunityDetector for LpaDetector {
    fn name(&self) -> &'static str {
        "lpa"
    }

    fn detect(&self, g: &WeightedGraph, opts: &DetectOptions) -> (Partition, ModularityReport) {
        label_propagation(g, opts)
    }
}

static DETECTORS: [&dyn CommunityDetector; 2] = [&LouvainDetector, &LpaDetector];

pub fn detectors() -> &'static [&'static dyn CommunityDetector] {
    &DETECTORS
}

pub fn detector_by_name(name: &str) -> Option<&'static dyn CommunityDetector> {
    detectors().iter().copied().find(|d| d.name() == name)
}

#[cfg(test)]
mod tests {
    use satcomm_graph::{BipartiteBuilder, GraphBuilder};

    use super::*;

    #[test]
    fn lookup_by_name() {
        assert!(detector_by_name("louvain").is_some());
        assert!(detector_by_name("lpa").is_some());
        assert!(detector_by_name("cnm").is_none());
        let names: Vec<&str> = detectors().iter().map(|d| d.name()).collect();
        assert_eq!(names, vec!["louvain", "lpa"]);
    }

    #[test]
    fn bipartite_support_flags() {
        let mut b = BipartiteBuilder::new(2, 1);
        b.add_edge(0, 0, 0.5);
        b.add_edge(1, 0, 0.5);
        let g = b.build();
        let opts = DetectOptions::default();

        let louvain = detector_by_name("louvain").unwrap();
        assert!(louvain.supports_bipartite());
        assert!(louvain.detect_bipartite(&g, &opts).is_some());

        let lpa = detector_by_name("lpa").unwrap();
        assert!(!lpa.supports_bipartite());
        assert!(lpa.detect_bipartite(&g, &opts).is_none());
    }

    #[test]
    fn strategies_agree_on_disjoint_triangles() {
        let mut b = GraphBuilder::new(6);
        for &(u, v) in &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            b.add_edge(u, v, 1.0);
        }
        let g = b.build();
        for detector in detectors() {
            let (_, report) = detector.detect(&g, &DetectOptions::default());
            assert_eq!(report.num_communities, 2, "{}", detector.name());
            assert!((report.q - 0.5).abs() < 1e-9);
        }
    }
}
