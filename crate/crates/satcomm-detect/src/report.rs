use serde::Serialize;

#[derive(Clone, Debug)]
pub struct DetectOptions {
    pub seed: u64,
    /// Safety valve on local-moving sweeps per level.
    pub max_sweeps: usize,
    /// Shuffle the node visiting order once per level with the seed
    /// (default is ascending node id).
    pub shuffle: bool,
}

impl Default for DetectOptions {
    fn default() -> DetectOptions {
        DetectOptions {
            seed: 42,
            max_sweeps: 10_000,
            shuffle: false,
        }
    }
}

impl DetectOptions {
    pub fn seeded(seed: u64) -> DetectOptions {
        DetectOptions {
            seed,
            ..DetectOptions::default()
        }
    }
}

/// What a detection run reports: the modularity of the returned partition,
/// its community count, the fraction of nodes in the largest community, and
/// the total number of local-moving sweeps across all levels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModularityReport {
    pub q: f64,
    pub num_communities: usize,
    pub largest_fraction: f64,
    pub iterations: usize,
    /// A level ran into the sweep cap before settling.
    pub sweep_capped: bool,
    /// The graph carried no weight; the identity partition was returned.
    pub degenerate: bool,
}

impl ModularityReport {
    pub fn csv_header() -> &'static str {
        "q,num_communities,largest_fraction,iterations"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{:.6},{},{:.6},{}",
            self.q, self.num_communities, self.largest_fraction, self.iterations
        )
    }
}
