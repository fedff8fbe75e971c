//! Greedy modularity optimization by local moving and graph folding.
//!
//! Each level sweeps the nodes, moving one node at a time into the neighbor
//! community with the best gain; when a sweep makes no move the level's
//! partition is folded into a coarser graph and the process repeats until
//! modularity stops strictly increasing. The result is a lower bound on the
//! optimal modularity.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use satcomm_graph::{GraphBuilder, Partition, WeightedGraph};
use satcomm_modularity::modularity;

use crate::{DetectOptions, ModularityReport};

#[derive(Clone, Debug)]
pub struct OneLevelOutcome {
    pub partition: Partition,
    /// Executions of the sweep loop, the unit behind the reported iteration
    /// count (the closing no-change sweep included).
    pub sweeps: usize,
    pub moved: bool,
    pub capped: bool,
}

/// One local-moving level. Every node starts in its own community; a node
/// joins the neighbor community whose gain strictly beats both zero and the
/// gain of staying put (node's own contribution removed first). Gains follow
/// the unnormalized form k_{i,C} - deg(i) * D_C / W, which orders candidates
/// exactly like the modularity difference. Equal best gains go to the lowest
/// community id.
pub fn one_level(g: &WeightedGraph, opts: &DetectOptions) -> OneLevelOutcome {
    let n = g.node_count();
    let w_total = g.total_weight();
    if n == 0 || w_total <= 0.0 {
        return OneLevelOutcome {
            partition: Partition::singletons(n),
            sweeps: 0,
            moved: false,
            capped: false,
        };
    }

    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut community_degree: Vec<f64> = (0..n as u32).map(|i| g.degree(i)).collect();
    let mut weight_to: Vec<f64> = vec![0.0; n];
    let mut candidates: Vec<u32> = Vec::new();

    let mut order: Vec<u32> = (0..n as u32).collect();
    if opts.shuffle {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.seed));
    }

    let mut sweeps = 0usize;
    let mut moved = false;
    let capped = loop {
        sweeps += 1;
        let mut changed = false;
        for &i in &order {
            let current = labels[i as usize];
            let deg_i = g.degree(i);

            for (j, w) in g.neighbors(i) {
                if j == i || w <= 0.0 {
                    continue;
                }
                let c = labels[j as usize];
                if weight_to[c as usize] == 0.0 {
                    candidates.push(c);
                }
                weight_to[c as usize] += w;
            }

            community_degree[current as usize] -= deg_i;
            let stay = weight_to[current as usize]
                - deg_i * community_degree[current as usize] / w_total;

            let mut best = current;
            let mut best_gain = stay.max(0.0);
            candidates.sort_unstable();
            for &c in &candidates {
                if c == current {
                    continue;
                }
                let gain =
                    weight_to[c as usize] - deg_i * community_degree[c as usize] / w_total;
                if gain > best_gain {
                    best_gain = gain;
                    best = c;
                }
            }

            community_degree[best as usize] += deg_i;
            if best != current {
                labels[i as usize] = best;
                changed = true;
                moved = true;
            }

            for &c in &candidates {
                weight_to[c as usize] = 0.0;
            }
            candidates.clear();
        }
        if !changed {
            break false;
        }
        if sweeps >= opts.max_sweeps {
            break true;
        }
    };

    OneLevelOutcome {
        partition: Partition::from_labels(labels),
        sweeps,
        moved,
        capped,
    }
}

/// Collapses each community to a single node. Edge weights sum over ordered
/// member pairs, so a community's internal mass becomes its node's self-loop
/// and the total weight is preserved exactly; the modularity of the identity
/// partition on the folded graph equals the modularity of `p` on `g`.
pub fn fold(g: &WeightedGraph, p: &Partition) -> WeightedGraph {
    assert_eq!(
        p.node_count(),
        g.node_count(),
        "partition must cover the graph"
    );
    let (compact, k) = p.compact();
    let mut builder = GraphBuilder::new(k);
    for i in 0..g.node_count() as u32 {
        let ci = compact.label(i);
        for (j, w) in g.neighbors(i) {
            if j < i {
                continue; // undirected edges handled once, from the low end
            }
            let cj = compact.label(j);
            if i == j {
                builder.add_self_loop(ci, w);
            } else if ci == cj {
                builder.add_self_loop(ci, 2.0 * w);
            } else {
                builder.add_edge(ci, cj, w);
            }
        }
    }
    builder.build()
}

/// Full pipeline: local moving, folding, repeat while modularity strictly
/// improves. Returns the composed partition of the original nodes and the
/// run report.
pub fn louvain(g: &WeightedGraph, opts: &DetectOptions) -> (Partition, ModularityReport) {
    let (partition, report, _) = run(g, opts);
    (partition, report)
}

/// Modularity after each accepted level, in order; strictly increasing by
/// construction. Exposed for diagnostics.
pub fn louvain_levels(g: &WeightedGraph, opts: &DetectOptions) -> Vec<f64> {
    run(g, opts).2
}

fn run(g: &WeightedGraph, opts: &DetectOptions) -> (Partition, ModularityReport, Vec<f64>) {
    let n = g.node_count();
    if g.total_weight() <= 0.0 {
        let partition = Partition::singletons(n);
        let report = ModularityReport {
            q: 0.0,
            num_communities: n,
            largest_fraction: if n == 0 { 0.0 } else { 1.0 / n as f64 },
            iterations: 0,
            sweep_capped: false,
            degenerate: true,
        };
        return (partition, report, Vec::new());
    }

    let mut composed: Vec<u32> = (0..n as u32).collect();
    let mut current: Option<WeightedGraph> = None; // None = original graph
    let mut q_current = modularity(g, &Partition::singletons(n)).expect("cover").q;
    let mut iterations = 0usize;
    let mut capped = false;
    let mut level_q = Vec::new();

    loop {
        let level_graph = current.as_ref().unwrap_or(g);
        let outcome = one_level(level_graph, opts);
        iterations += outcome.sweeps;
        capped |= outcome.capped;
        if !outcome.moved {
            break;
        }
        let q_new = modularity(level_graph, &outcome.partition).expect("cover").q;
        if q_new <= q_current {
            break;
        }
        let (compact, _) = outcome.partition.compact();
        for label in composed.iter_mut() {
            *label = compact.label(*label);
        }
        current = Some(fold(level_graph, &outcome.partition));
        q_current = q_new;
        level_q.push(q_new);
    }

    let partition = Partition::from_labels(composed);
    let eval = modularity(g, &partition).expect("cover");
    let report = ModularityReport {
        q: eval.q,
        num_communities: partition.num_communities(),
        largest_fraction: partition.largest_fraction(),
        iterations,
        sweep_capped: capped,
        degenerate: false,
    };
    (partition, report, level_q)
}
