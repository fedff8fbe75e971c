//! Bipartite Louvain. Local moving works directly on the Barber gain; the
//! usual folding step would destroy the two-sided structure, so each fold
//! splits every community into its variable block and its clause block and
//! keeps the graph bipartite.

use satcomm_graph::{BipartiteBuilder, BipartiteGraph, Partition, Side};
use satcomm_modularity::modularity_bipartite;

use crate::louvain::OneLevelOutcome;
use crate::{DetectOptions, ModularityReport};

/// First difference of the bipartite modularity: moving a left node into
/// community C changes Q by k_{x, C∩V2}/W - deg(x) * D2_C / W^2 relative to
/// standing alone (sides swapped for right nodes). As in the unipartite case
/// the constant 1/W factors out of the comparison.
pub fn one_level_bipartite(g: &BipartiteGraph, opts: &DetectOptions) -> OneLevelOutcome {
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
    let mut left_degree = vec![0.0f64; n];
    let mut right_degree = vec![0.0f64; n];
    for i in 0..n as u32 {
        match g.side(i) {
            Side::Left => left_degree[i as usize] = g.degree(i),
            Side::Right => right_degree[i as usize] = g.degree(i),
        }
    }
    let mut weight_to: Vec<f64> = vec![0.0; n];
    let mut candidates: Vec<u32> = Vec::new();

    let mut order: Vec<u32> = (0..n as u32).collect();
    if opts.shuffle {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed));
    }

    let mut sweeps = 0usize;
    let mut moved = false;
    let capped = loop {
        sweeps += 1;
        let mut changed = false;
        for &i in &order {
            let current = labels[i as usize] as usize;
            let deg_i = g.degree(i);
            // degrees of the community's own side get the node removed; the
            // gain reads the opposite side's sums
            let (own, other): (&mut Vec<f64>, &Vec<f64>) = match g.side(i) {
                Side::Left => (&mut left_degree, &right_degree),
                Side::Right => (&mut right_degree, &left_degree),
            };

            for (j, w) in g.neighbors(i) {
                if w <= 0.0 {
                    continue;
                }
                let c = labels[j as usize];
                if weight_to[c as usize] == 0.0 {
                    candidates.push(c);
                }
                weight_to[c as usize] += w;
            }

            own[current] -= deg_i;
            let stay = weight_to[current] - deg_i * other[current] / w_total;

            let mut best = current;
            let mut best_gain = stay.max(0.0);
            candidates.sort_unstable();
            for &c in &candidates {
                let c = c as usize;
                if c == current {
                    continue;
                }
                let gain = weight_to[c] - deg_i * other[c] / w_total;
                if gain > best_gain {
                    best_gain = gain;
                    best = c;
                }
            }

            own[best] += deg_i;
            if best != current {
                labels[i as usize] = best as u32;
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

#[derive(Clone, Debug)]
pub struct BipartiteFold {
    pub graph: BipartiteGraph,
    /// Coarse partition over the folded graph that pairs the left and right
    /// blocks of each original community; evaluates to the same bipartite
    /// modularity as the source partition on the source graph.
    pub induced: Partition,
    left_of_community: Vec<Option<u32>>,
    right_of_community: Vec<Option<u32>>,
}

impl BipartiteFold {
    /// Unified node id in the folded graph for one side of a community.
    pub fn folded_node(&self, community: u32, side: Side) -> Option<u32> {
        match side {
            Side::Left => self.left_of_community[community as usize],
            Side::Right => self.right_of_community[community as usize]
                .map(|j| j + self.graph.left_count() as u32),
        }
    }
}

/// Side-preserving fold: a community with members on both sides becomes one
/// left node and one right node; weights sum over member pairs.
pub fn fold_bipartite(g: &BipartiteGraph, p: &Partition) -> BipartiteFold {
    assert_eq!(
        p.node_count(),
        g.node_count(),
        "partition must cover the graph"
    );
    let (compact, k) = p.compact();
    let left_count = g.left_count() as u32;

    let mut left_of_community: Vec<Option<u32>> = vec![None; k];
    let mut right_of_community: Vec<Option<u32>> = vec![None; k];
    let mut next_left = 0u32;
    let mut next_right = 0u32;
    for i in 0..g.node_count() as u32 {
        let c = compact.label(i) as usize;
        if i < left_count {
            if left_of_community[c].is_none() {
                left_of_community[c] = Some(next_left);
                next_left += 1;
            }
        } else if right_of_community[c].is_none() {
            right_of_community[c] = Some(next_right);
            next_right += 1;
        }
    }

    let mut builder = BipartiteBuilder::new(next_left as usize, next_right as usize);
    for x in 0..left_count {
        let cx = left_of_community[compact.label(x) as usize].expect("left member registered");
        for (y, w) in g.neighbors(x) {
            let cy = right_of_community[compact.label(y) as usize].expect("right member");
            builder.add_edge(cx, cy, w);
        }
    }
    let graph = builder.build();

    let mut induced = vec![0u32; graph.node_count()];
    for (c, slot) in left_of_community.iter().enumerate() {
        if let Some(i) = slot {
            induced[*i as usize] = c as u32;
        }
    }
    for (c, slot) in right_of_community.iter().enumerate() {
        if let Some(j) = slot {
            induced[next_left as usize + *j as usize] = c as u32;
        }
    }

    BipartiteFold {
        graph,
        induced: Partition::from_labels(induced),
        left_of_community,
        right_of_community,
    }
}

/// Louvain over a bipartite graph: same outer loop as the unipartite method,
/// with the Barber gain and the side-preserving fold. Communities may mix
/// variables and clauses.
pub fn louvain_bipartite(g: &BipartiteGraph, opts: &DetectOptions) -> (Partition, ModularityReport) {
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
        return (partition, report);
    }

    let mut composed_label: Vec<u32> = (0..n as u32).collect();
    let mut composed_node: Vec<u32> = (0..n as u32).collect();
    let mut current: Option<BipartiteGraph> = None;
    let mut q_current = modularity_bipartite(g, &Partition::singletons(n))
        .expect("cover")
        .q;
    let mut iterations = 0usize;
    let mut capped = false;

    loop {
        let level_graph = current.as_ref().unwrap_or(g);
        let outcome = one_level_bipartite(level_graph, opts);
        iterations += outcome.sweeps;
        capped |= outcome.capped;
        if !outcome.moved {
            break;
        }
        let q_new = modularity_bipartite(level_graph, &outcome.partition)
            .expect("cover")
            .q;
        if q_new <= q_current {
            break;
        }
        let folded = fold_bipartite(level_graph, &outcome.partition);
        let (compact, _) = outcome.partition.compact();
        for o in 0..n {
            let side = if (o as u32) < g.left_count() as u32 {
                Side::Left
            } else {
                Side::Right
            };
            let community = compact.label(composed_node[o]);
            composed_label[o] = community;
            composed_node[o] = folded
                .folded_node(community, side)
                .expect("community keeps its side blocks");
        }
        current = Some(folded.graph);
        q_current = q_new;
    }

    let partition = Partition::from_labels(composed_label);
    let eval = modularity_bipartite(g, &partition).expect("cover");
    let report = ModularityReport {
        q: eval.q,
        num_communities: partition.num_communities(),
        largest_fraction: partition.largest_fraction(),
        iterations,
        sweep_capped: capped,
        degenerate: false,
    };
    (partition, report)
}
