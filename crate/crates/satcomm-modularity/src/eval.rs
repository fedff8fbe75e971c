use satcomm_graph::{BipartiteGraph, KahanSum, Partition, WeightedGraph};

use crate::ModularityError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularityEval {
    pub q: f64,
    /// Set when the graph carries no weight; Q is then defined as 0 so
    /// pipelines over pathological instances keep going.
    pub degenerate: bool,
}

impl ModularityEval {
    fn degenerate() -> ModularityEval {
        ModularityEval {
            q: 0.0,
            degenerate: true,
        }
    }
}

/// Q(G, P) = sum over communities of [S_i/W - (D_i/W)^2], where S_i is the
/// ordered-pair weight inside community i, D_i its degree sum and W the total
/// degree. The single-community partition scores exactly zero.
pub fn modularity(g: &WeightedGraph, p: &Partition) -> Result<ModularityEval, ModularityError> {
    if p.node_count() != g.node_count() {
        return Err(ModularityError::PartitionSize {
            partition: p.node_count(),
            graph: g.node_count(),
        });
    }
    let w_total = g.total_weight();
    if w_total <= 0.0 {
        return Ok(ModularityEval::degenerate());
    }
    let (compact, k) = p.compact();
    let mut intra = vec![KahanSum::default(); k];
    let mut degree = vec![KahanSum::default(); k];
    for x in 0..g.node_count() as u32 {
        let cx = compact.label(x) as usize;
        // row-local accumulation keeps the all-intra row bitwise equal to the
        // cached degree, making Q(single community) exactly zero
        let row: KahanSum = g
            .neighbors(x)
            .filter(|&(y, _)| compact.label(y) == compact.label(x))
            .map(|(_, w)| w)
            .collect();
        intra[cx].add(row.value());
        degree[cx].add(g.degree(x));
    }
    let mut q = KahanSum::default();
    for i in 0..k {
        let share = degree[i].value() / w_total;
        q.add(intra[i].value() / w_total - share * share);
    }
    Ok(ModularityEval {
        q: q.value(),
        degenerate: false,
    })
}

/// Barber bipartite modularity: Q = sum over communities of
/// [E_i/W_b - (D1_i/W_b1)*(D2_i/W_b2)] with E_i the cross-side weight inside
/// community i and the D terms side-restricted degree sums over their own
/// side totals. Communities may mix nodes of both sides.
pub fn modularity_bipartite(
    g: &BipartiteGraph,
    p: &Partition,
) -> Result<ModularityEval, ModularityError> {
    if p.node_count() != g.node_count() {
        return Err(ModularityError::PartitionSize {
            partition: p.node_count(),
            graph: g.node_count(),
        });
    }
    let w_total = g.total_weight();
    if w_total <= 0.0 {
        return Ok(ModularityEval::degenerate());
    }
    let (compact, k) = p.compact();
    let left_count = g.left_count() as u32;

    let mut internal = vec![KahanSum::default(); k];
    let mut left_degree = vec![KahanSum::default(); k];
    let mut right_degree = vec![KahanSum::default(); k];
    let mut right_total = KahanSum::default();

    for x in 0..left_count {
        let cx = compact.label(x) as usize;
        let row: KahanSum = g
            .neighbors(x)
            .filter(|&(y, _)| compact.label(y) == compact.label(x))
            .map(|(_, w)| w)
            .collect();
        internal[cx].add(row.value());
        left_degree[cx].add(g.degree(x));
    }
    for y in left_count..g.node_count() as u32 {
        let cy = compact.label(y) as usize;
        right_degree[cy].add(g.degree(y));
        right_total.add(g.degree(y));
    }

    let right_total = right_total.value();
    let mut q = KahanSum::default();
    for i in 0..k {
        q.add(
            internal[i].value() / w_total
                - (left_degree[i].value() / w_total) * (right_degree[i].value() / right_total),
        );
    }
    Ok(ModularityEval {
        q: q.value(),
        degenerate: false,
    })
}
