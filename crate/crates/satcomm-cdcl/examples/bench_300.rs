use std::time::Instant;

use satcomm_cdcl::{solve, SolveConfig};
use satcomm_cnf::{gen_random, GeneratorConfig};

fn main() {
    for decay in [0.80f64, 0.90, 0.95, 0.99] {
        for interval in [32u64, 100, 512] {
            let mut total = 0u64;
            let mut t_total = 0.0;
            for seed in [1u64, 2] {
                let f = gen_random(&GeneratorConfig::uniform(250, 4.25, 3, seed)).unwrap();
                let cfg = SolveConfig {
                    seed,
                    reduce_db: true,
                    conflict_budget: 3_000_000,
                    var_decay: decay,
                    restart_interval: interval,
                    ..SolveConfig::default()
                };
                let t0 = Instant::now();
                let out = solve(&f, &cfg).unwrap();
                total += out.total_conflicts;
                t_total += t0.elapsed().as_secs_f64();
            }
            eprintln!("decay={decay} interval={interval}: conflicts_sum={total} time={t_total:.1}s");
        }
    }
}
