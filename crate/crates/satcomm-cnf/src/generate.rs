//! Random k-CNF generators.
//!
//! Both generators draw from a ChaCha8 stream, which is seedable and has a
//! fixed, documented algorithm, so a (config, seed) pair reproduces the same
//! instance on any platform.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::{Clause, CnfError, Formula, Literal};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub num_vars: u32,
    /// Clauses per variable; the clause count is `round(ratio * num_vars)`.
    pub ratio: f64,
    /// Clause width k; every clause gets exactly k distinct variables.
    pub clause_width: u32,
    pub seed: u64,
    /// Planted community count C. `None` selects the plain uniform model.
    pub communities: Option<u32>,
    /// Probability that a clause is drawn inside a single community
    /// (default 1.0 when unset).
    pub p_intra: Option<f64>,
}

impl GeneratorConfig {
    pub fn uniform(num_vars: u32, ratio: f64, clause_width: u32, seed: u64) -> Self {
        GeneratorConfig {
            num_vars,
            ratio,
            clause_width,
            seed,
            communities: None,
            p_intra: None,
        }
    }

    pub fn num_clauses(&self) -> usize {
        (self.ratio * self.num_vars as f64).round() as usize
    }

    fn validate(&self) -> Result<(), CnfError> {
        let bad = |msg: String| Err(CnfError::BadGeneratorConfig(msg));
        if self.clause_width < 1 {
            return bad("clause width must be >= 1".into());
        }
        if self.num_vars < self.clause_width {
            return bad(format!(
                "need at least k={} variables, got n={}",
                self.clause_width, self.num_vars
            ));
        }
        if !(self.ratio > 0.0) {
            return bad(format!("ratio must be positive, got {}", self.ratio));
        }
        if let Some(p) = self.p_intra {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("p_intra must be in [0, 1], got {p}"));
            }
        }
        if let Some(c) = self.communities {
            if c < 1 || c > self.num_vars {
                return bad(format!("community count {c} out of 1..=n"));
            }
            if self.num_vars % c != 0 {
                return bad(format!(
                    "n={} not divisible by {c} communities",
                    self.num_vars
                ));
            }
            let p = self.p_intra.unwrap_or(1.0);
            let block = self.num_vars / c;
            if p > 0.0 && block < self.clause_width {
                return bad(format!(
                    "blocks of {block} variables cannot hold width-{} intra clauses",
                    self.clause_width
                ));
            }
            if p < 1.0 && c < self.clause_width {
                return bad(format!(
                    "{c} communities cannot host width-{} inter clauses on distinct blocks",
                    self.clause_width
                ));
            }
        }
        Ok(())
    }
}

/// Uniform random k-CNF: every clause picks k distinct variables without
/// replacement and flips a fair coin per literal sign.
pub fn gen_random(cfg: &GeneratorConfig) -> Result<Formula, CnfError> {
    if cfg.communities.is_some() {
        return Err(CnfError::BadGeneratorConfig(
            "gen_random takes no community count; use gen_planted".into(),
        ));
    }
    cfg.validate()?;
    let mut rng = rng_for(cfg.seed);
    let clauses = (0..cfg.num_clauses())
        .map(|_| uniform_clause(&mut rng, 0, cfg.num_vars, cfg.clause_width))
        .collect();
    Formula::new(cfg.num_vars, clauses)
}

/// Planted-community k-CNF: variables split into C equal blocks; each clause
/// stays inside one uniformly chosen block with probability `p_intra` and
/// otherwise spreads its k variables over k distinct blocks. Returns the
/// formula together with the planted block label of each variable
/// (index 0 holds the label of variable 1).
pub fn gen_planted(cfg: &GeneratorConfig) -> Result<(Formula, Vec<u32>), CnfError> {
    let c = cfg.communities.ok_or_else(|| {
        CnfError::BadGeneratorConfig("gen_planted needs a community count".into())
    })?;
    cfg.validate()?;

    let n = cfg.num_vars;
    let k = cfg.clause_width;
    let block = n / c;
    let labels: Vec<u32> = (0..n).map(|v| v / block).collect();

    // One community degenerates to the uniform model; draw the identical
    // stream so the two generators agree clause for clause.
    if c == 1 {
        let mut rng = rng_for(cfg.seed);
        let clauses = (0..cfg.num_clauses())
            .map(|_| uniform_clause(&mut rng, 0, n, k))
            .collect();
        return Ok((Formula::new(n, clauses)?, labels));
    }

    let p_intra = cfg.p_intra.unwrap_or(1.0);
    let mut rng = rng_for(cfg.seed);
    let mut clauses = Vec::with_capacity(cfg.num_clauses());
    for _ in 0..cfg.num_clauses() {
        if rng.random_bool(p_intra) {
            let b = rng.random_range(0..c);
            clauses.push(uniform_clause(&mut rng, b * block, block, k));
        } else {
            let blocks = sample(&mut rng, c as usize, k as usize);
            let lits = blocks.into_iter().map(|b| {
                let var = b as u32 * block + rng.random_range(0..block) + 1;
                Literal::new(var, rng.random_bool(0.5))
            });
            clauses.push(Clause::new(lits.collect::<Vec<_>>()));
        }
    }
    Ok((Formula::new(n, clauses)?, labels))
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// k distinct variables from `start+1 ..= start+span`, random signs.
fn uniform_clause(rng: &mut ChaCha8Rng, start: u32, span: u32, k: u32) -> Clause {
    let picks = sample(rng, span as usize, k as usize);
    let lits: Vec<Literal> = picks
        .into_iter()
        .map(|i| Literal::new(start + i as u32 + 1, rng.random_bool(0.5)))
        .collect();
    Clause::new(lits)
}
