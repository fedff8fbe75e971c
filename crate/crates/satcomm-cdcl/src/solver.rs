//! CDCL core: two-watched-literal propagation, first-UIP conflict analysis,
//! activity-driven branching with phase saving, Luby restarts. Learnt clauses
//! are all kept by default so traces are easy to reason about; an optional
//! reduction mode halves the database at geometric intervals, closer to what
//! production solvers retain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satcomm_cnf::{Clause, Formula, LearntTrace, Literal};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("checkpoints must be strictly increasing")]
    UnsortedCheckpoints,
    #[error("conflict budget {budget} is below the last checkpoint {checkpoint}")]
    BudgetBelowCheckpoint { budget: u64, checkpoint: u64 },
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Conflict counts at which the retained learnt set is snapshotted.
    pub checkpoints: Vec<u64>,
    /// Abort with `BudgetExhausted` once this many conflicts have occurred.
    pub conflict_budget: u64,
    /// Luby restart unit, in conflicts.
    pub restart_interval: u64,
    pub seed: u64,
    /// Exponential decay applied to variable activities per conflict.
    pub var_decay: f64,
    /// Halve the learnt database at geometric intervals instead of keeping
    /// every clause.
    pub reduce_db: bool,
}

impl Default for SolveConfig {
    fn default() -> SolveConfig {
        SolveConfig {
            checkpoints: Vec::new(),
            conflict_budget: u64::MAX,
            restart_interval: 100,
            seed: 42,
            var_decay: 0.95,
            reduce_db: false,
        }
    }
}

impl SolveConfig {
    fn validate(&self) -> Result<(), SolveError> {
        if self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SolveError::UnsortedCheckpoints);
        }
        if let Some(&last) = self.checkpoints.last() {
            if self.conflict_budget < last {
                return Err(SolveError::BudgetBelowCheckpoint {
                    budget: self.conflict_budget,
                    checkpoint: last,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
    BudgetExhausted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub status: Status,
    /// Assignment per variable (index 0 is variable 1) when satisfiable.
    pub model: Option<Vec<bool>>,
    /// One entry per reached checkpoint plus a final snapshot keyed by the
    /// total conflict count.
    pub trace: LearntTrace,
    pub total_conflicts: u64,
    pub stats: SolveStats,
}

pub fn solve(f: &Formula, cfg: &SolveConfig) -> Result<SolveOutcome, SolveError> {
    cfg.validate()?;
    Ok(Solver::new(f, cfg).run())
}

// Literal encoding: variable index v (0-based) becomes 2v (positive) or
// 2v + 1 (negated).
type Lit = u32;

fn lit_value(values: &[Value], l: Lit) -> Value {
    match values[var_of(l)] {
        Value::Undef => Value::Undef,
        Value::True if l & 1 == 0 => Value::True,
        Value::True => Value::False,
        Value::False if l & 1 == 0 => Value::False,
        Value::False => Value::True,
    }
}

fn lit_from(l: Literal) -> Lit {
    (l.var() - 1) * 2 + u32::from(!l.is_positive())
}

fn lit_to_external(l: Lit) -> Literal {
    Literal::new(l / 2 + 1, l & 1 == 0)
}

fn var_of(l: Lit) -> usize {
    (l / 2) as usize
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Undef,
    True,
    False,
}

struct ClauseData {
    lits: Vec<Lit>,
    activity: f64,
    learnt: bool,
    deleted: bool,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

/// Binary max-heap over variable activities with position tracking;
/// activities only grow, so bumping means sifting up.
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<i32>,
}

impl VarHeap {
    fn new(n: usize) -> VarHeap {
        VarHeap {
            heap: Vec::with_capacity(n),
            pos: vec![-1; n],
        }
    }

    fn contains(&self, v: u32) -> bool {
        self.pos[v as usize] >= 0
    }

    fn push(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v as usize] = self.heap.len() as i32;
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        self.pos[top as usize] = -1;
        let last = self.heap.pop().expect("nonempty");
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn bumped(&mut self, v: u32, act: &[f64]) {
        if let Ok(i) = usize::try_from(self.pos[v as usize]) {
            self.sift_up(i, act);
        }
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if act[self.heap[i] as usize] <= act[self.heap[parent] as usize] {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && act[self.heap[l] as usize] > act[self.heap[best] as usize] {
                best = l;
            }
            if r < self.heap.len() && act[self.heap[r] as usize] > act[self.heap[best] as usize] {
                best = r;
            }
            if best == i {
                return;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.pos[self.heap[a] as usize] = a as i32;
        self.pos[self.heap[b] as usize] = b as i32;
    }
}

struct Solver<'f> {
    formula: &'f Formula,
    cfg: SolveConfig,
    num_vars: usize,

    clauses: Vec<ClauseData>,
    watches: Vec<Vec<Watcher>>, // indexed by literal
    /// Learnt unit clauses; retained forever and part of every snapshot.
    learnt_units: Vec<Lit>,
    learnt_count: usize,

    values: Vec<Value>, // per variable
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    queue_head: usize,

    activity: Vec<f64>,
    var_inc: f64,
    clause_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,

    stats: SolveStats,
    trace: LearntTrace,
    next_checkpoint: usize,
    reduce_limit: usize,
    /// Set when the input contains the empty clause.
    root_conflict: bool,
}

impl<'f> Solver<'f> {
    fn new(f: &'f Formula, cfg: &SolveConfig) -> Solver<'f> {
        let n = f.num_vars() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        // tiny random priorities decide early ties; runs stay reproducible
        // per seed while seeds diversify the search
        let activity: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 1e-6).collect();
        let mut heap = VarHeap::new(n);
        for v in 0..n as u32 {
            heap.push(v, &activity);
        }
        let mut solver = Solver {
            formula: f,
            cfg: cfg.clone(),
            num_vars: n,
            clauses: Vec::with_capacity(f.num_clauses()),
            watches: vec![Vec::new(); 2 * n],
            learnt_units: Vec::new(),
            learnt_count: 0,
            values: vec![Value::Undef; n],
            level: vec![0; n],
            reason: vec![None; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            queue_head: 0,
            activity,
            var_inc: 1.0,
            clause_inc: 1.0,
            heap,
            phase: vec![false; n],
            seen: vec![false; n],
            stats: SolveStats::default(),
            trace: LearntTrace::new(f.num_vars()),
            next_checkpoint: 0,
            reduce_limit: (f.num_clauses() / 3).max(1000),
            root_conflict: false,
        };
        solver.load_clauses();
        solver
    }

    fn load_clauses(&mut self) {
        for clause in self.formula.clauses() {
            if clause.is_empty() {
                self.root_conflict = true;
                return;
            }
            if clause.is_tautology() {
                continue; // never falsifiable, carries no constraint
            }
            let lits: Vec<Lit> = clause.literals().iter().map(|&l| lit_from(l)).collect();
            if lits.len() == 1 {
                match self.value_lit(lits[0]) {
                    Value::False => {
                        self.root_conflict = true;
                        return;
                    }
                    Value::True => {}
                    Value::Undef => self.enqueue(lits[0], None),
                }
            } else {
                self.add_clause(lits, false);
            }
        }
    }

    fn add_clause(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        debug_assert!(lits.len() >= 2);
        let cref = self.clauses.len() as u32;
        self.watches[lits[0] as usize ^ 1].push(Watcher {
            cref,
            blocker: lits[1],
        });
        self.watches[lits[1] as usize ^ 1].push(Watcher {
            cref,
            blocker: lits[0],
        });
        self.clauses.push(ClauseData {
            lits,
            activity: 0.0,
            learnt,
            deleted: false,
        });
        if learnt {
            self.learnt_count += 1;
        }
        cref
    }

    fn value_lit(&self, l: Lit) -> Value {
        lit_value(&self.values, l)
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        debug_assert!(self.value_lit(l) == Value::Undef);
        let v = var_of(l);
        self.values[v] = if l & 1 == 0 { Value::True } else { Value::False };
        self.phase[v] = l & 1 == 0;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
        self.stats.propagations += 1;
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.queue_head < self.trail.len() {
            let lit = self.trail[self.queue_head];
            self.queue_head += 1;
            // asserting `lit` falsifies its negation; wake that literal's watchers
            let false_lit = lit ^ 1;

            let mut watchers = std::mem::take(&mut self.watches[lit as usize]);
            let mut kept = 0usize;
            let mut conflict = None;
            'watchers: for idx in 0..watchers.len() {
                let w = watchers[idx];
                if self.clauses[w.cref as usize].deleted {
                    continue; // drop watcher of a removed clause
                }
                if lit_value(&self.values, w.blocker) == Value::True {
                    watchers[kept] = w;
                    kept += 1;
                    continue;
                }
                let clause = &mut self.clauses[w.cref as usize];
                if clause.lits[0] == false_lit {
                    clause.lits.swap(0, 1);
                }
                debug_assert_eq!(clause.lits[1], false_lit);
                let first = clause.lits[0];
                if first != w.blocker && lit_value(&self.values, first) == Value::True {
                    watchers[kept] = Watcher {
                        cref: w.cref,
                        blocker: first,
                    };
                    kept += 1;
                    continue;
                }
                for k in 2..clause.lits.len() {
                    if lit_value(&self.values, clause.lits[k]) != Value::False {
                        clause.lits.swap(1, k);
                        let new_watch = clause.lits[1];
                        self.watches[new_watch as usize ^ 1].push(Watcher {
                            cref: w.cref,
                            blocker: first,
                        });
                        continue 'watchers;
                    }
                }
                // unit or conflicting
                watchers[kept] = w;
                kept += 1;
                if lit_value(&self.values, first) == Value::False {
                    self.queue_head = self.trail.len();
                    let mut rest = idx + 1;
                    while rest < watchers.len() {
                        watchers[kept] = watchers[rest];
                        kept += 1;
                        rest += 1;
                    }
                    conflict = Some(w.cref);
                    break;
                }
                self.enqueue(first, Some(w.cref));
            }
            watchers.truncate(kept);
            self.watches[lit as usize] = watchers;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v as u32, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.clause_inc;
        if c.activity > 1e20 {
            for c in self.clauses.iter_mut() {
                c.activity *= 1e-20;
            }
            self.clause_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis: resolves the conflict backwards along
    /// the trail until exactly one literal of the current decision level
    /// remains. Returns the learnt clause (asserting literal first) and the
    /// backjump level.
    fn analyze(&mut self, conflict: u32) -> (Vec<Lit>, u32) {
        let current = self.decision_level();
        let mut learnt: Vec<Lit> = vec![0]; // slot 0 takes the asserting literal
        let mut pending = 0usize;
        let mut resolve_lit: Option<Lit> = None;
        let mut cref = conflict;
        let mut idx = self.trail.len();

        loop {
            self.bump_clause(cref);
            let lits: Vec<Lit> = self.clauses[cref as usize].lits.clone();
            for &q in &lits {
                if Some(q) == resolve_lit {
                    continue;
                }
                let v = var_of(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            // next literal of the current level, walking the trail backwards
            loop {
                idx -= 1;
                if self.seen[var_of(self.trail[idx])] {
                    break;
                }
            }
            let p = self.trail[idx];
            self.seen[var_of(p)] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = p ^ 1;
                break;
            }
            cref = self.reason[var_of(p)].expect("non-decision must have a reason");
            resolve_lit = Some(p);
        }
        for &q in &learnt[1..] {
            self.seen[var_of(q)] = false;
        }

        // the 1UIP property: the asserting literal is alone on its level
        debug_assert_eq!(self.level[var_of(learnt[0])], current);
        debug_assert!(learnt[1..]
            .iter()
            .all(|&q| self.level[var_of(q)] < current));

        let backjump = if learnt.len() == 1 {
            0
        } else {
            // highest level among the rest; its literal becomes the second watch
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[var_of(learnt[i])] > self.level[var_of(learnt[max_i])] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level[var_of(learnt[1])]
        };
        (learnt, backjump)
    }

    fn backtrack_to(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let target = self.trail_lim[level as usize];
        for &l in &self.trail[target..] {
            let v = var_of(l);
            self.values[v] = Value::Undef;
            self.reason[v] = None;
            self.heap.push(v as u32, &self.activity);
        }
        self.trail.truncate(target);
        self.trail_lim.truncate(level as usize);
        self.queue_head = target;
    }

    fn snapshot(&mut self, key: u64) {
        if self.trace.get(key).is_some() {
            return;
        }
        let mut clauses: Vec<Clause> = self
            .learnt_units
            .iter()
            .map(|&l| Clause::new([lit_to_external(l)]))
            .collect();
        clauses.extend(
            self.clauses
                .iter()
                .filter(|c| c.learnt && !c.deleted)
                .map(|c| Clause::new(c.lits.iter().map(|&l| lit_to_external(l)))),
        );
        self.trace
            .insert(key, clauses)
            .expect("snapshot keys grow with the conflict count");
    }

    /// Drops the lower-activity half of the unlocked learnt clauses; the
    /// limit then grows geometrically.
    fn reduce_db(&mut self) {
        let locked: Vec<bool> = self
            .clauses
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.learnt
                    && !c.deleted
                    && self.reason[var_of(c.lits[0])] == Some(i as u32)
                    && self.value_lit(c.lits[0]) == Value::True
            })
            .collect();
        let mut candidates: Vec<(f64, u32)> = self
            .clauses
            .iter()
            .enumerate()
            .filter(|&(i, c)| c.learnt && !c.deleted && !locked[i])
            .map(|(i, c)| (c.activity, i as u32))
            .collect();
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let drop_count = candidates.len() / 2;
        for &(_, cref) in &candidates[..drop_count] {
            self.clauses[cref as usize].deleted = true;
            self.learnt_count -= 1;
        }
        self.reduce_limit += self.reduce_limit / 2;
    }

    fn run(mut self) -> SolveOutcome {
        if self.root_conflict {
            return self.finish(Status::Unsat);
        }

        let mut restart_threshold = luby(self.stats.restarts) * self.cfg.restart_interval;
        let mut conflicts_since_restart = 0u64;

        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts_since_restart += 1;

                if self.decision_level() == 0 {
                    return self.finish(Status::Unsat);
                }

                let (learnt, backjump) = self.analyze(conflict);
                self.backtrack_to(backjump);
                if learnt.len() == 1 {
                    self.learnt_units.push(learnt[0]);
                    self.enqueue(learnt[0], None);
                } else {
                    let asserting = learnt[0];
                    let cref = self.add_clause(learnt, true);
                    self.bump_clause(cref);
                    self.enqueue(asserting, Some(cref));
                }
                self.var_inc /= self.cfg.var_decay;
                self.clause_inc /= 0.999;

                if self.next_checkpoint < self.cfg.checkpoints.len()
                    && self.stats.conflicts == self.cfg.checkpoints[self.next_checkpoint]
                {
                    let key = self.cfg.checkpoints[self.next_checkpoint];
                    self.snapshot(key);
                    self.next_checkpoint += 1;
                }
                if self.stats.conflicts >= self.cfg.conflict_budget {
                    return self.finish(Status::BudgetExhausted);
                }
                if self.cfg.reduce_db && self.learnt_count >= self.reduce_limit {
                    self.reduce_db();
                }
                if conflicts_since_restart >= restart_threshold {
                    self.stats.restarts += 1;
                    conflicts_since_restart = 0;
                    restart_threshold = luby(self.stats.restarts) * self.cfg.restart_interval;
                    self.backtrack_to(0);
                }
            } else {
                if self.trail.len() == self.num_vars {
                    return self.finish(Status::Sat);
                }
                let v = loop {
                    let v = self.heap.pop(&self.activity).expect("unassigned var exists");
                    if self.values[v as usize] == Value::Undef {
                        break v;
                    }
                };
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                let lit = v * 2 + u32::from(!self.phase[v as usize]);
                self.enqueue(lit, None);
            }
        }
    }

    fn finish(mut self, status: Status) -> SolveOutcome {
        self.snapshot(self.stats.conflicts);
        let model = (status == Status::Sat).then(|| {
            let model: Vec<bool> = self.values.iter().map(|&v| v == Value::True).collect();
            debug_assert!(self.formula.clauses().iter().all(|c| c
                .literals()
                .iter()
                .any(|l| model[(l.var() - 1) as usize] == l.is_positive())));
            model
        });
        SolveOutcome {
            status,
            model,
            trace: self.trace,
            total_conflicts: self.stats.conflicts,
            stats: self.stats,
        }
    }
}

/// Luby sequence 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
fn luby(i: u64) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    let mut x = i;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) / 2;
        seq -= 1;
        x %= size;
    }
    1 << seq
}
