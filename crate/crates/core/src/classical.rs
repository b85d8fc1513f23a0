//! Exact classical values by search over deterministic strategies.
//!
//! Shared randomness never helps (a value is a convex combination of
//! deterministic values), so the maximum over pairs `(α, β)` of
//! deterministic answer functions is the classical value.
//!
//! The search enumerates Alice's assignment `α` depth first, one question at
//! a time, and answers each complete `α` with Bob's exact best response:
//! given `α`, the value separates over Bob's questions, so each `β(y)` is
//! chosen independently. Partial assignments are cut when an optimistic
//! completion bound cannot beat the best value found so far. Work is split
//! across threads by Alice's answer to the first question.

use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{GameSpec, Rational};

/// Default cap on `|A|^|X| · |B| · |Y|`, the number of best-response
/// evaluations an unpruned search performs.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DeterministicStrategy {
    /// `alpha[x]` is Alice's answer index on question `x`.
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

impl DeterministicStrategy {
    /// Answer labels for display, `(alice, bob)`.
    pub fn labels(&self, game: &GameSpec) -> (Vec<String>, Vec<String>) {
        (
            self.alpha
                .iter()
                .map(|&a| game.answers_a()[a].clone())
                .collect(),
            self.beta
                .iter()
                .map(|&b| game.answers_b()[b].clone())
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValueReport {
    pub value: Rational,
    /// Lexicographically first optimal strategy in `(α, β)` order.
    pub witness: DeterministicStrategy,
    /// Complete Alice assignments evaluated against Bob's best response.
    pub strategies_examined: u64,
    /// Partial Alice assignments discarded by the bound.
    pub pruned: u64,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub budget: u128,
    pub prune: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            prune: true,
            threads: None,
        }
    }
}

/// `Σ_{x,y} π(x,y) V(α(x), β(y) | x, y)`.
pub fn evaluate_deterministic(game: &GameSpec, s: &DeterministicStrategy) -> Result<Rational> {
    let (qa, qb) = (game.questions_a().len(), game.questions_b().len());
    if s.alpha.len() != qa || s.beta.len() != qb {
        return Err(Error::Strategy(format!(
            "strategy covers {}x{} questions, game has {qa}x{qb}",
            s.alpha.len(),
            s.beta.len()
        )));
    }
    if let Some(a) = s.alpha.iter().find(|&&a| a >= game.answers_a().len()) {
        return Err(Error::Strategy(format!(
            "Alice answer index {a} out of range"
        )));
    }
    if let Some(b) = s.beta.iter().find(|&&b| b >= game.answers_b().len()) {
        return Err(Error::Strategy(format!(
            "Bob answer index {b} out of range"
        )));
    }
    let mut total = Rational::zero();
    for (x, &a) in s.alpha.iter().enumerate() {
        for (y, &b) in s.beta.iter().enumerate() {
            if game.accepts(a, b, x, y) {
                total += game.pi(x, y);
            }
        }
    }
    Ok(total)
}

pub fn classical_value(game: &GameSpec) -> Result<ValueReport> {
    classical_value_with(game, &SolverConfig::default())
}

pub fn classical_value_with(game: &GameSpec, cfg: &SolverConfig) -> Result<ValueReport> {
    let search = Search::new(game, cfg)?;
    match cfg.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
            Ok(pool.install(|| search.run()))
        }
        None => Ok(search.run()),
    }
}

/// `|A|^|X| · |B| · |Y|`, saturating.
pub fn search_size(game: &GameSpec) -> u128 {
    let (qa, qb) = (game.questions_a().len(), game.questions_b().len());
    let (na, nb) = (
        game.answers_a().len() as u128,
        game.answers_b().len() as u128,
    );
    (0..qa)
        .try_fold(1u128, |acc, _| acc.checked_mul(na))
        .and_then(|alphas| alphas.checked_mul(nb * qb as u128))
        .unwrap_or(u128::MAX)
}

struct Search<'g> {
    game: &'g GameSpec,
    prune: bool,
    /// `π` scaled to integers over the common denominator.
    weights: Vec<Vec<u64>>,
    denominator: i64,
    /// `optimistic[k]`: weight of pairs `(x, y)` with `x >= k` that some
    /// answer pair wins.
    optimistic: Vec<u64>,
    /// Best value reached by any partition so far.
    incumbent: AtomicU64,
}

struct PartitionResult {
    value: u64,
    witness: Option<DeterministicStrategy>,
    examined: u64,
    pruned: u64,
}

impl<'g> Search<'g> {
    fn new(game: &'g GameSpec, cfg: &SolverConfig) -> Result<Self> {
        let requested = search_size(game);
        if requested > cfg.budget {
            return Err(Error::Budget {
                requested,
                budget: cfg.budget,
            });
        }
        let denominator = game
            .pi_denominator_lcm()
            .ok_or_else(|| Error::GameSpec("denominators of pi overflow".into()))?;
        let (qa, qb) = (game.questions_a().len(), game.questions_b().len());
        let (na, nb) = (game.answers_a().len(), game.answers_b().len());
        let weights: Vec<Vec<u64>> = (0..qa)
            .map(|x| {
                (0..qb)
                    .map(|y| {
                        let p = game.pi(x, y);
                        (*p.numer() * (denominator / *p.denom())) as u64
                    })
                    .collect()
            })
            .collect();

        let mut optimistic = vec![0u64; qa + 1];
        for x in (0..qa).rev() {
            let winnable: u64 = (0..qb)
                .filter(|&y| (0..na).any(|a| (0..nb).any(|b| game.accepts(a, b, x, y))))
                .map(|y| weights[x][y])
                .sum();
            optimistic[x] = optimistic[x + 1] + winnable;
        }
        Ok(Self {
            game,
            prune: cfg.prune,
            weights,
            denominator,
            optimistic,
            incumbent: AtomicU64::new(0),
        })
    }

    fn run(&self) -> ValueReport {
        let na = self.game.answers_a().len();
        let parts: Vec<PartitionResult> = (0..na)
            .into_par_iter()
            .map(|a0| self.partition(a0))
            .collect();

        // Partitions are ordered by alpha[0]; keep the first strict maximum.
        let mut best: Option<&PartitionResult> = None;
        for p in &parts {
            if p.witness.is_some() && best.is_none_or(|b| p.value > b.value) {
                best = Some(p);
            }
        }
        let best = best.expect("at least one partition reaches a leaf");
        ValueReport {
            value: Rational::new(best.value as i64, self.denominator),
            witness: best.witness.clone().expect("checked above"),
            strategies_examined: parts.iter().map(|p| p.examined).sum(),
            pruned: parts.iter().map(|p| p.pruned).sum(),
        }
    }

    fn partition(&self, a0: usize) -> PartitionResult {
        let qb = self.game.questions_b().len();
        let nb = self.game.answers_b().len();
        let mut state = PartitionResult {
            value: 0,
            witness: None,
            examined: 0,
            pruned: 0,
        };
        let mut scores = vec![vec![0u64; nb]; qb];
        let mut alpha = Vec::with_capacity(self.game.questions_a().len());
        self.assign(0, a0, &mut alpha, &mut scores, &mut state);
        state
    }

    /// Sets `alpha[x] = a` and recurses over the remaining questions.
    fn assign(
        &self,
        x: usize,
        a: usize,
        alpha: &mut Vec<usize>,
        scores: &mut [Vec<u64>],
        state: &mut PartitionResult,
    ) {
        let qa = self.game.questions_a().len();
        alpha.push(a);
        self.add_row(x, a, scores, true);

        if x + 1 == qa {
            state.examined += 1;
            let (value, beta) = self.best_response(scores);
            if state.witness.is_none() || value > state.value {
                self.incumbent.fetch_max(value, Ordering::Relaxed);
                state.value = value;
                state.witness = Some(DeterministicStrategy {
                    alpha: alpha.clone(),
                    beta,
                });
            }
        } else {
            let bound = self.bound(scores, x + 1);
            // Another partition's incumbent only cuts strictly worse subtrees,
            // so ties still reach the lexicographically first witness.
            let local = state.witness.is_some() && bound <= state.value;
            if self.prune && (local || bound < self.incumbent.load(Ordering::Relaxed)) {
                state.pruned += 1;
            } else {
                for next in 0..self.game.answers_a().len() {
                    self.assign(x + 1, next, alpha, scores, state);
                }
            }
        }

        self.add_row(x, a, scores, false);
        alpha.pop();
    }

    /// Adds (or removes) the contribution of `alpha[x] = a` to `scores[y][b]`.
    fn add_row(&self, x: usize, a: usize, scores: &mut [Vec<u64>], add: bool) {
        for (y, row) in scores.iter_mut().enumerate() {
            let w = self.weights[x][y];
            if w == 0 {
                continue;
            }
            for (b, s) in row.iter_mut().enumerate() {
                if self.game.accepts(a, b, x, y) {
                    if add {
                        *s += w;
                    } else {
                        *s -= w;
                    }
                }
            }
        }
    }

    fn bound(&self, scores: &[Vec<u64>], next_x: usize) -> u64 {
        let assigned: u64 = scores
            .iter()
            .map(|row| row.iter().copied().max().unwrap_or(0))
            .sum();
        assigned + self.optimistic[next_x]
    }

    /// Bob's best response with the smallest answer index on ties.
    fn best_response(&self, scores: &[Vec<u64>]) -> (u64, Vec<usize>) {
        let mut total = 0;
        let mut beta = Vec::with_capacity(scores.len());
        for row in scores {
            let (mut best_b, mut best) = (0, row[0]);
            for (b, &s) in row.iter().enumerate().skip(1) {
                if s > best {
                    best = s;
                    best_b = b;
                }
            }
            total += best;
            beta.push(best_b);
        }
        (total, beta)
    }
}
