//! Seeded Monte Carlo play of a quantum strategy against a verifier.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::Verifier;
use crate::quantum::QuantumStrategy;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959963984540054;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefereeConfig {
    pub rounds: u64,
    pub seed: u64,
    pub transcript: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub x: usize,
    pub y: usize,
    pub a: String,
    pub b: String,
    pub win: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub seed: u64,
    pub rounds: u64,
    pub wins: u64,
    pub rate: f64,
    /// Wilson score interval at 95%.
    pub ci_low: f64,
    pub ci_high: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transcript: Option<Vec<RoundRecord>>,
}

/// Wilson score interval for `wins` successes out of `n`.
pub fn wilson_interval(wins: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = wins as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if wins == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if p == 1.0 {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (lo, hi)
}

struct PairSampler {
    outcomes: WeightedIndex<f64>,
    nb: usize,
    wins: Vec<bool>,
}

/// Plays `cfg.rounds` independent rounds. The same seed always yields the
/// same report.
pub fn simulate<V: Verifier + ?Sized>(
    verifier: &V,
    strategy: &QuantumStrategy,
    pi: &[Vec<f64>],
    cfg: &RefereeConfig,
) -> Result<SimulationReport> {
    let (qa, qb) = strategy.question_counts();
    if verifier.question_counts() != (qa, qb) {
        return Err(Error::Schema(format!(
            "strategy answers {qa}x{qb} questions, game asks {:?}",
            verifier.question_counts()
        )));
    }
    if pi.len() != qa || pi.iter().any(|row| row.len() != qb) {
        return Err(Error::Schema(format!("pi is not a {qa}x{qb} table")));
    }
    let questions = WeightedIndex::new(pi.iter().flatten().copied())
        .map_err(|e| Error::Parameter(format!("question distribution: {e}")))?;

    let mut samplers = Vec::with_capacity(qa * qb);
    for x in 0..qa {
        for y in 0..qb {
            let (pa, pb) = (&strategy.povms_a()[x], &strategy.povms_b()[y]);
            let dist = strategy.distribution(x, y);
            let outcomes = WeightedIndex::new(dist.probabilities().iter().copied())
                .map_err(|e| Error::Parameter(format!("outcome distribution ({x}, {y}): {e}")))?;
            let mut wins = Vec::with_capacity(pa.len() * pb.len());
            for a in &pa.outcomes {
                for b in &pb.outcomes {
                    wins.push(verifier.accepts_labels(a, b, x, y)?);
                }
            }
            samplers.push(PairSampler {
                outcomes,
                nb: pb.len(),
                wins,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut wins = 0u64;
    let mut transcript = cfg.transcript.then(Vec::new);
    for _ in 0..cfg.rounds {
        let q = questions.sample(&mut rng);
        let sampler = &samplers[q];
        let o = sampler.outcomes.sample(&mut rng);
        let win = sampler.wins[o];
        wins += win as u64;
        if let Some(t) = transcript.as_mut() {
            let (x, y) = (q / qb, q % qb);
            t.push(RoundRecord {
                x,
                y,
                a: strategy.povms_a()[x].outcomes[o / sampler.nb].clone(),
                b: strategy.povms_b()[y].outcomes[o % sampler.nb].clone(),
                win,
            });
        }
    }

    let rate = if cfg.rounds == 0 {
        0.0
    } else {
        wins as f64 / cfg.rounds as f64
    };
    let (ci_low, ci_high) = wilson_interval(wins, cfg.rounds, Z_95);
    Ok(SimulationReport {
        seed: cfg.seed,
        rounds: cfg.rounds,
        wins,
        rate,
        ci_low,
        ci_high,
        transcript,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{chsh, HardyGame};
    use crate::quantum::{build_sn, chsh_canonical, quantum_value, HardyParams};

    fn uniform() -> Vec<Vec<f64>> {
        vec![vec![0.25; 2]; 2]
    }

    #[test]
    fn same_seed_same_report() {
        let s = build_sn(&HardyParams::optimal(), 1).unwrap();
        let cfg = RefereeConfig {
            rounds: 500,
            seed: 7,
            transcript: true,
        };
        let r1 = simulate(&HardyGame, &s, &uniform(), &cfg).unwrap();
        let r2 = simulate(&HardyGame, &s, &uniform(), &cfg).unwrap();
        assert_eq!(r1, r2);
        let t = r1.transcript.as_ref().unwrap();
        assert_eq!(t.len(), 500);
        assert_eq!(t.iter().filter(|r| r.win).count() as u64, r1.wins);
        let other = simulate(
            &HardyGame,
            &s,
            &uniform(),
            &RefereeConfig { seed: 8, ..cfg },
        )
        .unwrap();
        assert_ne!(other.transcript, r1.transcript);
    }

    #[test]
    fn rate_tracks_exact_value() {
        let s = chsh_canonical();
        let exact = quantum_value(&chsh(), &s, &uniform()).unwrap();
        let cfg = RefereeConfig {
            rounds: 40_000,
            seed: 1,
            transcript: false,
        };
        let r = simulate(&chsh(), &s, &uniform(), &cfg).unwrap();
        assert!(r.ci_low <= exact && exact <= r.ci_high, "{r:?} vs {exact}");
        assert!(r.transcript.is_none());
    }

    #[test]
    fn wilson_edges() {
        assert_eq!(wilson_interval(0, 0, Z_95), (0.0, 1.0));
        let (lo, hi) = wilson_interval(0, 100, Z_95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100, Z_95);
        assert!((lo + hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shape_mismatch() {
        let s = chsh_canonical();
        assert!(simulate(
            &chsh(),
            &s,
            &[vec![1.0]],
            &RefereeConfig {
                rounds: 1,
                seed: 0,
                transcript: false
            }
        )
        .is_err());
    }
}
