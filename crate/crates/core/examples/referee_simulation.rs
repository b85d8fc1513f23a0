//! Seeded referee runs of two Hardy copies, compared with the exact value.

use hardy_games::game::{HardyGame, Verifier};
use hardy_games::quantum::{build_sn, quantum_value, HardyParams};
use hardy_games::referee::{simulate, RefereeConfig};

fn main() -> hardy_games::Result<()> {
    let strategy = build_sn(&HardyParams::optimal(), 2)?;
    let pi = HardyGame.pi_f64();
    let exact = quantum_value(&HardyGame, &strategy, &pi)?;
    println!("exact value {exact:.10}");
    for seed in 0..5 {
        let cfg = RefereeConfig {
            rounds: 100_000,
            seed,
            transcript: false,
        };
        let r = simulate(&HardyGame, &strategy, &pi, &cfg)?;
        println!(
            "seed {seed}: rate {:.5}  95% CI [{:.5}, {:.5}]",
            r.rate, r.ci_low, r.ci_high
        );
    }

    let short = simulate(
        &HardyGame,
        &strategy,
        &pi,
        &RefereeConfig {
            rounds: 5,
            seed: 1,
            transcript: true,
        },
    )?;
    for round in short.transcript.unwrap_or_default() {
        println!(
            "x={} y={} a={:>2} b={:>2} win={}",
            round.x, round.y, round.a, round.b, round.win
        );
    }
    Ok(())
}
