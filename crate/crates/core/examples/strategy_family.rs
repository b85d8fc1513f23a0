//! Success of n parallel copies of the Hardy strategy, evaluated exactly and
//! compared with 1 - (1/4)(1 - p_theta)^n.

use hardy_games::game::HardyGame;
use hardy_games::game::Verifier;
use hardy_games::quantum::{build_sn, quantum_value, sn_success_closed_form, HardyParams};

fn main() -> hardy_games::Result<()> {
    let params = HardyParams::optimal();
    let pi = HardyGame.pi_f64();
    println!(
        "{:>2} {:>6} {:>14} {:>14} {:>10}",
        "n", "dim", "exact", "closed form", "|diff|"
    );
    for n in 1..=5 {
        let strategy = build_sn(&params, n)?;
        let exact = quantum_value(&HardyGame, &strategy, &pi)?;
        let closed = sn_success_closed_form(params.theta(), n as u32)?;
        println!(
            "{n:>2} {:>6} {exact:>14.10} {closed:>14.10} {:>10.1e}",
            strategy.local_dims().0,
            (exact - closed).abs()
        );
    }
    Ok(())
}
