//! The canonical CHSH strategy reaches cos²(π/8), above the classical 3/4.

use hardy_games::classical::classical_value;
use hardy_games::game::{chsh, Verifier, CHSH_QUANTUM_VALUE};
use hardy_games::linalg::validate_povm;
use hardy_games::quantum::{chsh_canonical, quantum_value};

fn main() -> hardy_games::Result<()> {
    let game = chsh();
    let strategy = chsh_canonical();
    for (side, povms) in [("alice", strategy.povms_a()), ("bob", strategy.povms_b())] {
        for (q, povm) in povms.iter().enumerate() {
            let report = validate_povm(&povm.elements, 1e-10)?;
            println!("{side} question {q}: {report}");
        }
    }
    let quantum = quantum_value(&game, &strategy, &game.pi_f64())?;
    let classical = classical_value(&game)?.value;
    println!(
        "classical {classical}, quantum {quantum:.10}, cos^2(pi/8) = {CHSH_QUANTUM_VALUE:.10}"
    );
    Ok(())
}
