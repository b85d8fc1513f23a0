//! Exact classical values of Hardy truncations and CHSH.
//!
//! ```text
//! cargo run --example classical_value
//! ```

use hardy_games::classical::classical_value;
use hardy_games::game::{chsh, truncate, HardyGame};

fn main() -> hardy_games::Result<()> {
    for max_len in 1..=3 {
        let game = truncate(&HardyGame, max_len)?;
        let report = classical_value(&game)?;
        let (alice, bob) = report.witness.labels(&game);
        println!(
            "Hardy, answers up to length {max_len}: {} ({} answers each, witness alice={alice:?} bob={bob:?})",
            report.value,
            game.answers_a().len(),
        );
    }
    let report = classical_value(&chsh())?;
    println!("CHSH: {}", report.value);
    Ok(())
}
