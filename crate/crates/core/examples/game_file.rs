//! Round-trips a truncated Hardy game through the JSON game format and
//! solves the reloaded copy.

use hardy_games::classical::classical_value;
use hardy_games::game::{truncate, GameSpec, HardyGame};

fn main() -> hardy_games::Result<()> {
    let game = truncate(&HardyGame, 1)?;
    let json = game.to_json();
    println!("{}", json.lines().take(12).collect::<Vec<_>>().join("\n"));
    println!("... ({} bytes)", json.len());

    let path = std::env::temp_dir().join("hardy_l1.json");
    std::fs::write(&path, &json)?;
    let reloaded = GameSpec::load(&path)?;
    assert_eq!(reloaded, game);
    println!("reloaded value: {}", classical_value(&reloaded)?.value);
    Ok(())
}
