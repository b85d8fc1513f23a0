//! Rejection sets of Hardy's game and the two-branch dichotomy.

use hardy_games::game::{AnswerString, HardyGame};
use hardy_games::lift::{check_dichotomy, chsh_lift, rejection_sets};

fn main() -> hardy_games::Result<()> {
    let sets = rejection_sets(
        &HardyGame,
        &AnswerString::bits("01"),
        &AnswerString::bits("10"),
    )?;
    println!("s=01 t=10");
    println!(
        "  Z_s  = {:?}",
        sets.z_s.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    println!(
        "  P_t  = {:?}",
        sets.p_t.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    println!(
        "  U'_s = {:?}",
        sets.u_prime_s
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!(
        "  P'_t = {:?}",
        sets.p_prime_t
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!("  branch: {}", sets.branch());

    let hardy = check_dichotomy(&HardyGame, 3)?;
    println!(
        "Hardy up to length 3: {} pairs, overall {}",
        hardy.pairs.len(),
        hardy.overall
    );
    let lifted = check_dichotomy(&chsh_lift(0.05)?, 3)?;
    println!(
        "CHSH lift up to length 3: {} pairs, overall {}",
        lifted.pairs.len(),
        lifted.overall
    );
    Ok(())
}
