//! Outcome statistics of the Hardy state: (0,0) appears on the unprimed
//! bases but never on mixed ones, and (1,1) never on the primed ones.

use hardy_games::game::Question;
use hardy_games::quantum::{build_sn, optimal_theta, p_theta, HardyParams};

fn main() -> hardy_games::Result<()> {
    let (theta, p_star) = optimal_theta();
    println!("theta* = {theta:.9}, p* = {p_star:.12}");

    for theta in [0.3, theta, 1.1] {
        let strategy = build_sn(&HardyParams::new(theta)?, 1)?;
        println!("\ntheta = {theta:.4}, p_theta = {:.6}", p_theta(theta)?);
        for x in Question::ALL {
            for y in Question::ALL {
                let d = strategy.distribution(x.index(), y.index());
                println!(
                    "  ({:>2},{:>2})  P00={:.6} P01={:.6} P10={:.6} P11={:.6}",
                    x.alice_label(),
                    y.bob_label(),
                    d.get(0, 0),
                    d.get(0, 1),
                    d.get(1, 0),
                    d.get(1, 1)
                );
            }
        }
    }
    Ok(())
}
