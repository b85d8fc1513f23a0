//! CHSH lifted to strings: i.i.d. copies of the canonical strategy win when
//! enough positions are won.

use hardy_games::game::{verify_lifted, AnswerString, Question};
use hardy_games::lift::{chsh_lift, lifted_success_exact};
use hardy_games::quantum::{chsh_canonical, win_probability};

fn main() -> hardy_games::Result<()> {
    let delta = 0.05;
    let cfg = chsh_lift(delta)?;
    let (u, p) = (Question::Unprimed, Question::Primed);
    println!("cutoff fraction: {:.6}", cfg.cutoff(u, u));

    let a = AnswerString::bits("0110");
    for b in ["0110", "0111", "1001"] {
        let b = AnswerString::bits(b);
        println!(
            "a={a} b={b}: (A,B) {} (A',B') {}",
            verify_lifted(&cfg, &a, &b, u, u)?,
            verify_lifted(&cfg, &a, &b, p, p)?
        );
    }

    let strategy = chsh_canonical();
    let base = cfg.base();
    let mut per_pair = [[0.0; 2]; 2];
    for (x, row) in per_pair.iter_mut().enumerate() {
        for (y, p) in row.iter_mut().enumerate() {
            *p = win_probability(base, &strategy, x, y)?;
        }
    }
    let pi = vec![vec![0.25; 2]; 2];
    for n in [1, 10, 100, 1000, 5000] {
        println!(
            "n = {n:>4}: success {:.6}",
            lifted_success_exact(n, per_pair, &cfg, &pi)?
        );
    }
    Ok(())
}
