//! Independent reference implementations shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use hardy_games::game::{GameSpec, Rational};
use num_traits::Zero;
use rand::Rng;

/// Classical value by enumerating every pair of deterministic strategies.
pub fn naive_value(game: &GameSpec) -> Rational {
    let (qa, qb) = (game.questions_a().len(), game.questions_b().len());
    let (na, nb) = (game.answers_a().len(), game.answers_b().len());
    let alphas = assignments(qa, na);
    let betas = assignments(qb, nb);
    let mut best = Rational::zero();
    for alpha in &alphas {
        for beta in &betas {
            let mut v = Rational::zero();
            for x in 0..qa {
                for y in 0..qb {
                    if game.accepts(alpha[x], beta[y], x, y) {
                        v += game.pi(x, y);
                    }
                }
            }
            if v > best {
                best = v;
            }
        }
    }
    best
}

fn assignments(questions: usize, answers: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..questions {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..answers).map(move |a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    out
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random game from explicit sizes, integer weights and an accept table
/// indexed `((x * qb + y) * na + a) * nb + b`.
pub fn game_from_parts(
    qa: usize,
    qb: usize,
    na: usize,
    nb: usize,
    weights: &[i64],
    table: &[bool],
) -> GameSpec {
    let total: i64 = weights.iter().sum();
    let pi = (0..qa)
        .map(|x| {
            (0..qb)
                .map(|y| Rational::new(weights[x * qb + y], total))
                .collect()
        })
        .collect();
    GameSpec::from_fn(
        labels("x", qa),
        labels("y", qb),
        labels("a", na),
        labels("b", nb),
        pi,
        |a, b, x, y| table[((x * qb + y) * na + a) * nb + b],
    )
    .expect("random game is well formed")
}

pub fn random_game(rng: &mut impl Rng, max_questions: usize, max_answers: usize) -> GameSpec {
    let qa = rng.random_range(1..=max_questions);
    let qb = rng.random_range(1..=max_questions);
    let na = rng.random_range(1..=max_answers);
    let nb = rng.random_range(1..=max_answers);
    let mut weights: Vec<i64> = (0..qa * qb).map(|_| rng.random_range(0..=6)).collect();
    if weights.iter().all(|&w| w == 0) {
        weights[0] = 1;
    }
    let density = rng.random_range(0.1..0.9);
    let table: Vec<bool> = (0..qa * qb * na * nb)
        .map(|_| rng.random_bool(density))
        .collect();
    game_from_parts(qa, qb, na, nb, &weights, &table)
}

/// Hardy verifier on '0'/'1' strings, written directly from the winning
/// conditions. `xp`/`yp` select the primed questions.
pub fn hardy_accepts(a: &str, b: &str, xp: bool, yp: bool) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let pairs: Vec<(char, char)> = a.chars().zip(b.chars()).collect();
    match (xp, yp) {
        (false, false) => pairs.iter().any(|&(p, q)| p == '0' && q == '0'),
        (true, true) => pairs.iter().all(|&(p, q)| p == '0' || q == '0'),
        _ => pairs.iter().all(|&(p, q)| p == '1' || q == '1'),
    }
}

/// `cos⁴θ sin²θ / (1 + cos²θ)`.
pub fn hardy_p(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    c.powi(4) * s * s / (1.0 + c * c)
}

/// Outcome probabilities of one Hardy pair with the primed basis
/// computational, `[a][b]` for the given question choices.
pub fn hardy_born(theta: f64, xp: bool, yp: bool) -> [[f64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    let norm = (1.0 + c * c).sqrt();
    // amplitudes on |00>, |01>, |10>, |11>
    let psi = [s / norm, -c / norm, -c / norm, 0.0];
    let basis = |primed: bool| -> [[f64; 2]; 2] {
        if primed {
            [[1.0, 0.0], [0.0, 1.0]]
        } else {
            [[c, s], [-s, c]]
        }
    };
    let (ua, ub) = (basis(xp), basis(yp));
    let mut out = [[0.0; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            let mut amp = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    amp += ua[a][i] * ub[b][j] * psi[2 * i + j];
                }
            }
            out[a][b] = amp * amp;
        }
    }
    out
}

/// CHSH^δ_∞ decision by counting won positions; `x`, `y` are 0 or 1.
pub fn chsh_lift_accepts(a: &[u8], b: &[u8], x: u8, y: u8, delta: f64) -> bool {
    if a.is_empty() || a.len() != b.len() {
        return false;
    }
    let won = a
        .iter()
        .zip(b)
        .filter(|&(&p, &q)| (p ^ q) == (x & y))
        .count();
    let threshold = (2.0 + 2f64.sqrt()) / 4.0;
    won as f64 / a.len() as f64 >= threshold - delta / 2.0
}
