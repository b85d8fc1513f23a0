//! Two-player one-round games.
//!
//! [`GameSpec`] is a finite game with an explicit verifier table. Games whose
//! answers are strings of unbounded length (Hardy's game and lifted games)
//! implement [`StringGame`] and become finite through [`truncate`].

mod answer;
mod file;
mod hardy;
mod lifted;
mod spec;

pub use answer::AnswerString;
pub use file::{GameSpecFile, PiEntry, VerifierEntry};
pub use hardy::{verify_hardy, HardyGame};
pub use lifted::{required_wins, verify_lifted, LiftedGameConfig, Thresholds};
pub use spec::{chsh, trivial_always_win, GameSpec, Rational};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Default cap on the number of answers per player produced by [`truncate`].
pub const DEFAULT_ANSWER_CAP: usize = 1 << 14;

/// `cos²(π/8)`, the entangled value of CHSH.
pub const CHSH_QUANTUM_VALUE: f64 = (2.0 + std::f64::consts::SQRT_2) / 4.0;

/// One of the two questions a player can receive in a two-question game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Question {
    Unprimed,
    Primed,
}

impl Question {
    pub const ALL: [Question; 2] = [Question::Unprimed, Question::Primed];

    pub fn index(self) -> usize {
        match self {
            Question::Unprimed => 0,
            Question::Primed => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            0 => Some(Question::Unprimed),
            1 => Some(Question::Primed),
            _ => None,
        }
    }

    pub fn alice_label(self) -> &'static str {
        match self {
            Question::Unprimed => "A",
            Question::Primed => "A'",
        }
    }

    pub fn bob_label(self) -> &'static str {
        match self {
            Question::Unprimed => "B",
            Question::Primed => "B'",
        }
    }
}

/// A two-question game whose answers are finite strings over fixed alphabets.
pub trait StringGame: Sync {
    /// Labels of Alice's answer symbols; symbol `k` is `alphabet_a()[k]`.
    fn alphabet_a(&self) -> &[String];

    fn alphabet_b(&self) -> &[String];

    /// Verifier on symbol strings. Symbols are assumed to lie in the alphabets.
    fn accepts(&self, a: &AnswerString, b: &AnswerString, x: Question, y: Question) -> bool;

    fn pi(&self, x: Question, y: Question) -> Rational;
}

/// Anything that can referee quantum outcomes identified by string labels.
pub trait Verifier: Sync {
    fn question_counts(&self) -> (usize, usize);

    /// Decide the outcome pair `(a, b)` on questions `(x, y)`.
    ///
    /// Fails with a schema error when a label is not an answer of this game.
    fn accepts_labels(&self, a: &str, b: &str, x: usize, y: usize) -> Result<bool>;

    /// Question distribution as floats, indexed `[x][y]`.
    fn pi_f64(&self) -> Vec<Vec<f64>>;
}

impl<G: StringGame> Verifier for G {
    fn question_counts(&self) -> (usize, usize) {
        (2, 2)
    }

    fn accepts_labels(&self, a: &str, b: &str, x: usize, y: usize) -> Result<bool> {
        let a = AnswerString::parse(a, self.alphabet_a())?;
        let b = AnswerString::parse(b, self.alphabet_b())?;
        let (x, y) = two_questions(x, y)?;
        Ok(self.accepts(&a, &b, x, y))
    }

    fn pi_f64(&self) -> Vec<Vec<f64>> {
        Question::ALL
            .iter()
            .map(|&x| {
                Question::ALL
                    .iter()
                    .map(|&y| self.pi(x, y).to_f64().unwrap_or(0.0))
                    .collect()
            })
            .collect()
    }
}

fn two_questions(x: usize, y: usize) -> Result<(Question, Question)> {
    match (Question::from_index(x), Question::from_index(y)) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::Schema(format!(
            "question pair ({x}, {y}) outside a 2x2 game"
        ))),
    }
}

/// All strings of length `0..=max_len` over `k` symbols, shortest first, then
/// lexicographic by symbol index.
pub fn strings_up_to(k: usize, max_len: usize) -> Vec<AnswerString> {
    (0..=max_len).flat_map(|n| strings_of_len(k, n)).collect()
}

/// All strings of length exactly `n` over `k` symbols in lexicographic order.
pub fn strings_of_len(k: usize, n: usize) -> Vec<AnswerString> {
    let mut out = vec![AnswerString::empty()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..k as u8).map(move |s| {
                    let mut next = prefix.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    out
}

/// Number of strings of length `0..=max_len` over `k` symbols, saturating.
pub fn count_strings_up_to(k: usize, max_len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(k as u128);
    }
    total
}

/// Restricts a string game to answers of length at most `max_len`.
pub fn truncate<G: StringGame + ?Sized>(game: &G, max_len: usize) -> Result<GameSpec> {
    truncate_with_cap(game, max_len, DEFAULT_ANSWER_CAP)
}

pub fn truncate_with_cap<G: StringGame + ?Sized>(
    game: &G,
    max_len: usize,
    cap: usize,
) -> Result<GameSpec> {
    if max_len == 0 {
        return Err(Error::Parameter("max_len must be at least 1".into()));
    }
    let (alpha_a, alpha_b) = (game.alphabet_a(), game.alphabet_b());
    for count in [
        count_strings_up_to(alpha_a.len(), max_len),
        count_strings_up_to(alpha_b.len(), max_len),
    ] {
        if count > cap as u128 {
            return Err(Error::AnswerCap {
                requested: count,
                cap,
            });
        }
    }
    let answers_a = strings_up_to(alpha_a.len(), max_len);
    let answers_b = strings_up_to(alpha_b.len(), max_len);
    let pi = Question::ALL
        .iter()
        .map(|&x| Question::ALL.iter().map(|&y| game.pi(x, y)).collect())
        .collect();

    GameSpec::from_fn(
        Question::ALL
            .iter()
            .map(|q| q.alice_label().to_string())
            .collect(),
        Question::ALL
            .iter()
            .map(|q| q.bob_label().to_string())
            .collect(),
        answers_a.iter().map(|s| s.render(alpha_a)).collect(),
        answers_b.iter().map(|s| s.render(alpha_b)).collect(),
        pi,
        |a, b, x, y| {
            game.accepts(
                &answers_a[a],
                &answers_b[b],
                Question::from_index(x).expect("two questions"),
                Question::from_index(y).expect("two questions"),
            )
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hardy_truncation_sizes() {
        let h1 = truncate(&HardyGame, 1).unwrap();
        assert_eq!(h1.answers_a(), &["", "0", "1"]);
        assert_eq!(h1.answers_b().len(), 3);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(h1.pi(x, y), Rational::new(1, 4));
            }
        }
        let h2 = truncate(&HardyGame, 2).unwrap();
        assert_eq!(h2.answers_a().len(), 7);
    }

    #[test]
    fn chsh_lift_truncation_matches_base_on_single_symbols() {
        let cfg =
            LiftedGameConfig::new(chsh(), 0.05, Thresholds::Uniform(CHSH_QUANTUM_VALUE)).unwrap();
        let t = truncate(&cfg, 1).unwrap();
        assert_eq!(t.answers_a(), &["", "0", "1"]);
        let base = chsh();
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        assert_eq!(t.accepts(a + 1, b + 1, x, y), base.accepts(a, b, x, y));
                    }
                }
                // the empty string is never accepted by a lifted game
                assert!(!t.accepts(0, 0, x, y));
            }
        }
    }

    #[test]
    fn truncation_nests() {
        let small = truncate(&HardyGame, 2).unwrap();
        let big = truncate(&HardyGame, 3).unwrap();
        assert_eq!(
            &big.answers_a()[..small.answers_a().len()],
            small.answers_a()
        );
        for a in 0..small.answers_a().len() {
            for b in 0..small.answers_b().len() {
                for x in 0..2 {
                    for y in 0..2 {
                        assert_eq!(small.accepts(a, b, x, y), big.accepts(a, b, x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn truncation_caps() {
        assert!(matches!(truncate(&HardyGame, 0), Err(Error::Parameter(_))));
        let err = truncate(&HardyGame, 14).unwrap_err();
        assert!(matches!(
            err,
            Error::AnswerCap {
                requested: 32767,
                ..
            }
        ));
        assert!(truncate_with_cap(&HardyGame, 3, 14).is_err());
        assert!(truncate_with_cap(&HardyGame, 3, 15).is_ok());
    }

    #[test]
    fn string_enumeration_order() {
        let s: Vec<String> = strings_up_to(2, 2).iter().map(|s| s.to_string()).collect();
        assert_eq!(s, ["", "0", "1", "00", "01", "10", "11"]);
        assert_eq!(count_strings_up_to(3, 2), 13);
        assert_eq!(strings_of_len(3, 2).len(), 9);
    }
}
