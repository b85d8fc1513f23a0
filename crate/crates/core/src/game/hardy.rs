use std::sync::OnceLock;

use super::{AnswerString, Question, Rational, StringGame};

/// Hardy's game: bit-string answers, uniform questions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HardyGame;

/// Hardy's verifier.
///
/// Accepts iff the strings have equal length and
/// - on `(A, B)` some position has `a_i = b_i = 0`;
/// - on `(A, B')` and `(A', B)` every position has `a_i = 1` or `b_i = 1`;
/// - on `(A', B')` every position has `a_i = 0` or `b_i = 0`.
pub fn verify_hardy(a: &AnswerString, b: &AnswerString, x: Question, y: Question) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut pairs = a.symbols().iter().zip(b.symbols());
    match (x, y) {
        (Question::Unprimed, Question::Unprimed) => pairs.any(|(&ai, &bi)| ai == 0 && bi == 0),
        (Question::Unprimed, Question::Primed) | (Question::Primed, Question::Unprimed) => {
            pairs.all(|(&ai, &bi)| ai == 1 || bi == 1)
        }
        (Question::Primed, Question::Primed) => pairs.all(|(&ai, &bi)| ai == 0 || bi == 0),
    }
}

fn binary() -> &'static [String] {
    static BITS: OnceLock<Vec<String>> = OnceLock::new();
    BITS.get_or_init(|| vec!["0".into(), "1".into()])
}

impl StringGame for HardyGame {
    fn alphabet_a(&self) -> &[String] {
        binary()
    }

    fn alphabet_b(&self) -> &[String] {
        binary()
    }

    fn accepts(&self, a: &AnswerString, b: &AnswerString, x: Question, y: Question) -> bool {
        verify_hardy(a, b, x, y)
    }

    fn pi(&self, _x: Question, _y: Question) -> Rational {
        Rational::new(1, 4)
    }
}
