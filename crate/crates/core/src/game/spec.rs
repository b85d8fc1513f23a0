use std::collections::HashMap;

use bitvec::vec::BitVec;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::Verifier;
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// A finite game `(V, π)` with labelled questions and answers.
///
/// `π` is exact and sums to one; the verifier is a bitset indexed
/// `((x * |Y| + y) * |A| + a) * |B| + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    questions_a: Vec<String>,
    questions_b: Vec<String>,
    answers_a: Vec<String>,
    answers_b: Vec<String>,
    pi: Vec<Rational>,
    verifier: BitVec,
}

impl GameSpec {
    /// Builds a game, evaluating `accept(a, b, x, y)` on every tuple.
    pub fn from_fn(
        questions_a: Vec<String>,
        questions_b: Vec<String>,
        answers_a: Vec<String>,
        answers_b: Vec<String>,
        pi: Vec<Vec<Rational>>,
        accept: impl Fn(usize, usize, usize, usize) -> bool,
    ) -> Result<Self> {
        for (what, labels) in [
            ("questions_a", &questions_a),
            ("questions_b", &questions_b),
            ("answers_a", &answers_a),
            ("answers_b", &answers_b),
        ] {
            check_labels(what, labels)?;
        }
        let (qa, qb, na, nb) = (
            questions_a.len(),
            questions_b.len(),
            answers_a.len(),
            answers_b.len(),
        );
        if pi.len() != qa || pi.iter().any(|row| row.len() != qb) {
            return Err(Error::GameSpec(format!("pi must be a {qa}x{qb} table")));
        }
        let pi: Vec<Rational> = pi.into_iter().flatten().collect();
        if pi.iter().any(|p| *p < Rational::zero()) {
            return Err(Error::GameSpec("pi has a negative entry".into()));
        }
        let total = pi.iter().fold(Rational::zero(), |acc, p| acc + p);
        if !total.is_one() {
            return Err(Error::GameSpec(format!("pi sums to {total}, not 1")));
        }

        let mut verifier = BitVec::with_capacity(qa * qb * na * nb);
        for x in 0..qa {
            for y in 0..qb {
                for a in 0..na {
                    for b in 0..nb {
                        verifier.push(accept(a, b, x, y));
                    }
                }
            }
        }
        Ok(Self {
            questions_a,
            questions_b,
            answers_a,
            answers_b,
            pi,
            verifier,
        })
    }

    pub fn questions_a(&self) -> &[String] {
        &self.questions_a
    }

    pub fn questions_b(&self) -> &[String] {
        &self.questions_b
    }

    pub fn answers_a(&self) -> &[String] {
        &self.answers_a
    }

    pub fn answers_b(&self) -> &[String] {
        &self.answers_b
    }

    pub fn pi(&self, x: usize, y: usize) -> Rational {
        self.pi[x * self.questions_b.len() + y]
    }

    pub fn accepts(&self, a: usize, b: usize, x: usize, y: usize) -> bool {
        let (qb, na, nb) = (
            self.questions_b.len(),
            self.answers_a.len(),
            self.answers_b.len(),
        );
        self.verifier[((x * qb + y) * na + a) * nb + b]
    }

    /// Least common multiple of the denominators of `π`.
    pub fn pi_denominator_lcm(&self) -> Option<i64> {
        self.pi.iter().try_fold(1i64, |acc, p| {
            let d = *p.denom();
            let g = num_integer::gcd(acc, d);
            (acc / g).checked_mul(d)
        })
    }

    /// Index of an answer label on Alice's side.
    pub fn answer_index_a(&self, label: &str) -> Option<usize> {
        self.answers_a.iter().position(|l| l == label)
    }

    pub fn answer_index_b(&self, label: &str) -> Option<usize> {
        self.answers_b.iter().position(|l| l == label)
    }
}

fn check_labels(what: &str, labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::GameSpec(format!("{what} is empty")));
    }
    let mut seen = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(j) = seen.insert(l.as_str(), i) {
            return Err(Error::GameSpec(format!(
                "{what} repeats label {l:?} at {j} and {i}"
            )));
        }
    }
    Ok(())
}

impl Verifier for GameSpec {
    fn question_counts(&self) -> (usize, usize) {
        (self.questions_a.len(), self.questions_b.len())
    }

    fn accepts_labels(&self, a: &str, b: &str, x: usize, y: usize) -> Result<bool> {
        let ai = self
            .answer_index_a(a)
            .ok_or_else(|| Error::Schema(format!("{a:?} is not one of Alice's answers")))?;
        let bi = self
            .answer_index_b(b)
            .ok_or_else(|| Error::Schema(format!("{b:?} is not one of Bob's answers")))?;
        let (qa, qb) = self.question_counts();
        if x >= qa || y >= qb {
            return Err(Error::Schema(format!(
                "question pair ({x}, {y}) out of range"
            )));
        }
        Ok(self.accepts(ai, bi, x, y))
    }

    fn pi_f64(&self) -> Vec<Vec<f64>> {
        let qb = self.questions_b.len();
        self.pi
            .chunks(qb)
            .map(|row| {
                row.iter()
                    .map(|p| *p.numer() as f64 / *p.denom() as f64)
                    .collect()
            })
            .collect()
    }
}

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

fn uniform_2x2() -> Vec<Vec<Rational>> {
    vec![vec![Rational::new(1, 4); 2]; 2]
}

/// CHSH: binary answers, uniform questions, win iff `a ⊕ b = x · y`.
pub fn chsh() -> GameSpec {
    GameSpec::from_fn(
        labels(&["A", "A'"]),
        labels(&["B", "B'"]),
        labels(&["0", "1"]),
        labels(&["0", "1"]),
        uniform_2x2(),
        |a, b, x, y| (a ^ b) == (x & y),
    )
    .expect("CHSH is well formed")
}

/// Two questions, two answers, verifier identically one.
pub fn trivial_always_win() -> GameSpec {
    GameSpec::from_fn(
        labels(&["A", "A'"]),
        labels(&["B", "B'"]),
        labels(&["0", "1"]),
        labels(&["0", "1"]),
        uniform_2x2(),
        |_, _, _, _| true,
    )
    .expect("constant game is well formed")
}
