use super::{AnswerString, GameSpec, Question, Rational, StringGame};
use crate::error::{Error, Result};

/// Per-question-pair success targets `ω*_{XY}` of a lifted game.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Thresholds {
    Uniform(f64),
    /// Indexed `[x][y]` with `0` the unprimed question.
    PerPair([[f64; 2]; 2]),
}

/// `G^δ_∞`: answers are strings over the base alphabets and the pair wins
/// when the fraction of positions won in the base game reaches
/// `thresholds[x][y] - δ/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedGameConfig {
    base: GameSpec,
    delta: f64,
    thresholds: [[f64; 2]; 2],
    uniform: bool,
    gap_warning: bool,
}

impl LiftedGameConfig {
    pub fn new(base: GameSpec, delta: f64, thresholds: Thresholds) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::Parameter(format!(
                "delta must be positive, got {delta}"
            )));
        }
        if base.questions_a().len() != 2 || base.questions_b().len() != 2 {
            return Err(Error::Shape(format!(
                "lifted games need two questions per player, base has {}x{}",
                base.questions_a().len(),
                base.questions_b().len()
            )));
        }
        if base.answers_a().len() > 256 || base.answers_b().len() > 256 {
            return Err(Error::Shape(
                "base alphabets are limited to 256 symbols".into(),
            ));
        }
        let (table, uniform) = match thresholds {
            Thresholds::Uniform(t) => ([[t; 2]; 2], true),
            Thresholds::PerPair(t) => (t, false),
        };
        if let Some(bad) = table.iter().flatten().find(|t| !(0.0..=1.0).contains(*t)) {
            return Err(Error::Parameter(format!("threshold {bad} outside [0, 1]")));
        }
        Ok(Self {
            base,
            delta,
            thresholds: table,
            uniform,
            gap_warning: false,
        })
    }

    pub(crate) fn set_gap_warning(&mut self, flag: bool) {
        self.gap_warning = flag;
    }

    pub fn base(&self) -> &GameSpec {
        &self.base
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn threshold(&self, x: Question, y: Question) -> f64 {
        self.thresholds[x.index()][y.index()]
    }

    pub fn thresholds(&self) -> [[f64; 2]; 2] {
        self.thresholds
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    /// Set when `δ` is known to exceed the base game's quantum-classical gap.
    pub fn gap_warning(&self) -> bool {
        self.gap_warning
    }

    /// Minimum winning fraction on `(x, y)`: `thresholds[x][y] - δ/2`.
    pub fn cutoff(&self, x: Question, y: Question) -> f64 {
        self.threshold(x, y) - self.delta / 2.0
    }
}

/// Fewest base wins out of `n` positions whose fraction reaches `cutoff`, or
/// `None` when even `n` wins fall short.
pub fn required_wins(n: usize, cutoff: f64) -> Option<usize> {
    if n == 0 {
        return None;
    }
    let reaches = |k: usize| k as f64 / n as f64 >= cutoff;
    let mut k = (n as f64 * cutoff).ceil().clamp(0.0, n as f64) as usize;
    while k > 0 && reaches(k - 1) {
        k -= 1;
    }
    while k <= n && !reaches(k) {
        k += 1;
    }
    (k <= n).then_some(k)
}

/// Lifted verifier. Empty strings are rejected (no fraction over zero positions).
pub fn verify_lifted(
    cfg: &LiftedGameConfig,
    a: &AnswerString,
    b: &AnswerString,
    x: Question,
    y: Question,
) -> Result<bool> {
    a.check_alphabet(cfg.base.answers_a().len())?;
    b.check_alphabet(cfg.base.answers_b().len())?;
    let n = a.len();
    if n == 0 || n != b.len() {
        return Ok(false);
    }
    let wins = a
        .symbols()
        .iter()
        .zip(b.symbols())
        .filter(|&(&ai, &bi)| {
            cfg.base
                .accepts(ai as usize, bi as usize, x.index(), y.index())
        })
        .count();
    Ok(wins as f64 / n as f64 >= cfg.cutoff(x, y))
}

impl StringGame for LiftedGameConfig {
    fn alphabet_a(&self) -> &[String] {
        self.base.answers_a()
    }

    fn alphabet_b(&self) -> &[String] {
        self.base.answers_b()
    }

    fn accepts(&self, a: &AnswerString, b: &AnswerString, x: Question, y: Question) -> bool {
        verify_lifted(self, a, b, x, y).unwrap_or(false)
    }

    fn pi(&self, x: Question, y: Question) -> Rational {
        self.base.pi(x.index(), y.index())
    }
}
