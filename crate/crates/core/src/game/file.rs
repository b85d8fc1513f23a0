//! JSON serialization of [`GameSpec`].
//!
//! ```json
//! {
//!   "questions_a": ["A", "A'"], "questions_b": ["B", "B'"],
//!   "answers_a": ["0", "1"],    "answers_b": ["0", "1"],
//!   "pi": [{"x": "A", "y": "B", "p": "1/4"}, ...],
//!   "verifier": [{"a": "0", "b": "0", "x": "A", "y": "B", "v": 1}, ...]
//! }
//! ```
//!
//! Missing `pi` entries are zero; every verifier tuple must be present.

use std::collections::HashMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{GameSpec, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiEntry {
    pub x: String,
    pub y: String,
    pub p: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifierEntry {
    pub a: String,
    pub b: String,
    pub x: String,
    pub y: String,
    pub v: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpecFile {
    pub questions_a: Vec<String>,
    pub questions_b: Vec<String>,
    pub answers_a: Vec<String>,
    pub answers_b: Vec<String>,
    pub pi: Vec<PiEntry>,
    pub verifier: Vec<VerifierEntry>,
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::GameSpec(format!("{s:?} is not a rational \"num/den\""));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den <= 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn index_of(labels: &[String]) -> HashMap<&str, usize> {
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect()
}

impl GameSpecFile {
    pub fn into_game(self) -> Result<GameSpec> {
        let qa = index_of(&self.questions_a);
        let qb = index_of(&self.questions_b);
        let aa = index_of(&self.answers_a);
        let ab = index_of(&self.answers_b);
        let look = |map: &HashMap<&str, usize>, key: &str, what: &str| {
            map.get(key)
                .copied()
                .ok_or_else(|| Error::GameSpec(format!("unknown {what} label {key:?}")))
        };

        let mut pi = vec![vec![Rational::zero(); self.questions_b.len()]; self.questions_a.len()];
        let mut pi_seen = vec![vec![false; self.questions_b.len()]; self.questions_a.len()];
        for e in &self.pi {
            let (x, y) = (look(&qa, &e.x, "question")?, look(&qb, &e.y, "question")?);
            if std::mem::replace(&mut pi_seen[x][y], true) {
                return Err(Error::GameSpec(format!(
                    "duplicate pi entry ({}, {})",
                    e.x, e.y
                )));
            }
            pi[x][y] = parse_rational(&e.p)?;
        }

        let (nqb, na, nb) = (
            self.questions_b.len(),
            self.answers_a.len(),
            self.answers_b.len(),
        );
        let total = self.questions_a.len() * nqb * na * nb;
        let mut table: Vec<Option<bool>> = vec![None; total];
        for e in &self.verifier {
            let x = look(&qa, &e.x, "question")?;
            let y = look(&qb, &e.y, "question")?;
            let a = look(&aa, &e.a, "answer")?;
            let b = look(&ab, &e.b, "answer")?;
            let v = match e.v {
                0 => false,
                1 => true,
                other => {
                    return Err(Error::GameSpec(format!(
                        "verifier value {other} is not 0 or 1"
                    )))
                }
            };
            let slot = &mut table[((x * nqb + y) * na + a) * nb + b];
            if slot.replace(v).is_some() {
                return Err(Error::GameSpec(format!(
                    "duplicate verifier entry ({}, {} | {}, {})",
                    e.a, e.b, e.x, e.y
                )));
            }
        }
        let missing = table.iter().filter(|v| v.is_none()).count();
        if missing > 0 {
            return Err(Error::GameSpec(format!(
                "verifier table misses {missing} of {total} tuples"
            )));
        }

        GameSpec::from_fn(
            self.questions_a,
            self.questions_b,
            self.answers_a,
            self.answers_b,
            pi,
            |a, b, x, y| table[((x * nqb + y) * na + a) * nb + b].expect("checked complete"),
        )
    }

    pub fn from_game(game: &GameSpec) -> Self {
        let (qa, qb) = (game.questions_a(), game.questions_b());
        let (aa, ab) = (game.answers_a(), game.answers_b());
        let mut pi = Vec::with_capacity(qa.len() * qb.len());
        let mut verifier = Vec::with_capacity(qa.len() * qb.len() * aa.len() * ab.len());
        for (x, xl) in qa.iter().enumerate() {
            for (y, yl) in qb.iter().enumerate() {
                pi.push(PiEntry {
                    x: xl.clone(),
                    y: yl.clone(),
                    p: format_rational(&game.pi(x, y)),
                });
                for (a, al) in aa.iter().enumerate() {
                    for (b, bl) in ab.iter().enumerate() {
                        verifier.push(VerifierEntry {
                            a: al.clone(),
                            b: bl.clone(),
                            x: xl.clone(),
                            y: yl.clone(),
                            v: game.accepts(a, b, x, y) as u8,
                        });
                    }
                }
            }
        }
        Self {
            questions_a: qa.to_vec(),
            questions_b: qb.to_vec(),
            answers_a: aa.to_vec(),
            answers_b: ab.to_vec(),
            pi,
            verifier,
        }
    }
}

impl GameSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<GameSpecFile>(text)?.into_game()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GameSpecFile::from_game(self)).expect("plain data serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
