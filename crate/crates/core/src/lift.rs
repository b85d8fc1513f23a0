//! Lifted games under i.i.d. play, rejection sets, and dimension witnesses.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{
    chsh, required_wins, strings_of_len, AnswerString, GameSpec, LiftedGameConfig, Question,
    StringGame, Thresholds, CHSH_QUANTUM_VALUE,
};

/// Default cap on `|B|^n` when Bob's length-`n` answers are enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 20;

/// Builds `G^δ_∞` over `base`.
///
/// The caller is responsible for `δ < ω*(G) − ω(G)`; for CHSH the gap is
/// known and the config's [`gap_warning`](LiftedGameConfig::gap_warning) is
/// set when `δ ≥ cos²(π/8) − 3/4`.
pub fn build_lifted(
    base: GameSpec,
    delta: f64,
    thresholds: Thresholds,
) -> Result<LiftedGameConfig> {
    let is_chsh = base == chsh();
    let mut cfg = LiftedGameConfig::new(base, delta, thresholds)?;
    if is_chsh && delta >= CHSH_QUANTUM_VALUE - 0.75 {
        log::warn!(
            "delta = {delta} is not below the CHSH gap cos²(π/8) - 3/4 = {:.6}",
            CHSH_QUANTUM_VALUE - 0.75
        );
        cfg.set_gap_warning(true);
    }
    Ok(cfg)
}

/// `CHSH^δ_∞` with every threshold at `cos²(π/8)`.
pub fn chsh_lift(delta: f64) -> Result<LiftedGameConfig> {
    build_lifted(chsh(), delta, Thresholds::Uniform(CHSH_QUANTUM_VALUE))
}

/// `Pr[Bin(n, p) ≥ k]` by direct summation of the probability mass.
pub fn binomial_tail(n: usize, k: usize, p: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k > n || p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    // ln C(n, j) built up incrementally from ln C(n, 0) = 0.
    let mut ln_choose = 0.0;
    let mut total = 0.0;
    for j in 0..=n {
        if j >= k {
            total += (ln_choose + j as f64 * lp + (n - j) as f64 * lq).exp();
        }
        if j < n {
            ln_choose += ((n - j) as f64 / (j + 1) as f64).ln();
        }
    }
    total.min(1.0)
}

/// Success probability of `n` i.i.d. rounds of a base strategy winning
/// question pair `(X, Y)` with probability `per_pair_win[X][Y]`:
/// `Σ π(X,Y) Pr[Bin(n, p_XY) ≥ ⌈n · cutoff_XY⌉]`.
pub fn lifted_success_exact(
    n: usize,
    per_pair_win: [[f64; 2]; 2],
    cfg: &LiftedGameConfig,
    pi: &[Vec<f64>],
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    if pi.len() != 2 || pi.iter().any(|row| row.len() != 2) {
        return Err(Error::Schema("pi must be a 2x2 table".into()));
    }
    if let Some(p) = per_pair_win
        .iter()
        .flatten()
        .find(|p| !(0.0..=1.0).contains(*p))
    {
        return Err(Error::Parameter(format!(
            "win probability {p} outside [0, 1]"
        )));
    }
    let mut total = 0.0;
    for x in Question::ALL {
        for y in Question::ALL {
            let tail = match required_wins(n, cfg.cutoff(x, y)) {
                Some(k) => binomial_tail(n, k, per_pair_win[x.index()][y.index()]),
                None => 0.0,
            };
            total += pi[x.index()][y.index()] * tail;
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Bob's answers of length `n` rejected against Alice's `s` (unprimed
/// question) and `t` (primed question).
///
/// Strings of any other length are rejected by the equal-length rule and are
/// left out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RejectionSets {
    pub n: usize,
    /// Number of Bob strings of length `n`.
    pub universe: usize,
    /// Rejected with `s` on `(A, B)`.
    pub z_s: BTreeSet<AnswerString>,
    /// Rejected with `t` on `(A', B)`.
    pub p_t: BTreeSet<AnswerString>,
    /// Rejected with `s` on `(A, B')`.
    pub u_prime_s: BTreeSet<AnswerString>,
    /// Rejected with `t` on `(A', B')`.
    pub p_prime_t: BTreeSet<AnswerString>,
}

impl RejectionSets {
    /// `Z_s ∪ P_t` covers every answer.
    pub fn unprimed_full(&self) -> bool {
        self.z_s.union(&self.p_t).count() == self.universe
    }

    /// `U'_s ∪ P'_t` covers every answer.
    pub fn primed_full(&self) -> bool {
        self.u_prime_s.union(&self.p_prime_t).count() == self.universe
    }

    pub fn branch(&self) -> Branch {
        match (self.primed_full(), self.unprimed_full()) {
            (true, true) => Branch::Both,
            (true, false) => Branch::Primed,
            (false, true) => Branch::Unprimed,
            (false, false) => Branch::Neither,
        }
    }
}

pub fn rejection_sets<G: StringGame + ?Sized>(
    game: &G,
    s: &AnswerString,
    t: &AnswerString,
) -> Result<RejectionSets> {
    rejection_sets_with_cap(game, s, t, DEFAULT_ENUMERATION_CAP)
}

pub fn rejection_sets_with_cap<G: StringGame + ?Sized>(
    game: &G,
    s: &AnswerString,
    t: &AnswerString,
    cap: usize,
) -> Result<RejectionSets> {
    let n = s.len();
    if n == 0 || t.len() != n {
        return Err(Error::Parameter(format!(
            "need |s| = |t| >= 1, got {} and {}",
            s.len(),
            t.len()
        )));
    }
    s.check_alphabet(game.alphabet_a().len())?;
    t.check_alphabet(game.alphabet_a().len())?;
    let k = game.alphabet_b().len();
    let requested = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if requested > cap as u128 {
        return Err(Error::EnumerationCap { requested, cap });
    }

    let (u, p) = (Question::Unprimed, Question::Primed);
    let mut sets = RejectionSets {
        n,
        universe: requested as usize,
        z_s: BTreeSet::new(),
        p_t: BTreeSet::new(),
        u_prime_s: BTreeSet::new(),
        p_prime_t: BTreeSet::new(),
    };
    for bob in strings_of_len(k, n) {
        if !game.accepts(s, &bob, u, u) {
            sets.z_s.insert(bob.clone());
        }
        if !game.accepts(t, &bob, p, u) {
            sets.p_t.insert(bob.clone());
        }
        if !game.accepts(s, &bob, u, p) {
            sets.u_prime_s.insert(bob.clone());
        }
        if !game.accepts(t, &bob, p, p) {
            sets.p_prime_t.insert(bob);
        }
    }
    Ok(sets)
}

/// Which union of rejection sets covers all of Bob's answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Primed,
    Unprimed,
    Both,
    Neither,
}

impl Branch {
    pub fn holds(self) -> bool {
        self != Branch::Neither
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Primed => "primed",
            Branch::Unprimed => "unprimed",
            Branch::Both => "both",
            Branch::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairBranch {
    pub s: String,
    pub t: String,
    pub branch: Branch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub max_len: usize,
    /// Every `(s, t)` with `1 <= |s| = |t| <= max_len`, shortest first.
    pub pairs: Vec<PairBranch>,
    pub overall: bool,
    pub note: String,
}

impl DichotomyReport {
    pub fn branch_of(&self, s: &str, t: &str) -> Option<Branch> {
        self.pairs
            .iter()
            .find(|p| p.s == s && p.t == t)
            .map(|p| p.branch)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairBranch> {
        self.pairs.iter().filter(|p| !p.branch.holds())
    }
}

const LENGTH_NOTE: &str = "pairs with |s| != |t| satisfy both branches through the equal-length rule, \
and Bob strings whose length differs from |s| lie in every rejection set; only equal-length cases are enumerated";

/// Checks that for every `(s, t)` either `U'_s ∪ P'_t` or `Z_s ∪ P_t` is all
/// of Bob's answers.
pub fn check_dichotomy<G: StringGame + ?Sized>(
    game: &G,
    max_len: usize,
) -> Result<DichotomyReport> {
    check_dichotomy_with_cap(game, max_len, DEFAULT_ENUMERATION_CAP)
}

pub fn check_dichotomy_with_cap<G: StringGame + ?Sized>(
    game: &G,
    max_len: usize,
    cap: usize,
) -> Result<DichotomyReport> {
    if max_len == 0 {
        return Err(Error::Parameter("max_len must be at least 1".into()));
    }
    let (ka, kb) = (game.alphabet_a().len(), game.alphabet_b().len());
    let pairs_needed = (ka as u128)
        .checked_pow(2 * max_len as u32)
        .unwrap_or(u128::MAX);
    let bob_needed = (kb as u128)
        .checked_pow(max_len as u32)
        .unwrap_or(u128::MAX);
    let requested = pairs_needed.saturating_mul(bob_needed);
    if requested > cap as u128 * cap as u128 || bob_needed > cap as u128 {
        return Err(Error::EnumerationCap { requested, cap });
    }

    let mut pairs = Vec::new();
    for n in 1..=max_len {
        let alice = strings_of_len(ka, n);
        let level = alice
            .par_iter()
            .map(|s| {
                alice
                    .iter()
                    .map(|t| {
                        let sets = rejection_sets_with_cap(game, s, t, cap)?;
                        Ok(PairBranch {
                            s: s.render(game.alphabet_a()),
                            t: t.render(game.alphabet_a()),
                            branch: sets.branch(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        pairs.extend(level.into_iter().flatten());
    }
    let overall = pairs.iter().all(|p| p.branch.holds());
    Ok(DichotomyReport {
        max_len,
        pairs,
        overall,
        note: LENGTH_NOTE.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub epsilon: f64,
    /// `max(1, ⌈1/(16√ε)⌉)`, valid for Hardy's game.
    pub dim_lower_bound: u64,
    pub answer_count_note: String,
}

/// Local dimension any strategy winning Hardy's game with probability
/// `1 − ε` must have.
pub fn dimension_lower_bound(epsilon: f64) -> Result<WitnessReport> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::Parameter(format!(
            "epsilon = {epsilon} outside (0, 1]"
        )));
    }
    let bound = (1.0 / (16.0 * epsilon.sqrt())).ceil().max(1.0);
    Ok(WitnessReport {
        epsilon,
        dim_lower_bound: bound as u64,
        answer_count_note: "answers per party: Omega(1/sqrt(epsilon)); the constant depends on \
min pi(X,Y) and is not explicit; for lifted games the dimension bound is likewise only Omega(1/sqrt(epsilon))"
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::HardyGame;

    fn set(items: &[&str]) -> BTreeSet<AnswerString> {
        items.iter().map(|s| AnswerString::bits(s)).collect()
    }

    #[test]
    fn hardy_rejection_sets() {
        let r = rejection_sets(
            &HardyGame,
            &AnswerString::bits("0"),
            &AnswerString::bits("1"),
        )
        .unwrap();
        assert_eq!(r.z_s, set(&["1"]));
        assert_eq!(r.p_t, set(&[]));
        assert_eq!(r.u_prime_s, set(&["0"]));
        assert_eq!(r.p_prime_t, set(&["1"]));
        assert_eq!(r.branch(), Branch::Primed);

        let r = rejection_sets(
            &HardyGame,
            &AnswerString::bits("0"),
            &AnswerString::bits("0"),
        )
        .unwrap();
        assert_eq!(r.z_s, set(&["1"]));
        assert_eq!(r.p_t, set(&["0"]));
        assert_eq!(r.u_prime_s, set(&["0"]));
        assert_eq!(r.p_prime_t, set(&[]));
        assert_eq!(r.branch(), Branch::Unprimed);

        for t in ["0", "1"] {
            let r = rejection_sets(&HardyGame, &AnswerString::bits("1"), &AnswerString::bits(t))
                .unwrap();
            assert_eq!(r.z_s, set(&["0", "1"]));
        }
    }

    #[test]
    fn rejection_set_errors() {
        let (a, b) = (AnswerString::bits("0"), AnswerString::bits("01"));
        assert!(matches!(
            rejection_sets(&HardyGame, &a, &b),
            Err(Error::Parameter(_))
        ));
        let e = AnswerString::empty();
        assert!(rejection_sets(&HardyGame, &e, &e).is_err());
        let long = AnswerString::bits("0101");
        let err = rejection_sets_with_cap(&HardyGame, &long, &long, 8).unwrap_err();
        assert!(matches!(
            err,
            Error::EnumerationCap {
                requested: 16,
                cap: 8
            }
        ));
    }

    #[test]
    fn dichotomy_small() {
        let r = check_dichotomy(&HardyGame, 1).unwrap();
        assert_eq!(r.pairs.len(), 4);
        assert_eq!(r.branch_of("0", "1"), Some(Branch::Primed));
        assert_eq!(r.branch_of("0", "0"), Some(Branch::Unprimed));
        assert!(r.overall);
        assert!(
            check_dichotomy(&chsh_lift(0.05).unwrap(), 2)
                .unwrap()
                .overall
        );
    }

    #[test]
    fn witness_bounds() {
        assert_eq!(dimension_lower_bound(1e-4).unwrap().dim_lower_bound, 7);
        assert_eq!(
            dimension_lower_bound(1.0 / 256.0).unwrap().dim_lower_bound,
            1
        );
        assert_eq!(dimension_lower_bound(1e-6).unwrap().dim_lower_bound, 63);
        assert_eq!(dimension_lower_bound(0.01).unwrap().dim_lower_bound, 1);
        assert_eq!(dimension_lower_bound(1.0).unwrap().dim_lower_bound, 1);
        assert!(dimension_lower_bound(0.0).is_err());
        assert!(dimension_lower_bound(1.5).is_err());
    }

    #[test]
    fn build_lifted_gap_warning() {
        let ok = chsh_lift(0.05).unwrap();
        assert!(!ok.gap_warning());
        assert!((ok.cutoff(Question::Unprimed, Question::Unprimed) - 0.828553).abs() < 1e-6);
        let warned = chsh_lift(0.2).unwrap();
        assert!(warned.gap_warning());
        assert!(chsh_lift(-0.1).is_err());
    }

    #[test]
    fn binomial_tail_values() {
        assert!((binomial_tail(4, 4, 0.85) - 0.52200625).abs() < 1e-15);
        assert_eq!(binomial_tail(5, 0, 0.3), 1.0);
        assert_eq!(binomial_tail(5, 6, 0.3), 0.0);
        assert_eq!(binomial_tail(5, 2, 1.0), 1.0);
        assert_eq!(binomial_tail(5, 2, 0.0), 0.0);
        // Pr[Bin(3, 1/2) >= 2] = 4/8
        assert!((binomial_tail(3, 2, 0.5) - 0.5).abs() < 1e-15);
        // large n stays finite
        let t = binomial_tail(5000, 2600, 0.5);
        assert!(t > 0.0 && t < 0.01);
    }

    #[test]
    fn lifted_success_documented_cases() {
        let pi = vec![vec![0.25; 2]; 2];
        let cfg = build_lifted(chsh(), 0.05, Thresholds::Uniform(0.8284)).unwrap();
        let v = lifted_success_exact(1, [[0.8284; 2]; 2], &cfg, &pi).unwrap();
        assert!((v - 0.8284).abs() < 1e-12);

        let cfg = build_lifted(chsh(), 0.1, Thresholds::Uniform(0.85)).unwrap();
        let single = vec![vec![1.0, 0.0], vec![0.0, 0.0]];
        let v = lifted_success_exact(4, [[0.85; 2]; 2], &cfg, &single).unwrap();
        assert!((v - 0.52200625).abs() < 1e-12);

        for n in [1, 7, 30] {
            assert_eq!(
                lifted_success_exact(n, [[1.0; 2]; 2], &cfg, &pi).unwrap(),
                1.0
            );
        }
        assert!(lifted_success_exact(0, [[1.0; 2]; 2], &cfg, &pi).is_err());
        assert!(lifted_success_exact(3, [[1.5; 2]; 2], &cfg, &pi).is_err());
    }
}
