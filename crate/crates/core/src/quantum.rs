//! Hardy states, the `n`-copy strategy family, and exact evaluation of finite
//! quantum strategies.
//!
//! With `ℬ' = {|v₀'⟩, |v₁'⟩}` a real orthonormal basis and `0 < θ < π/2`, the
//! Hardy state is
//!
//! ```text
//! |ψ⟩ = (sin θ |v₀'v₀'⟩ − cos θ (|v₀'v₁'⟩ + |v₁'v₀'⟩)) / √(1 + cos²θ)
//! ```
//!
//! and `ℬ` is `ℬ'` rotated by `θ` in the real plane. Measuring both halves in
//! `ℬ` yields `(0, 0)` with probability `p_θ = cos⁴θ sin²θ / (1 + cos²θ)`;
//! mixed bases never yield `(0, 0)` and `ℬ'` on both sides never yields
//! `(1, 1)`. The strategy `𝔖ₙ` measures `n` copies position by position.

use std::f64::consts::FRAC_PI_2;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::Verifier;
use crate::linalg::{
    distribution_unchecked, validate_povm, ComplexMatrix, JointDistribution, StateVector, C64,
    DEFAULT_DIMENSION_CAP, POVM_TOLERANCE,
};

/// Real orthonormal basis of `R²`; row `k` holds `|v_k⟩`.
pub type Basis = [[f64; 2]; 2];

pub const COMPUTATIONAL_BASIS: Basis = [[1.0, 0.0], [0.0, 1.0]];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HardyParams {
    theta: f64,
    primed: Basis,
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "theta = {theta} outside (0, π/2)"
        )))
    }
}

impl HardyParams {
    /// Hardy parameters with `ℬ'` the computational basis.
    pub fn new(theta: f64) -> Result<Self> {
        Self::with_basis(theta, COMPUTATIONAL_BASIS)
    }

    pub fn with_basis(theta: f64, primed: Basis) -> Result<Self> {
        check_theta(theta)?;
        let dot = |u: [f64; 2], v: [f64; 2]| u[0] * v[0] + u[1] * v[1];
        let off = dot(primed[0], primed[1]).abs();
        let n0 = (dot(primed[0], primed[0]) - 1.0).abs();
        let n1 = (dot(primed[1], primed[1]) - 1.0).abs();
        if off.max(n0).max(n1) > 1e-12 {
            return Err(Error::Parameter("primed basis is not orthonormal".into()));
        }
        Ok(Self { theta, primed })
    }

    /// Parameters at the angle maximizing `p_θ`.
    pub fn optimal() -> Self {
        Self::new(optimal_theta().0).expect("θ* lies in range")
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `ℬ'`.
    pub fn primed_basis(&self) -> Basis {
        self.primed
    }

    /// `ℬ`: `|v₀⟩ = cos θ |v₀'⟩ + sin θ |v₁'⟩`, `|v₁⟩ = −sin θ |v₀'⟩ + cos θ |v₁'⟩`.
    pub fn rotated_basis(&self) -> Basis {
        let (s, c) = self.theta.sin_cos();
        let [p0, p1] = self.primed;
        [
            [c * p0[0] + s * p1[0], c * p0[1] + s * p1[1]],
            [-s * p0[0] + c * p1[0], -s * p0[1] + c * p1[1]],
        ]
    }

    /// Single-copy coefficient matrix `C[i][j]` of `|ψ⟩` in the computational basis.
    fn coefficients(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        let norm = (1.0 + c * c).sqrt();
        let [p0, p1] = self.primed;
        let mut m = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = (s * p0[i] * p0[j] - c * (p0[i] * p1[j] + p1[i] * p0[j])) / norm;
            }
        }
        m
    }
}

/// The two-qubit Hardy state.
pub fn hardy_state(params: &HardyParams) -> StateVector {
    let m = params.coefficients();
    let amps = [m[0][0], m[0][1], m[1][0], m[1][1]]
        .iter()
        .map(|&x| C64::new(x, 0.0))
        .collect();
    StateVector::new(amps, 2, 2).expect("Hardy state is normalized")
}

/// `p_θ = cos⁴θ sin²θ / (1 + cos²θ)`.
pub fn p_theta(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let (s, c) = theta.sin_cos();
    Ok(c.powi(4) * s * s / (1.0 + c * c))
}

/// Closed-form maximizer `θ* = arccos(√((√5 − 1)/2))` and `p_θ*`.
pub fn optimal_theta() -> (f64, f64) {
    let theta = ((5f64.sqrt() - 1.0) / 2.0).sqrt().acos();
    (theta, p_theta(theta).expect("θ* lies in range"))
}

/// `(5√5 − 11)/2`, the largest `p_θ`.
pub fn max_p_theta() -> f64 {
    (5.0 * 5f64.sqrt() - 11.0) / 2.0
}

/// `c = 1 − p_θ* = (13 − 5√5)/2`.
pub fn decay_constant() -> f64 {
    (13.0 - 5.0 * 5f64.sqrt()) / 2.0
}

/// Golden-section search for the maximizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_argmax(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    (lo + hi) / 2.0
}

/// Numerical maximizer of `p_θ` over `(0, π/2)`, tolerance `1e-9` in `θ`.
pub fn numerical_optimal_theta() -> f64 {
    let eps = 1e-12;
    golden_section_argmax(|t| p_theta(t).unwrap_or(0.0), eps, FRAC_PI_2 - eps, 1e-9)
}

/// One POVM: outcome labels with their effects.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    pub outcomes: Vec<String>,
    pub elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(outcomes: Vec<String>, elements: Vec<ComplexMatrix>) -> Result<Self> {
        if outcomes.len() != elements.len() || outcomes.is_empty() {
            return Err(Error::Strategy(format!(
                "{} outcome labels for {} POVM elements",
                outcomes.len(),
                elements.len()
            )));
        }
        let mut sorted = outcomes.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Strategy("repeated outcome label".into()));
        }
        Ok(Self { outcomes, elements })
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Projective measurement in a real orthonormal basis given by rows.
    pub fn from_real_basis(vectors: &[Vec<f64>], labels: Vec<String>) -> Result<Self> {
        let elements = vectors
            .iter()
            .map(|v| ComplexMatrix::projector_real(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels, elements)
    }
}

/// A shared state with one POVM per question on each side.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumStrategy {
    psi: StateVector,
    povms_a: Vec<Povm>,
    povms_b: Vec<Povm>,
}

impl QuantumStrategy {
    /// Validates every POVM at `1e-10` against the state's bipartition.
    pub fn new(psi: StateVector, povms_a: Vec<Povm>, povms_b: Vec<Povm>) -> Result<Self> {
        let (d_a, d_b) = psi.bipartition();
        for (side, povms, d) in [("Alice", &povms_a, d_a), ("Bob", &povms_b, d_b)] {
            if povms.is_empty() {
                return Err(Error::Strategy(format!("{side} has no questions")));
            }
            for povm in povms {
                let report = validate_povm(&povm.elements, POVM_TOLERANCE)?;
                if povm.dim() != d {
                    return Err(Error::Shape(format!(
                        "{side}'s POVM acts on dimension {}, state has {d}",
                        povm.dim()
                    )));
                }
                if !report.is_valid() {
                    return Err(Error::InvalidPovm(Box::new(report)));
                }
            }
        }
        Ok(Self {
            psi,
            povms_a,
            povms_b,
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.psi
    }

    pub fn povms_a(&self) -> &[Povm] {
        &self.povms_a
    }

    pub fn povms_b(&self) -> &[Povm] {
        &self.povms_b
    }

    pub fn question_counts(&self) -> (usize, usize) {
        (self.povms_a.len(), self.povms_b.len())
    }

    pub fn local_dims(&self) -> (usize, usize) {
        self.psi.bipartition()
    }

    /// Joint outcome distribution on questions `(x, y)`.
    pub fn distribution(&self, x: usize, y: usize) -> JointDistribution {
        distribution_unchecked(
            &self.psi,
            &self.povms_a[x].elements,
            &self.povms_b[y].elements,
        )
    }
}

/// `𝔖ₙ`: `n` copies of the Hardy state, measured copy-wise in `ℬ` on the
/// unprimed question and in `ℬ'` on the primed one.
///
/// Alice's qubits come first in copy order, then Bob's, so the state has
/// bipartition `(2ⁿ, 2ⁿ)`. Outcome labels are the `n`-bit strings of basis
/// indices.
pub fn build_sn(params: &HardyParams, n: usize) -> Result<QuantumStrategy> {
    build_sn_with_cap(params, n, DEFAULT_DIMENSION_CAP)
}

pub fn build_sn_with_cap(params: &HardyParams, n: usize, cap: usize) -> Result<QuantumStrategy> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let total = (n < 32).then(|| 1usize << (2 * n)).filter(|&d| d <= cap);
    let Some(total) = total else {
        return Err(Error::DimensionCap {
            requested: if n < 32 {
                1usize << (2 * n)
            } else {
                usize::MAX
            },
            cap,
        });
    };
    let d = 1usize << n;
    let coeff = params.coefficients();
    let mut amps = Vec::with_capacity(total);
    for i in 0..d {
        for j in 0..d {
            let amp: f64 = (0..n)
                .map(|k| {
                    let shift = n - 1 - k;
                    coeff[(i >> shift) & 1][(j >> shift) & 1]
                })
                .product();
            amps.push(C64::new(amp, 0.0));
        }
    }
    let psi = StateVector::normalized(amps, d, d)?;

    let labels: Vec<String> = (0..d).map(|s| format!("{s:0n$b}")).collect();
    let product_basis = |basis: Basis| -> Vec<Vec<f64>> {
        (0..d)
            .map(|s| {
                (0..d)
                    .map(|i| {
                        (0..n)
                            .map(|k| {
                                let shift = n - 1 - k;
                                basis[(s >> shift) & 1][(i >> shift) & 1]
                            })
                            .product()
                    })
                    .collect()
            })
            .collect()
    };
    let unprimed = Povm::from_real_basis(&product_basis(params.rotated_basis()), labels.clone())?;
    let primed = Povm::from_real_basis(&product_basis(params.primed_basis()), labels)?;
    QuantumStrategy::new(
        psi,
        vec![unprimed.clone(), primed.clone()],
        vec![unprimed, primed],
    )
}

/// Bell state `(|00⟩ + |11⟩)/√2` with Alice measuring at angles `0, π/4` and
/// Bob at `±π/8`; wins CHSH with probability `cos²(π/8)` on every question pair.
pub fn chsh_canonical() -> QuantumStrategy {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let zero = C64::new(0.0, 0.0);
    let psi = StateVector::new(vec![C64::new(h, 0.0), zero, zero, C64::new(h, 0.0)], 2, 2)
        .expect("Bell state");
    let at = |phi: f64| {
        let (s, c) = phi.sin_cos();
        Povm::from_real_basis(&[vec![c, s], vec![-s, c]], vec!["0".into(), "1".into()])
            .expect("rotated basis")
    };
    let pi = std::f64::consts::PI;
    QuantumStrategy::new(
        psi,
        vec![at(0.0), at(pi / 4.0)],
        vec![at(pi / 8.0), at(-pi / 8.0)],
    )
    .expect("canonical CHSH strategy is valid")
}

/// Exact winning probability `Σ π(x,y) Σ_{V=1} ⟨ψ|A_a^x ⊗ B_b^y|ψ⟩`.
pub fn quantum_value<V: Verifier + ?Sized>(
    verifier: &V,
    strategy: &QuantumStrategy,
    pi: &[Vec<f64>],
) -> Result<f64> {
    let (qa, qb) = strategy.question_counts();
    if verifier.question_counts() != (qa, qb) {
        return Err(Error::Schema(format!(
            "strategy answers {qa}x{qb} questions, game asks {:?}",
            verifier.question_counts()
        )));
    }
    if pi.len() != qa || pi.iter().any(|row| row.len() != qb) {
        return Err(Error::Schema(format!("pi is not a {qa}x{qb} table")));
    }
    let pairs: Vec<(usize, usize)> = (0..qa).flat_map(|x| (0..qb).map(move |y| (x, y))).collect();
    let terms = pairs
        .par_iter()
        .map(|&(x, y)| {
            if pi[x][y] == 0.0 {
                return Ok(0.0);
            }
            Ok(pi[x][y] * win_probability(verifier, strategy, x, y)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(terms.iter().sum::<f64>().clamp(0.0, 1.0))
}

/// Winning probability conditioned on questions `(x, y)`.
pub fn win_probability<V: Verifier + ?Sized>(
    verifier: &V,
    strategy: &QuantumStrategy,
    x: usize,
    y: usize,
) -> Result<f64> {
    let dist = strategy.distribution(x, y);
    let (pa, pb) = (&strategy.povms_a[x], &strategy.povms_b[y]);
    let mut total = 0.0;
    for (ai, a) in pa.outcomes.iter().enumerate() {
        for (bi, b) in pb.outcomes.iter().enumerate() {
            if verifier.accepts_labels(a, b, x, y)? {
                total += dist.get(ai, bi);
            }
        }
    }
    Ok(total)
}

/// `1 − (1/4)(1 − p_θ)ⁿ`, the success probability of `𝔖ₙ` in Hardy's game.
pub fn sn_success_closed_form(theta: f64, n: u32) -> Result<f64> {
    let p = p_theta(theta)?;
    Ok(1.0 - 0.25 * (1.0 - p).powi(n as i32))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrategyPlan {
    pub epsilon: f64,
    /// Copies of the Hardy state; also the answer length.
    pub n: u32,
    /// Local dimension `2ⁿ`.
    #[serde(serialize_with = "serialize_biguint")]
    pub local_dim: BigUint,
    pub c: f64,
    pub theta_used: f64,
    /// `(1/4) cⁿ`.
    pub closed_form_error: f64,
}

fn serialize_biguint<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl StrategyPlan {
    pub fn answer_length(&self) -> u32 {
        self.n
    }
}

/// Smallest-copy plan from `n = max(1, ⌈ln ε / ln c⌉)` at `θ*`.
pub fn plan_for_epsilon(epsilon: f64) -> Result<StrategyPlan> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Parameter(format!(
            "epsilon = {epsilon} outside (0, 1)"
        )));
    }
    let (theta, p) = optimal_theta();
    let c = 1.0 - p;
    let n = (epsilon.ln() / c.ln()).ceil().max(1.0) as u32;
    Ok(StrategyPlan {
        epsilon,
        n,
        local_dim: BigUint::from(1u8) << n,
        c,
        theta_used: theta,
        closed_form_error: 0.25 * c.powi(n as i32),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PovmElementFile {
    pub answer: String,
    /// Row-major `[re, im]` entries.
    pub element: Vec<Vec<[f64; 2]>>,
}

/// JSON form of a [`QuantumStrategy`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumStrategyFile {
    pub d_a: usize,
    pub d_b: usize,
    /// Amplitudes `[re, im]`, index `i * d_b + j`.
    pub psi: Vec<[f64; 2]>,
    pub povms_a: Vec<Vec<PovmElementFile>>,
    pub povms_b: Vec<Vec<PovmElementFile>>,
}

impl QuantumStrategyFile {
    pub fn into_strategy(self) -> Result<QuantumStrategy> {
        let psi = StateVector::new(
            self.psi.iter().map(|&[re, im]| C64::new(re, im)).collect(),
            self.d_a,
            self.d_b,
        )?;
        let povms = |side: Vec<Vec<PovmElementFile>>| -> Result<Vec<Povm>> {
            side.into_iter()
                .map(|elements| {
                    let mut labels = Vec::with_capacity(elements.len());
                    let mut mats = Vec::with_capacity(elements.len());
                    for e in elements {
                        let rows = e.element.len();
                        let cols = e.element.first().map_or(0, Vec::len);
                        if e.element.iter().any(|r| r.len() != cols) {
                            return Err(Error::Shape(format!(
                                "ragged POVM element for {:?}",
                                e.answer
                            )));
                        }
                        let data = e
                            .element
                            .iter()
                            .flatten()
                            .map(|&[re, im]| C64::new(re, im))
                            .collect();
                        mats.push(ComplexMatrix::new(rows, cols, data)?);
                        labels.push(e.answer);
                    }
                    Povm::new(labels, mats)
                })
                .collect()
        };
        QuantumStrategy::new(psi, povms(self.povms_a)?, povms(self.povms_b)?)
    }

    pub fn from_strategy(s: &QuantumStrategy) -> Self {
        let (d_a, d_b) = s.local_dims();
        let side = |povms: &[Povm]| {
            povms
                .iter()
                .map(|p| {
                    p.outcomes
                        .iter()
                        .zip(&p.elements)
                        .map(|(label, m)| PovmElementFile {
                            answer: label.clone(),
                            element: (0..m.rows())
                                .map(|i| {
                                    (0..m.cols())
                                        .map(|j| [m[(i, j)].re, m[(i, j)].im])
                                        .collect()
                                })
                                .collect(),
                        })
                        .collect()
                })
                .collect()
        };
        Self {
            d_a,
            d_b,
            psi: s
                .state()
                .amplitudes()
                .iter()
                .map(|z| [z.re, z.im])
                .collect(),
            povms_a: side(s.povms_a()),
            povms_b: side(s.povms_b()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{chsh, HardyGame, CHSH_QUANTUM_VALUE};
    use std::f64::consts::FRAC_PI_4;

    fn kron2(u: [f64; 2], v: [f64; 2]) -> Vec<C64> {
        [u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]]
            .iter()
            .map(|&x| C64::new(x, 0.0))
            .collect()
    }

    #[test]
    fn hardy_state_orthogonality() {
        for k in 1..20 {
            let params = HardyParams::new(k as f64 * FRAC_PI_2 / 20.0).unwrap();
            let psi = hardy_state(&params);
            assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
            let [v0, _] = params.rotated_basis();
            let [w0, w1] = params.primed_basis();
            assert!(psi.overlap(&kron2(v0, w0)).norm() < 1e-12);
            assert!(psi.overlap(&kron2(w0, v0)).norm() < 1e-12);
            assert!(psi.overlap(&kron2(w1, w1)).norm() < 1e-12);
        }
    }

    #[test]
    fn hardy_state_at_quarter_pi() {
        let psi = hardy_state(&HardyParams::new(FRAC_PI_4).unwrap());
        assert!((psi.amplitude(0, 0).re - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_computational_primed_basis() {
        let r = 0.3f64;
        let basis = [[r.cos(), r.sin()], [-r.sin(), r.cos()]];
        let params = HardyParams::with_basis(0.5, basis).unwrap();
        let psi = hardy_state(&params);
        let [v0, _] = params.rotated_basis();
        let p = psi.overlap(&kron2(v0, v0)).norm_sqr();
        assert!((p - p_theta(0.5).unwrap()).abs() < 1e-12);
        assert!(HardyParams::with_basis(0.5, [[1.0, 0.0], [1.0, 0.0]]).is_err());
    }

    #[test]
    fn p_theta_values() {
        assert!((p_theta(FRAC_PI_4).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!(p_theta(1e-9).unwrap() < 1e-17);
        assert!(p_theta(0.0).is_err());
        assert!(p_theta(FRAC_PI_2).is_err());
        let (theta, p) = optimal_theta();
        assert!((theta - 0.666239).abs() < 1e-6);
        assert!((p - max_p_theta()).abs() < 1e-12);
        assert!((1.0 - p - decay_constant()).abs() < 1e-12);
    }

    #[test]
    fn golden_section_matches_closed_form() {
        assert!((numerical_optimal_theta() - optimal_theta().0).abs() < 1e-6);
    }

    #[test]
    fn sn_shapes() {
        let s1 = build_sn(&HardyParams::optimal(), 1).unwrap();
        assert_eq!(s1.local_dims(), (2, 2));
        assert_eq!(s1.povms_a().iter().map(Povm::len).sum::<usize>(), 4);
        let s3 = build_sn(&HardyParams::optimal(), 3).unwrap();
        assert_eq!(
            s3.povms_b()[0].outcomes,
            ["000", "001", "010", "011", "100", "101", "110", "111"]
        );
        assert!(matches!(
            build_sn(&HardyParams::optimal(), 9),
            Err(Error::DimensionCap { .. })
        ));
        assert!(build_sn(&HardyParams::optimal(), 0).is_err());
    }

    #[test]
    fn sn_value_matches_closed_form() {
        let params = HardyParams::optimal();
        let pi = HardyGame.pi_f64();
        for n in 1..=3 {
            let v = quantum_value(&HardyGame, &build_sn(&params, n).unwrap(), &pi).unwrap();
            let closed = sn_success_closed_form(params.theta(), n as u32).unwrap();
            assert!((v - closed).abs() < 1e-10, "n={n}: {v} vs {closed}");
        }
        let c = decay_constant();
        assert!(
            (sn_success_closed_form(params.theta(), 1).unwrap() - (1.0 - c / 4.0)).abs() < 1e-12
        );
        let quarter = sn_success_closed_form(FRAC_PI_4, 2).unwrap();
        assert!((quarter - (1.0 - 0.25 * (11.0f64 / 12.0).powi(2))).abs() < 1e-15);
    }

    #[test]
    fn chsh_canonical_value() {
        let v = quantum_value(&chsh(), &chsh_canonical(), &chsh().pi_f64()).unwrap();
        assert!((v - CHSH_QUANTUM_VALUE).abs() < 1e-10);
    }

    #[test]
    fn schema_errors() {
        let s = build_sn(&HardyParams::optimal(), 1).unwrap();
        assert!(matches!(
            quantum_value(&HardyGame, &s, &[vec![1.0]]),
            Err(Error::Schema(_))
        ));
        // Hardy outcome labels are fine for CHSH, but "2"-style labels are not.
        let file = QuantumStrategyFile::from_strategy(&chsh_canonical());
        let mut bad = file.clone();
        bad.povms_a[0][1].answer = "x".into();
        let bad = bad.into_strategy().unwrap();
        assert!(matches!(
            quantum_value(&chsh(), &bad, &chsh().pi_f64()),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn strategy_file_round_trip() {
        let s = build_sn(&HardyParams::new(0.4).unwrap(), 2).unwrap();
        let back = QuantumStrategyFile::from_strategy(&s)
            .into_strategy()
            .unwrap();
        assert_eq!(back, s);
        let mut broken = QuantumStrategyFile::from_strategy(&s);
        broken.povms_a[0].pop();
        assert!(matches!(broken.into_strategy(), Err(Error::InvalidPovm(_))));
    }

    #[test]
    fn plans() {
        let p = plan_for_epsilon(0.25).unwrap();
        assert_eq!(p.n, 15);
        assert_eq!(p.local_dim, BigUint::from(1u64 << 15));
        assert!(p.closed_form_error <= 0.25);
        let p = plan_for_epsilon(0.01).unwrap();
        assert_eq!(p.n, 49);
        assert!(p.closed_form_error <= 0.01);
        // ln 0.9 / ln c ≈ 1.115, so the ceiling already exceeds the floor of 1
        let p = plan_for_epsilon(0.9).unwrap();
        assert_eq!(p.n, 2);
        assert!((p.closed_form_error - 0.25 * decay_constant().powi(2)).abs() < 1e-15);
        // the floor only matters for ε at or above c
        assert_eq!(plan_for_epsilon(0.95).unwrap().n, 1);
        assert!(plan_for_epsilon(0.0).is_err());
        assert!(plan_for_epsilon(1.0).is_err());
    }
}
