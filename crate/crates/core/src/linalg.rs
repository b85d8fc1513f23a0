//! Dense complex matrices, bipartite pure states, and POVM measurement.
//!
//! Everything here uses one global row-major convention: the basis vector
//! `|i⟩ ⊗ |j⟩` of a `d_A × d_B` system has index `i * d_B + j`, and
//! [`tensor`] lays out Kronecker products the same way.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest row or column count a tensor product may produce by default.
pub const DEFAULT_DIMENSION_CAP: usize = 1 << 16;

/// Tolerance used when a state's squared norm is checked.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Tolerance for POVM validation (Hermiticity, PSD, completeness).
pub const POVM_TOLERANCE: f64 = 1e-10;

/// Probabilities outside `[-PROB_NOISE, 1 + PROB_NOISE]` before clamping are logged.
pub const PROB_NOISE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Column vector with the given entries.
    pub fn column(entries: &[C64]) -> Result<Self> {
        Self::new(entries.len(), 1, entries.to_vec())
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Result<Self> {
        let data = u
            .iter()
            .flat_map(|&ui| v.iter().map(move |&vj| ui * vj.conj()))
            .collect();
        Self::new(u.len(), v.len(), data)
    }

    /// Rank-one projector onto a (not necessarily normalized) real vector.
    pub fn projector_real(v: &[f64]) -> Result<Self> {
        let c: Vec<C64> = v.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::outer(&c, &c)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += aik * b;
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M - M†|` entrywise; zero for exactly Hermitian matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Eigenvalues of the Hermitian part `(M + M†)/2`, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let n = self.rows;
        let m = DMatrix::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5);
        let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        eig
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scale(C64::new(rhs, 0.0))
    }
}

/// Kronecker product `a ⊗ b` with the default dimension cap.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    tensor_with_cap(a, b, DEFAULT_DIMENSION_CAP)
}

pub fn tensor_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let rows = checked_dim(a.rows, b.rows, cap)?;
    let cols = checked_dim(a.cols, b.cols, cap)?;
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..a.rows {
        for k in 0..b.rows {
            for j in 0..a.cols {
                let aij = a[(i, j)];
                data.extend(
                    b.data[k * b.cols..(k + 1) * b.cols]
                        .iter()
                        .map(|&bkl| aij * bkl),
                );
            }
        }
    }
    ComplexMatrix::new(rows, cols, data)
}

fn checked_dim(x: usize, y: usize, cap: usize) -> Result<usize> {
    match x.checked_mul(y) {
        Some(d) if d <= cap => Ok(d),
        Some(d) => Err(Error::DimensionCap { requested: d, cap }),
        None => Err(Error::DimensionCap {
            requested: usize::MAX,
            cap,
        }),
    }
}

/// Normalized pure state on `C^{d_A} ⊗ C^{d_B}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    d_a: usize,
    d_b: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>, d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 || d_a.checked_mul(d_b) != Some(amplitudes.len()) {
            return Err(Error::Shape(format!(
                "{} amplitudes do not fit a {d_a}x{d_b} bipartition",
                amplitudes.len()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Parameter(format!("state has squared norm {norm}")));
        }
        Ok(Self {
            d_a,
            d_b,
            amplitudes,
        })
    }

    /// Rescales `amplitudes` to unit norm before validating.
    pub fn normalized(amplitudes: Vec<C64>, d_a: usize, d_b: usize) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Parameter("zero vector cannot be normalized".into()));
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect(), d_a, d_b)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn bipartition(&self) -> (usize, usize) {
        (self.d_a, self.d_b)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Amplitude on `|i⟩ ⊗ |j⟩`.
    pub fn amplitude(&self, i: usize, j: usize) -> C64 {
        self.amplitudes[i * self.d_b + j]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨phi|psi⟩` for a vector of matching dimension.
    pub fn overlap(&self, phi: &[C64]) -> C64 {
        phi.iter()
            .zip(&self.amplitudes)
            .map(|(p, a)| p.conj() * a)
            .sum()
    }

    /// Amplitudes reshaped as a `d_A × d_B` matrix.
    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.d_a,
            cols: self.d_b,
            data: self.amplitudes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PovmReport {
    pub tolerance: f64,
    pub hermitian: Vec<bool>,
    pub psd: Vec<bool>,
    pub min_eigenvalues: Vec<f64>,
    pub sum_deviation: f64,
}

impl PovmReport {
    pub fn sums_to_identity(&self) -> bool {
        self.sum_deviation <= self.tolerance
    }

    pub fn is_valid(&self) -> bool {
        self.hermitian.iter().all(|&h| h) && self.psd.iter().all(|&p| p) && self.sums_to_identity()
    }
}

impl fmt::Display for PovmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let non_herm: Vec<usize> = (0..self.hermitian.len())
            .filter(|&i| !self.hermitian[i])
            .collect();
        let non_psd: Vec<usize> = (0..self.psd.len()).filter(|&i| !self.psd[i]).collect();
        write!(
            f,
            "non-Hermitian elements {non_herm:?}, non-PSD elements {non_psd:?}, sum deviation {:.3e} (tol {:.1e})",
            self.sum_deviation, self.tolerance
        )
    }
}

/// Checks Hermiticity, positivity and completeness of a POVM.
pub fn validate_povm(elements: &[ComplexMatrix], tol: f64) -> Result<PovmReport> {
    let Some(first) = elements.first() else {
        return Err(Error::Shape("POVM has no elements".into()));
    };
    let dim = first.rows;
    if let Some(bad) = elements.iter().find(|m| m.rows != dim || m.cols != dim) {
        return Err(Error::Shape(format!(
            "POVM element {}x{} does not match {dim}x{dim}",
            bad.rows, bad.cols
        )));
    }

    let mut sum = ComplexMatrix::zeros(dim, dim);
    let mut hermitian = Vec::with_capacity(elements.len());
    let mut psd = Vec::with_capacity(elements.len());
    let mut min_eigenvalues = Vec::with_capacity(elements.len());
    for m in elements {
        hermitian.push(m.hermitian_deviation() <= tol);
        let min_eig = m.hermitian_eigenvalues()[0];
        psd.push(min_eig >= -tol);
        min_eigenvalues.push(min_eig);
        sum = &sum + m;
    }
    let sum_deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim));

    Ok(PovmReport {
        tolerance: tol,
        hermitian,
        psd,
        min_eigenvalues,
        sum_deviation,
    })
}

/// Joint outcome probabilities `p(a, b)` stored row-major by Alice's outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    outcomes_a: usize,
    outcomes_b: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.probs[a * self.outcomes_b + b]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.outcomes_a, self.outcomes_b)
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Born-rule distribution of `(A_a ⊗ B_b)` outcomes on `psi`.
///
/// Both POVMs are validated at [`POVM_TOLERANCE`] first. The tensor products
/// are never formed: with `M` the coefficient matrix of `psi`,
/// `⟨ψ|A ⊗ B|ψ⟩ = Σ_{jl} (M† A M)_{jl} B_{jl}`.
pub fn measurement_distribution(
    psi: &StateVector,
    povm_a: &[ComplexMatrix],
    povm_b: &[ComplexMatrix],
) -> Result<JointDistribution> {
    let (d_a, d_b) = psi.bipartition();
    for (side, povm, d) in [("Alice", povm_a, d_a), ("Bob", povm_b, d_b)] {
        if povm.iter().any(|m| m.rows != d || m.cols != d) {
            return Err(Error::Shape(format!(
                "{side}'s POVM does not act on dimension {d}"
            )));
        }
        let report = validate_povm(povm, POVM_TOLERANCE)?;
        if !report.is_valid() {
            return Err(Error::InvalidPovm(Box::new(report)));
        }
    }
    Ok(distribution_unchecked(psi, povm_a, povm_b))
}

pub(crate) fn distribution_unchecked(
    psi: &StateVector,
    povm_a: &[ComplexMatrix],
    povm_b: &[ComplexMatrix],
) -> JointDistribution {
    let m = psi.coefficient_matrix();
    let m_adj = m.adjoint();
    let reduced: Vec<ComplexMatrix> = povm_a
        .iter()
        .map(|a| {
            let am = a.matmul(&m).expect("dimensions checked");
            m_adj.matmul(&am).expect("dimensions checked")
        })
        .collect();

    let mut probs = Vec::with_capacity(povm_a.len() * povm_b.len());
    for n in &reduced {
        for b in povm_b {
            let raw: C64 = n.data.iter().zip(&b.data).map(|(x, y)| x * y).sum();
            probs.push(clamp_probability(raw.re));
        }
    }
    let dist = JointDistribution {
        outcomes_a: povm_a.len(),
        outcomes_b: povm_b.len(),
        probs,
    };
    let total = dist.total();
    if (total - 1.0).abs() > PROB_NOISE {
        log::warn!("joint distribution sums to {total}");
    }
    dist
}

fn clamp_probability(raw: f64) -> f64 {
    if !(-PROB_NOISE..=1.0 + PROB_NOISE).contains(&raw) {
        log::warn!("probability {raw} outside [0, 1] beyond float noise");
    }
    raw.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn identity_tensor_identity() {
        let id4 = tensor(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(id4, ComplexMatrix::identity(4));
    }

    #[test]
    fn basis_vectors_map_row_major() {
        let e0 = ComplexMatrix::column(&[c(1.0), c(0.0)]).unwrap();
        let e1 = ComplexMatrix::column(&[c(0.0), c(1.0)]).unwrap();
        let t = tensor(&e0, &e1).unwrap();
        assert_eq!((t.rows(), t.cols()), (4, 1));
        let expected: Vec<C64> = [0.0, 1.0, 0.0, 0.0].iter().map(|&x| c(x)).collect();
        assert_eq!(t.as_slice(), &expected[..]);
    }

    #[test]
    fn tensor_dims_multiply() {
        let t = tensor(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)).unwrap();
        assert_eq!((t.rows(), t.cols()), (6, 6));
    }

    #[test]
    fn tensor_entry_layout() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = ComplexMatrix::from_real(2, 3, &[5.0, 6.0, 7.0, 8.0, 9.0, 10.0]).unwrap();
        let t = tensor(&a, &b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..3 {
                        assert_eq!(t[(i * 2 + k, j * 3 + l)], a[(i, j)] * b[(k, l)]);
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_cap() {
        let big = ComplexMatrix::zeros(300, 1);
        let err = tensor(&big, &big).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionCap {
                requested: 90000,
                ..
            }
        ));
        assert!(tensor_with_cap(&big, &big, 100_000).is_ok());
    }

    #[test]
    fn povm_identity_and_projective() {
        assert!(validate_povm(&[ComplexMatrix::identity(2)], 1e-10)
            .unwrap()
            .is_valid());
        let p0 = ComplexMatrix::projector_real(&[1.0, 0.0]).unwrap();
        let p1 = ComplexMatrix::projector_real(&[0.0, 1.0]).unwrap();
        assert!(validate_povm(&[p0, p1], 1e-10).unwrap().is_valid());
    }

    #[test]
    fn povm_bad_sum() {
        let id = ComplexMatrix::identity(2);
        let report = validate_povm(&[&id * 0.5, &id * 0.6], 1e-10).unwrap();
        assert!(!report.is_valid());
        assert!(report.hermitian.iter().all(|&h| h));
        assert!(report.psd.iter().all(|&p| p));
        assert!((report.sum_deviation - 0.1).abs() < 1e-12);
    }

    #[test]
    fn povm_negative_element() {
        let p0 = ComplexMatrix::projector_real(&[1.0, 0.0]).unwrap();
        let p1 = ComplexMatrix::projector_real(&[0.0, 1.0]).unwrap();
        // {2|0><0| , |1><1| - |0><0|} sums to identity but the second is indefinite.
        let a = &p0 * 2.0;
        let b = &p1 + &(&p0 * -1.0);
        let report = validate_povm(&[a, b], 1e-10).unwrap();
        assert!(report.sums_to_identity());
        assert_eq!(report.psd, vec![true, false]);
    }

    #[test]
    fn povm_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![c(0.5), C64::new(0.0, 0.3), c(0.0), c(0.5)]).unwrap();
        let rest = &ComplexMatrix::identity(2) + &(&m * -1.0);
        let report = validate_povm(&[m, rest], 1e-10).unwrap();
        assert_eq!(report.hermitian, vec![false, false]);
    }

    #[test]
    fn povm_shape_error() {
        let err = validate_povm(
            &[ComplexMatrix::identity(2), ComplexMatrix::identity(3)],
            1e-10,
        );
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn bell_state_computational_basis() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = StateVector::new(vec![c(h), c(0.0), c(0.0), c(h)], 2, 2).unwrap();
        let p0 = ComplexMatrix::projector_real(&[1.0, 0.0]).unwrap();
        let p1 = ComplexMatrix::projector_real(&[0.0, 1.0]).unwrap();
        let povm = [p0, p1];
        let dist = measurement_distribution(&psi, &povm, &povm).unwrap();
        assert!((dist.get(0, 0) - 0.5).abs() < 1e-15);
        assert!((dist.get(1, 1) - 0.5).abs() < 1e-15);
        assert_eq!(dist.get(0, 1), 0.0);
        assert_eq!(dist.get(1, 0), 0.0);
    }

    #[test]
    fn distribution_rejects_invalid_povm() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = StateVector::new(vec![c(h), c(0.0), c(0.0), c(h)], 2, 2).unwrap();
        let id = ComplexMatrix::identity(2);
        let bad = [&id * 0.5, &id * 0.6];
        let err = measurement_distribution(&psi, &bad, std::slice::from_ref(&id)).unwrap_err();
        match err {
            Error::InvalidPovm(report) => assert!(!report.sums_to_identity()),
            other => panic!("unexpected {other:?}"),
        }
        let err = measurement_distribution(&psi, &[ComplexMatrix::identity(3)], &[id]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn state_validation() {
        assert!(StateVector::new(vec![c(1.0), c(1.0)], 1, 2).is_err());
        assert!(StateVector::new(vec![c(1.0), c(0.0)], 2, 2).is_err());
        let s = StateVector::normalized(vec![c(1.0), c(1.0)], 1, 2).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hermitian_eigenvalues_of_diagonal() {
        let m = ComplexMatrix::from_real(3, 3, &[3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0])
            .unwrap();
        let eig = m.hermitian_eigenvalues();
        assert!((eig[0] + 1.0).abs() < 1e-12);
        assert!((eig[2] - 3.0).abs() < 1e-12);
    }
}
