//! Normalized complex statevectors over 1–3 qubit registers.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on the squared norm of a statevector supplied from outside.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// A pure quantum state: 2^n complex amplitudes over the computational basis.
///
/// Basis labels read qubit A (index 0) leftmost, so amplitude index `k`
/// corresponds to the binary expansion of `k` with qubit 0 as the most
/// significant bit: on three qubits index 4 is `|100⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros state `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1, "register needs at least one qubit");
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    /// A computational basis state `|k⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!(index < (1 << n_qubits), "basis index out of range");
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    /// Builds a state from raw amplitudes, checking length and normalization.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != (1 << n_qubits) {
            return Err(Error::InvalidInput(format!(
                "expected {} amplitudes for {} qubits, got {}",
                1 << n_qubits,
                n_qubits,
                amps.len()
            )));
        }
        let state = StateVector { n_qubits, amps };
        let norm_sq: f64 = state.norm_sq();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "state is not normalized: |ψ|² = {norm_sq}"
            )));
        }
        Ok(state)
    }

    /// `(|lhs⟩ + sign·|rhs⟩)/√2` for two basis labels of equal length.
    ///
    /// This covers every Bell and GHZ-type target used in the experiments,
    /// e.g. `superposition_pair("001", "110", -1.0)` for `(|001⟩−|110⟩)/√2`.
    pub fn superposition_pair(lhs: &str, rhs: &str, sign: f64) -> Result<Self> {
        let n = lhs.len();
        if rhs.len() != n {
            return Err(Error::InvalidInput(format!(
                "basis labels {lhs:?} and {rhs:?} differ in length"
            )));
        }
        let li = Self::parse_label(lhs)?;
        let ri = Self::parse_label(rhs)?;
        if li == ri {
            return Err(Error::InvalidInput(format!(
                "superposition needs two distinct basis states, got {lhs:?} twice"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        let f = std::f64::consts::FRAC_1_SQRT_2;
        amps[li] = Complex64::new(f, 0.0);
        amps[ri] = Complex64::new(sign.signum() * f, 0.0);
        Ok(StateVector { n_qubits: n, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Squared norm Σ|a_k|².
    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Born-rule probability of basis index `k`.
    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    /// Renders a basis index as a label, qubit A leftmost.
    pub fn basis_label(&self, index: usize) -> String {
        format!("{index:0width$b}", width = self.n_qubits)
    }

    /// Parses a `'0'/'1'` label (A leftmost) into a basis index.
    pub fn parse_label(label: &str) -> Result<usize> {
        if label.is_empty() {
            return Err(Error::InvalidInput("empty basis label".into()));
        }
        usize::from_str_radix(label, 2)
            .map_err(|_| Error::InvalidInput(format!("malformed basis label {label:?}")))
    }

    /// Inner product ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Largest per-amplitude deviation from another state.
    pub fn max_amplitude_deviation(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Bit position of qubit `q` inside an amplitude index.
    #[inline]
    pub(crate) fn bit_of(&self, qubit: usize) -> usize {
        self.n_qubits - 1 - qubit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_state_is_normalized() {
        let s = StateVector::zero(3);
        assert_eq!(s.dim(), 8);
        assert!((s.norm_sq() - 1.0).abs() < 1e-15);
        assert_eq!(s.probability(0), 1.0);
    }

    #[test]
    fn labels_read_qubit_a_leftmost() {
        let s = StateVector::zero(3);
        assert_eq!(s.basis_label(4), "100");
        assert_eq!(s.basis_label(1), "001");
        assert_eq!(StateVector::parse_label("110").unwrap(), 6);
    }

    #[test]
    fn from_amplitudes_rejects_unnormalized() {
        let amps = vec![Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.0)];
        assert!(matches!(
            StateVector::from_amplitudes(1, amps),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn superposition_pair_builds_bell() {
        let bell = StateVector::superposition_pair("00", "11", 1.0).unwrap();
        assert!((bell.probability(0) - 0.5).abs() < 1e-12);
        assert!((bell.probability(3) - 0.5).abs() < 1e-12);
        assert_eq!(bell.probability(1), 0.0);
    }
}
