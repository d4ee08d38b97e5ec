//! Density matrices of pure states and the state fidelity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// A dim×dim complex matrix, row-major. Built as ρ = |ψ⟩⟨ψ| and therefore
/// Hermitian with unit trace and purity 1.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// tr(ρ²); equals 1 for pure states.
    pub fn purity(&self) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..self.dim {
            for c in 0..self.dim {
                acc += self.entry(r, c) * self.entry(c, r);
            }
        }
        acc.re
    }

    /// Max |ρ − ρ†| entry deviation.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                worst = worst.max((self.entry(r, c) - self.entry(c, r).conj()).norm());
            }
        }
        worst
    }

    /// Row-major real parts, the quantity plotted in the density panels.
    pub fn real_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.entry(r, c).re).collect())
            .collect()
    }
}

/// ρ = |ψ⟩⟨ψ| for a normalized pure state.
pub fn density_matrix(state: &StateVector) -> DensityMatrix {
    let dim = state.dim();
    let amps = state.amplitudes();
    let mut entries = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for c in 0..dim {
            entries.push(amps[r] * amps[c].conj());
        }
    }
    DensityMatrix { dim, entries }
}

/// State fidelity F = tr(ρσ) = |⟨target|actual⟩|² for pure states.
///
/// Global-phase invariant, symmetric in its arguments, and within [0, 1].
/// (The source text prints a factor-2 variant which exceeds 1 on identical
/// pure states; the trace form is what its reported values satisfy.)
pub fn fidelity(target: &StateVector, actual: &StateVector) -> Result<f64> {
    if target.n_qubits() != actual.n_qubits() {
        return Err(Error::QubitCountMismatch {
            left: target.n_qubits(),
            right: actual.n_qubits(),
        });
    }
    let overlap = target.inner(actual)?;
    Ok(overlap.norm_sqr().clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_of_zero() {
        let rho = density_matrix(&StateVector::zero(1));
        assert_eq!(rho.entry(0, 0).re, 1.0);
        assert_eq!(rho.entry(1, 1).re, 0.0);
        assert_eq!(rho.entry(0, 1).norm(), 0.0);
    }

    #[test]
    fn density_of_bell_has_half_corners() {
        let bell = StateVector::superposition_pair("00", "11", 1.0).unwrap();
        let rho = density_matrix(&bell);
        for (r, c) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((rho.entry(r, c).re - 0.5).abs() < 1e-12);
        }
        assert!(rho.entry(1, 1).norm() < 1e-15);
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        assert!(rho.hermiticity_deviation() < 1e-12);
    }

    #[test]
    fn purity_of_pure_states_is_one() {
        let s = StateVector::superposition_pair("010", "101", -1.0).unwrap();
        assert!((density_matrix(&s).purity() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fidelity_basics() {
        let zero = StateVector::zero(1);
        let one = StateVector::basis(1, 1);
        let plus = StateVector::superposition_pair("0", "1", 1.0).unwrap();
        assert_eq!(fidelity(&zero, &zero).unwrap(), 1.0);
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);
        assert!((fidelity(&zero, &plus).unwrap() - 0.5).abs() < 1e-12);
        // symmetry
        assert_eq!(
            fidelity(&zero, &plus).unwrap(),
            fidelity(&plus, &zero).unwrap()
        );
    }

    #[test]
    fn fidelity_rejects_mismatched_registers() {
        let a = StateVector::zero(1);
        let b = StateVector::zero(2);
        assert!(matches!(
            fidelity(&a, &b),
            Err(Error::QubitCountMismatch { .. })
        ));
    }
}
