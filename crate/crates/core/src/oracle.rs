//! Brute-force verifier: composes a circuit as one dense unitary matrix.
//!
//! This path is deliberately independent of the statevector kernel in
//! `gate` — matrices are assembled by explicit tensor embedding and
//! multiplied out, so the two implementations can check each other.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{Circuit, Gate};
use crate::state::StateVector;

/// Hard cap on the register size the oracle will enumerate (8×8 matrices).
pub const MAX_QUBITS: usize = 3;

/// A dense dim×dim unitary, row-major.
#[derive(Clone, Debug)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseUnitary {
    fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        DenseUnitary { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Left-multiplies by `other`: self ← other · self.
    fn left_mul(&mut self, other: &DenseUnitary) {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let o = other.entries[r * d + k];
                if o.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    out[r * d + c] += o * self.entries[k * d + c];
                }
            }
        }
        self.entries = out;
    }

    /// Applies the matrix to a statevector.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.dim() != self.dim {
            return Err(Error::QubitCountMismatch {
                left: state.n_qubits(),
                right: self.dim.trailing_zeros() as usize,
            });
        }
        let amps = state.amplitudes();
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (r, o) in out.iter_mut().enumerate() {
            for c in 0..self.dim {
                *o += self.entry(r, c) * amps[c];
            }
        }
        StateVector::from_amplitudes(state.n_qubits(), out)
    }

    /// Max entry deviation of U†U from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.entry(k, r).conj() * self.entry(k, c);
                }
                let expected = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((acc - expected).norm());
            }
        }
        worst
    }
}

fn h_matrix() -> [[Complex64; 2]; 2] {
    let f = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[f, f], [f, -f]]
}

fn x_matrix() -> [[Complex64; 2]; 2] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    [[zero, one], [one, zero]]
}

fn rotz_matrix(angle: f64) -> [[Complex64; 2]; 2] {
    let zero = Complex64::new(0.0, 0.0);
    [
        [Complex64::from_polar(1.0, -angle / 2.0), zero],
        [zero, Complex64::from_polar(1.0, angle / 2.0)],
    ]
}

/// Embeds a single-qubit matrix on `qubit` into the full register.
/// Qubit 0 is the leftmost tensor factor (most significant index bit).
fn embed_one(n: usize, qubit: usize, m: [[Complex64; 2]; 2]) -> DenseUnitary {
    let dim = 1 << n;
    let bit = n - 1 - qubit;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            if (r & !(1 << bit)) == (c & !(1 << bit)) {
                entries[r * dim + c] = m[(r >> bit) & 1][(c >> bit) & 1];
            }
        }
    }
    DenseUnitary { dim, entries }
}

/// Embeds a two-qubit matrix (basis order |control target⟩) into the register.
fn embed_two(n: usize, control: usize, target: usize, m: [[Complex64; 4]; 4]) -> DenseUnitary {
    let dim = 1 << n;
    let cb = n - 1 - control;
    let tb = n - 1 - target;
    let rest_mask = !((1usize << cb) | (1usize << tb));
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            if (r & rest_mask) == (c & rest_mask) {
                let rr = (((r >> cb) & 1) << 1) | ((r >> tb) & 1);
                let cc = (((c >> cb) & 1) << 1) | ((c >> tb) & 1);
                entries[r * dim + c] = m[rr][cc];
            }
        }
    }
    DenseUnitary { dim, entries }
}

fn cnot_matrix() -> [[Complex64; 4]; 4] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    [
        [one, zero, zero, zero],
        [zero, one, zero, zero],
        [zero, zero, zero, one],
        [zero, zero, one, zero],
    ]
}

fn cphase_matrix(angle: f64) -> [[Complex64; 4]; 4] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    [
        [one, zero, zero, zero],
        [zero, one, zero, zero],
        [zero, zero, one, zero],
        [zero, zero, zero, Complex64::from_polar(1.0, angle)],
    ]
}

fn gate_unitary(n: usize, gate: &Gate) -> DenseUnitary {
    match *gate {
        Gate::Hadamard(q) => embed_one(n, q, h_matrix()),
        Gate::PauliX(q) => embed_one(n, q, x_matrix()),
        Gate::RotZ { target, angle } => embed_one(n, target, rotz_matrix(angle)),
        Gate::Cnot { control, target } => embed_two(n, control, target, cnot_matrix()),
        Gate::CPhase { control, target, angle } => {
            embed_two(n, control, target, cphase_matrix(angle))
        }
    }
}

/// The full circuit unitary, gates multiplied right-to-left in application
/// order: U = G_k ⋯ G_2 G_1.
pub fn circuit_unitary(circuit: &Circuit) -> Result<DenseUnitary> {
    let n = circuit.n_qubits();
    if n > MAX_QUBITS {
        return Err(Error::SizeCap { got: n, max: MAX_QUBITS });
    }
    let mut u = DenseUnitary::identity(1 << n);
    for gate in circuit.gates() {
        u.left_mul(&gate_unitary(n, gate));
    }
    Ok(u)
}

/// Runs the circuit both ways — statevector kernel and dense matrix — and
/// returns the maximum amplitude deviation between the two results.
pub fn verify_state(circuit: &Circuit, initial: &StateVector) -> Result<f64> {
    let via_matrix = circuit_unitary(circuit)?.apply(initial)?;
    let via_engine = crate::gate::run_circuit(circuit, initial)?;
    Ok(via_engine.max_amplitude_deviation(&via_matrix))
}
