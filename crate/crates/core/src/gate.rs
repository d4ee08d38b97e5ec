//! Gates, circuits and the statevector update kernel.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// The gate set used by the pulse-sequence builders.
///
/// Conventions, fixed once for the whole crate:
/// * `RotZ(θ)` is `diag(e^{−iθ/2}, e^{+iθ/2})` on the target;
/// * `CPhase(θ)` multiplies the `|11⟩` component of (control, target) by `e^{iθ}`;
/// * `Cnot` flips the target when the control is `|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Hadamard(usize),
    PauliX(usize),
    RotZ { target: usize, angle: f64 },
    Cnot { control: usize, target: usize },
    CPhase { control: usize, target: usize, angle: f64 },
}

impl Gate {
    /// Qubits the gate touches.
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::Hadamard(q) | Gate::PauliX(q) => (q, None),
            Gate::RotZ { target, .. } => (target, None),
            Gate::Cnot { control, target } | Gate::CPhase { control, target, .. } => {
                (control, Some(target))
            }
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let (a, b) = self.qubits();
        if a >= n_qubits {
            return Err(Error::InvalidGate { qubit: a, n_qubits });
        }
        if let Some(b) = b {
            if b >= n_qubits {
                return Err(Error::InvalidGate { qubit: b, n_qubits });
            }
            if a == b {
                return Err(Error::ControlTargetOverlap { qubit: a });
            }
        }
        Ok(())
    }

    /// The inverse gate; used by the unitarity tests.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::RotZ { target, angle } => Gate::RotZ { target, angle: -angle },
            Gate::CPhase { control, target, angle } => Gate::CPhase { control, target, angle: -angle },
            g => g,
        }
    }
}

/// An ordered gate sequence over a fixed-size register.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

/// Applies one gate to a state, returning the transformed state.
///
/// Pure: the input is left untouched. Norm is preserved to machine
/// precision (the engine only ever permutes amplitudes, applies unit
/// phases, or mixes pairs through the Hadamard butterfly).
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    gate.validate(state.n_qubits())?;
    let mut out = state.clone();
    apply_gate_in_place(&mut out, gate);
    Ok(out)
}

pub(crate) fn apply_gate_in_place(state: &mut StateVector, gate: &Gate) {
    match *gate {
        Gate::Hadamard(q) => {
            let bit = state.bit_of(q);
            let mask = 1 << bit;
            let f = std::f64::consts::FRAC_1_SQRT_2;
            let amps = state.amplitudes_mut();
            for i in 0..amps.len() {
                if i & mask == 0 {
                    let j = i | mask;
                    let a = amps[i];
                    let b = amps[j];
                    amps[i] = f * (a + b);
                    amps[j] = f * (a - b);
                }
            }
        }
        Gate::PauliX(q) => {
            let mask = 1 << state.bit_of(q);
            let amps = state.amplitudes_mut();
            for i in 0..amps.len() {
                if i & mask == 0 {
                    amps.swap(i, i | mask);
                }
            }
        }
        Gate::RotZ { target, angle } => {
            let mask = 1 << state.bit_of(target);
            let lower = Complex64::from_polar(1.0, -angle / 2.0);
            let upper = Complex64::from_polar(1.0, angle / 2.0);
            let amps = state.amplitudes_mut();
            for (i, a) in amps.iter_mut().enumerate() {
                *a *= if i & mask == 0 { lower } else { upper };
            }
        }
        Gate::Cnot { control, target } => {
            let cmask = 1 << state.bit_of(control);
            let tmask = 1 << state.bit_of(target);
            let amps = state.amplitudes_mut();
            for i in 0..amps.len() {
                if i & cmask != 0 && i & tmask == 0 {
                    amps.swap(i, i | tmask);
                }
            }
        }
        Gate::CPhase { control, target, angle } => {
            let cmask = 1 << state.bit_of(control);
            let tmask = 1 << state.bit_of(target);
            let phase = Complex64::from_polar(1.0, angle);
            let amps = state.amplitudes_mut();
            for (i, a) in amps.iter_mut().enumerate() {
                if i & cmask != 0 && i & tmask != 0 {
                    *a *= phase;
                }
            }
        }
    }
}

/// Runs a circuit on an initial state, applying gates in sequence order.
pub fn run_circuit(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if circuit.n_qubits() != initial.n_qubits() {
        return Err(Error::QubitCountMismatch {
            left: circuit.n_qubits(),
            right: initial.n_qubits(),
        });
    }
    let mut state = initial.clone();
    for gate in circuit.gates() {
        apply_gate_in_place(&mut state, gate);
    }
    Ok(state)
}
