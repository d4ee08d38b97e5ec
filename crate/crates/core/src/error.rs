use thiserror::Error;

/// Errors reported by the simulation and analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A gate references a qubit outside the circuit.
    #[error("gate references qubit {qubit} but the register has {n_qubits} qubits")]
    InvalidGate { qubit: usize, n_qubits: usize },

    /// Control and target of a two-qubit gate coincide.
    #[error("control and target must differ (both are qubit {qubit})")]
    ControlTargetOverlap { qubit: usize },

    /// Two objects that must share a qubit count do not.
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    /// A scalar argument is out of range or otherwise unusable.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A coupling configuration violates its invariants.
    #[error("invalid coupling configuration: {0}")]
    InvalidConfig(String),

    /// The dense oracle only handles registers small enough to enumerate.
    #[error("dense oracle supports at most {max} qubits, got {got}")]
    SizeCap { got: usize, max: usize },

    /// No candidate in the triple-resonance variant space passed the
    /// zero-time anchor check.
    #[error(
        "triple-resonance reconstruction failed the zero-time anchor; \
         best candidate fidelities:\n{dump}"
    )]
    ReconstructionFailure { dump: String },

    /// The calibration objective has several separated minima.
    #[error("calibration objective is not unimodal; local minima at kappa = {0:?}")]
    AmbiguousCalibration(Vec<f64>),

    /// Too few points survive a filter for the requested statistic.
    #[error("need at least {needed} data points after filtering, got {got}")]
    InsufficientData { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
