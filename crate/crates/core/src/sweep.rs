//! Free-evolution-time sweeps: build a circuit per grid point, run it from
//! the ground state, record counts and target-state fidelities.

use rayon::prelude::*;

use crate::counts::{measure_counts, CountsMode, CountsTable};
use crate::density::fidelity;
use crate::error::{Error, Result};
use crate::gate::{run_circuit, Circuit};
use crate::state::StateVector;

/// A named pure state fidelities are evaluated against.
#[derive(Clone, Debug)]
pub struct LabeledState {
    pub label: String,
    pub state: StateVector,
}

impl LabeledState {
    pub fn new(label: impl Into<String>, state: StateVector) -> Self {
        LabeledState { label: label.into(), state }
    }

    /// The two-qubit Bell target (|00⟩+|11⟩)/√2, labelled `bell`.
    pub fn bell() -> Self {
        LabeledState::new("bell", StateVector::superposition_pair("00", "11", 1.0).unwrap())
    }

    /// `(|lhs⟩ ± |rhs⟩)/√2` with the canonical label `<lhs><p|m><rhs>`,
    /// smaller basis index written first.
    pub fn basis_pair(lhs: &str, rhs: &str, sign: f64) -> Result<Self> {
        let li = StateVector::parse_label(lhs)?;
        let ri = StateVector::parse_label(rhs)?;
        let (a, b) = if li <= ri { (lhs, rhs) } else { (rhs, lhs) };
        let label = format!("{a}{}{b}", if sign >= 0.0 { "p" } else { "m" });
        Ok(LabeledState::new(label, StateVector::superposition_pair(a, b, sign)?))
    }

    /// The eight three-qubit GHZ-type targets (|abc⟩ ± |āb̄c̄⟩)/√2.
    pub fn ghz_basket() -> Vec<LabeledState> {
        let mut out = Vec::with_capacity(8);
        for k in 0..4usize {
            let lhs = format!("{k:03b}");
            let rhs = format!("{:03b}", 7 - k);
            for sign in [1.0, -1.0] {
                out.push(LabeledState::basis_pair(&lhs, &rhs, sign).unwrap());
            }
        }
        out
    }
}

/// Sweep parameters. The grid runs over `two_tau = step, 2·step, …` up to
/// and including `two_tau_max` (one row when `two_tau_max == step`).
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub two_tau_max_us: f64,
    pub step_us: f64,
    pub counts_mode: CountsMode,
    pub targets: Vec<LabeledState>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_us.is_finite() && self.step_us > 0.0) {
            return Err(Error::InvalidInput(format!(
                "sweep step must be positive, got {}",
                self.step_us
            )));
        }
        if self.two_tau_max_us + 1e-12 < self.step_us {
            return Err(Error::InvalidInput(format!(
                "two_tau_max ({}) must be at least one step ({})",
                self.two_tau_max_us, self.step_us
            )));
        }
        Ok(())
    }

    pub fn grid_len(&self) -> usize {
        (self.two_tau_max_us / self.step_us + 1e-9).floor() as usize
    }
}

/// One grid point of a sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub two_tau_us: f64,
    pub counts: CountsTable,
    /// Fidelity per target, in `SweepResult::target_labels` order.
    pub fidelities: Vec<f64>,
}

/// An executed sweep.
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub step_us: f64,
    pub two_tau_max_us: f64,
    pub counts_mode: CountsMode,
    pub target_labels: Vec<String>,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn fidelity_series(&self, target_label: &str) -> Result<Vec<f64>> {
        let idx = self.target_index(target_label)?;
        Ok(self.rows.iter().map(|r| r.fidelities[idx]).collect())
    }

    pub fn target_index(&self, target_label: &str) -> Result<usize> {
        self.target_labels
            .iter()
            .position(|l| l == target_label)
            .ok_or_else(|| {
                Error::InvalidInput(format!("target {target_label:?} not part of this sweep"))
            })
    }
}

/// Deterministic per-row seed: splitmix64 of the base seed and row index.
pub fn row_seed(base_seed: u64, row_index: usize) -> u64 {
    let mut z = base_seed ^ (row_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs a sweep. Grid points are evaluated in parallel; the result is
/// bit-identical to a serial run because every row depends only on
/// `(builder, spec, row index)`.
pub fn run_sweep<F>(builder: F, spec: &SweepSpec) -> Result<SweepResult>
where
    F: Fn(f64) -> Result<Circuit> + Sync,
{
    spec.validate()?;
    let n_rows = spec.grid_len();
    let rows: Vec<SweepRow> = (1..=n_rows)
        .into_par_iter()
        .map(|k| -> Result<SweepRow> {
            let two_tau = k as f64 * spec.step_us;
            let circuit = builder(two_tau)?;
            let state = run_circuit(&circuit, &StateVector::zero(circuit.n_qubits()))?;
            let mode = match spec.counts_mode {
                CountsMode::Exact => CountsMode::Exact,
                CountsMode::Sampled { shots, seed } => {
                    CountsMode::Sampled { shots, seed: row_seed(seed, k) }
                }
            };
            let counts = measure_counts(&state, mode)?;
            let fidelities = spec
                .targets
                .iter()
                .map(|t| fidelity(&t.state, &state))
                .collect::<Result<Vec<f64>>>()?;
            Ok(SweepRow { two_tau_us: two_tau, counts, fidelities })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        step_us: spec.step_us,
        two_tau_max_us: spec.two_tau_max_us,
        counts_mode: spec.counts_mode,
        target_labels: spec.targets.iter().map(|t| t.label.clone()).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulse::{bell_circuit, BellOptions, EvolutionBackend, PhaseConvention, PulseSchedule};

    fn bell_builder(
        backend: EvolutionBackend,
    ) -> impl Fn(f64) -> Result<Circuit> + Sync {
        move |two_tau| {
            let schedule = PulseSchedule::new(two_tau, backend, PhaseConvention::default());
            bell_circuit(4.93, two_tau, &schedule, &BellOptions::default())
        }
    }

    #[test]
    fn single_row_when_max_equals_step() {
        let spec = SweepSpec {
            two_tau_max_us: 0.1,
            step_us: 0.1,
            counts_mode: CountsMode::Exact,
            targets: vec![LabeledState::bell()],
        };
        let res = run_sweep(bell_builder(EvolutionBackend::PhysicalDiagonal), &spec).unwrap();
        assert_eq!(res.rows.len(), 1);
        assert!((res.rows[0].two_tau_us - 0.1).abs() < 1e-12);
    }

    #[test]
    fn rows_strictly_increasing_and_counts_normalized() {
        let spec = SweepSpec {
            two_tau_max_us: 5.0,
            step_us: 0.5,
            counts_mode: CountsMode::Exact,
            targets: vec![LabeledState::bell()],
        };
        let res = run_sweep(bell_builder(EvolutionBackend::PaperLiteral), &spec).unwrap();
        assert_eq!(res.rows.len(), 10);
        for w in res.rows.windows(2) {
            assert!(w[1].two_tau_us > w[0].two_tau_us);
        }
        for row in &res.rows {
            assert!((row.counts.total() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_rows_match_direct_run() {
        let spec = SweepSpec {
            two_tau_max_us: 2.0,
            step_us: 1.0,
            counts_mode: CountsMode::Exact,
            targets: vec![LabeledState::bell()],
        };
        let builder = bell_builder(EvolutionBackend::PaperLiteral);
        let res = run_sweep(&builder, &spec).unwrap();
        for row in &res.rows {
            let c = builder(row.two_tau_us).unwrap();
            let s = run_circuit(&c, &StateVector::zero(2)).unwrap();
            for (i, &v) in row.counts.values().iter().enumerate() {
                assert!((v - s.probability(i)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampled_sweeps_are_reproducible() {
        let spec = SweepSpec {
            two_tau_max_us: 3.0,
            step_us: 0.5,
            counts_mode: CountsMode::Sampled { shots: 256, seed: 11 },
            targets: vec![LabeledState::bell()],
        };
        let a = run_sweep(bell_builder(EvolutionBackend::PaperLiteral), &spec).unwrap();
        let b = run_sweep(bell_builder(EvolutionBackend::PaperLiteral), &spec).unwrap();
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            assert_eq!(ra.counts, rb.counts);
        }
    }

    #[test]
    fn row_seeds_differ_between_rows() {
        let s1 = row_seed(42, 1);
        let s2 = row_seed(42, 2);
        assert_ne!(s1, s2);
        assert_eq!(s1, row_seed(42, 1));
    }

    #[test]
    fn invalid_spec_rejected() {
        let spec = SweepSpec {
            two_tau_max_us: 0.05,
            step_us: 0.1,
            counts_mode: CountsMode::Exact,
            targets: vec![],
        };
        assert!(run_sweep(bell_builder(EvolutionBackend::PaperLiteral), &spec).is_err());
    }
}
