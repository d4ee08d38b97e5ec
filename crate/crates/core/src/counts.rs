//! Measurement statistics: exact Born-rule probabilities and seeded
//! multi-shot sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Name of the sampling generator, recorded in output provenance.
pub const RNG_NAME: &str = "chacha8";

/// How a counts table was produced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CountsMode {
    /// Exact |amplitude|² per basis state.
    Exact,
    /// `shots` independent draws from the Born distribution, reproducible
    /// from `seed`.
    Sampled { shots: u64, seed: u64 },
}

/// Normalized counts per basis label. Entries are stored densely in basis
/// index order, which is also lexicographic label order.
#[derive(Clone, Debug, PartialEq)]
pub struct CountsTable {
    mode: CountsMode,
    n_qubits: usize,
    entries: Vec<f64>,
}

impl CountsTable {
    pub fn mode(&self) -> CountsMode {
        self.mode
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Normalized count for a basis index.
    pub fn value(&self, index: usize) -> f64 {
        self.entries[index]
    }

    /// Normalized count for a basis label such as `"011"`.
    pub fn value_for_label(&self, label: &str) -> Result<f64> {
        if label.len() != self.n_qubits {
            return Err(Error::InvalidInput(format!(
                "label {label:?} has length {}, table has {} qubits",
                label.len(),
                self.n_qubits
            )));
        }
        Ok(self.entries[StateVector::parse_label(label)?])
    }

    /// `(label, value)` pairs in lexicographic label order.
    pub fn iter_labelled(&self) -> impl Iterator<Item = (String, f64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &v)| (format!("{i:0w$b}", w = self.n_qubits), v))
    }

    pub fn values(&self) -> &[f64] {
        &self.entries
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().sum()
    }
}

/// Measures a state in the computational basis.
///
/// Exact mode returns the Born distribution itself; sampled mode draws
/// `shots` outcomes with a ChaCha8 generator seeded by `seed` and returns
/// shot fractions, which sum to exactly 1.
pub fn measure_counts(state: &StateVector, mode: CountsMode) -> Result<CountsTable> {
    let probs: Vec<f64> = (0..state.dim()).map(|i| state.probability(i)).collect();
    let entries = match mode {
        CountsMode::Exact => probs,
        CountsMode::Sampled { shots, seed } => {
            if shots == 0 {
                return Err(Error::InvalidInput("shot count must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut tallies = vec![0u64; probs.len()];
            for _ in 0..shots {
                let r: f64 = rng.gen();
                let mut acc = 0.0;
                let mut outcome = probs.len() - 1;
                for (i, &p) in probs.iter().enumerate() {
                    acc += p;
                    if r < acc {
                        outcome = i;
                        break;
                    }
                }
                tallies[outcome] += 1;
            }
            tallies.iter().map(|&t| t as f64 / shots as f64).collect()
        }
    };
    Ok(CountsTable {
        mode,
        n_qubits: state.n_qubits(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_counts_on_bell() {
        let bell = StateVector::superposition_pair("00", "11", 1.0).unwrap();
        let t = measure_counts(&bell, CountsMode::Exact).unwrap();
        assert!((t.value_for_label("00").unwrap() - 0.5).abs() < 1e-12);
        assert!((t.value_for_label("11").unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(t.value_for_label("01").unwrap(), 0.0);
        assert!((t.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_deterministic_state_gives_all_shots() {
        let one = StateVector::basis(1, 1);
        let t = measure_counts(&one, CountsMode::Sampled { shots: 1024, seed: 7 }).unwrap();
        assert_eq!(t.value_for_label("1").unwrap(), 1.0);
        assert_eq!(t.value_for_label("0").unwrap(), 0.0);
    }

    #[test]
    fn sampling_within_binomial_bounds() {
        // 1024 shots on |+⟩: count("0")·1024 within 512 ± 48 (3σ, σ = √(1024·0.25) = 16)
        let plus = StateVector::superposition_pair("0", "1", 1.0).unwrap();
        let t = measure_counts(&plus, CountsMode::Sampled { shots: 1024, seed: 20210917 }).unwrap();
        let zeros = t.value_for_label("0").unwrap() * 1024.0;
        assert!((zeros - 512.0).abs() <= 48.0, "count(0) = {zeros}");
    }

    #[test]
    fn zero_shots_rejected() {
        let s = StateVector::zero(1);
        assert!(matches!(
            measure_counts(&s, CountsMode::Sampled { shots: 0, seed: 1 }),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let bell = StateVector::superposition_pair("00", "11", 1.0).unwrap();
        let mode = CountsMode::Sampled { shots: 512, seed: 99 };
        let a = measure_counts(&bell, mode).unwrap();
        let b = measure_counts(&bell, mode).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shot_fractions_sum_to_one_exactly_in_tallies() {
        let plus = StateVector::superposition_pair("0", "1", 1.0).unwrap();
        let t = measure_counts(&plus, CountsMode::Sampled { shots: 1000, seed: 3 }).unwrap();
        assert!((t.total() - 1.0).abs() < 1e-12);
    }
}
