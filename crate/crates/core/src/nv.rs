//! Coupling configurations of a three-NV-center triple: pairwise dipolar
//! strengths, the aggregate coupling constant R, the shape taxonomy and the
//! 27-configuration catalogue.

use crate::error::{Error, Result};

/// Documented physical constants of the NV ground state. They set the
/// energy scale of the spin system but do not enter the circuit model,
/// which is driven by the dipolar couplings alone.
pub struct PhysicalConstants;

impl PhysicalConstants {
    /// Zero-field splitting Δ of the ground-state triplet, in GHz.
    pub const ZERO_FIELD_SPLITTING_GHZ: f64 = 2.87;
    /// Electron gyromagnetic ratio γ_e, in MHz per gauss.
    pub const GYROMAGNETIC_RATIO_MHZ_PER_GAUSS: f64 = 2.8;
}

/// Pairwise dipolar coupling strengths (kHz) between centers A, B, C.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingConfig {
    pub v_ac_khz: f64,
    pub v_ab_khz: f64,
    pub v_cb_khz: f64,
}

impl CouplingConfig {
    pub fn new(v_ac_khz: f64, v_ab_khz: f64, v_cb_khz: f64) -> Result<Self> {
        let c = CouplingConfig { v_ac_khz, v_ab_khz, v_cb_khz };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("v_ac_khz", self.v_ac_khz),
            ("v_ab_khz", self.v_ab_khz),
            ("v_cb_khz", self.v_cb_khz),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.v_ac_khz, self.v_ab_khz, self.v_cb_khz]
    }

    /// Config with v_AC and v_AB interchanged (the symmetry probed in the
    /// interchange experiments).
    pub fn swap_ac_ab(&self) -> Self {
        CouplingConfig {
            v_ac_khz: self.v_ab_khz,
            v_ab_khz: self.v_ac_khz,
            v_cb_khz: self.v_cb_khz,
        }
    }

    pub fn min_coupling(&self) -> f64 {
        self.v_ac_khz.min(self.v_ab_khz).min(self.v_cb_khz)
    }

    pub fn max_coupling(&self) -> f64 {
        self.v_ac_khz.max(self.v_ab_khz).max(self.v_cb_khz)
    }
}

/// Triangle-shape taxonomy of a coupling triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeClass {
    /// All three couplings equal.
    Equilateral,
    /// Exactly two equal, the odd one larger than the pair.
    IsoscelesSingleDominant,
    /// Exactly two equal, the odd one smaller than the pair.
    IsoscelesDoubleDominant,
    /// All three distinct.
    Scalene,
}

impl std::fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ShapeClass::Equilateral => "equilateral",
            ShapeClass::IsoscelesSingleDominant => "isosceles_single_dominant",
            ShapeClass::IsoscelesDoubleDominant => "isosceles_double_dominant",
            ShapeClass::Scalene => "scalene",
        };
        f.write_str(s)
    }
}

/// The aggregate coupling constant R = (1/v_AC + 1/v_AB + 1/v_CB)⁻¹ in kHz.
///
/// R is permutation-invariant in the three couplings and strictly below
/// the weakest of them; larger R means a more ordered, strongly coupled
/// triple.
pub fn coupling_constant(config: &CouplingConfig) -> Result<f64> {
    config.validate()?;
    Ok(1.0 / (1.0 / config.v_ac_khz + 1.0 / config.v_ab_khz + 1.0 / config.v_cb_khz))
}

/// Default relative tolerance for coupling-equality tests in `classify`.
/// Inputs are exact catalogue values, so this only guards against noise.
pub const CLASSIFY_DEFAULT_TOL_REL: f64 = 1e-6;

/// Classifies a configuration into the shape taxonomy.
///
/// Two couplings count as equal when their relative difference is within
/// `tol_rel` of the larger one.
pub fn classify(config: &CouplingConfig, tol_rel: f64) -> Result<ShapeClass> {
    config.validate()?;
    let [ac, ab, cb] = config.as_array();
    let eq = |x: f64, y: f64| (x - y).abs() <= tol_rel * x.abs().max(y.abs());
    let pairs = [(ac, ab, cb), (ac, cb, ab), (ab, cb, ac)];
    if eq(ac, ab) && eq(ab, cb) && eq(ac, cb) {
        return Ok(ShapeClass::Equilateral);
    }
    for (x, y, odd) in pairs {
        if eq(x, y) {
            return Ok(if odd > x.max(y) {
                ShapeClass::IsoscelesSingleDominant
            } else {
                ShapeClass::IsoscelesDoubleDominant
            });
        }
    }
    Ok(ShapeClass::Scalene)
}

/// One catalogue row: a configuration plus its family and arrangement tag.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogueEntry {
    pub family: ShapeClass,
    /// Human-readable arrangement label, unique within the catalogue.
    pub arrangement: String,
    pub config: CouplingConfig,
}

/// Coupling levels used by the equilateral and scalene families (kHz).
pub const STANDARD_LEVELS_KHZ: [f64; 3] = [5.0, 20.0, 50.0];
/// The two levels combined into isosceles configurations (kHz).
pub const ISO_PAIR_KHZ: [f64; 2] = [5.0, 50.0];
/// The measured coupling set of the fabricated NV triple (kHz).
pub const REALISTIC_SET_KHZ: [f64; 3] = [53.0, 4.6, 24.1];

fn permutations3(set: [f64; 3]) -> [[f64; 3]; 6] {
    let [a, b, c] = set;
    [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

/// Builds the 27-configuration catalogue:
/// 3 equilateral levels, 12 isosceles arrangements, 6 scalene permutations
/// of the standard levels and 6 permutations of the realistic set.
///
/// The 12 isosceles arrangements place the odd coupling in each of the
/// three slots, for each dominance direction, and list both write-orders
/// of the equal pair so every cyclic redistribution carries its own label.
pub fn enumerate_configurations() -> Vec<CatalogueEntry> {
    let mut out = Vec::with_capacity(27);

    for level in STANDARD_LEVELS_KHZ {
        out.push(CatalogueEntry {
            family: ShapeClass::Equilateral,
            arrangement: format!("equilateral_{level:.0}khz"),
            config: CouplingConfig::new(level, level, level).unwrap(),
        });
    }

    // Isosceles: odd slot ∈ {cb, ab, ac} × dominance ∈ {single, double}
    // × the two slot-orders of the equal pair.
    let [lo, hi] = ISO_PAIR_KHZ;
    for (slot_idx, slot_name) in [(2usize, "cb"), (1, "ab"), (0, "ac")] {
        for (family, pair, odd, dom) in [
            (ShapeClass::IsoscelesSingleDominant, lo, hi, "single"),
            (ShapeClass::IsoscelesDoubleDominant, hi, lo, "double"),
        ] {
            for order in 0..2 {
                let mut v = [pair, pair, pair];
                v[slot_idx] = odd;
                out.push(CatalogueEntry {
                    family,
                    arrangement: format!("isosceles_{dom}_odd_{slot_name}_order{order}"),
                    config: CouplingConfig::new(v[0], v[1], v[2]).unwrap(),
                });
            }
        }
    }

    for (k, p) in permutations3(STANDARD_LEVELS_KHZ).into_iter().enumerate() {
        out.push(CatalogueEntry {
            family: ShapeClass::Scalene,
            arrangement: format!("scalene_perm{k}"),
            config: CouplingConfig::new(p[0], p[1], p[2]).unwrap(),
        });
    }

    for (k, p) in permutations3(REALISTIC_SET_KHZ).into_iter().enumerate() {
        out.push(CatalogueEntry {
            family: ShapeClass::Scalene,
            arrangement: format!("realistic_perm{k}"),
            config: CouplingConfig::new(p[0], p[1], p[2]).unwrap(),
        });
    }

    debug_assert_eq!(out.len(), 27);
    out
}
