//! Newtonian pair potentials and the phase gaps they induce.
//!
//! Two particles sit a distance `d` apart; each has a `|0⟩` and a `|1⟩`
//! component displaced by `L` along the line joining them. The `|0⟩`
//! components are at distance `d`, so the four configurations see
//!
//! ```text
//! H00 = H11 = -G mA mB / d
//! H01       = -G mA mB / (d + L)
//! H10       = -G mA mB / (d - L)
//! ```

use crate::error::{Error, Result};

/// CODATA 2018 Newtonian constant of gravitation, m³ kg⁻¹ s⁻².
pub const G_SI: f64 = 6.674_30e-11;
/// Reduced Planck constant, J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Si,
    /// `G = ħ = 1`; masses and lengths are pure numbers.
    Dimensionless,
}

/// Masses, geometry and constants of the two-particle setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityConfig {
    units: Units,
    mass_a: f64,
    mass_b: f64,
    separation: f64,
    displacement: f64,
    g: f64,
    hbar: f64,
}

impl GravityConfig {
    /// General constructor; rejects non-positive constants and `d ≤ L`.
    pub fn new(
        units: Units,
        mass_a: f64,
        mass_b: f64,
        separation: f64,
        displacement: f64,
        g: f64,
        hbar: f64,
    ) -> Result<Self> {
        positive("mass_a", mass_a)?;
        positive("mass_b", mass_b)?;
        positive("g", g)?;
        positive("hbar", hbar)?;
        positive("displacement", displacement)?;
        if !separation.is_finite() || separation <= displacement {
            return Err(Error::SingularGeometry {
                d: separation,
                l: displacement,
            });
        }
        Ok(Self {
            units,
            mass_a,
            mass_b,
            separation,
            displacement,
            g,
            hbar,
        })
    }

    pub fn dimensionless(mass_a: f64, mass_b: f64, separation: f64, displacement: f64) -> Result<Self> {
        Self::new(Units::Dimensionless, mass_a, mass_b, separation, displacement, 1.0, 1.0)
    }

    pub fn si(mass_a: f64, mass_b: f64, separation: f64, displacement: f64) -> Result<Self> {
        Self::new(Units::Si, mass_a, mass_b, separation, displacement, G_SI, HBAR_SI)
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn mass_a(&self) -> f64 {
        self.mass_a
    }

    pub fn mass_b(&self) -> f64 {
        self.mass_b
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn displacement(&self) -> f64 {
        self.displacement
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `G · mA · mB`.
    pub fn coupling(&self) -> f64 {
        self.g * self.mass_a * self.mass_b
    }

    /// Same setup with the two masses exchanged.
    pub fn swapped_masses(&self) -> Self {
        Self {
            mass_a: self.mass_b,
            mass_b: self.mass_a,
            ..*self
        }
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be positive and finite, got {value}"),
        })
    }
}

/// The four branch energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSet {
    pub h00: f64,
    pub h01: f64,
    pub h10: f64,
    pub h11: f64,
}

/// Phase gaps between branch energies:
/// `Δ1 = H01 - H00`, `Δ2 = H10 - H00`, `Δ3 = H10 - H01`.
///
/// Downstream code only ever uses these through [`PhaseSet::angle`], which
/// folds in `ħ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSet {
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub hbar: f64,
}

impl PhaseSet {
    /// Builds a phase set directly from frequencies. `delta3` is taken as
    /// `delta2 - delta1`.
    pub fn from_gaps(delta1: f64, delta2: f64, hbar: f64) -> Result<Self> {
        positive("hbar", hbar)?;
        for (name, v) in [("delta1", delta1), ("delta2", delta2)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite, got {v}"),
                });
            }
        }
        Ok(Self {
            delta1,
            delta2,
            delta3: delta2 - delta1,
            hbar,
        })
    }

    /// Dimensionless angle `Δ t / ħ`.
    pub fn angle(&self, delta: f64, t: f64) -> f64 {
        delta * t / self.hbar
    }

    pub fn angle1(&self, t: f64) -> f64 {
        self.angle(self.delta1, t)
    }

    pub fn angle2(&self, t: f64) -> f64 {
        self.angle(self.delta2, t)
    }

    pub fn angle3(&self, t: f64) -> f64 {
        self.angle(self.delta3, t)
    }

    /// `(Δ1 + Δ2) t / ħ`, the phase that drives entanglement of the
    /// separable-field evolution.
    pub fn entangling_angle(&self, t: f64) -> f64 {
        self.angle(self.delta1 + self.delta2, t)
    }

    /// Period in `t` of the entangling phase, `2πħ / |Δ1 + Δ2|`.
    pub fn entangling_period(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar / (self.delta1 + self.delta2).abs()
    }

    /// Period in `t` of the teleportation phase, `2πħ / |Δ3|`.
    pub fn teleport_period(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar / self.delta3.abs()
    }
}

pub fn pair_potentials(cfg: &GravityConfig) -> Result<PotentialSet> {
    let (d, l) = (cfg.separation, cfg.displacement);
    if d <= l {
        return Err(Error::SingularGeometry { d, l });
    }
    let c = cfg.coupling();
    let h00 = -c / d;
    Ok(PotentialSet {
        h00,
        h01: -c / (d + l),
        h10: -c / (d - l),
        h11: h00,
    })
}

/// Phase gaps from the closed-form differences of inverse distances.
pub fn phase_gaps(cfg: &GravityConfig) -> Result<PhaseSet> {
    let (d, l) = (cfg.separation, cfg.displacement);
    if d <= l {
        return Err(Error::SingularGeometry { d, l });
    }
    let c = cfg.coupling();
    Ok(PhaseSet {
        delta1: c * (1.0 / d - 1.0 / (d + l)),
        delta2: c * (1.0 / d - 1.0 / (d - l)),
        delta3: c * (1.0 / (d + l) - 1.0 / (d - l)),
        hbar: cfg.hbar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    #[test]
    fn potentials_unit_coupling() {
        let cfg = GravityConfig::dimensionless(1.0, 1.0, 2.0, 1.0).unwrap();
        let h = pair_potentials(&cfg).unwrap();
        assert!((h.h00 + 0.5).abs() < 1e-15);
        assert!((h.h01 + 1.0 / 3.0).abs() < 1e-15);
        assert!((h.h10 + 1.0).abs() < 1e-15);
        assert_eq!(h.h00, h.h11);
        assert!(h.h10 < h.h00 && h.h00 < h.h01 && h.h01 < 0.0);
    }

    #[test]
    fn potentials_small_displacement_limit() {
        let d = 3.0;
        let cfg = GravityConfig::dimensionless(2.0, 0.5, d, 1e-9 * d).unwrap();
        let h = pair_potentials(&cfg).unwrap();
        let expected = -1.0 / d;
        for v in [h.h00, h.h01, h.h10, h.h11] {
            assert!(rel_close(v, expected, 1e-8));
        }
    }

    #[test]
    fn singular_geometry_rejected() {
        assert!(matches!(
            GravityConfig::dimensionless(1.0, 1.0, 1.0, 1.0),
            Err(Error::SingularGeometry { .. })
        ));
        assert!(matches!(
            GravityConfig::dimensionless(1.0, 1.0, 1.0, 2.0),
            Err(Error::SingularGeometry { .. })
        ));
        assert!(GravityConfig::dimensionless(-1.0, 1.0, 2.0, 1.0).is_err());
        assert!(GravityConfig::dimensionless(1.0, 1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn gaps_unit_coupling() {
        let cfg = GravityConfig::dimensionless(1.0, 1.0, 2.0, 1.0).unwrap();
        let p = phase_gaps(&cfg).unwrap();
        assert!((p.delta1 - 1.0 / 6.0).abs() < 1e-15);
        assert!((p.delta2 + 0.5).abs() < 1e-15);
        assert!((p.delta3 + 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn si_mode_uses_physical_constants() {
        let cfg = GravityConfig::si(1e-14, 1e-14, 450e-6, 250e-6).unwrap();
        assert_eq!(cfg.g(), G_SI);
        assert_eq!(cfg.hbar(), HBAR_SI);
        let p = phase_gaps(&cfg).unwrap();
        assert!(p.delta1 > 0.0 && p.delta2 < 0.0 && p.delta3 < 0.0);
    }

    fn valid_config() -> impl Strategy<Value = GravityConfig> {
        (0.01f64..100.0, 0.01f64..100.0, 0.01f64..10.0, 0.001f64..0.999)
            .prop_map(|(ma, mb, d, frac)| GravityConfig::dimensionless(ma, mb, d, frac * d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn gap_identity_and_signs(cfg in valid_config()) {
            let p = phase_gaps(&cfg).unwrap();
            prop_assert!(p.delta1 > 0.0);
            prop_assert!(p.delta2 < 0.0);
            prop_assert!(p.delta3 < 0.0);
            prop_assert!(rel_close(p.delta3, p.delta2 - p.delta1, 1e-12));
        }

        #[test]
        fn gaps_match_potential_differences(cfg in valid_config()) {
            let h = pair_potentials(&cfg).unwrap();
            let p = phase_gaps(&cfg).unwrap();
            prop_assert!(rel_close(p.delta1, -(h.h00 - h.h01), 1e-12));
            prop_assert!(rel_close(p.delta2, -(h.h00 - h.h10), 1e-12));
            prop_assert!(rel_close(p.delta3, -(h.h01 - h.h10), 1e-12));
        }

        #[test]
        fn gaps_linear_in_coupling_and_symmetric(cfg in valid_config()) {
            let p = phase_gaps(&cfg).unwrap();
            let doubled = GravityConfig::dimensionless(
                2.0 * cfg.mass_a(), cfg.mass_b(), cfg.separation(), cfg.displacement(),
            ).unwrap();
            let q = phase_gaps(&doubled).unwrap();
            prop_assert_eq!(q.delta1, 2.0 * p.delta1);
            prop_assert_eq!(q.delta2, 2.0 * p.delta2);
            prop_assert_eq!(q.delta3, 2.0 * p.delta3);

            let s = phase_gaps(&cfg.swapped_masses()).unwrap();
            prop_assert!(rel_close(s.delta1, p.delta1, 1e-15));
            prop_assert!(rel_close(s.delta2, p.delta2, 1e-15));
            prop_assert!(rel_close(s.delta3, p.delta3, 1e-15));
        }
    }
}
