//! Physical parameters of the rotating-frame Dirac oscillator around a cosmic
//! string, and the closed-form parameter algebra shared by every other module.
//!
//! All quantities are in natural units (ħ = c = 1). The oscillator frequency
//! is `omega0` and the angular velocity of the rotating frame is `omega`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Regime threshold for `sqrt(m ω₀) / (ω η)`.
pub const CASE1_THRESHOLD: f64 = 0.1;
/// Regime threshold for `m ω₀`.
pub const CASE2_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("1 + 2 s ω η = {value} is not positive (rotation too fast for this spin)")]
    NonPositiveDiscriminant { value: f64 },
    #[error("energy radicand {value} is negative (outside the bound-state regime)")]
    NonPhysicalRadicand { value: f64 },
}

pub type Result<T> = std::result::Result<T, ModelError>;

/// The four physical parameters `(m, ω₀, ω, η)`.
///
/// Construction validates `m > 0`, `ω₀ ≥ 0`, `ω ≥ 0` and `0 < η ≤ 1`; once
/// built, a config is immutable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConfig {
    mass: f64,
    omega0: f64,
    omega: f64,
    eta: f64,
}

impl PhysicalConfig {
    pub fn new(mass: f64, omega0: f64, omega: f64, eta: f64) -> Result<Self> {
        let invalid = |name, value, reason| Err(ModelError::InvalidParameter { name, value, reason });
        if !(mass.is_finite() && mass > 0.0) {
            return invalid("mass", mass, "must be finite and > 0");
        }
        if !(omega0.is_finite() && omega0 >= 0.0) {
            return invalid("omega0", omega0, "must be finite and >= 0");
        }
        if !(omega.is_finite() && omega >= 0.0) {
            return invalid("omega", omega, "must be finite and >= 0");
        }
        if !(eta > 0.0 && eta <= 1.0) {
            return invalid("eta", eta, "must lie in (0, 1]");
        }
        Ok(Self {
            mass,
            omega0,
            omega,
            eta,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Linear mass density of the string, `(1 − η)/4`.
    pub fn linear_mass_density(&self) -> f64 {
        (1.0 - self.eta) / 4.0
    }

    pub fn with_mass(&self, mass: f64) -> Result<Self> {
        Self::new(mass, self.omega0, self.omega, self.eta)
    }

    pub fn with_omega0(&self, omega0: f64) -> Result<Self> {
        Self::new(self.mass, omega0, self.omega, self.eta)
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.mass, self.omega0, omega, self.eta)
    }

    pub fn with_eta(&self, eta: f64) -> Result<Self> {
        Self::new(self.mass, self.omega0, self.omega, eta)
    }
}

/// Eigenvalue of σ³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Down,
    Up,
}

impl Serialize for Spin {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i32(self.as_i32())
    }
}

impl Spin {
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    /// Accepts exactly `+1` or `-1`.
    pub fn from_i32(s: i32) -> Option<Self> {
        match s {
            1 => Some(Spin::Up),
            -1 => Some(Spin::Down),
            _ => None,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spin::Up => f.write_str("+1"),
            Spin::Down => f.write_str("-1"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Particle,
    Antiparticle,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Particle => 1.0,
            Branch::Antiparticle => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Particle => "particle",
            Branch::Antiparticle => "antiparticle",
        }
    }
}

/// Labels one bound state: radial `n`, orbital `l`, spin `s` and energy branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: i32,
    pub spin: Spin,
    pub branch: Branch,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: i32, spin: Spin) -> Self {
        Self {
            n,
            l,
            spin,
            branch: Branch::Particle,
        }
    }

    pub fn antiparticle(self) -> Self {
        Self {
            branch: Branch::Antiparticle,
            ..self
        }
    }

    pub fn with_n(self, n: u32) -> Self {
        Self { n, ..self }
    }
}

/// `ζ_s = l + (1 − s)/2 + s(1 − η)/2`.
pub fn effective_angular_momentum(l: i32, spin: Spin, eta: f64) -> f64 {
    let s = spin.sign();
    l as f64 + 0.5 * (1.0 - s) + 0.5 * s * (1.0 - eta)
}

/// `δ_s = sqrt(1 + 2 s ω η)`.
pub fn delta_parameter(spin: Spin, omega: f64, eta: f64) -> Result<f64> {
    let disc = 1.0 + 2.0 * spin.sign() * omega * eta;
    if disc <= 0.0 {
        return Err(ModelError::NonPositiveDiscriminant { value: disc });
    }
    Ok(disc.sqrt())
}

/// Light-cone radius `1/(ω η)`; `None` when the frame does not rotate.
pub fn physical_radius(omega: f64, eta: f64) -> Option<f64> {
    if omega > 0.0 {
        Some(1.0 / (omega * eta))
    } else {
        None
    }
}

/// Everything derived from a config and a `(l, s)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    pub zeta: f64,
    pub delta: f64,
    /// `None` means unbounded (no rotation).
    pub rho0: Option<f64>,
    /// `m ω₀ δ_s ρ₀²`, defined only for finite `ρ₀`.
    pub xi0: Option<f64>,
}

impl DerivedParams {
    pub fn new(config: &PhysicalConfig, l: i32, spin: Spin) -> Result<Self> {
        let zeta = effective_angular_momentum(l, spin, config.eta);
        let delta = delta_parameter(spin, config.omega, config.eta)?;
        let rho0 = physical_radius(config.omega, config.eta);
        let xi0 = rho0.map(|r| config.mass * config.omega0 * delta * r * r);
        Ok(Self { zeta, delta, rho0, xi0 })
    }

    /// `|ζ_s|/η`, the power of the regular solution in `ρ` and `B − 1`.
    pub fn angular_index(&self, eta: f64) -> f64 {
        self.zeta.abs() / eta
    }
}

/// `2mω₀[sζ/η + 1] + ω²ζ² + ω²η² + 2sω²ηζ`, the energy-independent couplings
/// that separate `ν_s` from `[E + ω(l + ½)]² − m²`.
pub fn static_couplings(config: &PhysicalConfig, l: i32, spin: Spin) -> f64 {
    let PhysicalConfig {
        mass: m,
        omega0: w0,
        omega: w,
        eta,
    } = *config;
    let s = spin.sign();
    let zeta = effective_angular_momentum(l, spin, eta);
    2.0 * m * w0 * (s * zeta / eta + 1.0) + w * w * zeta * zeta + w * w * eta * eta + 2.0 * s * w * w * eta * zeta
}

/// Page–Werner rotation coupling `ω(l + ½)`.
pub fn rotation_shift(config: &PhysicalConfig, l: i32) -> f64 {
    config.omega * (l as f64 + 0.5)
}

/// `ν_s` as a function of the energy.
pub fn nu_from_energy(energy: f64, config: &PhysicalConfig, qn: &QuantumNumbers) -> f64 {
    let shifted = energy + rotation_shift(config, qn.l);
    shifted * shifted - config.mass * config.mass + static_couplings(config, qn.l, qn.spin)
}

/// Inverse of [`nu_from_energy`] on the branch selected by `qn.branch`.
pub fn energy_from_nu(nu: f64, config: &PhysicalConfig, qn: &QuantumNumbers) -> Result<f64> {
    let radicand = config.mass * config.mass + nu - static_couplings(config, qn.l, qn.spin);
    if radicand < 0.0 {
        return Err(ModelError::NonPhysicalRadicand { value: radicand });
    }
    Ok(qn.branch.sign() * radicand.sqrt() - rotation_shift(config, qn.l))
}

/// How well a config satisfies the two smallness assumptions behind the
/// closed forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeReport {
    /// `sqrt(m ω₀)/(ω η)`; `None` when `ω = 0`.
    pub case1_ratio: Option<f64>,
    /// `m ω₀`.
    pub case2_value: f64,
    /// `None` means not applicable (no rotation).
    pub case1_ok: Option<bool>,
    pub case2_ok: bool,
    pub notes: String,
}

pub fn regime_check(config: &PhysicalConfig) -> RegimeReport {
    let case2_value = config.mass * config.omega0;
    let case1_ratio = (config.omega > 0.0).then(|| case2_value.sqrt() / (config.omega * config.eta));
    let case1_ok = case1_ratio.map(|r| r <= CASE1_THRESHOLD);
    let case2_ok = case2_value <= CASE2_THRESHOLD;

    let mut notes = Vec::new();
    match case1_ok {
        None => notes.push("no rotation: light-cone bound absent, case 1 not applicable".to_string()),
        Some(false) => notes.push(format!("sqrt(m*omega0)/(omega*eta) exceeds {CASE1_THRESHOLD}")),
        Some(true) => {}
    }
    if !case2_ok {
        notes.push(format!("m*omega0 exceeds {CASE2_THRESHOLD}"));
    }

    RegimeReport {
        case1_ratio,
        case2_value,
        case1_ok,
        case2_ok,
        notes: notes.join("; "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: f64, w0: f64, w: f64, eta: f64) -> PhysicalConfig {
        PhysicalConfig::new(m, w0, w, eta).unwrap()
    }

    #[test]
    fn construction_rejects_out_of_range() {
        assert!(PhysicalConfig::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(PhysicalConfig::new(1.0, -1e-3, 0.0, 1.0).is_err());
        assert!(PhysicalConfig::new(1.0, 0.0, -0.1, 1.0).is_err());
        assert!(PhysicalConfig::new(1.0, 0.0, 0.1, 0.0).is_err());
        assert!(PhysicalConfig::new(1.0, 0.0, 0.1, 1.0001).is_err());
        assert!(PhysicalConfig::new(1.0, 0.0, 0.1, f64::NAN).is_err());
        assert!(PhysicalConfig::new(1.0, 0.0, 0.0, 1.0).is_ok());
    }

    #[test]
    fn linear_mass_density() {
        assert_eq!(cfg(1.0, 0.0, 0.0, 1.0).linear_mass_density(), 0.0);
        assert!((cfg(1.0, 0.0, 0.0, 0.8).linear_mass_density() - 0.05).abs() < 1e-15);
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(effective_angular_momentum(0, Spin::Up, 1.0), 0.0);
        assert_eq!(effective_angular_momentum(0, Spin::Down, 1.0), 1.0);
        assert!((effective_angular_momentum(0, Spin::Up, 0.8) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn zeta_integer_in_flat_space() {
        for l in -5..=5 {
            assert_eq!(effective_angular_momentum(l, Spin::Up, 1.0), l as f64);
            assert_eq!(effective_angular_momentum(l, Spin::Down, 1.0), (l + 1) as f64);
            let z = effective_angular_momentum(l, Spin::Up, 0.7);
            assert_ne!(z, z.round());
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_parameter(Spin::Up, 0.0, 0.8).unwrap(), 1.0);
        assert!((delta_parameter(Spin::Up, 0.1, 1.0).unwrap() - 1.2f64.sqrt()).abs() < 1e-15);
        assert!((delta_parameter(Spin::Up, 0.1, 1.0).unwrap() - 1.095445).abs() < 1e-6);
        assert!(matches!(
            delta_parameter(Spin::Down, 0.5, 1.0),
            Err(ModelError::NonPositiveDiscriminant { .. })
        ));
        assert!(matches!(
            delta_parameter(Spin::Down, 0.6, 1.0),
            Err(ModelError::NonPositiveDiscriminant { .. })
        ));
        assert!(delta_parameter(Spin::Down, 0.49, 1.0).is_ok());
    }

    #[test]
    fn delta_ordering_on_grid() {
        for i in 0..20 {
            let w = 0.02 * i as f64;
            for j in 1..=10 {
                let eta = 0.1 * j as f64;
                let up = delta_parameter(Spin::Up, w, eta).unwrap();
                let down = delta_parameter(Spin::Down, w, eta).unwrap();
                assert!(up >= 1.0 && 1.0 >= down);
                if w == 0.0 {
                    assert_eq!(up, 1.0);
                    assert_eq!(down, 1.0);
                }
            }
        }
    }

    #[test]
    fn radius_examples() {
        assert!((physical_radius(0.1, 0.8).unwrap() - 12.5).abs() < 1e-12);
        assert_eq!(physical_radius(0.0, 1.0), None);
        assert_eq!(physical_radius(1.0, 1.0), Some(1.0));
        for &(w, eta) in &[(0.3, 0.7), (0.05, 0.8), (2.0, 0.25), (1.0, 1.0)] {
            let r = physical_radius(w, eta).unwrap();
            assert!((r * w * eta - 1.0).abs() <= f64::EPSILON);
        }
    }

    #[test]
    fn derived_xi0() {
        let c = cfg(1.0, 1e-3, 0.1, 0.8);
        let d = DerivedParams::new(&c, 0, Spin::Up).unwrap();
        let expect = 1e-3 * 1.16f64.sqrt() * 12.5 * 12.5;
        assert!((d.xi0.unwrap() - expect).abs() < 1e-14);
        assert!((d.xi0.unwrap() - 0.17).abs() < 0.005);
        let flat = DerivedParams::new(&cfg(1.0, 0.5, 0.0, 1.0), 0, Spin::Up).unwrap();
        assert_eq!(flat.rho0, None);
        assert_eq!(flat.xi0, None);
    }

    #[test]
    fn nu_at_rest() {
        let c = cfg(1.0, 0.0, 0.0, 1.0);
        let qn = QuantumNumbers::new(0, 0, Spin::Up);
        assert_eq!(nu_from_energy(1.0, &c, &qn), 0.0);
        assert_eq!(energy_from_nu(0.0, &c, &qn).unwrap(), 1.0);
        assert_eq!(energy_from_nu(0.0, &c, &qn.antiparticle()).unwrap(), -1.0);
    }

    #[test]
    fn nu_flat_oscillator_example() {
        // m=1, ω₀=0.5, ω=0, η=1, s=+1, l=0: ν = E² − 1 + 2·0.5·(0 + 1) = 3 at E = √3.
        let c = cfg(1.0, 0.5, 0.0, 1.0);
        let qn = QuantumNumbers::new(1, 0, Spin::Up);
        let nu = nu_from_energy(3f64.sqrt(), &c, &qn);
        assert!((nu - 3.0).abs() < 1e-14);
        let e = energy_from_nu(3.0, &c, &qn).unwrap();
        assert!((e - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn branches_are_ordered() {
        let c = cfg(1.3, 0.2, 0.07, 0.6);
        for l in -3..=3 {
            for spin in [Spin::Up, Spin::Down] {
                let qn = QuantumNumbers::new(0, l, spin);
                let p = energy_from_nu(5.0, &c, &qn).unwrap();
                let a = energy_from_nu(5.0, &c, &qn.antiparticle()).unwrap();
                assert!(p >= a);
            }
        }
    }

    #[test]
    fn negative_radicand_rejected() {
        let c = cfg(1.0, 0.0, 0.0, 1.0);
        let qn = QuantumNumbers::new(0, 0, Spin::Up);
        assert!(matches!(
            energy_from_nu(-2.0, &c, &qn),
            Err(ModelError::NonPhysicalRadicand { .. })
        ));
    }

    #[test]
    fn regime_examples() {
        let r = regime_check(&cfg(1.0, 1e-5, 0.05, 0.8));
        let ratio = r.case1_ratio.unwrap();
        assert!((ratio - 1e-5f64.sqrt() / 0.04).abs() < 1e-15);
        assert!((ratio - 0.0791).abs() < 1e-4);
        assert_eq!(r.case1_ok, Some(true));
        assert!(r.case2_ok);

        let r = regime_check(&cfg(1.0, 1.0, 0.05, 0.8));
        assert!((r.case1_ratio.unwrap() - 25.0).abs() < 1e-12);
        assert_eq!(r.case1_ok, Some(false));
        assert!(!r.case2_ok);

        let r = regime_check(&cfg(1.0, 1.0, 0.0, 1.0));
        assert_eq!(r.case1_ratio, None);
        assert_eq!(r.case1_ok, None);
        assert!(r.notes.contains("not applicable"));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn nu_and_energy_are_inverse_on_particle_branch(
                m in 1.0..10.0f64,
                omega0 in 0.0..1.0f64,
                omega in 0.0..0.1f64,
                eta in 0.05..=1.0f64,
                l in -5i32..=5,
                up in any::<bool>(),
                shifted_scale in 1.0..5.0f64,
            ) {
                let c = cfg(m, omega0, omega, eta);
                let spin = if up { Spin::Up } else { Spin::Down };
                let qn = QuantumNumbers::new(0, l, spin);
                // E + ω(l + ½) is the positive square root on this branch.
                let energy = shifted_scale * m - rotation_shift(&c, l);
                let nu = nu_from_energy(energy, &c, &qn);
                let back = energy_from_nu(nu, &c, &qn).unwrap();
                prop_assert!(((back - energy) / energy).abs() < 1e-12, "{energy} -> {nu} -> {back}");
            }

            #[test]
            fn light_cone_radius_times_omega_eta_is_one(omega in 1e-6..10.0f64, eta in 0.01..=1.0f64) {
                let rho0 = physical_radius(omega, eta).unwrap();
                prop_assert!((rho0 * omega * eta - 1.0).abs() <= 2.0 * f64::EPSILON);
            }
        }
    }
}
