//! Closed-form energy levels: the polynomial-termination (unconfined) route,
//! the hard-wall route at the light-cone radius, both nonrelativistic limits,
//! spectrum tables and degeneracy clustering.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    self, regime_check, rotation_shift, static_couplings, Branch, DerivedParams, ModelError, PhysicalConfig,
    QuantumNumbers, RegimeReport, Spin,
};

/// Default clustering tolerance for [`degeneracy_report`], in energy units.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("m ω₀ δ_s = 0: the unconfined quantization needs a nonzero oscillator frequency")]
    ZeroFrequency,
    #[error("ω = 0: no light-cone radius, the hard-wall condition is undefined")]
    UnboundedDomain,
    #[error("model {0} has no closed form")]
    NotClosedForm(EnergyModel),
}

impl SpectraError {
    pub fn is_nonphysical(&self) -> bool {
        matches!(self, SpectraError::Model(ModelError::NonPhysicalRadicand { .. }))
    }
}

pub type Result<T> = std::result::Result<T, SpectraError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyModel {
    Unconfined,
    UnconfinedNonrel,
    Hardwall,
    HardwallNonrel,
    OracleUnconfined,
    OracleHardwall,
}

impl EnergyModel {
    pub const CLOSED_FORMS: [EnergyModel; 4] = [
        EnergyModel::Unconfined,
        EnergyModel::UnconfinedNonrel,
        EnergyModel::Hardwall,
        EnergyModel::HardwallNonrel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EnergyModel::Unconfined => "unconfined",
            EnergyModel::UnconfinedNonrel => "unconfined_nonrel",
            EnergyModel::Hardwall => "hardwall",
            EnergyModel::HardwallNonrel => "hardwall_nonrel",
            EnergyModel::OracleUnconfined => "oracle_unconfined",
            EnergyModel::OracleHardwall => "oracle_hardwall",
        }
    }

    pub fn is_hardwall(self) -> bool {
        matches!(
            self,
            EnergyModel::Hardwall | EnergyModel::HardwallNonrel | EnergyModel::OracleHardwall
        )
    }

    pub fn is_nonrelativistic(self) -> bool {
        matches!(self, EnergyModel::UnconfinedNonrel | EnergyModel::HardwallNonrel)
    }
}

impl fmt::Display for EnergyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnergyModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            EnergyModel::Unconfined,
            EnergyModel::UnconfinedNonrel,
            EnergyModel::Hardwall,
            EnergyModel::HardwallNonrel,
            EnergyModel::OracleUnconfined,
            EnergyModel::OracleHardwall,
        ]
        .into_iter()
        .find(|m| m.as_str() == s)
        .ok_or_else(|| format!("unknown model '{s}'"))
    }
}

/// One spectral line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub nu: f64,
    pub zeta: f64,
    pub delta: f64,
    pub model: EnergyModel,
    pub regime: RegimeReport,
}

/// `4 m ω₀ δ_s (n + |ζ_s|/(2η) + ½)`, from requiring the first Kummer
/// parameter to be `−n`.
pub fn quantized_nu_unconfined(config: &PhysicalConfig, qn: &QuantumNumbers) -> Result<f64> {
    let p = DerivedParams::new(config, qn.l, qn.spin)?;
    let scale = config.mass() * config.omega0() * p.delta;
    if scale == 0.0 {
        return Err(SpectraError::ZeroFrequency);
    }
    Ok(4.0 * scale * (qn.n as f64 + p.angular_index(config.eta()) / 2.0 + 0.5))
}

/// Zero of the cosine form at `ξ₀`:
/// `ν = [nπ + |ζ_s|π/(2η) + 3π/4]² / ρ₀²`.
pub fn hardwall_nu(config: &PhysicalConfig, qn: &QuantumNumbers) -> Result<f64> {
    let p = DerivedParams::new(config, qn.l, qn.spin)?;
    let rho0 = p.rho0.ok_or(SpectraError::UnboundedDomain)?;
    let phase = hardwall_phase(qn.n, p.angular_index(config.eta()));
    Ok(phase * phase / (rho0 * rho0))
}

/// `nπ + (L/2)π + 3π/4` with `L = |ζ_s|/η`.
pub fn hardwall_phase(n: u32, angular_index: f64) -> f64 {
    (n as f64 + angular_index / 2.0 + 0.75) * PI
}

fn build_level(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    nu: f64,
    energy: f64,
    model: EnergyModel,
) -> Result<EnergyLevel> {
    let p = DerivedParams::new(config, qn.l, qn.spin)?;
    Ok(EnergyLevel {
        qn: *qn,
        energy,
        nu,
        zeta: p.zeta,
        delta: p.delta,
        model,
        regime: regime_check(config),
    })
}

/// First-order Taylor expansion of `±sqrt(m² + X) − ω(l + ½)` about `X = 0`,
/// with `X = ν − static couplings`.
fn nonrelativistic_energy(config: &PhysicalConfig, qn: &QuantumNumbers, nu: f64) -> f64 {
    let m = config.mass();
    let x = nu - static_couplings(config, qn.l, qn.spin);
    qn.branch.sign() * (m + x / (2.0 * m)) - rotation_shift(config, qn.l)
}

pub fn energy_unconfined(config: &PhysicalConfig, qn: &QuantumNumbers) -> Result<EnergyLevel> {
    let nu = quantized_nu_unconfined(config, qn)?;
    let energy = model::energy_from_nu(nu, config, qn)?;
    build_level(config, qn, nu, energy, EnergyModel::Unconfined)
}

pub fn energy_unconfined_nonrel(config: &PhysicalConfig, qn: &QuantumNumbers) -> Result<EnergyLevel> {
    let nu = quantized_nu_unconfined(config, qn)?;
    let energy = nonrelativistic_energy(config, qn, nu);
    build_level(config, qn, nu, energy, EnergyModel::UnconfinedNonrel)
}

pub fn energy_hardwall(config: &PhysicalConfig, qn: &QuantumNumbers) -> Result<EnergyLevel> {
    let nu = hardwall_nu(config, qn)?;
    let energy = model::energy_from_nu(nu, config, qn)?;
    build_level(config, qn, nu, energy, EnergyModel::Hardwall)
}

pub fn energy_hardwall_nonrel(config: &PhysicalConfig, qn: &QuantumNumbers) -> Result<EnergyLevel> {
    let nu = hardwall_nu(config, qn)?;
    let energy = nonrelativistic_energy(config, qn, nu);
    build_level(config, qn, nu, energy, EnergyModel::HardwallNonrel)
}

/// Dispatch to one of the four closed forms.
pub fn energy_level(config: &PhysicalConfig, qn: &QuantumNumbers, model: EnergyModel) -> Result<EnergyLevel> {
    match model {
        EnergyModel::Unconfined => energy_unconfined(config, qn),
        EnergyModel::UnconfinedNonrel => energy_unconfined_nonrel(config, qn),
        EnergyModel::Hardwall => energy_hardwall(config, qn),
        EnergyModel::HardwallNonrel => energy_hardwall_nonrel(config, qn),
        other => Err(SpectraError::NotClosedForm(other)),
    }
}

/// What to do with levels whose radicand is negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NonPhysicalPolicy {
    /// Abort the table with the first error.
    #[default]
    Strict,
    /// Collect the offending states in [`SpectrumTable::nonphysical`].
    Flag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRequest {
    pub n: RangeInclusive<u32>,
    pub l: RangeInclusive<i32>,
    pub spins: Vec<Spin>,
    pub model: EnergyModel,
    pub include_antiparticle: bool,
}

impl TableRequest {
    pub fn new(n_max: u32, l: RangeInclusive<i32>, spins: Vec<Spin>, model: EnergyModel) -> Self {
        Self {
            n: 0..=n_max,
            l,
            spins,
            model,
            include_antiparticle: false,
        }
    }

    fn states(&self) -> impl Iterator<Item = QuantumNumbers> + '_ {
        let branches: &[Branch] = if self.include_antiparticle {
            &[Branch::Particle, Branch::Antiparticle]
        } else {
            &[Branch::Particle]
        };
        self.spins.iter().flat_map(move |&spin| {
            self.l.clone().flat_map(move |l| {
                self.n.clone().flat_map(move |n| {
                    branches
                        .iter()
                        .map(move |&branch| QuantumNumbers { n, l, spin, branch })
                })
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumTable {
    /// Sorted by energy, ties broken by `(n, l, s, branch)`.
    pub levels: Vec<EnergyLevel>,
    pub nonphysical: Vec<(QuantumNumbers, SpectraError)>,
}

/// Total order used for every emitted table.
pub fn level_order(a: &EnergyLevel, b: &EnergyLevel) -> Ordering {
    a.energy.total_cmp(&b.energy).then_with(|| qn_order(&a.qn, &b.qn))
}

fn qn_order(a: &QuantumNumbers, b: &QuantumNumbers) -> Ordering {
    (a.n, a.l, a.spin.as_i32(), a.branch).cmp(&(b.n, b.l, b.spin.as_i32(), b.branch))
}

pub fn spectrum_table(
    config: &PhysicalConfig,
    request: &TableRequest,
    policy: NonPhysicalPolicy,
) -> Result<SpectrumTable> {
    let mut table = SpectrumTable::default();
    for qn in request.states() {
        match energy_level(config, &qn, request.model) {
            Ok(level) => table.levels.push(level),
            Err(e) if e.is_nonphysical() && policy == NonPhysicalPolicy::Flag => table.nonphysical.push((qn, e)),
            Err(e) => return Err(e),
        }
    }
    table.levels.sort_by(level_order);
    table.nonphysical.sort_by(|a, b| qn_order(&a.0, &b.0));
    Ok(table)
}

/// Levels whose sorted energies are chained by gaps no larger than the
/// tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyCluster {
    pub energy_min: f64,
    pub energy_max: f64,
    pub members: Vec<QuantumNumbers>,
}

impl DegeneracyCluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, n: u32, l: i32, spin: Spin) -> bool {
        self.members.iter().any(|q| q.n == n && q.l == l && q.spin == spin)
    }
}

pub fn degeneracy_report(levels: &[EnergyLevel], tol: f64) -> Vec<DegeneracyCluster> {
    let mut sorted: Vec<&EnergyLevel> = levels.iter().collect();
    sorted.sort_by(|a, b| level_order(a, b));

    let mut clusters: Vec<DegeneracyCluster> = Vec::new();
    for level in sorted {
        match clusters.last_mut() {
            Some(c) if level.energy - c.energy_max <= tol => {
                c.energy_max = level.energy;
                c.members.push(level.qn);
            }
            _ => clusters.push(DegeneracyCluster {
                energy_min: level.energy,
                energy_max: level.energy,
                members: vec![level.qn],
            }),
        }
    }
    clusters
}
