//! Numerical oracles for the closed forms: a finite-volume eigensolver for
//! the radial equation, exact zeros of the hard-wall condition located on
//! `₁F₁` itself, and wavefunction sampling with normalization.

mod radial;
mod tridiag;
mod wavefunction;

use serde::Serialize;
use thiserror::Error;

use crate::kummer::{kummer, KummerError};
use crate::model::{DerivedParams, ModelError, PhysicalConfig, QuantumNumbers};

pub use radial::{observed_order, richardson, Discretization, RadialGrid};
pub use tridiag::{count_sign_changes, SymTridiagonal};
pub use wavefunction::{
    evaluate_wavefunction, normalize_and_tail, unconfined_extent, uniform_grid, WavefunctionSample,
};

/// `m ω₀ δ_s ρ²` at the outer cutoff of the unconfined domain.
pub const UNCONFINED_CUTOFF_XI: f64 = 80.0;
pub const MIN_GRID_POINTS: usize = 200;
/// Samples used to count nodes of located hard-wall eigenfunctions.
const NODE_SAMPLES: usize = 2000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Kummer(#[from] KummerError),
    #[error("grid too coarse: estimated relative error {estimate:e} exceeds {tolerance:e}")]
    GridTooCoarse { estimate: f64, tolerance: f64 },
    #[error("ω = 0: no light-cone radius for the hard-wall problem")]
    UnboundedDomain,
    #[error("m ω₀ δ_s = 0: operation needs a nonzero oscillator frequency")]
    ZeroFrequency,
    #[error("found {found} of {requested} sign changes before λ = {lambda_cap}")]
    NoSignChange {
        found: usize,
        requested: usize,
        lambda_cap: f64,
    },
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("wavefunction sample has zero norm")]
    ZeroNorm,
}

pub type Result<T> = std::result::Result<T, OracleError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleDomain {
    /// `[0, ρ_max]` with `m ω₀ δ_s ρ_max² = 80`.
    Unconfined,
    /// `[0, ρ₀]`, `R(ρ₀) = 0`.
    DirichletAtRho0,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    /// Strictly increasing eigenvalues `ν`.
    pub nus: Vec<f64>,
    pub grid_points: usize,
    pub domain: OracleDomain,
    /// Observed order on the lowest level whose grid dependence rises above
    /// round-off; `None` when no level qualifies or not applicable.
    pub convergence_order: Option<f64>,
    /// Per-level error estimate: relative Richardson correction for the
    /// eigensolver, `|₁F₁|` at the located root for the root finder.
    pub residuals: Vec<f64>,
    /// Interior nodes of each eigenfunction.
    pub node_counts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSettings {
    pub grid_points: usize,
    /// Largest tolerated Richardson correction, relative.
    pub tolerance: f64,
}

impl Default for EigenSettings {
    fn default() -> Self {
        Self {
            grid_points: 2000,
            tolerance: 1e-3,
        }
    }
}

impl EigenSettings {
    pub fn with_grid(grid_points: usize) -> Self {
        Self {
            grid_points,
            ..Self::default()
        }
    }
}

/// Lowest `count` eigenvalues `ν` of the radial operator for the `(l, s)` of
/// `qn` (`qn.n` is ignored).
///
/// Solves on `N`, `N/2` and `N/4` intervals (`N` rounded up to a multiple of
/// four), reports the Richardson value from the `N`/`N/2` pair and the
/// observed order from all three.
pub fn radial_operator_eigenvalues(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    count: usize,
    domain: OracleDomain,
    settings: EigenSettings,
) -> Result<OracleResult> {
    if count == 0 {
        return Err(OracleError::InvalidRequest("count must be >= 1".into()));
    }
    if settings.grid_points < MIN_GRID_POINTS {
        return Err(OracleError::InvalidRequest(format!(
            "grid_points must be >= {MIN_GRID_POINTS}"
        )));
    }
    let params = DerivedParams::new(config, qn.l, qn.spin)?;
    let omega_scale = config.mass() * config.omega0() * params.delta;
    let weight_power = 2.0 * params.angular_index(config.eta()) + 1.0;

    // Length scale ℓ: x = ρ/ℓ, ν = μ/ℓ².
    let (length, potential, x_max) = match domain {
        OracleDomain::Unconfined => {
            if omega_scale == 0.0 {
                return Err(OracleError::ZeroFrequency);
            }
            (1.0 / omega_scale.sqrt(), 1.0, UNCONFINED_CUTOFF_XI.sqrt())
        }
        OracleDomain::DirichletAtRho0 => {
            let rho0 = params.rho0.ok_or(OracleError::UnboundedDomain)?;
            let xi0 = omega_scale * rho0 * rho0;
            (rho0, xi0 * xi0, 1.0)
        }
    };

    let n = settings.grid_points.div_ceil(4) * 4;
    let grid = RadialGrid {
        weight_power,
        potential,
        x_max,
        intervals: n,
    };
    let fine_disc = grid.discretize();
    let fine = fine_disc.matrix.lowest_eigenvalues(count);
    let medium = grid.with_intervals(n / 2).eigenvalues(count);
    let coarse = grid.with_intervals(n / 4).eigenvalues(count);

    let to_nu = 1.0 / (length * length);
    let mut nus = Vec::with_capacity(count);
    let mut residuals = Vec::with_capacity(count);
    let mut node_counts = Vec::with_capacity(count);
    for k in 0..fine.len() {
        let extrap = richardson(fine[k], medium[k]);
        let estimate = ((extrap - fine[k]) / extrap).abs();
        if estimate.is_nan() || estimate > settings.tolerance {
            return Err(OracleError::GridTooCoarse {
                estimate,
                tolerance: settings.tolerance,
            });
        }
        nus.push(extrap * to_nu);
        residuals.push(estimate);
        node_counts.push(fine_disc.node_count(fine[k]));
    }

    Ok(OracleResult {
        nus,
        grid_points: n,
        domain,
        convergence_order: (0..fine.len()).find_map(|k| observed_order(coarse[k], medium[k], fine[k])),
        residuals,
        node_counts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootScan {
    /// Step in `λ = ν/(4 m ω₀ δ_s)`.
    pub step: f64,
    pub lambda_cap: f64,
    /// Bisection stops once the bracket is this narrow in `λ`.
    pub tolerance: f64,
}

impl Default for RootScan {
    fn default() -> Self {
        Self {
            step: 0.25,
            lambda_cap: 1e4,
            tolerance: 1e-12,
        }
    }
}

/// First `count` values of `ν` at which
/// `₁F₁(|ζ_s|/(2η) + ½ − ν/(4mω₀δ_s), |ζ_s|/η + 1; ξ₀) = 0`.
pub fn exact_hardwall_roots(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    count: usize,
    scan: RootScan,
) -> Result<OracleResult> {
    let params = DerivedParams::new(config, qn.l, qn.spin)?;
    let rho0 = params.rho0.ok_or(OracleError::UnboundedDomain)?;
    let omega_scale = config.mass() * config.omega0() * params.delta;
    if omega_scale == 0.0 {
        return Err(OracleError::ZeroFrequency);
    }
    if !(scan.step > 0.0 && scan.tolerance > 0.0) {
        return Err(OracleError::InvalidRequest(
            "scan step and tolerance must be > 0".into(),
        ));
    }
    let xi0 = omega_scale * rho0 * rho0;
    let l_index = params.angular_index(config.eta());
    let a0 = l_index / 2.0 + 0.5;
    let b = l_index + 1.0;
    let f = |lambda: f64| kummer(a0 - lambda, b, xi0);

    let mut lambdas = Vec::with_capacity(count);
    let mut residuals = Vec::with_capacity(count);
    let mut lo = 0.0;
    let mut f_lo = f(lo)?;
    let mut k = 0u64;
    while lambdas.len() < count {
        k += 1;
        let hi = k as f64 * scan.step;
        if hi > scan.lambda_cap {
            return Err(OracleError::NoSignChange {
                found: lambdas.len(),
                requested: count,
                lambda_cap: scan.lambda_cap,
            });
        }
        let f_hi = f(hi)?;
        if f_hi == 0.0 {
            lambdas.push(hi);
            residuals.push(0.0);
        } else if f_lo != 0.0 && f_lo.signum() != f_hi.signum() {
            let root = bisect(&f, lo, hi, f_lo, scan.tolerance)?;
            lambdas.push(root);
            residuals.push(f(root)?.abs());
        }
        lo = hi;
        f_lo = f_hi;
    }

    let to_nu = 4.0 * omega_scale;
    let nus: Vec<f64> = lambdas.iter().map(|l| l * to_nu).collect();
    // Nodes strictly inside (0, ρ₀).
    let interior: Vec<f64> = (1..=NODE_SAMPLES)
        .map(|i| rho0 * i as f64 / (NODE_SAMPLES + 1) as f64)
        .collect();
    let node_counts = nus
        .iter()
        .map(|&nu| {
            let sample = evaluate_wavefunction(config, qn, nu, &interior)?;
            Ok(count_sign_changes(&sample.values, 1e-12))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleResult {
        nus,
        grid_points: 0,
        domain: OracleDomain::DirichletAtRho0,
        convergence_order: None,
        residuals,
        node_counts,
    })
}

fn bisect<F>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64, tolerance: f64) -> Result<f64>
where
    F: Fn(f64) -> std::result::Result<f64, KummerError>,
{
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
