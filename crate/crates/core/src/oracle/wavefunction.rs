//! Radial wavefunctions `R_s(ξ) = e^{−ξ/2} ξ^{|ζ_s|/(2η)} ₁F₁(A, B; ξ)` with
//! `ξ = m ω₀ δ_s ρ²`, and their normalization under the measure `ρ dρ`.

use serde::Serialize;

use super::{OracleError, Result, UNCONFINED_CUTOFF_XI};
use crate::kummer::{kummer, kummer_polynomial};
use crate::model::{DerivedParams, PhysicalConfig, QuantumNumbers};

/// `A` closer than this to a nonpositive integer is treated as terminating.
/// Closed-form `ν` carries round-off that would otherwise reintroduce an
/// `e^{ξ}` tail of size `~ε·e^{ξ}` at large `ξ`.
const POLYNOMIAL_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionSample {
    pub rho_grid: Vec<f64>,
    pub values: Vec<f64>,
    /// `sqrt(∫|R|² ρ dρ)` of the raw samples; `1` before normalization.
    pub norm: f64,
    /// Fraction of `∫|R|² ρ dρ` beyond `ρ₀`; `None` until normalized.
    pub tail_mass: Option<f64>,
}

/// `ρ` at which `m ω₀ δ_s ρ² = 80` for the `(l, s)` of `qn`.
pub fn unconfined_extent(config: &PhysicalConfig, qn: &QuantumNumbers) -> Result<f64> {
    let p = DerivedParams::new(config, qn.l, qn.spin)?;
    let scale = config.mass() * config.omega0() * p.delta;
    if scale == 0.0 {
        return Err(OracleError::ZeroFrequency);
    }
    Ok((UNCONFINED_CUTOFF_XI / scale).sqrt())
}

/// `samples` points `ρ_i = i ρ_max / samples`, `i = 1..=samples`.
pub fn uniform_grid(rho_max: f64, samples: usize) -> Vec<f64> {
    (1..=samples).map(|i| rho_max * i as f64 / samples as f64).collect()
}

pub fn evaluate_wavefunction(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    nu: f64,
    rho_grid: &[f64],
) -> Result<WavefunctionSample> {
    if rho_grid.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
        return Err(OracleError::InvalidRequest("grid must be positive and finite".into()));
    }
    if rho_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(OracleError::InvalidRequest("grid must be strictly increasing".into()));
    }
    let p = DerivedParams::new(config, qn.l, qn.spin)?;
    let scale = config.mass() * config.omega0() * p.delta;
    if scale == 0.0 {
        return Err(OracleError::ZeroFrequency);
    }
    let l_index = p.angular_index(config.eta());
    let a = l_index / 2.0 + 0.5 - nu / (4.0 * scale);
    let b = l_index + 1.0;
    let terminating = (a.round() <= 0.0 && (a - a.round()).abs() < POLYNOMIAL_SNAP).then(|| (-a.round()) as u32);

    let values = rho_grid
        .iter()
        .map(|&rho| {
            let xi = scale * rho * rho;
            let f = match terminating {
                Some(n) => kummer_polynomial(n, b, xi)?,
                None => kummer(a, b, xi)?,
            };
            Ok((-xi / 2.0).exp() * xi.powf(l_index / 2.0) * f)
        })
        .collect::<Result<Vec<f64>>>()?;

    Ok(WavefunctionSample {
        rho_grid: rho_grid.to_vec(),
        values,
        norm: 1.0,
        tail_mass: None,
    })
}

/// Normalizes so that `∫₀^∞ |R|² ρ dρ = 1` by the composite trapezoidal rule
/// over `[0, ρ_last]` (the integrand vanishes at `ρ = 0`), and reports the
/// fraction of that integral lying beyond `rho0`. Pass `f64::INFINITY` for
/// an unbounded domain.
pub fn normalize_and_tail(sample: &WavefunctionSample, rho0: f64) -> Result<WavefunctionSample> {
    let mut xs = Vec::with_capacity(sample.rho_grid.len() + 1);
    let mut fs = Vec::with_capacity(sample.rho_grid.len() + 1);
    xs.push(0.0);
    fs.push(0.0);
    for (&r, &v) in sample.rho_grid.iter().zip(&sample.values) {
        xs.push(r);
        fs.push(v * v * r);
    }

    let mut total = 0.0;
    let mut tail = 0.0;
    for i in 1..xs.len() {
        let (x0, x1, f0, f1) = (xs[i - 1], xs[i], fs[i - 1], fs[i]);
        let area = 0.5 * (f0 + f1) * (x1 - x0);
        total += area;
        if x0 >= rho0 {
            tail += area;
        } else if x1 > rho0 {
            let f_cut = f0 + (f1 - f0) * (rho0 - x0) / (x1 - x0);
            tail += 0.5 * (f_cut + f1) * (x1 - rho0);
        }
    }
    if !(total.is_finite() && total > 0.0) {
        return Err(OracleError::ZeroNorm);
    }

    let norm = total.sqrt();
    Ok(WavefunctionSample {
        rho_grid: sample.rho_grid.clone(),
        values: sample.values.iter().map(|v| v / norm).collect(),
        norm: norm * sample.norm,
        tail_mass: Some((tail / total).clamp(0.0, 1.0)),
    })
}
