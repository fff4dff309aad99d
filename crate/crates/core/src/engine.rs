//! Reduced spin state of a boosted wavepacket and entropy-versus-rapidity
//! curves.
//!
//! The boost is always along `+z`. Because the measure `d^3p / 2E` is Lorentz
//! invariant, the trace over boosted momenta is evaluated in the rest-frame
//! momentum variable: every grid node `q` contributes
//! `w(q) |psi(q)|^2 U(q) |chi(q)><chi(q)| U(q)^dagger` with `U(q)` the Wigner
//! spinor of `q`. No resampling onto a boosted grid is needed.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::real::Real;
use crate::spin::{von_neumann_entropy, DensityMatrix, WignerKernel};
use crate::wavepacket::{
    build_grid, norm, x_symmetric_gaussian, GaussianSpec, SpinField, WaveFunction,
};

pub const DEFAULT_XI_MAX: f64 = 12.0;
pub const DEFAULT_XI_STEPS: usize = 60;
pub const DEFAULT_TAIL_FRACTION: f64 = 0.25;
pub const DEFAULT_SATURATION_TOL: f64 = 1e-3;

/// `steps` uniformly spaced rapidities from `min` to `max` inclusive.
pub fn xi_grid<T: Real>(min: T, max: T, steps: usize) -> Result<Vec<T>> {
    if steps < 2 || !(max > min) || min < T::zero() {
        return Err(Error::Configuration(format!(
            "rapidity grid needs 0 <= min < max and steps >= 2 (got {}, {}, {steps})",
            min.as_f64(),
            max.as_f64()
        )));
    }
    let last = T::from_usize(steps - 1).unwrap();
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                max
            } else {
                min + (max - min) * T::from_usize(i).unwrap() / last
            }
        })
        .collect())
}

/// One boost geometry: packet centre speed `v1` at angle `theta` from `+z`,
/// width `sigma_over_m`, swept over `xi_values`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoostScenario<T> {
    pub v1: T,
    pub theta: T,
    pub sigma_over_m: T,
    pub xi_values: Vec<T>,
    pub nodes_per_axis: usize,
}

impl<T: Real> BoostScenario<T> {
    pub fn new(
        v1: T,
        theta: T,
        sigma_over_m: T,
        xi_values: Vec<T>,
        nodes_per_axis: usize,
    ) -> Result<Self> {
        let s = Self {
            v1,
            theta,
            sigma_over_m,
            xi_values,
            nodes_per_axis,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v1 > T::zero() && self.v1 < T::one()) {
            return Err(Error::SuperLuminal(self.v1.as_f64()));
        }
        if !(self.theta > T::zero() && self.theta < T::PI()) {
            return Err(Error::Domain(format!(
                "boost angle {} outside (0, pi)",
                self.theta.as_f64()
            )));
        }
        if !(self.sigma_over_m > T::zero()) {
            return Err(Error::Domain("sigma/m must be positive".into()));
        }
        match self.xi_values.first() {
            None => return Err(Error::Configuration("no rapidities to sample".into())),
            Some(&x) if x < T::zero() => {
                return Err(Error::Configuration("rapidities must be >= 0".into()))
            }
            _ => {}
        }
        if !self.xi_values.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::Configuration(
                "rapidities must be strictly increasing".into(),
            ));
        }
        Ok(())
    }

    /// The rest-frame packet of this scenario (unit mass).
    pub fn packet(&self) -> Result<GaussianSpec<T>> {
        GaussianSpec::from_scenario(self.v1, self.theta, self.sigma_over_m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<T> {
    pub xi: T,
    /// `tanh(xi)`.
    pub v2: T,
    pub entropy: T,
    pub density: DensityMatrix<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyCurve<T> {
    pub points: Vec<CurvePoint<T>>,
    pub scenario: BoostScenario<T>,
}

/// Spin state `rho_S` seen from a frame boosted by rapidity `xi` along `+z`.
pub fn boosted_spin_density<T: Real>(wf: &WaveFunction<T>, xi: T) -> Result<DensityMatrix<T>> {
    let total = norm(wf);
    if (total - T::one()).abs() > T::lit(1e-4) {
        return Err(Error::Precondition(format!(
            "wavefunction norm {} differs from 1",
            total.as_f64()
        )));
    }
    let grid = wf.grid();
    let kernel = WignerKernel::new(xi, grid.mass())?;
    let slab = grid.slab_len();
    let nz = grid.shape().2;
    let product = matches!(wf.spin(), SpinField::Product(_));
    let chi0 = wf.spinor(0);

    // per-slab partial sums of (rho_00, rho_11, rho_01), folded in slab order
    let partials: Vec<(T, T, Complex<T>)> = (0..nz)
        .into_par_iter()
        .map(|iz| {
            let (mut up, mut down, mut off) = (T::zero(), T::zero(), Complex::default());
            for idx in iz * slab..(iz + 1) * slab {
                let q = wf.grid().weights()[idx] * wf.envelope()[idx].norm_sqr();
                if q == T::zero() {
                    continue;
                }
                let chi = if product { chi0 } else { wf.spinor(idx) };
                let u = kernel.rotation(grid.energies()[idx], grid.node(idx));
                let rotated = u.apply(&chi);
                up += q * rotated.up.norm_sqr();
                down += q * rotated.down.norm_sqr();
                off += rotated.up * rotated.down.conj() * q;
            }
            (up, down, off)
        })
        .collect();
    let (up, down, off) = partials
        .into_iter()
        .fold((T::zero(), T::zero(), Complex::default()), |a, b| {
            (a.0 + b.0, a.1 + b.1, a.2 + b.2)
        });
    DensityMatrix::new([
        [Complex::new(up, T::zero()), off],
        [off.conj(), Complex::new(down, T::zero())],
    ])
}

/// Entropy of the boosted spin state at each rapidity, in input order.
pub fn curve_points<T: Real>(wf: &WaveFunction<T>, xi_values: &[T]) -> Result<Vec<CurvePoint<T>>> {
    xi_values
        .par_iter()
        .map(|&xi| {
            let density = boosted_spin_density(wf, xi)?;
            let entropy = von_neumann_entropy(&density)?;
            Ok(CurvePoint {
                xi,
                v2: xi.tanh(),
                entropy,
                density,
            })
        })
        .collect()
}

/// Builds the scenario's packet once and evaluates the entropy curve.
pub fn entropy_curve<T: Real>(scenario: &BoostScenario<T>) -> Result<EntropyCurve<T>> {
    scenario.validate()?;
    let spec = scenario.packet()?;
    let grid = build_grid(&spec, scenario.nodes_per_axis)?;
    let wf = x_symmetric_gaussian(&spec, &grid)?;
    Ok(EntropyCurve {
        points: curve_points(&wf, &scenario.xi_values)?,
        scenario: scenario.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Saturation<T> {
    /// The tail varies by `spread <= tol`; `level` is its mean.
    Saturated {
        level: T,
        spread: T,
    },
    NotSaturated {
        spread: T,
    },
}

impl<T: Real> Saturation<T> {
    pub fn level(&self) -> Option<T> {
        match *self {
            Saturation::Saturated { level, .. } => Some(level),
            Saturation::NotSaturated { .. } => None,
        }
    }
}

/// Tests the trailing `tail_fraction` of the points for flatness.
pub fn saturation_level<T: Real>(
    curve: &EntropyCurve<T>,
    tail_fraction: T,
    tol: T,
) -> Result<Saturation<T>> {
    let n = curve.points.len();
    if n < 8 {
        return Err(Error::Configuration(format!(
            "saturation needs >= 8 points, got {n}"
        )));
    }
    if !(tail_fraction > T::zero() && tail_fraction < T::one()) {
        return Err(Error::Configuration(
            "tail fraction must lie in (0, 1)".into(),
        ));
    }
    let k = (tail_fraction * T::from_usize(n).unwrap())
        .ceil()
        .to_usize()
        .unwrap_or(n)
        .clamp(2, n);
    let tail = &curve.points[n - k..];
    let (lo, hi) = tail
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), p| {
            (lo.min(p.entropy), hi.max(p.entropy))
        });
    let spread = hi - lo;
    if spread <= tol {
        let level = tail.iter().map(|p| p.entropy).sum::<T>() / T::from_usize(k).unwrap();
        Ok(Saturation::Saturated { level, spread })
    } else {
        Ok(Saturation::NotSaturated { spread })
    }
}

/// `(xi*, S*)` at maximum entropy; ties go to the smallest `xi`.
pub fn find_peak<T: Real>(curve: &EntropyCurve<T>) -> Option<(T, T)> {
    let mut best: Option<&CurvePoint<T>> = None;
    for p in &curve.points {
        match best {
            Some(b) if p.entropy <= b.entropy => {}
            _ => best = Some(p),
        }
    }
    best.map(|p| (p.xi, p.entropy))
}
