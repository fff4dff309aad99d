//! Momentum-space states on tensor-product grids.
//!
//! Integrals over momentum use the invariant measure `d^3p / (2 E(p))`. Each
//! grid node carries the weight `dpx dpy dpz / (2E)` with trapezoid end
//! corrections, so every norm and trace is a plain weighted sum over nodes.
//! Nodes are ordered `z` outer, `y` middle, `x` inner, and all reductions walk
//! them in that order (in parallel per `z` slab, slabs folded in index order),
//! so results do not depend on the thread count.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lorentz::gamma;
use crate::real::vec3::Vec3;
use crate::real::Real;
use crate::spin::Spinor;

pub const DEFAULT_NODES_PER_AXIS: usize = 48;
pub const DEFAULT_EXTENT_SIGMAS: f64 = 5.0;
pub const MIN_NODES_PER_AXIS: usize = 8;

/// Rest-frame packet centre `(p_x0, p_z0)` for a packet moving with speed `v1`
/// at angle `theta` from the boost axis `+z`.
pub fn momentum_from_scenario<T: Real>(v1: T, theta: T, mass: T) -> Result<(T, T)> {
    if !(v1 > T::zero() && v1 < T::one()) {
        return Err(Error::SuperLuminal(v1.as_f64()));
    }
    if !(theta >= T::zero() && theta <= T::PI()) {
        return Err(Error::Domain(format!(
            "boost angle {} outside [0, pi]",
            theta.as_f64()
        )));
    }
    if !(mass > T::zero()) {
        return Err(Error::Domain(format!(
            "mass {} must be positive",
            mass.as_f64()
        )));
    }
    let p0 = gamma(v1)?.value() * mass * v1;
    let (s, c) = theta.sin_cos();
    Ok((p0 * s, p0 * c))
}

/// Two Gaussian lobes of width `sigma` centred at `(+-p_x0, 0, p_z0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec<T> {
    pub sigma: T,
    pub px0: T,
    pub pz0: T,
    pub mass: T,
}

impl<T: Real> GaussianSpec<T> {
    pub fn new(sigma: T, px0: T, pz0: T, mass: T) -> Result<Self> {
        if !(sigma > T::zero()) || !sigma.is_finite() {
            return Err(Error::Domain(format!(
                "width {} must be positive",
                sigma.as_f64()
            )));
        }
        if !(mass > T::zero()) {
            return Err(Error::Domain(format!(
                "mass {} must be positive",
                mass.as_f64()
            )));
        }
        if !(px0 >= T::zero()) || !pz0.is_finite() {
            return Err(Error::Domain(
                "lobe centre must have p_x0 >= 0 and finite p_z0".into(),
            ));
        }
        Ok(Self {
            sigma,
            px0,
            pz0,
            mass,
        })
    }

    /// Packet for a scenario: centre speed `v1`, angle `theta` to `+z`, width
    /// `sigma_over_m`, unit mass.
    pub fn from_scenario(v1: T, theta: T, sigma_over_m: T) -> Result<Self> {
        let (px0, pz0) = momentum_from_scenario(v1, theta, T::one())?;
        Self::new(sigma_over_m, px0, pz0, T::one())
    }

    /// Un-normalized `|psi|^2`: the sum of the two lobes.
    #[inline]
    pub fn density(&self, p: Vec3<T>) -> T {
        let inv = T::one() / (T::lit(2.0) * self.sigma * self.sigma);
        let dz = p[2] - self.pz0;
        let common = (-(p[1] * p[1] + dz * dz) * inv).exp();
        let right = p[0] - self.px0;
        let left = p[0] + self.px0;
        common * ((-(right * right) * inv).exp() + (-(left * left) * inv).exp())
    }
}

/// Grid resolution and truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig<T> {
    pub nodes_per_axis: usize,
    /// Half-width of the grid around each lobe centre, in units of `sigma`.
    pub extent_sigmas: T,
}

impl<T: Real> Default for GridConfig<T> {
    fn default() -> Self {
        Self {
            nodes_per_axis: DEFAULT_NODES_PER_AXIS,
            extent_sigmas: T::lit(DEFAULT_EXTENT_SIGMAS),
        }
    }
}

/// Nodes and 1D trapezoid weights along one axis. An axis may consist of
/// several disjoint uniform segments; every segment end is a boundary node.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    boundary: Vec<bool>,
}

impl<T: Real> Axis<T> {
    /// Uniform segment `centre +- half_width` with `n >= 2` nodes.
    fn segment(centre: T, half_width: T, n: usize) -> Self {
        let last = T::from_usize(n - 1).unwrap();
        let h = T::lit(2.0) * half_width / last;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            // (2i - (n-1)) / (n-1) is exactly antisymmetric in i, so a segment
            // centred at zero is mirror symmetric to the last bit
            let k = T::from_isize(2 * i as isize - (n as isize - 1)).unwrap();
            nodes.push(centre + half_width * k / last);
            let end = i == 0 || i == n - 1;
            weights.push(if end { h * T::lit(0.5) } else { h });
        }
        let mut boundary = vec![false; n];
        boundary[0] = true;
        boundary[n - 1] = true;
        Self {
            nodes,
            weights,
            boundary,
        }
    }

    /// Mirror-symmetric axis covering `[-a - w, -a + w] U [a - w, a + w]`.
    /// Overlapping lobes share a single segment `[-a - w, a + w]`.
    fn symmetric_pair(a: T, w: T, n: usize) -> Self {
        if a <= w {
            return Self::segment(T::zero(), a + w, n);
        }
        let half = n.div_ceil(2).max(2);
        let right = Self::segment(a, w, half);
        let mut nodes: Vec<T> = right.nodes.iter().rev().map(|&x| -x).collect();
        let mut weights: Vec<T> = right.weights.iter().rev().copied().collect();
        let mut boundary: Vec<bool> = right.boundary.iter().rev().copied().collect();
        nodes.extend_from_slice(&right.nodes);
        weights.extend_from_slice(&right.weights);
        boundary.extend_from_slice(&right.boundary);
        Self {
            nodes,
            weights,
            boundary,
        }
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn min(&self) -> T {
        self.nodes[0]
    }

    pub fn max(&self) -> T {
        self.nodes[self.nodes.len() - 1]
    }
}

/// Tensor-product momentum grid with invariant-measure weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid<T> {
    axes: [Axis<T>; 3],
    mass: T,
    energy: Vec<T>,
    weight: Vec<T>,
}

impl<T: Real> MomentumGrid<T> {
    fn from_axes(axes: [Axis<T>; 3], mass: T) -> Self {
        let [x, y, z] = &axes;
        let n = x.len() * y.len() * z.len();
        let mut energy = Vec::with_capacity(n);
        let mut weight = Vec::with_capacity(n);
        for (pz, wz) in z.nodes.iter().zip(&z.weights) {
            for (py, wy) in y.nodes.iter().zip(&y.weights) {
                for (px, wx) in x.nodes.iter().zip(&x.weights) {
                    let e = (mass * mass + *px * *px + *py * *py + *pz * *pz).sqrt();
                    energy.push(e);
                    weight.push(*wx * *wy * *wz / (T::lit(2.0) * e));
                }
            }
        }
        Self {
            axes,
            mass,
            energy,
            weight,
        }
    }

    pub fn axis(&self, k: usize) -> &Axis<T> {
        &self.axes[k]
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// `(nx, ny, nz)`.
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.axes[0].len(), self.axes[1].len(), self.axes[2].len())
    }

    pub fn len(&self) -> usize {
        self.weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weight.is_empty()
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        let (nx, ny, _) = self.shape();
        (iz * ny + iy) * nx + ix
    }

    #[inline]
    pub fn split_index(&self, idx: usize) -> (usize, usize, usize) {
        let (nx, ny, _) = self.shape();
        (idx % nx, (idx / nx) % ny, idx / (nx * ny))
    }

    #[inline]
    pub fn node(&self, idx: usize) -> Vec3<T> {
        let (ix, iy, iz) = self.split_index(idx);
        [
            self.axes[0].nodes[ix],
            self.axes[1].nodes[iy],
            self.axes[2].nodes[iz],
        ]
    }

    /// On-shell energies, one per node.
    pub fn energies(&self) -> &[T] {
        &self.energy
    }

    /// Invariant-measure weights `d^3p / (2E)`, one per node.
    pub fn weights(&self) -> &[T] {
        &self.weight
    }

    /// Whether a node lies on the outermost layer of any axis segment.
    pub fn is_boundary(&self, idx: usize) -> bool {
        let (ix, iy, iz) = self.split_index(idx);
        self.axes[0].boundary[ix] || self.axes[1].boundary[iy] || self.axes[2].boundary[iz]
    }

    /// Number of nodes in one `z` slab.
    pub fn slab_len(&self) -> usize {
        self.axes[0].len() * self.axes[1].len()
    }

    /// Deterministic `sum_nodes f(idx)`.
    pub fn sum_by<F>(&self, f: F) -> T
    where
        F: Fn(usize) -> T + Sync,
    {
        let slab = self.slab_len();
        let partials: Vec<T> = (0..self.axes[2].len())
            .into_par_iter()
            .map(|iz| {
                let start = iz * slab;
                let mut acc = T::zero();
                for idx in start..start + slab {
                    acc += f(idx);
                }
                acc
            })
            .collect();
        partials.into_iter().fold(T::zero(), |a, b| a + b)
    }

    /// `sum_nodes w(p) f(p)`, the quadrature of `int f dmu`.
    pub fn integrate<F>(&self, f: F) -> T
    where
        F: Fn(Vec3<T>) -> T + Sync,
    {
        self.sum_by(|idx| self.weight[idx] * f(self.node(idx)))
    }
}

/// Grid around both lobes of `spec` with the default `+-5 sigma` extent.
pub fn build_grid<T: Real>(
    spec: &GaussianSpec<T>,
    nodes_per_axis: usize,
) -> Result<MomentumGrid<T>> {
    build_grid_with(
        spec,
        &GridConfig {
            nodes_per_axis,
            extent_sigmas: T::lit(DEFAULT_EXTENT_SIGMAS),
        },
    )
}

/// Uniform grid over `[-p_x0 - w, p_x0 + w] x [-w, w] x [p_z0 - w, p_z0 + w]`
/// with `w = extent_sigmas * sigma`. When the two lobes are further apart than
/// `2w` the `x` axis keeps only the two windows `+-p_x0 +- w`, each with half of
/// the nodes (rounded up), so narrow packets stay resolved.
pub fn build_grid_with<T: Real>(
    spec: &GaussianSpec<T>,
    config: &GridConfig<T>,
) -> Result<MomentumGrid<T>> {
    let n = config.nodes_per_axis;
    if n < MIN_NODES_PER_AXIS {
        return Err(Error::Configuration(format!(
            "nodes_per_axis = {n} is below the minimum of {MIN_NODES_PER_AXIS}"
        )));
    }
    if !(config.extent_sigmas > T::zero()) {
        return Err(Error::Configuration("grid extent must be positive".into()));
    }
    let w = config.extent_sigmas * spec.sigma;
    let axes = [
        Axis::symmetric_pair(spec.px0, w, n),
        Axis::segment(T::zero(), w, n),
        Axis::segment(spec.pz0, w, n),
    ];
    Ok(MomentumGrid::from_axes(axes, spec.mass))
}

/// Spin part of a wavefunction.
#[derive(Debug, Clone, PartialEq)]
pub enum SpinField<T> {
    /// The same spinor at every momentum: a spin-momentum product state.
    Product(Spinor<T>),
    /// One spinor per grid node.
    PerNode(Vec<Spinor<T>>),
}

/// `psi_lambda(p) = envelope(p) chi_lambda(p)` sampled on a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction<T> {
    grid: MomentumGrid<T>,
    envelope: Vec<Complex<T>>,
    spin: SpinField<T>,
    normalization: T,
}

impl<T: Real> WaveFunction<T> {
    pub fn new(
        grid: MomentumGrid<T>,
        envelope: Vec<Complex<T>>,
        spin: SpinField<T>,
    ) -> Result<Self> {
        if envelope.len() != grid.len() {
            return Err(Error::Configuration(format!(
                "{} amplitudes for {} grid nodes",
                envelope.len(),
                grid.len()
            )));
        }
        if let SpinField::PerNode(s) = &spin {
            if s.len() != grid.len() {
                return Err(Error::Configuration(format!(
                    "{} spinors for {} grid nodes",
                    s.len(),
                    grid.len()
                )));
            }
        }
        Ok(Self {
            grid,
            envelope,
            spin,
            normalization: T::one(),
        })
    }

    pub fn grid(&self) -> &MomentumGrid<T> {
        &self.grid
    }

    pub fn envelope(&self) -> &[Complex<T>] {
        &self.envelope
    }

    pub fn spin(&self) -> &SpinField<T> {
        &self.spin
    }

    /// Spinor at node `idx`.
    #[inline]
    pub fn spinor(&self, idx: usize) -> Spinor<T> {
        match &self.spin {
            SpinField::Product(chi) => *chi,
            SpinField::PerNode(v) => v[idx],
        }
    }

    /// The constant `N` the un-normalized density was divided by (1 for
    /// wavefunctions built directly from amplitudes).
    pub fn normalization(&self) -> T {
        self.normalization
    }

    /// Copy with every amplitude multiplied by `factor`.
    pub fn scaled(&self, factor: Complex<T>) -> Self {
        let mut out = self.clone();
        for a in &mut out.envelope {
            *a *= factor;
        }
        out
    }

    /// `w(p) sum_lambda |psi_lambda(p)|^2` at node `idx`.
    #[inline]
    pub fn probability(&self, idx: usize) -> T {
        self.grid.weight[idx] * self.envelope[idx].norm_sqr() * self.spinor(idx).norm_sqr()
    }
}

/// `sum_p sum_lambda |psi_lambda(p)|^2 w(p)`.
pub fn norm<T: Real>(wf: &WaveFunction<T>) -> T {
    wf.grid.sum_by(|idx| wf.probability(idx))
}

/// Checks that `grid` reaches at least `5 sigma` beyond each lobe centre.
pub fn check_coverage<T: Real>(spec: &GaussianSpec<T>, grid: &MomentumGrid<T>) -> Result<()> {
    let w = T::lit(DEFAULT_EXTENT_SIGMAS) * spec.sigma;
    let slack = T::tol(1e-12) * (T::one() + spec.px0.abs() + spec.pz0.abs() + w);
    let wants = [
        ("px", -spec.px0 - w, spec.px0 + w),
        ("py", -w, w),
        ("pz", spec.pz0 - w, spec.pz0 + w),
    ];
    for (k, (name, lo, hi)) in wants.into_iter().enumerate() {
        let axis = grid.axis(k);
        if axis.min() > lo + slack || axis.max() < hi - slack {
            return Err(Error::Configuration(format!(
                "{name} grid [{}, {}] does not cover [{}, {}]",
                axis.min().as_f64(),
                axis.max().as_f64(),
                lo.as_f64(),
                hi.as_f64()
            )));
        }
    }
    Ok(())
}

/// Two-lobe Gaussian with spin `|0>`:
/// `psi(p) = sqrt(exp(-(py^2 + (pz - pz0)^2) / 2s^2) [exp(-(px - px0)^2 / 2s^2) + exp(-(px + px0)^2 / 2s^2)] / N)`
/// with `N` fixed by the quadrature so that [`norm`] is 1.
pub fn x_symmetric_gaussian<T: Real>(
    spec: &GaussianSpec<T>,
    grid: &MomentumGrid<T>,
) -> Result<WaveFunction<T>> {
    check_coverage(spec, grid)?;
    if (grid.mass() - spec.mass).abs() > T::tol(1e-12) * spec.mass {
        return Err(Error::Configuration("grid and packet masses differ".into()));
    }
    let density: Vec<T> = (0..grid.len())
        .into_par_iter()
        .map(|idx| spec.density(grid.node(idx)))
        .collect();
    let normalization = grid.sum_by(|idx| grid.weight[idx] * density[idx]);
    if !(normalization > T::zero()) {
        return Err(Error::Configuration(
            "packet has no weight on the grid".into(),
        ));
    }
    let envelope = density
        .into_iter()
        .map(|d| Complex::new((d / normalization).sqrt(), T::zero()))
        .collect();
    Ok(WaveFunction {
        grid: grid.clone(),
        envelope,
        spin: SpinField::Product(Spinor::z_up()),
        normalization,
    })
}
