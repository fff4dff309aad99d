//! Spin-momentum entanglement of a single massive spin-1/2 particle seen from
//! Lorentz-boosted frames.
//!
//! The crate is organised bottom-up:
//!
//! - [`lorentz`]: boosts, composition, polar decomposition and the closed-form
//!   Wigner rotation angle.
//! - [`spin`]: the SU(2) Wigner rotation of a spinor under a boost along `+z`,
//!   Bloch vectors and von Neumann entropy.
//! - [`wavepacket`]: momentum grids with the invariant measure `d^3p / 2E` and
//!   the two-lobe ("x-symmetric") Gaussian state.
//! - [`engine`]: the reduced spin density matrix of a boosted wavepacket and
//!   entropy-versus-rapidity curves.
//! - [`discrete`]: finite spin fields over a handful of momenta, used as an
//!   analytic oracle for the continuum engine.
//! - [`cli`]: configuration and output for the `wigner-spin` binary.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`, which is what the binary uses.

// `!(x > 0)` style checks are deliberate: they reject NaN. Small matrices
// read better with explicit indices.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod discrete;
pub mod engine;
pub mod error;
pub mod lorentz;
pub mod real;
pub mod spin;
pub mod wavepacket;

pub use error::{Error, Result};
pub use real::Real;

pub type ThreeVelocity64 = lorentz::ThreeVelocity<f64>;
pub type BoostPair64 = lorentz::BoostPair<f64>;
pub type FourMomentum64 = lorentz::FourMomentum<f64>;
pub type LorentzTransform64 = lorentz::LorentzTransform<f64>;
pub type Spinor64 = spin::Spinor<f64>;
pub type SpinorRotation64 = spin::SpinorRotation<f64>;
pub type DensityMatrix64 = spin::DensityMatrix<f64>;
pub type GaussianSpec64 = wavepacket::GaussianSpec<f64>;
pub type MomentumGrid64 = wavepacket::MomentumGrid<f64>;
pub type WaveFunction64 = wavepacket::WaveFunction<f64>;
pub type BoostScenario64 = engine::BoostScenario<f64>;
pub type EntropyCurve64 = engine::EntropyCurve<f64>;
pub type DiscreteSpinField64 = discrete::DiscreteSpinField<f64>;

pub type FourMomentum32 = lorentz::FourMomentum<f32>;
pub type Spinor32 = spin::Spinor<f32>;
pub type DensityMatrix32 = spin::DensityMatrix<f32>;
pub type WaveFunction32 = wavepacket::WaveFunction<f32>;
pub type EntropyCurve32 = engine::EntropyCurve<f32>;
