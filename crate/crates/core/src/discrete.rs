//! Spin fields over a handful of momenta.
//!
//! Tracing out momentum turns the spin state into a convex sum of projectors,
//! one per momentum, each rotated by its own Wigner rotation. With a few
//! momenta this is exact and cheap, and the two-point field has a closed form
//! `H2((1 + |cos w|) / 2)`, which makes it the reference for the continuum
//! engine.

use crate::error::{Error, Result};
use crate::lorentz::{wigner_angle_from_rapidities, wigner_angle_limit, FourMomentum};
use crate::real::vec3;
use crate::real::Real;
use crate::spin::{
    binary_entropy, project, su2_from_axis_angle, von_neumann_entropy, wigner_spinor,
    DensityMatrix, Spinor,
};
use crate::wavepacket::momentum_from_scenario;

/// One momentum of a discrete field with its weight and spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSite<T> {
    pub momentum: FourMomentum<T>,
    pub weight: T,
    pub spinor: Spinor<T>,
}

/// Weighted spins at finitely many momenta; weights sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSpinField<T> {
    sites: Vec<SpinSite<T>>,
}

impl<T: Real> DiscreteSpinField<T> {
    pub fn new(sites: Vec<SpinSite<T>>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::Domain("field needs at least one site".into()));
        }
        if sites.iter().any(|s| s.weight < T::zero()) {
            return Err(Error::Domain("weights must be non-negative".into()));
        }
        let total: T = sites.iter().map(|s| s.weight).sum();
        if (total - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::WeightSum(total.as_f64()));
        }
        for s in &sites {
            if (s.spinor.norm_sqr() - T::one()).abs() > T::tol(1e-12) {
                return Err(Error::Domain("site spinors must be normalized".into()));
            }
        }
        Ok(Self { sites })
    }

    pub fn sites(&self) -> &[SpinSite<T>] {
        &self.sites
    }

    /// Equal-weight z-up spins at `(+-p_x0, 0, p_z0)` for a packet of speed `v1`
    /// at angle `theta` to the boost axis: the narrow-packet limit of the
    /// two-lobe Gaussian.
    pub fn two_point(v1: T, theta: T, mass: T) -> Result<Self> {
        let (px0, pz0) = momentum_from_scenario(v1, theta, mass)?;
        let half = T::lit(0.5);
        let site = |px: T| -> Result<SpinSite<T>> {
            Ok(SpinSite {
                momentum: FourMomentum::on_shell(mass, [px, T::zero(), pz0])?,
                weight: half,
                spinor: Spinor::z_up(),
            })
        };
        Self::new(vec![site(-px0)?, site(px0)?])
    }

    /// Four z-up spins with weight 1/4 at `+-p1` and `+-2 p1` along `x`.
    pub fn four_spin(p1: T, mass: T) -> Result<Self> {
        let quarter = T::lit(0.25);
        let two = T::lit(2.0);
        [-two * p1, -p1, p1, two * p1]
            .into_iter()
            .map(|px| {
                Ok(SpinSite {
                    momentum: FourMomentum::on_shell(mass, [px, T::zero(), T::zero()])?,
                    weight: quarter,
                    spinor: Spinor::z_up(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .and_then(Self::new)
    }

    /// `w a + (1 - w) b`, as a single field.
    pub fn merge(a: &Self, b: &Self, w: T) -> Result<Self> {
        let sites = a
            .sites
            .iter()
            .map(|s| SpinSite {
                weight: s.weight * w,
                ..*s
            })
            .chain(b.sites.iter().map(|s| SpinSite {
                weight: s.weight * (T::one() - w),
                ..*s
            }))
            .collect();
        Self::new(sites)
    }
}

/// `sum_i a_i U_i |chi_i><chi_i| U_i^dagger` for a boost of rapidity `xi` along `+z`.
pub fn discrete_density<T: Real>(field: &DiscreteSpinField<T>, xi: T) -> Result<DensityMatrix<T>> {
    let total: T = field.sites.iter().map(|s| s.weight).sum();
    if (total - T::one()).abs() > T::tol(1e-10) {
        return Err(Error::WeightSum(total.as_f64()));
    }
    let mut m = [[num_complex::Complex::default(); 2]; 2];
    for s in &field.sites {
        let u = wigner_spinor(xi, &s.momentum)?;
        let rho = project(&u.apply(&s.spinor))?;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x += rho.matrix()[i][j] * s.weight;
            }
        }
    }
    DensityMatrix::new(m)
}

/// Wigner angle at either lobe of the two-point field.
pub fn two_point_wigner_angle<T: Real>(v1: T, theta: T, xi: T) -> Result<T> {
    if !(v1 > T::zero() && v1 < T::one()) {
        return Err(Error::SuperLuminal(v1.as_f64()));
    }
    wigner_angle_from_rapidities(v1.atanh(), xi, theta)
}

/// Spin entropy of the two-point field, from the matrix sum.
pub fn two_point_entropy<T: Real>(v1: T, theta: T, xi: T) -> Result<T> {
    let field = DiscreteSpinField::two_point(v1, theta, T::one())?;
    von_neumann_entropy(&discrete_density(&field, xi)?)
}

/// `H2((1 + |cos w|) / 2)`: the Bloch vectors of the two lobes are rotated by
/// `+w` and `-w` about `y`, so their average has length `|cos w|`.
pub fn two_point_entropy_closed_form<T: Real>(v1: T, theta: T, xi: T) -> Result<T> {
    let w = two_point_wigner_angle(v1, theta, xi)?;
    Ok(binary_entropy((T::one() + w.cos().abs()) * T::lit(0.5)))
}

/// Two-point entropy in the limit of an infinitely fast observer: each lobe is
/// rotated by the limiting Wigner angle about its own axis `p x z`.
pub fn asymptotic_entropy<T: Real>(v1: T, theta: T) -> Result<T> {
    let w = wigner_angle_limit(v1, theta)?;
    let field = DiscreteSpinField::two_point(v1, theta, T::one())?;
    let mut rho = DensityMatrix::from_bloch([T::zero(); 3])?;
    let mut first = true;
    for s in field.sites() {
        let axis = vec3::cross(s.momentum.momentum(), [T::zero(), T::zero(), T::one()]);
        let len = vec3::norm(axis);
        let spin = project(&s.spinor)?;
        let rotated = if len > T::zero() {
            su2_from_axis_angle(vec3::scale(axis, T::one() / len), w)?.conjugate(&spin)
        } else {
            spin
        };
        rho = if first {
            rotated
        } else {
            rho.mix(&rotated, T::lit(0.5))
        };
        first = false;
    }
    von_neumann_entropy(&rho)
}

/// Rapidity at which the two-point Wigner angle equals `target`, by bisection
/// (the angle increases monotonically with rapidity).
pub fn rapidity_for_angle<T: Real>(v1: T, theta: T, target: T) -> Result<T> {
    let limit = wigner_angle_limit(v1, theta)?;
    if !(target > T::zero() && target < limit) {
        return Err(Error::Domain(format!(
            "angle {} not reached: the limit for this geometry is {}",
            target.as_f64(),
            limit.as_f64()
        )));
    }
    let mut lo = T::zero();
    let mut hi = T::one();
    while two_point_wigner_angle(v1, theta, hi)? < target {
        hi *= T::lit(2.0);
    }
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if two_point_wigner_angle(v1, theta, mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{wigner_angle, BoostPair};
    use crate::spin::bloch_vector;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn single_site_is_pure() {
        let site = SpinSite {
            momentum: FourMomentum::on_shell(1.0, [0.7, -0.3, 1.2]).unwrap(),
            weight: 1.0,
            spinor: Spinor::z_up(),
        };
        let f = DiscreteSpinField::new(vec![site]).unwrap();
        for xi in [0.0, 1.0, 9.0] {
            assert!(von_neumann_entropy(&discrete_density(&f, xi).unwrap()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn unboosted_identical_spins_are_pure() {
        let f = DiscreteSpinField::four_spin(1.3, 1.0).unwrap();
        assert!(von_neumann_entropy(&discrete_density(&f, 0.0).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn four_spin_bloch_vector() {
        let p1 = 1.3;
        let f = DiscreteSpinField::four_spin(p1, 1.0).unwrap();
        let xi = 1.7_f64;
        let b = bloch_vector(&discrete_density(&f, xi).unwrap());
        let omega = |p: f64| {
            let v = p / (1.0 + p * p).sqrt();
            wigner_angle(BoostPair::new(v, xi.tanh(), FRAC_PI_2).unwrap())
        };
        let want = 0.5 * omega(p1).cos() + 0.5 * omega(2.0 * p1).cos();
        assert!(b[0].abs() < 1e-14 && b[1].abs() < 1e-14);
        assert!((b[2] - want).abs() < 1e-12);
    }

    #[test]
    fn weight_validation() {
        let site = |w: f64| SpinSite {
            momentum: FourMomentum::at_rest(1.0).unwrap(),
            weight: w,
            spinor: Spinor::z_up(),
        };
        assert!(matches!(
            DiscreteSpinField::new(vec![site(0.5), site(0.4)]),
            Err(Error::WeightSum(_))
        ));
        let bad = DiscreteSpinField {
            sites: vec![site(0.5), site(0.4)],
        };
        assert!(matches!(
            discrete_density(&bad, 1.0),
            Err(Error::WeightSum(_))
        ));
    }

    #[test]
    fn two_point_examples() {
        assert!(two_point_entropy(0.985, FRAC_PI_2, 0.0).unwrap().abs() < 1e-12);
        // mpmath: w = 70.41954583710089 deg, H2((1 + cos w)/2) = 0.9173947906917882
        let s = two_point_entropy(0.985, FRAC_PI_2, 0.985_f64.atanh()).unwrap();
        assert!((s - 0.917_394_790_691_788_2).abs() < 1e-10);

        let xi = rapidity_for_angle(0.999, 161_f64.to_radians(), FRAC_PI_2).unwrap();
        // mpmath root of w(xi) = 90 deg
        assert!((xi - 2.330_391_088_657_367).abs() < 1e-9);
        assert!((two_point_entropy(0.999, 161_f64.to_radians(), xi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn over_rotation() {
        let th = 161_f64.to_radians();
        let peak = rapidity_for_angle(0.999, th, FRAC_PI_2).unwrap();
        let s = |xi: f64| two_point_entropy(0.999, th, xi).unwrap();
        assert!(s(peak - 0.5) < s(peak));
        assert!(s(peak + 1.0) < s(peak));
        assert!(s(peak + 3.0) < s(peak + 1.0));
        let lim = asymptotic_entropy(0.999, th).unwrap();
        // mpmath: 0.42496761797044884
        assert!((lim - 0.424_967_617_970_448_8).abs() < 1e-9);
        assert!((s(30.0) - lim).abs() < 1e-9);
    }

    #[test]
    fn asymptotic_examples() {
        assert!(asymptotic_entropy(1.0 - 1e-15, FRAC_PI_2).unwrap() > 1.0 - 1e-9);
        assert!(asymptotic_entropy(1e-6, 1.0).unwrap() < 1e-9);
        let a = asymptotic_entropy(0.985, 0.5).unwrap();
        let b = asymptotic_entropy(0.985, 1.0).unwrap();
        let c = asymptotic_entropy(0.985, FRAC_PI_2).unwrap();
        assert!(a < b && b < c);
    }

    #[test]
    fn vanishing_entanglement_needs_theta_close_to_pi() {
        // At theta = 179.9 deg and v1 = 0.99999 the Wigner angle is still 42.5 deg
        // (mpmath: S = 0.5615398813572967); the product-state limit needs
        // pi - theta small compared with D - 1 = 4.5e-3.
        let s = two_point_entropy(0.99999, 179.9_f64.to_radians(), 14.0).unwrap();
        assert!((s - 0.561_539_881_357_296_7).abs() < 1e-6);
        let s = two_point_entropy(0.99999, PI - 1e-5, 14.0).unwrap();
        assert!(s < 0.05, "{s}");
    }

    #[test]
    fn rapidity_for_unreachable_angle() {
        assert!(rapidity_for_angle(0.5, FRAC_PI_2, FRAC_PI_2).is_err());
    }

    fn unit_spinor() -> impl Strategy<Value = Spinor<f64>> {
        (0.0..PI, 0.0..2.0 * PI).prop_map(|(t, p)| {
            Spinor::new(
                num_complex::Complex::new((t / 2.0).cos(), 0.0),
                num_complex::Complex::from_polar((t / 2.0).sin(), p),
            )
        })
    }

    fn site() -> impl Strategy<Value = SpinSite<f64>> {
        (
            -3.0..3.0f64,
            -3.0..3.0f64,
            -3.0..3.0f64,
            0.01..1.0f64,
            unit_spinor(),
        )
            .prop_map(|(x, y, z, w, s)| SpinSite {
                momentum: FourMomentum::on_shell(1.0, [x, y, z]).unwrap(),
                weight: w,
                spinor: s,
            })
    }

    fn field() -> impl Strategy<Value = DiscreteSpinField<f64>> {
        prop::collection::vec(site(), 1..5).prop_map(|mut sites| {
            let total: f64 = sites.iter().map(|s| s.weight).sum();
            for s in &mut sites {
                s.weight /= total;
            }
            let sum: f64 = sites.iter().map(|s| s.weight).sum();
            sites[0].weight += 1.0 - sum;
            DiscreteSpinField::new(sites).unwrap()
        })
    }

    proptest! {
        #[test]
        fn density_is_linear_in_the_field(a in field(), b in field(), w in 0.0..1.0f64, xi in 0.0..8.0f64) {
            let merged = DiscreteSpinField::merge(&a, &b, w).unwrap();
            let lhs = discrete_density(&merged, xi).unwrap();
            let rhs = discrete_density(&a, xi).unwrap().mix(&discrete_density(&b, xi).unwrap(), w);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-14);
        }

        #[test]
        fn matrix_and_closed_form_agree(v1 in 0.05..0.9999f64, theta in 0.01..(PI - 0.01), xi in 0.0..14.0f64) {
            let m = two_point_entropy(v1, theta, xi).unwrap();
            let c = two_point_entropy_closed_form(v1, theta, xi).unwrap();
            prop_assert!((m - c).abs() < 1e-10, "{} vs {}", m, c);
        }
    }
}
