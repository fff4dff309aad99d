//! Spin-1/2 machinery: the SU(2) Wigner rotation of a spinor under a boost
//! along `+z`, axis-angle conversions, Bloch vectors and von Neumann entropy.
//!
//! Basis order is `(lambda = +1/2, lambda = -1/2)`; Pauli matrices are the
//! standard ones in that basis.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lorentz::FourMomentum;
use crate::real::vec3::{self, Vec3};
use crate::real::Real;

pub type Matrix2<T> = [[Complex<T>; 2]; 2];

#[inline]
fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
fn mul2<T: Real>(a: &Matrix2<T>, b: &Matrix2<T>) -> Matrix2<T> {
    let mut out = [[Complex::default(); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

#[inline]
fn dagger2<T: Real>(a: &Matrix2<T>) -> Matrix2<T> {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

fn max_abs_diff2<T: Real>(a: &Matrix2<T>, b: &Matrix2<T>) -> T {
    let mut worst = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

/// The Pauli matrices `(sigma_x, sigma_y, sigma_z)`.
pub fn pauli<T: Real>() -> [Matrix2<T>; 3] {
    let (o, l) = (T::zero(), T::one());
    [
        [[c(o, o), c(l, o)], [c(l, o), c(o, o)]],
        [[c(o, o), c(o, -l)], [c(o, l), c(o, o)]],
        [[c(l, o), c(o, o)], [c(o, o), c(-l, o)]],
    ]
}

/// Two complex amplitudes `(up, down)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<T> {
    pub up: Complex<T>,
    pub down: Complex<T>,
}

impl<T: Real> Spinor<T> {
    pub fn new(up: Complex<T>, down: Complex<T>) -> Self {
        Self { up, down }
    }

    /// Spin up along `z`, the state written `|0>`.
    pub fn z_up() -> Self {
        Self::new(Complex::new(T::one(), T::zero()), Complex::default())
    }

    pub fn norm_sqr(&self) -> T {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if !(n > T::zero()) {
            return Err(Error::ZeroSpinor);
        }
        Ok(Self::new(self.up / n, self.down / n))
    }
}

/// Element of SU(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorRotation<T> {
    m: Matrix2<T>,
}

impl<T: Real> SpinorRotation<T> {
    /// Validates `U^dagger U = I` and `det U = 1`, both to 1e-12.
    pub fn new(m: Matrix2<T>) -> Result<Self> {
        let u = Self { m };
        let tol = T::tol(1e-12);
        let id = Self::identity().m;
        let gram = mul2(&dagger2(&m), &m);
        if max_abs_diff2(&gram, &id) > tol {
            return Err(Error::Domain("matrix is not unitary".into()));
        }
        if (u.det() - Complex::new(T::one(), T::zero())).norm() > tol {
            return Err(Error::Domain("determinant is not 1".into()));
        }
        Ok(u)
    }

    pub fn identity() -> Self {
        let (o, l) = (T::zero(), T::one());
        Self {
            m: [[c(l, o), c(o, o)], [c(o, o), c(l, o)]],
        }
    }

    pub fn matrix(&self) -> &Matrix2<T> {
        &self.m
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn dagger(&self) -> Self {
        Self {
            m: dagger2(&self.m),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            m: mul2(&self.m, &other.m),
        }
    }

    pub fn apply(&self, chi: &Spinor<T>) -> Spinor<T> {
        Spinor::new(
            self.m[0][0] * chi.up + self.m[0][1] * chi.down,
            self.m[1][0] * chi.up + self.m[1][1] * chi.down,
        )
    }

    /// `U rho U^dagger`.
    pub fn conjugate(&self, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
        let m = mul2(&mul2(&self.m, &rho.m), &dagger2(&self.m));
        DensityMatrix::from_matrix_unchecked(m)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_abs_diff2(&self.m, &other.m)
    }
}

impl<T: Real> std::ops::Neg for SpinorRotation<T> {
    type Output = Self;
    fn neg(self) -> Self {
        let m = self.m;
        Self {
            m: [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]],
        }
    }
}

/// Precomputed boost-dependent factors of the Wigner spinor for a boost of
/// rapidity `xi` along `+z`, shared across all momenta of a grid.
#[derive(Debug, Clone, Copy)]
pub struct WignerKernel<T> {
    mass: T,
    sinh_half: T,
    exp_half: T,
    exp_neg_half: T,
}

impl<T: Real> WignerKernel<T> {
    pub fn new(xi: T, mass: T) -> Result<Self> {
        if !(xi >= T::zero()) || !xi.is_finite() {
            return Err(Error::Domain(format!(
                "rapidity {} must be finite and >= 0",
                xi.as_f64()
            )));
        }
        if !(mass > T::zero()) {
            return Err(Error::Domain(format!(
                "mass {} must be positive",
                mass.as_f64()
            )));
        }
        let half = xi * T::lit(0.5);
        Ok(Self {
            mass,
            sinh_half: half.sinh(),
            exp_half: half.exp(),
            exp_neg_half: (-half).exp(),
        })
    }

    /// `(alpha, beta)` for a momentum `p` with energy `energy`:
    ///
    /// `alpha = sqrt((E+m)/(E'+m)) (cosh(xi/2) + pz sinh(xi/2) / (E+m))`,
    /// `beta = sinh(xi/2) / sqrt((E+m)(E'+m))`, with `E' = E cosh xi + pz sinh xi`.
    ///
    /// Evaluated through light-cone components `E +- pz` so that fast packets
    /// moving against the boost keep full precision.
    #[inline]
    pub fn coefficients(&self, energy: T, p: Vec3<T>) -> (T, T) {
        let pz = p[2];
        let transverse = self.mass * self.mass + p[0] * p[0] + p[1] * p[1];
        let (plus, minus) = if pz >= T::zero() {
            let plus = energy + pz;
            (plus, transverse / plus)
        } else {
            let minus = energy - pz;
            (transverse / minus, minus)
        };
        let e_m = energy + self.mass;
        let half = T::lit(0.5);
        let boosted = half
            * (plus * self.exp_half * self.exp_half
                + minus * self.exp_neg_half * self.exp_neg_half)
            + self.mass;
        // cosh(xi/2) + pz sinh(xi/2)/(E+m) = e^(-xi/2) + sinh(xi/2) (E+m+pz)/(E+m)
        let bracket = self.exp_neg_half + self.sinh_half * (plus + self.mass) / e_m;
        let alpha = (e_m / boosted).sqrt() * bracket;
        let beta = self.sinh_half / (e_m * boosted).sqrt();
        (alpha, beta)
    }

    /// The Wigner spinor `[[alpha, beta (px - i py)], [-beta (px + i py), alpha]]`.
    #[inline]
    pub fn rotation(&self, energy: T, p: Vec3<T>) -> SpinorRotation<T> {
        let (alpha, beta) = self.coefficients(energy, p);
        let a = Complex::new(alpha, T::zero());
        SpinorRotation {
            m: [
                [a, Complex::new(beta * p[0], -beta * p[1])],
                [Complex::new(-beta * p[0], -beta * p[1]), a],
            ],
        }
    }
}

/// SU(2) representative of the Wigner rotation of a particle with rest-frame
/// momentum `p` seen from a frame boosted with rapidity `xi` along `+z`.
pub fn wigner_spinor<T: Real>(xi: T, p: &FourMomentum<T>) -> Result<SpinorRotation<T>> {
    let e = p.energy();
    let m = p.mass();
    let defect = (e - m) * (e + m) - vec3::dot(p.momentum(), p.momentum());
    if defect.abs() > T::tol(1e-12) * e * e {
        return Err(Error::OffShell(defect.as_f64()));
    }
    Ok(WignerKernel::new(xi, m)?.rotation(e, p.momentum()))
}

/// `cos(w/2) I - i sin(w/2) (axis . sigma)`.
pub fn su2_from_axis_angle<T: Real>(axis: Vec3<T>, omega: T) -> Result<SpinorRotation<T>> {
    let n = vec3::norm(axis);
    if (n - T::one()).abs() > T::tol(1e-12) {
        return Err(Error::NonUnitVector(n.as_f64()));
    }
    let (s, co) = (omega * T::lit(0.5)).sin_cos();
    let [nx, ny, nz] = axis;
    Ok(SpinorRotation {
        m: [
            [c(co, -s * nz), c(-s * ny, -s * nx)],
            [c(s * ny, -s * nx), c(co, s * nz)],
        ],
    })
}

/// Axis and angle of an SU(2) element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle<T> {
    /// `None` when the element is within 1e-9 of `+-I`.
    pub axis: Option<Vec3<T>>,
    /// In `[0, pi]`.
    pub angle: T,
}

/// Inverse of [`su2_from_axis_angle`] up to the global sign of `U`.
pub fn rotation_angle_of<T: Real>(u: &SpinorRotation<T>) -> AxisAngle<T> {
    let m = &u.m;
    let half = T::lit(0.5);
    let mut a = (m[0][0].re + m[1][1].re) * half;
    let mut b = [
        -(m[0][1].im + m[1][0].im) * half,
        (m[1][0].re - m[0][1].re) * half,
        -(m[0][0].im - m[1][1].im) * half,
    ];
    if a < T::zero() {
        a = -a;
        b = vec3::neg(b);
    }
    let s = vec3::norm(b);
    if s <= T::tol(1e-9) {
        return AxisAngle {
            axis: None,
            angle: T::zero(),
        };
    }
    AxisAngle {
        axis: Some(vec3::scale(b, T::one() / s)),
        angle: T::lit(2.0) * s.atan2(a),
    }
}

/// 2x2 density matrix of a qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<T> {
    m: Matrix2<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity (1e-12), unit trace (1e-10) and positivity
    /// (eigenvalues >= -1e-12).
    pub fn new(m: Matrix2<T>) -> Result<Self> {
        let rho = Self { m };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix2<T>) -> Self {
        Self { m }
    }

    pub fn maximally_mixed() -> Self {
        let h = c(T::lit(0.5), T::zero());
        let z = Complex::default();
        Self {
            m: [[h, z], [z, h]],
        }
    }

    /// `(I + n . sigma) / 2` for `|n| <= 1`.
    pub fn from_bloch(n: Vec3<T>) -> Result<Self> {
        if vec3::norm(n) > T::one() + T::tol(1e-10) {
            return Err(Error::InvalidState("Bloch vector longer than 1".into()));
        }
        let h = T::lit(0.5);
        Ok(Self {
            m: [
                [c(h * (T::one() + n[2]), T::zero()), c(h * n[0], -h * n[1])],
                [c(h * n[0], h * n[1]), c(h * (T::one() - n[2]), T::zero())],
            ],
        })
    }

    pub fn matrix(&self) -> &Matrix2<T> {
        &self.m
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    /// Largest entry of `|rho - rho^dagger|`.
    pub fn hermiticity_defect(&self) -> T {
        max_abs_diff2(&self.m, &dagger2(&self.m))
    }

    /// Eigenvalues `(lambda_min, lambda_max)` of the Hermitian part, in closed
    /// form from the trace and the eigenvalue half-gap
    /// `sqrt(((a - d)/2)^2 + |b|^2) = sqrt(tr^2/4 - det)`.
    pub fn eigenvalues(&self) -> (T, T) {
        let half = T::lit(0.5);
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let b = (self.m[0][1] + self.m[1][0].conj()) * half;
        let mean = (a + d) * half;
        let gap = ((a - d) * half).hypot(b.norm());
        (mean - gap, mean + gap)
    }

    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_defect();
        if herm > T::tol(1e-12) {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {})",
                herm.as_f64()
            )));
        }
        let tr = self.trace();
        if (tr.re - T::one()).abs() > T::tol(1e-10) || tr.im.abs() > T::tol(1e-10) {
            return Err(Error::InvalidState(format!(
                "trace {} != 1",
                tr.re.as_f64()
            )));
        }
        let (lo, _) = self.eigenvalues();
        if lo < -T::tol(1e-12) {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {}",
                lo.as_f64()
            )));
        }
        Ok(())
    }

    /// `w * self + (1 - w) * other`.
    pub fn mix(&self, other: &Self, w: T) -> Self {
        let mut m = self.m;
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = self.m[i][j] * w + other.m[i][j] * (T::one() - w);
            }
        }
        Self { m }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_abs_diff2(&self.m, &other.m)
    }
}

/// `(tr(rho sigma_x), tr(rho sigma_y), tr(rho sigma_z))`.
pub fn bloch_vector<T: Real>(rho: &DensityMatrix<T>) -> Vec3<T> {
    let m = &rho.m;
    let two = T::lit(2.0);
    // tr(rho sx) = 2 Re rho_01 etc., using the Hermitian average of the off-diagonals
    let off = (m[0][1].conj() + m[1][0]) * T::lit(0.5);
    [two * off.re, two * off.im, m[0][0].re - m[1][1].re]
}

/// `-p log2 p - (1 - p) log2 (1 - p)`, with `0 log 0 = 0`.
pub fn binary_entropy<T: Real>(p: T) -> T {
    let term = |x: T| {
        if x > T::zero() {
            -x * x.log2()
        } else {
            T::zero()
        }
    };
    term(p) + term(T::one() - p)
}

/// Von Neumann entropy in bits, `-sum_i lambda_i log2 lambda_i`.
///
/// Eigenvalues in `[-1e-9, 0)` are treated as round-off and clipped to zero;
/// anything more negative is rejected. The spectrum is rescaled to unit trace,
/// so rounding cannot push the result below zero.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let (lo, hi) = rho.eigenvalues();
    if lo < -T::tol(1e-9) {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {}",
            lo.as_f64()
        )));
    }
    let lo = lo.max(T::zero());
    Ok(binary_entropy(lo / (lo + hi)))
}

/// `|chi><chi|` for a normalized spinor.
pub fn project<T: Real>(chi: &Spinor<T>) -> Result<DensityMatrix<T>> {
    let n2 = chi.norm_sqr();
    if !(n2 > T::zero()) {
        return Err(Error::ZeroSpinor);
    }
    if (n2 - T::one()).abs() > T::tol(1e-12) {
        return Err(Error::Domain(format!("spinor norm^2 {} != 1", n2.as_f64())));
    }
    let (u, d) = (chi.up, chi.down);
    Ok(DensityMatrix::from_matrix_unchecked([
        [c(u.norm_sqr(), T::zero()), u * d.conj()],
        [d * u.conj(), c(d.norm_sqr(), T::zero())],
    ]))
}
