//! Proper orthochronous Lorentz transformations, canonical boosts, and the
//! Wigner rotation produced by composing two non-collinear boosts.
//!
//! Conventions: metric signature `(+,-,-,-)`, index 0 is time, matrices act on
//! column four-vectors `(E, px, py, pz)`. Boosts are active: `boost_matrix(v)`
//! takes a particle at rest to one moving with velocity `v`.

use crate::error::{Error, Result};
use crate::real::vec3::{self, Vec3};
use crate::real::Real;

pub type Matrix4<T> = [[T; 4]; 4];

/// A sub-luminal three-velocity in units of `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeVelocity<T> {
    v: Vec3<T>,
}

impl<T: Real> ThreeVelocity<T> {
    pub fn new(vx: T, vy: T, vz: T) -> Result<Self> {
        let v = [vx, vy, vz];
        if !v.iter().all(|c| c.is_finite()) {
            return Err(Error::Domain("velocity components must be finite".into()));
        }
        let speed = vec3::norm(v);
        if speed >= T::one() {
            return Err(Error::SuperLuminal(speed.as_f64()));
        }
        Ok(Self { v })
    }

    /// Velocity of magnitude `speed` along the unit vector `direction`.
    pub fn along(direction: Vec3<T>, speed: T) -> Result<Self> {
        check_unit(direction)?;
        if speed < T::zero() {
            return Err(Error::SuperLuminal(speed.as_f64()));
        }
        Self::new(
            direction[0] * speed,
            direction[1] * speed,
            direction[2] * speed,
        )
    }

    pub fn zero() -> Self {
        Self { v: [T::zero(); 3] }
    }

    pub fn components(&self) -> Vec3<T> {
        self.v
    }

    pub fn speed(&self) -> T {
        vec3::norm(self.v)
    }

    pub fn gamma(&self) -> LorentzFactor<T> {
        // speed < 1 is guaranteed by construction
        LorentzFactor(T::one() / (T::one() - vec3::dot(self.v, self.v)).sqrt())
    }
}

impl<T: Real> std::ops::Neg for ThreeVelocity<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            v: vec3::neg(self.v),
        }
    }
}

/// Lorentz factor `gamma >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LorentzFactor<T>(T);

impl<T: Real> LorentzFactor<T> {
    pub fn value(self) -> T {
        self.0
    }
}

/// Lorentz factor of a speed `0 <= speed < 1`.
pub fn gamma<T: Real>(speed: T) -> Result<LorentzFactor<T>> {
    if !(speed >= T::zero() && speed < T::one()) {
        return Err(Error::SuperLuminal(speed.as_f64()));
    }
    Ok(LorentzFactor(
        T::one() / ((T::one() - speed) * (T::one() + speed)).sqrt(),
    ))
}

/// Two boost speeds and the angle between their directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostPair<T> {
    pub v1: T,
    pub v2: T,
    pub theta: T,
}

impl<T: Real> BoostPair<T> {
    pub fn new(v1: T, v2: T, theta: T) -> Result<Self> {
        for v in [v1, v2] {
            if !(v >= T::zero() && v < T::one()) {
                return Err(Error::SuperLuminal(v.as_f64()));
            }
        }
        if !(theta >= T::zero() && theta <= T::PI()) {
            return Err(Error::Domain(format!(
                "boost angle {} outside [0, pi]",
                theta.as_f64()
            )));
        }
        Ok(Self { v1, v2, theta })
    }
}

/// On-shell energy-momentum of a massive particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMomentum<T> {
    energy: T,
    momentum: Vec3<T>,
    mass: T,
}

impl<T: Real> FourMomentum<T> {
    /// Validates the mass shell `E^2 - |p|^2 = m^2` to relative tolerance 1e-12.
    pub fn new(energy: T, px: T, py: T, pz: T, mass: T) -> Result<Self> {
        if !(mass > T::zero()) {
            return Err(Error::Domain(format!(
                "mass {} must be positive",
                mass.as_f64()
            )));
        }
        let momentum = [px, py, pz];
        let p2 = vec3::dot(momentum, momentum);
        let defect = (energy - mass) * (energy + mass) - p2;
        if !(energy >= mass) || defect.abs() > T::tol(1e-12) * (energy * energy) {
            return Err(Error::OffShell(defect.as_f64()));
        }
        Ok(Self {
            energy,
            momentum,
            mass,
        })
    }

    /// Puts a three-momentum on the mass shell.
    pub fn on_shell(mass: T, momentum: Vec3<T>) -> Result<Self> {
        if !(mass > T::zero()) {
            return Err(Error::Domain(format!(
                "mass {} must be positive",
                mass.as_f64()
            )));
        }
        let energy = (mass * mass + vec3::dot(momentum, momentum)).sqrt();
        Ok(Self {
            energy,
            momentum,
            mass,
        })
    }

    /// Particle at rest.
    pub fn at_rest(mass: T) -> Result<Self> {
        Self::on_shell(mass, [T::zero(); 3])
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    pub fn momentum(&self) -> Vec3<T> {
        self.momentum
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// `|p| / E`.
    pub fn speed(&self) -> T {
        vec3::norm(self.momentum) / self.energy
    }

    /// Minkowski square `E^2 - |p|^2`.
    pub fn invariant_mass_sq(&self) -> T {
        self.energy * self.energy - vec3::dot(self.momentum, self.momentum)
    }

    pub fn as_array(&self) -> [T; 4] {
        [
            self.energy,
            self.momentum[0],
            self.momentum[1],
            self.momentum[2],
        ]
    }
}

/// Proper orthochronous Lorentz transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform<T> {
    m: Matrix4<T>,
}

impl<T: Real> LorentzTransform<T> {
    /// Validates `L^T eta L = eta` (1e-10 per entry), `det L = +1` and `L00 >= 1`.
    pub fn new(m: Matrix4<T>) -> Result<Self> {
        let l = Self { m };
        let g = l.metric_defect();
        if g > T::tol(1e-10) {
            return Err(Error::NotLorentz(format!(
                "metric violated by {}",
                g.as_f64()
            )));
        }
        if m[0][0] < T::one() - T::tol(1e-10) {
            return Err(Error::NotLorentz("not orthochronous".into()));
        }
        if det4(&m) < T::zero() {
            return Err(Error::NotLorentz("improper (det = -1)".into()));
        }
        Ok(l)
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix4<T>) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = T::one();
        }
        Self { m }
    }

    /// Spatial rotation by `angle` about the unit `axis` (active, right-handed).
    pub fn rotation(axis: Vec3<T>, angle: T) -> Result<Self> {
        check_unit(axis)?;
        let mut m = Self::identity().m;
        let basis = [
            [T::one(), T::zero(), T::zero()],
            [T::zero(), T::one(), T::zero()],
            [T::zero(), T::zero(), T::one()],
        ];
        for (j, e) in basis.iter().enumerate() {
            let col = vec3::rotate(*e, axis, angle);
            for i in 0..3 {
                m[i + 1][j + 1] = col[i];
            }
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &Matrix4<T> {
        &self.m
    }

    /// `eta L^T eta`.
    pub fn inverse(&self) -> Self {
        let mut inv = [[T::zero(); 4]; 4];
        for (i, row) in inv.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let sign = if (i == 0) == (j == 0) {
                    T::one()
                } else {
                    -T::one()
                };
                *x = sign * self.m[j][i];
            }
        }
        Self { m: inv }
    }

    /// Largest entry of `|L^T eta L - eta|`.
    pub fn metric_defect(&self) -> T {
        let eta = |k: usize| if k == 0 { T::one() } else { -T::one() };
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = T::zero();
                for k in 0..4 {
                    acc += self.m[k][i] * eta(k) * self.m[k][j];
                }
                let target = if i == j { eta(i) } else { T::zero() };
                worst = worst.max((acc - target).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        (0..4).all(|i| (0..4).all(|j| (self.m[i][j] - self.m[j][i]).abs() <= tol))
    }

    /// Largest entry-wise difference to another transform.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        worst
    }

    /// Angle in `[0, pi]` and axis of the spatial 3x3 block, read as a rotation.
    /// The axis is `None` when the angle is zero.
    pub fn rotation_axis_angle(&self) -> (Option<Vec3<T>>, T) {
        let r = |i: usize, j: usize| self.m[i + 1][j + 1];
        let half = T::lit(0.5);
        let a = [
            (r(2, 1) - r(1, 2)) * half,
            (r(0, 2) - r(2, 0)) * half,
            (r(1, 0) - r(0, 1)) * half,
        ];
        let sin = vec3::norm(a);
        let cos = (r(0, 0) + r(1, 1) + r(2, 2) - T::one()) * half;
        let angle = sin.atan2(cos);
        if sin <= T::epsilon() {
            // angle 0, or pi where the antisymmetric part vanishes
            if cos > T::zero() {
                return (None, T::zero());
            }
            let diag = [r(0, 0), r(1, 1), r(2, 2)];
            let k = (0..3)
                .max_by(|&x, &y| diag[x].partial_cmp(&diag[y]).unwrap())
                .unwrap();
            let mut axis = [T::zero(); 3];
            for (i, ax) in axis.iter_mut().enumerate() {
                *ax = (r(i, k) + r(k, i)) * half + if i == k { T::one() } else { T::zero() };
            }
            let n = vec3::norm(axis);
            return (Some(vec3::scale(axis, T::one() / n)), T::PI());
        }
        (Some(vec3::scale(a, T::one() / sin)), angle)
    }
}

fn det4<T: Real>(m: &Matrix4<T>) -> T {
    let minor = |c: usize| {
        let cols: Vec<usize> = (0..4).filter(|&k| k != c).collect();
        let a = |i: usize, j: usize| m[i + 1][cols[j]];
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    };
    let mut det = T::zero();
    for c in 0..4 {
        let sign = if c % 2 == 0 { T::one() } else { -T::one() };
        det += sign * m[0][c] * minor(c);
    }
    det
}

fn check_unit<T: Real>(d: Vec3<T>) -> Result<()> {
    let n = vec3::norm(d);
    if (n - T::one()).abs() > T::tol(1e-12) {
        return Err(Error::NonUnitVector(n.as_f64()));
    }
    Ok(())
}

/// Boost with `gamma`, `gamma v` and `gamma - 1` supplied directly, so callers
/// can avoid the `tanh -> 1` round-off at large rapidity.
fn canonical_boost<T: Real>(
    gamma: T,
    gamma_minus_one: T,
    gamma_v: Vec3<T>,
    dir: Vec3<T>,
) -> Matrix4<T> {
    let mut m = [[T::zero(); 4]; 4];
    m[0][0] = gamma;
    for i in 0..3 {
        m[0][i + 1] = gamma_v[i];
        m[i + 1][0] = gamma_v[i];
        for j in 0..3 {
            let delta = if i == j { T::one() } else { T::zero() };
            m[i + 1][j + 1] = delta + gamma_minus_one * dir[i] * dir[j];
        }
    }
    m
}

/// Symmetric canonical boost `Lambda(v)`.
pub fn boost_matrix<T: Real>(v: ThreeVelocity<T>) -> LorentzTransform<T> {
    let speed = v.speed();
    if speed == T::zero() {
        return LorentzTransform::identity();
    }
    let g = v.gamma().value();
    let dir = vec3::scale(v.components(), T::one() / speed);
    // gamma - 1 = gamma^2 v^2 / (gamma + 1), free of cancellation at small v
    let gm1 = g * g * speed * speed / (g + T::one());
    LorentzTransform::from_matrix_unchecked(canonical_boost(
        g,
        gm1,
        vec3::scale(v.components(), g),
        dir,
    ))
}

/// Boost of rapidity `xi >= 0` along the unit vector `direction`.
pub fn boost_from_rapidity<T: Real>(xi: T, direction: Vec3<T>) -> Result<LorentzTransform<T>> {
    check_unit(direction)?;
    if !(xi >= T::zero()) || !xi.is_finite() {
        return Err(Error::Domain(format!(
            "rapidity {} must be finite and >= 0",
            xi.as_f64()
        )));
    }
    let half_sinh = (xi * T::lit(0.5)).sinh();
    let gm1 = T::lit(2.0) * half_sinh * half_sinh;
    Ok(LorentzTransform::from_matrix_unchecked(canonical_boost(
        xi.cosh(),
        gm1,
        vec3::scale(direction, xi.sinh()),
        direction,
    )))
}

/// `second * first`: apply `first`, then `second`.
pub fn compose<T: Real>(
    second: &LorentzTransform<T>,
    first: &LorentzTransform<T>,
) -> LorentzTransform<T> {
    let mut m = [[T::zero(); 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let mut acc = T::zero();
            for k in 0..4 {
                acc += second.m[i][k] * first.m[k][j];
            }
            *x = acc;
        }
    }
    LorentzTransform::from_matrix_unchecked(m)
}

/// Factors `L = rotation * boost` with `boost` symmetric.
///
/// The rotation has a trivial time row, so the time row of `L` equals the
/// time row of the boost: `(gamma, gamma v)`.
pub fn polar_decompose<T: Real>(
    l: &LorentzTransform<T>,
) -> Result<(LorentzTransform<T>, LorentzTransform<T>)> {
    let m = &l.m;
    if m[0][0] < T::one() - T::tol(1e-10) {
        return Err(Error::NotLorentz("not orthochronous".into()));
    }
    let g = m[0][0].max(T::one());
    let v = ThreeVelocity::new(m[0][1] / g, m[0][2] / g, m[0][3] / g)?;
    let boost = boost_matrix(v);
    let mut rot = compose(l, &boost_matrix(-v)).m;
    rot[0][0] = T::one();
    for k in 1..4 {
        rot[0][k] = T::zero();
        rot[k][0] = T::zero();
    }
    Ok((LorentzTransform::from_matrix_unchecked(rot), boost))
}

/// `tanh(xi/2)` for a speed `v = tanh(xi)`, equal to `v / (1 + sqrt(1 - v^2))`.
#[inline]
pub fn half_rapidity_tanh<T: Real>(speed: T) -> T {
    speed / (T::one() + ((T::one() - speed) * (T::one() + speed)).sqrt())
}

/// Wigner angle from the two half-rapidity tangents.
///
/// With `D = sqrt((g1+1)/(g1-1) * (g2+1)/(g2-1))` one has `1/D = t1 t2` where
/// `t = tanh(xi/2)`, so `tan(w/2) = sin(theta) / (cos(theta) + D)` becomes
/// `t1 t2 sin(theta) / (1 + t1 t2 cos(theta))`.
#[inline]
fn wigner_angle_from_tanh<T: Real>(t1: T, t2: T, theta: T) -> T {
    let inv_d = t1 * t2;
    let (s, c) = theta.sin_cos();
    T::lit(2.0) * (inv_d * s).atan2(T::one() + inv_d * c)
}

/// Magnitude of the Wigner rotation, in `[0, pi)`, for boosts of speeds `v1`,
/// `v2` whose directions enclose the angle `theta`.
pub fn wigner_angle<T: Real>(pair: BoostPair<T>) -> T {
    if pair.v1 == T::zero() || pair.v2 == T::zero() {
        return T::zero();
    }
    wigner_angle_from_tanh(
        half_rapidity_tanh(pair.v1),
        half_rapidity_tanh(pair.v2),
        pair.theta,
    )
}

/// Same as [`wigner_angle`] with the boosts given by rapidities, which stays
/// accurate once `tanh(xi)` rounds to 1.
pub fn wigner_angle_from_rapidities<T: Real>(xi1: T, xi2: T, theta: T) -> Result<T> {
    if !(xi1 >= T::zero() && xi2 >= T::zero()) {
        return Err(Error::Domain("rapidities must be >= 0".into()));
    }
    let half = T::lit(0.5);
    Ok(wigner_angle_from_tanh(
        (xi1 * half).tanh(),
        (xi2 * half).tanh(),
        theta,
    ))
}

/// Limit of the Wigner angle as the second boost approaches the speed of light.
pub fn wigner_angle_limit<T: Real>(v1: T, theta: T) -> Result<T> {
    let pair = BoostPair::new(v1, T::zero(), theta)?;
    if pair.v1 == T::zero() {
        return Ok(T::zero());
    }
    Ok(wigner_angle_from_tanh(
        half_rapidity_tanh(v1),
        T::one(),
        theta,
    ))
}

/// Unit axis `v2_dir x v1_dir` of the Wigner rotation.
pub fn wigner_axis<T: Real>(v1_dir: Vec3<T>, v2_dir: Vec3<T>) -> Result<Vec3<T>> {
    check_unit(v1_dir)?;
    check_unit(v2_dir)?;
    let n = vec3::cross(v2_dir, v1_dir);
    let len = vec3::norm(n);
    if len <= T::tol(1e-12) {
        return Err(Error::DegenerateAxis);
    }
    Ok(vec3::scale(n, T::one() / len))
}

/// `L p`. The mass is carried over unchanged.
pub fn apply<T: Real>(l: &LorentzTransform<T>, p: &FourMomentum<T>) -> FourMomentum<T> {
    let x = p.as_array();
    let mut y = [T::zero(); 4];
    for (i, yi) in y.iter_mut().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            *yi += l.m[i][j] * *xj;
        }
    }
    FourMomentum {
        energy: y[0],
        momentum: [y[1], y[2], y[3]],
        mass: p.mass,
    }
}
