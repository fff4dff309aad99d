//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// A tolerance of `x`, widened to a small multiple of machine epsilon for
    /// scalar types that cannot resolve `x`.
    #[inline]
    fn tol(x: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        Self::lit(x).max(floor)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Minimal 3-vector helpers over plain arrays.
pub mod vec3 {
    use super::Real;

    pub type Vec3<T> = [T; 3];

    #[inline]
    pub fn dot<T: Real>(a: Vec3<T>, b: Vec3<T>) -> T {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    #[inline]
    pub fn cross<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    #[inline]
    pub fn norm<T: Real>(a: Vec3<T>) -> T {
        dot(a, a).sqrt()
    }

    #[inline]
    pub fn scale<T: Real>(a: Vec3<T>, s: T) -> Vec3<T> {
        [a[0] * s, a[1] * s, a[2] * s]
    }

    #[inline]
    pub fn add<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }

    #[inline]
    pub fn neg<T: Real>(a: Vec3<T>) -> Vec3<T> {
        [-a[0], -a[1], -a[2]]
    }

    /// Angle between two non-zero vectors, in `[0, pi]`.
    pub fn angle_between<T: Real>(a: Vec3<T>, b: Vec3<T>) -> T {
        norm(cross(a, b)).atan2(dot(a, b))
    }

    /// Active right-handed rotation of `v` by `angle` about the unit `axis`
    /// (Rodrigues' formula).
    pub fn rotate<T: Real>(v: Vec3<T>, axis: Vec3<T>, angle: T) -> Vec3<T> {
        let (s, c) = angle.sin_cos();
        let k_dot_v = dot(axis, v);
        let k_cross_v = cross(axis, v);
        let one = T::one();
        [
            v[0] * c + k_cross_v[0] * s + axis[0] * k_dot_v * (one - c),
            v[1] * c + k_cross_v[1] * s + axis[1] * k_dot_v * (one - c),
            v[2] * c + k_cross_v[2] * s + axis[2] * k_dot_v * (one - c),
        ]
    }
}
