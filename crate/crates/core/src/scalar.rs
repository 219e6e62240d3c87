//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All of the physics is written against [`Real`], which `f32` and `f64`
//! implement. The sparse direct solver additionally works over complex
//! numbers (resolvent evaluations), so it is written against [`Field`],
//! implemented for the reals and for `Complex<T>`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Scalars usable by the sparse LU and the Krylov iterations.
pub trait Field:
    Num
    + Copy
    + Debug
    + Send
    + Sync
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + 'static
{
    type Real: Real;

    fn modulus(self) -> Self::Real;
    fn conj(self) -> Self;
    fn from_real(r: Self::Real) -> Self;
    fn real_part(self) -> Self::Real;
    fn finite(self) -> bool;
}

/// Real floating-point scalar.
pub trait Real:
    Float
    + num_traits::NumAssign
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Display
    + LowerExp
    + Default
    + Sum
    + Field<Real = Self>
{
    /// Converts an `f64` constant into `Self`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant not representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Whether this type carries more than single precision.
    fn is_double() -> bool;
}

macro_rules! impl_real {
    ($t:ty, $double:expr) => {
        impl Field for $t {
            type Real = $t;
            fn modulus(self) -> $t {
                self.abs()
            }
            fn conj(self) -> $t {
                self
            }
            fn from_real(r: $t) -> $t {
                r
            }
            fn real_part(self) -> $t {
                self
            }
            fn finite(self) -> bool {
                self.is_finite()
            }
        }

        impl Real for $t {
            fn is_double() -> bool {
                $double
            }
        }
    };
}

impl_real!(f32, false);
impl_real!(f64, true);

impl<T: Real> Field for Complex<T> {
    type Real = T;
    fn modulus(self) -> T {
        self.norm()
    }
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn from_real(r: T) -> Self {
        Complex::new(r, T::zero())
    }
    fn real_part(self) -> T {
        self.re
    }
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Γ(x), evaluated in double precision.
pub fn gamma<T: Real>(x: T) -> T {
    T::lit(statrs::function::gamma::gamma(x.as_f64()))
}

/// Machine epsilon scaled for tolerances that must hold in either precision.
pub fn eps<T: Real>() -> T {
    T::epsilon()
}
