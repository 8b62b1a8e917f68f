//! Exact scalars: rationals, the cyclotomic fields `Q(ζ_p)` for prime `p`,
//! and finitely supported Laurent polynomials in `q`.

mod cyclotomic;
mod laurent;
mod rational;

pub use cyclotomic::{is_prime, primitive_roots, roots_of_unity, CyclotomicNumber};
pub use laurent::LaurentScalar;
pub(crate) use laurent::split_signed_terms as laurent_split_terms;
pub use rational::{fmt_rational, parse_rational, rat, ExtRational, Rational};

use std::fmt::Debug;

use num_traits::{One, Zero};

/// A commutative field with exact arithmetic. Zero and one come from
/// [`num_traits::Zero`] and [`num_traits::One`].
///
/// Method names avoid `add`/`mul` so they never collide with `std::ops`.
pub trait Field: Clone + PartialEq + Debug + Send + Sync + Zero + One + 'static {
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` exactly when `self` is zero.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }
}

impl Field for Rational {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}
