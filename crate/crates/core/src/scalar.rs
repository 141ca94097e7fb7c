//! Scalar abstraction: all core math is generic over `Real`, implemented for
//! `f32` and `f64`. The experiment harness runs everything at `f64` so that
//! finite-difference checks stay tight.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Floating-point scalar for network weights, actions, and losses.
pub trait Real:
    Float + num_traits::NumAssignOps + Sum + Debug + Display + Default + Send + Sync + 'static
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;

    /// One standard-normal draw.
    fn standard_normal<G: Rng + ?Sized>(rng: &mut G) -> Self;

    /// One uniform draw from `[-limit, limit)`.
    fn uniform_symmetric<G: Rng + ?Sized>(rng: &mut G, limit: Self) -> Self;
}

impl Real for f32 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn to_f64(self) -> f64 {
        f64::from(self)
    }

    #[inline]
    fn standard_normal<G: Rng + ?Sized>(rng: &mut G) -> Self {
        StandardNormal.sample(rng)
    }

    #[inline]
    fn uniform_symmetric<G: Rng + ?Sized>(rng: &mut G, limit: Self) -> Self {
        rng.random_range(-limit..limit)
    }
}

impl Real for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }

    #[inline]
    fn standard_normal<G: Rng + ?Sized>(rng: &mut G) -> Self {
        StandardNormal.sample(rng)
    }

    #[inline]
    fn uniform_symmetric<G: Rng + ?Sized>(rng: &mut G, limit: Self) -> Self {
        rng.random_range(-limit..limit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn conversions_round_trip() {
        assert_eq!(f64::from_f64(1.5).to_f64(), 1.5);
        assert_eq!(f32::from_f64(1.5).to_f64(), 1.5);
    }

    #[test]
    fn uniform_symmetric_stays_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let x = f64::uniform_symmetric(&mut rng, 0.25);
            assert!((-0.25..0.25).contains(&x));
        }
    }
}
