//! Localizations of the integers described by their inverted primes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// A localization of the integers.
///
/// Either a finite set of primes is inverted, or all primes except one
/// (the local ring at `p`). An integer is a unit exactly when every prime
/// factor of its absolute value is inverted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SLocalRing {
    /// `Z[1/p : p in set]`.
    InvertedPrimes(BTreeSet<u64>),
    /// `Z` localized at `p`: every prime other than `p` is inverted.
    LocalAt(u64),
}

impl SLocalRing {
    /// The ring `Z` itself: no primes inverted.
    pub fn integers() -> Self {
        SLocalRing::InvertedPrimes(BTreeSet::new())
    }

    /// `Z[1/6]`, the standing hypothesis ring with 2 and 3 inverted.
    pub fn z_one_sixth() -> Self {
        SLocalRing::inverted(&[2, 3])
    }

    pub fn inverted(primes: &[u64]) -> Self {
        SLocalRing::InvertedPrimes(primes.iter().copied().collect())
    }

    /// Whether a nonzero integer becomes a unit in this ring.
    ///
    /// `LocalAt(p)` only tests divisibility by `p`, so large inputs are
    /// never factored.
    pub fn is_unit(&self, n: &Int) -> bool {
        if n.is_zero() {
            return false;
        }
        match self {
            SLocalRing::LocalAt(p) => {
                let p = BigInt::from(*p);
                !(n % &p).is_zero()
            }
            SLocalRing::InvertedPrimes(primes) => {
                let mut m = n.abs();
                for p in primes {
                    let p = BigInt::from(*p);
                    while (&m % &p).is_zero() {
                        m /= &p;
                    }
                }
                m.is_one()
            }
        }
    }

    /// Whether a rational number lies in the ring (reduced denominator is a unit).
    pub fn contains(&self, q: &Rat) -> bool {
        self.is_unit(q.denom())
    }

    /// Whether a rational number is a unit of the ring.
    pub fn is_unit_rat(&self, q: &Rat) -> bool {
        !q.is_zero() && self.is_unit(q.numer()) && self.is_unit(q.denom())
    }

    pub fn has_two_and_three(&self) -> bool {
        self.is_unit(&Int::from(2)) && self.is_unit(&Int::from(3))
    }
}

impl fmt::Display for SLocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SLocalRing::InvertedPrimes(ps) if ps.is_empty() => write!(f, "Z"),
            SLocalRing::InvertedPrimes(ps) => {
                let list: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "Z[1/{{{}}}]", list.join(","))
            }
            SLocalRing::LocalAt(p) => write!(f, "Z_({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_detection_inverted_primes() {
        let r = SLocalRing::z_one_sixth();
        assert!(r.is_unit(&Int::from(1)));
        assert!(r.is_unit(&Int::from(-1)));
        assert!(r.is_unit(&Int::from(6)));
        assert!(r.is_unit(&Int::from(-144)));
        assert!(!r.is_unit(&Int::from(5)));
        assert!(!r.is_unit(&Int::from(10)));
        assert!(!r.is_unit(&Int::from(0)));
    }

    #[test]
    fn unit_detection_local_at() {
        let r = SLocalRing::LocalAt(5);
        assert!(r.is_unit(&Int::from(6)));
        assert!(r.is_unit(&Int::from(-7)));
        assert!(!r.is_unit(&Int::from(10)));
        assert!(!r.is_unit(&Int::from(0)));
        // large integers are not factored
        let big: Int = Int::from(10).pow(50) + 1;
        assert!(r.is_unit(&big));
    }

    #[test]
    fn nothing_inverted_models_z() {
        let r = SLocalRing::integers();
        assert!(r.is_unit(&Int::from(-1)));
        assert!(!r.is_unit(&Int::from(2)));
    }

    #[test]
    fn rational_membership() {
        let r = SLocalRing::z_one_sixth();
        assert!(r.contains(&Rat::new(Int::from(5), Int::from(12))));
        assert!(!r.contains(&Rat::new(Int::from(1), Int::from(5))));
    }
}
