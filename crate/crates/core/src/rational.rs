//! Exact rationals used for all combinatorial constants.

use num_rational::Ratio;

/// Exact rational with 128-bit numerator and denominator.
pub type Rational = Ratio<i128>;

/// `1 / n!` as an exact rational.
pub fn inv_factorial(n: u32) -> Rational {
    Rational::new(1, factorial(n))
}

pub fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Serializes a [`Rational`] as `{"num": .., "den": ..}`.
#[cfg(feature = "serde")]
pub mod serde_num_den {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct NumDen {
        num: i128,
        den: i128,
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        NumDen {
            num: *r.numer(),
            den: *r.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let nd = NumDen::deserialize(d)?;
        if nd.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(nd.num, nd.den))
    }
}
