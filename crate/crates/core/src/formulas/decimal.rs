use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub const MAX_PRECISION: u32 = 1000;

/// A fixed-point decimal `scaled / 10^digits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedDecimal {
    scaled: BigInt,
    digits: u32,
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

impl FixedDecimal {
    pub fn from_scaled(scaled: BigInt, digits: u32) -> Self {
        FixedDecimal { scaled, digits }
    }

    /// Truncates toward negative infinity.
    pub fn from_rational(r: &BigRational, digits: u32) -> Self {
        let scaled = (r.numer() * pow10(digits)).div_floor(r.denom());
        FixedDecimal { scaled, digits }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn scaled(&self) -> &BigInt {
        &self.scaled
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let d = self.digits.max(other.digits);
        (
            &self.scaled * pow10(d - self.digits),
            &other.scaled * pow10(d - other.digits),
            d,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, d) = self.aligned(other);
        FixedDecimal::from_scaled(a - b, d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, d) = self.aligned(other);
        FixedDecimal::from_scaled(a + b, d)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        FixedDecimal::from_scaled(&self.scaled * k, self.digits)
    }

    pub fn abs(&self) -> Self {
        FixedDecimal::from_scaled(self.scaled.abs(), self.digits)
    }

    /// `|self| < 10^-k`.
    pub fn abs_below_pow10(&self, k: u32) -> bool {
        if k >= self.digits {
            // only an exact zero is provably below at this precision
            return self.scaled.is_zero();
        }
        self.scaled.abs() < pow10(self.digits - k)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.scaled.clone(), pow10(self.digits))
    }

    /// Rounded to `places` decimals for display.
    pub fn to_string_places(&self, places: u32) -> String {
        let places = places.min(self.digits);
        let cut = pow10(self.digits - places);
        let (q, r) = self.scaled.abs().div_rem(&cut);
        let q = if &r * 2u32 >= cut { q + 1 } else { q };
        let neg = self.scaled.sign() == Sign::Minus && !q.is_zero();
        let s = q.to_string();
        let places = places as usize;
        let s = if s.len() <= places {
            format!("{}{s}", "0".repeat(places + 1 - s.len()))
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - places);
        let sign = if neg { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl fmt::Display for FixedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_places(self.digits))
    }
}

/// `φ` and `φ/√5` to a fixed number of decimals.
#[derive(Debug, Clone)]
pub struct GoldenRef {
    pub phi: FixedDecimal,
    pub phi_over_sqrt5: FixedDecimal,
}

const GUARD: u32 = 8;

/// Computes `φ = (1+√5)/2` and `φ/√5 = (5+√5)/10` from an integer square
/// root, rounded to `precision` decimals. Checks `(φ²+1)/5 = φ/√5` and
/// `φ² = φ + 1` at working precision first.
pub fn golden_ratio_ref(precision: u32) -> Result<GoldenRef> {
    if precision > MAX_PRECISION {
        return Err(Error::ArgumentOutOfRange {
            operation: "golden_ratio_ref",
            value: precision as i64,
            bound: "precision <= 1000",
        });
    }
    let p = precision + GUARD;
    let scale = BigUint::from(10u32).pow(p);
    let sqrt5 = (BigUint::from(5u32) * &scale * &scale).sqrt();
    let phi = FixedDecimal::from_scaled(BigInt::from((&scale + &sqrt5) / 2u32), p);
    let ratio = FixedDecimal::from_scaled(BigInt::from((&scale * 5u32 + &sqrt5) / 10u32), p);

    let phi_sq = FixedDecimal::from_scaled(phi.scaled() * phi.scaled() / pow10(p), p);
    let one = FixedDecimal::from_scaled(pow10(p), p);
    let via_square = FixedDecimal::from_scaled(phi_sq.add(&one).scaled() / 5, p);
    if !via_square.sub(&ratio).abs_below_pow10(p - 4) {
        return Err(Error::IdentityViolated {
            context: "golden_ratio_ref",
            detail: "(phi^2+1)/5 != phi/sqrt5".into(),
        });
    }
    if !phi_sq.sub(&phi).sub(&one).abs_below_pow10(p - 4) {
        return Err(Error::IdentityViolated {
            context: "golden_ratio_ref",
            detail: "phi^2 - phi - 1 != 0".into(),
        });
    }
    let round = |x: &FixedDecimal| {
        let half: BigInt = pow10(GUARD) / 2;
        FixedDecimal::from_scaled((x.scaled() + &half).div_floor(&pow10(GUARD)), precision)
    };
    Ok(GoldenRef {
        phi: round(&phi),
        phi_over_sqrt5: round(&ratio),
    })
}
