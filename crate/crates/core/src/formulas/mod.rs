//! Closed forms for the `2×n` and `3×n` families, in exact arithmetic.
//!
//! Every division is preceded by a divisibility check; a failed check is an
//! [`Error::IdentityViolated`], never a rounded answer.

mod decimal;
mod fib;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GridFamily;

pub use decimal::{golden_ratio_ref, FixedDecimal, GoldenRef, MAX_PRECISION};
pub use fib::{fib, FibCache};

pub type ExactRational = BigRational;

fn require(operation: &'static str, n: usize, min: usize, bound: &'static str) -> Result<()> {
    if n < min {
        return Err(Error::ArgumentOutOfRange {
            operation,
            value: n as i64,
            bound,
        });
    }
    Ok(())
}

fn exact_div(context: &'static str, num: BigUint, den: u32) -> Result<BigUint> {
    let (q, r) = num.div_rem(&BigUint::from(den));
    if !r.is_zero() {
        return Err(Error::IdentityViolated {
            context,
            detail: format!("{num} is not divisible by {den}"),
        });
    }
    Ok(q)
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    BigRational::new(num.into(), den.into())
}

/// Length-`k` binary strings with no two adjacent 0's and an even number of
/// 1's: `⌊F(k+3)/2⌋ − ⌊F(k+1)/2⌋`, with `|E_0| = 1` and `0` for `k < 0`.
pub fn even_string_count(k: i64) -> BigUint {
    match k {
        k if k < 0 => BigUint::zero(),
        0 => BigUint::one(),
        k => {
            let k = k as usize;
            fib(k + 3) / 2u32 - fib(k + 1) / 2u32
        }
    }
}

/// As [`even_string_count`] with an odd number of 1's: `F(k+2) − |E_k|`.
pub fn odd_string_count(k: i64) -> BigUint {
    if k < 0 {
        return BigUint::zero();
    }
    fib(k as usize + 2) - even_string_count(k)
}

/// Length-`n` strings of the given parity that begin with `01` and end with
/// `10`, i.e. valid linear strings whose wrap-around has adjacent 0's.
///
/// For `n >= 4` the interior is any valid length-`n−4` string of the same
/// parity. At `n = 3` prefix and suffix overlap in the single string `010`.
pub fn wrap_conflict_count(odd: bool, n: usize) -> BigUint {
    match n {
        0..=2 => BigUint::zero(),
        3 => BigUint::from(odd as u32),
        _ if odd => odd_string_count(n as i64 - 4),
        _ => even_string_count(n as i64 - 4),
    }
}

/// `|MIS(G_{2×n})| = 2F(n)`.
pub fn mis_count_2xn(n: usize) -> Result<BigUint> {
    require("mis_count_2xn", n, 1, "n >= 1")?;
    Ok(fib(n) * 2u32)
}

/// `|NIMIS(G_{2×n})|`: `(F(n) + F(n/2))/2` for even `n`,
/// `(F(n) + F((n+3)/2))/2` for odd `n`.
pub fn nimis_2xn(n: usize) -> Result<BigUint> {
    require("nimis_2xn", n, 3, "n >= 3")?;
    let symmetric = if n % 2 == 0 {
        fib(n / 2)
    } else {
        fib((n + 3) / 2)
    };
    exact_div("nimis_2xn", fib(n) + symmetric, 2)
}

fn pow2(e: i64) -> ExactRational {
    let p = BigInt::from(2u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `|NIMIS(T_{3×n})| = 2^{n−3} + 2^{⌈(n−4)/2⌉}`, evaluated as a rational so
/// that the negative exponents at `n ∈ {2, 3}` need no special case.
pub fn nimis_tube_3xn(n: usize) -> Result<ExactRational> {
    require("nimis_tube_3xn", n, 2, "n >= 2")?;
    let n = n as i64;
    let value = pow2(n - 3) + pow2(Integer::div_ceil(&(n - 4), &2));
    if !value.is_integer() || value <= BigRational::zero() {
        return Err(Error::IdentityViolated {
            context: "nimis_tube_3xn",
            detail: format!("value {value} is not a positive integer"),
        });
    }
    Ok(value)
}

/// `Σ_{i=1}^{n} F(i) F(n−i+1)`.
pub fn fibonacci_convolution(n: usize) -> BigUint {
    (1..=n).map(|i| fib(i) * fib(n - i + 1)).sum()
}

/// `T(G_{2×n}) = (2/5)[nF(n+2) + (n+2)F(n)]`, cross-checked against twice
/// the Fibonacci convolution.
pub fn total_size_2xn(n: usize) -> Result<BigUint> {
    require("total_size_2xn", n, 1, "n >= 1")?;
    let inner = fib(n + 2) * n + fib(n) * (n + 2);
    let total = exact_div("total_size_2xn", inner * 2u32, 5)?;
    let convolution = fibonacci_convolution(n) * 2u32;
    if convolution != total {
        return Err(Error::IdentityViolated {
            context: "total_size_2xn",
            detail: format!("closed form {total} but 2*convolution {convolution}"),
        });
    }
    Ok(total)
}

/// `A(G_{2×n}) = T(G_{2×n}) / 2F(n)`.
pub fn average_2xn_exact(n: usize) -> Result<ExactRational> {
    let total = total_size_2xn(n)?;
    Ok(ratio(total, mis_count_2xn(n)?))
}

/// Count, total size and average for a `2×n` cyclic family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCounts {
    pub mis_count: BigUint,
    pub total_size: BigUint,
    #[serde(with = "rational_string")]
    pub average: ExactRational,
}

/// `B_{2×n}`: count `2(|E_n| − |E_{n−4}|)`, total `2n(F(n+1) − |E_{n−1}|)`.
pub fn band_counts(n: usize) -> Result<CyclicCounts> {
    require("band_counts", n, 3, "n >= 3")?;
    let strings = even_string_count(n as i64) - wrap_conflict_count(false, n);
    let per_bit = fib(n + 1) - even_string_count(n as i64 - 1);
    let mis_count = strings * 2u32;
    let total_size = per_bit * (2 * n);
    let average = ratio(total_size.clone(), mis_count.clone());
    Ok(CyclicCounts {
        mis_count,
        total_size,
        average,
    })
}

/// `M_{2×n}`: count `2(|O_n| − |O_{n−4}|)`, total `2n|E_{n−1}|`.
pub fn mobius_counts(n: usize) -> Result<CyclicCounts> {
    require("mobius_counts", n, 3, "n >= 3")?;
    let strings = odd_string_count(n as i64) - wrap_conflict_count(true, n);
    let mis_count = strings * 2u32;
    let total_size = even_string_count(n as i64 - 1) * (2 * n);
    let average = ratio(total_size.clone(), mis_count.clone());
    Ok(CyclicCounts {
        mis_count,
        total_size,
        average,
    })
}

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    (0..b).fold(BigUint::one(), |acc, i| acc * (a as u64 - i) / (i + 1))
}

/// The family whose `r`-vertex MIS's are counted by
/// [`size_distribution_2xn_cyclic`]: even sizes occur only in the fat
/// cylinder, odd sizes only in the Möbius strip.
pub fn size_distribution_family(r: usize) -> GridFamily {
    if r % 2 == 0 {
        GridFamily::FatCylinder
    } else {
        GridFamily::Mobius
    }
}

/// Number of `r`-vertex MIS's of `family` (`2×n`, fat cylinder or Möbius):
/// `2(C(r, n−r) + C(r−1, n−r−1))` when the parity of `r` matches the family,
/// otherwise 0.
pub fn size_distribution_2xn_cyclic(family: GridFamily, n: usize, r: usize) -> Result<BigUint> {
    require("size_distribution_2xn_cyclic", n, 3, "n >= 3")?;
    if r == 0 || r > n {
        return Err(Error::ArgumentOutOfRange {
            operation: "size_distribution_2xn_cyclic",
            value: r as i64,
            bound: "0 < r <= n",
        });
    }
    if !matches!(family, GridFamily::FatCylinder | GridFamily::Mobius) {
        return Err(Error::FamilyUnsupported {
            operation: "size_distribution_2xn_cyclic",
            family,
        });
    }
    if size_distribution_family(r) != family {
        return Ok(BigUint::zero());
    }
    let (n, r) = (n as i64, r as i64);
    Ok((binomial(r, n - r) + binomial(r - 1, n - r - 1)) * 2u32)
}

pub(crate) mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
