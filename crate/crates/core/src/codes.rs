//! Codelength arithmetic: real-valued bit counts, prefix-free codes on the
//! natural numbers, log-binomials and the mixing of several codewords into
//! one.
//!
//! Codelengths are never rounded to whole bits; a codelength function `L`
//! stands for the distribution `2^-L`.

use std::f64::consts::PI;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A codelength in bits (base 2).
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Bits(pub f64);

impl Bits {
    pub const ZERO: Bits = Bits(0.0);

    pub fn get(self) -> f64 {
        self.0
    }

    /// The probability `2^-self` this codelength stands for.
    pub fn probability(self) -> f64 {
        (-self.0).exp2()
    }
}

impl Add for Bits {
    type Output = Bits;

    fn add(self, rhs: Bits) -> Bits {
        Bits(self.0 + rhs.0)
    }
}

impl Sum for Bits {
    fn sum<I: Iterator<Item = Bits>>(iter: I) -> Bits {
        Bits(iter.map(Bits::get).sum())
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6} bits", self.0)
    }
}

/// A prefix-free code on the natural numbers `0, 1, 2, ...`.
///
/// The Elias codes are defined on positive integers, so `k` is coded as
/// `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntegerCode {
    EliasGamma,
    EliasDelta,
    /// Uniform over `0..=max`.
    UniformBounded {
        max: u64,
    },
}

impl IntegerCode {
    pub fn codelength(self, k: u64) -> Result<Bits> {
        integer_codelength(self, k)
    }
}

impl fmt::Display for IntegerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegerCode::EliasGamma => f.write_str("gamma"),
            IntegerCode::EliasDelta => f.write_str("delta"),
            IntegerCode::UniformBounded { max } => write!(f, "uniform:{max}"),
        }
    }
}

impl FromStr for IntegerCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gamma" => Ok(IntegerCode::EliasGamma),
            "delta" => Ok(IntegerCode::EliasDelta),
            other => other
                .strip_prefix("uniform:")
                .and_then(|max| max.parse().ok())
                .map(|max| IntegerCode::UniformBounded { max })
                .ok_or_else(|| {
                    Error::Config(format!(
                        "unknown integer code '{other}' (expected gamma, delta or uniform:<max>)"
                    ))
                }),
        }
    }
}

fn floor_log2(x: u64) -> u64 {
    debug_assert!(x > 0);
    u64::from(63 - x.leading_zeros())
}

/// Length of the codeword for `k` under `code`.
pub fn integer_codelength(code: IntegerCode, k: u64) -> Result<Bits> {
    match code {
        IntegerCode::EliasGamma => {
            let x = k.saturating_add(1);
            Ok(Bits((2 * floor_log2(x) + 1) as f64))
        }
        IntegerCode::EliasDelta => {
            let x = k.saturating_add(1);
            let len = floor_log2(x);
            Ok(Bits((len + 2 * floor_log2(len + 1) + 1) as f64))
        }
        IntegerCode::UniformBounded { max } => {
            if k > max {
                return Err(Error::Domain(format!(
                    "{k} is outside the uniform code's range 0..={max}"
                )));
            }
            Ok(Bits((max as f64 + 1.0).log2()))
        }
    }
}

/// Below this many factors the binomial is summed term by term.
const DIRECT_TERMS: u64 = 64;

/// `log2 C(a, b)`.
///
/// Small `min(b, a - b)` is summed directly as `sum ln((a-k+i)/i)`. Larger
/// ones use Stirling's series rearranged so the huge `x ln x` terms cancel
/// analytically, which keeps the relative error near machine precision even
/// for `a` in the trillions.
pub fn log2_binomial(a: u64, b: u64) -> Result<Bits> {
    if b > a {
        return Err(Error::Domain(format!("binomial C({a}, {b}) with b > a")));
    }
    let k = b.min(a - b);
    if k == 0 {
        return Ok(Bits::ZERO);
    }
    let nats = if k <= DIRECT_TERMS {
        let base = (a - k) as f64;
        (1..=k)
            .map(|i| {
                let i = i as f64;
                ((base + i) / i).ln()
            })
            .sum::<f64>()
    } else {
        let (a, k) = (a as f64, k as f64);
        let rest = a - k;
        k * (a / k).ln() - rest * (-k / a).ln_1p()
            + 0.5 * (a / (2.0 * PI * k * rest)).ln()
            + stirling_tail(a)
            - stirling_tail(k)
            - stirling_tail(rest)
    };
    Ok(Bits((nats / std::f64::consts::LN_2).max(0.0)))
}

/// `ln x! - (x ln x - x + ln(2 pi x)/2)` for `x` well above 1.
fn stirling_tail(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// `-log2 sum_i 2^-L_i`: one codelength for the union of several codewords.
///
/// The smallest length is factored out before exponentiating, so the sum is
/// always at least 1 and the result never exceeds `min(lengths)`.
pub fn codelength_mix(lengths: &[Bits]) -> Result<Bits> {
    let min = lengths.iter().map(|b| b.0).fold(f64::INFINITY, f64::min);
    if lengths.is_empty() {
        return Err(Error::Domain(
            "cannot mix an empty list of codelengths".into(),
        ));
    }
    if min.is_infinite() {
        return Ok(Bits(min));
    }
    let mass: f64 = lengths.iter().map(|b| (min - b.0).exp2()).sum();
    Ok(Bits(min - mass.log2()))
}
