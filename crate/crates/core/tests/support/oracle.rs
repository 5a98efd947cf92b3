//! Independent oracles for the test suites. Nothing here calls into the
//! code paths it is used to check.

#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigUint;

const SIEVE_LIMIT: usize = 1_000_000;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut out = Vec::new();
        for i in 2..=SIEVE_LIMIT {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Exponent of prime `p` in `a!`.
fn legendre(a: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut power = p;
    while power <= a {
        total += a / power;
        match power.checked_mul(p) {
            Some(next) => power = next,
            None => break,
        }
    }
    total
}

fn product(factors: &[BigUint]) -> BigUint {
    match factors.len() {
        0 => BigUint::from(1u32),
        1 => factors[0].clone(),
        len => product(&factors[..len / 2]) * product(&factors[len / 2..]),
    }
}

/// `C(a, b)` as an exact big integer, built from its prime factorisation.
pub fn exact_binomial(a: u64, b: u64) -> BigUint {
    assert!(b <= a && a as usize <= SIEVE_LIMIT);
    let factors: Vec<BigUint> = primes()
        .iter()
        .take_while(|&&p| p <= a)
        .filter_map(|&p| {
            let e = legendre(a, p) - legendre(b, p) - legendre(a - b, p);
            (e > 0).then(|| BigUint::from(p).pow(e as u32))
        })
        .collect();
    product(&factors)
}

/// `C(a, b)` by the multiplicative recurrence, for small `a`.
pub fn exact_binomial_small(a: u64, b: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..b {
        acc = acc * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    acc
}

/// `log2 x` from the top 64 bits of a big integer.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.iter_u64_digits().next().unwrap_or(0) as f64).log2();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    let top = top.iter_u64_digits().next().unwrap();
    (top as f64).log2() + shift as f64
}
