//! Associated average degree and the 2-degree guarantee `D₂(k)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `K = ⌊k⌋ + 1`.
pub fn big_k(k: &BigRational) -> i64 {
    k.floor().to_integer().to_i64().expect("k fits in i64") + 1
}

/// `(d + #{x_i < k}) / (1 + Σ_{x_i < k} 1/x_i)`.
pub fn aad_star(k: &BigRational, x: &[i64]) -> Result<BigRational> {
    if x.is_empty() {
        return Err(Error::Input("aad* of an empty tuple".into()));
    }
    if x.iter().any(|&xi| xi <= 0) {
        return Err(Error::Input("aad* entries must be positive".into()));
    }
    let mut a = x.len() as i64;
    let mut b = BigRational::one();
    for &xi in x {
        if int(xi) < *k {
            a += 1;
            b += BigRational::new(BigInt::one(), BigInt::from(xi));
        }
    }
    Ok(int(a) / b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuitabilityWitness {
    pub d: i64,
    pub s_count: i64,
    pub q: i64,
    pub d0: i64,
    pub d1: i64,
}

/// Searches `(d, s)` for a witness that `z` is suitable for `k`. For
/// `z ≥ K²` the trivial witness has `d = K` and every entry equal to `K`.
pub fn is_suitable(k: &BigRational, z: i64) -> Option<SuitabilityWitness> {
    let kk = big_k(k);
    if z >= kk * kk {
        return Some(SuitabilityWitness { d: kk, s_count: kk, q: kk, d0: 0, d1: 0 });
    }
    let mut d = kk;
    while 2 * d <= z {
        for s in 0..d {
            let rest = d - s;
            if z < kk * s + 2 * rest || z > kk * s + (kk - 1) * rest {
                continue;
            }
            let (q, d1) = (z - kk * s).div_rem(&rest);
            let d0 = rest - d1;
            let num = int(d + d0 + d1);
            let den = BigRational::one()
                + BigRational::new(BigInt::from(d0), BigInt::from(q))
                + BigRational::new(BigInt::from(d1), BigInt::from(q + 1));
            if num / den > *k {
                return Some(SuitabilityWitness { d, s_count: s, q, d0, d1 });
            }
        }
        d += 1;
    }
    None
}

/// Least suitable `z` in `[2K, K²]`.
pub fn d2(k: &BigRational) -> i64 {
    assert!(*k >= int(2), "d2 needs k >= 2");
    let kk = big_k(k);
    (2 * kk..kk * kk).find(|&z| is_suitable(k, z).is_some()).unwrap_or(kk * kk)
}

/// 27 below 5, otherwise `max(2k, D₂(k))` compared exactly.
pub fn d2_prime(k: &BigRational) -> BigRational {
    if *k < int(5) {
        return int(27);
    }
    let two_k = k * int(2);
    let d = int(d2(k));
    if two_k > d {
        two_k
    } else {
        d
    }
}

/// `D₂′` for the slice that starts at boundary index `i − 1` (1-based slices;
/// the first slice starts at `k₀ = −1`).
pub fn d2_prime_for_slice(prev: Option<&BigRational>) -> BigRational {
    match prev {
        None => int(27),
        Some(k) => d2_prime(k),
    }
}

pub(crate) fn ceil_half(x: &BigRational) -> BigRational {
    (x / int(2)).ceil()
}

pub(crate) fn floor_half(x: &BigRational) -> BigRational {
    (x / int(2)).floor()
}

pub(crate) fn is_nonneg(x: &BigRational) -> bool {
    !x.is_negative() || x.is_zero()
}
