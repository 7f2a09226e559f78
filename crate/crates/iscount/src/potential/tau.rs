//! Rigorous bounds on `2^e` for rational `e` using fixed-point integers with
//! directed rounding, and the branching-factor test built on them.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const START_BITS: u64 = 128;
pub const CAP_BITS: u64 = 4096;

/// `[lo, hi] / 2^bits`.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u64,
}

impl Interval {
    fn exact(x: BigInt, bits: u64) -> Self {
        Interval { lo: x.clone(), hi: x, bits }
    }
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn ln2(bits: u64) -> Interval {
    let one = BigInt::one() << bits;
    let terms = bits + 8;
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for k in 1..=terms {
        let den = BigInt::from(k) << k;
        lo += floor_div(&one, &den);
        hi += ceil_div(&one, &den);
    }
    // the tail Σ_{k>N} 1/(k 2^k) is below 2^{-N}
    hi += ceil_div(&one, &(BigInt::one() << terms));
    Interval { lo, hi, bits }
}

/// Bounds on `exp(−u)` for `u ∈ [lo, hi] ⊂ [0, 1/2]`.
fn exp_neg_small(lo: &BigInt, hi: &BigInt, bits: u64) -> Interval {
    let one = BigInt::one() << bits;
    // upper bound uses the smallest u, lower bound the largest
    let series = |u: &BigInt, upper: bool| -> BigInt {
        let mut mag_hi = one.clone();
        let mut mag_lo = one.clone();
        let mut sum = one.clone();
        let mut j = 1u64;
        loop {
            let den = BigInt::from(j) << bits;
            mag_hi = ceil_div(&(&mag_hi * u), &den);
            mag_lo = floor_div(&(&mag_lo * u), &den);
            if j % 2 == 1 {
                sum -= if upper { &mag_lo } else { &mag_hi };
            } else {
                sum += if upper { &mag_hi } else { &mag_lo };
            }
            let finished = mag_hi.is_zero() || mag_hi <= BigInt::one();
            // stop on a positive term for an upper bound, negative for a lower one
            if finished && (j % 2 == 0) == upper {
                return sum;
            }
            j += 1;
        }
    };
    Interval { lo: series(hi, false), hi: series(lo, true), bits }
}

/// Bounds on `2^{−e}` for rational `e ≥ 0`.
fn pow2_neg(e: &BigRational, bits: u64) -> Interval {
    let one = BigInt::one() << bits;
    if e.is_integer() {
        let n = e.to_integer().to_u64().expect("exponent fits");
        return if n > bits {
            Interval { lo: BigInt::zero(), hi: BigInt::one(), bits }
        } else {
            Interval::exact(&one >> n, bits)
        };
    }
    let whole = e.floor().to_integer().to_u64().expect("exponent fits");
    let frac = e - e.floor();
    let l = ln2(bits);
    let (p, q) = (frac.numer().clone(), frac.denom().clone());
    // u = frac · ln 2, then reduce by 2^r so that u / 2^r ≤ 1/2
    let r = 1u64;
    let scale = &q << r;
    let u_lo = floor_div(&(&p * &l.lo), &scale);
    let u_hi = ceil_div(&(&p * &l.hi), &scale);
    let mut iv = exp_neg_small(&u_lo, &u_hi, bits);
    for _ in 0..r {
        iv.lo = (&iv.lo * &iv.lo) >> bits;
        iv.hi = ceil_div(&(&iv.hi * &iv.hi), &one);
    }
    if whole > 0 {
        iv.lo = &iv.lo >> whole;
        iv.hi = ceil_div(&iv.hi, &(BigInt::one() << whole));
    }
    if iv.lo.sign() == Sign::Minus {
        iv.lo = BigInt::zero();
    }
    iv
}

/// Bounds on `2^e` for any rational `e`.
pub fn pow2(e: &BigRational, bits: u64) -> Interval {
    if !e.is_positive() {
        return pow2_neg(&-e, bits);
    }
    // 2^e = 2^n · 2^{−(n−e)} with n = ⌈e⌉
    let n = e.ceil();
    let shift = n.to_integer().to_u64().expect("exponent fits");
    let mut iv = pow2_neg(&(&n - e), bits);
    iv.lo <<= shift;
    iv.hi <<= shift;
    iv
}

/// Outcome of one certification attempt at a given precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauCheck {
    AtMostOne,
    AboveOne,
    Unresolved,
}

pub fn check_at(e1: &BigRational, e2: &BigRational, bits: u64) -> TauCheck {
    let a = pow2_neg(e1, bits);
    let b = pow2_neg(e2, bits);
    let one = BigInt::one() << bits;
    if &a.hi + &b.hi <= one {
        TauCheck::AtMostOne
    } else if &a.lo + &b.lo > one {
        TauCheck::AboveOne
    } else {
        TauCheck::Unresolved
    }
}

/// True only when `2^{−e1} + 2^{−e2} ≤ 1` is proved at some precision between
/// `start` and `cap` bits.
pub fn certify_tau_leq_2_with(e1: &BigRational, e2: &BigRational, start: u64, cap: u64) -> Result<bool> {
    if !e1.is_positive() || !e2.is_positive() {
        return Err(Error::Input("branching exponents must be positive".into()));
    }
    let mut bits = start.max(64);
    loop {
        match check_at(e1, e2, bits) {
            TauCheck::AtMostOne => return Ok(true),
            TauCheck::AboveOne => return Ok(false),
            TauCheck::Unresolved if bits >= cap => return Ok(false),
            TauCheck::Unresolved => bits *= 2,
        }
    }
}

pub fn certify_tau_leq_2(e1: &BigRational, e2: &BigRational) -> Result<bool> {
    certify_tau_leq_2_with(e1, e2, START_BITS, CAP_BITS)
}

/// `⌈x · 10^digits⌉ / 10^digits` printed with exactly `digits` decimals.
pub fn ceil_decimal(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let n = (x * BigRational::from_integer(scale.clone())).ceil().to_integer();
    fixed_point_string(&n, digits)
}

pub(crate) fn fixed_point_string(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let mut s = n.abs().to_string();
    let width = digits as usize + 1;
    if s.len() < width {
        s = "0".repeat(width - s.len()) + &s;
    }
    let (a, b) = s.split_at(s.len() - digits as usize);
    let body = if digits == 0 { a.to_string() } else { format!("{a}.{b}") };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `⌈2^e · 10^digits⌉ / 10^digits`, refining precision until the bounds agree.
pub fn ceil_pow2_decimal(e: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let mut bits = START_BITS;
    loop {
        let iv = pow2(e, bits);
        let den = BigInt::one() << bits;
        let lo = ceil_div(&(&iv.lo * &scale), &den);
        let hi = ceil_div(&(&iv.hi * &scale), &den);
        if lo == hi || bits >= CAP_BITS {
            return fixed_point_string(&hi, digits);
        }
        bits *= 2;
    }
}

/// Reporting-only branching factor: the root `x > 1` of `Σ x^{−a_i} = 1`.
pub fn branching_factor(exps: &[f64]) -> f64 {
    let f = |x: f64| exps.iter().map(|a| x.powf(-a)).sum::<f64>() - 1.0;
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while f(hi) > 0.0 && hi < 1e12 {
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}
