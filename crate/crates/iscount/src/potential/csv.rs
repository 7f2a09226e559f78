use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PrePotential;
use crate::error::{Error, Result};

fn parse(line: usize, msg: String) -> Error {
    Error::parse(line, msg)
}

fn parse_number(tok: &str, line: usize) -> Result<BigRational> {
    let tok = tok.trim();
    let bad = || parse(line, format!("malformed number `{tok}`"));
    if tok.is_empty() {
        return Err(parse(line, "empty value".to_string()));
    }
    if let Some((p, q)) = tok.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if !q.is_positive() {
            return Err(parse(line, format!("non-positive denominator in `{tok}`")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok.strip_prefix('+').unwrap_or(tok)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if (int_part.is_empty() && frac_part.is_empty()) || !digits_ok(int_part) || !digits_ok(frac_part) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let value = BigRational::new(all, BigInt::from(10u32).pow(frac_part.len() as u32));
    Ok(if neg { -value } else { value })
}

/// A single integer, `p/q` or decimal token.
pub fn parse_rational(tok: &str) -> Result<BigRational> {
    parse_number(tok, 1)
}

fn parse_line(text: &str, line: usize) -> Result<Vec<BigRational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| parse_number(t, line)).collect()
}

pub fn parse_potential(text: &str) -> Result<PrePotential> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .collect();
    let mut it = lines.iter().peekable();
    let bipartite = matches!(it.peek(), Some((_, l)) if l.trim() == "Bipartite");
    if bipartite {
        it.next();
    }
    let mut rows = Vec::new();
    for &(no, l) in it {
        rows.push((no, l));
    }
    while rows.len() > 3 && rows.last().map_or(false, |(_, l)| l.trim().is_empty()) {
        rows.pop();
    }
    if rows.len() == 2 {
        rows.push((rows[1].0 + 1, ""));
    }
    if rows.len() != 3 {
        let at = rows.get(3).map_or(lines.len().max(1), |r| r.0);
        return Err(parse(at, format!("expected 3 data lines, found {}", rows.len())));
    }
    let rho = parse_line(rows[0].1, rows[0].0)?;
    let sigma = parse_line(rows[1].1, rows[1].0)?;
    let boundaries = parse_line(rows[2].1, rows[2].0)?;
    if rho.is_empty() {
        return Err(parse(rows[0].0, "no rho values".to_string()));
    }
    if sigma.len() != rho.len() {
        return Err(parse(rows[1].0, format!("{} sigma values for {} rho values", sigma.len(), rho.len())));
    }
    if boundaries.len() + 1 != rho.len() {
        return Err(parse(
            rows[2].0,
            format!("{} boundaries for {} slices (need {})", boundaries.len(), rho.len(), rho.len() - 1),
        ));
    }
    if let Some(w) = boundaries.windows(2).position(|w| w[0] >= w[1]) {
        return Err(parse(rows[2].0, format!("boundaries not increasing at position {}", w + 2)));
    }
    Ok(PrePotential { bipartite, rho, sigma, boundaries })
}

fn fraction(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Shortest exact decimal when the denominator divides a power of ten.
pub(crate) fn decimal(x: &BigRational) -> Option<String> {
    let mut d = x.denom().clone();
    let (two, five) = (BigInt::from(2u32), BigInt::from(5u32));
    let mut digits = 0u32;
    let (mut twos, mut fives) = (0u32, 0u32);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    digits += twos.max(fives);
    let scaled = (x * BigRational::from_integer(BigInt::from(10u32).pow(digits))).to_integer();
    Some(super::tau::fixed_point_string(&scaled, digits))
}

/// Canonical form: ρ and boundaries as integers or reduced fractions, σ as
/// terminating decimals where possible.
pub fn serialize_potential(p: &PrePotential) -> String {
    let join = |xs: &[BigRational], f: &dyn Fn(&BigRational) -> String| {
        xs.iter().map(f).collect::<Vec<_>>().join(",")
    };
    let mut out = String::new();
    if p.bipartite {
        out.push_str("Bipartite\n");
    }
    out.push_str(&join(&p.rho, &fraction));
    out.push('\n');
    out.push_str(&join(&p.sigma, &|x| decimal(x).unwrap_or_else(|| fraction(x))));
    out.push('\n');
    out.push_str(&join(&p.boundaries, &fraction));
    out.push('\n');
    out
}
