//! Piecewise-linear potentials `f(m, n)`, their validity checks and the
//! running-time certificates derived from them.

mod csv;
pub mod d2;
pub mod tau;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use csv::{parse_potential, parse_rational, serialize_potential};
pub use d2::{aad_star, d2, d2_prime, is_suitable, SuitabilityWitness};
pub use tau::{branching_factor, certify_tau_leq_2, certify_tau_leq_2_with};

use crate::error::{Error, Result};
use crate::graph::Graph;

const GENERAL_CSV: &str = include_str!("data/general.csv");
const BIPARTITE_CSV: &str = include_str!("data/bipartite.csv");

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrePotential {
    pub bipartite: bool,
    pub rho: Vec<BigRational>,
    pub sigma: Vec<BigRational>,
    /// `k₁ < … < k_{s−1}`; `k₀ = −1` and `k_s = ∞` are implicit.
    pub boundaries: Vec<BigRational>,
}

pub fn general() -> PrePotential {
    parse_potential(GENERAL_CSV).expect("built-in general potential parses")
}

pub fn bipartite() -> PrePotential {
    parse_potential(BIPARTITE_CSV).expect("built-in bipartite potential parses")
}

pub fn builtin_text(name: &str) -> Option<&'static str> {
    match name {
        "general" => Some(GENERAL_CSV),
        "bipartite" => Some(BIPARTITE_CSV),
        _ => None,
    }
}

impl PrePotential {
    pub fn slices(&self) -> usize {
        self.rho.len()
    }

    /// `f_i(m, n) = ρ_i m + σ_i n`, with `i` counted from 1.
    pub fn f_slice(&self, i: usize, m: &BigRational, n: &BigRational) -> BigRational {
        &self.rho[i - 1] * m + &self.sigma[i - 1] * n
    }

    /// `k_{i−1}` for slice `i`, or `None` for the first slice (`k₀ = −1`).
    pub fn lower_boundary(&self, i: usize) -> Option<&BigRational> {
        if i <= 1 {
            None
        } else {
            Some(&self.boundaries[i - 2])
        }
    }

    /// The slice `i` with `k_{i−1} < avg ≤ k_i`.
    pub fn slice_for(&self, avg: &BigRational) -> usize {
        self.boundaries.iter().position(|k| avg <= k).map_or(self.slices(), |p| p + 1)
    }

    /// `f(m, n)` through the slice chosen by `2m/n`; `0` when `n = 0`.
    pub fn f(&self, m: u64, n: u64) -> BigRational {
        if n == 0 {
            return BigRational::zero();
        }
        let avg = BigRational::new(BigInt::from(2 * m), BigInt::from(n));
        self.f_slice(self.slice_for(&avg), &int(m as i64), &int(n as i64))
    }

    /// `f⁺(G)`: the last slice when `Δ ≥ 11`, otherwise `f(m, n)`.
    pub fn f_plus_unchecked(&self, g: &Graph) -> BigRational {
        let (m, n) = (g.size() as u64, g.order() as u64);
        if n == 0 {
            return BigRational::zero();
        }
        if g.max_degree() >= 11 {
            self.f_slice(self.slices(), &int(m as i64), &int(n as i64))
        } else {
            self.f(m, n)
        }
    }

    /// Start of the degree range `[max{6, ⌊k_{i−1}⌋+1}, 10]` for slice `i`.
    pub fn first_degree(&self, i: usize) -> i64 {
        match self.lower_boundary(i) {
            None => 6,
            Some(k) => (k.floor().to_integer().to_i64().unwrap_or(i64::MAX - 1) + 1).max(6),
        }
    }

    /// Exponents `(f_i(d, 1), in-branch decrease)` for slice `i`, degree `d`.
    pub fn branch_exponents(&self, i: usize, d: i64) -> (BigRational, BigRational) {
        let dd = int(d);
        let d2p = d2::d2_prime_for_slice(self.lower_boundary(i));
        let out = self.f_slice(i, &dd, &BigRational::one());
        let sigma = &self.sigma[i - 1];
        let inn = if !self.bipartite {
            let m = d2::ceil_half(&(&dd + &d2p + int(3)));
            self.f_slice(i, &m, &(&dd + int(1)))
        } else if d2::is_nonneg(sigma) {
            self.f_slice(i, &d2p, &(&dd + int(1)))
        } else {
            let n = d2::floor_half(&(&dd + &d2p - int(1)));
            self.f_slice(i, &d2p, &n)
        };
        (out, inn)
    }

    /// Conditions (i) to (vi) plus boundary ordering, in order.
    pub fn check_conditions(&self) -> Vec<ConditionOutcome> {
        let s = self.slices();
        let mut out = Vec::new();
        let mut push = |label: &'static str, failure: Option<String>| {
            out.push(ConditionOutcome { label, passed: failure.is_none(), detail: failure.unwrap_or_default() });
        };
        let shape = s >= 1 && self.sigma.len() == s && self.boundaries.len() + 1 == s;
        push("shape", (!shape).then(|| format!("{} rho, {} sigma, {} boundaries", s, self.sigma.len(), self.boundaries.len())));
        if !shape {
            return out;
        }
        let ascending = self.boundaries.windows(2).position(|w| w[0] >= w[1]);
        push("boundaries ascending", ascending.map(|p| format!("k_{} >= k_{}", p + 1, p + 2)));

        let (rs, ss) = (&self.rho[s - 1], &self.sigma[s - 1]);
        push(
            "(i)",
            (!(rs.is_zero() && ss.is_positive())).then(|| format!("rho_s = {rs}, sigma_s = {ss}")),
        );
        let fail_ii = (0..s - 1).find(|&i| (&self.rho[i] + &self.sigma[i]).is_negative());
        push("(ii)", fail_ii.map(|i| format!("rho_{0} + sigma_{0} < 0", i + 1)));
        let fail_iii = (0..s - 1).find(|&i| self.rho[i].is_zero() && self.sigma[i].is_zero());
        push("(iii)", fail_iii.map(|i| format!("rho_{0} = sigma_{0} = 0", i + 1)));
        let fail_iv = (0..s - 1).find(|&i| self.rho[i] < self.rho[i + 1] || self.sigma[i] > self.sigma[i + 1]);
        push("(iv)", fail_iv.map(|i| format!("monotonicity breaks between slices {} and {}", i + 1, i + 2)));
        let fail_v = match self.boundaries.last() {
            None => None,
            Some(top) => {
                let top = top.floor().to_integer().to_i64().unwrap_or(i64::MAX);
                (6..=top).find(|&j| !self.boundaries.contains(&int(j)))
            }
        };
        push("(v)", fail_v.map(|j| format!("{j} is not a boundary point")));
        let fail_vi = (0..s - 1).find(|&i| {
            let rhs = &self.rho[i + 1] + (&self.sigma[i + 1] - &self.sigma[i]) * int(2) / &self.boundaries[i];
            self.rho[i] != rhs
        });
        push("(vi)", fail_vi.map(|i| format!("recurrence fails at slice {}", i + 1)));
        out
    }

    pub fn conditions_hold(&self) -> bool {
        self.check_conditions().iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub label: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchCertificate {
    pub slice_index: usize,
    pub degree: i64,
    pub exp_out: BigRational,
    pub exp_in: BigRational,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub bipartite: bool,
    pub conditions: Vec<ConditionOutcome>,
    pub certificates: Vec<BranchCertificate>,
    /// `τ(σ_s, 12σ_s) ≤ 2`; `None` when the conditions already failed.
    pub top_certified: Option<bool>,
    pub sigma_s: BigRational,
}

impl ValidationReport {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn passed(&self) -> bool {
        self.conditions_hold()
            && self.certificates.iter().all(|c| c.certified)
            && self.top_certified == Some(true)
    }

    /// `σ_s` rounded up to four decimals.
    pub fn exponent(&self) -> String {
        tau::ceil_decimal(&self.sigma_s, 4)
    }

    /// `2^{σ_s}` rounded up to four decimals.
    pub fn base(&self) -> String {
        tau::ceil_pow2_decimal(&self.sigma_s, 4)
    }

    pub fn render(&self) -> String {
        let mut r = String::new();
        let mode = if self.bipartite { "bipartite" } else { "general" };
        let _ = writeln!(r, "mode: {mode}");
        for c in &self.conditions {
            if c.passed {
                let _ = writeln!(r, "condition {}: ok", c.label);
            } else {
                let _ = writeln!(r, "condition {}: Fails condition {}: {}", c.label, c.label, c.detail);
            }
        }
        if !self.conditions_hold() {
            let _ = writeln!(r, "branch certificates: skipped");
            let _ = writeln!(r, "potential is not valid");
            return r;
        }
        let good = self.certificates.iter().filter(|c| c.certified).count();
        let _ = writeln!(r, "branch certificates: {good} of {} certified", self.certificates.len());
        for c in self.certificates.iter().filter(|c| !c.certified) {
            let _ = writeln!(
                r,
                "  slice {} degree {}: 2^-({}) + 2^-({}) > 1",
                c.slice_index, c.degree, c.exp_out, c.exp_in
            );
        }
        let top = if self.top_certified == Some(true) { "ok" } else { "FAILS" };
        let _ = writeln!(r, "top branch tau(sigma_s, 12 sigma_s) <= 2: {top}");
        let sigma_s = csv::decimal(&self.sigma_s).unwrap_or_else(|| self.sigma_s.to_string());
        let _ = writeln!(r, "sigma_s = {sigma_s}");
        if !self.passed() {
            let _ = writeln!(r, "potential is not valid");
            return r;
        }
        let _ = writeln!(r, "base: {}", self.base());
        let _ = writeln!(r, "running time O(2^({} n)) * poly(1/eps)", self.exponent());
        r
    }
}

pub fn validate(p: &PrePotential) -> ValidationReport {
    let conditions = p.check_conditions();
    let sigma_s = p.sigma.last().cloned().unwrap_or_default();
    let mut report = ValidationReport {
        bipartite: p.bipartite,
        conditions,
        certificates: Vec::new(),
        top_certified: None,
        sigma_s: sigma_s.clone(),
    };
    if !report.conditions_hold() {
        return report;
    }
    for i in 1..=p.slices() {
        for d in p.first_degree(i)..=10 {
            let (exp_out, exp_in) = p.branch_exponents(i, d);
            let certified = exp_out.is_positive()
                && exp_in.is_positive()
                && certify_tau_leq_2(&exp_out, &exp_in).unwrap_or(false);
            report.certificates.push(BranchCertificate { slice_index: i, degree: d, exp_out, exp_in, certified });
        }
    }
    let top_in = &sigma_s * int(12);
    report.top_certified = Some(certify_tau_leq_2(&sigma_s, &top_in).unwrap_or(false));
    report
}

/// `f⁺(G)`; refuses potentials that fail conditions (i) to (vi).
pub fn evaluate_f_plus(p: &PrePotential, g: &Graph) -> Result<BigRational> {
    if !p.conditions_hold() {
        return Err(Error::Precondition("potential fails its validity conditions".into()));
    }
    Ok(p.f_plus_unchecked(g))
}
