//! Maximal-genus numerics for curves in `P^n` not lying on surfaces of degree `< s`.
//!
//! Everything here is driven by the division data of `(d, n, s)`:
//!
//! ```text
//! d - 1 = s m + epsilon,        0 <= epsilon <= s - 1
//! s - 1 = (n - 2) w + v,        0 <= v <= n - 3
//! ```
//!
//! followed by a second division whose shape depends on whether
//! `epsilon < w (n - 1 - v)` (the low branch) or not (the high branch).
//! From those integers we build the extremal first-difference profile Δh
//! of the general hyperplane section, and the maximal genus is read off
//! that profile.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Branch {
    /// `epsilon < w (n - 1 - v)`: divide `epsilon = k w + delta`.
    Low,
    /// `epsilon >= w (n - 1 - v)`: divide `epsilon + n - 2 - v = k (w + 1) + delta`.
    High,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Low => f.write_str("LOW"),
            Branch::High => f.write_str("HIGH"),
        }
    }
}

/// Full division data for a triple `(d, n, s)`.
///
/// Only [`compute_parameters`] builds these, so every instance satisfies the
/// division identities listed on the fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenusParameters {
    pub d: i64,
    pub n: i64,
    pub s: i64,
    /// `d - 1 = s m + epsilon`
    pub m: i64,
    pub epsilon: i64,
    /// `s - 1 = (n - 2) w + v`
    pub w: i64,
    pub v: i64,
    pub branch: Branch,
    pub k: i64,
    pub delta: i64,
    /// 0 on the low branch, 1 on the high branch.
    pub e: i64,
}

impl GenusParameters {
    /// Last index where Δh may be nonzero.
    pub fn top(&self) -> i64 {
        self.m + self.w + self.e
    }
}

/// Computes the division data for `(d, n, s)`.
///
/// Requires `n >= 3`, `s >= n - 1`, `d >= s + 1`, and `m >= w`. Below
/// `m = w` the piecewise profile overlaps itself and no longer sums to `d`,
/// so those triples are rejected rather than given a meaningless profile.
pub fn compute_parameters(d: i64, n: i64, s: i64) -> Result<GenusParameters> {
    if n < 3 {
        return Err(Error::Domain(format!("n = {n} must be at least 3")));
    }
    if s < n - 1 {
        return Err(Error::Domain(format!("s = {s} must be at least n - 1 = {}", n - 1)));
    }
    if d < s + 1 {
        return Err(Error::Domain(format!("d = {d} must be at least s + 1 = {}", s + 1)));
    }
    let (m, epsilon) = (d - 1).div_rem(&s);
    let (w, v) = (s - 1).div_rem(&(n - 2));

    let (branch, k, delta, e) = if epsilon < w * (n - 1 - v) {
        if w == 0 {
            if epsilon > 0 {
                return Err(Error::DegenerateDivision { epsilon });
            }
            (Branch::Low, 0, 0, 0)
        } else {
            let (k, delta) = epsilon.div_rem(&w);
            (Branch::Low, k, delta, 0)
        }
    } else {
        let (k, delta) = (epsilon + n - 2 - v).div_rem(&(w + 1));
        (Branch::High, k, delta, 1)
    };

    if m < w {
        return Err(Error::Domain(format!(
            "d = {d} is too small for (n, s) = ({n}, {s}): need m >= w, got m = {m}, w = {w}"
        )));
    }

    Ok(GenusParameters { d, n, s, m, epsilon, w, v, branch, k, delta, e })
}

/// The extremal Δh profile, stored over `0..=top`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaHTable {
    pub params: GenusParameters,
    pub values: Vec<i64>,
}

impl DeltaHTable {
    /// Δh(r), zero outside `[0, m + w + e]`.
    pub fn get(&self, r: i64) -> i64 {
        if r < 0 {
            return 0;
        }
        self.values.get(r as usize).copied().unwrap_or(0)
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }

    /// `(r, Δh(r))` pairs over the stored range.
    pub fn rows(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.values.iter().enumerate().map(|(r, &h)| (r as i64, h))
    }

    /// Hilbert function `h(k) = Σ_{r <= k} Δh(r)`.
    pub fn hilbert(&self, k: i64) -> i64 {
        if k < 0 {
            return 0;
        }
        self.values.iter().take(k as usize + 1).sum()
    }
}

fn delta_h_value(p: &GenusParameters, r: i64) -> i64 {
    if r < 0 {
        0
    } else if r <= p.w {
        (p.n - 2) * r + 1
    } else if r <= p.m {
        p.s
    } else if r <= p.m + p.delta {
        p.s + p.k - (p.n - 2) * (r - p.m)
    } else if r <= p.top() {
        p.s + p.k - (p.n - 2) * (r - p.m) - 1
    } else {
        0
    }
}

/// Evaluates the six-case profile and checks `Σ Δh = d`.
pub fn delta_h_table(params: &GenusParameters) -> Result<DeltaHTable> {
    let values: Vec<i64> = (0..=params.top()).map(|r| delta_h_value(params, r)).collect();
    let sum: i64 = values.iter().sum();
    if sum != params.d {
        return Err(Error::Consistency { sum, expected: params.d });
    }
    Ok(DeltaHTable { params: *params, values })
}

/// Maximal genus `Σ_{r >= 2} (r - 1) Δh(r)`.
///
/// This is the arithmetic genus of an aCM curve whose general hyperplane
/// section has the extremal profile.
pub fn max_genus(params: &GenusParameters) -> Result<i64> {
    let table = delta_h_table(params)?;
    Ok(genus_from_profile(&table))
}

pub fn genus_from_profile(table: &DeltaHTable) -> i64 {
    table.rows().filter(|&(r, _)| r >= 2).map(|(r, h)| (r - 1) * h).sum()
}

/// Printed closed form for the maximal genus, evaluated as written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedForm {
    pub value: Ratio<i64>,
    /// True when the closed form differs from [`max_genus`].
    pub discrepancy: bool,
}

impl ClosedForm {
    pub fn is_integral(&self) -> bool {
        self.value.is_integer()
    }
}

/// `1 + d/2 (m + w - 2) - (m + 1)/2 (w - 3) + v m / 2 (w + 1) + rho`.
///
/// Kept verbatim. It disagrees with the profile sum on many inputs and is
/// not even integral on some, so it only ever feeds the discrepancy flag.
pub fn closed_form_genus(params: &GenusParameters) -> Result<ClosedForm> {
    let p = params;
    let half = |x: i64| Ratio::new(x, 2);
    let rho = match p.branch {
        Branch::Low => half(-p.delta) * (p.w - p.delta),
        Branch::High => {
            half(p.epsilon) - half(p.w) * (p.n - 2 - p.v) - half(p.delta) * (p.w - p.delta + 1)
        }
    };
    let value = Ratio::from_integer(1) + half(p.d) * (p.m + p.w - 2) - half(p.m + 1) * (p.w - 3)
        + half(p.v * p.m) * (p.w + 1)
        + rho;
    let genus = max_genus(params)?;
    Ok(ClosedForm { value, discrepancy: value != Ratio::from_integer(genus) })
}

/// Classical Castelnuovo bound for a nondegenerate curve of degree `deg` in `P^ambient`.
///
/// With `deg - 1 = m0 (ambient - 1) + eps0` the bound is
/// `C(m0, 2) (ambient - 1) + m0 eps0`.
pub fn castelnuovo_genus(deg: i64, ambient: i64) -> Result<i64> {
    if ambient < 2 || deg < ambient {
        return Err(Error::Domain(format!(
            "need deg >= ambient >= 2 for a nondegenerate curve, got deg = {deg}, ambient = {ambient}"
        )));
    }
    let (m0, eps0) = (deg - 1).div_rem(&(ambient - 1));
    Ok(m0 * (m0 - 1) / 2 * (ambient - 1) + m0 * eps0)
}

/// The printed variant `C(w, 2) + w v` with `deg - 1 = (ambient - 1) w + v`.
///
/// Reported next to [`castelnuovo_genus`]; it undercounts whenever `w >= 2`.
pub fn printed_castelnuovo_genus(deg: i64, ambient: i64) -> Result<i64> {
    if ambient < 2 || deg < ambient {
        return Err(Error::Domain(format!(
            "need deg >= ambient >= 2 for a nondegenerate curve, got deg = {deg}, ambient = {ambient}"
        )));
    }
    let (w, v) = (deg - 1).div_rem(&(ambient - 1));
    Ok(w * (w - 1) / 2 + w * v)
}

/// Exact form of the degree threshold `2s/(n-2) · Π_{i=1}^{n-2} ((n-1)!)^{1/(n-1-i)}`.
///
/// For small `n`, raising both sides of `d > bound` to `L = lcm(1, ..., n-2)`
/// clears every fractional exponent, so the comparison is a single
/// big-integer test. Once `L` gets large those powers are out of reach and
/// the bound is instead enclosed between products of integer roots at
/// increasing binary precision; the decision is still exact, only the
/// route differs.
#[derive(Debug, Clone)]
enum DegreeBound {
    Power {
        lcm: u32,
        /// `(n-2)^L`
        lhs_factor: BigUint,
        /// `(2s)^L · ((n-1)!)^{L · H_{n-2}}`
        rhs: BigUint,
    },
    Roots { n: i64, s: i64, factorial: BigUint },
}

/// Largest `L` handled by direct powering.
const MAX_POWER_LCM: u64 = 2520;
const MAX_ROOT_PRECISION: u64 = 1 << 16;

impl DegreeBound {
    fn new(n: i64, s: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("n = {n} must be at least 3")));
        }
        if s < 1 {
            return Err(Error::Domain(format!("s = {s} must be positive")));
        }
        let factorial: BigUint = (1..=(n - 1) as u64).map(BigUint::from).product();
        let top = (n - 2) as u64;
        let mut lcm = 1u64;
        for j in 1..=top {
            lcm = lcm.lcm(&j);
            if lcm > MAX_POWER_LCM {
                return Ok(DegreeBound::Roots { n, s, factorial });
            }
        }
        Ok(Self::power(n, s, factorial, lcm as u32))
    }

    fn power(n: i64, s: i64, factorial: BigUint, lcm: u32) -> Self {
        let top = (n - 2) as u32;
        // L · Σ_{j=1}^{n-2} 1/j, an integer by choice of L.
        let exponent: u32 = (1..=top).map(|j| lcm / j).sum();
        let lhs_factor = BigUint::from((n - 2) as u64).pow(lcm);
        let rhs = BigUint::from((2 * s) as u64).pow(lcm) * factorial.pow(exponent);
        DegreeBound::Power { lcm, lhs_factor, rhs }
    }

    fn exceeded_by(&self, d: &BigUint) -> bool {
        match self {
            DegreeBound::Power { lcm, lhs_factor, rhs } => d.pow(*lcm) * lhs_factor > *rhs,
            DegreeBound::Roots { n, s, factorial } => Self::exceeded_by_roots(*n, *s, factorial, d),
        }
    }

    /// Compares `d (n-2) 2^{P(n-2)}` with `2s Π_j floor(F^{1/j} 2^P)` and the
    /// same product with every root rounded up.
    fn exceeded_by_roots(n: i64, s: i64, factorial: &BigUint, d: &BigUint) -> bool {
        let top = (n - 2) as u32;
        let two_s = BigUint::from((2 * s) as u64);
        let mut precision = 64u64;
        while precision <= MAX_ROOT_PRECISION {
            let mut lo = two_s.clone();
            let mut hi = two_s.clone();
            for j in 1..=top {
                let radicand = factorial << (precision * j as u64);
                let root = radicand.nth_root(j);
                let exact = root.pow(j) == radicand;
                hi *= if exact { root.clone() } else { &root + 1u32 };
                lo *= root;
            }
            let lhs = (d * BigUint::from((n - 2) as u64)) << (precision * top as u64);
            if lhs > hi {
                return true;
            }
            if lhs <= lo {
                // lo == bound when every root is exact, otherwise lo < bound.
                return false;
            }
            precision *= 2;
        }
        unreachable!("degree threshold undecided at {MAX_ROOT_PRECISION} bits for n = {n}, s = {s}")
    }

    /// Floating-point estimate of the bound. Only ever used as a search hint.
    fn estimate(n: i64, s: i64) -> f64 {
        let log_fact: f64 = (1..n).map(|j| (j as f64).ln()).sum();
        let harmonic: f64 = (1..=n - 2).map(|j| 1.0 / j as f64).sum();
        ((2 * s) as f64 / (n - 2) as f64).ln() + harmonic * log_fact
    }
}

/// Exact test of `d > 2s/(n-2) · Π ((n-1)!)^{1/(n-1-i)}`.
pub fn exceeds_degree_bound(d: &BigUint, n: i64, s: i64) -> Result<bool> {
    Ok(DegreeBound::new(n, s)?.exceeded_by(d))
}

/// Smallest integer `d` strictly above the degree threshold.
pub fn min_admissible_degree(n: i64, s: i64) -> Result<BigUint> {
    DegreeBound::new(n, s)?;
    let log_estimate = DegreeBound::estimate(n, s);
    let hint = if log_estimate < 60.0 {
        BigUint::from(log_estimate.exp().floor().max(0.0) as u64)
    } else {
        // Past u64 range: only the order of magnitude matters for the bracket.
        BigUint::one() << (log_estimate / std::f64::consts::LN_2) as u64
    };
    min_admissible_degree_from(n, s, &hint)
}

/// Same as [`min_admissible_degree`] with an explicit starting point.
///
/// The answer never depends on `hint`; it only seeds the bracketing
/// search, which is then settled by exact comparisons.
pub fn min_admissible_degree_from(n: i64, s: i64, hint: &BigUint) -> Result<BigUint> {
    let bound = DegreeBound::new(n, s)?;
    let mut hi = if hint.is_zero() { BigUint::one() } else { hint.clone() };
    while !bound.exceeded_by(&hi) {
        hi <<= 1;
    }
    let mut lo = hint.clone().min(hi.clone());
    while !lo.is_zero() && bound.exceeded_by(&lo) {
        lo >>= 1;
    }
    // Invariant: lo does not exceed the bound, hi does.
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) >> 1;
        if bound.exceeded_by(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Convenience wrapper returning the threshold degree as `u64` when it fits.
pub fn min_admissible_degree_u64(n: i64, s: i64) -> Result<Option<u64>> {
    Ok(min_admissible_degree(n, s)?.to_u64())
}

/// Tail sum `Σ_{r = m + w - i + 1}^{m + w + e} Δh(r)`.
///
/// Bounds the twisted sections of the residual curve used to locate the
/// linked curve. Finite because Δh vanishes past `m + w + e`.
pub fn residual_h0_bound(params: &GenusParameters, i: i64) -> Result<i64> {
    if i > params.w || i > params.m {
        return Err(Error::Range { i, bound: format!("i <= w = {} and i <= m = {}", params.w, params.m) });
    }
    let table = delta_h_table(params)?;
    let start = params.m + params.w - i + 1;
    Ok((start..=params.top()).map(|r| table.get(r)).sum())
}
