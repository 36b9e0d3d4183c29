//! Closed-form multiplication counts and decomposition depth selection.
//!
//! All formulas count general multiplications in F_{p^m}, with a p-th power
//! charged `cp(p)` multiplications. `n` is the polynomial degree, `s` the
//! degree of the coefficient subfield and `depth` the number of radix-p
//! splitting steps.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::field::pth_power_cost;

/// Evaluation algorithms known to the cost model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Direct,
    Horner,
    /// Radix-p split evaluated at Frobenius images of the point.
    M1,
    /// Radix-p split evaluated at the point itself, recombined with p-th powers.
    M2,
    /// Subfield coefficients split over a polynomial basis, then M1 on each part.
    ExtBasis,
    /// M2 generalised to subfield coefficients with inverse automorphisms.
    ExtM2,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Direct,
        Method::Horner,
        Method::M1,
        Method::M2,
        Method::ExtBasis,
        Method::ExtM2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Horner => "horner",
            Method::M1 => "m1",
            Method::M2 => "m2",
            Method::ExtBasis => "ext_basis",
            Method::ExtM2 => "ext_m2",
        }
    }

    /// Whether the method takes a decomposition depth.
    pub fn has_depth(self) -> bool {
        !matches!(self, Method::Direct | Method::Horner)
    }

    /// Methods that need coefficients in a proper subfield (s > 1).
    pub fn needs_extension(self) -> bool {
        matches!(self, Method::ExtBasis | Method::ExtM2)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

/// A chosen method and depth with its predicted multiplication count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalPlan {
    pub method: Method,
    pub depth: u32,
    pub predicted_mul: u64,
    /// Inclusive range of depths that were compared.
    pub window: (u32, u32),
}

/// Multiplication cost of a p-th power: 1 for p = 2, otherwise the
/// square-and-multiply count ⌊log₂ p⌋ + popcount(p) − 1.
pub fn cp(p: u64) -> u64 {
    pth_power_cost(p)
}

/// c_{p^k}: a p^k-th power as k successive p-th powers.
pub fn cp_power(p: u64, k: u64) -> u64 {
    k * cp(p)
}

fn pw(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("p^L overflows u64")
}

/// ⌊log_p n⌋ for n ≥ 1.
pub fn ilog(p: u64, n: u64) -> u32 {
    assert!(n >= 1 && p >= 2);
    n.ilog(p)
}

/// Largest depth worth considering: ⌊log_p n⌋ + 1.
pub fn max_depth(p: u64, n: u64) -> u32 {
    ilog(p, n.max(1)) + 1
}

fn clamp(v: i128) -> u64 {
    v.max(0) as u64
}

/// One splitting step of the first method: 2p − 3 + ⌊n/p⌋(p − 1).
pub fn m_step(p: u64, n: u64) -> u64 {
    2 * p - 3 + (n / p) * (p - 1)
}

/// First method after `depth` steps:
/// ⌊n/p^L⌋(p−1) + L(p−1) + p^L − 2.
pub fn g1(p: u64, n: u64, depth: u32) -> u64 {
    let pl = pw(p, depth) as i128;
    let (p, n, l) = (p as i128, n as i128, depth as i128);
    clamp((n / pl) * (p - 1) + l * (p - 1) + pl - 2)
}

/// Second method after `depth` steps:
/// ⌊n/p^L⌋ − 1 + c_p(p^{L+1} − p)/(p − 1) + p^L − 1 + ⌊n/p^L⌋(p − 2).
pub fn g2(p: u64, n: u64, depth: u32) -> u64 {
    let c = cp(p) as i128;
    let pl = pw(p, depth) as i128;
    let (p, n) = (p as i128, n as i128);
    let h = n / pl;
    let pth_powers = (pl * p - p) / (p - 1);
    clamp(h - 1 + pth_powers * c + pl - 1 + h * (p - 2))
}

/// Second method for coefficients in F_{p^s}:
/// c_p(p^{L+1} − p)/(p − 1) + p^L − 1 + c_{p^{s−1}} p^L + ⌊n/p^L⌋(p^s − 1).
pub fn g2_ext(p: u64, s: u32, n: u64, depth: u32) -> u64 {
    let c = cp(p) as i128;
    let c_sub = cp_power(p, s.saturating_sub(1) as u64) as i128;
    let pl = pw(p, depth) as i128;
    let ps = pw(p, s) as i128;
    let (p, n) = (p as i128, n as i128);
    clamp(c * (pl * p - p) / (p - 1) + pl - 1 + c_sub * pl + (n / pl) * (ps - 1))
}

/// Basis-split evaluation with power tables shared by the s prime-field
/// parts, all split to the same depth:
/// L(p−1) + ⌊n/p^L⌋(p−1) + s·p^L − 2.
pub fn g_ext_basis(p: u64, s: u32, n: u64, depth: u32) -> u64 {
    let pl = pw(p, depth) as i128;
    let (p, s, n, l) = (p as i128, s as i128, n as i128, depth as i128);
    clamp(l * (p - 1) + (n / pl) * (p - 1) + s * pl - 2)
}

/// ⌈2s(√(n(p−1)) + ½)⌉, the ceiling on basis-split evaluation.
pub fn g1_ext_firstmethod_bound(p: u64, s: u32, n: u64) -> u64 {
    let v = 2.0 * s as f64 * (((n * (p - 1)) as f64).sqrt() + 0.5);
    // guard against 128.99999 style rounding
    (v - 1e-9).ceil() as u64
}

/// Predicted multiplications of `method` at `depth`.
pub fn predicted_mul(method: Method, p: u64, s: u32, n: u64, depth: u32) -> u64 {
    match method {
        Method::Direct => (2 * n).saturating_sub(1),
        Method::Horner => n,
        Method::M1 => g1(p, n, depth),
        Method::M2 => g2(p, n, depth),
        Method::ExtBasis => g_ext_basis(p, s, n, depth),
        Method::ExtM2 => g2_ext(p, s, n, depth),
    }
}

/// The real-valued depth around which the optimum lies.
pub fn depth_center(method: Method, p: u64, s: u32, n: u64) -> f64 {
    let (pf, nf) = (p as f64, n.max(1) as f64);
    let c = cp(p) as f64;
    let arg = match method {
        Method::M1 => nf * (pf - 1.0),
        Method::M2 => nf * (pf - 1.0).powi(2) / (pf * c + pf - 1.0),
        Method::ExtM2 => {
            let ps = pf.powi(s as i32);
            let c_sub = cp_power(p, s.saturating_sub(1) as u64) as f64;
            nf * (pf - 1.0) * (ps - 1.0) / (pf * c + pf - 1.0 + c_sub * (pf - 1.0))
        }
        Method::ExtBasis => nf * (pf - 1.0) / s as f64,
        Method::Direct | Method::Horner => return 0.0,
    };
    arg.sqrt().ln() / pf.ln()
}

/// Optimal depth for `method` found by scanning the integer nearest the
/// theoretical center and its two neighbours, clipped to [1, ⌊log_p n⌋ + 1] (lower end 0 for
/// [`Method::ExtBasis`]). Ties go to the smaller depth.
pub fn lopt(method: Method, p: u64, s: u32, n: u64) -> EvalPlan {
    if !method.has_depth() {
        return EvalPlan {
            method,
            depth: 0,
            predicted_mul: predicted_mul(method, p, s, n, 0),
            window: (0, 0),
        };
    }
    let min_depth = if method == Method::ExtBasis { 0 } else { 1 };
    let top = max_depth(p, n);
    let center = depth_center(method, p, s, n);
    let nearest = center.round() as i64;
    let lo = (nearest - 1).max(min_depth as i64) as u32;
    let hi = (nearest + 1).min(top as i64).max(lo as i64) as u32;
    let (depth, predicted_mul) = (lo..=hi)
        .map(|l| (l, predicted_mul(method, p, s, n, l)))
        .min_by_key(|&(l, cost)| (cost, l))
        .expect("window is non-empty");
    EvalPlan {
        method,
        depth,
        predicted_mul,
        window: (lo, hi),
    }
}

/// Exhaustive minimum over every depth in [min, ⌊log_p n⌋ + 1].
pub fn exhaustive_opt(method: Method, p: u64, s: u32, n: u64) -> (u32, u64) {
    let min_depth = if method == Method::ExtBasis { 0 } else { 1 };
    (min_depth..=max_depth(p, n))
        .map(|l| (l, predicted_mul(method, p, s, n, l)))
        .min_by_key(|&(l, cost)| (cost, l))
        .expect("non-empty range")
}

/// Methods applicable to coefficients declared in F_{p^s}, in preference
/// order for ties.
pub fn candidate_methods(s: u32) -> &'static [Method] {
    if s > 1 {
        &[Method::ExtBasis, Method::ExtM2]
    } else {
        &[Method::M1, Method::M2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HornerComparison {
    pub horner: u64,
    pub best: EvalPlan,
    pub wins: bool,
}

/// Best automorphic plan against Horner's n multiplications.
pub fn compare_horner(p: u64, s: u32, n: u64) -> HornerComparison {
    let best = candidate_methods(s)
        .iter()
        .map(|&m| lopt(m, p, s, n))
        .min_by_key(|plan| plan.predicted_mul)
        .expect("at least one candidate");
    HornerComparison {
        horner: n,
        best,
        wins: best.predicted_mul < n,
    }
}

/// Plan used by the automatic evaluator: Horner below the breakeven scan,
/// otherwise the cheapest applicable method at its optimal depth.
pub fn best_plan(p: u64, s: u32, n: u64) -> EvalPlan {
    let horner = EvalPlan {
        method: Method::Horner,
        depth: 0,
        predicted_mul: n,
        window: (0, 0),
    };
    if n < p {
        return horner;
    }
    let cmp = compare_horner(p, s, n);
    if cmp.wins {
        cmp.best
    } else {
        horner
    }
}
