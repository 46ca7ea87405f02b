//! SVI smile, Black-Scholes pricing and the discretized log-price target.
//!
//! Prices are normalized by spot and written in log-moneyness `k = log(K/S₀)`.
//! The density of `log(S_T/S₀)` follows from the total variance `w(k)` in
//! closed form; [`discretize`] integrates it over the `2^n` uniform bins of
//! `[−1, 1]` and renormalizes.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::distribution::DiscreteDistribution;
use crate::error::{QuganError, Result};

/// Absolute tolerance of the per-bin quadrature.
pub const QUAD_TOL: f64 = 1e-10;

/// Bracket for the implied-volatility bisection.
const MAX_VOL: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SviParams {
    pub a: f64,
    pub b: f64,
    pub rho: f64,
    pub m: f64,
    pub xi: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

impl SviParams {
    /// The smile used for the reference target.
    pub const REFERENCE: SviParams = SviParams {
        a: 0.030358,
        b: 0.0503815,
        rho: -0.1,
        m: 0.3,
        xi: 0.048922,
        t: 1.0,
    };

    pub fn validate(&self) -> Result<()> {
        let fields = [self.a, self.b, self.rho, self.m, self.xi, self.t];
        if let Some(&bad) = fields.iter().find(|v| !v.is_finite()) {
            return Err(QuganError::OutOfDomain {
                value: bad,
                domain: "finite SVI parameters",
            });
        }
        let check = |ok: bool, value: f64, domain: &'static str| {
            if ok {
                Ok(())
            } else {
                Err(QuganError::OutOfDomain { value, domain })
            }
        };
        check(self.a >= 0.0, self.a, "a ≥ 0")?;
        check(self.b >= 0.0, self.b, "b ≥ 0")?;
        check(self.rho.abs() <= 1.0, self.rho, "rho ∈ [-1, 1]")?;
        check(self.xi >= 0.0, self.xi, "xi ≥ 0")?;
        check(self.t > 0.0, self.t, "T > 0")
    }
}

impl Default for SviParams {
    fn default() -> Self {
        Self::REFERENCE
    }
}

/// `w(k) = a + b(ρ(k − m) + √((k − m)² + ξ²))`, required to be positive.
pub fn total_variance(params: &SviParams, k: f64) -> Result<f64> {
    let (w, _, _) = svi_derivatives(params, k);
    if !(w > 0.0) {
        return Err(QuganError::NonPositiveVariance(w));
    }
    Ok(w)
}

/// `(w, w', w'')` in `k`.
pub fn svi_derivatives(params: &SviParams, k: f64) -> (f64, f64, f64) {
    let SviParams {
        a, b, rho, m, xi, ..
    } = *params;
    let x = k - m;
    let root = (x * x + xi * xi).sqrt();
    let w = a + b * (rho * x + root);
    if root == 0.0 {
        // vertex of the ξ = 0 smile: take the right derivative and no curvature
        return (w, b * (rho + 1.0), 0.0);
    }
    let w1 = b * (rho + x / root);
    let w2 = b * xi * xi / (root * root * root);
    (w, w1, w2)
}

fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// `d_±(k, v) = −k/√v ± √v/2`.
pub fn d_pm(k: f64, v: f64) -> (f64, f64) {
    let s = v.sqrt();
    (-k / s + s / 2.0, -k / s - s / 2.0)
}

/// Spot-normalized call price `N(d₊) − e^k N(d₋)` at total variance `v`,
/// intrinsic value `(1 − e^k)₊` at `v = 0`.
pub fn bs_price(k: f64, v: f64) -> Result<f64> {
    if !(v >= 0.0) {
        return Err(QuganError::OutOfDomain {
            value: v,
            domain: "total variance ≥ 0",
        });
    }
    if v == 0.0 {
        return Ok((1.0 - k.exp()).max(0.0));
    }
    let (dp, dm) = d_pm(k, v);
    Ok(norm_cdf(dp) - k.exp() * norm_cdf(dm))
}

/// Black-Scholes volatility reproducing `price` at log-strike `k` and maturity
/// `t`, by bisection.
pub fn implied_vol(price: f64, k: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(QuganError::OutOfDomain {
            value: t,
            domain: "T > 0",
        });
    }
    let lower = (1.0 - k.exp()).max(0.0);
    if !(price > lower && price < 1.0) {
        return Err(QuganError::PriceOutOfBounds {
            price,
            lower,
            upper: 1.0,
        });
    }
    let f = |sigma: f64| bs_price(k, sigma * sigma * t).map(|c| c - price);
    let (mut lo, mut hi) = (0.0, MAX_VOL);
    if f(hi)? < 0.0 {
        return Err(QuganError::PriceOutOfBounds {
            price,
            lower,
            upper: 1.0,
        });
    }
    while hi - lo > 1e-15 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `g(k) = (1 − k w'/(2w))² − (w'²/4)(1/4 + 1/w) + w''/2`.
pub fn g_svi(params: &SviParams, k: f64) -> Result<f64> {
    let (w, w1, w2) = svi_derivatives(params, k);
    if !(w > 0.0) {
        return Err(QuganError::NonPositiveVariance(w));
    }
    let lead = 1.0 - k * w1 / (2.0 * w);
    Ok(lead * lead - w1 * w1 / 4.0 * (0.25 + 1.0 / w) + w2 / 2.0)
}

/// Density of `log(S_T/S₀)` at `k`: `g(k)/√(2πw) · exp(−d₋(k, w)²/2)`.
pub fn density(params: &SviParams, k: f64) -> Result<f64> {
    let w = total_variance(params, k)?;
    let (_, dm) = d_pm(k, w);
    Ok(g_svi(params, k)? / (2.0 * std::f64::consts::PI * w).sqrt() * (-dm * dm / 2.0).exp())
}

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> Result<f64>>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return Ok(left + right + diff / 15.0);
    }
    Ok(adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
        + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (fa, fb) = (f(a)?, f(b)?);
    let fm = f(0.5 * (a + b))?;
    let whole = simpson(fa, fm, fb, a, b);
    adaptive(&f, a, b, fa, fm, fb, whole, tol, 50)
}

/// A discretized target with the quadrature data it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    pub distribution: DiscreteDistribution,
    pub bin_edges: Vec<f64>,
    /// Bin integrals before renormalization.
    pub raw_masses: Vec<f64>,
    /// `1 − Σ raw_masses`: density mass outside `[−1, 1]`.
    pub truncated_mass: f64,
}

/// Bin masses of the density over `[−1 + 2i/2^n, −1 + 2(i+1)/2^n)`,
/// renormalized to one.
pub fn discretize(params: &SviParams, n_qubits: usize) -> Result<Discretization> {
    params.validate()?;
    if n_qubits == 0 || n_qubits > crate::statevec::MAX_QUBITS {
        return Err(QuganError::InvalidArgument(format!(
            "unsupported n_qubits {n_qubits}"
        )));
    }
    let bins = 1usize << n_qubits;
    let bin_edges: Vec<f64> = (0..=bins)
        .map(|i| -1.0 + 2.0 * i as f64 / bins as f64)
        .collect();
    let raw_masses = bin_edges
        .windows(2)
        .map(|e| integrate(|k| density(params, k), e[0], e[1], QUAD_TOL))
        .collect::<Result<Vec<f64>>>()?;
    if let Some(&bad) = raw_masses.iter().find(|m| **m < 0.0) {
        return Err(QuganError::OutOfDomain {
            value: bad,
            domain: "non-negative bin mass (the smile admits static arbitrage)",
        });
    }
    let total: f64 = raw_masses.iter().sum();
    let distribution = DiscreteDistribution::normalized(raw_masses.clone())?;
    Ok(Discretization {
        distribution,
        bin_edges,
        raw_masses,
        truncated_mass: 1.0 - total,
    })
}
