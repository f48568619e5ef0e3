//! Nonnegative laws with analytic tails, quantiles, certified moments, and
//! exact inverse-transform samplers (unconditional and conditional).
//!
//! Sampling works in survival space: a uniform V in (0, 1] maps to
//! X = sup{x : P(X >= x) > V}. Conditional laws are then literal interval
//! restrictions of V, which keeps conditional sampling exact — no rejection —
//! and keeps precision for tails far below 1e-300 the cdf could not resolve.

use std::sync::OnceLock;

use thiserror::Error;

use crate::numeric::{self, Certified};
use crate::rng::RandomStream;

/// Largest atom index the discrete log-tail law can represent in f64.
const DLT_MAX_ATOM: u32 = 1023;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("quantile argument u={0} outside (0,1)")]
    QuantileDomain(f64),
    #[error("conditioning event X >= {0} has zero probability")]
    ImpossibleConditioning(f64),
    #[error("floor restriction is empty or has zero mass")]
    EmptyRestriction,
    #[error("requested partial moment diverges")]
    InfiniteMoment,
}

/// How a finite moment value was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentMethod {
    ClosedForm,
    /// Truncated series/quadrature with a certified absolute error bound.
    SeriesTruncated { bound: f64 },
}

/// A possibly-infinite moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Moment {
    Finite { value: f64, method: MomentMethod },
    Infinite,
}

impl Moment {
    fn closed(value: f64) -> Moment {
        Moment::Finite { value, method: MomentMethod::ClosedForm }
    }

    fn series(c: Certified) -> Moment {
        Moment::Finite {
            value: c.value,
            method: MomentMethod::SeriesTruncated { bound: c.abs_err },
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Moment::Finite { .. })
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Moment::Finite { value, .. } => Some(*value),
            Moment::Infinite => None,
        }
    }

    /// Finite value or panic; for call sites whose preconditions guarantee it.
    pub fn expect_finite(&self, what: &str) -> f64 {
        self.value().unwrap_or_else(|| panic!("{what} is infinite"))
    }
}

/// One of the nonnegative laws used throughout the toolkit.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum DistributionSpec {
    /// P(X >= x) = (scale/x)^tail_index on [scale, ∞).
    Pareto { tail_index: f64, scale: f64 },
    /// Rate-λ exponential.
    Exponential { rate: f64 },
    /// {0, 1} with P(X = 1) = p.
    Bernoulli { p: f64 },
    /// Degenerate law at `value`.
    PointMass { value: f64 },
    /// P(X = 2^j) = C / (j^2 2^j), j >= 1.
    DiscreteLogTail,
    /// P(X = k) = k^{-exponent} / ζ(exponent), k >= 1.
    DiscretePowerTail { exponent: f64 },
}

use DistributionSpec::*;

fn dlt_norm() -> f64 {
    // 1 / Li2(1/2), series summed far past f64 resolution
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        let mut s = 0.0f64;
        for j in (1..200u32).rev() {
            s += 1.0 / ((j as f64) * (j as f64) * (2.0f64).powi(j as i32));
        }
        1.0 / s
    })
}

/// Σ_{j >= j0} 1/(j^2 2^j), unnormalized discrete-log-tail mass.
fn dlt_tail_series(j0: u32) -> f64 {
    if j0 > DLT_MAX_ATOM {
        return 0.0;
    }
    let mut s = 0.0f64;
    let top = (j0 + 120).min(DLT_MAX_ATOM + 60);
    for j in (j0..=top).rev() {
        s += (-(j as f64) * std::f64::consts::LN_2).exp() / ((j as f64) * (j as f64));
    }
    s
}

impl DistributionSpec {
    pub fn pareto(tail_index: f64, scale: f64) -> Result<Self, DistError> {
        if !(tail_index > 0.0) || !tail_index.is_finite() {
            return Err(DistError::InvalidParameter {
                name: "tail_index",
                reason: format!("must be a positive real, got {tail_index}"),
            });
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(DistError::InvalidParameter {
                name: "scale",
                reason: format!("must be a positive real, got {scale}"),
            });
        }
        Ok(Pareto { tail_index, scale })
    }

    pub fn exponential(rate: f64) -> Result<Self, DistError> {
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(DistError::InvalidParameter {
                name: "rate",
                reason: format!("must be a positive real, got {rate}"),
            });
        }
        Ok(Exponential { rate })
    }

    pub fn bernoulli(p: f64) -> Result<Self, DistError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(DistError::InvalidParameter {
                name: "p",
                reason: format!("must lie in [0,1], got {p}"),
            });
        }
        Ok(Bernoulli { p })
    }

    pub fn point_mass(value: f64) -> Result<Self, DistError> {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(DistError::InvalidParameter {
                name: "value",
                reason: format!("must be a nonnegative real, got {value}"),
            });
        }
        Ok(PointMass { value })
    }

    pub fn discrete_log_tail() -> Self {
        DiscreteLogTail
    }

    pub fn discrete_power_tail(exponent: f64) -> Result<Self, DistError> {
        if !(exponent > 1.0) || !exponent.is_finite() {
            return Err(DistError::InvalidParameter {
                name: "exponent",
                reason: format!("must exceed 1, got {exponent}"),
            });
        }
        Ok(DiscretePowerTail { exponent })
    }

    /// Smallest point of the support.
    pub fn support_min(&self) -> f64 {
        match *self {
            Pareto { scale, .. } => scale,
            Exponential { .. } => 0.0,
            Bernoulli { p } => {
                if p >= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            PointMass { value } => value,
            DiscreteLogTail => 2.0,
            DiscretePowerTail { .. } => 1.0,
        }
    }

    /// P(X >= x) for x >= 0.
    pub fn tail(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        if x <= 0.0 {
            return 1.0;
        }
        match *self {
            Pareto { tail_index, scale } => {
                if x <= scale {
                    1.0
                } else {
                    (scale / x).powf(tail_index)
                }
            }
            Exponential { rate } => (-rate * x).exp(),
            Bernoulli { p } => {
                if x <= 1.0 {
                    p
                } else {
                    0.0
                }
            }
            PointMass { value } => {
                if x <= value {
                    1.0
                } else {
                    0.0
                }
            }
            DiscreteLogTail => {
                let j0 = x.log2().ceil().max(1.0) as u32;
                dlt_norm() * dlt_tail_series(j0)
            }
            DiscretePowerTail { exponent } => {
                let m = x.ceil().max(1.0);
                if m <= 1.0 {
                    return 1.0;
                }
                self.dpt_tail_from(m)
            }
        }
    }

    /// ln P(X >= x); exact in regimes where `tail` underflows.
    pub fn log_tail(&self, x: f64) -> f64 {
        match *self {
            Pareto { tail_index, scale } => {
                if x <= scale {
                    0.0
                } else {
                    tail_index * (scale.ln() - x.ln())
                }
            }
            Exponential { rate } => -rate * x.max(0.0),
            _ => self.tail(x).ln(),
        }
    }

    /// Σ_{k >= m} k^{-β} / ζ(β), for integral m >= 2 given as f64.
    fn dpt_tail_from(&self, m: f64) -> f64 {
        let DiscretePowerTail { exponent } = *self else { unreachable!() };
        let z = numeric::zeta(exponent).value;
        if m <= 1.0 {
            return 1.0;
        }
        // exact u128 path where possible, pure EM beyond
        if m < 1.8e38 {
            numeric::zeta_tail(exponent, (m as u128) - 1).value / z
        } else {
            let a = m;
            let p = a.powf(-exponent);
            (a * p / (exponent - 1.0) + 0.5 * p) / z
        }
    }

    /// P(X = x) when x is an atom, else 0.
    fn atom_mass(&self, x: f64) -> f64 {
        match *self {
            Pareto { .. } | Exponential { .. } => 0.0,
            Bernoulli { p } => {
                if x == 0.0 {
                    1.0 - p
                } else if x == 1.0 {
                    p
                } else {
                    0.0
                }
            }
            PointMass { value } => {
                if x == value {
                    1.0
                } else {
                    0.0
                }
            }
            DiscreteLogTail => {
                if x >= 2.0 && x.log2().fract() == 0.0 {
                    let j = x.log2() as u32;
                    let jf = j as f64;
                    dlt_norm() * (-(jf) * std::f64::consts::LN_2).exp() / (jf * jf)
                } else {
                    0.0
                }
            }
            DiscretePowerTail { exponent } => {
                if x >= 1.0 && x.fract() == 0.0 {
                    x.powf(-exponent) / numeric::zeta(exponent).value
                } else {
                    0.0
                }
            }
        }
    }

    /// P(X <= x).
    pub fn cdf(&self, x: f64) -> f64 {
        (1.0 - self.tail(x) + self.atom_mass(x)).clamp(0.0, 1.0)
    }

    /// P(k <= X < k+1) = tail(k) - tail(k+1).
    pub fn floor_pmf(&self, k: u64) -> f64 {
        let lo = self.tail(k as f64);
        let hi = self.tail(k as f64 + 1.0);
        (lo - hi).max(0.0)
    }

    /// Generalized inverse of the cdf: inf{x : P(X <= x) >= u}, u in (0,1).
    pub fn quantile(&self, u: f64) -> Result<f64, DistError> {
        if !(u > 0.0 && u < 1.0) {
            return Err(DistError::QuantileDomain(u));
        }
        Ok(self.surv_inv(1.0 - u))
    }

    /// Survival-space inverse: sup{x : P(X >= x) > v} for v in (0, 1],
    /// with the convention that v = 1 yields the support minimum.
    pub fn surv_inv(&self, v: f64) -> f64 {
        debug_assert!(v > 0.0 && v <= 1.0);
        match *self {
            Pareto { tail_index, scale } => {
                if v >= 1.0 {
                    scale
                } else {
                    scale * v.powf(-1.0 / tail_index)
                }
            }
            Exponential { rate } => -v.ln() / rate,
            Bernoulli { p } => {
                if v < p {
                    1.0
                } else {
                    0.0
                }
            }
            PointMass { value } => value,
            DiscreteLogTail => {
                // largest atom 2^j with normalized tail at 2^j still > v
                let c = dlt_norm();
                if c * dlt_tail_series(2) <= v {
                    return 2.0;
                }
                let (mut lo, mut hi) = (1u32, DLT_MAX_ATOM + 1);
                // invariant: tail(2^lo) > v >= tail(2^hi)
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    if c * dlt_tail_series(mid) > v {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                (lo as f64).exp2()
            }
            DiscretePowerTail { .. } => {
                if self.dpt_tail_from(2.0) <= v {
                    return 1.0;
                }
                let (mut lo, mut hi) = (1.0f64, 2.0f64);
                while self.dpt_tail_from(hi) > v {
                    lo = hi;
                    hi *= 2.0;
                    if hi > 1e300 {
                        break;
                    }
                }
                // invariant: tail at lo > v >= tail at hi; bisect to adjacent integers
                while hi - lo > 0.5 && (hi - lo) > 1e-9 * hi {
                    let mid = ((lo + hi) / 2.0).floor().max(lo + 1.0).min(hi - 1.0);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.dpt_tail_from(mid) > v {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }

    /// One unconditional inverse-transform draw.
    pub fn sample(&self, stream: &mut RandomStream) -> f64 {
        self.surv_inv(stream.next_surv())
    }

    /// `n` i.i.d. draws.
    pub fn sample_n(&self, stream: &mut RandomStream, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sample(stream)).collect()
    }

    /// One draw of X | X >= c, by restricting the survival seed to (0, P(X >= c)].
    pub fn sample_conditional_tail(
        &self,
        stream: &mut RandomStream,
        c: f64,
    ) -> Result<f64, DistError> {
        let s = self.tail(c);
        if s <= 0.0 {
            return Err(DistError::ImpossibleConditioning(c));
        }
        Ok(self.surv_inv(s * stream.next_surv()))
    }

    /// One draw of X restricted to a union of floor intervals, exact via
    /// survival-interval restriction.
    pub fn sample_conditional_floor(
        &self,
        stream: &mut RandomStream,
        restriction: &FloorRestriction,
    ) -> Result<f64, DistError> {
        let masses: Vec<(f64, f64, f64)> = restriction
            .ranges
            .iter()
            .map(|&(lo, hi)| {
                let s_lo = self.tail(lo as f64);
                let s_hi = self.tail(hi as f64);
                (s_lo, s_hi, (s_lo - s_hi).max(0.0))
            })
            .collect();
        let total: f64 = masses.iter().map(|m| m.2).sum();
        if !(total > 0.0) {
            return Err(DistError::EmptyRestriction);
        }
        let mut pick = stream.next_unit() * total;
        let mut chosen = masses.len() - 1;
        for (i, m) in masses.iter().enumerate() {
            if pick < m.2 {
                chosen = i;
                break;
            }
            pick -= m.2;
        }
        let (s_lo, s_hi, _) = masses[chosen];
        let v = s_hi + (s_lo - s_hi) * stream.next_surv();
        Ok(self.surv_inv(v.min(s_lo)))
    }

    /// E X^α, exactly classified finite/infinite; finite values certified.
    pub fn moment(&self, alpha: f64) -> Moment {
        assert!(alpha >= 0.0, "moment order must be nonnegative");
        if alpha == 0.0 {
            return Moment::closed(1.0);
        }
        match *self {
            Pareto { tail_index, scale } => {
                if alpha < tail_index {
                    Moment::closed(tail_index * scale.powf(alpha) / (tail_index - alpha))
                } else {
                    Moment::Infinite
                }
            }
            Exponential { rate } => {
                let g = statrs::function::gamma::gamma(alpha + 1.0);
                Moment::closed(g / rate.powf(alpha))
            }
            Bernoulli { p } => Moment::closed(p),
            PointMass { value } => Moment::closed(value.powf(alpha)),
            DiscreteLogTail => {
                if alpha > 1.0 {
                    return Moment::Infinite;
                }
                let c = dlt_norm();
                if alpha == 1.0 {
                    let z2 = numeric::zeta(2.0);
                    return Moment::series(z2.scale(c));
                }
                // Σ_j 2^{j(α-1)}/j^2, geometric-decaying
                let r = (2.0f64).powf(alpha - 1.0);
                let mut sum = 0.0;
                let mut j = 1u32;
                let mut term = r;
                loop {
                    sum += term / ((j as f64) * (j as f64));
                    j += 1;
                    term *= r;
                    let rem = term / ((j as f64) * (j as f64)) / (1.0 - r);
                    if rem < 1e-16 * sum || j > 100_000 {
                        return Moment::series(Certified { value: c * sum, abs_err: c * rem });
                    }
                }
            }
            DiscretePowerTail { exponent } => {
                if alpha >= exponent - 1.0 {
                    return Moment::Infinite;
                }
                let num = numeric::zeta(exponent - alpha);
                let den = numeric::zeta(exponent).value;
                Moment::series(num.scale(1.0 / den))
            }
        }
    }

    /// E[X (log X)^+].
    pub fn xlogx_moment(&self) -> Moment {
        match *self {
            Pareto { tail_index, scale } => {
                if tail_index <= 1.0 {
                    return Moment::Infinite;
                }
                let a = tail_index;
                let c = scale.max(1.0);
                let v = a * scale.powf(a) * c.powf(1.0 - a)
                    * (c.ln() / (a - 1.0) + 1.0 / ((a - 1.0) * (a - 1.0)));
                Moment::closed(v)
            }
            Exponential { rate } => {
                let upper = (60.0 + 10.0 / rate) / rate;
                let f = |x: f64| x * x.ln() * rate * (-rate * x).exp();
                let integral = adaptive_simpson(&f, 1.0, upper.max(2.0), 1e-13, 30);
                // ln x <= x/e for x > 0 bounds the discarded tail
                let t = upper;
                let tail_bound = (rate / std::f64::consts::E)
                    * (-rate * t).exp()
                    * (t * t + 2.0 * t / rate + 2.0 / (rate * rate));
                Moment::series(Certified { value: integral, abs_err: 1e-12 + tail_bound })
            }
            Bernoulli { .. } => Moment::closed(0.0),
            PointMass { value } => {
                if value <= 1.0 {
                    Moment::closed(0.0)
                } else {
                    Moment::closed(value * value.ln())
                }
            }
            DiscreteLogTail => Moment::Infinite,
            DiscretePowerTail { exponent } => {
                if exponent <= 2.0 {
                    return Moment::Infinite;
                }
                let num = numeric::zeta_log_tail(exponent - 1.0, 0);
                let den = numeric::zeta(exponent).value;
                Moment::series(num.scale(1.0 / den))
            }
        }
    }

    /// E X when finite.
    pub fn mean_value(&self) -> Option<f64> {
        self.moment(1.0).value()
    }

    /// Certified E[X^s ; X >= m] for s >= 0; errors when the partial moment
    /// diverges.
    pub fn partial_moment(&self, s: f64, m: f64) -> Result<Certified, DistError> {
        debug_assert!(s >= 0.0);
        match *self {
            Pareto { tail_index, scale } => {
                if s >= tail_index {
                    return Err(DistError::InfiniteMoment);
                }
                let c = m.max(scale);
                Ok(Certified::exact(
                    tail_index * scale.powf(tail_index) * c.powf(s - tail_index)
                        / (tail_index - s),
                ))
            }
            Exponential { rate } => {
                // ∫_m^∞ x^s λ e^{-λx} dx = λ^{-s} Γ(s+1, λ m)
                let x = rate * m.max(0.0);
                let reg_upper = if x > 0.0 {
                    statrs::function::gamma::gamma_ur(s + 1.0, x)
                } else {
                    1.0
                };
                let g = statrs::function::gamma::gamma(s + 1.0) * reg_upper;
                Ok(Certified {
                    value: g / rate.powf(s),
                    abs_err: 1e-12 * g / rate.powf(s),
                })
            }
            Bernoulli { p } => {
                if s == 0.0 {
                    Ok(Certified::exact(self.tail(m)))
                } else if m <= 1.0 {
                    Ok(Certified::exact(p))
                } else {
                    Ok(Certified::exact(0.0))
                }
            }
            PointMass { value } => {
                if value >= m {
                    Ok(Certified::exact(value.powf(s)))
                } else {
                    Ok(Certified::exact(0.0))
                }
            }
            DiscreteLogTail => {
                if s > 1.0 {
                    return Err(DistError::InfiniteMoment);
                }
                let c = dlt_norm();
                let j0 = if m <= 2.0 { 1 } else { m.log2().ceil().max(1.0) as u32 };
                if j0 > DLT_MAX_ATOM {
                    return Ok(Certified::exact(0.0));
                }
                if s == 1.0 {
                    let t = numeric::zeta_tail(2.0, j0 as u128 - 1);
                    return Ok(t.scale(c));
                }
                let r = (2.0f64).powf(s - 1.0);
                let mut sum = 0.0;
                let mut j = j0;
                loop {
                    let jf = j as f64;
                    sum += r.powf(jf) / (jf * jf);
                    j += 1;
                    let jf = j as f64;
                    let rem = r.powf(jf) / (jf * jf) / (1.0 - r);
                    if rem < 1e-16 * sum.max(1e-300) || j > 100_000 {
                        return Ok(Certified { value: c * sum, abs_err: c * rem });
                    }
                }
            }
            DiscretePowerTail { exponent } => {
                if s >= exponent - 1.0 {
                    return Err(DistError::InfiniteMoment);
                }
                let k0 = m.ceil().max(1.0);
                let den = numeric::zeta(exponent).value;
                if k0 < 1.8e38 {
                    let t = numeric::zeta_tail(exponent - s, (k0 as u128) - 1);
                    Ok(t.scale(1.0 / den))
                } else {
                    let sp = exponent - s;
                    let p = k0.powf(-sp);
                    Ok(Certified {
                        value: (k0 * p / (sp - 1.0) + 0.5 * p) / den,
                        abs_err: sp * p / k0 / den,
                    })
                }
            }
        }
    }

    /// E[X | X >= c]; errors when conditioning is impossible or the
    /// conditional mean diverges.
    pub fn conditional_tail_mean(&self, c: f64) -> Result<f64, DistError> {
        let s = self.tail(c);
        if s <= 0.0 {
            return Err(DistError::ImpossibleConditioning(c));
        }
        Ok(self.partial_moment(1.0, c)?.value / s)
    }
}

/// A union of disjoint floor-value intervals [lo, hi), lo < hi, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorRestriction {
    ranges: Vec<(u128, u128)>,
}

impl FloorRestriction {
    pub fn from_ranges(mut ranges: Vec<(u128, u128)>) -> Result<Self, DistError> {
        ranges.retain(|&(lo, hi)| hi > lo);
        ranges.sort();
        if ranges.is_empty() {
            return Err(DistError::EmptyRestriction);
        }
        for w in ranges.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(DistError::EmptyRestriction);
            }
        }
        Ok(FloorRestriction { ranges })
    }

    /// Singleton floor values {j}: intervals [j, j+1).
    pub fn from_values(values: &[u64]) -> Result<Self, DistError> {
        Self::from_ranges(values.iter().map(|&j| (j as u128, j as u128 + 1)).collect())
    }

    pub fn ranges(&self) -> &[(u128, u128)] {
        &self.ranges
    }
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, m, left, tol / 2.0, depth - 1) + rec(f, m, b, right, tol / 2.0, depth - 1)
        }
    }
    rec(f, a, b, simpson(f, a, b), tol, depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pareto15() -> DistributionSpec {
        DistributionSpec::pareto(1.5, 1.0).unwrap()
    }

    #[test]
    fn tail_examples() {
        assert_eq!(pareto15().tail(4.0), 0.125);
        for d in all_families() {
            assert_eq!(d.tail(0.0), 1.0);
        }
        assert_eq!(DistributionSpec::bernoulli(0.5).unwrap().tail(1.0), 0.5);
    }

    #[test]
    fn quantile_examples() {
        let e = DistributionSpec::exponential(1.0).unwrap();
        let u = 1.0 - (-2.0f64).exp();
        assert!((e.quantile(u).unwrap() - 2.0).abs() < 1e-12);
        let pm = DistributionSpec::point_mass(7.0).unwrap();
        assert_eq!(pm.quantile(0.5).unwrap(), 7.0);
        assert!((pareto15().quantile(0.875).unwrap() - 4.0).abs() < 1e-12);
        assert!(matches!(
            pareto15().quantile(0.0),
            Err(DistError::QuantileDomain(_))
        ));
        assert!(matches!(
            pareto15().quantile(1.0),
            Err(DistError::QuantileDomain(_))
        ));
    }

    #[test]
    fn moment_examples() {
        assert_eq!(pareto15().moment(1.0).value(), Some(3.0));
        assert_eq!(pareto15().moment(1.5), Moment::Infinite);
        assert_eq!(
            DistributionSpec::point_mass(1.0).unwrap().moment(2.0).value(),
            Some(1.0)
        );
        // Exponential(1): E X^1.5 = Γ(2.5) = 1.3293403881791370 (mpmath)
        let e = DistributionSpec::exponential(1.0).unwrap();
        let m = e.moment(1.5).value().unwrap();
        assert!((m - 1.3293403881791370).abs() < 1e-12);
    }

    #[test]
    fn moment_classification_monotone_in_alpha() {
        for d in all_families() {
            let mut seen_infinite = false;
            for i in 0..50 {
                let alpha = 0.1 + 0.1 * i as f64;
                match d.moment(alpha) {
                    Moment::Infinite => seen_infinite = true,
                    Moment::Finite { .. } => {
                        assert!(!seen_infinite, "{d:?} finite at {alpha} after infinite")
                    }
                }
            }
        }
    }

    #[test]
    fn xlogx_examples() {
        assert_eq!(DistributionSpec::discrete_log_tail().xlogx_moment(), Moment::Infinite);
        assert_eq!(
            DistributionSpec::point_mass(1.0).unwrap().xlogx_moment().value(),
            Some(0.0)
        );
        // independent oracle: plain fixed-grid Simpson for ∫_1^T x ln x e^{-x} dx
        let oracle = {
            let f = |x: f64| x * x.ln() * (-x).exp();
            let (a, b, n) = (1.0f64, 120.0f64, 1_200_000usize);
            let h = (b - a) / n as f64;
            let mut s = f(a) + f(b);
            for i in 1..n {
                let x = a + h * i as f64;
                s += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            s * h / 3.0
        };
        assert!((oracle - 0.5872633755669626).abs() < 1e-9, "oracle {oracle}");
        let got = DistributionSpec::exponential(1.0)
            .unwrap()
            .xlogx_moment()
            .value()
            .unwrap();
        assert!((got - oracle).abs() < 1e-9, "got {got} oracle {oracle}");
        // Pareto closed form: a/(a-1)^2 at xm=1
        let p = pareto15().xlogx_moment().value().unwrap();
        assert!((p - 6.0).abs() < 1e-12);
    }

    #[test]
    fn floor_pmf_examples() {
        assert_eq!(DistributionSpec::bernoulli(0.5).unwrap().floor_pmf(0), 0.5);
        let want = 1.0 - (2.0f64).powf(-1.5);
        assert!((pareto15().floor_pmf(1) - want).abs() < 1e-15);
        assert_eq!(DistributionSpec::point_mass(2.5).unwrap().floor_pmf(2), 1.0);
    }

    #[test]
    fn floor_pmf_sums_to_one() {
        for d in all_families() {
            let mut sum = 0.0;
            for k in 0..=10_000u64 {
                sum += d.floor_pmf(k);
            }
            sum += d.tail(10_001.0);
            assert!((sum - 1.0).abs() < 1e-9, "{d:?}: {sum}");
        }
    }

    #[test]
    fn round_trip_continuous() {
        for d in [pareto15(), DistributionSpec::exponential(0.7).unwrap()] {
            for i in 1..100 {
                let u = i as f64 / 100.0;
                let q = d.quantile(u).unwrap();
                assert!((1.0 - d.tail(q) - u).abs() <= 1e-9, "{d:?} u={u}");
            }
        }
    }

    #[test]
    fn quantile_tail_lower_bound_all_families() {
        for d in all_families() {
            for i in 1..100 {
                let u = i as f64 / 100.0;
                let q = d.quantile(u).unwrap();
                assert!(
                    d.tail(q) >= 1.0 - u - 1e-12,
                    "{d:?} u={u} q={q} tail={}",
                    d.tail(q)
                );
            }
        }
    }

    #[test]
    fn sampling_examples() {
        let pm = DistributionSpec::point_mass(3.0).unwrap();
        let mut s = RandomStream::new(1, 0);
        assert_eq!(pm.sample_n(&mut s, 4), vec![3.0; 4]);

        let e = DistributionSpec::exponential(1.0).unwrap();
        let mut s = RandomStream::new(42, 1);
        let n = 1_000_000;
        let mean: f64 = (0..n).map(|_| e.sample(&mut s)).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 0.005, "{mean}");

        let p = pareto15();
        let mut s = RandomStream::new(42, 2);
        let hits = (0..n).filter(|_| p.sample(&mut s) >= 4.0).count();
        let frac = hits as f64 / n as f64;
        assert!((frac - 0.125).abs() < 0.001, "{frac}");
    }

    #[test]
    fn conditional_tail_sampling() {
        let pm = DistributionSpec::point_mass(3.0).unwrap();
        let mut s = RandomStream::new(5, 0);
        assert_eq!(pm.sample_conditional_tail(&mut s, 2.0).unwrap(), 3.0);

        let p = pareto15();
        let mut s = RandomStream::new(5, 1);
        for _ in 0..100_000 {
            assert!(p.sample_conditional_tail(&mut s, 10.0).unwrap() >= 10.0);
        }
        let mut s = RandomStream::new(5, 2);
        let n = 1_000_000;
        let mean: f64 = (0..n)
            .map(|_| p.sample_conditional_tail(&mut s, 10.0).unwrap())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 30.0).abs() < 1.0, "{mean}");

        let b = DistributionSpec::bernoulli(0.5).unwrap();
        assert!(matches!(
            b.sample_conditional_tail(&mut s, 2.0),
            Err(DistError::ImpossibleConditioning(_))
        ));
    }

    #[test]
    fn conditional_floor_sampling() {
        let pm = DistributionSpec::point_mass(2.5).unwrap();
        let r = FloorRestriction::from_values(&[2]).unwrap();
        let mut s = RandomStream::new(9, 0);
        assert_eq!(pm.sample_conditional_floor(&mut s, &r).unwrap(), 2.5);

        let p = pareto15();
        let r1 = FloorRestriction::from_values(&[1]).unwrap();
        let mut s = RandomStream::new(9, 1);
        for _ in 0..50_000 {
            let x = p.sample_conditional_floor(&mut s, &r1).unwrap();
            assert!((1.0..2.0).contains(&x), "{x}");
        }

        let r12 = FloorRestriction::from_values(&[1, 2]).unwrap();
        let mut s = RandomStream::new(9, 2);
        let n = 200_000;
        let ones = (0..n)
            .filter(|_| p.sample_conditional_floor(&mut s, &r12).unwrap() < 2.0)
            .count();
        let psi1 = p.floor_pmf(1);
        let psi2 = p.floor_pmf(2);
        let want = psi1 / (psi1 + psi2);
        let got = ones as f64 / n as f64;
        let ci = 3.0 * (want * (1.0 - want) / n as f64).sqrt();
        assert!((got - want).abs() < ci + 1e-3, "{got} vs {want}");

        let empty = FloorRestriction::from_values(&[40]);
        let b = DistributionSpec::bernoulli(0.5).unwrap();
        let mut s = RandomStream::new(9, 3);
        assert!(matches!(
            b.sample_conditional_floor(&mut s, &empty.unwrap()),
            Err(DistError::EmptyRestriction)
        ));
    }

    #[test]
    fn kolmogorov_smirnov_per_family() {
        // 99% asymptotic critical value c/sqrt(n), c = sqrt(-ln(0.005)/2);
        // conservative for the lattice families.
        let n = 100_000usize;
        let crit = (-(0.005f64).ln() / 2.0).sqrt() / (n as f64).sqrt();
        for (i, d) in all_families().into_iter().enumerate() {
            if matches!(d, PointMass { .. }) {
                continue;
            }
            let mut s = RandomStream::new(1234, 100 + i as u64);
            let mut xs = d.sample_n(&mut s, n);
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // sup_x |F_hat - F| over groups of tied values, both sides of each jump
            let mut dmax = 0.0f64;
            let mut i = 0usize;
            while i < n {
                let v = xs[i];
                let mut j = i;
                while j < n && xs[j] == v {
                    j += 1;
                }
                let f_at = d.cdf(v);
                let f_before = 1.0 - d.tail(v);
                dmax = dmax
                    .max((j as f64 / n as f64 - f_at).abs())
                    .max((i as f64 / n as f64 - f_before).abs());
                i = j;
            }
            assert!(dmax <= crit, "{d:?}: D={dmax} crit={crit}");
        }
    }

    #[test]
    fn dlt_mass_normalizes() {
        let d = DistributionSpec::discrete_log_tail();
        // E X = C * zeta(2) = 2.8251796157770072 (mpmath)
        assert!((d.mean_value().unwrap() - 2.8251796157770072).abs() < 1e-10);
        assert!((d.tail(2.0) - 1.0).abs() < 1e-12);
        // tail at 8 = C * Σ_{j>=3} 1/(j^2 2^j) = C * 0.019740526465012506
        let want = dlt_norm() * 0.019740526465012506;
        assert!((d.tail(8.0) - want).abs() < 1e-12);
    }

    #[test]
    fn partial_moment_consistency() {
        // partial_moment(0, m) == tail(m)
        for d in all_families() {
            for m in [0.0, 1.5, 3.0, 17.0] {
                if let Ok(pm) = d.partial_moment(0.0, m) {
                    assert!(
                        (pm.value - d.tail(m)).abs() < 1e-9,
                        "{d:?} m={m}: {} vs {}",
                        pm.value,
                        d.tail(m)
                    );
                }
            }
        }
        // Pareto conditional mean: a c/(a-1)
        let p = pareto15();
        assert!((p.conditional_tail_mean(10.0).unwrap() - 30.0).abs() < 1e-12);
        // DPT(3): E[X; X>=m] = zeta_tail(2, m-1)/zeta(3)
        let d = DistributionSpec::discrete_power_tail(3.0).unwrap();
        let direct: f64 = (5..200_000u64).map(|k| (k as f64).powf(-2.0)).sum();
        let got = d.partial_moment(1.0, 5.0).unwrap().value;
        let want = direct / 1.2020569031595943;
        assert!((got - want).abs() < 1e-5, "{got} vs {want}");
    }

    fn all_families() -> Vec<DistributionSpec> {
        vec![
            pareto15(),
            DistributionSpec::exponential(1.0).unwrap(),
            DistributionSpec::bernoulli(0.5).unwrap(),
            DistributionSpec::point_mass(2.5).unwrap(),
            DistributionSpec::discrete_log_tail(),
            DistributionSpec::discrete_power_tail(3.0).unwrap(),
        ]
    }
}
