//! Certified series summation and small statistical helpers.
//!
//! The heavy-tailed constructions in this crate need partial sums of
//! power-type series over integer ranges that can span 20+ orders of
//! magnitude. Direct term-by-term summation is hopeless there, so sums are
//! split into an explicit head and an Euler–Maclaurin tail whose first
//! omitted correction bounds the error.

/// Integer count below which power sums are evaluated term by term.
const DIRECT_HEAD: u128 = 20_000;

/// A value together with a certified absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certified {
    pub value: f64,
    pub abs_err: f64,
}

impl Certified {
    pub fn exact(value: f64) -> Self {
        Certified { value, abs_err: 0.0 }
    }

    pub fn add(self, other: Certified) -> Certified {
        Certified {
            value: self.value + other.value,
            abs_err: self.abs_err + other.abs_err,
        }
    }

    pub fn scale(self, c: f64) -> Certified {
        Certified {
            value: c * self.value,
            abs_err: c.abs() * self.abs_err,
        }
    }
}

/// Σ_{k>n} k^{-s} for s > 1, by Euler–Maclaurin from n (error ~ s^5 n^{-s-5}).
pub fn zeta_tail(s: f64, n: u128) -> Certified {
    assert!(s > 1.0, "zeta_tail needs s > 1, got {s}");
    if n < DIRECT_HEAD {
        let mut sum = 0.0f64;
        for k in (n + 1)..DIRECT_HEAD {
            sum += (k as f64).powf(-s);
        }
        let t = zeta_tail_em(s, DIRECT_HEAD - 1);
        return Certified {
            value: sum + t.value,
            abs_err: t.abs_err,
        };
    }
    zeta_tail_em(s, n)
}

fn zeta_tail_em(s: f64, n: u128) -> Certified {
    let a = (n + 1) as f64;
    // Σ_{k>=a} k^{-s} = a^{1-s}/(s-1) + a^{-s}/2 + s a^{-s-1}/12 - s(s+1)(s+2) a^{-s-3}/720 + ...
    let p = a.powf(-s);
    let integral = a * p / (s - 1.0);
    let c1 = 0.5 * p;
    let c2 = s * p / a / 12.0;
    let c3 = -s * (s + 1.0) * (s + 2.0) * p / (a * a * a) / 720.0;
    let err = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * p / (a * a * a * a * a) / 30240.0;
    Certified {
        value: integral + c1 + c2 + c3,
        abs_err: err.abs() + 1e-16 * integral.abs(),
    }
}

/// ζ(s) for s > 1 with a certified bound.
pub fn zeta(s: f64) -> Certified {
    zeta_tail(s, 0)
}

/// Σ_{k>n} k^{-s} ln k for s > 1.
pub fn zeta_log_tail(s: f64, n: u128) -> Certified {
    assert!(s > 1.0);
    if n < DIRECT_HEAD {
        let mut sum = 0.0f64;
        for k in (n + 1)..DIRECT_HEAD {
            let x = k as f64;
            sum += x.powf(-s) * x.ln();
        }
        let t = zeta_log_tail_em(s, DIRECT_HEAD - 1);
        return Certified {
            value: sum + t.value,
            abs_err: t.abs_err,
        };
    }
    zeta_log_tail_em(s, n)
}

fn zeta_log_tail_em(s: f64, n: u128) -> Certified {
    let a = (n + 1) as f64;
    let la = a.ln();
    let p = a.powf(-s);
    // ∫_a^∞ x^{-s} ln x dx = a^{1-s} (ln a/(s-1) + 1/(s-1)^2)
    let integral = a * p * (la / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));
    // f(a)/2 with f = x^{-s} ln x
    let c1 = 0.5 * p * la;
    // -f'(a)/12, f'(x) = x^{-s-1}(1 - s ln x)
    let c2 = -(p / a) * (1.0 - s * la) / 12.0;
    // crude bound on the next correction
    let err = (s + 1.0).powi(3) * (1.0 + la) * p / (a * a * a) / 100.0;
    Certified {
        value: integral + c1 + c2,
        abs_err: err.abs() + 1e-16 * integral.abs(),
    }
}

/// Σ_{k=m}^{n} k^s for arbitrary real s (m >= 1). Exact head summation for
/// short ranges, Euler–Maclaurin endpoint difference for long ones.
pub fn power_sum(s: f64, m: u128, n: u128) -> Certified {
    assert!(m >= 1);
    if n < m {
        return Certified::exact(0.0);
    }
    if n - m < DIRECT_HEAD {
        let mut sum = 0.0f64;
        for k in m..=n {
            sum += (k as f64).powf(s);
        }
        return Certified {
            value: sum,
            abs_err: 1e-15 * sum.abs(),
        };
    }
    // head up to h, then G(n) - G(h) via EM with both endpoints large
    let h = if m - 1 < DIRECT_HEAD { DIRECT_HEAD } else { m - 1 };
    let mut head = 0.0f64;
    for k in m..=h {
        head += (k as f64).powf(s);
    }
    let t = power_sum_em(s, h, n);
    Certified {
        value: head + t.value,
        abs_err: t.abs_err + 1e-15 * head.abs(),
    }
}

/// Σ_{k=a+1}^{b} k^s by Euler–Maclaurin with both endpoints >= DIRECT_HEAD.
fn power_sum_em(s: f64, a: u128, b: u128) -> Certified {
    let fa = a as f64;
    let fb = b as f64;
    let f = |x: f64| x.powf(s);
    let f1 = |x: f64| s * x.powf(s - 1.0);
    let f3 = |x: f64| s * (s - 1.0) * (s - 2.0) * x.powf(s - 3.0);
    let integral = if (s - (-1.0)).abs() < 1e-12 {
        (fb / fa).ln()
    } else {
        (fb.powf(s + 1.0) - fa.powf(s + 1.0)) / (s + 1.0)
    };
    let value = integral + (f(fb) - f(fa)) / 2.0 + (f1(fb) - f1(fa)) / 12.0
        - (f3(fb) - f3(fa)) / 720.0;
    let err5 = |x: f64| (s * (s - 1.0) * (s - 2.0) * (s - 3.0) * (s - 4.0)).abs() * x.powf(s - 5.0);
    Certified {
        value,
        abs_err: (err5(fa) + err5(fb)) / 30240.0 + 1e-15 * value.abs(),
    }
}

/// n-th harmonic number H_n = Σ_{k<=n} 1/k.
pub fn harmonic(n: u64) -> f64 {
    power_sum(-1.0, 1, n as u128).value
}

/// ln Π (1-p_k) accumulated as Σ ln1p(-p_k); -inf when any p_k = 1.
pub fn log_prod_one_minus(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| (-p).ln_1p()).sum()
}

/// Ordinary least squares fit y = a + b x returning (slope, 3σ half-width of
/// the slope) where per-point uncertainties `sigma` propagate through the
/// closed-form slope weights. Points are equally weighted in the fit.
pub fn ols_slope_ci(xs: &[f64], ys: &[f64], sigmas: &[f64]) -> (f64, f64) {
    assert!(xs.len() == ys.len() && xs.len() == sigmas.len());
    let n = xs.len() as f64;
    assert!(xs.len() >= 2);
    let mx = xs.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    let slope = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (x - mx) * y)
        .sum::<f64>()
        / sxx;
    let var: f64 = xs
        .iter()
        .zip(sigmas)
        .map(|(&x, &s)| {
            let w = (x - mx) / sxx;
            w * w * s * s
        })
        .sum();
    (slope, 3.0 * var.sqrt())
}

/// Two-sample chi-square statistic on binned counts with equal sample sizes:
/// Σ (o1 - o2)^2 / (o1 + o2) over bins with o1 + o2 > 0; df = bins_used - 1.
pub fn two_sample_chi_square(counts1: &[u64], counts2: &[u64]) -> (f64, usize) {
    assert_eq!(counts1.len(), counts2.len());
    let mut stat = 0.0;
    let mut used: usize = 0;
    for (&a, &b) in counts1.iter().zip(counts2) {
        let s = (a + b) as f64;
        if s > 0.0 {
            let d = a as f64 - b as f64;
            stat += d * d / s;
            used += 1;
        }
    }
    (stat, used.saturating_sub(1))
}

/// One-sample chi-square against expected probabilities (masses renormalized
/// over the supplied bins).
pub fn one_sample_chi_square(counts: &[u64], probs: &[f64]) -> (f64, usize) {
    assert_eq!(counts.len(), probs.len());
    let n: u64 = counts.iter().sum();
    let total_p: f64 = probs.iter().sum();
    let mut stat = 0.0;
    let mut used: usize = 0;
    for (&o, &p) in counts.iter().zip(probs) {
        let e = n as f64 * p / total_p;
        if e > 0.0 {
            let d = o as f64 - e;
            stat += d * d / e;
            used += 1;
        }
    }
    (stat, used.saturating_sub(1))
}

/// Upper-tail p-value of a chi-square statistic.
pub fn chi_square_pvalue(stat: f64, df: usize) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    if df == 0 {
        return 1.0;
    }
    let dist = ChiSquared::new(df as f64).expect("valid dof");
    1.0 - dist.cdf(stat)
}
