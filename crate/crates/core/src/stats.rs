//! Student's t distribution, as needed for confidence intervals on mean
//! estimation error.
//!
//! The quantile is computed from first principles so results are identical
//! on every platform: the CDF goes through the regularized incomplete beta
//! function (continued fraction, Lentz's method) and the quantile inverts
//! it by bisection. Accuracy is far below the 1e-6 relative error needed
//! by callers; the anchors in the test table agree to about 1e-9.

use thiserror::Error;

/// Natural log of the gamma function (Lanczos approximation, x > 0).
fn ln_gamma(x: f64) -> f64 {
    const COF: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    let tmp = x + 5.5;
    let tmp = tmp - (x + 0.5) * tmp.ln();
    let mut ser = 1.000000000190015;
    for (i, c) in COF.iter().enumerate() {
        ser += c / (x + 1.0 + i as f64);
    }
    -tmp + (2.5066282746310005 * ser / x).ln()
}

/// Continued fraction for the incomplete beta function (Lentz's method).
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 1e-15;
    const FPMIN: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta function I_x(a, b) for x in [0, 1].
fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let front = (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln())
        .exp();
    // The continued fraction converges fastest below the distribution mode;
    // use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other side.
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

/// Cumulative distribution function of Student's t with `dof` degrees of
/// freedom, evaluated at `t`.
pub fn t_cdf(t: f64, dof: u32) -> Result<f64, StatsError> {
    if dof == 0 {
        return Err(StatsError::ZeroDegreesOfFreedom);
    }
    let v = f64::from(dof);
    let x = v / (v + t * t);
    let tail = regularized_incomplete_beta(v / 2.0, 0.5, x) / 2.0;
    Ok(if t >= 0.0 { 1.0 - tail } else { tail })
}

/// Quantile (inverse CDF) of Student's t with `dof` degrees of freedom.
///
/// `p` must lie strictly between 0 and 1; `dof` must be positive. The
/// median is returned as exactly 0. Elsewhere the CDF is bracketed by
/// doubling and inverted by bisection to a relative width of 1e-12.
pub fn t_quantile(p: f64, dof: u32) -> Result<f64, StatsError> {
    if dof == 0 {
        return Err(StatsError::ZeroDegreesOfFreedom);
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(StatsError::ProbabilityOutOfRange(p));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p < 0.5 {
        return Ok(-t_quantile(1.0 - p, dof)?);
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while t_cdf(hi, dof)? < p {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            break;
        }
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-12 * mid.abs().max(1.0) {
            return Ok(mid);
        }
        if t_cdf(mid, dof)? < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum StatsError {
    #[error("probability must lie strictly between 0 and 1, got {0}")]
    ProbabilityOutOfRange(f64),
    #[error("degrees of freedom must be positive")]
    ZeroDegreesOfFreedom,
}
