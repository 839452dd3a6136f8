//! Degree distributions, design rate, and q-ary symmetric channel limits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge-perspective degree distribution pair (λ, ρ).
///
/// `lambda[d]` is the fraction of edges incident to variable nodes of
/// degree d, `rho[d]` the fraction incident to check nodes of degree d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeDistribution {
    lambda: BTreeMap<usize, f64>,
    rho: BTreeMap<usize, f64>,
}

fn validate_poly(name: &str, coeffs: &BTreeMap<usize, f64>) -> Result<()> {
    if coeffs.is_empty() {
        return Err(Error::invalid(format!("{name} has no coefficients")));
    }
    let mut sum = 0.0;
    for (&d, &c) in coeffs {
        if d < 2 {
            return Err(Error::invalid(format!("{name} degree {d} < 2")));
        }
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::invalid(format!("{name} coefficient {c} for degree {d} not in [0,1]")));
        }
        sum += c;
    }
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!("{name} coefficients sum to {sum}, expected 1")));
    }
    Ok(())
}

fn eval_poly(coeffs: &BTreeMap<usize, f64>, x: f64) -> f64 {
    coeffs.iter().map(|(&d, &c)| c * x.powi(d as i32 - 1)).sum()
}

impl DegreeDistribution {
    pub fn new(lambda: BTreeMap<usize, f64>, rho: BTreeMap<usize, f64>) -> Result<Self> {
        validate_poly("lambda", &lambda)?;
        validate_poly("rho", &rho)?;
        Ok(Self { lambda, rho })
    }

    /// The (d_v, d_c)-regular ensemble: λ(x) = x^{d_v−1}, ρ(x) = x^{d_c−1}.
    pub fn regular(dv: usize, dc: usize) -> Result<Self> {
        Self::new(BTreeMap::from([(dv, 1.0)]), BTreeMap::from([(dc, 1.0)]))
    }

    /// Parses one polynomial from `"3:0.5,4:0.5"` (degree:coefficient pairs).
    pub fn parse_polynomial(s: &str) -> Result<BTreeMap<usize, f64>> {
        let mut coeffs = BTreeMap::new();
        for part in s.split(',') {
            let part = part.trim();
            let (d, c) = part
                .split_once(':')
                .ok_or_else(|| Error::invalid(format!("expected degree:coefficient, got {part:?}")))?;
            let d: usize = d
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad degree {d:?}")))?;
            let c: f64 = c
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad coefficient {c:?}")))?;
            if coeffs.insert(d, c).is_some() {
                return Err(Error::invalid(format!("duplicate degree {d}")));
            }
        }
        Ok(coeffs)
    }

    pub fn lambda(&self) -> &BTreeMap<usize, f64> {
        &self.lambda
    }

    pub fn rho(&self) -> &BTreeMap<usize, f64> {
        &self.rho
    }

    /// λ(x) = Σ λ_d x^{d−1}.
    pub fn eval_lambda(&self, x: f64) -> f64 {
        eval_poly(&self.lambda, x)
    }

    /// ρ(x) = Σ ρ_d x^{d−1}. The domain is extended to all reals; the
    /// density evolution recursions feed arguments like x₁ − x₂/(q−1).
    pub fn eval_rho(&self, x: f64) -> f64 {
        eval_poly(&self.rho, x)
    }

    pub fn max_vn_degree(&self) -> usize {
        *self.lambda.keys().last().unwrap()
    }

    pub fn max_cn_degree(&self) -> usize {
        *self.rho.keys().last().unwrap()
    }

    /// Design rate 1 − (Σ ρ_d/d)/(Σ λ_d/d); an error when non-positive.
    pub fn design_rate(&self) -> Result<f64> {
        let li: f64 = self.lambda.iter().map(|(&d, &c)| c / d as f64).sum();
        let ri: f64 = self.rho.iter().map(|(&d, &c)| c / d as f64).sum();
        let rate = 1.0 - ri / li;
        if rate <= 0.0 {
            return Err(Error::invalid(format!("degenerate ensemble: design rate {rate} ≤ 0")));
        }
        Ok(rate)
    }
}

fn check_q(q: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::invalid(format!("field order {q} < 2")));
    }
    Ok(())
}

/// Capacity of the q-ary symmetric channel in symbols per channel use:
/// C = 1 + ε log_q(ε/(q−1)) + (1−ε) log_q(1−ε), with 0·log 0 = 0.
pub fn qsc_capacity(q: usize, eps: f64) -> Result<f64> {
    check_q(q)?;
    let max_eps = (q - 1) as f64 / q as f64;
    if !(0.0..=max_eps).contains(&eps) {
        return Err(Error::invalid(format!(
            "eps = {eps} outside [0, (q-1)/q = {max_eps}]"
        )));
    }
    let lq = (q as f64).ln();
    let mut c = 1.0;
    if eps > 0.0 {
        c += eps * (eps / (q - 1) as f64).ln() / lq;
    }
    if eps < 1.0 {
        c += (1.0 - eps) * (1.0 - eps).ln() / lq;
    }
    Ok(c)
}

/// Inverts `qsc_capacity` at C = rate by bisection on [0, (q−1)/q],
/// using that capacity is strictly decreasing in ε.
pub fn shannon_limit(q: usize, rate: f64) -> Result<f64> {
    check_q(q)?;
    if !(0.0 < rate && rate < 1.0) {
        return Err(Error::invalid(format!("rate = {rate} outside (0, 1)")));
    }
    let max_eps = (q - 1) as f64 / q as f64;
    // keep the capacity evaluations away from the log singularities
    let clamp = |e: f64| e.clamp(1e-15, max_eps - 1e-15);
    let mut lo = 0.0;
    let mut hi = max_eps;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let c = qsc_capacity(q, clamp(mid))?;
        if c > rate {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
