//! q-ary symmetric channel: transition probabilities, sampling, and
//! log-likelihood vectors.
//!
//! All logarithms in this crate are natural logarithms. Probabilities are
//! floored at [`PROB_FLOOR`] before taking logs and log-likelihood entries
//! are clamped to ≥ −700, so zero probabilities never produce −∞ or NaN.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::Symbol;

/// Floor applied to probabilities before taking logarithms.
pub const PROB_FLOOR: f64 = 1e-300;

/// ln with the probability floor and a −700 clamp.
#[inline]
pub(crate) fn safe_ln(p: f64) -> f64 {
    p.max(PROB_FLOOR).ln().max(-700.0)
}

/// Channel parameters: field order q and symbol error probability ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QscParams {
    q: usize,
    eps: f64,
}

impl QscParams {
    pub fn new(q: usize, eps: f64) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("field order {q} < 2")));
        }
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::invalid(format!("eps = {eps} outside [0, 1]")));
        }
        Ok(Self { q, eps })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// P(y|x): 1−ε if y = x, ε/(q−1) otherwise.
    pub fn transition_prob(&self, y: Symbol, x: Symbol) -> f64 {
        if y == x {
            1.0 - self.eps
        } else {
            self.eps / (self.q - 1) as f64
        }
    }

    /// Draws a channel output for input `x`: the input survives with
    /// probability 1−ε, otherwise one of the q−1 other symbols is chosen
    /// uniformly.
    pub fn sample<R: Rng + ?Sized>(&self, x: Symbol, rng: &mut R) -> Symbol {
        if rng.random::<f64>() >= self.eps {
            return x;
        }
        let k = rng.random_range(0..self.q as u16 - 1);
        if k >= x.0 {
            Symbol(k + 1)
        } else {
            Symbol(k)
        }
    }

    /// The channel log-likelihood vector L(y) with entries L_u(y) = ln P(y|u).
    pub fn channel_llv(&self, y: Symbol) -> LlVector {
        let wrong = safe_ln(self.eps / (self.q - 1) as f64);
        let mut values = vec![wrong; self.q];
        values[y.index()] = safe_ln(1.0 - self.eps);
        LlVector(values)
    }

    /// Channel reliability D_ch = ln(1−ε) − ln(ε/(q−1)).
    pub fn d_ch(&self) -> f64 {
        safe_ln(1.0 - self.eps) - safe_ln(self.eps / (self.q - 1) as f64)
    }
}

/// A length-q vector of (log-domain) likelihoods, indexed by symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct LlVector(pub(crate) Vec<f64>);

impl LlVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn zeros(q: usize) -> Self {
        Self(vec![0.0; q])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, u: Symbol) -> f64 {
        self.0[u.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn transition_probabilities() {
        let p = QscParams::new(4, 0.3).unwrap();
        let y = Symbol(2);
        assert!((p.transition_prob(y, y) - 0.7).abs() < 1e-15);
        assert!((p.transition_prob(y, Symbol(0)) - 0.1).abs() < 1e-15);
        let noiseless = QscParams::new(4, 0.0).unwrap();
        assert_eq!(noiseless.transition_prob(Symbol(1), Symbol(0)), 0.0);
    }

    #[test]
    fn sampling_extremes() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let p0 = QscParams::new(4, 0.0).unwrap();
        let p1 = QscParams::new(2, 1.0).unwrap();
        for _ in 0..1000 {
            assert_eq!(p0.sample(Symbol(3), &mut rng), Symbol(3));
            assert_ne!(p1.sample(Symbol(0), &mut rng), Symbol(0));
        }
    }

    #[test]
    fn sampling_law_matches_transition_probabilities() {
        // chi-square against the multinomial (0.7, 0.1, 0.1, 0.1), 1e6 draws
        let p = QscParams::new(4, 0.3).unwrap();
        let x = Symbol(2);
        let n = 1_000_000usize;
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        let mut counts = [0u64; 4];
        for _ in 0..n {
            counts[p.sample(x, &mut rng).index()] += 1;
        }
        let mut chi2 = 0.0;
        for u in 0..4 {
            let expect = n as f64 * p.transition_prob(Symbol(u as u16), x);
            chi2 += (counts[u] as f64 - expect).powi(2) / expect;
        }
        // 4σ-ish bound for df = 3: mean 3, var 6 → 3 + 4·sqrt(6) ≈ 12.8
        assert!(chi2 < 12.8, "chi2 = {chi2}, counts = {counts:?}");
    }

    #[test]
    fn llv_values_and_normalization() {
        let p = QscParams::new(4, 0.3).unwrap();
        let y = Symbol(2); // α in index order 0, 1, α, α²
        let llv = p.channel_llv(y);
        let expect = [0.1f64.ln(), 0.1f64.ln(), 0.7f64.ln(), 0.1f64.ln()];
        for (a, b) in llv.values().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        let max = llv.values().iter().cloned().fold(f64::MIN, f64::max);
        let min = llv.values().iter().cloned().fold(f64::MAX, f64::min);
        assert!((max - min - p.d_ch()).abs() < 1e-12);
        // each column of P(y|·) is a permutation of one distribution
        let total: f64 = llv.values().iter().map(|l| l.exp()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_channel_has_flat_llv() {
        let p = QscParams::new(4, 0.75).unwrap();
        let llv = p.channel_llv(Symbol(1));
        for v in llv.values() {
            assert!((v - llv.values()[0]).abs() < 1e-12);
        }
        assert!(p.d_ch().abs() < 1e-12);
    }

    #[test]
    fn clamping_keeps_llv_finite() {
        let p = QscParams::new(4, 0.0).unwrap();
        let llv = p.channel_llv(Symbol(0));
        assert!(llv.values().iter().all(|v| v.is_finite() && *v >= -700.0));
        assert!(p.d_ch().is_finite());
    }
}
