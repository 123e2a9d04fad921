//! Information quantifiers of a probability distribution: Shannon entropy,
//! its normalized form, Jensen-Shannon divergence, statistical complexity
//! and the distance to the maximal-efficiency point `(H, C) = (1, 0)`.
//!
//! All logarithms are natural; every normalized quantity is a ratio of two
//! logarithms in the same base, so results do not depend on the base.

use crate::error::{Error, Result};
use crate::ordinal::PatternDistribution;

/// Accepted deviation of `Σp` from 1 before re-normalization.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Entropy, complexity and inefficiency of one distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantifiers {
    pub entropy: f64,
    pub complexity: f64,
    pub inefficiency: f64,
    pub alphabet_size: usize,
}

impl Quantifiers {
    pub fn from_probabilities(p: &[f64]) -> Result<Self> {
        let p = validated(p)?;
        let m = check_alphabet(p.len())?;
        let entropy = normalized(&p, m);
        let complexity = disequilibrium_of(&p) * entropy;
        Ok(Self {
            entropy,
            complexity,
            inefficiency: inefficiency(entropy, complexity),
            alphabet_size: m,
        })
    }

    pub fn from_distribution(dist: &PatternDistribution) -> Result<Self> {
        Self::from_probabilities(dist.probabilities())
    }
}

/// `S[P] = -Σ p_i ln p_i` in nats, with `0·ln 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    Ok(entropy_of(&validated(p)?))
}

/// `H[P] = S[P] / ln M`, in `[0, 1]`.
pub fn normalized_entropy(p: &[f64]) -> Result<f64> {
    let p = validated(p)?;
    let m = check_alphabet(p.len())?;
    Ok(normalized(&p, m))
}

/// `JS[P, Q] = S[(P + Q)/2] - S[P]/2 - S[Q]/2`.
pub fn jensen_shannon_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::InvalidInput(format!(
            "distributions have different lengths ({} and {})",
            p.len(),
            q.len()
        )));
    }
    Ok(js_of(&validated(p)?, &validated(q)?))
}

/// `Q_0`, the reciprocal of the largest possible `JS[P, P_e]` over `M` states
/// (reached when `P` is a delta):
/// `Q_0 = -2 / [((M+1)/M)·ln(M+1) - 2·ln(2M) + ln M]`.
pub fn disequilibrium_normalizer(m: usize) -> Result<f64> {
    let m = check_alphabet(m)? as f64;
    Ok(-2.0 / ((m + 1.0) / m * (m + 1.0).ln() - 2.0 * (2.0 * m).ln() + m.ln()))
}

/// `Q_J[P, P_e] = Q_0 · JS[P, P_e]`, in `[0, 1]`.
pub fn disequilibrium(p: &[f64]) -> Result<f64> {
    let p = validated(p)?;
    check_alphabet(p.len())?;
    Ok(disequilibrium_of(&p))
}

/// `C_JS = Q_J[P, P_e] · H[P]`.
pub fn statistical_complexity(p: &[f64]) -> Result<f64> {
    Quantifiers::from_probabilities(p).map(|q| q.complexity)
}

/// Euclidean distance from `(H, C)` to `(1, 0)`.
pub fn inefficiency(entropy: f64, complexity: f64) -> f64 {
    ((entropy - 1.0).powi(2) + complexity.powi(2)).sqrt()
}

fn check_alphabet(m: usize) -> Result<usize> {
    if m < 2 {
        Err(Error::InvalidAlphabet(m))
    } else {
        Ok(m)
    }
}

fn validated(p: &[f64]) -> Result<Vec<f64>> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution(
            "empty probability vector".into(),
        ));
    }
    if let Some(i) = p.iter().position(|&x| !(x.is_finite() && x >= 0.0)) {
        return Err(Error::InvalidDistribution(format!(
            "entry {i} is {} (must be finite and nonnegative)",
            p[i]
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "probabilities sum to {total}"
        )));
    }
    Ok(p.iter().map(|&x| x / total).collect())
}

fn entropy_of(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

fn normalized(p: &[f64], m: usize) -> f64 {
    (entropy_of(p) / (m as f64).ln()).clamp(0.0, 1.0)
}

fn js_of(p: &[f64], q: &[f64]) -> f64 {
    let mid: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
    (entropy_of(&mid) - 0.5 * entropy_of(p) - 0.5 * entropy_of(q)).max(0.0)
}

fn disequilibrium_of(p: &[f64]) -> f64 {
    let m = p.len();
    let uniform = vec![1.0 / m as f64; m];
    let q0 = disequilibrium_normalizer(m).expect("alphabet checked by caller");
    (q0 * js_of(p, &uniform)).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn uniform(m: usize) -> Vec<f64> {
        vec![1.0 / m as f64; m]
    }

    fn delta(m: usize, k: usize) -> Vec<f64> {
        let mut p = vec![0.0; m];
        p[k] = 1.0;
        p
    }

    /// Independent evaluation in an arbitrary log base.
    fn naive_entropy(p: &[f64], log: fn(f64) -> f64) -> f64 {
        let mut s = 0.0;
        for &x in p {
            if x != 0.0 {
                s -= x * log(x);
            }
        }
        s
    }

    fn naive_complexity(p: &[f64], log: fn(f64) -> f64) -> (f64, f64) {
        let m = p.len();
        let pe = uniform(m);
        let h = naive_entropy(p, log) / log(m as f64);
        let js = |a: &[f64], b: &[f64]| {
            let mid: Vec<f64> = a.iter().zip(b).map(|(x, y)| (x + y) / 2.0).collect();
            naive_entropy(&mid, log) - naive_entropy(a, log) / 2.0 - naive_entropy(b, log) / 2.0
        };
        // normalizer by brute-force maximisation over deltas
        let js_max = (0..m).map(|k| js(&delta(m, k), &pe)).fold(0.0, f64::max);
        (h, js(p, &pe) / js_max * h)
    }

    #[test]
    fn entropy_extremes() {
        assert_relative_eq!(
            shannon_entropy(&uniform(24)).unwrap(),
            24f64.ln(),
            epsilon = 1e-12
        );
        assert_eq!(shannon_entropy(&delta(24, 3)).unwrap(), 0.0);
        let expected = -(0.75f64 * 0.75f64.ln()) - 0.25 * 0.25f64.ln();
        assert_relative_eq!(
            shannon_entropy(&[0.75, 0.25]).unwrap(),
            expected,
            epsilon = 1e-15
        );
    }

    #[test]
    fn normalized_entropy_cases() {
        for m in [2, 6, 24, 120] {
            assert_relative_eq!(
                normalized_entropy(&uniform(m)).unwrap(),
                1.0,
                epsilon = 1e-12
            );
            assert_eq!(normalized_entropy(&delta(m, 0)).unwrap(), 0.0);
        }
        assert_relative_eq!(
            normalized_entropy(&[0.5, 0.5, 0.0, 0.0]).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert!(matches!(
            normalized_entropy(&[1.0]),
            Err(Error::InvalidAlphabet(1))
        ));
    }

    #[test]
    fn invalid_distributions() {
        assert!(matches!(
            shannon_entropy(&[0.5, 0.6]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            shannon_entropy(&[1.5, -0.5]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            shannon_entropy(&[]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(shannon_entropy(&[f64::NAN, 1.0]).is_err());
        // within tolerance: accepted and re-normalized
        assert!(shannon_entropy(&[0.5, 0.5 + 1e-10]).is_ok());
        assert!(matches!(
            jensen_shannon_divergence(&[1.0], &[0.5, 0.5]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn js_cases() {
        let p = [0.1, 0.2, 0.3, 0.4];
        assert_eq!(jensen_shannon_divergence(&p, &p).unwrap(), 0.0);
        assert_relative_eq!(
            jensen_shannon_divergence(&[1.0, 0.0], &[0.0, 1.0]).unwrap(),
            2f64.ln(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn normalizer_matches_brute_force() {
        for m in [2, 6, 24, 120] {
            let pe = uniform(m);
            let js_max = (0..m)
                .map(|k| jensen_shannon_divergence(&delta(m, k), &pe).unwrap())
                .fold(f64::NEG_INFINITY, f64::max);
            let q0 = disequilibrium_normalizer(m).unwrap();
            assert!((q0 * js_max - 1.0).abs() < 1e-10, "M={m}");
            assert_relative_eq!(disequilibrium(&delta(m, 0)).unwrap(), 1.0, epsilon = 1e-12);
        }
        assert!(disequilibrium_normalizer(1).is_err());
    }

    #[test]
    fn complexity_vanishes_at_extremes() {
        for m in [6, 24] {
            assert!(statistical_complexity(&uniform(m)).unwrap().abs() < 1e-15);
            assert_eq!(statistical_complexity(&delta(m, m - 1)).unwrap(), 0.0);
        }
    }

    #[test]
    fn complexity_against_two_step_oracle() {
        let p = [0.6, 0.2, 0.1, 0.1];
        let (h, c) = naive_complexity(&p, f64::ln);
        let q = Quantifiers::from_probabilities(&p).unwrap();
        assert!((q.entropy - h).abs() < 1e-12);
        assert!((q.complexity - c).abs() < 1e-12);
        assert!(q.complexity > 0.0);
    }

    #[test]
    fn nontrivial_for_interior_distributions() {
        for m in [6, 24] {
            let mut p = vec![0.5 / (m - 1) as f64; m];
            p[0] = 0.5;
            assert!(statistical_complexity(&p).unwrap() > 0.05, "M={m}");
        }
    }

    #[test]
    fn inefficiency_cases() {
        assert_eq!(inefficiency(1.0, 0.0), 0.0);
        assert_eq!(inefficiency(0.0, 0.0), 1.0);
        assert!((inefficiency(0.8, 0.2) - 0.08f64.sqrt()).abs() < 1e-12);
        assert!((inefficiency(0.8, 0.2) - 0.282843).abs() < 1e-6);
    }

    fn distribution(m: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1.0], m).prop_filter_map(
            "all zero",
            |w| {
                let t: f64 = w.iter().sum();
                (t > 0.0).then(|| w.iter().map(|x| x / t).collect())
            },
        )
    }

    proptest! {
        #[test]
        fn quantifiers_stay_in_range(p in prop_oneof![distribution(6), distribution(24)]) {
            let q = Quantifiers::from_probabilities(&p).unwrap();
            prop_assert!((0.0..=1.0).contains(&q.entropy));
            prop_assert!((0.0..=1.0).contains(&disequilibrium(&p).unwrap()));
            prop_assert!(q.complexity >= 0.0);
            let d = ((q.entropy - 1.0).powi(2) + q.complexity.powi(2)).sqrt();
            prop_assert!((q.inefficiency - d).abs() < 1e-12);
        }

        #[test]
        fn base_invariance(p in distribution(24)) {
            let (h_e, c_e) = naive_complexity(&p, f64::ln);
            let (h_2, c_2) = naive_complexity(&p, f64::log2);
            prop_assert!((h_e - h_2).abs() < 1e-12);
            prop_assert!((c_e - c_2).abs() < 1e-12);
            let q = Quantifiers::from_probabilities(&p).unwrap();
            prop_assert!((q.complexity - c_2).abs() < 1e-12);
        }

        #[test]
        fn js_symmetric_and_nonnegative(p in distribution(6), q in distribution(6)) {
            let a = jensen_shannon_divergence(&p, &q).unwrap();
            let b = jensen_shannon_divergence(&q, &p).unwrap();
            prop_assert!(a >= 0.0);
            prop_assert!((a - b).abs() < 1e-14);
        }
    }
}
