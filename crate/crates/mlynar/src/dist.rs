//! The Mlynar distribution with parameter n: the law of the gain G_n of the
//! generalized stopping-time dice game on a fair n-faced die.
//!
//! The game draws X_1, X_2, ... uniformly on {1, ..., n} and stops at the
//! first k with X_k <= k; the gain is the stopping index. The pmf is
//! p(1) = 1/n and p(k) = p(k-1) * k * (1/(k-1) - 1/n) for 2 <= k <= n,
//! or in closed form p(k) = k (n-1)! / (n^k (n-k)!). All large-n evaluation
//! runs over products of the ratios (n-i)/n, which stay in [0, 1]; nothing
//! here forms a factorial, so every routine is stable up to n = 10^15.

use crate::error::{Error, Result};
use crate::kernels;

/// Largest supported face count (the validated floating-point range).
pub const MAX_FACE_COUNT: u64 = 1_000_000_000_000_000;

/// Largest n for which a full (epsilon = 0) pmf table may be materialized.
pub const FULL_TABLE_LIMIT: u64 = 10_000_000;

/// Relative threshold at which a survival term no longer moves the mean sum.
pub const MEAN_TRUNCATION_EPS: f64 = 1e-18;

/// A probability kept in both linear and log space. The log form stays
/// meaningful deep in the tail where the linear value underflows to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probability {
    value: f64,
    log_value: f64,
}

impl Probability {
    pub const ZERO: Probability = Probability {
        value: 0.0,
        log_value: f64::NEG_INFINITY,
    };
    pub const ONE: Probability = Probability {
        value: 1.0,
        log_value: 0.0,
    };

    pub fn from_value(value: f64) -> Probability {
        debug_assert!((0.0..=1.0).contains(&value));
        Probability {
            value,
            log_value: value.ln(),
        }
    }

    pub fn from_log(log_value: f64) -> Probability {
        debug_assert!(log_value <= 1e-9);
        Probability {
            value: log_value.exp(),
            log_value,
        }
    }

    /// The probability in [0, 1]; zero when the log form underflows f64.
    pub fn value(&self) -> f64 {
        self.value
    }

    /// Natural log of the probability.
    pub fn ln(&self) -> f64 {
        self.log_value
    }
}

impl std::fmt::Display for Probability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Materialized pmf with its truncation metadata.
///
/// `probs[k-1]` holds p(k) for k = 1..=truncation_k. When truncated, `tail`
/// is the exact remaining mass P(G > truncation_k) from the survival
/// recursion; the iteration stops at the first k whose successor term falls
/// below epsilon relative to the accumulated mass, so the tail is bounded by
/// roughly epsilon * n / k rather than epsilon itself.
#[derive(Debug, Clone)]
pub struct PmfTable {
    pub n: u64,
    pub probs: Vec<f64>,
    pub truncation_k: u64,
    pub truncated: bool,
    pub tail: f64,
}

/// Streaming pmf evaluation: yields (k, p(k)) in ascending k under the same
/// truncation rule as [`PmfTable`], without materializing the table.
pub struct PmfIter {
    n: u64,
    nf: f64,
    epsilon: f64,
    surv: f64, // P(G >= k)
    acc: f64,
    k: u64,
    done: bool,
}

impl PmfIter {
    /// Exact remaining mass P(G > k) after the last yielded entry; zero once
    /// the full support has been emitted.
    pub fn tail(&self) -> f64 {
        self.surv
    }
}

impl Iterator for PmfIter {
    type Item = (u64, f64);

    fn next(&mut self) -> Option<(u64, f64)> {
        if self.done {
            return None;
        }
        let k = self.k;
        let p = self.surv * k as f64 / self.nf;
        self.acc += p;
        if k == self.n {
            self.surv = 0.0;
            self.done = true;
        } else {
            let next_surv = self.surv * ((self.n - k) as f64 / self.nf);
            let next_p = next_surv * (k + 1) as f64 / self.nf;
            self.surv = next_surv;
            self.k += 1;
            if self.epsilon > 0.0 && next_p < self.epsilon * self.acc {
                self.done = true;
            }
        }
        Some((k, p))
    }
}

/// Mode set of the pmf. Two adjacent modes occur exactly when n = (m-1) m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modes {
    Single(u64),
    Pair(u64, u64),
}

impl Modes {
    pub fn is_bimodal(&self) -> bool {
        matches!(self, Modes::Pair(_, _))
    }

    pub fn values(&self) -> Vec<u64> {
        match *self {
            Modes::Single(m) => vec![m],
            Modes::Pair(a, b) => vec![a, b],
        }
    }
}

/// Result of a truncated mean evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEval {
    pub value: f64,
    /// Index of the last survival term included in the sum.
    pub terms: u64,
    pub truncated: bool,
}

/// The Mlynar distribution with face count n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mlynar {
    n: u64,
}

impl Mlynar {
    /// Face counts outside 1..=10^15 are rejected.
    pub fn new(n: u64) -> Result<Mlynar> {
        if n == 0 || n > MAX_FACE_COUNT {
            return Err(Error::InvalidFaceCount { n });
        }
        Ok(Mlynar { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub(crate) fn nf(&self) -> f64 {
        self.n as f64
    }

    /// Streaming recursive pmf. `epsilon = 0` demands the full table and is
    /// allowed only for n <= 10^7; positive epsilon stops at the first k
    /// whose next term drops below epsilon times the accumulated mass.
    pub fn pmf_iter(&self, epsilon: f64) -> Result<PmfIter> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidEpsilon { epsilon });
        }
        if epsilon == 0.0 && self.n > FULL_TABLE_LIMIT {
            return Err(Error::FullTableTooLarge {
                n: self.n,
                limit: FULL_TABLE_LIMIT,
            });
        }
        Ok(PmfIter {
            n: self.n,
            nf: self.nf(),
            epsilon,
            surv: 1.0,
            acc: 0.0,
            k: 1,
            done: false,
        })
    }

    /// Materialized recursive pmf table under the rule of [`Self::pmf_iter`].
    pub fn pmf_table(&self, epsilon: f64) -> Result<PmfTable> {
        let mut iter = self.pmf_iter(epsilon)?;
        let mut probs = Vec::new();
        let mut last_k = 0;
        for (k, p) in iter.by_ref() {
            probs.push(p);
            last_k = k;
        }
        let tail = iter.tail();
        Ok(PmfTable {
            n: self.n,
            probs,
            truncation_k: last_k,
            truncated: last_k < self.n,
            tail,
        })
    }

    /// Closed-form pmf entry p(k) = k (n-1)! / (n^k (n-k)!), evaluated in log
    /// space as ln k - ln n + sum of ln(1 - i/n), i = 1..k-1. Cost is O(k).
    pub fn pmf(&self, k: u64) -> Result<Probability> {
        if k < 1 || k > self.n {
            return Err(Error::OutOfSupport { k, n: self.n });
        }
        let log_p = (k as f64).ln() - self.nf().ln() + kernels::log_ratio_sum(self.n, k - 1);
        Ok(Probability::from_log(log_p))
    }

    /// Cumulative distribution function P(G_n <= x), a right-continuous step
    /// function equal to 1 - (n-1)! / (n^chi (n-1-chi)!) with chi = floor(x).
    pub fn cdf(&self, x: f64) -> Probability {
        if x < 1.0 {
            return Probability::ZERO;
        }
        if x >= self.nf() {
            return Probability::ONE;
        }
        let chi = x.floor() as u64; // 1 <= chi <= n-1 here
        // Once the survival log passes -52 the cdf rounds to exactly 1.
        let cutoff = (104.0 * self.nf()).sqrt().ceil() as u64 + 8;
        let m = chi.min(cutoff);
        let log_surv = kernels::log_ratio_sum(self.n, m);
        let value = -log_surv.exp_m1();
        Probability {
            value,
            log_value: value.ln(),
        }
    }

    /// Survival sum P(G_n >= k) = (n-1)! / (n^(k-1) (n-k)!), the probability
    /// the game is still running at throw k. Cost is O(k).
    pub fn survival(&self, k: u64) -> Result<Probability> {
        if k < 1 || k > self.n {
            return Err(Error::OutOfSupport { k, n: self.n });
        }
        Ok(Probability::from_log(kernels::log_ratio_sum(self.n, k - 1)))
    }

    /// Mode set: the largest k with k(k-1) <= n, detected in integer
    /// arithmetic; when n = (m-1) m exactly, both m-1 and m are modes.
    pub fn modes(&self) -> Modes {
        let mut m = (0.5 + (0.25 + self.nf()).sqrt()).floor() as u64;
        // repair any floating-point slip in the candidate
        while m.saturating_mul(m - 1) > self.n {
            m -= 1;
        }
        while (m + 1) * m <= self.n {
            m += 1;
        }
        if self.n >= 2 && m * (m - 1) == self.n {
            Modes::Pair(m - 1, m)
        } else {
            Modes::Single(m)
        }
    }

    /// Expected gain g(n), accumulated over the telescoping survival sums
    /// P(G >= k) and truncated once a term stops affecting the total.
    /// Analytically g(n) = e^n n^(-n) Gamma(n+1, n) - 1.
    pub fn mean(&self) -> f64 {
        kernels::mean_sum(self.n, MEAN_TRUNCATION_EPS).0
    }

    /// Mean evaluation with an explicit relative truncation threshold,
    /// reporting the number of survival terms used. `epsilon = 0` demands the
    /// full sum and is allowed only for n <= 10^7.
    pub fn mean_eval(&self, epsilon: f64) -> Result<MeanEval> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidEpsilon { epsilon });
        }
        if epsilon == 0.0 && self.n > FULL_TABLE_LIMIT {
            return Err(Error::FullTableTooLarge {
                n: self.n,
                limit: FULL_TABLE_LIMIT,
            });
        }
        let (value, terms) = kernels::mean_sum(self.n, epsilon);
        Ok(MeanEval {
            value,
            terms,
            truncated: terms < self.n,
        })
    }

    /// Variance of the gain: 2n - g(n) - g(n)^2.
    pub fn variance(&self) -> f64 {
        let g = self.mean();
        2.0 * self.nf() - g - g * g
    }

    pub(crate) fn variance_from_mean(&self, g: f64) -> f64 {
        2.0 * self.nf() - g - g * g
    }
}
