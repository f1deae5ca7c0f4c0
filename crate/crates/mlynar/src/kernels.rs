//! Sequential and data-parallel evaluation loops behind the public API.
//!
//! Every kernel exists in a `_seq` variant, always compiled, and a `_par`
//! variant behind the `parallel` feature. The parallel variants use a fixed
//! chunk layout and combine chunk results in index order, so their output
//! does not depend on the number of worker threads. Benchmarks compare the
//! two variants directly; the public API dispatches on workload size.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Workloads below this many terms always run sequentially.
pub const PAR_THRESHOLD: u64 = 1 << 20;

/// Fixed chunk length for the parallel kernels.
#[cfg(feature = "parallel")]
const CHUNK: u64 = 1 << 16;

/// Survival-sum accumulation for the expected gain:
/// g = sum of P_k over k = 1..=n with P_1 = 1 and P_(k+1) = P_k (n-k)/n,
/// truncated at the first k whose successor satisfies P_(k+1) < eps * g.
///
/// Returns the partial sum and the index of the last term included.
pub fn mean_sum_seq(n: u64, eps: f64) -> (f64, u64) {
    let nf = n as f64;
    let mut p = 1.0_f64;
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut k = 1_u64;
    loop {
        // compensated add of p
        let y = p - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if k == n {
            return (sum, k);
        }
        let next = p * ((n - k) as f64 / nf);
        if next < eps * sum {
            return (sum, k);
        }
        p = next;
        k += 1;
    }
}

/// Number of survival factors that certainly reach below `eps`, used to size
/// the parallel chunk range. P_(k+1) <= exp(-k^2 / 2n), so solving for the
/// crossing and padding generously never cuts the sum short.
#[cfg(feature = "parallel")]
fn survival_term_cap(n: u64, eps: f64) -> u64 {
    if eps <= 0.0 {
        return n;
    }
    let bound = (2.0 * n as f64 * (1.0 / eps).ln()).sqrt().ceil() as u64 + 1024;
    bound.min(n)
}

#[cfg(feature = "parallel")]
pub fn mean_sum_par(n: u64, eps: f64) -> (f64, u64) {
    let nf = n as f64;
    let cap = survival_term_cap(n, eps);
    // factor index i runs 1..=cap-1; chunk j covers [starts[j], ends[j])
    let n_chunks = (cap - 1).div_ceil(CHUNK);
    // (product of factors, sum of in-chunk prefix products)
    let summaries: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|j| {
            let lo = 1 + j * CHUNK;
            let hi = (lo + CHUNK).min(cap);
            let mut prod = 1.0_f64;
            let mut acc = 0.0_f64;
            for i in lo..hi {
                prod *= (n - i) as f64 / nf;
                acc += prod;
            }
            (prod, acc)
        })
        .collect();

    // Combine in chunk order; entry is P at the chunk's first term.
    let mut sum = 1.0_f64; // P_1
    let mut comp = 0.0_f64;
    let mut entry = 1.0_f64;
    for (j, &(prod, acc)) in summaries.iter().enumerate() {
        let lo = 1 + j as u64 * CHUNK;
        let hi = (lo + CHUNK).min(cap);
        let chunk_sum = entry * acc;
        let exit = entry * prod; // P at index hi
        // If the truncation rule cannot fire inside this chunk, take it whole.
        if exit >= eps * (sum + chunk_sum) {
            let y = chunk_sum - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            entry = exit;
            if hi > n - 1 {
                return (sum, n);
            }
            continue;
        }
        // Walk the final chunk with the exact sequential rule.
        let mut p = entry;
        for i in lo..hi {
            p *= (n - i) as f64 / nf;
            if p < eps * sum {
                return (sum, i);
            }
            let y = p - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return (sum, hi);
    }
    (sum, cap)
}

/// Expected-gain accumulation, dispatching on workload size.
pub(crate) fn mean_sum(n: u64, eps: f64) -> (f64, u64) {
    #[cfg(feature = "parallel")]
    {
        if survival_term_cap(n, eps) > PAR_THRESHOLD {
            return mean_sum_par(n, eps);
        }
    }
    mean_sum_seq(n, eps)
}

/// log of the survival factor product: sum of ln(1 - i/n) for i = 1..=m.
///
/// Evaluated with `ln_1p` so small ratios do not cancel; cost is O(m).
pub fn log_ratio_sum_seq(n: u64, m: u64) -> f64 {
    let nf = n as f64;
    let mut acc = 0.0_f64;
    for i in 1..=m {
        acc += (-(i as f64) / nf).ln_1p();
    }
    acc
}

#[cfg(feature = "parallel")]
pub fn log_ratio_sum_par(n: u64, m: u64) -> f64 {
    let nf = n as f64;
    let n_chunks = m.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..n_chunks)
        .into_par_iter()
        .map(|j| {
            let lo = 1 + j * CHUNK;
            let hi = (lo + CHUNK - 1).min(m);
            let mut acc = 0.0_f64;
            for i in lo..=hi {
                acc += (-(i as f64) / nf).ln_1p();
            }
            acc
        })
        .collect();
    partials.iter().sum()
}

pub(crate) fn log_ratio_sum(n: u64, m: u64) -> f64 {
    #[cfg(feature = "parallel")]
    {
        if m > PAR_THRESHOLD {
            return log_ratio_sum_par(n, m);
        }
    }
    log_ratio_sum_seq(n, m)
}

/// Sup distance between the scaled-gain step cdf and the Rayleigh(1) cdf,
/// evaluated on both sides of every jump x_k = k/sqrt(n).
///
/// Returns (sup, location). The walk stops once both the step tail and the
/// Rayleigh tail are below 1e-16, so the neglected region contributes less
/// than 1e-15 to the sup.
pub fn rayleigh_sup_seq(n: u64) -> (f64, f64) {
    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let mut surv = 1.0_f64; // P(G >= k) at current k
    let mut best = 0.0_f64;
    let mut best_x = 0.0_f64;
    let mut k = 1_u64;
    loop {
        let kf = k as f64;
        let ray_tail = (-kf * kf / (2.0 * nf)).exp();
        let next = if k < n { surv * ((n - k) as f64 / nf) } else { 0.0 };
        let left = (surv - ray_tail).abs();
        let right = (next - ray_tail).abs();
        let local = left.max(right);
        if local > best {
            best = local;
            best_x = kf / sqrt_n;
        }
        if (next < 1e-16 && ray_tail < 1e-16) || k == n {
            return (best, best_x);
        }
        surv = next;
        k += 1;
    }
}

/// Jump count needed by the sup walk: exp(-k^2/2n) < 1e-16 at k ~ 8.59 sqrt(n)
/// and the step tail decays at least as fast.
#[cfg(feature = "parallel")]
fn rayleigh_sup_cap(n: u64) -> u64 {
    let cap = (2.0 * n as f64 * 1e16_f64.ln()).sqrt().ceil() as u64 + 2;
    cap.min(n)
}

#[cfg(feature = "parallel")]
pub fn rayleigh_sup_par(n: u64) -> (f64, f64) {
    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let cap = rayleigh_sup_cap(n);
    let n_chunks = cap.div_ceil(CHUNK);

    // Pass 1: survival factor product of each chunk, then exclusive scan
    // for the survival value entering each chunk.
    let prods: Vec<f64> = (0..n_chunks)
        .into_par_iter()
        .map(|j| {
            let lo = 1 + j * CHUNK;
            let hi = (lo + CHUNK - 1).min(cap);
            let mut prod = 1.0_f64;
            for k in lo..=hi {
                if k < n {
                    prod *= (n - k) as f64 / nf;
                } else {
                    prod = 0.0;
                }
            }
            prod
        })
        .collect();
    let mut entries = Vec::with_capacity(n_chunks as usize);
    let mut entry = 1.0_f64;
    for &p in &prods {
        entries.push(entry);
        entry *= p;
    }

    // Pass 2: walk each chunk with its entry survival, tracking the local sup.
    let (best, best_x) = (0..n_chunks)
        .into_par_iter()
        .map(|j| {
            let lo = 1 + j * CHUNK;
            let hi = (lo + CHUNK - 1).min(cap);
            let mut surv = entries[j as usize];
            let mut best = 0.0_f64;
            let mut best_x = f64::INFINITY;
            for k in lo..=hi {
                let kf = k as f64;
                let ray_tail = (-kf * kf / (2.0 * nf)).exp();
                let next = if k < n { surv * ((n - k) as f64 / nf) } else { 0.0 };
                let local = (surv - ray_tail).abs().max((next - ray_tail).abs());
                if local > best {
                    best = local;
                    best_x = kf / sqrt_n;
                }
                surv = next;
            }
            (best, best_x)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0_f64, 0.0_f64), |(bd, bx), (d, x)| {
            // ties resolve to the smaller location, matching the sequential walk
            if d > bd {
                (d, x)
            } else {
                (bd, bx)
            }
        });
    (best, best_x)
}

pub(crate) fn rayleigh_sup(n: u64) -> (f64, f64) {
    #[cfg(feature = "parallel")]
    {
        if rayleigh_sup_cap(n) > PAR_THRESHOLD {
            return rayleigh_sup_par(n);
        }
    }
    rayleigh_sup_seq(n)
}
