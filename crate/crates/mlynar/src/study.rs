//! Empirical studies: the gap Delta(n) = sqrt(pi/2) - h(n) and its power-law
//! fit over decade grids, the Kolmogorov distance curve, and the brute-force
//! enumeration oracle that every analytic pmf is checked against.

use num::{BigInt, BigRational};

use crate::asymptotics::{kolmogorov_distance, scaled_mean_limit, DistanceReport};
use crate::dist::Mlynar;
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Exponent cap for [`delta_curve`]: n = 10^15 is the validated range.
pub const DELTA_MAX_EXPONENT: u32 = 15;

/// Exponent cap for [`distance_curve`]: the sup walk visits ~8.6 sqrt(n)
/// jump points per grid entry.
pub const DISTANCE_MAX_EXPONENT: u32 = 8;

/// Largest face count the enumeration oracle accepts (8^7 ~ 2 * 10^6 paths).
pub const MAX_ENUMERATION_FACES: u64 = 8;

/// Decade grid: evaluation points n = 10^e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    exponents: Vec<u32>,
}

impl GridSpec {
    /// Exponents must be nonempty and strictly increasing.
    pub fn new(exponents: Vec<u32>) -> Result<GridSpec> {
        if exponents.is_empty() {
            return Err(Error::InvalidGrid {
                reason: "empty exponent list",
            });
        }
        if exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid {
                reason: "exponents must be strictly increasing",
            });
        }
        Ok(GridSpec { exponents })
    }

    /// Inclusive decade range lo..=hi.
    pub fn decades(lo: u32, hi: u32) -> Result<GridSpec> {
        if lo > hi {
            return Err(Error::InvalidGrid {
                reason: "range lower bound exceeds upper bound",
            });
        }
        GridSpec::new((lo..=hi).collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn max_exponent(&self) -> u32 {
        *self.exponents.last().unwrap()
    }

    fn check_cap(&self, max: u32) -> Result<()> {
        let exponent = self.max_exponent();
        if exponent > max {
            return Err(Error::ExponentTooLarge { exponent, max });
        }
        Ok(())
    }

    fn face_counts(&self) -> Vec<u64> {
        self.exponents.iter().map(|&e| 10u64.pow(e)).collect()
    }
}

fn map_grid<T, F>(ns: Vec<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        // grid points are independent; results come back in grid order
        ns.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ns.into_iter().map(f).collect()
    }
}

/// The gap Delta(n) = sqrt(pi/2) - h(n) on a decade grid.
pub fn delta_curve(grid: &GridSpec) -> Result<Vec<(u64, f64)>> {
    grid.check_cap(DELTA_MAX_EXPONENT)?;
    Ok(map_grid(grid.face_counts(), |n| {
        let dist = Mlynar::new(n).expect("grid face counts are within range");
        let h = dist.mean() / (n as f64).sqrt();
        (n, scaled_mean_limit() - h)
    }))
}

/// Kolmogorov distance d(n) on a decade grid.
pub fn distance_curve(grid: &GridSpec) -> Result<Vec<DistanceReport>> {
    grid.check_cap(DISTANCE_MAX_EXPONENT)?;
    Ok(map_grid(grid.face_counts(), |n| {
        kolmogorov_distance(&Mlynar::new(n).expect("grid face counts are within range"))
    }))
}

/// Ordinary least-squares fit of log10 Delta = alpha + beta log10 n,
/// with standard errors from the residual variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub alpha: f64,
    pub beta: f64,
    pub alpha_se: f64,
    pub beta_se: f64,
    /// c = 10^alpha in the ansatz Delta(n) = c n^beta.
    pub c: f64,
    /// Standard error of c by the delta method: c ln(10) alpha_se.
    pub c_se: f64,
    pub n_points: usize,
    pub dof: usize,
    /// True when dof = 0 (two points): the line is exact and the standard
    /// errors are reported as zero.
    pub degenerate_dof: bool,
}

/// Unweighted OLS of log10 Delta on log10 n.
pub fn fit_power_law(points: &[(u64, f64)]) -> Result<FitResult> {
    let n_points = points.len();
    if n_points < 2 {
        return Err(Error::TooFewPoints { got: n_points });
    }
    for &(n, delta) in points {
        if !delta.is_finite() || delta <= 0.0 {
            return Err(Error::NonpositiveDelta { n });
        }
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).log10()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, d)| d.log10()).collect();
    let m = n_points as f64;
    let x_bar = xs.iter().sum::<f64>() / m;
    let y_bar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_bar) * (x - x_bar)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - x_bar) * (y - y_bar))
        .sum();
    let beta = sxy / sxx;
    let alpha = y_bar - beta * x_bar;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - alpha - beta * x;
            e * e
        })
        .sum();
    let dof = n_points - 2;
    let degenerate_dof = dof == 0;
    let sigma2 = if degenerate_dof { 0.0 } else { ssr / dof as f64 };
    let beta_se = (sigma2 / sxx).sqrt();
    let alpha_se = (sigma2 * (1.0 / m + x_bar * x_bar / sxx)).sqrt();
    let c = 10f64.powf(alpha);
    Ok(FitResult {
        alpha,
        beta,
        alpha_se,
        beta_se,
        c,
        c_se: c * std::f64::consts::LN_10 * alpha_se,
        n_points,
        dof,
        degenerate_dof,
    })
}

fn tally_paths(n: u64, lo: u64, hi: u64) -> Vec<u64> {
    let mut counts = vec![0u64; n as usize + 1];
    for idx in lo..hi {
        let mut rest = idx;
        let mut gain = n;
        for k in 1..n {
            let digit = rest % n + 1;
            rest /= n;
            if digit <= k {
                gain = k;
                break;
            }
        }
        counts[gain as usize] += 1;
    }
    counts
}

/// Brute-force pmf oracle: enumerates all n^(n-1) equally likely throw
/// sequences of length n-1, applies the game rule to each, and returns the
/// exact per-gain path fractions. Must agree entry for entry with
/// [`crate::exact::pmf`].
pub fn brute_force_pmf(n: u64) -> Result<Vec<BigRational>> {
    if n == 0 {
        return Err(Error::InvalidFaceCount { n });
    }
    if n > MAX_ENUMERATION_FACES {
        return Err(Error::TooLargeForEnumeration {
            n,
            limit: MAX_ENUMERATION_FACES,
        });
    }
    let total = n.pow(n as u32 - 1);
    let counts = count_paths(n, total);
    debug_assert_eq!(counts.iter().sum::<u64>(), total);
    Ok(counts
        .iter()
        .skip(1)
        .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(total)))
        .collect())
}

fn count_paths(n: u64, total: u64) -> Vec<u64> {
    #[cfg(feature = "parallel")]
    {
        const PATH_CHUNK: u64 = 1 << 16;
        if total > 2 * PATH_CHUNK {
            let chunks = total.div_ceil(PATH_CHUNK);
            return (0..chunks)
                .into_par_iter()
                .map(|i| {
                    let lo = i * PATH_CHUNK;
                    let hi = (lo + PATH_CHUNK).min(total);
                    tally_paths(n, lo, hi)
                })
                .reduce(
                    || vec![0u64; n as usize + 1],
                    |mut a, b| {
                        for (x, y) in a.iter_mut().zip(b) {
                            *x += y;
                        }
                        a
                    },
                );
        }
    }
    tally_paths(n, 0, total)
}
