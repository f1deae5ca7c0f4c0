//! Game simulation and random variate generation.
//!
//! Two sampling routes are provided: playing the game rule directly and
//! inverting the cdf. Both are driven by an explicit deterministic generator
//! so every batch is reproducible from its seed alone, independent of the
//! number of worker threads.

use std::collections::BTreeMap;

use crate::dist::Mlynar;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic seed for sub-stream `stream` of a master seed: the
/// (stream + 1)-th output of the SplitMix64 sequence started at `master`.
/// Batch runners assign chunk i the seed `subseed(master, i)`, so results
/// are identical for any worker count.
pub fn subseed(master: u64, stream: u64) -> u64 {
    splitmix_mix(master.wrapping_add(GOLDEN_GAMMA.wrapping_mul(stream.wrapping_add(1))))
}

/// Source of uniform randomness for the samplers. The provided methods
/// derive unbiased integer draws by masked rejection and unit-interval
/// doubles from the top 53 bits.
pub trait RandomSource {
    fn next_u64(&mut self) -> u64;

    /// Uniform draw from {1, ..., n} by rejection from the next power of
    /// two, avoiding modulo bias.
    fn roll(&mut self, n: u64) -> u64 {
        debug_assert!(n >= 1);
        if n == 1 {
            return 1;
        }
        let mask = u64::MAX >> (n - 1).leading_zeros();
        loop {
            let r = self.next_u64() & mask;
            if r < n {
                return r + 1;
            }
        }
    }

    /// Uniform double in [0, 1).
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// xoshiro256++ generator seeded through SplitMix64. Not cryptographic;
/// statistically adequate for the Monte Carlo runs here and fully
/// reproducible from the 64-bit seed.
#[derive(Debug, Clone)]
pub struct GameRng {
    s: [u64; 4],
}

impl GameRng {
    pub fn seed_from_u64(seed: u64) -> GameRng {
        let mut state = seed;
        let mut s = [0u64; 4];
        for word in &mut s {
            state = state.wrapping_add(GOLDEN_GAMMA);
            *word = splitmix_mix(state);
        }
        if s == [0, 0, 0, 0] {
            s[0] = GOLDEN_GAMMA;
        }
        GameRng { s }
    }
}

impl RandomSource for GameRng {
    fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[0]
            .wrapping_add(s[3])
            .rotate_left(23)
            .wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }
}

/// One play of the game: the throw sequence, the stopping time and the gain.
///
/// When the game runs through all of the first n-1 throws the gain n is
/// forced and no n-th throw is drawn, so `throws` then has length n-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTrace {
    pub n: u64,
    pub throws: Vec<u64>,
    pub tau: u64,
    pub gain: u64,
}

/// Play one game: draw X_k uniform on {1..n} and stop at the first X_k <= k.
pub fn play_game<R: RandomSource>(dist: &Mlynar, rng: &mut R) -> GameTrace {
    let n = dist.n();
    let mut throws = Vec::new();
    for k in 1..n {
        let x = rng.roll(n);
        throws.push(x);
        if x <= k {
            return GameTrace {
                n,
                throws,
                tau: k,
                gain: k,
            };
        }
    }
    GameTrace {
        n,
        throws,
        tau: n,
        gain: n,
    }
}

/// Gain of one game without materializing the trace.
fn play_gain<R: RandomSource>(n: u64, rng: &mut R) -> u64 {
    for k in 1..n {
        if rng.roll(n) <= k {
            return k;
        }
    }
    n
}

/// Inverse-transform draw: the smallest k with cdf(k) > u, found by walking
/// the survival recursion. Expected cost is O(E[G_n]) = O(sqrt(n)).
pub fn sample_inverse(dist: &Mlynar, u: f64) -> u64 {
    assert!((0.0..1.0).contains(&u), "u = {u} outside [0, 1)");
    let n = dist.n();
    let nf = dist.nf();
    let w = 1.0 - u;
    let mut surv = 1.0_f64;
    let mut k = 1_u64;
    loop {
        if k == n {
            return n;
        }
        surv *= (n - k) as f64 / nf;
        if surv < w {
            return k;
        }
        k += 1;
    }
}

/// Sampling route for [`run_batch`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Simulate the game rule throw by throw.
    Game,
    /// Invert the cdf on a unit uniform.
    Inverse,
}

/// Batch statistics: histogram of gains plus the usual sample moments.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats {
    pub count: u64,
    pub mean: f64,
    /// Unbiased sample variance; zero for a single draw.
    pub variance: f64,
    pub histogram: BTreeMap<u64, u64>,
}

/// Plays per deterministic sub-stream chunk.
const SUB_BATCH: u64 = 1 << 16;

fn tally_chunk(dist: &Mlynar, seed: u64, chunk: u64, len: u64, method: Method) -> BTreeMap<u64, u64> {
    let mut rng = GameRng::seed_from_u64(subseed(seed, chunk));
    let mut hist = BTreeMap::new();
    for _ in 0..len {
        let gain = match method {
            Method::Game => play_gain(dist.n(), &mut rng),
            Method::Inverse => sample_inverse(dist, rng.next_f64()),
        };
        *hist.entry(gain).or_insert(0u64) += 1;
    }
    hist
}

fn merge(mut into: BTreeMap<u64, u64>, other: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (gain, count) in other {
        *into.entry(gain).or_insert(0) += count;
    }
    into
}

fn stats_from_histogram(count: u64, histogram: BTreeMap<u64, u64>) -> SampleStats {
    let total: u128 = histogram.iter().map(|(&g, &c)| g as u128 * c as u128).sum();
    let mean = total as f64 / count as f64;
    let variance = if count > 1 {
        let ss: f64 = histogram
            .iter()
            .map(|(&g, &c)| {
                let d = g as f64 - mean;
                c as f64 * d * d
            })
            .sum();
        ss / (count - 1) as f64
    } else {
        0.0
    };
    SampleStats {
        count,
        mean,
        variance,
        histogram,
    }
}

fn chunk_lengths(count: u64) -> impl Iterator<Item = (u64, u64)> {
    let chunks = count.div_ceil(SUB_BATCH);
    (0..chunks).map(move |i| {
        let len = SUB_BATCH.min(count - i * SUB_BATCH);
        (i, len)
    })
}

/// Sequential batch runner; the reference for the parallel path.
pub fn run_batch_seq(dist: &Mlynar, count: u64, seed: u64, method: Method) -> SampleStats {
    assert!(count >= 1);
    let mut hist = BTreeMap::new();
    for (i, len) in chunk_lengths(count) {
        hist = merge(hist, tally_chunk(dist, seed, i, len, method));
    }
    stats_from_histogram(count, hist)
}

#[cfg(feature = "parallel")]
pub fn run_batch_par(dist: &Mlynar, count: u64, seed: u64, method: Method) -> SampleStats {
    assert!(count >= 1);
    let chunks: Vec<(u64, u64)> = chunk_lengths(count).collect();
    let hist = chunks
        .into_par_iter()
        .map(|(i, len)| tally_chunk(dist, seed, i, len, method))
        .reduce(BTreeMap::new, merge);
    stats_from_histogram(count, hist)
}

/// Draw `count` gains and summarize them. Deterministic in (n, count, seed,
/// method): work is split into fixed chunks of 2^16 plays, chunk i seeded by
/// [`subseed`]`(seed, i)`, so any execution order reproduces the same
/// histogram bit for bit.
pub fn run_batch(dist: &Mlynar, count: u64, seed: u64, method: Method) -> SampleStats {
    #[cfg(feature = "parallel")]
    {
        if count > 2 * SUB_BATCH {
            return run_batch_par(dist, count, seed, method);
        }
    }
    run_batch_seq(dist, count, seed, method)
}
