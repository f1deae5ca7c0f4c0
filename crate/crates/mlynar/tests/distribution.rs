//! Cross-checks between the evaluation routes of the distribution: the
//! recursive table, the closed form, the exact rational oracle, and the
//! survival/cdf pair.

use mlynar::{exact, Mlynar};
use num::{BigInt, BigRational, ToPrimitive};

#[test]
fn floating_pmf_normalizes() {
    for n in [1_u64, 2, 6, 25, 1_000, 100_000, 10_000_000] {
        let dist = Mlynar::new(n).unwrap();
        let sum: f64 = dist.pmf_iter(0.0).unwrap().map(|(_, p)| p).sum();
        assert!((sum - 1.0).abs() < 1e-12, "n = {n}: sum = {sum}");
    }
}

#[test]
fn recursive_and_explicit_forms_agree() {
    for n in [1_u64, 2, 6, 25, 100, 1_000, 10_000] {
        let dist = Mlynar::new(n).unwrap();
        for (k, p) in dist.pmf_iter(0.0).unwrap() {
            let explicit = dist.pmf(k).unwrap().value();
            assert!(
                (p - explicit).abs() <= 1e-12 * explicit + 1e-300,
                "n = {n}, k = {k}: table {p} vs explicit {explicit}"
            );
        }
    }
}

#[test]
fn table_matches_exact_rationals() {
    for n in [1_u64, 2, 7, 30, 100, 500] {
        let dist = Mlynar::new(n).unwrap();
        let table = dist.pmf_table(0.0).unwrap();
        let oracle = exact::pmf(n).unwrap();
        for (k, (p, q)) in table.probs.iter().zip(&oracle).enumerate() {
            let qf = exact::to_f64(q);
            assert!(
                (p - qf).abs() <= 1e-13 * qf + 1e-300,
                "n = {n}, k = {}: {p} vs {qf}",
                k + 1
            );
        }
    }
}

#[test]
fn survival_and_cdf_are_complementary() {
    for n in [6_u64, 100, 10_000] {
        let dist = Mlynar::new(n).unwrap();
        let dense_cap = n.min(2_000);
        let checks = (1..=dense_cap).chain((dense_cap..=n).step_by(97));
        for k in checks {
            let s = dist.survival(k).unwrap().value();
            let c = dist.cdf(k as f64 - 1.0).value();
            assert!(
                (s + c - 1.0).abs() < 1e-12,
                "n = {n}, k = {k}: survival {s} + cdf {c}"
            );
        }
    }
}

#[test]
fn cdf_matches_exact_partial_sums() {
    for n in [2_u64, 6, 25, 200] {
        let dist = Mlynar::new(n).unwrap();
        let oracle = exact::pmf(n).unwrap();
        let mut acc = BigRational::from(BigInt::from(0));
        for (i, p) in oracle.iter().enumerate() {
            acc += p;
            let k = i as u64 + 1;
            let expect = exact::to_f64(&acc);
            let got = dist.cdf(k as f64).value();
            assert!(
                (got - expect).abs() < 1e-13,
                "n = {n}, k = {k}: {got} vs {expect}"
            );
        }
    }
}

#[test]
fn mean_routes_agree_exactly() {
    // the direct sum of k p(k) and the rearranged survival double sum are
    // the same rational number
    for n in [1_u64, 2, 3, 10, 50, 250, 500] {
        assert_eq!(
            exact::mean(n).unwrap(),
            exact::mean_via_survival(n).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn floating_mean_tracks_exact_oracle() {
    for n in (1..=60).chain([100, 250, 500]) {
        let dist = Mlynar::new(n).unwrap();
        let oracle = exact::to_f64(&exact::mean(n).unwrap());
        let got = dist.mean();
        assert!(
            (got - oracle).abs() <= 1e-12 * oracle,
            "n = {n}: {got} vs {oracle}"
        );
    }
}

#[test]
fn variance_identity_in_exact_arithmetic() {
    // 2n - g - g^2 against the direct second-moment variance
    for n in (1..=60).chain([100, 250, 500]) {
        let dist = Mlynar::new(n).unwrap();
        let oracle = exact::to_f64(&exact::variance(n).unwrap());
        let got = dist.variance();
        if oracle == 0.0 {
            assert_eq!(got, 0.0, "n = {n}");
        } else {
            assert!(
                (got - oracle).abs() <= 1e-10 * oracle,
                "n = {n}: {got} vs {oracle}"
            );
        }
    }
}

#[test]
fn modes_match_table_argmax() {
    let mut candidates: Vec<u64> = (1..=300).collect();
    // every bimodal case m(m-1) up to 10^4
    candidates.extend((2..=100).map(|m| m * (m - 1)));
    // deterministic spread of larger cases
    candidates.extend((1..=50).map(|i| 300 + i * 194));
    candidates.retain(|&n| n <= 10_000);
    candidates.sort_unstable();
    candidates.dedup();

    for n in candidates {
        let dist = Mlynar::new(n).unwrap();
        let table = dist.pmf_table(0.0).unwrap();
        let max = table.probs.iter().cloned().fold(f64::MIN, f64::max);
        let argmax: Vec<u64> = table
            .probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| (p - max).abs() <= 1e-14 * max)
            .map(|(i, _)| i as u64 + 1)
            .collect();
        assert_eq!(
            dist.modes().values(),
            argmax,
            "n = {n}: modes disagree with table argmax"
        );
    }
}

#[test]
fn pmf_ratio_strictly_decreasing() {
    // phi(k, n) = (nk - (k-1)k) / (nk - n) compared across k in integers
    for n in 2..=1_000u128 {
        for k in 2..n {
            let num_k = n * k - (k - 1) * k;
            let den_k = n * k - n;
            let num_k1 = n * (k + 1) - k * (k + 1);
            let den_k1 = n * (k + 1) - n;
            assert!(
                num_k * den_k1 > num_k1 * den_k,
                "phi not strictly decreasing at n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn mean_truncation_stays_below_bound() {
    // K(n) <= 8.5 sqrt(n) at the 1e-18 threshold across seven decades
    for e in [2_u32, 4, 6, 8, 10, 12, 14] {
        let n = 10u64.pow(e);
        let eval = Mlynar::new(n).unwrap().mean_eval(1e-18).unwrap();
        let bound = (8.5 * (n as f64).sqrt()).ceil() as u64;
        assert!(
            eval.terms <= bound,
            "n = 10^{e}: K = {} exceeds {bound}",
            eval.terms
        );
    }
}

#[test]
fn truncation_constant_report() {
    // The bound above is asserted at 1e-18; at other thresholds the
    // constant K/sqrt(n) is reported for inspection, not asserted.
    for eps in [1e-12, 2.2e-16, 1e-18] {
        let n = 1_000_000_u64;
        let eval = Mlynar::new(n).unwrap().mean_eval(eps).unwrap();
        println!(
            "epsilon = {eps:>8.1e}: K(10^6) = {} -> K/sqrt(n) = {:.3}",
            eval.terms,
            eval.terms as f64 / (n as f64).sqrt()
        );
    }
}

#[test]
fn full_tables_for_tiny_n_have_no_truncation() {
    for n in [1_u64, 2, 3, 4] {
        let table = Mlynar::new(n).unwrap().pmf_table(0.0).unwrap();
        assert_eq!(table.probs.len() as u64, n);
        assert!(!table.truncated);
        assert!(table.probs.iter().all(|&p| p > 0.0));
        let exact_sum: BigRational = exact::pmf(n).unwrap().iter().sum();
        assert_eq!(exact_sum.to_f64().unwrap(), 1.0);
    }
}
