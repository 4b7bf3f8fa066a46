use helmsource_core::freqplan::{
    assign_frequencies, density_estimate, full_frequency_set, lemma1_delta, log_estimate,
    minimal_subcover, mu, off_diagonal_sum, order_gap_stats, table_covering, zero_gap_stats,
    DeltaChoice, FrequencyPlan, PlanOptions, ScaledZero,
};
use helmsource_core::specfun::BesselZeroTable;
use helmsource_core::sve::bandwidth_lower;
use helmsource_core::Error;
use proptest::prelude::*;

fn plan(m: u32, dk: f64, wide: bool) -> FrequencyPlan {
    let mut o = PlanOptions::new(m, m, 1.0, 1.5);
    o.delta = DeltaChoice::Fixed(dk);
    o.allow_wide = wide;
    FrequencyPlan::build(&o).unwrap()
}

#[test]
fn full_set_sizes_and_scaling() {
    let t = BesselZeroTable::new(50, 50).unwrap();
    let q7 = full_frequency_set(&t, 7, 7, 1.0).unwrap();
    assert_eq!(q7.len(), 56);
    let mut ks: Vec<f64> = q7.iter().map(|z| z.k).collect();
    ks.sort_by(f64::total_cmp);
    assert!(ks.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(full_frequency_set(&t, 50, 50, 1.0).unwrap().len(), 2550);
    let half = full_frequency_set(&t, 7, 7, 2.0).unwrap();
    for (a, b) in q7.iter().zip(&half) {
        assert_eq!(a.k / 2.0, b.k);
    }
    assert!(matches!(
        full_frequency_set(&t, 51, 2, 1.0),
        Err(Error::Usage(_))
    ));
}

#[test]
fn lemma1_published_values() {
    let t = BesselZeroTable::new(7, 7).unwrap();
    let d3 = lemma1_delta(&t, 3, 3, 1.0, false).unwrap().delta_k;
    let d5 = lemma1_delta(&t, 5, 5, 1.0, false).unwrap().delta_k;
    let d7 = lemma1_delta(&t, 7, 7, 1.0, false).unwrap().delta_k;
    assert!((d3 - 0.91).abs() <= 0.02, "{d3}");
    assert!((d5 - 0.70).abs() <= 0.03, "{d5}");
    assert!((d7 - 0.61).abs() <= 0.02, "{d7}");
    assert!(d3 > d5 && d5 > d7);
}

#[test]
fn lemma1_scan_confirms_exact_row_sums() {
    let t = BesselZeroTable::new(7, 7).unwrap();
    let res = lemma1_delta(&t, 7, 7, 1.0, false).unwrap();
    let dk = res.delta_k;
    let q = full_frequency_set(&t, 7, 7, 1.0).unwrap();
    for m in 0..=7 {
        let k: Vec<f64> = q.iter().filter(|z| z.m == m).map(|z| z.k).collect();
        for i in 1..=7usize {
            let ki = k[i - 1];
            let mut d = 1e-4;
            while d < dk {
                for x in [ki - d, ki + d] {
                    let diag = (ki / (x * x - ki * ki)).abs();
                    assert!(diag > off_diagonal_sum(&k, i, x), "m={m} i={i} d={d}");
                }
                d += 1e-4;
            }
        }
    }
}

#[test]
fn fast_mode_agrees_with_full() {
    let t = BesselZeroTable::new(15, 15).unwrap();
    for m in [3u32, 5, 7, 10, 15] {
        let full = lemma1_delta(&t, m, m, 1.0, false).unwrap();
        let fast = lemma1_delta(&t, m, m, 1.0, true).unwrap();
        assert!(fast.fast_mode && fast.per_index.len() == 1);
        assert_eq!(full.per_index.len(), ((m + 1) * m) as usize);
        assert!(fast.delta_k >= full.delta_k);
        assert_eq!(full.limiting, (0, 1), "M = N = {m}");
        assert_eq!(fast.delta_k, full.delta_k);
    }
}

#[test]
fn single_radial_index_is_capped_by_positivity() {
    let t = BesselZeroTable::new(4, 2).unwrap();
    let r = lemma1_delta(&t, 4, 1, 1.0, false).unwrap();
    assert_eq!(r.limiting, (0, 1));
    assert!((r.delta_k - t.get(0, 1).unwrap()).abs() < 1e-9);
}

#[test]
fn published_subcover_ladders() {
    let cases: [(u32, [f64; 5], [usize; 5]); 4] = [
        (3, [0.25, 0.5, 0.75, 0.91, 1.5], [9, 8, 6, 5, 4]),
        (7, [0.25, 0.61, 0.75, 1.0, 1.5], [35, 21, 17, 13, 10]),
        (5, [0.25, 0.7, 0.75, 1.0, 1.5], [20, 14, 11, 9, 7]),
        (15, [0.25, 0.5, 0.75, 1.0, 1.5], [91, 56, 40, 30, 22]),
    ];
    for (m, ladder, sizes) in cases {
        let mut prev = usize::MAX;
        for (dk, want) in ladder.iter().zip(sizes) {
            let got = plan(m, *dk, true).q_s.len();
            assert!(
                got.abs_diff(want) <= 1,
                "M = N = {m}, dk = {dk}: {got} vs {want}"
            );
            assert!(got <= prev);
            prev = got;
        }
    }
}

#[test]
fn tiny_delta_keeps_every_zero() {
    let p = plan(7, 1e-9, false);
    assert_eq!(p.q_s.len(), 56);
    // each zero gets its own point just inside its interval
    for a in &p.assignment {
        assert!(a.k >= a.k_mn && a.k - a.k_mn < 1e-9);
    }
}

#[test]
fn auto_plan_matches_table_two() {
    let p = FrequencyPlan::build(&PlanOptions::new(3, 3, 1.0, 1.5)).unwrap();
    assert!((p.delta_k - 0.91).abs() <= 0.02);
    assert_eq!(p.q_s.len(), 5);
    assert!(p.bandwidth_gated);
    assert_eq!(p.provenance.lower_endpoint_convention, "k_{m,0} = 0");
    assert_eq!(p.provenance.zero_table_sha256.len(), 64);
    assert_eq!(p.provenance.lemma1.per_index.len(), 12);
}

#[test]
fn wide_delta_needs_opt_in() {
    let mut o = PlanOptions::new(3, 3, 1.0, 1.5);
    o.delta = DeltaChoice::Fixed(1.5);
    assert!(matches!(FrequencyPlan::build(&o), Err(Error::Plan(_))));
    o.allow_wide = true;
    let p = FrequencyPlan::build(&o).unwrap();
    assert!(!p.bandwidth_gated);
    assert_eq!(p.q_s.len(), 4);
    // with R0 = 0.5 the cap is 2
    let mut o = PlanOptions::new(3, 3, 0.5, 1.5);
    o.delta = DeltaChoice::Fixed(1.5);
    assert!(FrequencyPlan::build(&o).unwrap().bandwidth_gated);
}

#[test]
fn gated_plans_respect_bandwidth() {
    for m in [3u32, 5, 7, 10, 15] {
        for dk in [0.25, 0.5, 0.75, 1.0] {
            let p = plan(m, dk, false);
            assert!(p.bandwidth_gated && p.bandwidth_violations.is_empty());
            for a in &p.assignment {
                assert!(
                    a.m <= bandwidth_lower(a.k, 1.0).unwrap(),
                    "M = {m} dk = {dk}: {a:?}"
                );
            }
        }
    }
}

#[test]
fn plan_json_round_trip_and_tamper_detection() {
    let p = plan(5, 0.7, false);
    let s = p.to_json().unwrap();
    assert_eq!(FrequencyPlan::from_json(&s).unwrap(), p);
    assert!(s.contains("\"bandwidth_gated\""));
    let mut bad = p.clone();
    bad.assignment[3].k = bad.q_s[bad.q_s.len() - 1];
    assert!(matches!(
        FrequencyPlan::from_json(&bad.to_json().unwrap()),
        Err(Error::Plan(_))
    ));
    let mut bad = p.clone();
    bad.q_s.reverse();
    assert!(bad.validate().is_err());
}

#[test]
fn assignment_identity_and_ties() {
    let q: Vec<ScaledZero> = [1.0, 2.0, 3.0]
        .iter()
        .enumerate()
        .map(|(i, &k)| ScaledZero {
            m: 0,
            n: i as u32 + 1,
            k,
        })
        .collect();
    assert_eq!(
        assign_frequencies(&q, &[1.0, 2.0, 3.0], 0.1).unwrap(),
        vec![1.0, 2.0, 3.0]
    );
    assert_eq!(
        assign_frequencies(&q, &[1.5, 2.5], 0.6).unwrap(),
        vec![1.5, 1.5, 2.5]
    );
    assert!(matches!(
        assign_frequencies(&q, &[1.5], 0.6),
        Err(Error::Plan(_))
    ));
}

#[test]
fn density_examples() {
    let t = table_covering(70.0).unwrap();
    let d = density_estimate(10.0, 1.6, &t).unwrap();
    assert!((d.estimate - 5.09).abs() < 0.01);
    let d = density_estimate(2.405, 0.01, &t).unwrap();
    assert!(d.exact_count >= 1);
    // 2.4048 itself lies just below j_{0,1}, outside the estimate's domain
    assert!(density_estimate(2.4048, 0.5, &t).is_err());
    let mut counts = Vec::new();
    for i in 1..100 {
        let d = density_estimate(2.4048 + 0.5769 * i as f64, 0.5, &t).unwrap();
        counts.push(d.exact_count as f64);
    }
    // exact counts trend upward: mean of the last quarter well above the first
    let head: f64 = counts[..25].iter().sum::<f64>() / 25.0;
    let tail: f64 = counts[74..].iter().sum::<f64>() / 25.0;
    assert!(tail > 3.0 * head, "{head} {tail}");
    assert!(matches!(
        density_estimate(2.0, 0.5, &t),
        Err(Error::Usage(_))
    ));
}

#[test]
fn gap_statistics() {
    let wide = zero_gap_stats(50, 200.0).unwrap();
    let narrow = zero_gap_stats(20, 200.0).unwrap();
    assert!(wide.max_gap < 1.5, "{}", wide.max_gap);
    assert!(wide.mean_gap < narrow.mean_gap);
    assert!(wide.min_gap > 0.0 && narrow.min_gap > 0.0);
    let single = order_gap_stats(0, 2000.0).unwrap();
    assert!((single.max_gap - std::f64::consts::PI).abs() < 1e-4);
}

fn brute_force_cover(centres: &[f64], dk: f64) -> usize {
    let kmax = centres.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cand: Vec<f64> = centres
        .iter()
        .map(|c| (c + dk * (1.0 - 1e-9)).min(kmax))
        .collect();
    for size in 1..=cand.len() {
        for mask in 0u32..(1 << cand.len()) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let pts: Vec<f64> = (0..cand.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cand[i])
                .collect();
            if centres
                .iter()
                .all(|c| pts.iter().any(|p| (p - c).abs() < dk))
            {
                return size;
            }
        }
    }
    cand.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_cover_is_minimal(centres in prop::collection::vec(0.0f64..20.0, 1..=12), dk in 0.05f64..4.0) {
        let pts = minimal_subcover(&centres, dk).unwrap();
        for c in &centres {
            prop_assert!(pts.iter().any(|p| (p - c).abs() < dk));
        }
        let lo = centres.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = centres.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(pts.iter().all(|p| *p >= lo && *p <= hi));
        prop_assert_eq!(pts.len(), brute_force_cover(&centres, dk));
    }

    #[test]
    fn cover_size_monotone(a in 0.05f64..2.0, b in 0.05f64..2.0, m in 2u32..8) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let t = BesselZeroTable::new(m, m).unwrap();
        let c: Vec<f64> = full_frequency_set(&t, m, m, 1.0).unwrap().iter().map(|z| z.k).collect();
        prop_assert!(minimal_subcover(&c, hi).unwrap().len() <= minimal_subcover(&c, lo).unwrap().len());
    }

    #[test]
    fn plans_satisfy_perturbation_hypothesis(m in 1u32..9, dk in 0.01f64..1.0) {
        let p = plan(m, dk, false);
        for a in &p.assignment {
            prop_assert!((a.k - a.k_mn).abs() < p.delta_k);
        }
    }

    #[test]
    fn log_estimate_bounds_row_sum(m in 0u32..8, i in 1usize..=8, frac in 0.01f64..0.99, plus in any::<bool>()) {
        let t = BesselZeroTable::new(8, 8).unwrap();
        let k: Vec<f64> = t.order(m).unwrap().to_vec();
        let res = lemma1_delta(&t, 8, 8, 1.0, false).unwrap();
        let d = frac * res.delta_k;
        let x = if plus { k[i - 1] + d } else { k[i - 1] - d };
        let rhs = log_estimate(&k, i, x, mu(m, 1.0).unwrap());
        prop_assert!(off_diagonal_sum(&k, i, x) <= rhs * (1.0 + 1e-12), "sum {} > estimate {}", off_diagonal_sum(&k, i, x), rhs);
    }
}
