use std::collections::BTreeSet;

use semiholo_core::capacity::{
    capacity_bound, derived_items, ln_biguint, ln_capacity_bound, max_capacity, mc_ambiguity, mc_vocabulary,
};
use semiholo_core::SystemParams;

#[test]
fn bound_and_derived_items_are_consistent() {
    let mut checked = 0;
    for p in [2u32, 4, 16, 17] {
        for y in [8usize, 32, 128] {
            let params = SystemParams::new(p, y, 8).unwrap();
            let ln_q = ln_biguint(&max_capacity(&params));
            for gamma in 1..=20 {
                let qs = capacity_bound(&params, gamma).unwrap();
                if qs / f64::from(gamma) < 10.0 || !qs.is_finite() {
                    continue;
                }
                let j = derived_items(qs, gamma).unwrap();
                assert!((j.ln_total - ln_q).abs() <= 0.05 * ln_q, "p={p} y={y} G={gamma}");
                // The dominant term inverts the bound exactly.
                assert!((j.ln_dominant - ln_q).abs() < 1e-6 * ln_q.max(1.0));
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn bound_root_exceeds_limit() {
    // (G!)^(1/G) approaches G/e from above.
    for g in [10u32, 20, 40] {
        let params = SystemParams::new(2, 1, 1).unwrap();
        let root = ln_capacity_bound(&params, g).unwrap() - (2f64).ln() / f64::from(g);
        assert!(root.exp() > f64::from(g) / std::f64::consts::E);
    }
}

fn exact_pair_collision_fraction(vocab: &[semiholo_core::BaseItem]) -> f64 {
    let set: BTreeSet<_> = vocab.iter().collect();
    let mut hits = 0u64;
    let mut total = 0u64;
    for i in 0..vocab.len() {
        for j in i + 1..vocab.len() {
            total += 1;
            if set.contains(&vocab[i].bind(&vocab[j]).unwrap()) {
                hits += 1;
            }
        }
    }
    hits as f64 / total as f64
}

#[test]
fn collision_rate_matches_exhaustive_enumeration() {
    let params = SystemParams::new(16, 2, 8).unwrap();
    for vocab_size in [32usize, 200, 250, 256] {
        let vocab = mc_vocabulary(&params, vocab_size, 21).unwrap();
        let exact = exact_pair_collision_fraction(&vocab);
        let mc = mc_ambiguity(&params, vocab_size, 2, 20_000, 21).unwrap();
        let sigma = (exact * (1.0 - exact) / 20_000.0).sqrt();
        assert!((mc.collision_rate - exact).abs() <= 5.0 * sigma + 1e-12, "{vocab_size}: {} vs {exact}", mc.collision_rate);
        if vocab_size == 256 {
            assert_eq!(exact, 1.0);
        }
        if vocab_size >= 250 {
            assert!(exact > 0.9);
        }
    }
}

#[test]
fn collision_rate_grows_with_vocabulary() {
    let params = SystemParams::new(16, 2, 8).unwrap();
    let rates: Vec<f64> = [8usize, 32, 64, 128, 256]
        .iter()
        .map(|&v| mc_ambiguity(&params, v, 2, 5_000, 1234).unwrap().collision_rate)
        .collect();
    assert!(rates.windows(2).all(|w| w[0] <= w[1]), "{rates:?}");
}

#[test]
fn deeper_bindings_and_query_failures() {
    let params = SystemParams::new(16, 4, 8).unwrap();
    let r = mc_ambiguity(&params, 64, 3, 2_000, 5).unwrap();
    assert!(r.collision_rate < 0.01);
    assert!(r.ambiguous_query_rate < 0.05);
    let full = mc_ambiguity(&SystemParams::new(16, 2, 8).unwrap(), 256, 2, 1_000, 5).unwrap();
    assert!(full.ambiguous_query_rate > 0.9);
}
