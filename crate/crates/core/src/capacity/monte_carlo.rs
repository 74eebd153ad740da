use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::Rng;

use super::max_capacity;
use crate::algebra::{random_item, BaseItem, Chain, SystemParams};
use crate::memory::{unbind_query, Codebook};
use crate::rng::{self, SemiRng};
use crate::{Error, Result};

const Z_95: f64 = 1.959_963_984_540_054;

/// Empirical collision and query-failure rates for one vocabulary size.
#[derive(Debug, Clone, PartialEq)]
pub struct McAmbiguityResult {
    /// Vocabulary size.
    pub vocab_size: usize,
    /// Binding depth of each derived item.
    pub gamma: u32,
    /// Trials run.
    pub trials: u64,
    /// Seed of the run.
    pub seed: u64,
    /// Trials whose derived item coincides with a vocabulary entry.
    pub collisions: u64,
    /// `collisions / trials`.
    pub collision_rate: f64,
    /// 95% Wilson interval of the collision rate.
    pub collision_ci: (f64, f64),
    /// Trials whose unbind query returned the wrong entry or a tie.
    pub failed_queries: u64,
    /// `failed_queries / trials`.
    pub ambiguous_query_rate: f64,
    /// 95% Wilson interval of the query failure rate.
    pub ambiguous_ci: (f64, f64),
}

/// 95% Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let phat = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z_95 / denom * libm::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes as f64 == n { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Floyd's algorithm: `k` distinct values from `0..n`, in draw order.
fn sample_distinct(rng: &mut SemiRng, n: u64, k: usize) -> Vec<u64> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(k);
    for j in n - k as u64..n {
        let t = rng.gen_range(0..=j);
        let pick = if seen.contains(&t) { j } else { t };
        seen.insert(pick);
        out.push(pick);
    }
    out
}

fn decode_index(params: &SystemParams, mut idx: u64) -> BaseItem {
    let p = u64::from(params.p());
    let elems: Vec<u32> = (0..params.y())
        .map(|_| {
            let e = (idx % p) as u32;
            idx /= p;
            e
        })
        .collect();
    BaseItem::new(params, elems).expect("digits are below p")
}

/// The random vocabulary of `vocab_size` distinct items used by
/// [`mc_ambiguity`] for `seed` (stream 0).
pub fn mc_vocabulary(params: &SystemParams, vocab_size: usize, seed: u64) -> Result<Vec<BaseItem>> {
    if vocab_size == 0 {
        return Err(Error::InvalidArgument("vocabulary size must be at least 1".into()));
    }
    let q = max_capacity(params);
    if q < num_bigint::BigUint::from(vocab_size) {
        return Err(Error::InvalidArgument(format!(
            "vocabulary size {vocab_size} exceeds p^y = {q}"
        )));
    }
    let mut rng = rng::stream(seed, 0);
    match q.to_u64() {
        Some(n) => Ok(sample_distinct(&mut rng, n, vocab_size)
            .into_iter()
            .map(|i| decode_index(params, i))
            .collect()),
        None => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::with_capacity(vocab_size);
            while out.len() < vocab_size {
                let item = random_item(params, &mut rng);
                if seen.insert(item.clone()) {
                    out.push(item);
                }
            }
            Ok(out)
        }
    }
}

/// Probes how often derived bindings land on vocabulary entries.
///
/// Each trial `t` draws from stream `t + 1` of `seed`:
///
/// 1. `k = min(Gamma, vocab_size)` distinct entries, bound into one derived
///    item `c`. If `k >= 2`, the trial counts a collision when `c` equals any
///    entry.
/// 2. A distinct role/filler pair `(r, f)`. The scene `[r*f, c]` (or `[r*f]`
///    when no derived item exists) is unbound with `r` and cleaned up; the
///    query fails unless it returns `f` unambiguously.
///
/// A single-entry vocabulary has neither a derivable pair nor a role/filler
/// pair, so its trials count as neither collision nor failure.
pub fn mc_ambiguity(
    params: &SystemParams,
    vocab_size: usize,
    gamma: u32,
    trials: u64,
    seed: u64,
) -> Result<McAmbiguityResult> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let vocab = mc_vocabulary(params, vocab_size, seed)?;
    let qparams = SystemParams::new(params.p(), params.y(), 2)?;
    let members: BTreeSet<&BaseItem> = vocab.iter().collect();
    let codebook = Codebook::from_entries(
        qparams,
        vocab.iter().enumerate().map(|(i, it)| (format!("v{i}"), it.clone())),
    )?;
    let k = (gamma as usize).min(vocab_size);

    let mut collisions = 0u64;
    let mut failed = 0u64;
    for t in 0..trials {
        let mut rng = rng::stream(seed, t + 1);
        let derived = if k >= 2 {
            let picks = sample_distinct(&mut rng, vocab_size as u64, k);
            let mut acc = vocab[picks[0] as usize].clone();
            for &i in &picks[1..] {
                acc = acc.bind(&vocab[i as usize])?;
            }
            if members.contains(&acc) {
                collisions += 1;
            }
            Some(acc)
        } else {
            None
        };

        if vocab_size >= 2 {
            let pair = sample_distinct(&mut rng, vocab_size as u64, 2);
            let (role, filler) = (pair[0] as usize, pair[1] as usize);
            let mut scene = alloc::vec![vocab[role].bind(&vocab[filler])?];
            scene.extend(derived);
            let scene = Chain::new(qparams, scene)?;
            let res = unbind_query(&codebook, &scene, &format!("v{role}"))?;
            if res.ambiguous || res.name != format!("v{filler}") {
                failed += 1;
            }
        }
    }

    let rate = |c: u64| c as f64 / trials as f64;
    Ok(McAmbiguityResult {
        vocab_size,
        gamma,
        trials,
        seed,
        collisions,
        collision_rate: rate(collisions),
        collision_ci: wilson_interval(collisions, trials),
        failed_queries: failed,
        ambiguous_query_rate: rate(failed),
        ambiguous_ci: wilson_interval(failed, trials),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, y: usize) -> SystemParams {
        SystemParams::new(p, y, 8).unwrap()
    }

    #[test]
    fn vocabulary_is_distinct_and_reproducible() {
        let p = params(16, 2);
        let v = mc_vocabulary(&p, 256, 3).unwrap();
        let set: BTreeSet<_> = v.iter().collect();
        assert_eq!(set.len(), 256);
        assert_eq!(v, mc_vocabulary(&p, 256, 3).unwrap());
        assert!(mc_vocabulary(&p, 257, 3).is_err());
        assert!(mc_vocabulary(&p, 0, 3).is_err());

        let huge = params(16, 32);
        assert_eq!(mc_vocabulary(&huge, 50, 1).unwrap().len(), 50);
    }

    #[test]
    fn single_entry_has_no_collisions() {
        let r = mc_ambiguity(&params(16, 2), 1, 4, 100, 9).unwrap();
        assert_eq!(r.collisions, 0);
        assert_eq!(r.collision_rate, 0.0);
    }

    #[test]
    fn full_vocabulary_always_collides() {
        let r = mc_ambiguity(&params(16, 2), 256, 2, 500, 11).unwrap();
        assert_eq!(r.collision_rate, 1.0);
    }

    #[test]
    fn reproducible() {
        let p = params(16, 4);
        let a = mc_ambiguity(&p, 64, 2, 2_000, 7).unwrap();
        let b = mc_ambiguity(&p, 64, 2, 2_000, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wilson_interval_brackets_estimate() {
        let (lo, hi) = wilson_interval(30, 100);
        assert!(lo < 0.3 && 0.3 < hi);
        assert!((lo - 0.2189).abs() < 1e-3 && (hi - 0.3958).abs() < 1e-3);
        assert_eq!(wilson_interval(0, 10).0, 0.0);
        assert_eq!(wilson_interval(10, 10).1, 1.0);
    }

    #[test]
    fn floyd_sampling_is_distinct() {
        let mut r = rng::seeded(1);
        for _ in 0..100 {
            let s = sample_distinct(&mut r, 10, 10);
            let set: BTreeSet<_> = s.iter().collect();
            assert_eq!(set.len(), 10);
        }
    }
}
