use rand::Rng;
use semiholo_core::algebra::{bind, random_item, superpose, BaseItem, Chain, SystemParams};
use semiholo_core::memory::{cleanup_query, unbind_query, Codebook};
use semiholo_core::metric::{chain_dist, circ_dist, denoise_avg, denoise_item, item_dist, DenoiseMethod};
use semiholo_core::rng;

#[test]
fn item_distance_is_a_metric() {
    for (seed, (p, y)) in [(2u32, 8usize), (4, 2), (16, 8), (17, 1), (5, 3)].into_iter().enumerate() {
        let params = SystemParams::new(p, y, 4).unwrap();
        let mut r = rng::seeded(seed as u64);
        for _ in 0..10_000 {
            let a = random_item(&params, &mut r);
            let b = random_item(&params, &mut r);
            let c = random_item(&params, &mut r);
            let ab = item_dist(&a, &b).unwrap();
            assert_eq!(ab, item_dist(&b, &a).unwrap());
            assert_eq!(item_dist(&a, &a).unwrap(), 0);
            assert_eq!(ab == 0, a == b);
            assert!(item_dist(&a, &c).unwrap() <= ab + item_dist(&b, &c).unwrap());
            assert!(ab <= u64::from(p / 2) * y as u64);
        }
    }
}

#[test]
fn member_items_are_at_distance_zero() {
    let params = SystemParams::new(16, 4, 8).unwrap();
    let mut r = rng::seeded(77);
    for _ in 0..1_000 {
        let rank = r.gen_range(1..=8);
        let items: Vec<BaseItem> = (0..rank).map(|_| random_item(&params, &mut r)).collect();
        let chain = Chain::new(params, items.clone()).unwrap();
        for it in &items {
            assert_eq!(chain_dist(it, &chain).unwrap(), 0);
        }
    }
}

// Independent restatement of the midpoint procedure: walk ceil(dist/2)
// steps from whichever endpoint starts the shortest counter-clockwise arc.
fn midpoint_oracle(a: u32, b: u32, p: u32) -> u32 {
    let (lo, hi) = (a.min(b), a.max(b));
    let inner = hi - lo;
    let outer = p - inner;
    if inner <= outer {
        let steps = inner.div_ceil(2);
        lo + steps
    } else {
        let steps = outer.div_ceil(2);
        (hi + steps) % p
    }
}

#[test]
fn geodesic_average_lies_on_shortest_arc() {
    for p in 2..=64u32 {
        for a in 0..p {
            for b in 0..p {
                let m = denoise_avg(a, b, p).unwrap();
                let dab = circ_dist(a, b, p).unwrap();
                assert_eq!(circ_dist(a, m, p).unwrap() + circ_dist(m, b, p).unwrap(), dab, "p={p} a={a} b={b}");
                assert_eq!(m, midpoint_oracle(a, b, p));
            }
        }
    }
}

#[test]
fn majority_vote_recovers_repeated_item() {
    let params = SystemParams::new(16, 8, 1).unwrap();
    let mut r = rng::seeded(5);
    for _ in 0..500 {
        let k = r.gen_range(1..=6);
        let truth = random_item(&params, &mut r);
        let mut samples = vec![truth.clone(); k];
        samples.extend((0..k - 1).map(|_| random_item(&params, &mut r)));
        // Interleave so the repeated copies are not contiguous.
        let n = samples.len();
        for i in 0..n {
            let j = r.gen_range(i..n);
            samples.swap(i, j);
        }
        assert_eq!(denoise_item(&samples, DenoiseMethod::MajorityVote).unwrap(), truth);
    }
}

#[test]
fn unbinding_recovers_filler_unless_a_cross_term_collides() {
    let params = SystemParams::new(16, 4, 4).unwrap();
    let mut r = rng::seeded(99);
    for trial in 0..300 {
        let items: Vec<BaseItem> = (0..12).map(|_| random_item(&params, &mut r)).collect();
        let cb = Codebook::from_entries(params, items.iter().enumerate().map(|(i, it)| (format!("e{i}"), it.clone()))).unwrap();
        let (role, filler, x, y) = (0, 1, 2 + trial % 5, 7 + trial % 5);
        let s = superpose(
            &bind(&cb.chain(&format!("e{role}")).unwrap(), &cb.chain(&format!("e{filler}")).unwrap()).unwrap(),
            &bind(&cb.chain(&format!("e{x}")).unwrap(), &cb.chain(&format!("e{y}")).unwrap()).unwrap(),
        )
        .unwrap();
        let res = unbind_query(&cb, &s, &format!("e{role}")).unwrap();
        let noise = items[x].bind(&items[y]).unwrap().unbind(&items[role]).unwrap();
        let collides = items.iter().enumerate().any(|(i, it)| i != filler && *it == noise);
        if collides {
            assert!(res.ambiguous || res.name != format!("e{filler}"));
            // Determinism under collision.
            assert_eq!(res, unbind_query(&cb, &s, &format!("e{role}")).unwrap());
        } else {
            assert_eq!(res.name, format!("e{filler}"));
            assert_eq!(res.distance, 0);
        }
    }
}

#[test]
fn forced_collision_is_flagged() {
    let params = SystemParams::new(4, 2, 4).unwrap();
    let it = |v: [u32; 2]| BaseItem::new(&params, v).unwrap();
    let role = it([1, 0]);
    let filler = it([2, 2]);
    let other = it([3, 1]);
    // Noise term other-role lands exactly on `decoy`.
    let decoy = other.unbind(&role).unwrap();
    let cb = Codebook::from_entries(params, [("role", role.clone()), ("filler", filler.clone()), ("decoy", decoy)]).unwrap();
    let s = Chain::new(params, vec![role.bind(&filler).unwrap(), other]).unwrap();
    let res = unbind_query(&cb, &s, "role").unwrap();
    assert!(res.ambiguous);
    assert_eq!(res.name, "filler");
    let direct = cleanup_query(&cb, &bind(&Chain::singleton(params, role.inverse()).unwrap(), &s).unwrap()).unwrap();
    assert_eq!(res, direct);
}
