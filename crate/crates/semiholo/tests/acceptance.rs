//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use semiholo::report::QueryReport;
use semiholo_core::algebra::{bind, random_item, superpose, BaseItem, Chain, SystemParams};
use semiholo_core::capacity::{capacity_bound, mc_ambiguity};
use semiholo_core::copu::{
    energy_proxy, estimate_transistors, worst_case_activity, CopuConfig, CopuState, OpCommand, OpKind,
};
use semiholo_core::metric::{circ_dist, denoise_avg, same_items_unordered};
use semiholo_core::rng::{self, SemiRng};

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_worked_distance() -> Outcome {
    let d = circ_dist(4, 0, 5).map_err(|e| e.to_string())?;
    check(d == 1, format!("circ_dist(4,0,p=5) = {d}"))
}

fn c2_capacity_headline() -> Outcome {
    let p = SystemParams::new(16, 128, 8).unwrap();
    let b = capacity_bound(&p, 20).map_err(|e| e.to_string())?;
    check((4.18e8..=4.26e8).contains(&b), format!("bound = {b:.6e}"))
}

fn ranks_cmd(cfg: &CopuConfig, kind: OpKind, ra: usize, rb: usize) -> OpCommand {
    let p = *cfg.params();
    let mk = |r: usize, off: u32| {
        Chain::new(p, (0..r as u32).map(|i| BaseItem::new(&p, [i + off]).unwrap()).collect()).unwrap()
    };
    OpCommand::new(kind, mk(ra, 1), mk(rb, 100))
}

fn c3_cycle_counts() -> Outcome {
    let cfg = CopuConfig::reference();
    let mut s = CopuState::new(cfg);
    let (_, sup) = s.run_op(&ranks_cmd(&cfg, OpKind::Superpose, 4, 4)).map_err(|e| e.to_string())?;
    let (_, bnd) = s.run_op(&ranks_cmd(&cfg, OpKind::Bind, 4, 2)).map_err(|e| e.to_string())?;
    check(
        sup.cycles == 9 && bnd.cycles == 9,
        format!("superpose 8 items: {} cycles, bind 4x2: {} cycles", sup.cycles, bnd.cycles),
    )
}

fn c4_transistors() -> Outcome {
    let t = estimate_transistors(&CopuConfig::reference());
    check(
        t.datapath == 880 && t.control == 2304 && t.registers == 1198 && t.total == 4382 && t.alu == 336 && t.mux_demux == 544,
        format!(
            "datapath {} (alu {} = 42x8, mux/demux {} = 68x8), control {}, registers {}, total {}",
            t.datapath, t.alu, t.mux_demux, t.control, t.registers, t.total
        ),
    )
}

fn c5_worst_case_flips() -> Outcome {
    let cfg = CopuConfig::from_bits(4, 1, 1).unwrap();
    let r = worst_case_activity(&cfg, OpKind::Bind).map_err(|e| e.to_string())?;
    check(
        r.activity.input_driver == 8 && r.output_bits == 3,
        format!("4-bit bind: {} input flips, {} output flips", r.activity.input_driver, r.output_bits),
    )
}

fn c6_energy_proxy() -> Outcome {
    let cfg = CopuConfig::reference();
    let s = worst_case_activity(&cfg, OpKind::Superpose).map_err(|e| e.to_string())?;
    let b = worst_case_activity(&cfg, OpKind::Bind).map_err(|e| e.to_string())?;
    let ratio = energy_proxy(&s.stats(), &cfg) / energy_proxy(&b.stats(), &cfg);
    let target = 5.97 / 5.79;
    check(
        (ratio - target).abs() <= 0.25 * target && s.register_share() > 0.5 && b.register_share() > 0.5,
        format!(
            "proxy ratio {ratio:.3} (target {target:.3} +/-25%), register share {:.3} / {:.3}",
            s.register_share(),
            b.register_share()
        ),
    )
}

fn chain(p: &SystemParams, rank: usize, r: &mut SemiRng) -> Chain {
    Chain::new(*p, (0..rank).map(|_| random_item(p, r)).collect()).unwrap()
}

fn c7_algebra_laws() -> Outcome {
    const CASES: usize = 10_000;
    let mut configs = 0;
    let mut failures = Vec::new();
    for p in [2u32, 4, 16, 17] {
        for y in [1usize, 2, 8] {
            for d in [4usize, 8] {
                let params = SystemParams::new(p, y, d).unwrap();
                let mut r = rng::stream(7, configs);
                configs += 1;
                let mut fail = |law: &str| failures.push(format!("{law} at p={p} y={y} d={d}"));
                for _ in 0..CASES {
                    let ra = r.gen_range(0..=d);
                    let rb = r.gen_range(0..=d - ra);
                    let (a, b, c) = (chain(&params, ra, &mut r), chain(&params, rb, &mut r), {
                        let rc = r.gen_range(0..=d - ra - rb);
                        chain(&params, rc, &mut r)
                    });
                    let left = superpose(&superpose(&a, &b).unwrap(), &c).unwrap();
                    let right = superpose(&a, &superpose(&b, &c).unwrap()).unwrap();
                    if left != right {
                        fail("superposition associativity");
                    }
                }
                for _ in 0..CASES {
                    let ra = r.gen_range(1..=d);
                    let rb = r.gen_range(1..=d / ra);
                    let (a, b) = (chain(&params, ra, &mut r), chain(&params, rb, &mut r));
                    if !same_items_unordered(&bind(&a, &b).unwrap(), &bind(&b, &a).unwrap()) {
                        fail("binding commutativity");
                    }
                }
                for _ in 0..CASES {
                    let a = Chain::singleton(params, random_item(&params, &mut r)).unwrap();
                    let rb = r.gen_range(1..=d);
                    let rc = r.gen_range(0..=d - rb);
                    let (b, c) = (chain(&params, rb, &mut r), chain(&params, rc, &mut r));
                    let bc = superpose(&b, &c).unwrap();
                    let left = bind(&a, &bc).unwrap();
                    let right = if c.is_empty() {
                        bind(&a, &b).unwrap()
                    } else {
                        superpose(&bind(&a, &b).unwrap(), &bind(&a, &c).unwrap()).unwrap()
                    };
                    if left != right {
                        fail("rank-1 distributivity");
                    }
                }
                for _ in 0..CASES {
                    let a = random_item(&params, &mut r);
                    let rb = r.gen_range(1..=d);
                    let b = chain(&params, rb, &mut r);
                    let bound = bind(&Chain::singleton(params, a.clone()).unwrap(), &b).unwrap();
                    let back = bind(&Chain::singleton(params, a.inverse()).unwrap(), &bound).unwrap();
                    if back != b {
                        fail("exact unbinding");
                    }
                }
                if p == 2 {
                    for _ in 0..CASES {
                        let a = random_item(&params, &mut r);
                        let b = random_item(&params, &mut r);
                        let xor: Vec<u32> = a.elems().iter().zip(b.elems()).map(|(x, z)| x ^ z).collect();
                        if a.bind(&b).unwrap().elems() != xor.as_slice() {
                            fail("binary binding is XOR");
                        }
                    }
                }
            }
        }
    }
    let detail = format!("{configs} configurations x {CASES} cases per law, {} failures", failures.len());
    match failures.first() {
        None => Ok(detail),
        Some(f) => Err(format!("{detail}; first: {f}")),
    }
}

fn c8_golden_model() -> Outcome {
    let cfg = CopuConfig::reference();
    let p = *cfg.params();
    let mut state = CopuState::new(cfg);
    let mut r = rng::seeded(8);
    let mut mismatches = 0;
    for kind in [OpKind::Superpose, OpKind::Bind, OpKind::BindInverse] {
        for _ in 0..1000 {
            let (ra, rb) = if kind == OpKind::Superpose {
                let ra = r.gen_range(0..=8);
                (ra, r.gen_range(0..=8 - ra))
            } else {
                let ra = r.gen_range(1..=8);
                (ra, r.gen_range(1..=8 / ra))
            };
            let cmd = OpCommand::new(kind, chain(&p, ra, &mut r), chain(&p, rb, &mut r));
            let (out, _) = state.run_op(&cmd).map_err(|e| e.to_string())?;
            if out != cmd.golden().map_err(|e| e.to_string())? || state.flags().2 as usize != out.rank() {
                mismatches += 1;
            }
        }
    }
    check(mismatches == 0, format!("3000 commands, {mismatches} mismatches"))
}

fn c9_redcar() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = semiholo::cli::run(["semiholo", "query", "--demo-redcar", "--json"], &mut out, &mut err);
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
    }
    let rep: QueryReport = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    check(
        rep.name == "red" && rep.distance == 0 && !rep.ambiguous,
        format!("name={} distance={} ambiguous={}", rep.name, rep.distance, rep.ambiguous),
    )
}

fn c10_geodesic() -> Outcome {
    let mut failures = 0u64;
    let mut pairs = 0u64;
    for p in 2..=64u32 {
        for a in 0..p {
            for b in 0..p {
                pairs += 1;
                let m = denoise_avg(a, b, p).map_err(|e| e.to_string())?;
                let on_arc = circ_dist(a, m, p).unwrap() + circ_dist(m, b, p).unwrap() == circ_dist(a, b, p).unwrap();
                let (lo, hi) = (a.min(b), a.max(b));
                let expected = if hi - lo <= p - (hi - lo) {
                    lo + (hi - lo).div_ceil(2)
                } else {
                    (hi + (p - (hi - lo)).div_ceil(2)) % p
                };
                if !on_arc || m != expected {
                    failures += 1;
                }
            }
        }
    }
    check(failures == 0, format!("{pairs} residue pairs over p=2..64, {failures} failures"))
}

fn c11_monte_carlo() -> Outcome {
    let p = SystemParams::new(16, 2, 8).unwrap();
    let full = mc_ambiguity(&p, 256, 2, 2_000, 11).map_err(|e| e.to_string())?;
    let small = mc_ambiguity(&p, 8, 2, 2_000, 11).map_err(|e| e.to_string())?;
    let again = (mc_ambiguity(&p, 256, 2, 2_000, 11).unwrap(), mc_ambiguity(&p, 8, 2, 2_000, 11).unwrap());
    check(
        full.collision_rate == 1.0 && small.collision_rate < 0.5 && again == (full.clone(), small.clone()),
        format!(
            "vocab 256: collision rate {}, vocab 8: {}, rerun identical: {}",
            full.collision_rate,
            small.collision_rate,
            again == (full.clone(), small.clone())
        ),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("worked distance", Duration::from_millis(1), c1_worked_distance),
        ("capacity headline", Duration::from_millis(1), c2_capacity_headline),
        ("cycle counts", Duration::from_millis(10), c3_cycle_counts),
        ("transistor table", Duration::from_secs(1), c4_transistors),
        ("worst-case flips", Duration::from_secs(1), c5_worst_case_flips),
        ("energy proxy", Duration::from_secs(1), c6_energy_proxy),
        ("algebra laws", Duration::from_secs(30), c7_algebra_laws),
        ("golden model", Duration::from_secs(10), c8_golden_model),
        ("red-car demo", Duration::from_millis(10), c9_redcar),
        ("geodesic average", Duration::from_secs(5), c10_geodesic),
        ("monte-carlo sanity", Duration::from_secs(10), c11_monte_carlo),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) => (took < *limit, d),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {:<20} {} [{:.3} ms, limit {} ms]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            name,
            detail,
            took.as_secs_f64() * 1e3,
            limit.as_millis()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
