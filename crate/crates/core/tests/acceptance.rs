// SPDX-License-Identifier: Apache-2.0

//! Exit criteria. Run with `cargo test -p sortnet-core --test acceptance --
//! --nocapture --test-threads=1` to see one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sortnet_core::analysis::{
    check_cube_poset, check_green_m_poset, check_observations, check_strategy, check_vv_m_poset,
    depth_regression, ObservationMode,
};
use sortnet_core::circuit::network_to_circuit;
use sortnet_core::constructions::{
    approx16, batcher_sorter, green16, green16_naive_merge, hypercube_phase, van_voorhis16,
};
use sortnet_core::render::{parse_text, render_text};
use sortnet_core::schedule::depth;
use sortnet_core::{infer_poset, verify_sorts_binary, Comparator, Network, Poset, Verifier};

fn report(id: u32, what: &str, pass: bool, detail: String) {
    println!(
        "[{}] criterion {id:>2}: {what} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} failed: {what} ({detail})");
}

#[test]
fn criterion_01_green16() {
    let g = green16();
    let (size, d) = (g.len(), depth(&g));
    let sorts = verify_sorts_binary(&g).unwrap().sorts();
    report(
        1,
        "green16 has 60 comparators, depth 10, sorts all 65536 binary inputs",
        size == 60 && d == 10 && sorts,
        format!("size={size} depth={d} sorts={sorts}"),
    );
}

#[test]
fn criterion_02_van_voorhis16() {
    let v = van_voorhis16();
    let (size, d) = (v.len(), depth(&v));
    let sorts = verify_sorts_binary(&v).unwrap().sorts();
    report(
        2,
        "van_voorhis16 has 61 comparators, depth 9, sorts all 65536 binary inputs",
        size == 61 && d == 9 && sorts,
        format!("size={size} depth={d} sorts={sorts}"),
    );
}

#[test]
fn criterion_03_common_prefix_is_the_cube() {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, net) in [("green16", green16()), ("van_voorhis16", van_voorhis16())] {
        let prefix = net.prefix(32);
        let d = depth(&prefix);
        let cube = check_cube_poset(&prefix, 4).unwrap();
        ok &= d == 4 && cube && prefix.len() == 32;
        detail.push(format!("{name}: depth={d} cube={cube}"));
    }
    report(
        3,
        "32-comparator prefix has depth 4 and the 4-cube poset",
        ok,
        detail.join(", "),
    );
}

#[test]
fn criterion_04_observations() {
    let prefix = hypercube_phase(4).unwrap();
    assert_eq!(prefix, approx16());
    let ex = check_observations(&prefix, ObservationMode::ExhaustiveBinary).unwrap();
    let sa = check_observations(&prefix, ObservationMode::sampled_default()).unwrap();
    assert_eq!(sa.inputs_checked, 10_000);
    report(
        4,
        "observations a-d hold on 2^16 binary inputs and 10^4 seeded permutations",
        ex.all_hold() && sa.all_hold(),
        format!("exhaustive={} sampled={}", ex.all_hold(), sa.all_hold()),
    );
}

#[test]
fn criterion_05_tetrad_posets() {
    let green = check_green_m_poset(&green16().prefix(55)).unwrap();
    let vv = check_vv_m_poset(&van_voorhis16().prefix(48)).unwrap();
    report(
        5,
        "Green tetrad poset (>=2 dominance) and van Voorhis poset (>=3 dominance)",
        green && vv,
        format!("green={green} vv={vv}"),
    );
}

#[test]
fn criterion_06_strategy_completeness() {
    let ok = check_strategy().unwrap();
    report(
        6,
        "Batcher 8-sorter on M still yields a 16-sorter",
        ok,
        format!("sorts={ok}"),
    );
}

#[test]
fn criterion_07_depth_regression() {
    let reg = depth_regression();
    assert_eq!(reg.naive_depth, depth(&green16_naive_merge()));
    report(
        7,
        "sequential merge costs depth: green16_naive_merge depth >= 11",
        reg.holds(),
        format!("green={} naive={}", reg.green_depth, reg.naive_depth),
    );
}

#[test]
fn criterion_08_majority_circuits() {
    let c = network_to_circuit(&van_voorhis16());
    let d8 = c.cone_depth(8).unwrap();
    let d7 = c.cone_depth(7).unwrap();
    let t8 = c.is_threshold(8, 8, 16).unwrap();
    let t9 = c.is_threshold(7, 9, 16).unwrap();
    let pinned = c.specialize(15, false).unwrap();
    let d15 = pinned.cone_depth(8).unwrap();
    let t15 = pinned.is_threshold(8, 8, 15).unwrap();
    report(
        8,
        "MAJ16 (wires 8, 7) and MAJ15 (input 15 pinned) have cone depth <= 9 and exact truth tables",
        d8 <= 9 && d7 <= 9 && t8 && t9 && d15 <= 9 && t15,
        format!("depth8={d8} depth7={d7} depth15={d15} T8/16={t8} T9/16={t9} T8/15={t15}"),
    );
}

#[test]
fn criterion_09_batcher_baseline() {
    let b = batcher_sorter(16).unwrap();
    let (size, d) = (b.len(), depth(&b));
    let sorts = verify_sorts_binary(&b).unwrap().sorts();
    report(
        9,
        "batcher_sorter(16) has 63 comparators, depth 10, more than green16",
        size == 63 && d == 10 && sorts && size > green16().len(),
        format!("size={size} depth={d} sorts={sorts}"),
    );
}

fn seeded_corpus(seed: u64, count: usize) -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let width = rng.gen_range(2..=12);
            let len = rng.gen_range(0..5 * width);
            let cs = (0..len)
                .map(|_| {
                    let a = rng.gen_range(0..width - 1);
                    let b = rng.gen_range(a + 1..width);
                    Comparator::new(a, b)
                })
                .collect();
            Network::new(width, cs).unwrap()
        })
        .chain([green16(), van_voorhis16(), batcher_sorter(8).unwrap()])
        .collect()
}

#[test]
fn criterion_10_property_suites() {
    let corpus = seeded_corpus(10, 100);
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let multiset = (0..10_000).all(|i| {
        let net = &corpus[i % corpus.len()];
        let input: Vec<u32> = (0..net.width()).map(|_| rng.gen_range(0..10)).collect();
        let mut out = net.apply(&input).unwrap();
        let mut sorted = input;
        out.sort_unstable();
        sorted.sort_unstable();
        out == sorted
    });
    let naive = Verifier::naive();
    let agree = corpus
        .iter()
        .filter(|n| n.width() <= 12)
        .all(|n| naive.verify(n).unwrap() == verify_sorts_binary(n).unwrap());
    let round_trip = corpus
        .iter()
        .all(|n| parse_text(&render_text(n)).unwrap() == *n);
    let hasse = corpus.iter().all(|n| {
        let p = infer_poset(n).unwrap();
        Poset::closure(p.len(), &p.hasse_edges()) == p.relation()
    });
    report(
        10,
        "multiset preservation, sliced/naive agreement, text round-trip, Hasse closure",
        multiset && agree && round_trip && hasse,
        format!("multiset={multiset} agree={agree} round_trip={round_trip} hasse={hasse}"),
    );
}

#[test]
fn criterion_11_sliced_verification_speed() {
    let g = green16();
    // Warm the thread pool before timing.
    verify_sorts_binary(&g).unwrap();
    let best = (0..5)
        .map(|_| {
            let t = Instant::now();
            assert!(verify_sorts_binary(&g).unwrap().sorts());
            t.elapsed()
        })
        .min()
        .unwrap();
    report(
        11,
        "bit-sliced exhaustive verification of a 16-wire network under 50 ms",
        best < Duration::from_millis(50),
        format!("best of 5: {:.3} ms", best.as_secs_f64() * 1e3),
    );
}
