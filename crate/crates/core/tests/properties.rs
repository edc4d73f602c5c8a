// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sortnet_core::constructions::{batcher_sorter, green16, sorter4, van_voorhis16};
use sortnet_core::render::{parse_text, render_text};
use sortnet_core::schedule::{asap_schedule, longest_chain};
use sortnet_core::verify::is_sorted;
use sortnet_core::{
    counterexample_permutation, infer_poset, verify_sorts_binary, Comparator, Network, PhaseTag,
    Poset, Verdict, Verifier,
};

fn random_network(rng: &mut ChaCha8Rng, width: usize, len: usize) -> Network {
    let cs = (0..len)
        .map(|_| {
            let a = rng.gen_range(0..width);
            let mut b = rng.gen_range(0..width - 1);
            if b >= a {
                b += 1;
            }
            let tag = match rng.gen_range(0..12) {
                t @ 0..=8 => Some(PhaseTag::ALL[t]),
                _ => None,
            };
            Comparator {
                low: a.min(b),
                high: a.max(b),
                tag,
            }
        })
        .collect();
    Network::new(width, cs).unwrap()
}

/// Batcher sorter of size `n` on a random ascending subset of wires, followed
/// by a few random comparators.
fn random_sorter(rng: &mut ChaCha8Rng, width: usize) -> Network {
    let mut wires: Vec<usize> = (0..width).collect();
    wires.shuffle(rng);
    let n = [2, 4, 8].into_iter().rfind(|&n| n <= width).unwrap();
    let mut chosen = wires[..n].to_vec();
    chosen.sort_unstable();
    let block = batcher_sorter(n).unwrap().embed(&chosen, width).unwrap();
    let extra = rng.gen_range(0..6);
    block.concat(&random_network(rng, width, extra)).unwrap()
}

fn corpus() -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nets = Vec::new();
    for i in 0..100 {
        let width = rng.gen_range(2..=12);
        if i % 4 == 0 {
            nets.push(random_sorter(&mut rng, width));
        } else {
            let len = rng.gen_range(0..4 * width);
            nets.push(random_network(&mut rng, width, len));
        }
    }
    nets
}

#[test]
fn multiset_is_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let nets = corpus();
    for trial in 0..10_000 {
        let net = &nets[trial % nets.len()];
        let input: Vec<i32> = (0..net.width()).map(|_| rng.gen_range(-20..20)).collect();
        let mut out = net.apply(&input).unwrap();
        let mut expected = input.clone();
        expected.sort_unstable();
        out.sort_unstable();
        assert_eq!(out, expected);
    }
}

#[test]
fn zero_one_principle_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let sorters = [
        green16(),
        van_voorhis16(),
        batcher_sorter(8).unwrap(),
        sorter4(),
    ];
    for net in &sorters {
        assert!(verify_sorts_binary(net).unwrap().sorts());
        let mut perm: Vec<usize> = (0..net.width()).collect();
        for _ in 0..10_000 {
            perm.shuffle(&mut rng);
            assert!(is_sorted(&net.apply(&perm).unwrap()));
        }
    }
    for net in corpus() {
        if let Verdict::Counterexample(bad) = verify_sorts_binary(&net).unwrap() {
            let perm = counterexample_permutation(&net, &bad).unwrap();
            assert!(!is_sorted(&net.apply(&perm).unwrap()));
        }
    }
}

#[test]
fn sliced_and_naive_modes_agree() {
    let naive = Verifier::naive();
    let sliced = Verifier::default();
    let nets = corpus();
    let mut sorting = 0;
    for net in &nets {
        let v = sliced.verify(net).unwrap();
        sorting += usize::from(v.sorts());
        assert_eq!(v, naive.verify(net).unwrap());
        assert_eq!(sliced.infer_poset(net), naive.infer_poset(net));
    }
    assert!(sorting > 0 && sorting < nets.len());
}

#[test]
fn asap_depth_is_the_longest_chain() {
    for net in corpus().iter().chain([green16(), van_voorhis16()].iter()) {
        let sched = asap_schedule(net);
        assert!(sched.is_valid_for(net));
        assert_eq!(sched.depth(), longest_chain(net));
    }
}

#[test]
fn sorter_posets_are_total_and_all_posets_are_orders() {
    for net in corpus() {
        let p = infer_poset(&net).unwrap();
        assert!(p.is_reflexive());
        assert!(p.is_transitive());
        if verify_sorts_binary(&net).unwrap().sorts() {
            assert_eq!(p, Poset::chain(net.width()));
        }
    }
}

#[test]
fn text_round_trip_on_seeded_corpus() {
    for net in corpus() {
        assert_eq!(parse_text(&render_text(&net)).unwrap(), net);
    }
}

#[test]
fn hasse_reduction_then_closure_is_identity() {
    for net in corpus() {
        let p = infer_poset(&net).unwrap();
        assert_eq!(Poset::closure(p.len(), &p.hasse_edges()), p.relation());
    }
}

fn arb_network() -> impl Strategy<Value = Network> {
    (2usize..=10).prop_flat_map(|width| {
        prop::collection::vec((0..width, 0..width, proptest::option::of(0usize..9)), 0..30)
            .prop_map(move |raw| {
                let cs = raw
                    .into_iter()
                    .filter(|(a, b, _)| a != b)
                    .map(|(a, b, t)| Comparator {
                        low: a.min(b),
                        high: a.max(b),
                        tag: t.map(|t| PhaseTag::ALL[t]),
                    })
                    .collect();
                Network::new(width, cs).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn round_trip(net in arb_network()) {
        prop_assert_eq!(parse_text(&render_text(&net)).unwrap(), net);
    }

    #[test]
    fn poset_is_an_order(net in arb_network()) {
        let p = infer_poset(&net).unwrap();
        prop_assert!(p.is_reflexive() && p.is_transitive());
        prop_assert_eq!(Poset::closure(p.len(), &p.hasse_edges()), p.relation().to_vec());
    }

    #[test]
    fn output_is_a_permutation(net in arb_network(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let input: Vec<u8> = (0..net.width()).map(|_| rng.gen_range(0..5)).collect();
        let mut out = net.apply(&input).unwrap();
        let mut expected = input;
        out.sort_unstable();
        expected.sort_unstable();
        prop_assert_eq!(out, expected);
    }
}
