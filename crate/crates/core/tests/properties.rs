use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use proptest::prelude::*;
use rayon::prelude::*;

use arcconn::canon::canonical_form;
use arcconn::connectivity::{lambda_prime_bruteforce, lambda_prime_exact};
use arcconn::families::params_with_order;
use arcconn::verify::{oriented_count, oriented_from_index, run_sweep, SweepFilters, SweepSpec};
use arcconn::{
    arc_connectivity, cycles_of_length, family_census, generate, girth, lambda_prime_exists,
    match_family, xi, DefinitionReading, Digraph, Family, VertexSet,
};

fn arb_oriented(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Digraph> {
    n.prop_flat_map(|n| {
        proptest::collection::vec(0u8..3, n * (n - 1) / 2).prop_map(move |states| {
            let pairs = (0..n).tuple_combinations::<(usize, usize)>();
            let arcs = pairs.zip(states).filter_map(|((i, j), s)| match s {
                1 => Some((i, j)),
                2 => Some((j, i)),
                _ => None,
            });
            Digraph::build(n, arcs).unwrap()
        })
    })
}

fn arb_strong(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Digraph> {
    arb_oriented(n).prop_filter("strong", |d| d.is_strong())
}

fn arb_with_perm(
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    arb_strong(n).prop_flat_map(|d| {
        let n = d.n();
        (Just(d), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Components as the classes of mutual reachability.
fn components_oracle(d: &Digraph) -> BTreeSet<VertexSet> {
    let reach: Vec<VertexSet> = (0..d.n()).map(|v| d.reachable_from(v)).collect();
    (0..d.n())
        .map(|v| {
            (0..d.n())
                .filter(|&w| reach[v].contains(w) && reach[w].contains(v))
                .collect()
        })
        .collect()
}

/// Directed cycles of length `k` as vertex sequences starting at their minimum.
fn cycles_oracle(d: &Digraph, k: usize) -> BTreeSet<Vec<usize>> {
    (0..d.n())
        .permutations(k)
        .filter(|p| p[0] == *p.iter().min().unwrap())
        .filter(|p| (0..k).all(|i| d.has_arc(p[i], p[(i + 1) % k])))
        .collect()
}

fn min_out_cut(d: &Digraph) -> usize {
    let full = (1u64 << d.n()) - 1;
    (1..full)
        .map(|m| d.out_cut(VertexSet::from_mask(m)).unwrap().len())
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parameters_survive_relabelling((d, perm) in arb_with_perm(2..=7)) {
        let e = d.relabel(&perm);
        prop_assert_eq!(girth(&d), girth(&e));
        prop_assert_eq!(arc_connectivity(&d).unwrap(), arc_connectivity(&e).unwrap());
        if girth(&d).is_some() {
            prop_assert_eq!(xi(&d).unwrap().value, xi(&e).unwrap().value);
            prop_assert_eq!(lambda_prime_exists(&d).unwrap().is_some(), lambda_prime_exists(&e).unwrap().is_some());
            for reading in DefinitionReading::ALL {
                let a = lambda_prime_exact(&d, reading).unwrap();
                let b = lambda_prime_exact(&e, reading).unwrap();
                prop_assert_eq!(a.value(), b.value());
                prop_assert_eq!(a.is_connected(), b.is_connected());
            }
            prop_assert_eq!(match_family(&d).map(|m| m.family), match_family(&e).map(|m| m.family));
        }
    }

    #[test]
    fn parameters_survive_reversal(d in arb_strong(2..=7)) {
        let r = d.reverse();
        prop_assert_eq!(girth(&d), girth(&r));
        prop_assert_eq!(arc_connectivity(&d).unwrap(), arc_connectivity(&r).unwrap());
        if girth(&d).is_some() {
            prop_assert_eq!(xi(&d).unwrap().value, xi(&r).unwrap().value);
            prop_assert_eq!(lambda_prime_exists(&d).unwrap().is_some(), lambda_prime_exists(&r).unwrap().is_some());
            let a = lambda_prime_exact(&d, DefinitionReading::OriginalHost).unwrap();
            let b = lambda_prime_exact(&r, DefinitionReading::OriginalHost).unwrap();
            prop_assert_eq!(a.value(), b.value());
        }
    }

    #[test]
    fn components_match_reachability(d in arb_oriented(1..=6)) {
        let got: BTreeSet<VertexSet> = d.strong_components().into_iter().collect();
        prop_assert_eq!(got, components_oracle(&d));
        prop_assert_eq!(d.is_strong(), components_oracle(&d).len() == 1);
    }

    #[test]
    fn cycles_match_permutation_search(d in arb_oriented(3..=7), k in 3usize..=5) {
        let got: BTreeSet<Vec<usize>> = cycles_of_length(&d, k).iter().map(|c| c.vertices().to_vec()).collect();
        prop_assert_eq!(got, cycles_oracle(&d, k));
    }

    #[test]
    fn lambda_is_the_smallest_out_cut(d in arb_strong(2..=6)) {
        prop_assert_eq!(arc_connectivity(&d).unwrap(), min_out_cut(&d));
    }

    #[test]
    fn exact_matches_bruteforce(d in arb_strong(3..=6)) {
        for reading in DefinitionReading::ALL {
            let exact = lambda_prime_exact(&d, reading).unwrap();
            let brute = lambda_prime_bruteforce(&d, d.arc_count(), reading).unwrap();
            prop_assert_eq!(exact.value(), brute.value());
            prop_assert_eq!(exact.is_connected(), brute.is_connected());
            if let Some(cut) = exact.cut() {
                prop_assert!(cut.validate(&d, reading));
            }
        }
    }
}

#[test]
fn girth_cycle_criterion_on_every_strong_graph_up_to_five() {
    let spec = SweepSpec {
        filters: SweepFilters {
            require_strong: true,
            girth: None,
        },
        ..SweepSpec::exhaustive(2, 5)
    };
    let r = run_sweep(&spec).unwrap();
    assert_eq!(r.summary.checked, r.summary.strong);
    assert_eq!(
        r.summary.characterization.fail,
        0,
        "{:?}",
        r.counterexamples.first()
    );
    assert_eq!(r.summary.characterization.pass, r.summary.checked);
}

#[test]
fn members_of_order_six_to_eight_are_not_lambda_prime_connected() {
    for family in Family::ALL {
        for n in 6..=8 {
            for p in params_with_order(family, n) {
                let d = generate(&p).unwrap();
                for reading in DefinitionReading::ALL {
                    assert!(
                        !lambda_prime_exact(&d, reading).unwrap().is_connected(),
                        "{p}"
                    );
                }
                assert!(lambda_prime_exists(&d).unwrap().is_none(), "{p}");
            }
        }
    }
}

#[test]
fn generated_members_are_recognized_in_their_family_up_to_eight() {
    for family in Family::ALL {
        for n in 4..=8 {
            for p in params_with_order(family, n) {
                let d = generate(&p).unwrap();
                let m =
                    arcconn::families::match_in_family(&d, family).unwrap_or_else(|| panic!("{p}"));
                let image = generate(&m.params).unwrap();
                assert_eq!(canonical_form(&image), canonical_form(&d), "{p}");
                assert!(match_family(&d).is_some(), "{p}");
            }
        }
    }
}

/// Isomorphism classes among matched labelled graphs equal the census.
fn census_agrees_with_recognition(n: usize) {
    let census: HashSet<Digraph> = family_census(n).into_iter().map(|e| e.digraph).collect();
    let seen: HashSet<Digraph> = (0..oriented_count(n).unwrap())
        .into_par_iter()
        .map(|i| oriented_from_index(n, i))
        .filter(|d| d.is_strong() && girth(d) == Some(4) && match_family(d).is_some())
        .map(|d| canonical_form(&d))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    assert_eq!(seen, census);
}

#[test]
fn census_agrees_with_recognition_at_five() {
    census_agrees_with_recognition(5);
}

#[test]
fn census_agrees_with_recognition_at_six() {
    census_agrees_with_recognition(6);
}
