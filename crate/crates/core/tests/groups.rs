use std::collections::{HashSet, VecDeque};

use etcensus_core::group::{
    coset_action, corefree_subgroups_of_index, subgroups_up_to_conjugacy, PermGroup,
};
use etcensus_core::perm::Permutation;
use proptest::prelude::*;

/// Element set by breadth-first multiplication, independent of the stabilizer chain.
fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Vec<usize>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g.image(i)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn corpus(max_degree: usize) -> Vec<PermGroup> {
    (1..=max_degree)
        .flat_map(|n| {
            subgroups_up_to_conjugacy(&PermGroup::symmetric(n), 10_000)
                .unwrap()
                .into_iter()
                .map(|c| c.representative)
        })
        .collect()
}

#[test]
fn orbit_stabilizer_on_corpus() {
    let groups = corpus(6);
    assert!(groups.len() >= 50);
    for g in &groups {
        for x in 0..g.degree() {
            let orbit = g.orbit(x).unwrap().len() as u128;
            assert_eq!(orbit * g.stabilizer(x).unwrap().order(), g.order());
        }
    }
}

#[test]
fn chain_order_equals_closure_count() {
    let groups = corpus(7);
    assert_eq!(groups.len(), 1 + 2 + 4 + 11 + 19 + 56 + 96);
    for g in groups.iter().filter(|g| g.order() <= 10_000) {
        let elems = closure(g.degree(), g.generators());
        assert_eq!(elems.len() as u128, g.order());
        for e in g.elements(10_000).unwrap() {
            assert!(elems.contains(&(0..g.degree()).map(|i| e.image(i)).collect::<Vec<_>>()));
        }
    }
}

#[test]
fn subgroup_class_counts_of_small_symmetric_groups() {
    let counts: Vec<usize> = (1..=6)
        .map(|n| subgroups_up_to_conjugacy(&PermGroup::symmetric(n), 1000).unwrap().len())
        .collect();
    assert_eq!(counts, [1, 2, 4, 11, 19, 56]);
}

fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images(images.to_vec()).unwrap()
}

#[test]
fn alternating_four_on_six_cosets() {
    let a4 = PermGroup::new(4, vec![perm(&[1, 2, 0, 3]), perm(&[1, 0, 3, 2])]).unwrap();
    assert_eq!(a4.order(), 12);
    let subs = corefree_subgroups_of_index(&a4, 6, 1000).unwrap();
    assert_eq!(subs.len(), 1);
    let action = coset_action(&a4, &subs[0]).unwrap();
    assert!(action.is_faithful());
    let combined = action.combined_group();
    let gu = combined.stabilizer(0).unwrap();
    let lengths: Vec<usize> = gu
        .orbits()
        .into_iter()
        .filter(|o| o[0] >= 4)
        .map(|o| o.len())
        .collect();
    assert_eq!(lengths, [3, 3]);
}

#[test]
fn symmetric_four_on_six_cosets() {
    let s4 = PermGroup::symmetric(4);
    let order4 = subgroups_up_to_conjugacy(&s4, 100)
        .unwrap()
        .into_iter()
        .filter(|c| c.order == 4)
        .count();
    assert_eq!(order4, 3);
    let subs = corefree_subgroups_of_index(&s4, 6, 100).unwrap();
    assert_eq!(subs.len(), 2);
    let mut lengths: Vec<Vec<usize>> = subs
        .iter()
        .map(|h| {
            let combined = coset_action(&s4, h).unwrap().combined_group();
            let mut l: Vec<usize> = combined
                .stabilizer(0)
                .unwrap()
                .orbits()
                .into_iter()
                .filter(|o| o[0] >= 4)
                .map(|o| o.len())
                .collect();
            l.sort_unstable();
            l
        })
        .collect();
    lengths.sort();
    assert_eq!(lengths, [vec![3, 3], vec![6]]);
}

fn arb_perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree)
        .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn arb_pair(max_degree: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_degree).prop_flat_map(|n| {
        let p = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (p.clone(), p).prop_map(|(a, b)| {
            (
                Permutation::from_images(a).unwrap(),
                Permutation::from_images(b).unwrap(),
            )
        })
    })
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn permutation_laws(p in arb_perm(9)) {
        let n = p.degree();
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert_eq!(p.pow(p.order()), Permutation::identity(n));
        prop_assert_eq!(p.order(), p.cycle_type().iter().fold(1, |a, &c| lcm(a, c as u64)));
        prop_assert_eq!(p.cycle_type().iter().sum::<usize>(), n);
        prop_assert_eq!(Permutation::parse_cycles(&p.to_string(), n).unwrap(), p);
    }

    #[test]
    fn composition_and_conjugation((p, q) in arb_pair(9)) {
        for i in 0..p.degree() {
            prop_assert_eq!(p.then(&q).image(i), q.image(p.image(i)));
        }
        prop_assert_eq!(p.conjugate_by(&q).cycle_type(), p.cycle_type());
        prop_assert_eq!(p.then(&q).inverse(), q.inverse().then(&p.inverse()));
    }

    #[test]
    fn random_groups_match_closure((p, q) in arb_pair(7)) {
        let n = p.degree();
        let g = PermGroup::new(n, vec![p.clone(), q.clone()]).unwrap();
        let elems = closure(n, &[p, q]);
        prop_assert_eq!(elems.len() as u128, g.order());
        for x in 0..n {
            prop_assert_eq!(
                g.orbit(x).unwrap().len() as u128 * g.stabilizer(x).unwrap().order(),
                g.order()
            );
        }
    }

    #[test]
    fn membership_matches_closure((p, q) in arb_pair(6), r in any::<prop::sample::Index>()) {
        let n = p.degree();
        let g = PermGroup::new(n, vec![p.clone(), q]).unwrap();
        let sym = PermGroup::symmetric(n).elements(1000).unwrap();
        let x = &sym[r.index(sym.len())];
        let elems = closure(n, g.generators());
        let key: Vec<usize> = (0..n).map(|i| x.image(i)).collect();
        prop_assert_eq!(g.contains(x), elems.contains(&key));
    }
}
