//! Properties that span several modules.

use proptest::prelude::*;
use wilflab::equivalence::anchored_sets;
use wilflab::*;

fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (2usize..=max_n)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Super-strong equivalence forces equal F and A coefficients.
    #[test]
    fn ss_pairs_have_equal_truncated_series(u in arb_perm(5), pick in any::<prop::sample::Index>()) {
        let class = ss_class(&u);
        let v = pick.get(&class);
        let (len, norm) = (u.len() + 3, u.as_word().norm() + 6);
        prop_assert!(strong_truncated_equal(u.as_word(), v.as_word(), len, norm).unwrap());
        prop_assert!(wilf_truncated_equal(u.as_word(), v.as_word(), len, norm).unwrap());
    }

    /// The difference test and the cluster search agree on cross-equivalent pairs.
    #[test]
    fn profile_verdict_matches_cluster_search(u in arb_perm(6), pick in any::<prop::sample::Index>()) {
        let leaves = build_tree(&u).leaves();
        let v = pick.get(&leaves);
        let refuted = mcrt_witness_search(u.as_word(), v.as_word(), 2).unwrap().is_refuted();
        prop_assert_eq!(refuted, !ss_equivalent(&u, v).unwrap());
    }

    /// Every cluster of u realizes exactly its embedding set.
    #[test]
    fn cluster_embedding_sets_are_exact(u in arb_perm(5)) {
        for e in anchored_sets(u.len() - 1, 2) {
            let m = minimal_cluster(u.as_word(), &e).unwrap();
            prop_assert_eq!(embedding_set(u.as_word(), &m).unwrap(), e.positions().to_vec());
        }
    }

    /// Equal blocked counts for every letter and set characterize ss pairs.
    #[test]
    fn blocked_counts_follow_ss(u in arb_perm(5), pick in any::<prop::sample::Index>()) {
        let leaves = build_tree(&u).leaves();
        let v = pick.get(&leaves);
        let agree = anchored_sets(u.len() - 1, 3).all(|e| {
            (1..=u.len() as u32)
                .all(|i| blocked_count(&u, &e, i).unwrap() == blocked_count(v, &e, i).unwrap())
        });
        prop_assert_eq!(agree, ss_equivalent(&u, v).unwrap());
    }
}

#[test]
fn identity_and_near_identity_classes_are_closed_under_reversal() {
    for n in 3..=8 {
        let id = Permutation::identity(n);
        let class = ss_class(&id);
        assert!(class.iter().all(|w| class.contains(&w.reversal())));
        assert!(class
            .iter()
            .all(|w| reversal_class_kind(w) == ReversalClassKind::IdentityClass));

        // 12…(n-3)(n-1)(n-2)n
        let mut letters = id.letters().to_vec();
        letters.swap(n - 3, n - 2);
        let near = Permutation::new(letters).unwrap();
        let class = ss_class(&near);
        assert!(
            class.iter().all(|w| class.contains(&w.reversal())),
            "n = {n}"
        );
        assert!(class
            .iter()
            .all(|w| reversal_class_kind(w) == ReversalClassKind::NearIdentityClass));
    }
}
