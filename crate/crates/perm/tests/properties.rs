use std::collections::HashSet;

use msq_perm::*;
use proptest::prelude::*;

/// Elements below `sigma`, generated by repeatedly multiplying by
/// reflections that lower the length.
fn lower_interval(sigma: &Permutation) -> HashSet<Permutation> {
    let k = sigma.size();
    let mut seen = HashSet::from([sigma.clone()]);
    let mut stack = vec![sigma.clone()];
    while let Some(x) = stack.pop() {
        let lx = x.length();
        for i in 1..=k {
            for j in i + 1..=k {
                let y = x.swap_positions(i, j);
                if y.length() < lx && seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
    }
    seen
}

fn bubble_length(sigma: &Permutation) -> usize {
    let mut w = sigma.word();
    let mut swaps = 0;
    for pass in 0..w.len() {
        for i in 0..w.len().saturating_sub(pass + 1) {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                swaps += 1;
            }
        }
    }
    swaps
}

#[test]
fn bruhat_matches_reflection_closure() {
    for k in 1..=5 {
        for sigma in Permutation::all(k) {
            let below = lower_interval(&sigma);
            for tau in Permutation::all(k) {
                assert_eq!(bruhat_leq(&tau, &sigma).unwrap(), below.contains(&tau), "{tau} vs {sigma}");
            }
        }
    }
}

#[test]
fn length_matches_bubble_sort() {
    for k in 0..=6 {
        for sigma in Permutation::all(k) {
            assert_eq!(sigma.length(), bubble_length(&sigma));
        }
    }
}

#[test]
fn bruhat_is_graded_partial_order() {
    let all: Vec<_> = Permutation::all(4).collect();
    for a in &all {
        assert!(bruhat_leq(a, a).unwrap());
        for b in &all {
            let ab = bruhat_leq(a, b).unwrap();
            if ab {
                assert!(a.length() <= b.length());
                if a.length() == b.length() {
                    assert_eq!(a, b);
                }
                if bruhat_leq(b, a).unwrap() {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if bruhat_leq(b, c).unwrap() {
                        assert!(bruhat_leq(a, c).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn smoothness_matches_pattern_avoidance() {
    let forbidden = [Permutation::new(vec![4, 2, 3, 1]).unwrap(), Permutation::new(vec![3, 4, 1, 2]).unwrap()];
    for k in 1..=6 {
        for sigma in Permutation::all(k) {
            let e = Permutation::identity(k);
            assert_eq!(is_smooth_pair(&e, &sigma).unwrap(), avoids_patterns(&sigma, &forbidden), "{sigma}");
        }
    }
}

#[test]
fn smooth_pairs_stay_smooth_up_the_interval() {
    for k in 1..=5 {
        let all: Vec<_> = Permutation::all(k).collect();
        for sigma in &all {
            for s0 in &all {
                if !bruhat_leq(s0, sigma).unwrap() {
                    continue;
                }
                let d = smooth_pair_data(s0, sigma).unwrap();
                assert!(d.j_count >= sigma.length());
                assert_eq!(d.j_count, d.i_count + s0.length());
                assert_eq!(d.j_count, j_set(s0, sigma).unwrap().len());
                assert_eq!(d.i_count, i_set(s0, sigma).unwrap().len());
                if d.is_smooth {
                    for s1 in &all {
                        if bruhat_leq(s0, s1).unwrap() && bruhat_leq(s1, sigma).unwrap() {
                            assert!(is_smooth_pair(s1, sigma).unwrap(), "({sigma},{s1}) from ({sigma},{s0})");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn flattening_at_common_entry() {
    for k in 2..=5 {
        let all: Vec<_> = Permutation::all(k).collect();
        for sigma in &all {
            for s0 in &all {
                for i in 1..=k {
                    if sigma.get(i) != s0.get(i) {
                        continue;
                    }
                    let fs = flatten(sigma, &[i]).unwrap();
                    let f0 = flatten(s0, &[i]).unwrap();
                    let leq = bruhat_leq(s0, sigma).unwrap();
                    assert_eq!(leq, bruhat_leq(&f0, &fs).unwrap());
                    if leq && is_smooth_pair(s0, sigma).unwrap() {
                        assert!(is_smooth_pair(&f0, &fs).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn fixture_pairs_are_not_smooth() {
    for r in 2..=4 {
        for s in 2..=4 {
            for t in 1..=3 {
                let Ok((tau, delta)) = tau_delta(r, s, t) else {
                    assert!(t == 3 && s != 2);
                    continue;
                };
                assert!(bruhat_leq(&delta, &tau).unwrap());
                assert!(!is_smooth_pair(&delta, &tau).unwrap(), "r={r} s={s} t={t}");
            }
        }
    }
}

fn arb_perm(max_k: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_k).prop_flat_map(|k| Just((1..=k).collect::<Vec<_>>()).prop_shuffle()).prop_map(|w| Permutation::new(w).unwrap())
}

proptest! {
    #[test]
    fn inverse_is_involutive(s in arb_perm(12)) {
        prop_assert_eq!(s.inverse().inverse(), s.clone());
        prop_assert_eq!(s.inverse().length(), s.length());
        prop_assert!(s.compose(&s.inverse()).unwrap().is_identity());
    }

    #[test]
    fn text_round_trip(s in arb_perm(14)) {
        prop_assert_eq!(s.to_string().parse::<Permutation>().unwrap(), s.clone());
        prop_assert_eq!(s.to_compact().parse::<Permutation>().unwrap(), s.clone());
    }

    #[test]
    fn rank_matrix_agrees_with_bruhat(a in arb_perm(7), seed in any::<u64>()) {
        let k = a.size();
        let mut w: Vec<usize> = (1..=k).collect();
        let mut x = seed;
        for i in (1..k).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            w.swap(i, (x >> 33) as usize % (i + 1));
        }
        let b = Permutation::new(w).unwrap();
        prop_assert_eq!(a.rank_matrix().below(&b.rank_matrix()), bruhat_leq(&a, &b).unwrap());
    }
}
