use msq_multiseg::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seg(a: i64, b: i64) -> Segment {
    Segment::new(a, b).unwrap()
}

fn ms(s: &str) -> Multisegment {
    s.parse().unwrap()
}

fn random_multisegment(rng: &mut impl Rng, max_segments: usize, span: i64, max_len: i64) -> Multisegment {
    let k = rng.gen_range(0..=max_segments);
    Multisegment::new(
        (0..k)
            .map(|_| {
                let a = rng.gen_range(0..span);
                seg(a, a + rng.gen_range(0..max_len))
            })
            .collect(),
    )
}

fn arb_multisegment(max_segments: usize) -> impl Strategy<Value = Multisegment> {
    prop::collection::vec((-3i64..6, 0i64..4), 0..=max_segments)
        .prop_map(|v| Multisegment::new(v.into_iter().map(|(a, l)| seg(a, a + l)).collect()))
}

#[test]
fn precedence_matches_set_definition() {
    // b(Δ1) ∉ Δ2, b(←Δ2) ∈ Δ1, e(Δ2) ∉ Δ1
    for a1 in -4..4 {
        for b1 in a1..5 {
            for a2 in -4..4 {
                for b2 in a2..5 {
                    let (d1, d2) = (seg(a1, b1), seg(a2, b2));
                    let set_form = !d2.contains(a1) && d1.contains(a2 - 1) && !d1.contains(b2);
                    assert_eq!(precedes(&d1, &d2), set_form, "{d1} {d2}");
                }
            }
        }
    }
}

#[test]
fn involution_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 10_000 {
        let m = random_multisegment(&mut rng, 8, 8, 5);
        if m.deg() > 20 {
            continue;
        }
        checked += 1;
        let t = involution(&m);
        assert_eq!(involution(&t), m, "{m} -> {t}");
        assert_eq!(t.deg(), m.deg());
        assert_eq!(t.supp(), m.supp());
        assert_eq!(involution(&m.dual()), t.dual(), "{m}");
    }
}

#[test]
fn involution_known_values() {
    // by hand from the chain recursion
    assert_eq!(involution(&ms("[2,3]+[1,2]")), ms("[2,3]+[1,2]"));
    assert_eq!(involution(&ms("[1,2]+[3,4]")), ms("[4]+[2,3]+[1]"));
    assert_eq!(involution(&ms("[1,3]")), ms("[1]+[2]+[3]"));
    assert_eq!(involution(&ms("[4,5]+[2,4]+[3]+[1,2]")), ms("[4,5]+[2,4]+[3]+[1,2]"));
}

#[test]
fn contraction_inverts_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let m = random_multisegment(&mut rng, 6, 8, 4);
        let c = rng.gen_range(-1..9);
        let e = m.expand_at(c);
        assert_eq!(e.contract(c), Some(m.clone()), "{m} at {c}");
        assert_eq!(e.is_regular(), m.is_regular());
    }
}

#[test]
fn dual_preserves_link_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let m = random_multisegment(&mut rng, 6, 8, 4);
        let d = m.dual();
        assert_eq!(d.dual(), m);
        assert_eq!(d.is_regular(), m.is_regular());
        assert_eq!(link_data(&d, None).x.len(), link_data(&m, None).x.len());
        assert_eq!(link_data(&d, None).xt.len(), link_data(&m, None).xt.len());
    }
}

#[test]
fn detachable_examples() {
    let m = ms("[4,5]+[2,4]+[3]+[1,2]");
    let det = detachable_segments(&m);
    assert!(det.contains(&0));
    assert!(!det.contains(&1));
    let spread = ms("[1,2]+[5,6]+[9]");
    assert_eq!(detachable_segments(&spread), vec![0, 1, 2]);
}

#[test]
fn elementary_moves_examples() {
    assert!(ms("[1,2]+[5,6]").elementary_moves().is_empty());
    assert_eq!(ms("[1]+[2]").elementary_moves(), vec![ms("[1,2]")]);
    let moves = ms("[2,5]+[1,4]").elementary_moves();
    assert_eq!(moves, vec![ms("[1,5]+[2,4]")]);
    assert!(obt_leq(&ms("[1,5]+[2,4]"), &ms("[2,5]+[1,4]")));
    assert!(!obt_leq(&ms("[2,5]+[1,4]"), &ms("[1,5]+[2,4]")));
    assert!(obt_leq(&ms("[1,3]"), &ms("[1]+[2]+[3]")));
    assert!(obt_leq(&ms("[1,2]+[2,3]"), &ms("[1]+[2]+[2]+[3]")));
}

/// Derivative at `c` from the explicit special cases with at most two
/// segments beginning at `c` and one at `c + 1`.
fn special_case_derivative(m: &Multisegment, c: i64) -> Option<Option<Multisegment>> {
    let lower: Vec<Segment> = m.segments().iter().copied().filter(|s| s.begin() == c).collect();
    let upper: Vec<Segment> = m.segments().iter().copied().filter(|s| s.begin() == c + 1).collect();
    let replace = |d: Segment| {
        let rest = m.without(d).unwrap();
        match d.drop_begin() {
            Some(e) => rest.with(e),
            None => rest,
        }
    };
    match (lower.len(), upper.len()) {
        (0, _) => Some(None),
        (1, _) => {
            let d = lower[0];
            if upper.iter().any(|u| d.precedes(u)) {
                Some(None)
            } else {
                Some(Some(replace(d)))
            }
        }
        (2, 1) => {
            let (s, l) = if lower[0].is_subset_of(&lower[1]) { (lower[0], lower[1]) } else { (lower[1], lower[0]) };
            l.precedes(&upper[0]).then(|| Some(replace(s)))
        }
        _ => None,
    }
}

#[test]
fn derivatives_agree_with_special_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    for _ in 0..5000 {
        let m = random_multisegment(&mut rng, 6, 5, 4);
        for c in 0..5 {
            if let Some(expected) = special_case_derivative(&m, c) {
                compared += 1;
                assert_eq!(left_derivative(&m, c).map(|x| x.0), expected, "{m} at {c}");
            }
        }
    }
    assert!(compared > 5000);
}

#[test]
fn derivative_witnesses_are_interchangeable() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..5000 {
        let m = random_multisegment(&mut rng, 6, 4, 3);
        for c in 0..4 {
            let ws = derivative_witnesses(&m, c);
            assert!(!ws.is_empty(), "{m} at {c}");
            let sums: Vec<Multisegment> = ws.iter().map(|w| m.restrict(&w.paired)).collect();
            assert!(sums.iter().all(|s| *s == sums[0]), "{m} at {c}: {ws:?}");
            let socles: Vec<Multisegment> = ws.iter().map(|w| socle_from(&m, c, w)).collect();
            assert!(socles.iter().all(|s| *s == socles[0]), "{m} at {c}");
        }
    }
}

fn socle_from(m: &Multisegment, c: i64, w: &DerivativeWitness) -> Multisegment {
    let free: Vec<usize> = (0..m.len()).filter(|&j| m.get(j).begin() == c + 1 && !w.targets.contains(&j)).collect();
    match free.iter().max_by_key(|&&j| m.get(j).end()) {
        None => m.with(Segment::point(c)),
        Some(&j) => m.without_index(j).with(m.get(j).extend_begin()),
    }
}

#[test]
fn socle_and_derivative_are_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..3000 {
        let m = random_multisegment(&mut rng, 6, 5, 4);
        for c in 0..5 {
            let mu = left_derivative(&m, c).map_or(0, |x| x.1);
            let base = left_derivative(&m, c).map_or(m.clone(), |x| x.0);
            assert_eq!(left_derivative(&base, c), None);
            assert_eq!(base.deg() + mu, m.deg());
            let mut back = base.clone();
            for _ in 0..mu {
                back = soc_with_cuspidal(c, &back);
            }
            assert_eq!(back, m, "rebuilding {m} at {c}");
            let up = soc_with_cuspidal(c, &m);
            assert_eq!(left_derivative(&up, c), Some((base, mu + 1)), "{m} at {c}");
        }
    }
}

#[test]
fn socle_special_cases() {
    assert_eq!(soc_with_cuspidal(1, &ms("[2,4]")), ms("[1,4]"));
    assert_eq!(soc_with_cuspidal(1, &ms("[2,4]+[1,2]")), ms("[2,4]+[1,2]+[1]"));
    assert_eq!(soc_with_cuspidal(1, &ms("[2,5]+[2,3]")), ms("[1,5]+[2,3]"));
    assert_eq!(soc_with_cuspidal(1, &ms("[2,5]+[2,3]+[1,2]")), ms("[1,5]+[2,3]+[1,2]"));
}

#[test]
fn right_derivative_mirrors_left() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..2000 {
        let m = random_multisegment(&mut rng, 5, 6, 4);
        for c in 0..9 {
            assert_eq!(right_derivative(&m, c), left_derivative(&m.dual(), -c).map(|(d, k)| (d.dual(), k)));
        }
    }
    assert_eq!(right_derivative(&ms("[1,3]"), 3), Some((ms("[1,2]"), 1)));
    assert_eq!(right_derivative(&ms("[1,3]+[2,4]"), 4), None);
}

#[test]
fn lc_condition_small_cases() {
    assert!(lc_condition(&ms("[1,2]"), &ms("[5,6]")));
    assert!(!lc_condition(&ms("[1]"), &ms("[2]")));
    // a segment and its left neighbour in either order
    assert!(lc_condition(&ms("[2,3]"), &ms("[1,2]")));
    assert!(!lc_condition(&ms("[1,2]"), &ms("[2,3]")));
}

proptest! {
    #[test]
    fn text_round_trip(m in arb_multisegment(8)) {
        prop_assert_eq!(m.to_string().parse::<Multisegment>().unwrap(), m);
    }

    #[test]
    fn moves_go_down(m in arb_multisegment(5)) {
        for n in m.elementary_moves() {
            prop_assert_eq!(n.deg(), m.deg());
            prop_assert_eq!(n.supp(), m.supp());
            prop_assert!(obt_leq(&n, &m));
            prop_assert!(!obt_leq(&m, &n));
            prop_assert!(link_data(&n, None).x.len() < link_data(&m, None).x.len());
        }
    }

    #[test]
    fn involution_preserves_degree(m in arb_multisegment(7)) {
        let t = involution(&m);
        prop_assert_eq!(t.deg(), m.deg());
        prop_assert_eq!(involution(&t), m);
    }
}
