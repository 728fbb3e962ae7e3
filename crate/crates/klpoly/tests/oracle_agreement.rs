use msq_klpoly::*;
use msq_perm::{bruhat_leq, is_smooth_pair, Permutation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn engine_matches_oracle_exhaustively() {
    for n in 1..=5 {
        let all: Vec<_> = Permutation::all(n).collect();
        for w in &all {
            for x in &all {
                let p = kl_polynomial(x, w).unwrap();
                assert_eq!(p, kl_oracle(x, w).unwrap(), "x={x} w={w}");
                assert_eq!(p.is_zero(), !bruhat_leq(x, w).unwrap());
                assert!(p.coeffs().iter().all(|&c| c >= 0));
                if !p.is_zero() {
                    assert_eq!(p.coefficient(0), 1);
                }
                if x != w && !p.is_zero() {
                    let d = w.length() - x.length();
                    assert!(2 * p.degree().unwrap() < d, "degree bound fails at x={x} w={w}");
                }
            }
        }
    }
}

#[test]
fn engine_matches_oracle_on_random_pairs_in_s6() {
    let all: Vec<_> = Permutation::all(6).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let x = all.choose(&mut rng).unwrap();
        let w = all.choose(&mut rng).unwrap();
        assert_eq!(kl_polynomial(x, w).unwrap(), kl_oracle(x, w).unwrap(), "x={x} w={w}");
    }
    // pairs below a random w are the interesting ones
    for _ in 0..100 {
        let w = all.choose(&mut rng).unwrap();
        let below: Vec<_> = all.iter().filter(|x| bruhat_leq(x, w).unwrap()).collect();
        let x = below.choose(&mut rng).unwrap();
        assert_eq!(kl_polynomial(x, w).unwrap(), kl_oracle(x, w).unwrap(), "x={x} w={w}");
    }
}

#[test]
fn smooth_pairs_have_trivial_polynomials() {
    for n in 1..=5 {
        let all: Vec<_> = Permutation::all(n).collect();
        for w in &all {
            for s0 in &all {
                if !bruhat_leq(s0, w).unwrap() || !is_smooth_pair(s0, w).unwrap() {
                    continue;
                }
                for x in &all {
                    if bruhat_leq(s0, x).unwrap() && bruhat_leq(x, w).unwrap() {
                        assert!(kl_polynomial(x, w).unwrap().is_one(), "x={x} w={w}");
                    }
                }
            }
            let e = Permutation::identity(n);
            assert_eq!(kl_polynomial(&e, w).unwrap().is_one(), is_smooth_pair(&e, w).unwrap());
        }
    }
}

#[test]
fn concurrent_queries_agree() {
    let all: Vec<_> = Permutation::all(6).collect();
    let fresh = KlEngine::new(6).unwrap();
    let reference: Vec<KlPolynomial> =
        all.iter().step_by(7).map(|w| fresh.polynomial(&[1, 2, 3, 4, 5, 6], w.as_bytes()).unwrap()).collect();
    let shared = std::sync::Arc::new(KlEngine::new(6).unwrap());
    let handles: Vec<_> = (0..4)
        .map(|t| {
            let shared = shared.clone();
            let all = all.clone();
            std::thread::spawn(move || {
                let ws: Vec<_> = all.iter().step_by(7).collect();
                let order: Vec<usize> = if t % 2 == 0 { (0..ws.len()).collect() } else { (0..ws.len()).rev().collect() };
                let mut out = vec![KlPolynomial::zero(); ws.len()];
                for i in order {
                    out[i] = shared.polynomial(&[1, 2, 3, 4, 5, 6], ws[i].as_bytes()).unwrap();
                }
                out
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), reference);
    }
}

#[test]
fn single_column_in_s8_without_full_table() {
    let w: Permutation = "87654321".parse().unwrap();
    let e = Permutation::identity(8);
    let engine = KlEngine::new(8).unwrap();
    assert!(engine.polynomial(e.as_bytes(), w.as_bytes()).unwrap().is_one());
    let w: Permutation = "34127856".parse().unwrap();
    let p = engine.polynomial(e.as_bytes(), w.as_bytes()).unwrap();
    assert_eq!(p.coeffs(), &[1, 2, 1]);
    assert!(engine.cached_columns() < 40320 / 10);
}

#[test]
fn full_table_mode_matches_on_demand() {
    let full = KlEngine::new(5).unwrap();
    full.fill_all();
    assert_eq!(full.cached_columns(), 120);
    for w in Permutation::all(5) {
        for x in Permutation::all(5) {
            assert_eq!(full.polynomial(x.as_bytes(), w.as_bytes()).unwrap(), kl_polynomial(&x, &w).unwrap());
        }
    }
}
