use msq_perm::Permutation;

use crate::{interleave_word, BiSequence, BiseqError};

/// Balanced `X`/`Y` word in which no prefix has more `Y`s than `X`s.
pub fn is_dyck(w: &str) -> bool {
    let mut depth = 0i64;
    for c in w.chars() {
        match c {
            'X' => depth += 1,
            'Y' => depth -= 1,
            _ => return false,
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// All Dyck words with `k` letters of each kind, in lexicographic order.
pub fn dyck_words(k: usize) -> Vec<String> {
    fn go(k: usize, open: usize, close: usize, cur: &mut String, out: &mut Vec<String>) {
        if open == k && close == k {
            out.push(cur.clone());
            return;
        }
        if open < k {
            cur.push('X');
            go(k, open + 1, close, cur, out);
            cur.pop();
        }
        if close < open {
            cur.push('Y');
            go(k, open, close + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, 0, 0, &mut String::new(), &mut out);
    out
}

/// `a_i` is one past the position of the `i`-th `X` from the left and
/// `b_i` one before the position of the `i`-th `Y` from the right.
pub fn biseq_from_dyck(w: &str) -> Result<BiSequence, BiseqError> {
    if !is_dyck(w) {
        return Err(BiseqError::NotDyck(w.to_string()));
    }
    let chars: Vec<char> = w.chars().collect();
    let a = (0..chars.len()).filter(|&p| chars[p] == 'X').map(|p| p as i64 + 2).collect();
    let b = (0..chars.len()).rev().filter(|&p| chars[p] == 'Y').map(|p| p as i64).collect();
    BiSequence::new(a, b)
}

/// The word whose `i`-th `Y` from the right has `max_{j≥i} σ⁻¹(j)` `X`s
/// to its left.
pub fn dyck_from_perm(sigma: &Permutation) -> String {
    let k = sigma.size();
    let inv = sigma.inverse();
    let mut x = vec![0usize; k + 2];
    for i in (1..=k).rev() {
        x[i] = x[i + 1].max(inv.get(i));
    }
    let mut w = String::with_capacity(2 * k);
    let mut placed = 0;
    for i in (1..=k).rev() {
        while placed < x[i] {
            w.push('X');
            placed += 1;
        }
        w.push('Y');
    }
    w
}

pub fn perm_from_dyck(w: &str) -> Result<Permutation, BiseqError> {
    Ok(biseq_from_dyck(w)?.sigma0())
}

/// Begins as `X`, ends shifted by `3/2` as `Y`, read in increasing order.
pub fn dyck_from_biseq(a: &BiSequence) -> String {
    interleave_word(a.a().iter().copied(), a.b().iter().copied())
}
