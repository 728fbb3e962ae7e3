use msq_perm::Permutation;

use crate::{CosetMatrix, IdentityError};

/// All ordered tuples `(σ₁,…,σ_m)` with `P_{σ₁}+…+P_{σ_m} = M`.
pub fn birkhoff_decompositions(mat: &CosetMatrix) -> Vec<Vec<Permutation>> {
    let k = mat.k();
    let mut rest: Vec<Vec<usize>> = mat.to_rows();
    let mut out = Vec::new();
    let mut acc = Vec::new();
    peel(&mut rest, mat.m(), k, &mut acc, &mut out);
    out
}

fn peel(rest: &mut [Vec<usize>], left: usize, k: usize, acc: &mut Vec<Permutation>, out: &mut Vec<Vec<Permutation>>) {
    if left == 0 {
        out.push(acc.clone());
        return;
    }
    let mut word = Vec::with_capacity(k);
    let mut used = vec![false; k];
    matchings(rest, 0, k, &mut used, &mut word, &mut |rest, word| {
        acc.push(Permutation::new(word.iter().map(|j| j + 1).collect()).expect("a matching"));
        peel(rest, left - 1, k, acc, out);
        acc.pop();
    });
}

fn matchings(
    rest: &mut [Vec<usize>],
    i: usize,
    k: usize,
    used: &mut [bool],
    word: &mut Vec<usize>,
    f: &mut dyn FnMut(&mut [Vec<usize>], &[usize]),
) {
    if i == k {
        let w = word.clone();
        f(rest, &w);
        return;
    }
    for j in 0..k {
        if used[j] || rest[i][j] == 0 {
            continue;
        }
        used[j] = true;
        rest[i][j] -= 1;
        word.push(j);
        matchings(rest, i + 1, k, used, word, f);
        word.pop();
        rest[i][j] += 1;
        used[j] = false;
    }
}

/// `Σ sgn(σ₁)⋯sgn(σ_m)` over all decompositions, i.e. `Σ sgn τ` over
/// `τ ∈ HxH ∩ K`.
pub fn signed_decomposition_count(mat: &CosetMatrix) -> i64 {
    birkhoff_decompositions(mat).iter().map(|d| d.iter().map(Permutation::sign).product::<i64>()).sum()
}

/// Classes of rows under `i ~ j` when some column has `M(i,l) = M(j,l) = 1`.
pub fn coset_classes(mat: &CosetMatrix) -> Vec<Vec<usize>> {
    let k = mat.k();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for l in 0..k {
        let ones: Vec<usize> = (0..k).filter(|&i| mat.get(i, l) == 1).collect();
        for w in ones.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; k];
    for i in 0..k {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(i + 1);
    }
    classes
}

/// `sgn σ · 2^r` for the class `σ₂⁻¹σ₁` of a two-term decomposition, read
/// off the row classes.
pub fn class_value(mat: &CosetMatrix) -> Result<i64, IdentityError> {
    if mat.m() != 2 {
        return Err(IdentityError::NeedsTwo(mat.m()));
    }
    let classes = coset_classes(mat);
    let r = classes.iter().filter(|c| c.len() > 1).count();
    let odd = classes.iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
    let sign: i64 = if odd { -1 } else { 1 };
    Ok(sign << r)
}

/// Even minus odd Latin squares of order `m`; the sign of a square is the
/// product of the signs of its rows and columns.
pub fn latin_square_delta(m: usize) -> Result<i64, IdentityError> {
    if m == 0 || m > 4 {
        return Err(IdentityError::LatinOrder(m));
    }
    let perms: Vec<Permutation> = Permutation::all(m).collect();
    let mut rows: Vec<usize> = Vec::new();
    let mut total = 0i64;
    extend_square(&perms, m, &mut rows, &mut total);
    Ok(total)
}

fn extend_square(perms: &[Permutation], m: usize, rows: &mut Vec<usize>, total: &mut i64) {
    if rows.len() == m {
        let row_sign: i64 = rows.iter().map(|&r| perms[r].sign()).product();
        let col_sign: i64 = (1..=m)
            .map(|c| Permutation::new(rows.iter().map(|&r| perms[r].get(c)).collect()).expect("Latin column").sign())
            .product();
        *total += row_sign * col_sign;
        return;
    }
    for (idx, p) in perms.iter().enumerate() {
        if rows.iter().all(|&r| (1..=m).all(|c| perms[r].get(c) != p.get(c))) {
            rows.push(idx);
            extend_square(perms, m, rows, total);
            rows.pop();
        }
    }
}
