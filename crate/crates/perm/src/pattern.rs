use itertools::Itertools;

use crate::{PermError, Permutation};

/// First (lexicographic) position set at which `sigma` contains `pattern`.
pub fn contains_pattern(sigma: &Permutation, pattern: &Permutation) -> Option<Vec<usize>> {
    let l = pattern.size();
    let w = sigma.as_bytes();
    let pat = pattern.as_bytes();
    (0..sigma.size()).combinations(l).find_map(|idx| {
        let order_matches = (0..l).all(|a| (a + 1..l).all(|b| (w[idx[a]] < w[idx[b]]) == (pat[a] < pat[b])));
        order_matches.then(|| idx.iter().map(|i| i + 1).collect())
    })
}

pub fn avoids_patterns(sigma: &Permutation, patterns: &[Permutation]) -> bool {
    patterns.iter().all(|p| contains_pattern(sigma, p).is_none())
}

/// Removes the entries `(i, σ(i))`, `i ∈ removed`, and renumbers what is left.
pub fn flatten(sigma: &Permutation, removed: &[usize]) -> Result<Permutation, PermError> {
    let k = sigma.size();
    if let Some(&bad) = removed.iter().find(|&&i| i == 0 || i > k) {
        return Err(PermError::IndexOutOfRange { index: bad, k });
    }
    let mut drop_pos = vec![false; k + 1];
    let mut drop_val = vec![false; k + 1];
    for &i in removed {
        drop_pos[i] = true;
        drop_val[sigma.get(i)] = true;
    }
    // new label of each surviving value
    let mut relabel = vec![0u8; k + 1];
    let mut next = 0u8;
    for v in 1..=k {
        if !drop_val[v] {
            next += 1;
            relabel[v] = next;
        }
    }
    let word = (1..=k).filter(|&i| !drop_pos[i]).map(|i| relabel[sigma.get(i)]).collect();
    Ok(Permutation::from_bytes_unchecked(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn pattern_examples() {
        let forbidden = [p("4231"), p("3412")];
        assert!(avoids_patterns(&Permutation::identity(4), &forbidden));
        assert!(!avoids_patterns(&p("3412"), &forbidden));
        assert_eq!(contains_pattern(&p("4231"), &p("213")), None);
        assert!(avoids_patterns(&p("4231"), &[p("213")]));
        assert_eq!(contains_pattern(&p("4231"), &p("231")), Some(vec![2, 3, 4]));
        assert_eq!(contains_pattern(&p("52341"), &p("4231")), Some(vec![1, 2, 3, 5]));
    }

    #[test]
    fn flatten_examples() {
        let s = p("4231");
        assert_eq!(flatten(&s, &[]).unwrap(), s);
        assert_eq!(flatten(&s, &[2]).unwrap(), p("321"));
        assert_eq!(flatten(&s, &[1, 4]).unwrap(), p("12"));
        assert!(flatten(&s, &[5]).is_err());
    }
}
