//! Dense tables for `S_n`, elements indexed by lexicographic rank.

use itertools::Itertools;

pub(crate) struct Group {
    pub n: usize,
    pub order: usize,
    words: Vec<u8>,
    pub len: Vec<u8>,
    /// `rmul[s * order + x]` is the index of `x·s_{s+1}` (swap positions).
    rmul: Vec<u32>,
    /// `lmul[s * order + x]` is the index of `s_{s+1}·x` (swap values).
    lmul: Vec<u32>,
    /// Bit `s` set iff `s_{s+1}` is a right descent.
    pub dr: Vec<u16>,
    /// Bit `s` set iff `s_{s+1}` is a left descent.
    pub dl: Vec<u16>,
}

pub(crate) fn rank_of(word: &[u8]) -> u32 {
    let n = word.len();
    let mut r: u64 = 0;
    for i in 0..n {
        let smaller = word[i + 1..].iter().filter(|&&v| v < word[i]).count() as u64;
        r = r * (n - i) as u64 + smaller;
    }
    r as u32
}

impl Group {
    pub fn new(n: usize) -> Self {
        let words: Vec<u8> = (1..=n as u8).permutations(n).flatten().collect();
        let order: usize = (1..=n).product();
        let mut len = vec![0u8; order];
        let mut dr = vec![0u16; order];
        let mut dl = vec![0u16; order];
        let gens = n.saturating_sub(1);
        let mut rmul = vec![0u32; gens * order];
        let mut lmul = vec![0u32; gens * order];
        let mut buf = vec![0u8; n];
        let mut pos = vec![0usize; n + 1];
        for x in 0..order {
            let w = &words[x * n..(x + 1) * n];
            let mut l = 0u8;
            for i in 0..n {
                pos[w[i] as usize] = i;
                for j in i + 1..n {
                    if w[i] > w[j] {
                        l += 1;
                    }
                }
            }
            len[x] = l;
            for s in 0..gens {
                if w[s] > w[s + 1] {
                    dr[x] |= 1 << s;
                }
                if pos[s + 2] < pos[s + 1] {
                    dl[x] |= 1 << s;
                }
                buf.copy_from_slice(w);
                buf.swap(s, s + 1);
                rmul[s * order + x] = rank_of(&buf);
                buf.copy_from_slice(w);
                buf.swap(pos[s + 1], pos[s + 2]);
                lmul[s * order + x] = rank_of(&buf);
            }
        }
        Group { n, order, words, len, rmul, lmul, dr, dl }
    }

    pub fn word(&self, x: u32) -> &[u8] {
        let x = x as usize;
        &self.words[x * self.n..(x + 1) * self.n]
    }

    #[inline]
    pub fn rmul(&self, s: usize, x: u32) -> u32 {
        self.rmul[s * self.order + x as usize]
    }

    #[inline]
    pub fn lmul(&self, s: usize, x: u32) -> u32 {
        self.lmul[s * self.order + x as usize]
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Moves `x` up until its descent sets contain the given masks.
    #[inline]
    pub fn make_extremal(&self, mut x: u32, dl_mask: u16, dr_mask: u16) -> u32 {
        loop {
            let miss = dr_mask & !self.dr[x as usize];
            if miss != 0 {
                x = self.rmul(miss.trailing_zeros() as usize, x);
                continue;
            }
            let miss = dl_mask & !self.dl[x as usize];
            if miss != 0 {
                x = self.lmul(miss.trailing_zeros() as usize, x);
                continue;
            }
            return x;
        }
    }

    pub fn leq(&self, x: u32, w: u32) -> bool {
        msq_perm::bruhat_leq_unchecked(self.word(x), self.word(w))
    }

    /// Elements covered by `w` in the Bruhat order.
    pub fn lower_covers(&self, w: u32) -> Vec<u32> {
        let word = self.word(w);
        let n = self.n;
        let mut out = Vec::new();
        let mut buf = word.to_vec();
        for i in 0..n {
            for j in i + 1..n {
                if word[i] > word[j] && !(i + 1..j).any(|c| word[c] > word[j] && word[c] < word[i]) {
                    buf.swap(i, j);
                    out.push(rank_of(&buf));
                    buf.swap(i, j);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_consistent() {
        let g = Group::new(4);
        assert_eq!(g.order, 24);
        for x in 0..24u32 {
            assert_eq!(rank_of(g.word(x)), x);
            for s in 0..3 {
                assert_eq!(g.rmul(s, g.rmul(s, x)), x);
                assert_eq!(g.lmul(s, g.lmul(s, x)), x);
                let up = g.len[g.rmul(s, x) as usize] > g.len[x as usize];
                assert_eq!(up, g.dr[x as usize] & (1 << s) == 0);
                let up = g.len[g.lmul(s, x) as usize] > g.len[x as usize];
                assert_eq!(up, g.dl[x as usize] & (1 << s) == 0);
            }
        }
    }
}
