//! Independent computation through the bar involution.
//!
//! The R-polynomials describe the bar involution on the standard basis; the
//! self-dual basis element for `w` is the unique solution of the triangular
//! system `q^{l(w)-l(x)} P̄_{x,w} - P_{x,w} = Σ_{x<y≤w} R_{x,y} P_{y,w}` with
//! `deg P_{x,w} ≤ (l(w)-l(x)-1)/2`.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::Mutex;

use crate::group::{rank_of, Group};
use crate::poly::{add_scaled, mul, trim, KlPolynomial};
use crate::KlError;

pub const MAX_ORACLE_SIZE: usize = 6;

pub(crate) struct Oracle {
    group: Group,
    /// `r[w * order + x]`.
    r: Vec<Vec<i64>>,
    columns: Mutex<HashMap<u32, Arc<HashMap<u32, Vec<i64>>>>>,
}

impl Oracle {
    pub fn new(n: usize) -> Self {
        let group = Group::new(n);
        let order = group.order;
        let mut by_len: Vec<u32> = (0..order as u32).collect();
        by_len.sort_by_key(|&w| group.len[w as usize]);
        let mut r = vec![Vec::new(); order * order];
        for &w in &by_len {
            let wu = w as usize;
            if w == group.identity() {
                r[wu * order + wu] = vec![1];
                continue;
            }
            let s = group.dr[wu].trailing_zeros() as usize;
            let v = group.rmul(s, w) as usize;
            for x in 0..order as u32 {
                let xs = group.rmul(s, x) as usize;
                let xu = x as usize;
                let val = if group.dr[xu] & (1 << s) != 0 {
                    r[v * order + xs].clone()
                } else {
                    // (q - 1) R_{x,v} + q R_{xs,v}
                    let mut p = mul(&[-1, 1], &r[v * order + xu]);
                    add_scaled(&mut p, &r[v * order + xs], 1, 1);
                    trim(&mut p);
                    p
                };
                r[wu * order + xu] = val;
            }
        }
        Oracle { group, r, columns: Mutex::new(HashMap::new()) }
    }

    fn column(&self, w: u32) -> Arc<HashMap<u32, Vec<i64>>> {
        if let Some(c) = self.columns.lock().get(&w) {
            return c.clone();
        }
        let g = &self.group;
        let order = g.order;
        let r = |x: u32, y: u32| &self.r[y as usize * order + x as usize];
        let mut below: Vec<u32> = (0..order as u32).filter(|&x| !r(x, w).is_empty()).collect();
        below.sort_by_key(|&x| std::cmp::Reverse(g.len[x as usize]));
        let len_w = g.len[w as usize] as usize;
        let mut p: HashMap<u32, Vec<i64>> = HashMap::new();
        for &x in &below {
            if x == w {
                p.insert(x, vec![1]);
                continue;
            }
            let mut sum = Vec::new();
            for (&y, py) in &p {
                let rxy = r(x, y);
                if !rxy.is_empty() {
                    let prod = mul(rxy, py);
                    add_scaled(&mut sum, &prod, 1, 0);
                }
            }
            let d = len_w - g.len[x as usize] as usize;
            let keep = (d - 1) / 2 + 1;
            sum.truncate(keep);
            let mut val: Vec<i64> = sum.iter().map(|c| -c).collect();
            trim(&mut val);
            p.insert(x, val);
        }
        let col = Arc::new(p);
        self.columns.lock().insert(w, col.clone());
        col
    }

    pub fn polynomial(&self, x: &[u8], w: &[u8]) -> Result<KlPolynomial, KlError> {
        if x.len() != self.group.n || w.len() != self.group.n {
            return Err(KlError::SizeMismatch { left: x.len(), right: w.len() });
        }
        let col = self.column(rank_of(w));
        Ok(KlPolynomial::from_coeffs(col.get(&rank_of(x)).cloned().unwrap_or_default()))
    }
}
