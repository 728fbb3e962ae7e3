use std::collections::HashMap;
use std::io::{self, Read, Write};
use std::sync::Arc;

use parking_lot::RwLock;

use crate::group::{rank_of, Group};
use crate::poly::{add_scaled, trim, KlPolynomial};
use crate::KlError;

/// All `P_{x,w}` for one `w`, stored only at extremal `x`
/// (descent sets containing those of `w`).
pub struct Column {
    /// `(x, index into polys)`, sorted by `x`.
    entries: Vec<(u32, u32)>,
    polys: Vec<Vec<i64>>,
    /// `z < w` with `μ(z, w) ≠ 0`.
    mu: Vec<(u32, i64)>,
}

impl Column {
    fn lookup(&self, x: u32) -> &[i64] {
        match self.entries.binary_search_by_key(&x, |e| e.0) {
            Ok(i) => &self.polys[self.entries[i].1 as usize],
            Err(_) => &[],
        }
    }

    pub fn extremal_count(&self) -> usize {
        self.entries.len()
    }
}

/// Memoized KL engine for a fixed `S_n`.
pub struct KlEngine {
    group: Group,
    cache: RwLock<HashMap<u32, Arc<Column>>>,
}

const MAGIC: &[u8; 8] = b"MSQKLC\0\0";
const VERSION: u32 = 1;

impl KlEngine {
    pub fn new(n: usize) -> Result<Self, KlError> {
        if n > crate::MAX_ENGINE_SIZE {
            return Err(KlError::TooLarge { n, max: crate::MAX_ENGINE_SIZE });
        }
        Ok(KlEngine { group: Group::new(n), cache: RwLock::new(HashMap::new()) })
    }

    pub fn size(&self) -> usize {
        self.group.n
    }

    pub fn cached_columns(&self) -> usize {
        self.cache.read().len()
    }

    fn index(&self, word: &[u8]) -> Result<u32, KlError> {
        if word.len() != self.group.n {
            return Err(KlError::SizeMismatch { left: word.len(), right: self.group.n });
        }
        Ok(rank_of(word))
    }

    pub fn polynomial(&self, x: &[u8], w: &[u8]) -> Result<KlPolynomial, KlError> {
        let (xi, wi) = (self.index(x)?, self.index(w)?);
        Ok(KlPolynomial::from_coeffs(self.poly_idx(xi, wi)))
    }

    pub fn value_at_one(&self, x: &[u8], w: &[u8]) -> Result<i64, KlError> {
        Ok(self.polynomial(x, w)?.at_one())
    }

    /// `P_{x,w}(1)` for every `x ≤ w`.
    pub fn column_values_at_one(&self, w: &[u8]) -> Result<Vec<(Vec<u8>, i64)>, KlError> {
        let wi = self.index(w)?;
        let col = self.column(wi);
        let g = &self.group;
        let (dl, dr) = (g.dl[wi as usize], g.dr[wi as usize]);
        let mut out = Vec::new();
        for x in 0..g.order as u32 {
            if g.len[x as usize] <= g.len[wi as usize] && g.leq(x, wi) {
                let p = col.lookup(g.make_extremal(x, dl, dr));
                out.push((g.word(x).to_vec(), p.iter().sum()));
            }
        }
        Ok(out)
    }

    fn poly_idx(&self, x: u32, w: u32) -> Vec<i64> {
        let g = &self.group;
        if g.len[x as usize] > g.len[w as usize] {
            return Vec::new();
        }
        let col = self.column(w);
        col.lookup(g.make_extremal(x, g.dl[w as usize], g.dr[w as usize])).to_vec()
    }

    fn get(&self, w: u32) -> Option<Arc<Column>> {
        self.cache.read().get(&w).cloned()
    }

    fn first_descent(&self, w: u32) -> usize {
        self.group.dr[w as usize].trailing_zeros() as usize
    }

    /// Column of `w`, computing every column it depends on first.
    pub(crate) fn column(&self, w: u32) -> Arc<Column> {
        if let Some(c) = self.get(w) {
            return c;
        }
        let g = &self.group;
        let mut stack = vec![w];
        while let Some(&top) = stack.last() {
            if self.get(top).is_some() {
                stack.pop();
                continue;
            }
            if top == g.identity() {
                let col = Column { entries: vec![(top, 0)], polys: vec![vec![1]], mu: Vec::new() };
                self.cache.write().entry(top).or_insert_with(|| Arc::new(col));
                stack.pop();
                continue;
            }
            let s = self.first_descent(top);
            let v = g.rmul(s, top);
            let Some(col_v) = self.get(v) else {
                stack.push(v);
                continue;
            };
            let missing: Vec<u32> = col_v
                .mu
                .iter()
                .filter(|&&(z, _)| g.dr[z as usize] & (1 << s) != 0 && self.get(z).is_none())
                .map(|&(z, _)| z)
                .collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            let col = self.compute(top, s, v, &col_v);
            self.cache.write().entry(top).or_insert_with(|| Arc::new(col));
            stack.pop();
        }
        self.get(w).expect("column just computed")
    }

    fn compute(&self, w: u32, s: usize, v: u32, col_v: &Column) -> Column {
        let g = &self.group;
        let wu = w as usize;
        let (dl_w, dr_w) = (g.dl[wu], g.dr[wu]);
        let (dl_v, dr_v) = (g.dl[v as usize], g.dr[v as usize]);
        let len_w = g.len[wu] as usize;
        let terms: Vec<(u32, i64, usize, Arc<Column>)> = col_v
            .mu
            .iter()
            .filter(|&&(z, _)| g.dr[z as usize] & (1 << s) != 0)
            .map(|&(z, m)| {
                let lz = g.len[z as usize] as usize;
                (z, m, (len_w - lz) / 2, self.get(z).expect("dependency computed"))
            })
            .collect();

        let mut entries = Vec::new();
        let mut polys: Vec<Vec<i64>> = Vec::new();
        let mut dedup: HashMap<Vec<i64>, u32> = HashMap::new();
        let mut mu = Vec::new();
        for x in 0..g.order as u32 {
            let xu = x as usize;
            if g.dr[xu] & dr_w != dr_w || g.dl[xu] & dl_w != dl_w || g.len[xu] as usize > len_w {
                continue;
            }
            if !g.leq(x, w) {
                continue;
            }
            let xs = g.rmul(s, x);
            let mut p = col_v.lookup(g.make_extremal(xs, dl_v, dr_v)).to_vec();
            add_scaled(&mut p, col_v.lookup(g.make_extremal(x, dl_v, dr_v)), 1, 1);
            for (z, m, shift, col_z) in &terms {
                if g.len[xu] > g.len[*z as usize] {
                    continue;
                }
                let (dl_z, dr_z) = (g.dl[*z as usize], g.dr[*z as usize]);
                add_scaled(&mut p, col_z.lookup(g.make_extremal(x, dl_z, dr_z)), -m, *shift);
            }
            trim(&mut p);
            assert!(p.iter().all(|&c| c >= 0), "negative KL coefficient at x={x}, w={w}");
            assert!(!p.is_empty(), "vanishing KL polynomial below w");
            let d = len_w - g.len[xu] as usize;
            if d >= 3 && d % 2 == 1 && p.len() == (d - 1) / 2 + 1 {
                mu.push((x, p[(d - 1) / 2]));
            }
            let id = *dedup.entry(p.clone()).or_insert_with(|| {
                polys.push(p);
                (polys.len() - 1) as u32
            });
            entries.push((x, id));
        }
        mu.extend(g.lower_covers(w).into_iter().map(|z| (z, 1)));
        Column { entries, polys, mu }
    }

    /// Computes every column; used by exhaustive sweeps.
    pub fn fill_all(&self) {
        for w in 0..self.group.order as u32 {
            self.column(w);
        }
    }

    pub fn save(&self, out: &mut impl Write) -> io::Result<()> {
        let cache = self.cache.read();
        let mut keys: Vec<u32> = cache.keys().copied().collect();
        keys.sort_unstable();
        out.write_all(MAGIC)?;
        out.write_all(&VERSION.to_le_bytes())?;
        out.write_all(&(self.group.n as u32).to_le_bytes())?;
        out.write_all(&(keys.len() as u64).to_le_bytes())?;
        for w in keys {
            let col = &cache[&w];
            out.write_all(&w.to_le_bytes())?;
            out.write_all(&(col.entries.len() as u32).to_le_bytes())?;
            for &(x, id) in &col.entries {
                out.write_all(&x.to_le_bytes())?;
                out.write_all(&id.to_le_bytes())?;
            }
            out.write_all(&(col.polys.len() as u32).to_le_bytes())?;
            for p in &col.polys {
                out.write_all(&(p.len() as u32).to_le_bytes())?;
                for c in p {
                    out.write_all(&c.to_le_bytes())?;
                }
            }
            out.write_all(&(col.mu.len() as u32).to_le_bytes())?;
            for &(z, m) in &col.mu {
                out.write_all(&z.to_le_bytes())?;
                out.write_all(&m.to_le_bytes())?;
            }
        }
        Ok(())
    }

    /// Merges columns from a cache file written by [`KlEngine::save`].
    pub fn load(&self, input: &mut impl Read) -> Result<usize, KlError> {
        let bad = |msg: &str| KlError::Cache(msg.to_string());
        let mut magic = [0u8; 8];
        input.read_exact(&mut magic).map_err(|_| bad("truncated header"))?;
        if &magic != MAGIC {
            return Err(bad("not a KL cache file"));
        }
        if read_u32(input)? != VERSION {
            return Err(bad("unsupported cache version"));
        }
        let n = read_u32(input)? as usize;
        if n != self.group.n {
            return Err(KlError::SizeMismatch { left: n, right: self.group.n });
        }
        let order = self.group.order as u32;
        let count = read_u64(input)?;
        let mut loaded = Vec::new();
        for _ in 0..count {
            let w = read_u32(input)?;
            let ne = read_u32(input)? as usize;
            let mut entries = Vec::with_capacity(ne);
            for _ in 0..ne {
                entries.push((read_u32(input)?, read_u32(input)?));
            }
            let np = read_u32(input)? as usize;
            let mut polys = Vec::with_capacity(np);
            for _ in 0..np {
                let len = read_u32(input)? as usize;
                let mut p = Vec::with_capacity(len);
                for _ in 0..len {
                    p.push(read_i64(input)?);
                }
                polys.push(p);
            }
            let nm = read_u32(input)? as usize;
            let mut mu = Vec::with_capacity(nm);
            for _ in 0..nm {
                mu.push((read_u32(input)?, read_i64(input)?));
            }
            let valid = w < order
                && entries.windows(2).all(|p| p[0].0 < p[1].0)
                && entries.iter().all(|&(x, id)| x < order && (id as usize) < np)
                && mu.iter().all(|&(z, _)| z < order);
            if !valid {
                return Err(bad("corrupt column"));
            }
            loaded.push((w, Column { entries, polys, mu }));
        }
        let mut cache = self.cache.write();
        let total = loaded.len();
        for (w, col) in loaded {
            cache.entry(w).or_insert_with(|| Arc::new(col));
        }
        Ok(total)
    }
}

fn read_u32(r: &mut impl Read) -> Result<u32, KlError> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(|_| KlError::Cache("truncated cache file".into()))?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64, KlError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(|_| KlError::Cache("truncated cache file".into()))?;
    Ok(u64::from_le_bytes(b))
}

fn read_i64(r: &mut impl Read) -> Result<i64, KlError> {
    Ok(read_u64(r)? as i64)
}
