//! Kazhdan–Lusztig polynomials for symmetric groups.
//!
//! [`kl_polynomial`] uses a shared, memoized engine per `n` that only
//! computes the columns a query depends on. [`kl_oracle`] is a slow
//! independent implementation for cross-checking.

mod engine;
mod group;
mod oracle;
mod poly;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use msq_perm::Permutation;
use parking_lot::Mutex;
use thiserror::Error;

pub use engine::{Column, KlEngine};
pub use oracle::MAX_ORACLE_SIZE;
pub use poly::KlPolynomial;

/// Largest `n` the engine accepts (lexicographic indices and descent
/// masks are sized for it).
pub const MAX_ENGINE_SIZE: usize = 9;

#[derive(Debug, Error)]
pub enum KlError {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("S_{n} is too large for the KL engine (max {max})")]
    TooLarge { n: usize, max: usize },
    #[error("S_{n} is too large for the oracle (max {max})")]
    OracleTooLarge { n: usize, max: usize },
    #[error("cache file: {0}")]
    Cache(String),
}

static ENGINES: OnceLock<Mutex<HashMap<usize, Arc<KlEngine>>>> = OnceLock::new();
static ORACLES: OnceLock<Mutex<HashMap<usize, Arc<oracle::Oracle>>>> = OnceLock::new();

/// The process-wide engine for `S_n`.
pub fn engine(n: usize) -> Result<Arc<KlEngine>, KlError> {
    if n > MAX_ENGINE_SIZE {
        return Err(KlError::TooLarge { n, max: MAX_ENGINE_SIZE });
    }
    let mut map = ENGINES.get_or_init(Default::default).lock();
    if let Some(e) = map.get(&n) {
        return Ok(e.clone());
    }
    let e = Arc::new(KlEngine::new(n)?);
    map.insert(n, e.clone());
    Ok(e)
}

fn check_sizes(x: &Permutation, w: &Permutation) -> Result<usize, KlError> {
    if x.size() != w.size() {
        return Err(KlError::SizeMismatch { left: x.size(), right: w.size() });
    }
    Ok(w.size())
}

pub fn kl_polynomial(x: &Permutation, w: &Permutation) -> Result<KlPolynomial, KlError> {
    let n = check_sizes(x, w)?;
    engine(n)?.polynomial(x.as_bytes(), w.as_bytes())
}

/// `P_{x,w}(1)`.
pub fn kl_value(x: &Permutation, w: &Permutation) -> Result<i64, KlError> {
    Ok(kl_polynomial(x, w)?.at_one())
}

pub fn kl_oracle(x: &Permutation, w: &Permutation) -> Result<KlPolynomial, KlError> {
    let n = check_sizes(x, w)?;
    if n > MAX_ORACLE_SIZE {
        return Err(KlError::OracleTooLarge { n, max: MAX_ORACLE_SIZE });
    }
    let oracle = {
        let mut map = ORACLES.get_or_init(Default::default).lock();
        map.entry(n).or_insert_with(|| Arc::new(oracle::Oracle::new(n))).clone()
    };
    oracle.polynomial(x.as_bytes(), w.as_bytes())
}
