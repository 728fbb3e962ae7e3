use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer polynomial in `q`; `coeffs[d]` is the coefficient of `q^d`.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KlPolynomial {
    coeffs: Vec<i64>,
}

impl KlPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coefficient(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |acc, &c| acc.checked_add(c).expect("KL value overflow"))
    }
}

impl fmt::Display for KlPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (d, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}q")?,
                (d, 1) => write!(f, "q^{d}")?,
                (d, m) => write!(f, "{m}q^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KlPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KlPolynomial({self})")
    }
}

pub(crate) fn trim(p: &mut Vec<i64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// `acc += c * q^shift * p`, with overflow checks.
pub(crate) fn add_scaled(acc: &mut Vec<i64>, p: &[i64], c: i64, shift: usize) {
    if p.is_empty() || c == 0 {
        return;
    }
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (d, &a) in p.iter().enumerate() {
        let term = a.checked_mul(c).expect("KL coefficient overflow");
        acc[d + shift] = acc[d + shift].checked_add(term).expect("KL coefficient overflow");
    }
}

pub(crate) fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            add_scaled(&mut out, b, x, i);
        }
    }
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(KlPolynomial::from_coeffs(vec![1, 1, 2]).to_string(), "1 + q + 2q^2");
        assert_eq!(KlPolynomial::from_coeffs(vec![0, 0, 0]).to_string(), "0");
        assert_eq!(KlPolynomial::from_coeffs(vec![-1, 0, 1]).to_string(), "-1 + q^2");
        assert_eq!(KlPolynomial::from_coeffs(vec![1, -3]).to_string(), "1 - 3q");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(mul(&[1, 1], &[-1, 1]), vec![-1, 0, 1]);
        let mut acc = vec![1];
        add_scaled(&mut acc, &[2, 3], -1, 2);
        assert_eq!(acc, vec![1, 0, -2, -3]);
        assert_eq!(KlPolynomial::from_coeffs(vec![1, 2, 0]).at_one(), 3);
        assert_eq!(serde_json::to_string(&KlPolynomial::from_coeffs(vec![1, 1])).unwrap(), "[1,1]");
    }
}
