use crate::{PermError, Permutation};

/// The non-smooth fixture pairs `(τ, δ)` in `S_{r+s}` for `t ∈ {1,2,3}`
/// (`s = 2` required when `t = 3`).
pub fn tau_delta(r: usize, s: usize, t: usize) -> Result<(Permutation, Permutation), PermError> {
    if r < 2 || s < 2 || !(1..=3).contains(&t) || (t == 3 && s != 2) {
        return Err(PermError::InvalidFixture { r, s, t });
    }
    let k = r + s;
    let (tau, delta): (Box<dyn Fn(usize) -> usize>, Box<dyn Fn(usize) -> usize>) = match t {
        1 => (
            Box::new(move |i| match i {
                1 => k,
                i if i <= r => r + 2 - i,
                i if i < k => r + k - i,
                _ => 1,
            }),
            Box::new(move |i| if i <= r { r + 1 - i } else { r + k + 1 - i }),
        ),
        2 => (
            Box::new(move |i| match i {
                1 => r + 1,
                i if i < r => r + 1 - i,
                i if i == r => k,
                i if i == r + 1 => 1,
                i if i < k => r + k + 1 - i,
                _ => r,
            }),
            Box::new(move |i| match i {
                i if i < r => r - i,
                i if i == r => r + 1,
                i if i == r + 1 => r,
                i => r + k + 2 - i,
            }),
        ),
        _ => (
            Box::new(move |i| match i {
                1 => r + 1,
                2 => k,
                i if i <= r => k + 1 - i,
                i if i == r + 1 => 1,
                _ => 2,
            }),
            Box::new(move |i| match i {
                1 => 1,
                i if i < k => k + 1 - i,
                _ => k,
            }),
        ),
    };
    Ok((Permutation::from_fn(k, tau)?, Permutation::from_fn(k, delta)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn fixture_values() {
        assert_eq!(tau_delta(2, 2, 1).unwrap(), (p("4231"), p("2143")));
        assert_eq!(tau_delta(2, 2, 2).unwrap(), tau_delta(2, 2, 3).unwrap());
        assert_eq!(tau_delta(3, 2, 3).unwrap(), (p("45312"), p("14325")));
        assert!(tau_delta(3, 3, 3).is_err());
        assert!(tau_delta(1, 3, 1).is_err());
    }
}
