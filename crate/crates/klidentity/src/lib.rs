//! Parabolic double cosets of `S_{mk}` by the block subgroup `H ≅ S_m^k`,
//! their Birkhoff decompositions, and checks of the signed KL sums over
//! double cosets against the decomposition counts.

mod birkhoff;
mod coset;
mod tight;
mod verify;

use msq_biseq::BiseqError;
use msq_klpoly::KlError;
use msq_perm::PermError;
use thiserror::Error;

pub use birkhoff::{birkhoff_decompositions, class_value, coset_classes, latin_square_delta, signed_decomposition_count};
pub use coset::{all_coset_matrices, block_subgroup, coset_leq, coset_matrix, iota, CosetMatrix};
pub use tight::{double_coset_counterexample, tight_counterexample, DoubleCosetCounterexample, TightCounterexample};
pub use verify::{identity_pairs, verify_higher, verify_klidnt, verify_unchecked, CosetCheck, IdentityReport, ParabolicSum};

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("size {size} is not a positive multiple of {m}")]
    NotDivisible { size: usize, m: usize },
    #[error("invalid coset matrix: {0}")]
    BadMatrix(String),
    #[error("the class value needs line sums 2, got {0}")]
    NeedsTwo(usize),
    #[error("block size must be at least 2, got {0}")]
    BadMultiplicity(usize),
    #[error("Latin square counts are limited to orders 1..=4, got {0}")]
    LatinOrder(usize),
    #[error("({sigma}, {sigma0}) is not a smooth pair")]
    NotSmoothPair { sigma0: String, sigma: String },
    #[error("{0} is not 213-avoiding")]
    Not213Avoiding(String),
    #[error("size {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Kl(#[from] KlError),
    #[error(transparent)]
    Biseq(#[from] BiseqError),
}

#[cfg(test)]
mod tests {
    use msq_perm::Permutation;

    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[usize]]) -> CosetMatrix {
        CosetMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn coset_matrices_of_simple_elements() {
        assert_eq!(coset_matrix(&p("1234"), 2).unwrap(), mat(&[&[2, 0], &[0, 2]]));
        let s = p("312");
        let dup = msq_biseq::duplicate_perm(&s, 3).unwrap();
        assert_eq!(coset_matrix(&dup, 3).unwrap(), CosetMatrix::scaled_permutation(&s, 3));
        let x = iota(&[p("12"), p("21")]).unwrap();
        assert_eq!(coset_matrix(&x, 2).unwrap(), mat(&[&[1, 1], &[1, 1]]));
        assert!(coset_matrix(&p("12345"), 2).is_err());
    }

    #[test]
    fn decompositions_and_class_values() {
        let two = mat(&[&[2, 0], &[0, 2]]);
        assert_eq!(birkhoff_decompositions(&two), vec![vec![p("12"), p("12")]]);
        assert_eq!(class_value(&two).unwrap(), 1);
        let ones = mat(&[&[1, 1], &[1, 1]]);
        let mut d = birkhoff_decompositions(&ones);
        d.sort();
        assert_eq!(d, vec![vec![p("12"), p("21")], vec![p("21"), p("12")]]);
        assert_eq!(class_value(&ones).unwrap(), -2);
        let three = coset_matrix(&iota(&[p("123"), p("231")]).unwrap(), 2).unwrap();
        assert_eq!(class_value(&three).unwrap(), 2);
        assert!(class_value(&CosetMatrix::scaled_permutation(&p("12"), 3)).is_err());
    }

    #[test]
    fn latin_squares() {
        assert_eq!(latin_square_delta(1).unwrap(), 1);
        assert_eq!(latin_square_delta(2).unwrap(), 2);
        assert_eq!(latin_square_delta(3).unwrap(), 0);
        assert!(latin_square_delta(4).unwrap() > 0);
        assert!(latin_square_delta(5).is_err());
    }

    #[test]
    fn small_identity() {
        let r = verify_klidnt(&p("12"), &p("21")).unwrap();
        assert!(r.all_pass());
        let top = r.cosets.iter().find(|c| c.coset_matrix == vec![vec![0, 2], vec![2, 0]]).unwrap();
        assert_eq!((top.lhs, top.rhs), (1, 1));
        assert_eq!(r.parabolic.iter().map(|s| s.sum).collect::<Vec<_>>(), vec![1, 1]);
        assert!(matches!(verify_klidnt(&p("1243"), &p("4231")), Err(IdentityError::NotSmoothPair { .. })));
        assert!(matches!(verify_klidnt(&p("213"), &p("321")), Err(IdentityError::Not213Avoiding(_))));
        assert!(verify_klidnt(&p("2143"), &p("4231")).is_err());
    }
}
