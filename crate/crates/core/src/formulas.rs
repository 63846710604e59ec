//! Closed-form counts for type `A_n` (Coxeter number `h = n + 1`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn pow(base: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// Exact quotient, panicking if the division leaves a remainder.
fn exact(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "non-integral closed form {num}/{den}");
    q
}

/// Number of length-`k` exceptional sequences for `A_n`:
/// `C(h, k+1) · h^(k-1)`. For `k = 0` this is `C(h,1)/h = 1`.
pub fn sequence_count_a(n: usize, k: usize) -> BigInt {
    let h = n + 1;
    exact(binomial(h, k + 1) * pow(h, k), &BigInt::from(h))
}

fn multiplicity_product(multiplicities: &[usize]) -> BigInt {
    multiplicities
        .iter()
        .fold(BigInt::one(), |acc, &m| acc * factorial(m))
}

/// `|N_h(λ)| = k! h^k / ∏ n_p!`, given the multiplicity vector of `λ`.
pub fn n_lambda(h: usize, k: usize, multiplicities: &[usize]) -> BigInt {
    exact(
        factorial(k) * pow(h, k),
        &multiplicity_product(multiplicities),
    )
}

/// `|N_h^p(λ)| = (k+1)! h^(k-1) / ∏ n_p!` for `k ≥ 1`.
pub fn np_lambda(h: usize, k: usize, multiplicities: &[usize]) -> BigInt {
    assert!(k >= 1, "N^p is defined for k >= 1");
    exact(
        factorial(k + 1) * pow(h, k - 1),
        &multiplicity_product(multiplicities),
    )
}

/// Signed exceptional sequences of length `k` for `A_n`:
/// `C(n+1, k+1) (n+k+2)! / ((n+1) (n+2)!)`.
pub fn signed_count_a(n: usize, k: usize) -> BigInt {
    exact(
        binomial(n + 1, k + 1) * factorial(n + k + 2),
        &(factorial(n + 2) * (n + 1)),
    )
}

/// Ordered partial cluster-tilting sets of size `k` for `A_n`, which are in
/// bijection with signed exceptional sequences:
/// `k! · C(n+1, k+1) C(n+k+2, n+2) / (n+1)`.
pub fn ordered_partial_clusters_a(n: usize, k: usize) -> BigInt {
    exact(
        factorial(k) * binomial(n + 1, k + 1) * binomial(n + k + 2, n + 2),
        &BigInt::from(n + 1),
    )
}

/// Probability that the term at right position `k` is relatively
/// projective in `A_n`: `(k+1)/(n+1)`.
pub fn relproj_probability_a(n: usize, k: usize) -> BigRational {
    BigRational::new(BigInt::from(k + 1), BigInt::from(n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_counts() {
        assert_eq!(sequence_count_a(3, 0), BigInt::from(1));
        assert_eq!(sequence_count_a(3, 2), BigInt::from(16));
        assert_eq!(sequence_count_a(3, 3), BigInt::from(16));
        assert_eq!(sequence_count_a(5, 5), BigInt::from(1296));
        assert_eq!(sequence_count_a(6, 6), BigInt::from(16807));
    }

    #[test]
    fn theorem_tallies_for_a3() {
        // λ = (1,1): multiplicities n_0 = 0, n_1 = 2
        assert_eq!(n_lambda(4, 1, &[0, 2]), BigInt::from(2));
        assert_eq!(np_lambda(4, 1, &[0, 2]), BigInt::from(1));
        // λ = (0,2)
        assert_eq!(n_lambda(4, 1, &[1, 0, 1]), BigInt::from(4));
        assert_eq!(np_lambda(4, 1, &[1, 0, 1]), BigInt::from(2));
        // λ = (0,0,0,0): 3!·4^3/4! = 16
        assert_eq!(n_lambda(4, 3, &[4]), BigInt::from(16));
        assert_eq!(np_lambda(4, 3, &[4]), BigInt::from(16));
    }

    #[test]
    fn signed_counts() {
        assert_eq!(signed_count_a(3, 3), BigInt::from(84));
        assert_eq!(signed_count_a(3, 0), BigInt::from(1));
        // the cluster-side count agrees with k! times the cluster count
        for n in 1..8 {
            for k in 0..=n {
                assert_eq!(signed_count_a(n, k), ordered_partial_clusters_a(n, k));
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 5), BigInt::from(792));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
