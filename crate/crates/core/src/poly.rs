//! Exact integer polynomials: sparse multivariate and dense univariate.
//!
//! Multivariate terms print in graded lexicographic order: higher total
//! degree first, ties broken by comparing exponent vectors from `z1` on.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        MultiPoly::from_terms(nvars, [(vec![0; nvars], c.into())])
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, 1)
    }

    /// `z_{i+1}` (variables are 0-based here, printed 1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        MultiPoly::linear(nvars, i, 1, 0)
    }

    /// `a·z_{i+1} + b`.
    pub fn linear(nvars: usize, i: usize, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::from_terms(nvars, [(e, a.into()), (vec![0; nvars], b.into())])
    }

    /// Sums coefficients of repeated exponents and drops zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// All exponents are 0 or 1.
    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x <= 1))
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::Arity(self.nvars, other.nvars))
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, v)| (e.clone(), v * c)),
        )
    }

    /// Divides every coefficient by `d`, failing unless all divide exactly.
    pub fn exact_div(&self, d: &BigInt) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if !(c % d).is_zero() {
                return None;
            }
            out.terms.insert(e.clone(), c / d);
        }
        Some(out)
    }

    /// Moves variable `i` to position `positions[i]` of a polynomial in
    /// `nvars` variables.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> MultiPoly {
        assert_eq!(positions.len(), self.nvars);
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut f = vec![0; nvars];
                for (i, &p) in positions.iter().enumerate() {
                    f[p] = e[i];
                }
                (f, c.clone())
            }),
        )
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::Arity(self.nvars, point.len()));
        }
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= Pow::pow(x, k);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Evaluates with every variable set to `z`.
    pub fn substitute_all(&self, z: &BigRational) -> BigRational {
        self.collapse().evaluate(z)
    }

    /// Sends every `z_i` to a single `z`.
    pub fn collapse(&self) -> UniPoly {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            let d = e.iter().sum::<u32>() as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::zero());
            }
            coeffs[d] += c;
        }
        UniPoly::new(coeffs)
    }

    /// Sum of all coefficients, the value at `(1, …, 1)`.
    pub fn value_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Terms in canonical print order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        t
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt, monomial: &str) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if monomial.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{monomial}")
    } else {
        write!(f, "{abs}*{monomial}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("z{}", i + 1)
                    } else {
                        format!("z{}^{x}", i + 1)
                    }
                })
                .collect();
            write_term(f, k == 0, c, &monomial.join("*"))?;
        }
        Ok(())
    }
}

/// Dense univariate polynomial, coefficients from the constant term up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly(Vec<BigInt>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        UniPoly::new(vec![c.into()])
    }

    /// `a·z + b`.
    pub fn linear(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        UniPoly::new(vec![b.into(), a.into()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return UniPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> UniPoly {
        UniPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn exact_div(&self, d: &BigInt) -> Option<UniPoly> {
        self.0
            .iter()
            .map(|c| (c % d).is_zero().then(|| c / d))
            .collect::<Option<Vec<_>>>()
            .map(UniPoly::new)
    }

    pub fn evaluate(&self, z: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * z + BigRational::from_integer(c.clone())
        })
    }

    pub fn evaluate_int(&self, z: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * z + c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let monomial = match d {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{d}"),
            };
            write_term(f, first, c, &monomial)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lin(n: usize, i: usize, a: i64, b: i64) -> MultiPoly {
        MultiPoly::linear(n, i, a, b)
    }

    fn a3() -> MultiPoly {
        // 2 z1 (3 z2 + 1)(z3 + 1)
        lin(3, 0, 2, 0)
            .mul(&lin(3, 1, 3, 1))
            .unwrap()
            .mul(&lin(3, 2, 1, 1))
            .unwrap()
    }

    #[test]
    fn display_is_graded_lex() {
        assert_eq!(a3().to_string(), "6*z1*z2*z3 + 6*z1*z2 + 2*z1*z3 + 2*z1");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        assert_eq!(lin(2, 1, -1, 3).to_string(), "-z2 + 3");
    }

    #[test]
    fn collapse_a3() {
        let u = a3().collapse();
        assert_eq!(u, UniPoly::from_i64(&[0, 2, 8, 6]));
        assert_eq!(u.to_string(), "6*z^3 + 8*z^2 + 2*z");
    }

    #[test]
    fn evaluation() {
        let p = a3();
        let two = BigRational::from_integer(2.into());
        assert_eq!(p.substitute_all(&two), BigRational::from_integer(84.into()));
        assert_eq!(p.value_at_ones(), BigInt::from(16));
        assert_eq!(
            p.evaluate(&[two.clone(), two.clone()]),
            Err(Error::Arity(3, 2))
        );
        let half = BigRational::new(1.into(), 2.into());
        // 2·½·(3/2+1)·(3/2) = 15/4
        assert_eq!(
            p.evaluate(&[half.clone(), half.clone(), half]).unwrap(),
            BigRational::new(15.into(), 4.into())
        );
    }

    #[test]
    fn arity_mismatch() {
        assert_eq!(
            lin(2, 0, 1, 0).mul(&lin(3, 0, 1, 0)),
            Err(Error::Arity(2, 3))
        );
        assert_eq!(
            lin(2, 0, 1, 0).add(&lin(3, 0, 1, 0)),
            Err(Error::Arity(2, 3))
        );
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = lin(2, 0, 1, 1);
        assert!(p.sub(&p).unwrap().is_zero());
    }

    #[test]
    fn embed_moves_variables() {
        let p = lin(2, 0, 1, 0).mul(&lin(2, 1, 2, 1)).unwrap();
        let e = p.embed(4, &[3, 1]);
        assert_eq!(e.to_string(), "2*z2*z4 + z4");
    }

    fn small_poly(n: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(0u32..2, n), -5i64..5), 0..6).prop_map(
            move |ts| MultiPoly::from_terms(n, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))),
        )
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(p in small_poly(3), q in small_poly(3), x in proptest::collection::vec(-3i64..4, 3)) {
            let pt: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
            let pq = p.mul(&q).unwrap();
            prop_assert_eq!(pq.evaluate(&pt).unwrap(), p.evaluate(&pt).unwrap() * q.evaluate(&pt).unwrap());
            let s = p.add(&q).unwrap();
            prop_assert_eq!(s.evaluate(&pt).unwrap(), p.evaluate(&pt).unwrap() + q.evaluate(&pt).unwrap());
        }

        #[test]
        fn collapse_commutes_with_product(p in small_poly(3), q in small_poly(3)) {
            prop_assert_eq!(p.mul(&q).unwrap().collapse(), p.collapse().mul(&q.collapse()));
        }
    }
}
