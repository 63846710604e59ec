//! Generating functions `f_Δ(z_1, …, z_n) = Σ_α c_α z^α` of complete
//! exceptional sequences, where `c_α` counts sequences whose relatively
//! projective positions are exactly those with `α_i = 1`.
//!
//! For connected `Δ` with Coxeter number `h`:
//!
//! ```text
//! f_Δ(z_1..z_n) = ½ (2 z_n + h − 2) · Σ_i f_{Δ∖i}(z_1..z_{n−1})
//! ```
//!
//! A disconnected quiver has no Coxeter number. Its complete sequences are
//! interleavings of complete sequences of the components, and relative
//! projectivity of a term only depends on its own component, so `f` of a
//! disjoint union is the shuffle product of the component polynomials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formulas::binomial;
use crate::poly::{MultiPoly, UniPoly};
use crate::quiver::{DynkinType, Quiver};

/// `Σ_S f1(z_S) · f2(z_{S^c})` over all `m1`-subsets `S` of `1..=m1+m2`,
/// each side keeping its variables in increasing order.
pub fn shuffle_product(f1: &MultiPoly, f2: &MultiPoly) -> MultiPoly {
    let (m1, m2) = (f1.nvars(), f2.nvars());
    let n = m1 + m2;
    let mut out = MultiPoly::zero(n);
    for subset in combinations(n, m1) {
        let rest: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
        let term = f1
            .embed(n, &subset)
            .mul(&f2.embed(n, &rest))
            .expect("same arity after embedding");
        out = out.add(&term).expect("same arity");
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Evaluates the recursion with a memo keyed on component types.
#[derive(Default)]
pub struct Recursion {
    memo: HashMap<Vec<DynkinType>, MultiPoly>,
    memoize: bool,
}

impl Recursion {
    pub fn new() -> Self {
        Recursion {
            memo: HashMap::new(),
            memoize: true,
        }
    }

    /// Recomputes every sub-quiver from scratch; for re-verifying that the
    /// result only depends on the underlying graph.
    pub fn without_memo() -> Self {
        Recursion {
            memo: HashMap::new(),
            memoize: false,
        }
    }

    pub fn eval(&mut self, q: &Quiver) -> Result<MultiPoly> {
        let key = q.type_key();
        if self.memoize {
            if let Some(f) = self.memo.get(&key) {
                return Ok(f.clone());
            }
        }
        let f = match q.components().len() {
            0 => MultiPoly::one(0),
            1 => self.connected(q)?,
            _ => {
                let mut acc = MultiPoly::one(0);
                for c in 0..q.components().len() {
                    let (cq, _, _) = q.component_quiver(c);
                    acc = shuffle_product(&acc, &self.eval(&cq)?);
                }
                acc
            }
        };
        if self.memoize {
            self.memo.insert(key, f.clone());
        }
        Ok(f)
    }

    fn connected(&mut self, q: &Quiver) -> Result<MultiPoly> {
        let n = q.vertex_count();
        let h = q.coxeter_number()?;
        let mut sum = MultiPoly::zero(n - 1);
        for v in 0..n {
            sum = sum.add(&self.eval(&q.delete_vertex(v)?)?)?;
        }
        // ½(2 z_n + h − 2) = z_n + (h − 2)/2 when h is even; keep it exact
        // by multiplying with (2 z_n + h − 2) and halving afterwards
        let positions: Vec<usize> = (0..n - 1).collect();
        let lifted = sum.embed(n, &positions);
        let factor = MultiPoly::linear(n, n - 1, 2, h as i64 - 2);
        lifted
            .mul(&factor)?
            .exact_div(&BigInt::from(2))
            .ok_or_else(|| Error::Internal("odd coefficient in recursion".into()))
    }
}

/// `f_Δ` by the vertex-deletion recursion.
pub fn recursive_f(q: &Quiver) -> Result<MultiPoly> {
    Recursion::new().eval(q)
}

/// `f_{A_n} = z_1 ∏_{i=1}^{n−1} (i + (n+1−i) z_{i+1})`.
pub fn closed_form_a(n: usize) -> MultiPoly {
    assert!(n >= 1);
    (1..n).fold(MultiPoly::var(n, 0), |acc, i| {
        acc.mul(&MultiPoly::linear(n, i, (n + 1 - i) as i64, i as i64))
            .expect("same arity")
    })
}

/// `f_{B_n} = ∏_{i=1}^{n} (i − 1 + (n+1−i) z_i)`. Emitted only; there is no
/// enumeration backing it here.
pub fn closed_form_b(n: usize) -> MultiPoly {
    assert!(n >= 1);
    (1..=n).fold(MultiPoly::one(n), |acc, i| {
        acc.mul(&MultiPoly::linear(
            n,
            i - 1,
            (n + 1 - i) as i64,
            (i - 1) as i64,
        ))
        .expect("same arity")
    })
}

/// `f_{A_n,k}(z) = (1/(n+1)) C(n+1, k+1) ∏_{j=1}^{k} ((j+1) z + n − j)`,
/// the count of length-`k` sequences by number of relatively projective
/// terms.
pub fn one_var_gf_a(n: usize, k: usize) -> Result<UniPoly> {
    if k > n {
        return Err(Error::LengthOutOfRange { len: k, rank: n });
    }
    let prod = (1..=k).fold(UniPoly::constant(1), |acc, j| {
        acc.mul(&UniPoly::linear((j + 1) as i64, (n - j) as i64))
    });
    prod.scale(&binomial(n + 1, k + 1))
        .exact_div(&BigInt::from(n + 1))
        .ok_or_else(|| Error::Internal(format!("non-integral coefficient in f_(A{n},{k})")))
}

/// A split-off factor `a·z_{var+1} + b` with coprime `a > 0`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub var: usize,
    pub a: BigInt,
    pub b: BigInt,
}

impl LinearFactor {
    pub fn to_poly(&self, nvars: usize) -> MultiPoly {
        MultiPoly::linear(nvars, self.var, self.a.clone(), self.b.clone())
    }
}

impl std::fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let z = format!("z{}", self.var + 1);
        let lead = if self.a.is_one() {
            z
        } else {
            format!("{}*{z}", self.a)
        };
        if self.b.is_zero() {
            write!(f, "{lead}")
        } else if self.b.is_negative() {
            write!(f, "({lead} - {})", -&self.b)
        } else {
            write!(f, "({lead} + {})", self.b)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<LinearFactor>,
    pub residual: MultiPoly,
}

impl Factorization {
    /// Every variable split off, leaving a constant.
    pub fn fully_split(&self) -> bool {
        self.residual.is_constant()
    }

    pub fn split_vars(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.var).collect()
    }

    pub fn product(&self) -> MultiPoly {
        let n = self.residual.nvars();
        self.factors.iter().fold(self.residual.clone(), |acc, f| {
            acc.mul(&f.to_poly(n)).expect("arity")
        })
    }
}

/// Splits off every variable that enters as a separate linear factor.
///
/// Writing `f = f1·z_j + f0` with `f0`, `f1` free of `z_j`, the variable
/// splits iff `a·f0 = b·f1` for coprime integers `(a, b)`; then
/// `f = (a z_j + b)·g`. Variables absent from `f` are skipped.
pub fn linear_factor_check(f: &MultiPoly) -> Result<Factorization> {
    if !f.is_multilinear() {
        return Err(Error::Internal(
            "linear_factor_check needs exponents in {0,1}".into(),
        ));
    }
    let n = f.nvars();
    let mut residual = f.clone();
    let mut factors = Vec::new();
    for j in 0..n {
        let (f0, f1) = split_at_var(&residual, j);
        if f1.is_zero() || residual.is_zero() {
            continue;
        }
        if f0.is_zero() {
            factors.push(LinearFactor {
                var: j,
                a: BigInt::one(),
                b: BigInt::zero(),
            });
            residual = f1;
            continue;
        }
        // compare leading coefficients, then cross-multiply everything
        let (e, c1) = f1
            .terms()
            .next()
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let c0 = f0.coefficient(&e);
        if c0.is_zero() {
            continue;
        }
        let g = c1.gcd(&c0);
        let (mut a, mut b) = (&c1 / &g, &c0 / &g);
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        if f0.scale(&a) != f1.scale(&b) {
            continue;
        }
        residual = f1
            .exact_div(&a)
            .ok_or_else(|| Error::Internal("factor does not divide".into()))?;
        factors.push(LinearFactor { var: j, a, b });
    }
    Ok(Factorization { factors, residual })
}

/// `(f0, f1)` with `f = f1·z_j + f0`, both as polynomials in the same
/// variables with `z_j` absent.
fn split_at_var(f: &MultiPoly, j: usize) -> (MultiPoly, MultiPoly) {
    let n = f.nvars();
    let mut f0 = Vec::new();
    let mut f1 = Vec::new();
    for (e, c) in f.terms() {
        let mut e = e.clone();
        if e[j] == 1 {
            e[j] = 0;
            f1.push((e, c.clone()));
        } else {
            f0.push((e, c.clone()));
        }
    }
    (MultiPoly::from_terms(n, f0), MultiPoly::from_terms(n, f1))
}
