use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};
use super::upoly::UPoly;
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Sparse polynomial over the rationals in the torus generators `t_0, .., t_{r-1}`.
///
/// Each `t_i` has cohomological degree two. Zero coefficients are never
/// stored, so two polynomials are equal iff their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl TorusPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { nvars, terms }
    }

    /// The linear form `sum_i w_i t_i` attached to an integer weight.
    pub fn linear(weight: &[i64]) -> Self {
        Self::linear_rational(
            &weight
                .iter()
                .map(|&w| Rational::from_integer(w.into()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn linear_rational(coeffs: &[Rational]) -> Self {
        let nvars = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mut e = vec![0; nvars];
                e[i] = 1;
                (e, c.clone())
            })
            .collect();
        Self { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Polynomial degree (in the `t_i`, not cohomological) if homogeneous;
    /// `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Ring homomorphism `t_i -> xi_i u`; a degree-`d` homogeneous piece lands on a multiple of `u^d`.
    pub fn specialize(&self, xi: &[i64]) -> Result<UPoly> {
        if xi.len() != self.nvars {
            return Err(Error::RankMismatch {
                expected: self.nvars,
                found: xi.len(),
            });
        }
        let mut out = UPoly::zero();
        for (e, c) in &self.terms {
            let mut factor = BigInt::one();
            for (x, &k) in xi.iter().zip(e) {
                factor *= BigInt::from(*x).pow(k);
            }
            let d = e.iter().sum::<u32>() as usize;
            out = &out + &UPoly::monomial(c * Rational::from_integer(factor), d);
        }
        Ok(out)
    }

    /// Restriction to the hyperplane `<weight, t> = 0`, expressed by eliminating
    /// the first variable `t_j` with a nonzero weight entry. The result is zero
    /// iff the polynomial is divisible by the linear form of `weight`.
    pub fn restrict_to_kernel(&self, weight: &[i64]) -> Self {
        assert_eq!(weight.len(), self.nvars);
        let j = weight
            .iter()
            .position(|&w| w != 0)
            .expect("restriction along a zero weight");
        // t_j = sum_{i != j} s_i t_i
        let wj = Rational::from_integer(weight[j].into());
        let mut sub = vec![Rational::zero(); self.nvars];
        for (i, &w) in weight.iter().enumerate() {
            if i != j {
                sub[i] = -Rational::from_integer(w.into()) / &wj;
            }
        }
        let sub = Self::linear_rational(&sub);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[j] = 0;
            let base = Self::monomial(rest, c.clone());
            out = &out + &(&base * &sub.pow(e[j]));
        }
        out
    }

    /// Divisibility by the linear form of a nonzero integer weight.
    pub fn divisible_by(&self, weight: &[i64]) -> bool {
        self.restrict_to_kernel(weight).is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| {
                    acc * num_traits::pow(x.clone(), k as usize)
                })
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// All exponent vectors of total degree `degree` in `nvars` variables, in lexicographic order.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Exponent> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == nvars {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=degree).rev() {
            prefix.push(k);
            rec(nvars, degree - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

impl Add for &TorusPoly {
    type Output = TorusPoly;
    fn add(self, rhs: &TorusPoly) -> TorusPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TorusPoly {
    type Output = TorusPoly;
    fn sub(self, rhs: &TorusPoly) -> TorusPoly {
        self + &(-rhs)
    }
}

impl Neg for &TorusPoly {
    type Output = TorusPoly;
    fn neg(self) -> TorusPoly {
        TorusPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &TorusPoly {
    type Output = TorusPoly;
    fn mul(self, rhs: &TorusPoly) -> TorusPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = TorusPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for TorusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("t{i}")
                        } else {
                            format!("t{i}^{k}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format_rational(c)
                } else if c.is_one() {
                    vars.join("*")
                } else {
                    format!("{}*{}", format_rational(c), vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
