use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::class::CircleClass;
use crate::error::{Error, Result};
use crate::exact::{format_rational, rat, Rational, UPoly};
use crate::gkm::CircleProfile;

/// Equivariant Euler classes at each fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerData {
    /// `e_F = prod_i (w_i u)` over all circle weights.
    pub full: Vec<UPoly>,
    /// `e^-_F = prod (w_i u)` over the negative circle weights.
    pub negative: Vec<UPoly>,
}

impl EulerData {
    pub fn new(p: &CircleProfile) -> Self {
        let product = |ws: &mut dyn Iterator<Item = i64>| {
            let (c, k) = ws.fold((Rational::one(), 0usize), |(c, k), w| (c * rat(w), k + 1));
            UPoly::monomial(c, k)
        };
        let full = p
            .points()
            .iter()
            .map(|f| product(&mut f.circle_weights.iter().copied()))
            .collect();
        let negative = p
            .points()
            .iter()
            .map(|f| product(&mut f.negative_weights()))
            .collect();
        Self { full, negative }
    }
}

/// `sum_F c|_F / e_F`. Errors if the negative powers of `u` do not cancel.
pub fn abbv_integrate(c: &CircleClass, e: &EulerData) -> Result<UPoly> {
    assert_eq!(c.len(), e.full.len());
    let mut laurent: BTreeMap<i64, Rational> = BTreeMap::new();
    for (cf, ef) in c.restrictions().iter().zip(&e.full) {
        let n = ef.degree().expect("euler class is nonzero") as i64;
        let lead = ef.coeff(n as usize);
        for (j, a) in cf.coeffs().iter().enumerate() {
            if !a.is_zero() {
                *laurent.entry(j as i64 - n).or_insert_with(Rational::zero) += a / &lead;
            }
        }
    }
    if let Some((&power, coefficient)) = laurent.iter().find(|(&k, v)| k < 0 && !v.is_zero()) {
        return Err(Error::NonPolynomialIntegral {
            power,
            coefficient: format_rational(coefficient),
        });
    }
    let top = laurent.keys().next_back().copied().unwrap_or(0).max(0) as usize;
    Ok(UPoly::from_coeffs(
        (0..=top)
            .map(|k| {
                laurent
                    .get(&(k as i64))
                    .cloned()
                    .unwrap_or_else(Rational::zero)
            })
            .collect(),
    ))
}
