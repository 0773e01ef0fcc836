
use crate::error::{Error, Result};
use crate::exact::{Rational, TorusPoly, UPoly};
use crate::gkm::GkmGraph;

/// True iff the tuple is homogeneous and satisfies `f_v = f_w mod alpha` on every edge.
pub fn is_member(g: &GkmGraph, tuple: &[TorusPoly]) -> bool {
    if tuple.len() != g.len() || tuple.iter().any(|p| p.nvars() != g.rank()) {
        return false;
    }
    let mut degrees = tuple
        .iter()
        .filter(|&p| !p.is_zero())
        .map(|p| p.homogeneous_degree());
    if let Some(d) = degrees.next() {
        if d.is_none() || degrees.any(|x| x != d) {
            return false;
        }
    }
    g.edges()
        .iter()
        .all(|e| (&tuple[e.v] - &tuple[e.w]).divisible_by(&e.weight))
}

/// A torus-equivariant class, given by its restrictions to the fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusClass {
    restrictions: Vec<TorusPoly>,
    degree: u32,
}

impl TorusClass {
    /// Checks membership; `degree` is cohomological (twice the polynomial degree).
    pub fn new(g: &GkmGraph, restrictions: Vec<TorusPoly>, degree: u32) -> Result<Self> {
        if !degree.is_multiple_of(2) {
            return Err(Error::MalformedClass(format!("odd degree {degree}")));
        }
        let wrong_degree = restrictions
            .iter()
            .any(|p| !p.is_zero() && p.homogeneous_degree() != Some(degree / 2));
        if wrong_degree || !is_member(g, &restrictions) {
            return Err(Error::MalformedClass(
                "restrictions violate the GKM congruences or are not homogeneous".into(),
            ));
        }
        Ok(Self {
            restrictions,
            degree,
        })
    }

    pub(crate) fn new_unchecked(restrictions: Vec<TorusPoly>, degree: u32) -> Self {
        Self {
            restrictions,
            degree,
        }
    }

    pub fn restrictions(&self) -> &[TorusPoly] {
        &self.restrictions
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self {
            restrictions: self
                .restrictions
                .iter()
                .zip(&other.restrictions)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            restrictions: self.restrictions.iter().map(|p| p.scale(c)).collect(),
            degree: self.degree,
        }
    }

    pub fn specialize(&self, xi: &[i64]) -> Result<CircleClass> {
        let restrictions = self
            .restrictions
            .iter()
            .map(|p| p.specialize(xi))
            .collect::<Result<Vec<_>>>()?;
        Ok(CircleClass {
            restrictions,
            degree: self.degree,
        })
    }
}

/// A circle-equivariant class as its restrictions `c|_F`, polynomials in `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleClass {
    restrictions: Vec<UPoly>,
    degree: u32,
}

impl CircleClass {
    /// Requires every restriction to be a multiple of `u^{degree/2}`.
    pub fn new(restrictions: Vec<UPoly>, degree: u32) -> Result<Self> {
        if !degree.is_multiple_of(2) {
            return Err(Error::MalformedClass(format!("odd degree {degree}")));
        }
        let power = degree as usize / 2;
        if let Some(i) = restrictions
            .iter()
            .position(|p| p.monomial_coeff(power).is_none())
        {
            return Err(Error::MalformedClass(format!(
                "restriction {} at position {i} is not a multiple of u^{power}",
                restrictions[i]
            )));
        }
        Ok(Self {
            restrictions,
            degree,
        })
    }

    /// Degree `degree` class with restriction `c_i u^{degree/2}` at vertex `i`.
    pub fn from_coefficients(coeffs: Vec<Rational>, degree: u32) -> Self {
        assert!(degree.is_multiple_of(2));
        let power = degree as usize / 2;
        Self {
            restrictions: coeffs
                .into_iter()
                .map(|c| UPoly::monomial(c, power))
                .collect(),
            degree,
        }
    }

    pub fn one(len: usize) -> Self {
        Self {
            restrictions: vec![UPoly::one(); len],
            degree: 0,
        }
    }

    pub fn zero(len: usize, degree: u32) -> Self {
        Self {
            restrictions: vec![UPoly::zero(); len],
            degree,
        }
    }

    pub fn len(&self) -> usize {
        self.restrictions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.restrictions.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn restrictions(&self) -> &[UPoly] {
        &self.restrictions
    }

    pub fn restriction(&self, i: usize) -> &UPoly {
        &self.restrictions[i]
    }

    /// The coefficient of `u^{degree/2}` at vertex `i`.
    pub fn coefficient(&self, i: usize) -> Rational {
        self.restrictions[i].coeff(self.degree as usize / 2)
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.coefficient(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.restrictions.iter().all(UPoly::is_zero)
    }

    pub fn vanishes_at(&self, i: usize) -> bool {
        self.restrictions[i].is_zero()
    }

    /// Vertex-wise product.
    pub fn cup(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "classes on different graphs");
        Self {
            restrictions: self
                .restrictions
                .iter()
                .zip(&other.restrictions)
                .map(|(a, b)| a * b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.len()), |acc, _| acc.cup(self))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree, other.degree,
            "adding classes of different degree"
        );
        Self {
            restrictions: self
                .restrictions
                .iter()
                .zip(&other.restrictions)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            restrictions: self.restrictions.iter().map(|p| p.scale(c)).collect(),
            degree: self.degree,
        }
    }

    /// Multiplication by `u^k`.
    pub fn times_u_pow(&self, k: usize) -> Self {
        let uk = UPoly::u().pow(k);
        Self {
            restrictions: self.restrictions.iter().map(|p| p * &uk).collect(),
            degree: self.degree + 2 * k as u32,
        }
    }

    /// Multiplies by a polynomial in `u` that must be a monomial `c u^k`.
    pub fn times_upoly(&self, p: &UPoly) -> Self {
        let k = p.degree().unwrap_or(0);
        if p.is_zero() {
            return Self::zero(self.len(), self.degree + 2 * k as u32);
        }
        let c = p.monomial_coeff(k).expect("monomial coefficient");
        self.times_u_pow(k).scale(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exact::rat;

    #[test]
    fn constants_are_members() {
        let g = catalog::su3_flag();
        assert!(is_member(&g, &vec![TorusPoly::one(2); 6]));
    }

    #[test]
    fn position_pairing_is_a_member() {
        let g = catalog::su3_flag();
        let tuple: Vec<TorusPoly> = g
            .vertices()
            .iter()
            .map(|v| TorusPoly::linear_rational(&v.position))
            .collect();
        assert!(is_member(&g, &tuple));
    }

    #[test]
    fn indicator_is_not_a_member() {
        let g = catalog::su3_flag();
        let mut tuple = vec![TorusPoly::zero(2); 6];
        tuple[0] = TorusPoly::one(2);
        assert!(!is_member(&g, &tuple));
    }

    #[test]
    fn cup_unit_and_degrees() {
        let x = CircleClass::from_coefficients(vec![rat(0), rat(-1)], 2);
        let one = CircleClass::one(2);
        assert_eq!(one.cup(&x), x);
        let sq = x.cup(&x);
        assert_eq!(sq.degree(), 4);
        assert_eq!(sq.coefficients(), vec![rat(0), rat(1)]);
    }

    #[test]
    fn circle_class_rejects_wrong_power() {
        let bad = vec![UPoly::u(), UPoly::one()];
        assert!(CircleClass::new(bad, 2).is_err());
        assert!(CircleClass::new(vec![UPoly::u()], 3).is_err());
    }
}
