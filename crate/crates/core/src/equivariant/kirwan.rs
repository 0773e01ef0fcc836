use num_traits::Zero;

use super::canonical::{equivariant_symplectic_class, expand_in_basis, CanonicalBasis};
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};
use crate::gkm::CircleProfile;

/// A basis element `f*(beta_F)` of ordinary cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingLabel {
    pub vertex: usize,
    pub id: String,
    pub degree: usize,
}

/// Ordinary cohomology as structure constants on the basis `f*(beta_F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryRing {
    /// Sorted by degree, then moment order.
    pub labels: Vec<RingLabel>,
    /// `table[i][j]` holds the coordinates of `label_i * label_j`.
    pub table: Vec<Vec<Vec<Rational>>>,
    /// Coordinates of `[omega]`, if known.
    pub omega: Option<Vec<Rational>>,
    /// Real dimension `2n`.
    pub dimension: usize,
}

impl OrdinaryRing {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label positions of the given degree.
    pub fn degree_part(&self, degree: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.labels[i].degree == degree)
            .collect()
    }

    pub fn unit(&self) -> Vec<Rational> {
        let mut e = vec![Rational::zero(); self.len()];
        let zero = self.degree_part(0);
        assert_eq!(zero.len(), 1, "connected input has one degree-zero class");
        e[zero[0]] = rat(1);
        e
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.len()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &ab * t;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Rational], e: usize) -> Vec<Rational> {
        (0..e).fold(self.unit(), |acc, _| self.mul(&acc, x))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len()];
        v[i] = rat(1);
        v
    }

    pub fn omega(&self) -> Result<&[Rational]> {
        self.omega.as_deref().ok_or(Error::MissingOmega)
    }
}

/// Passes to ordinary cohomology by setting `u = 0`: products `beta_F beta_G`
/// are expanded in the canonical basis and the constant terms kept.
pub fn kirwan_reduce(basis: &CanonicalBasis, p: &CircleProfile) -> Result<OrdinaryRing> {
    let mut order: Vec<usize> = basis.order.clone();
    order.sort_by_key(|&f| basis.index(f));
    let labels: Vec<RingLabel> = order
        .iter()
        .map(|&f| RingLabel {
            vertex: f,
            id: p.point(f).id.clone(),
            degree: basis.index(f),
        })
        .collect();
    let position = |vertex: usize| order.iter().position(|&f| f == vertex).unwrap();
    let reduce = |coeffs: Vec<crate::exact::UPoly>| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); labels.len()];
        for (f, c) in coeffs.iter().enumerate() {
            v[position(f)] = c.at_zero();
        }
        v
    };

    let m = labels.len();
    let mut table = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in i..m {
            let prod = basis
                .beta(labels[i].vertex)
                .cup(basis.beta(labels[j].vertex));
            let v = if prod.degree() as usize > 2 * basis.half_dim {
                vec![Rational::zero(); m]
            } else {
                reduce(expand_in_basis(&prod, basis, p)?)
            };
            table[j][i] = v.clone();
            table[i][j] = v;
        }
    }
    let omega = reduce(expand_in_basis(
        &equivariant_symplectic_class(p, &rat(0)),
        basis,
        p,
    )?);
    Ok(OrdinaryRing {
        labels,
        table,
        omega: Some(omega),
        dimension: 2 * basis.half_dim,
    })
}
