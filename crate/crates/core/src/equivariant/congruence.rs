//! Solving the GKM congruences degree by degree.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::class::TorusClass;
use crate::exact::{monomials, Exponent, Rational, RationalMatrix, TorusPoly};
use crate::gkm::GkmGraph;

/// A vector-space basis of the torus classes of cohomological degree `2 d`.
///
/// Unknowns are the coefficients of every degree-`d` monomial at every vertex;
/// each edge contributes the linear conditions saying that `f_v - f_w`
/// restricts to zero on the kernel of its weight.
pub fn torus_class_basis(g: &GkmGraph, d: u32) -> Vec<TorusClass> {
    let r = g.rank();
    let monos = monomials(r, d);
    let m = monos.len();
    let unknowns = g.len() * m;

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for e in g.edges() {
        // image of each monomial under restriction to ker(weight)
        let images: Vec<TorusPoly> = monos
            .iter()
            .map(|mono| {
                TorusPoly::monomial(mono.clone(), Rational::from_integer(1.into()))
                    .restrict_to_kernel(&e.weight)
            })
            .collect();
        let mut by_target: BTreeMap<&Exponent, Vec<(usize, Rational)>> = BTreeMap::new();
        for (j, img) in images.iter().enumerate() {
            for (exp, c) in img.terms() {
                by_target.entry(exp).or_default().push((j, c.clone()));
            }
        }
        for entries in by_target.values() {
            let mut row = vec![Rational::zero(); unknowns];
            for (j, c) in entries {
                row[e.v * m + j] += c;
                row[e.w * m + j] -= c;
            }
            rows.push(row);
        }
    }

    let null = if rows.is_empty() {
        RationalMatrix::identity(unknowns).to_rows()
    } else {
        RationalMatrix::from_rows(rows).null_space()
    };
    null.into_iter()
        .map(|x| {
            let restrictions = (0..g.len())
                .map(|i| {
                    TorusPoly::from_terms(
                        r,
                        monos
                            .iter()
                            .enumerate()
                            .map(|(j, e)| (e.clone(), x[i * m + j].clone())),
                    )
                })
                .collect();
            TorusClass::new_unchecked(restrictions, 2 * d)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::equivariant::class::is_member;

    #[test]
    fn degree_zero_is_constants() {
        let g = catalog::su3_flag();
        let b = torus_class_basis(&g, 0);
        assert_eq!(b.len(), 1);
        assert!(b[0]
            .restrictions()
            .iter()
            .all(|p| p == &b[0].restrictions()[0]));
    }

    #[test]
    fn basis_elements_are_members() {
        for g in [
            catalog::su3_flag(),
            catalog::so5_orbit(&crate::exact::rat(1)).unwrap(),
            catalog::cp(2),
        ] {
            for d in 0..=3 {
                for c in torus_class_basis(&g, d) {
                    assert!(is_member(&g, c.restrictions()));
                }
            }
        }
    }

    #[test]
    fn cp1_dimensions() {
        // H_T(CP^1) is free of rank 2 over Q[t]: dim in degree 2d is 1 for d = 0, else 2.
        let g = catalog::cp(1);
        assert_eq!(torus_class_basis(&g, 0).len(), 1);
        assert_eq!(torus_class_basis(&g, 1).len(), 2);
        assert_eq!(torus_class_basis(&g, 3).len(), 2);
    }

    #[test]
    fn su3_degree_two_dimension() {
        // free module with Poincare polynomial 1 + 2q + 2q^2 + q^3 over Q[t0, t1]:
        // degree-2 part has dim 1 * 2 + 2 * 1 = 4
        let g = catalog::su3_flag();
        assert_eq!(torus_class_basis(&g, 1).len(), 4);
    }
}
