use num_traits::Zero;

use crate::equivariant::{
    abbv_integrate, equivariant_symplectic_class, CanonicalBasis, EulerData, OrdinaryRing,
};
use crate::error::Result;
use crate::exact::{rat, Rational, RationalMatrix};
use crate::gkm::CircleProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeVerdict {
    /// Odd degree: both sides vanish for isolated fixed points.
    Vacuous,
    Isomorphism,
    NotIsomorphism,
}

/// Multiplication by `[omega]^{n-k}` from degree `k` to degree `2n - k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: usize,
    pub power: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Row `i` holds the image of the `i`-th source basis element. `None` for odd degrees.
    pub matrix: Option<RationalMatrix>,
    pub rank: Option<usize>,
    pub verdict: DegreeVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HLReport {
    pub half_dim: usize,
    pub degrees: Vec<DegreeCheck>,
    pub holds: bool,
}

/// Decides the hard Lefschetz property on a reduced ring with its `[omega]`.
pub fn hard_lefschetz_check(ring: &OrdinaryRing) -> Result<HLReport> {
    let omega = ring.omega()?;
    let n = ring.dimension / 2;
    let mut degrees = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k % 2 == 1 {
            degrees.push(DegreeCheck {
                degree: k,
                power: n - k,
                source_dim: 0,
                target_dim: 0,
                matrix: None,
                rank: None,
                verdict: DegreeVerdict::Vacuous,
            });
            continue;
        }
        let source = ring.degree_part(k);
        let target = ring.degree_part(2 * n - k);
        let lift = ring.pow(omega, n - k);
        let rows: Vec<Vec<Rational>> = source
            .iter()
            .map(|&s| {
                let image = ring.mul(&ring.basis_vector(s), &lift);
                target.iter().map(|&t| image[t].clone()).collect()
            })
            .collect();
        let matrix = if source.is_empty() {
            RationalMatrix::zeros(0, target.len())
        } else {
            RationalMatrix::from_rows(rows)
        };
        let rank = matrix.rank();
        let iso = rank == source.len() && rank == target.len();
        degrees.push(DegreeCheck {
            degree: k,
            power: n - k,
            source_dim: source.len(),
            target_dim: target.len(),
            matrix: Some(matrix),
            rank: Some(rank),
            verdict: if iso {
                DegreeVerdict::Isomorphism
            } else {
                DegreeVerdict::NotIsomorphism
            },
        });
    }
    let holds = degrees
        .iter()
        .all(|d| d.verdict != DegreeVerdict::NotIsomorphism);
    Ok(HLReport {
        half_dim: n,
        degrees,
        holds,
    })
}

/// Index-`k` canonical basis vertices in moment order.
fn level_vertices(basis: &CanonicalBasis, k: usize) -> Vec<usize> {
    basis
        .order
        .iter()
        .copied()
        .filter(|&f| basis.index(f) == k)
        .collect()
}

fn integral_constant(c: &crate::equivariant::CircleClass, e: &EulerData) -> Result<Rational> {
    Ok(abbv_integrate(c, e)?.coeff(0))
}

/// `P[F][G] = int beta_F beta_G omega^{n-k}` over index-`k` vertices, by localization.
///
/// Its rank equals the rank of the Lefschetz map in degree `k`.
pub fn lefschetz_pairing(
    basis: &CanonicalBasis,
    p: &CircleProfile,
    k: usize,
) -> Result<RationalMatrix> {
    let n = basis.half_dim;
    let e = EulerData::new(p);
    let omega = equivariant_symplectic_class(p, &rat(0)).pow((n - k) as u32);
    let vs = level_vertices(basis, k);
    let mut m = RationalMatrix::zeros(vs.len(), vs.len());
    for (i, &f) in vs.iter().enumerate() {
        let fo = basis.beta(f).cup(&omega);
        for (j, &g) in vs.iter().enumerate() {
            m[(i, j)] = integral_constant(&fo.cup(basis.beta(g)), &e)?;
        }
    }
    Ok(m)
}

/// `P[F][G] = int beta_F beta_G` for index `k` against index `2n - k`.
pub fn poincare_pairing(
    basis: &CanonicalBasis,
    p: &CircleProfile,
    k: usize,
) -> Result<RationalMatrix> {
    let n = basis.half_dim;
    let e = EulerData::new(p);
    let rows = level_vertices(basis, k);
    let cols = level_vertices(basis, 2 * n - k);
    let mut m = RationalMatrix::zeros(rows.len(), cols.len());
    for (i, &f) in rows.iter().enumerate() {
        for (j, &g) in cols.iter().enumerate() {
            m[(i, j)] = integral_constant(&basis.beta(f).cup(basis.beta(g)), &e)?;
        }
    }
    Ok(m)
}

/// `int omega^n`, the symplectic volume up to the usual factorial.
pub fn top_power_integral(p: &CircleProfile) -> Result<Rational> {
    let e = EulerData::new(p);
    let omega = equivariant_symplectic_class(p, &Rational::zero());
    integral_constant(&omega.pow(p.half_dim() as u32), &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::equivariant::{canonical_classes, kirwan_reduce};
    use crate::gkm::restrict_to_circle;

    #[test]
    fn su3_matrix() {
        let g = catalog::su3_flag();
        let p = restrict_to_circle(&g, &[-1, 1]).unwrap();
        let b = canonical_classes(&g, &p).unwrap();
        let ring = kirwan_reduce(&b, &p).unwrap();
        let hl = hard_lefschetz_check(&ring).unwrap();
        assert!(hl.holds);
        let d2 = &hl.degrees[2];
        assert_eq!(d2.rank, Some(2));
        // [omega] = -(b_(1,0) + b_(0,-1)); images in the basis (b_(0,1), b_(-1,0)) ordered by moment
        let m = d2.matrix.as_ref().unwrap();
        let mut rows = m.to_rows();
        rows.sort();
        assert_eq!(rows, vec![vec![rat(-4), rat(-2)], vec![rat(-2), rat(-4)]]);
        assert_eq!(hl.degrees[1].verdict, DegreeVerdict::Vacuous);
        assert_eq!(hl.degrees[3].verdict, DegreeVerdict::Vacuous);
    }

    #[test]
    fn top_power_integrals() {
        // independent sympy localization sums: 6 for su3, 2 for the unit so5 square
        let su3 = restrict_to_circle(&catalog::su3_flag(), &[-1, 1]).unwrap();
        assert_eq!(top_power_integral(&su3).unwrap(), rat(6));
        assert_eq!(top_power_integral(&su3.min_normalized()).unwrap(), rat(6));
        let so5 = restrict_to_circle(&catalog::so5_orbit(&rat(1)).unwrap(), &[-1, 3]).unwrap();
        assert_eq!(top_power_integral(&so5).unwrap(), rat(2));
        let cp1 = restrict_to_circle(&catalog::cp(1), &[1]).unwrap();
        assert_eq!(top_power_integral(&cp1).unwrap(), rat(1));
    }
}
