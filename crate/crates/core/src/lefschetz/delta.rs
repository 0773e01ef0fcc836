use num_traits::Zero;

use super::lemmas::{level_constant, LemmaEntry, LemmaKind};
use crate::equivariant::{
    equivariant_symplectic_class, expand_in_basis, CanonicalBasis, CircleClass,
};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational, UPoly};
use crate::gkm::CircleProfile;

/// Outcome of one certificate, alongside its ledger entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCertificate {
    pub entry: LemmaEntry,
    /// `delta = gamma * omega_{2k} * .. * omega_{2n-2k-2}`.
    pub delta: CircleClass,
    /// Constant coefficients of `delta` in the canonical basis, by vertex. They
    /// are the coordinates of `gamma [omega]^{n-2k}` in ordinary cohomology.
    pub image: Vec<Rational>,
}

impl DeltaCertificate {
    pub fn is_nonzero(&self) -> bool {
        !self.delta.is_zero()
    }
}

/// Forms `delta` for a degree-`2k` class `gamma` vanishing below index `2k`
/// and checks the vanishing pattern and the product formula
/// `delta|z = gamma|z * prod_j (c_{2j} - mu(z)) u` at every `z` of index `>= 2n-2k`.
pub fn delta_certificate(
    basis: &CanonicalBasis,
    p: &CircleProfile,
    gamma: &CircleClass,
    k: usize,
) -> Result<DeltaCertificate> {
    let n = basis.half_dim;
    if 2 * k > n {
        return Err(Error::MalformedClass(format!(
            "degree {} exceeds the middle degree {n}",
            2 * k
        )));
    }
    if gamma.len() != p.points().len() || gamma.degree() as usize != 2 * k {
        return Err(Error::MalformedClass(format!(
            "expected a degree-{} class on {} points",
            2 * k,
            p.points().len()
        )));
    }
    if let Some(z) = (0..gamma.len()).find(|&z| basis.index(z) < 2 * k && !gamma.vanishes_at(z)) {
        return Err(Error::MalformedClass(format!(
            "class does not vanish at {} of index {}",
            p.point(z).id,
            basis.index(z)
        )));
    }
    let constants: Vec<Rational> = (k..n - k)
        .map(|j| level_constant(p, j))
        .collect::<Result<_>>()?;
    let delta = constants.iter().fold(gamma.clone(), |acc, c| {
        acc.cup(&equivariant_symplectic_class(p, c))
    });

    let mut entry = LemmaEntry::new(LemmaKind::DeltaCertificate, format!("degree {}", 2 * k));
    entry.put(
        "factors",
        constants
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(", "),
    );
    let top = 2 * n - 2 * k;
    for &z in &basis.order {
        let at = delta.restriction(z);
        if basis.index(z) < top {
            entry.require(at.is_zero());
            continue;
        }
        let expected = constants
            .iter()
            .fold(gamma.restriction(z).clone(), |acc, c| {
                &acc * &UPoly::monomial(c - &p.point(z).moment, 1)
            });
        entry.put(format!("delta at {}", p.point(z).id), at.to_string());
        entry.require(*at == expected);
    }

    let coeffs = expand_in_basis(&delta, basis, p)?;
    // vanishing below index 2n-2k leaves only constant coefficients at that index
    let clean = coeffs
        .iter()
        .enumerate()
        .all(|(f, c)| c.is_zero() || (basis.index(f) == top && c.degree() == Some(0)));
    entry.require(clean);
    let image: Vec<Rational> = coeffs.iter().map(UPoly::at_zero).collect();
    let nonzero = !delta.is_zero();
    entry.require(nonzero == image.iter().any(|c| !c.is_zero()));
    entry.put("nonzero", nonzero.to_string());
    Ok(DeltaCertificate {
        entry,
        delta,
        image,
    })
}

/// The spanning set of `gamma` tried in degree `2k`: each `alpha_F` with `F`
/// of index `2k`, then the differences `alpha_{F_1} - alpha_{F_j}`.
pub fn delta_candidates(
    basis: &CanonicalBasis,
    p: &CircleProfile,
    k: usize,
) -> Vec<(String, CircleClass)> {
    let level: Vec<usize> = basis
        .order
        .iter()
        .copied()
        .filter(|&f| basis.index(f) == 2 * k)
        .collect();
    let mut out: Vec<(String, CircleClass)> = level
        .iter()
        .map(|&f| (format!("alpha {}", p.point(f).id), basis.alpha(f).clone()))
        .collect();
    if let Some((&first, rest)) = level.split_first() {
        for &f in rest {
            let label = format!("alpha {} - alpha {}", p.point(first).id, p.point(f).id);
            out.push((label, basis.alpha(first).sub(basis.alpha(f))));
        }
    }
    out
}
