use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::class::{CircleClass, TorusClass};
use super::congruence::torus_class_basis;
use crate::error::{Error, Result};
use crate::exact::{rat, Rational, RationalMatrix, Solution, TorusPoly, UPoly};
use crate::gkm::{CircleProfile, GkmGraph};

/// The canonical class attached to one fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalClass {
    pub vertex: usize,
    /// Morse index `k_F`, also the cohomological degree of the class.
    pub index: usize,
    /// Product of the negative circle weights at the vertex (1 at the minimum).
    pub negative_weight_product: Rational,
    /// `alpha_F`, restricting to `e^-_F` at `F`.
    pub alpha: CircleClass,
    /// `beta_F = alpha_F / negative_weight_product`, restricting to `u^{k_F/2}` at `F`.
    pub beta: CircleClass,
    /// A torus class specializing to `alpha_F`.
    pub lift: TorusClass,
}

/// Canonical classes of every fixed point, with the ascending moment order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    /// Indexed by vertex.
    pub classes: Vec<CanonicalClass>,
    /// Vertices by ascending moment value, then index, then id. Each `beta`
    /// vanishes at every vertex earlier in this order.
    pub order: Vec<usize>,
    pub half_dim: usize,
}

impl CanonicalBasis {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn beta(&self, vertex: usize) -> &CircleClass {
        &self.classes[vertex].beta
    }

    pub fn alpha(&self, vertex: usize) -> &CircleClass {
        &self.classes[vertex].alpha
    }

    pub fn index(&self, vertex: usize) -> usize {
        self.classes[vertex].index
    }
}

/// A basis of the specialized degree-`2d` classes, echelonized along the
/// moment order: the `k`-th vector has its first nonzero entry strictly after
/// that of the `(k-1)`-th. Each vector carries a torus lift.
struct TriangularSpace {
    vectors: Vec<Vec<Rational>>,
    lifts: Vec<TorusClass>,
}

fn triangular_space(
    g: &GkmGraph,
    p: &CircleProfile,
    order: &[usize],
    d: u32,
) -> Result<TriangularSpace> {
    let mut pool: Vec<(Vec<Rational>, TorusClass)> = Vec::new();
    for t in torus_class_basis(g, d) {
        let c = t.specialize(p.xi())?;
        pool.push((c.coefficients(), t));
    }
    let mut vectors = Vec::new();
    let mut lifts = Vec::new();
    for &row in order {
        let Some(k) = pool.iter().position(|(v, _)| !v[row].is_zero()) else {
            continue;
        };
        let (pv, pt) = pool.swap_remove(k);
        let inv = pv[row].recip();
        let pv: Vec<Rational> = pv.iter().map(|x| x * &inv).collect();
        let pt = pt.scale(&inv);
        for (v, t) in pool.iter_mut() {
            let f = v[row].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(&pv) {
                *a -= &f * b;
            }
            *t = t.add(&pt.scale(&-f));
        }
        vectors.push(pv);
        lifts.push(pt);
    }
    Ok(TriangularSpace { vectors, lifts })
}

/// Builds `alpha_F` for every fixed point `F`: the degree-`k_F` class that
/// vanishes below `F` in moment value, equals `e^-_F` at `F`, and vanishes at
/// every other fixed point of index at most `k_F`.
pub fn canonical_classes(g: &GkmGraph, p: &CircleProfile) -> Result<CanonicalBasis> {
    let order = p.ordered();
    let mut spaces: BTreeMap<u32, TriangularSpace> = BTreeMap::new();
    let mut classes = Vec::with_capacity(g.len());

    for (f, point) in p.points().iter().enumerate() {
        let d = point.half_index() as u32;
        if let std::collections::btree_map::Entry::Vacant(e) = spaces.entry(d) {
            e.insert(triangular_space(g, p, &order, d)?);
        }
        let space = &spaces[&d];
        let product = point
            .negative_weights()
            .fold(Rational::one(), |acc, w| acc * rat(w));

        let constrained: Vec<usize> = (0..g.len())
            .filter(|&q| {
                let other = p.point(q);
                q == f || other.moment < point.moment || other.index <= point.index
            })
            .collect();
        let rows: Vec<Vec<Rational>> = constrained
            .iter()
            .map(|&q| space.vectors.iter().map(|v| v[q].clone()).collect())
            .collect();
        let rhs: Vec<Rational> = constrained
            .iter()
            .map(|&q| {
                if q == f {
                    product.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let a = if space.vectors.is_empty() {
            RationalMatrix::zeros(rows.len(), 0)
        } else {
            RationalMatrix::from_rows(rows)
        };
        let x = match a.solve_affine(&rhs) {
            Solution::Empty => {
                return Err(Error::NoCanonicalClass {
                    vertex: point.id.clone(),
                })
            }
            Solution::Affine { directions, .. } => {
                return Err(Error::AmbiguousCanonicalClass {
                    vertex: point.id.clone(),
                    dimension: directions.len(),
                })
            }
            Solution::Unique(x) => x,
        };

        let mut coeffs = vec![Rational::zero(); g.len()];
        let mut lift = TorusClass::new_unchecked(vec![TorusPoly::zero(g.rank()); g.len()], 2 * d);
        for ((xi, v), t) in x.iter().zip(&space.vectors).zip(&space.lifts) {
            if xi.is_zero() {
                continue;
            }
            for (c, vq) in coeffs.iter_mut().zip(v) {
                *c += xi * vq;
            }
            lift = lift.add(&t.scale(xi));
        }
        let alpha = CircleClass::from_coefficients(coeffs, 2 * d);
        let beta = alpha.scale(&product.recip());
        classes.push(CanonicalClass {
            vertex: f,
            index: point.index,
            negative_weight_product: product,
            alpha,
            beta,
            lift,
        });
    }
    Ok(CanonicalBasis {
        classes,
        order,
        half_dim: p.half_dim(),
    })
}

/// Coefficients `p_F(u)` with `c = sum_F p_F beta_F`, one per vertex.
///
/// Walks the moment order: the residual at `F` is untouched by basis elements
/// later in the order, so it determines `p_F` directly.
pub fn expand_in_basis(
    c: &CircleClass,
    basis: &CanonicalBasis,
    p: &CircleProfile,
) -> Result<Vec<UPoly>> {
    let mut residual = c.clone();
    let mut coeffs = vec![UPoly::zero(); basis.len()];
    let power = c.degree() as usize / 2;
    for &f in &basis.order {
        let at_f = residual.restriction(f);
        if at_f.is_zero() {
            continue;
        }
        let k = basis.index(f) / 2;
        let coefficient = match at_f.monomial_coeff(power) {
            Some(a) if k <= power => UPoly::monomial(a, power - k),
            _ => {
                return Err(Error::ExpansionFailed {
                    vertex: p.point(f).id.clone(),
                })
            }
        };
        residual = residual.sub(&basis.beta(f).times_upoly(&coefficient));
        coeffs[f] = coefficient;
    }
    if let Some(q) = (0..residual.len()).find(|&q| !residual.vanishes_at(q)) {
        return Err(Error::ExpansionFailed {
            vertex: p.point(q).id.clone(),
        });
    }
    Ok(coeffs)
}

/// The equivariant symplectic class for the moment map `mu - shift`:
/// restriction `(shift - mu(F)) u` at each fixed point.
pub fn equivariant_symplectic_class(p: &CircleProfile, shift: &Rational) -> CircleClass {
    CircleClass::from_coefficients(p.points().iter().map(|f| shift - &f.moment).collect(), 2)
}

/// A torus class specializing to [`equivariant_symplectic_class`].
///
/// Uses `-<position, t>` plus a constant linear form `l` with `<l, xi> = 1`
/// absorbing the profile offset and the shift.
pub fn symplectic_torus_lift(
    g: &GkmGraph,
    p: &CircleProfile,
    shift: &Rational,
) -> Result<TorusClass> {
    let xi = p.xi();
    let norm: i64 = xi.iter().map(|x| x * x).sum();
    let constant = shift - p.offset();
    let l: Vec<Rational> = xi.iter().map(|&x| rat(x) * &constant / rat(norm)).collect();
    let l = TorusPoly::linear_rational(&l);
    let restrictions = g
        .vertices()
        .iter()
        .map(|v| &(-&TorusPoly::linear_rational(&v.position)) + &l)
        .collect();
    TorusClass::new(g, restrictions, 2)
}
