use num_traits::Signed;

use crate::exact::{rat, Rational};
use crate::gkm::CircleProfile;

/// The monotone normalization of a semifree action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemifreeAnalysis {
    /// Every circle weight is `+1` or `-1`.
    pub semifree: bool,
    /// `mu(z) = -(sum of circle weights at z)`, the restriction of `-c_1`;
    /// for a semifree action this is `2 n_z - n`. Empty when not semifree.
    pub monotone_mu: Vec<Rational>,
    /// `mu + n` agrees with the Morse index at every fixed point.
    pub self_indexing: bool,
    /// The monotone `mu` is a positive affine reparametrization of the given moment map.
    pub matches_moment_map: bool,
}

pub fn semifree_monotone_analysis(p: &CircleProfile) -> SemifreeAnalysis {
    let semifree = p
        .points()
        .iter()
        .all(|f| f.circle_weights.iter().all(|w| w.abs() == 1));
    if !semifree {
        return SemifreeAnalysis {
            semifree,
            monotone_mu: Vec::new(),
            self_indexing: false,
            matches_moment_map: false,
        };
    }
    let n = rat(p.half_dim() as i64);
    let monotone_mu: Vec<Rational> = p
        .points()
        .iter()
        .map(|f| -rat(f.circle_weights.iter().sum()))
        .collect();
    let self_indexing = p
        .points()
        .iter()
        .zip(&monotone_mu)
        .all(|(f, m)| m + &n == rat(f.index as i64));
    SemifreeAnalysis {
        semifree,
        matches_moment_map: affine_match(p, &monotone_mu),
        monotone_mu,
        self_indexing,
    }
}

fn affine_match(p: &CircleProfile, target: &[Rational]) -> bool {
    let pts = p.points();
    let Some(j) = (1..pts.len()).find(|&j| pts[j].moment != pts[0].moment) else {
        return pts.len() <= 1 || target.iter().all(|t| t == &target[0]);
    };
    let a = (&target[j] - &target[0]) / (&pts[j].moment - &pts[0].moment);
    let b = &target[0] - &a * &pts[0].moment;
    a.is_positive()
        && pts
            .iter()
            .zip(target)
            .all(|(f, t)| &(&a * &f.moment + &b) == t)
}
