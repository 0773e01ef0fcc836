use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::graph::GkmGraph;
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// Per-fixed-point data of a circle action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub id: String,
    /// Circle weights `<w, xi>` in the graph's incidence order.
    pub circle_weights: Vec<i64>,
    /// Morse index: twice the number of negative circle weights.
    pub index: usize,
    pub moment: Rational,
}

impl FixedPoint {
    pub fn negative_weights(&self) -> impl Iterator<Item = i64> + '_ {
        self.circle_weights.iter().copied().filter(|&w| w < 0)
    }

    /// `k_F / 2`, the number of negative weights.
    pub fn half_index(&self) -> usize {
        self.index / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelValue {
    Empty,
    Constant(Rational),
    NonConstant,
}

/// The set of fixed points of index `2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub index: usize,
    pub vertices: Vec<usize>,
    pub value: LevelValue,
}

impl Level {
    pub fn constant(&self) -> Option<&Rational> {
        match &self.value {
            LevelValue::Constant(c) => Some(c),
            _ => None,
        }
    }
}

/// The circle action selected by an integer vector `xi`.
///
/// Moment values are `<position, xi> + offset`; the offset is zero unless the
/// profile was shifted (see [`CircleProfile::min_normalized`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleProfile {
    xi: Vec<i64>,
    half_dim: usize,
    points: Vec<FixedPoint>,
    levels: Vec<Level>,
    offset: Rational,
    warnings: Vec<String>,
}

/// Outcome of testing whether the moment map is constant on every level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub constant_on_levels: bool,
    /// `c_{2k}` for `k = 0..=n`; `None` where the level is empty or non-constant.
    pub constants: Vec<Option<Rational>>,
    /// Pairwise distinctness of the defined constants.
    pub all_distinct: bool,
}

/// Derives weights, indices, moment values and levels for the circle `xi`.
pub fn restrict_to_circle(g: &GkmGraph, xi: &[i64]) -> Result<CircleProfile> {
    if xi.len() != g.rank() {
        return Err(Error::RankMismatch {
            expected: g.rank(),
            found: xi.len(),
        });
    }
    let pair = |w: &[i64]| -> i64 { w.iter().zip(xi).map(|(a, b)| a * b).sum() };
    for e in g.edges() {
        if pair(&e.weight) == 0 {
            return Err(Error::NonGeneric {
                v: g.vertices()[e.v].id.clone(),
                w: g.vertices()[e.w].id.clone(),
                weight: e.weight.clone(),
            });
        }
    }
    let points = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let circle_weights: Vec<i64> = g.outward(i).map(|(_, w)| pair(&w)).collect();
            let index = 2 * circle_weights.iter().filter(|&&w| w < 0).count();
            let moment = v
                .position
                .iter()
                .zip(xi)
                .fold(Rational::zero(), |acc, (p, &x)| acc + p * rat(x));
            FixedPoint {
                id: v.id.clone(),
                circle_weights,
                index,
                moment,
            }
        })
        .collect();
    Ok(CircleProfile::from_points(
        xi.to_vec(),
        g.half_dim(),
        points,
        Rational::zero(),
    ))
}

impl CircleProfile {
    fn from_points(
        xi: Vec<i64>,
        half_dim: usize,
        points: Vec<FixedPoint>,
        offset: Rational,
    ) -> Self {
        let mut levels: Vec<Level> = (0..=half_dim)
            .map(|k| Level {
                index: 2 * k,
                vertices: Vec::new(),
                value: LevelValue::Empty,
            })
            .collect();
        for (i, p) in points.iter().enumerate() {
            levels[p.index / 2].vertices.push(i);
        }
        for level in &mut levels {
            let mut values = level.vertices.iter().map(|&i| &points[i].moment);
            level.value = match values.next() {
                None => LevelValue::Empty,
                Some(first) if values.all(|v| v == first) => LevelValue::Constant(first.clone()),
                Some(_) => LevelValue::NonConstant,
            };
        }
        let mut warnings = Vec::new();
        let betti: Vec<usize> = levels.iter().map(|l| l.vertices.len()).collect();
        if betti[0] != 1 || betti[half_dim] != 1 {
            warnings.push(format!(
                "expected exactly one minimum and one maximum, found {} and {}",
                betti[0], betti[half_dim]
            ));
        }
        for k in 0..=half_dim {
            if betti[k] != betti[half_dim - k] {
                warnings.push(format!(
                    "Poincare duality fails: b_{} = {} but b_{} = {}",
                    2 * k,
                    betti[k],
                    2 * (half_dim - k),
                    betti[half_dim - k]
                ));
                break;
            }
        }
        Self {
            xi,
            half_dim,
            points,
            levels,
            offset,
            warnings,
        }
    }

    pub fn xi(&self) -> &[i64] {
        &self.xi
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &FixedPoint {
        &self.points[i]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Constant added to `<position, xi>` to obtain the stored moment values.
    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Same action with every moment value shifted by `t`.
    pub fn shifted(&self, t: &Rational) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| FixedPoint {
                moment: &p.moment + t,
                ..p.clone()
            })
            .collect();
        Self::from_points(self.xi.clone(), self.half_dim, points, &self.offset + t)
    }

    pub fn min_moment(&self) -> Rational {
        self.points
            .iter()
            .map(|p| &p.moment)
            .min()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Shift making the minimum moment value zero; the applied shift is `offset() - old offset`.
    pub fn min_normalized(&self) -> Self {
        self.shifted(&-self.min_moment())
    }

    pub fn is_min_normalized(&self) -> bool {
        self.min_moment().is_zero()
    }

    /// Vertex indices sorted by moment value, then Morse index, then id.
    pub fn ordered(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.sort_by(|&a, &b| self.order_cmp(a, b));
        order
    }

    fn order_cmp(&self, a: usize, b: usize) -> Ordering {
        let (p, q) = (&self.points[a], &self.points[b]);
        p.moment
            .cmp(&q.moment)
            .then(p.index.cmp(&q.index))
            .then_with(|| p.id.cmp(&q.id))
    }

    /// `b_0, b_1, .., b_{2n}`; odd entries are zero.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0; 2 * self.half_dim + 1];
        for l in &self.levels {
            b[l.index] = l.vertices.len();
        }
        b
    }

    pub fn check_hypothesis(&self) -> Hypothesis {
        let constant_on_levels = self
            .levels
            .iter()
            .all(|l| !matches!(l.value, LevelValue::NonConstant));
        let constants: Vec<Option<Rational>> =
            self.levels.iter().map(|l| l.constant().cloned()).collect();
        let defined: Vec<&Rational> = constants.iter().flatten().collect();
        let all_distinct = defined
            .iter()
            .enumerate()
            .all(|(i, a)| defined[i + 1..].iter().all(|b| a != b));
        Hypothesis {
            constant_on_levels,
            constants,
            all_distinct,
        }
    }

    /// `(a, b)` with `a > 0` and `a c_{2k} + b = 2k` on every nonempty level, if it exists.
    pub fn self_indexing_normalizer(&self) -> Result<Option<(Rational, Rational)>> {
        let mut pts = Vec::new();
        for l in &self.levels {
            match &l.value {
                LevelValue::Empty => {}
                LevelValue::Constant(c) => pts.push((c.clone(), rat(l.index as i64))),
                LevelValue::NonConstant => return Err(Error::HypothesisNotMet { index: l.index }),
            }
        }
        let [(c0, k0), (c1, k1), ..] = pts.as_slice() else {
            return Ok(None);
        };
        if c0 == c1 {
            return Ok(None);
        }
        let a = (k1 - k0) / (c1 - c0);
        let b = k0 - &a * c0;
        let fits = pts.iter().all(|(c, k)| &(&a * c + &b) == k);
        Ok((fits && a.is_positive()).then_some((a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::gkm::graph::{EdgeDoc, GkmDocument, VertexDoc};

    fn synthetic(levels: &[i64]) -> CircleProfile {
        // a chain of fixed points with prescribed moment values, one per level
        let n = levels.len() - 1;
        let points = levels
            .iter()
            .enumerate()
            .map(|(k, &c)| FixedPoint {
                id: format!("p{k}"),
                circle_weights: (0..n).map(|j| if j < k { -1 } else { 1 }).collect(),
                index: 2 * k,
                moment: rat(c),
            })
            .collect();
        CircleProfile::from_points(vec![1], n, points, Rational::zero())
    }

    #[test]
    fn already_self_indexing() {
        let p = synthetic(&[0, 2, 4, 6]);
        assert_eq!(
            p.self_indexing_normalizer().unwrap(),
            Some((rat(1), rat(0)))
        );
    }

    #[test]
    fn so5_unit_square_levels_give_normalizer() {
        let p = synthetic(&[-3, -1, 1, 3]);
        assert_eq!(
            p.self_indexing_normalizer().unwrap(),
            Some((rat(1), rat(3)))
        );
        let q = synthetic(&[-6, -2, 2, 6]);
        assert_eq!(
            q.self_indexing_normalizer().unwrap(),
            Some((ratio(1, 2), rat(3)))
        );
    }

    #[test]
    fn su3_levels_have_no_normalizer() {
        let p = synthetic(&[-2, -1, 1, 2]);
        assert_eq!(p.self_indexing_normalizer().unwrap(), None);
    }

    #[test]
    fn repeated_constant_is_not_distinct() {
        let p = synthetic(&[0, 0, 3]);
        let h = p.check_hypothesis();
        assert!(h.constant_on_levels);
        assert!(!h.all_distinct);
    }

    #[test]
    fn decreasing_levels_have_no_positive_normalizer() {
        let p = synthetic(&[6, 4, 2, 0]);
        assert_eq!(p.self_indexing_normalizer().unwrap(), None);
    }

    #[test]
    fn cp1_profile() {
        let doc = GkmDocument {
            rank: 1,
            dimension: 2,
            vertices: vec![
                VertexDoc {
                    id: "S".into(),
                    position: vec![rat(0)],
                },
                VertexDoc {
                    id: "N".into(),
                    position: vec![rat(1)],
                },
            ],
            edges: vec![EdgeDoc {
                v: "S".into(),
                w: "N".into(),
                weight: vec![1],
            }],
        };
        let g = GkmGraph::from_document(&doc).unwrap();
        let p = restrict_to_circle(&g, &[1]).unwrap();
        assert_eq!(p.betti(), vec![1, 0, 1]);
        assert_eq!(p.point(1).index, 2);
        assert!(p.warnings().is_empty());
        assert!(matches!(
            restrict_to_circle(&g, &[0]),
            Err(Error::NonGeneric { .. })
        ));
        assert!(matches!(
            restrict_to_circle(&g, &[1, 1]),
            Err(Error::RankMismatch { .. })
        ));
    }
}
