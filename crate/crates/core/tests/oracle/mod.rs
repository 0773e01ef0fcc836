//! Canonical classes from one global linear system, solved here with a
//! separate elimination, compared with the triangular construction.
//!
//! Congruences are imposed by evaluating `f_v - f_w` at grid points of the
//! hyperplane `<weight, t> = 0` instead of by substitution.

use lefschetz_core::exact::Rational;
use lefschetz_core::gkm::{restrict_to_circle, GkmGraph};
use num_traits::{One, Zero};

fn r(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

pub fn exponents(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=degree {
        for mut rest in exponents(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn monomial_at(e: &[u32], point: &[Rational]) -> Rational {
    e.iter().zip(point).fold(Rational::one(), |acc, (&k, x)| {
        acc * num_traits::pow(x.clone(), k as usize)
    })
}

/// Points of the hyperplane `<w, t> = 0` on a `(d+1)^{r-1}` grid of its kernel basis.
pub fn hyperplane_points(w: &[i64], d: u32) -> Vec<Vec<Rational>> {
    let rank = w.len();
    let j = w.iter().position(|&x| x != 0).unwrap();
    let kernel: Vec<Vec<i64>> = (0..rank)
        .filter(|&i| i != j)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = w[j];
            v[j] = -w[i];
            v
        })
        .collect();
    let mut points = vec![vec![r(0); rank]];
    for k in &kernel {
        let mut next = Vec::new();
        for p in &points {
            for s in 0..=d as i64 {
                next.push(p.iter().zip(k).map(|(x, &c)| x + r(s * c)).collect());
            }
        }
        points = next;
    }
    points
}

/// Row reduction returning a particular solution and a null-space basis, or
/// `None` when inconsistent.
pub fn solve(
    mut rows: Vec<Vec<Rational>>,
    n: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = Rational::one() / &rows[row][col];
        for x in rows[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != row && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[row].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![r(0); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![r(0); n];
            v[f] = r(1);
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -rows[i][f].clone();
            }
            v
        })
        .collect();
    Some((x, null))
}

/// Specialized restrictions `f_v(xi)` of the canonical class at vertex `f`.
pub fn global_alpha(g: &GkmGraph, xi: &[i64], f: usize) -> Vec<Rational> {
    let p = restrict_to_circle(g, xi).unwrap();
    let pts = p.points();
    let d = pts[f].index as u32 / 2;
    let mons = exponents(g.rank(), d);
    let m = mons.len();
    let nv = g.len();
    let n = nv * m;
    let xi_r: Vec<Rational> = xi.iter().map(|&x| r(x)).collect();
    let mut rows = Vec::new();

    for e in g.edges() {
        for pt in hyperplane_points(&e.weight, d) {
            let mut row = vec![r(0); n + 1];
            for (k, mon) in mons.iter().enumerate() {
                let val = monomial_at(mon, &pt);
                row[e.v * m + k] += &val;
                row[e.w * m + k] -= &val;
            }
            rows.push(row);
        }
    }
    let at_xi = |v: usize, target: Rational| {
        let mut row = vec![r(0); n + 1];
        for (k, mon) in mons.iter().enumerate() {
            row[v * m + k] = monomial_at(mon, &xi_r);
        }
        row[n] = target;
        row
    };
    for (v, q) in pts.iter().enumerate() {
        if v == f {
            let product = q.negative_weights().fold(r(1), |acc, w| acc * r(w));
            rows.push(at_xi(v, product));
        } else if q.moment < pts[f].moment || q.index <= pts[f].index {
            rows.push(at_xi(v, r(0)));
        }
    }

    let (x, null) = solve(rows, n).expect("canonical class exists");
    let special = |sol: &[Rational]| -> Vec<Rational> {
        (0..nv)
            .map(|v| {
                mons.iter()
                    .enumerate()
                    .map(|(k, mon)| &sol[v * m + k] * monomial_at(mon, &xi_r))
                    .sum()
            })
            .collect()
    };
    for dir in &null {
        assert!(
            special(dir).iter().all(Zero::is_zero),
            "canonical class not unique at {}",
            pts[f].id
        );
    }
    special(&x)
}
