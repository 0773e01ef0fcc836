//! Built-in GKM inputs: the two coadjoint orbits, plus projective spaces,
//! products of spheres and Hirzebruch surfaces as controls.
//!
//! Every generator emits a [`GkmDocument`] that the parser accepts unchanged.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{rat, ratio, Rational};
use crate::gkm::{EdgeDoc, GkmDocument, GkmGraph, VertexDoc};

fn primitive_direction(from: &[Rational], to: &[Rational]) -> Vec<i64> {
    let diff: Vec<Rational> = to.iter().zip(from).map(|(a, b)| a - b).collect();
    let den = diff
        .iter()
        .fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<i64> = diff
        .iter()
        .map(|x| {
            let v = x.numer() * (&den / x.denom());
            i64::try_from(v).expect("catalog coordinates fit in i64")
        })
        .collect();
    let g = ints.iter().fold(0i64, |g, &x| g.gcd(&x));
    ints.iter().map(|x| x / g).collect()
}

/// Assembles a document from positions and an edge list; weights are the
/// primitive directions from `v` to `w`.
fn document(
    dimension: usize,
    vertices: Vec<(String, Vec<Rational>)>,
    edges: &[(usize, usize)],
) -> GkmDocument {
    let rank = vertices[0].1.len();
    let edges = edges
        .iter()
        .map(|&(a, b)| EdgeDoc {
            v: vertices[a].0.clone(),
            w: vertices[b].0.clone(),
            weight: primitive_direction(&vertices[a].1, &vertices[b].1),
        })
        .collect();
    GkmDocument {
        rank,
        dimension,
        vertices: vertices
            .into_iter()
            .map(|(id, position)| VertexDoc { id, position })
            .collect(),
        edges,
    }
}

fn build(doc: GkmDocument) -> GkmGraph {
    GkmGraph::from_document(&doc).expect("catalog documents are valid")
}

fn point(x: &[i64]) -> Vec<Rational> {
    x.iter().map(|&a| rat(a)).collect()
}

/// The six-dimensional coadjoint orbit of SU(3): hexagon plus its three long diagonals.
pub fn su3_document() -> GkmDocument {
    let pts: [[i64; 2]; 6] = [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1], [1, -1]];
    let vertices = pts
        .iter()
        .map(|p| (format!("({},{})", p[0], p[1]), point(p)))
        .collect();
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 0),
        (0, 3),
        (1, 4),
        (5, 2),
    ];
    document(6, vertices, &edges)
}

pub fn su3_flag() -> GkmGraph {
    build(su3_document())
}

/// The six-dimensional coadjoint orbit of SO(5): a square of half-diagonal
/// `scale` plus both diagonals.
pub fn so5_document(scale: &Rational) -> Result<GkmDocument> {
    if scale <= &Rational::zero() {
        return Err(Error::Malformed("so5 scale must be positive".into()));
    }
    let pts = [
        ("+x", [1, 0]),
        ("+y", [0, 1]),
        ("-x", [-1, 0]),
        ("-y", [0, -1]),
    ];
    let vertices = pts
        .iter()
        .map(|(id, p)| {
            (
                id.to_string(),
                point(p).into_iter().map(|x| x * scale).collect(),
            )
        })
        .collect();
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)];
    Ok(document(6, vertices, &edges))
}

pub fn so5_orbit(scale: &Rational) -> Result<GkmGraph> {
    Ok(build(so5_document(scale)?))
}

/// Complex projective space: the standard simplex in rank `n`.
pub fn cp_document(n: usize) -> GkmDocument {
    assert!(n >= 1);
    let vertices = (0..=n)
        .map(|i| {
            let mut p = vec![0; n];
            if i > 0 {
                p[i - 1] = 1;
            }
            (format!("v{i}"), point(&p))
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    document(2 * n, vertices, &edges)
}

pub fn cp(n: usize) -> GkmGraph {
    build(cp_document(n))
}

/// `(S^2)^n` as a cube spanned by `d_1 = e_1`, `d_i = e_i - e_{i-1}`; every
/// weight pairs to `+-1` with `xi = (1, 2, .., n)`.
pub fn sphere_product_document(n: usize) -> GkmDocument {
    assert!(n >= 1);
    let dir = |i: usize| -> Vec<i64> {
        let mut d = vec![0; n];
        d[i] = 1;
        if i > 0 {
            d[i - 1] = -1;
        }
        d
    };
    let vertices = (0..1usize << n)
        .map(|s| {
            let mut p = vec![0i64; n];
            for i in (0..n).filter(|i| s >> i & 1 == 1) {
                for (x, d) in p.iter_mut().zip(dir(i)) {
                    *x += d;
                }
            }
            let id: String = (0..n)
                .map(|i| if s >> i & 1 == 1 { '1' } else { '0' })
                .collect();
            (id, point(&p))
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..1usize << n)
        .flat_map(|s| {
            (0..n)
                .filter(move |i| s >> i & 1 == 0)
                .map(move |i| (s, s | 1 << i))
        })
        .collect();
    document(2 * n, vertices, &edges)
}

pub fn sphere_product(n: usize) -> GkmGraph {
    build(sphere_product_document(n))
}

/// Hirzebruch surface: trapezoid `(0,0), (k+2,0), (2,1), (0,1)`.
pub fn hirzebruch_document(k: usize) -> GkmDocument {
    assert!(k >= 1);
    let k = k as i64;
    let vertices = vec![
        ("a".to_string(), point(&[0, 0])),
        ("b".to_string(), point(&[k + 2, 0])),
        ("c".to_string(), point(&[2, 1])),
        ("d".to_string(), point(&[0, 1])),
    ];
    document(4, vertices, &[(0, 1), (1, 2), (2, 3), (3, 0)])
}

pub fn hirzebruch(k: usize) -> GkmGraph {
    build(hirzebruch_document(k))
}

/// Where an expected fact comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Values stated with the published example.
    Published,
    /// Computed independently from the input data.
    Derived,
    /// A control input chosen to exercise a specific branch.
    Control,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedFacts {
    pub betti: Vec<usize>,
    /// `c_{2k}` per level when the moment map is constant on levels.
    pub levels: Option<Vec<Rational>>,
    pub normalizer: Option<(Rational, Rational)>,
    pub constant_on_levels: bool,
    pub hard_lefschetz: bool,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub document: GkmDocument,
    pub default_xi: Vec<i64>,
    pub expected: ExpectedFacts,
}

fn betti_alternating(half: &[usize]) -> Vec<usize> {
    half.iter()
        .enumerate()
        .flat_map(|(i, &b)| {
            if i + 1 == half.len() {
                vec![b]
            } else {
                vec![b, 0]
            }
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn default_xi(name: &str) -> Option<Vec<i64>> {
    lookup(name).map(|(_, xi)| xi)
}

/// Resolves a catalog name: `su3`, `so5`, `cp<N>`, `sphere_product<N>`, `hirzebruch<K>`.
pub fn lookup(name: &str) -> Option<(GkmDocument, Vec<i64>)> {
    let suffix = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.parse().ok().filter(|&n| n >= 1)
    };
    match name {
        "su3" => Some((su3_document(), vec![-1, 1])),
        "so5" => Some((so5_document(&rat(1)).ok()?, vec![-1, 3])),
        _ => {
            if let Some(n) = suffix("sphere_product") {
                Some((sphere_product_document(n), (1..=n as i64).collect()))
            } else if let Some(k) = suffix("hirzebruch") {
                Some((hirzebruch_document(k), vec![1, 2]))
            } else {
                suffix("cp").map(|n| (cp_document(n), (1..=n as i64).collect()))
            }
        }
    }
}

/// Every built-in input with the facts the pipeline must reproduce.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        CatalogEntry {
            name: "su3".into(),
            document: su3_document(),
            default_xi: vec![-1, 1],
            expected: ExpectedFacts {
                betti: betti_alternating(&[1, 2, 2, 1]),
                levels: Some(vec![rat(-2), rat(-1), rat(1), rat(2)]),
                normalizer: None,
                constant_on_levels: true,
                hard_lefschetz: true,
                provenance: Provenance::Published,
            },
        },
        CatalogEntry {
            name: "so5".into(),
            document: so5_document(&rat(1)).unwrap(),
            default_xi: vec![-1, 3],
            expected: ExpectedFacts {
                betti: betti_alternating(&[1, 1, 1, 1]),
                levels: Some(vec![rat(-3), rat(-1), rat(1), rat(3)]),
                normalizer: Some((rat(1), rat(3))),
                constant_on_levels: true,
                hard_lefschetz: true,
                provenance: Provenance::Derived,
            },
        },
        CatalogEntry {
            name: "so5-scale2".into(),
            document: so5_document(&rat(2)).unwrap(),
            default_xi: vec![-1, 3],
            expected: ExpectedFacts {
                betti: betti_alternating(&[1, 1, 1, 1]),
                levels: Some(vec![rat(-6), rat(-2), rat(2), rat(6)]),
                normalizer: Some((ratio(1, 2), rat(3))),
                constant_on_levels: true,
                hard_lefschetz: true,
                provenance: Provenance::Published,
            },
        },
    ];
    for n in 1..=3 {
        out.push(CatalogEntry {
            name: format!("cp{n}"),
            document: cp_document(n),
            default_xi: (1..=n as i64).collect(),
            expected: ExpectedFacts {
                betti: betti_alternating(&vec![1; n + 1]),
                levels: Some((0..=n as i64).map(rat).collect()),
                normalizer: Some((rat(2), rat(0))),
                constant_on_levels: true,
                hard_lefschetz: true,
                provenance: Provenance::Derived,
            },
        });
    }
    for n in 1..=3 {
        out.push(CatalogEntry {
            name: format!("sphere_product{n}"),
            document: sphere_product_document(n),
            default_xi: (1..=n as i64).collect(),
            expected: ExpectedFacts {
                betti: betti_alternating(&(0..=n).map(|k| binomial(n, k)).collect::<Vec<_>>()),
                levels: Some((0..=n as i64).map(rat).collect()),
                normalizer: Some((rat(2), rat(0))),
                constant_on_levels: true,
                hard_lefschetz: true,
                provenance: Provenance::Derived,
            },
        });
    }
    out.push(CatalogEntry {
        name: "hirzebruch1".into(),
        document: hirzebruch_document(1),
        default_xi: vec![1, 2],
        expected: ExpectedFacts {
            betti: betti_alternating(&[1, 2, 1]),
            levels: None,
            normalizer: None,
            constant_on_levels: false,
            hard_lefschetz: true,
            provenance: Provenance::Control,
        },
    });
    out
}
