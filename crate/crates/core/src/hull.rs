//! Exact lower hulls of small lifted point sets, the induced triangulations,
//! and reflexivity of lattice polytopes.
//!
//! Hyperplanes are enumerated by brute force over affinely independent
//! subsets, which is `O(C(m, d))` candidates for `m` points in `ℝ^d`
//! (1287 for the built-in 13-point dataset). All arithmetic is in `BigInt`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{kn_complex, SimplicialComplex, VertexLabel};
use crate::linalg::{rank, SparseVec};
use crate::{Error, Result};

pub use crate::complexes::complexes_isomorphic;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope {
    pub dimension: usize,
    pub points: Vec<Vec<i64>>,
    #[serde(skip_deserializing)]
    pub affine_dimension: usize,
}

impl LatticePolytope {
    /// The convex hull of `points` (all of length `dimension`, distinct).
    pub fn new(points: Vec<Vec<i64>>) -> Result<LatticePolytope> {
        let dimension = points.first().map(Vec::len).ok_or_else(|| Error::Degenerate("no points".into()))?;
        if points.iter().any(|p| p.len() != dimension) {
            return Err(Error::InvalidArgument("points of different lengths".into()));
        }
        if points.iter().collect::<BTreeSet<_>>().len() != points.len() {
            return Err(Error::InvalidArgument("repeated point".into()));
        }
        let affine_dimension = affine_rank(&points);
        Ok(LatticePolytope { dimension, points, affine_dimension })
    }

    /// Columns of a whitespace-separated integer matrix are the points.
    pub fn from_matrix_text(text: &str) -> Result<LatticePolytope> {
        let rows: Vec<Vec<i64>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<i64>().map_err(|e| Error::Parse { pos: 0, msg: format!("{t}: {e}") }))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(Error::Parse { pos: 0, msg: "ragged or empty matrix".into() });
        }
        LatticePolytope::new((0..width).map(|c| rows.iter().map(|r| r[c]).collect()).collect())
    }

    pub fn from_json(text: &str) -> Result<LatticePolytope> {
        #[derive(Deserialize)]
        struct Raw {
            points: Vec<Vec<i64>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
        LatticePolytope::new(raw.points)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dimension == self.dimension
    }

    /// Drops coordinate `coord` from every point.
    pub fn project(&self, coord: usize) -> Result<LatticePolytope> {
        LatticePolytope::new(self.points.iter().map(|p| drop_coord(p, coord)).collect())
    }

    /// Facet-defining inequalities `⟨a, x⟩ ≥ b` with primitive integral `a`,
    /// each with the indices of the points on the facet.
    pub fn facets(&self) -> Result<Vec<Facet>> {
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate(format!(
                "affine dimension {} in R^{}",
                self.affine_dimension, self.dimension
            )));
        }
        Ok(supporting_hyperplanes(&self.points))
    }
}

fn drop_coord(p: &[i64], coord: usize) -> Vec<i64> {
    p.iter().enumerate().filter(|(k, _)| *k != coord).map(|(_, &v)| v).collect()
}

fn affine_rank(points: &[Vec<i64>]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let rows: Vec<SparseVec> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(p0)
                .enumerate()
                .filter(|(_, (a, b))| a != b)
                .map(|(k, (a, b))| (k, BigInt::from(a - b)))
                .collect()
        })
        .collect();
    rank(&rows)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Facet {
    /// Inner normal, primitive.
    pub normal: Vec<i64>,
    pub offset: i64,
    pub points: Vec<usize>,
}

/// Normal of the hyperplane through `d` affinely independent points of
/// `ℝ^d`, as signed maximal minors of the difference matrix; zero when
/// the points are dependent.
fn hyperplane_normal(pts: &[&Vec<i64>]) -> Vec<BigInt> {
    let d = pts[0].len();
    let diffs: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = diffs
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let det = determinant(&minor);
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

fn dot_i(a: &[BigInt], p: &[i64]) -> BigInt {
    a.iter().zip(p).map(|(x, &y)| x * BigInt::from(y)).sum()
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// All hyperplanes through `d` affinely independent points that have every
/// point weakly on one side; deduplicated and sorted.
fn supporting_hyperplanes(points: &[Vec<i64>]) -> Vec<Facet> {
    let d = points[0].len();
    let found: Vec<Option<Facet>> = subsets(points.len(), d)
        .par_iter()
        .map(|sub| {
            let pts: Vec<&Vec<i64>> = sub.iter().map(|&i| &points[i]).collect();
            let mut a = hyperplane_normal(&pts);
            let g = a.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            if g.is_zero() {
                return None;
            }
            for v in a.iter_mut() {
                *v /= &g;
            }
            let b = dot_i(&a, &points[sub[0]]);
            let vals: Vec<BigInt> = points.iter().map(|p| dot_i(&a, p) - &b).collect();
            let pos = vals.iter().any(|v| v.is_positive());
            let neg = vals.iter().any(|v| v.is_negative());
            if pos && neg {
                return None;
            }
            if neg {
                a = a.into_iter().map(|v| -v).collect();
            }
            let on: Vec<usize> = (0..points.len()).filter(|&i| vals[i].is_zero()).collect();
            let to_i64 = |v: &BigInt| i64::try_from(v).expect("small normal");
            let normal: Vec<i64> = a.iter().map(to_i64).collect();
            let offset = to_i64(&dot_i(&a, &points[sub[0]]));
            Some(Facet { normal, offset, points: on })
        })
        .collect();
    found.into_iter().flatten().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Facets of the hull of the lifted points whose inner normal has a
/// positive `height` component, as point-index sets.
pub fn lower_facets(points: &[Vec<i64>], height: usize) -> Result<Vec<Vec<usize>>> {
    let poly = LatticePolytope::new(points.to_vec())?;
    if height >= poly.dimension {
        return Err(Error::InvalidArgument(format!("height coordinate {height} out of range")));
    }
    if points.len() < poly.dimension + 1 || !poly.is_full_dimensional() {
        return Err(Error::Degenerate("lifted point set is not full-dimensional".into()));
    }
    let mut out: Vec<Vec<usize>> = supporting_hyperplanes(points)
        .into_iter()
        .filter(|f| f.normal[height] > 0)
        .map(|f| f.points)
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    pub complex: SimplicialComplex,
    /// `|det|` of each facet's projected edge vectors, in facet order.
    pub volumes: Vec<u64>,
    pub unimodular: bool,
    /// Every ridge lies in two facets on opposite sides, or in one facet and
    /// on the boundary of the projected polytope.
    pub ridges_ok: bool,
}

/// Vertex label used for point `i` (1-based, like matrix columns).
pub fn point_label(i: usize) -> VertexLabel {
    VertexLabel::Free(i as u32 + 1)
}

/// The abstract complex of the projected lower facets, with checks.
pub fn triangulation_complex(points: &[Vec<i64>], facets: &[Vec<usize>], height: usize) -> Result<Triangulation> {
    let projected: Vec<Vec<i64>> = points.iter().map(|p| drop_coord(p, height)).collect();
    let e = projected.first().map(Vec::len).unwrap_or(0);
    if projected.iter().collect::<BTreeSet<_>>().len() != projected.len() {
        return Err(Error::Degenerate("projected points coincide".into()));
    }
    let mut volumes = Vec::new();
    for f in facets {
        if f.len() != e + 1 {
            return Err(Error::InvalidComplex(format!("lower facet {f:?} is not a simplex")));
        }
        let m: Vec<Vec<BigInt>> = f[1..]
            .iter()
            .map(|&i| projected[i].iter().zip(&projected[f[0]]).map(|(a, b)| BigInt::from(a - b)).collect())
            .collect();
        let det = determinant(&m).abs();
        if det.is_zero() {
            return Err(Error::InvalidComplex(format!("lower facet {f:?} projects to a flat simplex")));
        }
        volumes.push(u64::try_from(&det).expect("small volume"));
    }
    let complex = SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().map(|&i| point_label(i)).collect::<Vec<_>>()))?;
    let unimodular = volumes.iter().all(|&v| v == 1);
    let ridges_ok = check_ridges(&projected, facets);
    Ok(Triangulation { complex, volumes, unimodular, ridges_ok })
}

fn check_ridges(projected: &[Vec<i64>], facets: &[Vec<usize>]) -> bool {
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for f in facets {
        for skip in 0..f.len() {
            let r: Vec<usize> = f.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v).collect();
            ridges.entry(r).or_default().push(f[skip]);
        }
    }
    let side = |r: &[usize], a: &[BigInt], p: usize| -> BigInt { dot_i(a, &projected[p]) - dot_i(a, &projected[r[0]]) };
    ridges.iter().all(|(r, opposite)| {
        let pts: Vec<&Vec<i64>> = r.iter().map(|&i| &projected[i]).collect();
        let a = hyperplane_normal(&pts);
        match opposite.as_slice() {
            [p, q] => (side(r, &a, *p) * side(r, &a, *q)).is_negative(),
            [p] => {
                let s = side(r, &a, *p);
                (0..projected.len()).all(|k| !(side(r, &a, k) * &s).is_negative())
            }
            _ => false,
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflexivityReport {
    pub facets: usize,
    /// Lattice distances `−b` of the facet inequalities `⟨a, x⟩ ≥ b`.
    pub distances: Vec<i64>,
    pub reflexive: bool,
}

/// Whether every facet of `p` is at lattice distance one from the origin;
/// the origin must be interior.
pub fn reflexivity_check(p: &LatticePolytope) -> Result<ReflexivityReport> {
    let facets = p.facets()?;
    if facets.iter().any(|f| f.offset >= 0) {
        return Err(Error::Degenerate("origin is not an interior point".into()));
    }
    let mut distances: Vec<i64> = facets.iter().map(|f| -f.offset).collect();
    distances.sort();
    distances.dedup();
    let reflexive = distances == [1];
    Ok(ReflexivityReport { facets: facets.len(), distances, reflexive })
}

/// Built-in point sets, by name.
pub fn builtin_dataset(name: &str) -> Result<LatticePolytope> {
    match name {
        "example-6-7" => LatticePolytope::from_matrix_text(
            "1  1 0 -1  0  1  0  0 -1 0  0  1 0
             0 -1 1  1  1  1  2 -1 -1 0  0 -1 0
             0  0 0  0 -1 -1 -1  1  1 0  0  0 0
             0  0 0  0  0  0  0  0  0 1 -1  1 0
             2  4 4  4  4  3  4  3  4 4  4  4 0",
        ),
        _ => Err(Error::InvalidArgument(format!("unknown dataset {name}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HullReport {
    pub points: usize,
    pub lower_facets: usize,
    pub unimodular: bool,
    pub ridges_ok: bool,
    pub isomorphic: bool,
    /// Projected complex vertex -> `𝒦_6 * Δ_0` vertex.
    pub witness: Option<BTreeMap<String, String>>,
    /// The witness sends the origin's vertex to the cone vertex.
    pub origin_to_cone: bool,
    pub reflexivity: ReflexivityReport,
}

impl HullReport {
    pub fn passed(&self) -> bool {
        self.unimodular && self.ridges_ok && self.isomorphic && self.origin_to_cone && self.reflexivity.reflexive
    }
}

/// Lower hull of the built-in 5-dimensional point set (last row is the
/// height), compared with `𝒦_6 * Δ_0`, plus reflexivity of the projection.
pub fn replay_example() -> Result<HullReport> {
    let q = builtin_dataset("example-6-7")?;
    let height = q.dimension - 1;
    let facets = lower_facets(&q.points, height)?;
    let tri = triangulation_complex(&q.points, &facets, height)?;
    let target = kn_complex(6)?.join(&SimplicialComplex::standard_simplex(0))?;
    let iso = complexes_isomorphic(&tri.complex, &target);
    let origin = q.points.iter().position(|p| p.iter().all(|&v| v == 0));
    let origin_to_cone = match (&iso, origin) {
        (Some(w), Some(o)) => w.get(&point_label(o)) == Some(&VertexLabel::Free(0)),
        _ => false,
    };
    let reflexivity = reflexivity_check(&q.project(height)?)?;
    Ok(HullReport {
        points: q.points.len(),
        lower_facets: facets.len(),
        unimodular: tri.unimodular,
        ridges_ok: tri.ridges_ok,
        isomorphic: iso.is_some(),
        witness: iso.map(|w| w.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()),
        origin_to_cone,
        reflexivity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<i64>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn three_points_in_the_plane() {
        let p = pts(&[&[0, 0], &[1, 1], &[2, 0]]);
        assert_eq!(lower_facets(&p, 1).unwrap(), vec![vec![0, 2]]);
    }

    #[test]
    fn lifted_square() {
        let p = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]);
        let f = lower_facets(&p, 2).unwrap();
        assert_eq!(f, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        let t = triangulation_complex(&p, &f, 2).unwrap();
        assert!(t.unimodular && t.ridges_ok);
        assert_eq!(t.complex.num_facets(), 2);
    }

    #[test]
    fn flat_lower_face_is_not_simplicial() {
        let p = pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 5]]);
        let f = lower_facets(&p, 2).unwrap();
        assert_eq!(f, vec![vec![0, 1, 2, 3]]);
        assert!(matches!(triangulation_complex(&p, &f, 2), Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn single_simplex() {
        let p = pts(&[&[0, 0, 0], &[3, 0, 0], &[0, 3, 0], &[1, 1, 10]]);
        let f = lower_facets(&p, 2).unwrap();
        assert_eq!(f, vec![vec![0, 1, 2]]);
        let t = triangulation_complex(&p, &f, 2).unwrap();
        assert_eq!(t.complex.num_facets(), 1);
        assert_eq!(t.volumes, vec![9]);
        assert!(!t.unimodular && t.ridges_ok);
    }

    #[test]
    fn degenerate_input() {
        let p = pts(&[&[0, 0], &[1, 1], &[2, 2]]);
        assert!(matches!(lower_facets(&p, 1), Err(Error::Degenerate(_))));
    }

    #[test]
    fn squares() {
        let sq = |k: i64| LatticePolytope::new(pts(&[&[-k, -k], &[k, -k], &[-k, k], &[k, k]])).unwrap();
        assert!(reflexivity_check(&sq(1)).unwrap().reflexive);
        let r = reflexivity_check(&sq(2)).unwrap();
        assert!(!r.reflexive);
        assert_eq!(r.distances, vec![2]);
        let off = LatticePolytope::new(pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert!(reflexivity_check(&off).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        fn cof(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> =
                        m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &v)| v).collect()).collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * cof(&minor)
                })
                .sum()
        }
        let m = vec![vec![0, 2, 1, 3], vec![1, 0, -1, 2], vec![4, 1, 0, 0], vec![2, -2, 3, 1]];
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        assert_eq!(determinant(&big), BigInt::from(cof(&m)));
    }

    #[test]
    fn matrix_text_columns() {
        let p = LatticePolytope::from_matrix_text("1 0\n0 1\n").unwrap();
        assert_eq!(p.points, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(p.affine_dimension, 1);
        let j = LatticePolytope::from_json(r#"{"points": [[1, 0], [0, 1]]}"#).unwrap();
        assert_eq!(j, p);
    }

    /// Twice the area of the convex hull, by monotone chain and shoelace.
    fn doubled_hull_area(points: &[Vec<i64>]) -> i64 {
        let mut p: Vec<(i64, i64)> = points.iter().map(|v| (v[0], v[1])).collect();
        p.sort();
        p.dedup();
        let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for pass in 0..2 {
            let start = hull.len();
            let it: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
            for &q in it {
                while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0 {
                    hull.pop();
                }
                hull.push(q);
            }
            hull.pop();
        }
        let k = hull.len();
        (0..k).map(|i| hull[i].0 * hull[(i + 1) % k].1 - hull[(i + 1) % k].0 * hull[i].1).sum::<i64>().abs()
    }

    proptest::proptest! {
        #[test]
        fn lower_hull_triangulates_the_shadow(
            cells in proptest::collection::btree_set((0i64..5, 0i64..5), 4..9),
            heights in proptest::collection::vec(0i64..1000, 9),
        ) {
            let plane: Vec<Vec<i64>> = cells.iter().map(|&(a, b)| vec![a, b]).collect();
            proptest::prop_assume!(affine_rank(&plane) == 2);
            let lifted: Vec<Vec<i64>> = plane.iter().zip(&heights).map(|(p, &h)| vec![p[0], p[1], h]).collect();
            let facets = lower_facets(&lifted, 2).unwrap();
            // every facet is supported: no point strictly below its plane
            for f in &facets {
                let pts: Vec<&Vec<i64>> = f.iter().take(3).map(|&i| &lifted[i]).collect();
                let mut a = hyperplane_normal(&pts);
                if a[2].is_negative() {
                    a = a.into_iter().map(|v| -v).collect();
                }
                let b = dot_i(&a, pts[0]);
                proptest::prop_assert!(lifted.iter().all(|p| dot_i(&a, p) >= b));
            }
            proptest::prop_assume!(facets.iter().all(|f| f.len() == 3));
            let t = triangulation_complex(&lifted, &facets, 2).unwrap();
            proptest::prop_assert!(t.ridges_ok);
            let total: u64 = t.volumes.iter().sum();
            proptest::prop_assert_eq!(total as i64, doubled_hull_area(&plane));
        }
    }

    #[test]
    fn builtin_example() {
        let r = replay_example().unwrap();
        assert_eq!(r.points, 13);
        assert_eq!(r.lower_facets, 33);
        assert!(r.passed(), "{r:?}");
    }
}
