//! The associahedron complex and its suspended stellar subdivision.

use super::{SimplicialComplex, VertexLabel};
use crate::{Error, Result};

/// Diagonals `(i,j)` of the n-gon in lexicographic order.
pub fn diagonals(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 2..=n {
            if !(i == 1 && j == n) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Whether two chords of the polygon cross in the interior.
pub fn crossing(a: (usize, usize), b: (usize, usize)) -> bool {
    let ((i, j), (k, l)) = (a, b);
    (i < k && k < j && j < l) || (k < i && i < l && l < j)
}

/// All triangulations of the n-gon, each a sorted list of diagonals.
pub fn triangulations(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
        if b - a < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        // the triangle on the base (a,b) has apex k
        for k in a + 1..b {
            let left = rec(a, k);
            let right = rec(k, b);
            for l in &left {
                for r in &right {
                    let mut t = l.clone();
                    t.extend(r);
                    if k - a >= 2 {
                        t.push((a, k));
                    }
                    if b - k >= 2 {
                        t.push((k, b));
                    }
                    t.sort();
                    out.push(t);
                }
            }
        }
        out
    }
    if n < 3 {
        return Vec::new();
    }
    let mut all = rec(1, n);
    all.sort();
    all
}

/// `𝒜_n`: faces are sets of pairwise non-crossing diagonals.
pub fn associahedron(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("associahedron needs n >= 3, got {n}")));
    }
    if n > 12 {
        return Err(Error::InvalidArgument(format!("associahedron limited to n <= 12, got {n}")));
    }
    let facets = triangulations(n)
        .into_iter()
        .map(|t| t.into_iter().map(|(i, j)| VertexLabel::Diagonal(i as u8, j as u8)).collect::<Vec<_>>());
    SimplicialComplex::from_facets(facets.collect::<Vec<_>>())
}

/// `𝒦_n`: the stellar subdivision of `𝒜_n * {w1, w2}` at the edge
/// `{δ_{1(n-1)}, w1}` with new vertex `v`.
pub fn kn_complex(n: usize) -> Result<SimplicialComplex> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("K_n needs n >= 5, got {n}")));
    }
    let s0 = SimplicialComplex::from_facets([[VertexLabel::W(1)], [VertexLabel::W(2)]])?;
    let susp = associahedron(n)?.join(&s0)?;
    susp.stellar_subdivision(
        &[VertexLabel::Diagonal(1, (n - 1) as u8), VertexLabel::W(1)],
        VertexLabel::V,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Maximal pairwise non-crossing diagonal sets, by exhaustive subsets.
    fn brute_force(n: usize) -> Vec<Vec<(usize, usize)>> {
        let d = diagonals(n);
        let ok = |s: u32| {
            (0..d.len()).all(|a| {
                s & (1 << a) == 0 || (a + 1..d.len()).all(|b| s & (1 << b) == 0 || !crossing(d[a], d[b]))
            })
        };
        let valid: Vec<u32> = (0..1u32 << d.len()).filter(|&s| ok(s)).collect();
        let mut out: Vec<Vec<(usize, usize)>> = valid
            .iter()
            .filter(|&&s| !valid.iter().any(|&t| t != s && t & s == s))
            .map(|&s| (0..d.len()).filter(|a| s & (1 << a) != 0).map(|a| d[a]).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn triangulations_match_brute_force() {
        for n in 4..=7 {
            assert_eq!(triangulations(n), brute_force(n), "n = {n}");
        }
    }

    #[test]
    fn catalan_counts() {
        let expected = [1, 2, 5, 14, 42, 132, 429];
        for (k, n) in (3..=9).enumerate() {
            assert_eq!(triangulations(n).len(), expected[k]);
        }
    }

    #[test]
    fn small_associahedra() {
        let a4 = associahedron(4).unwrap();
        assert_eq!(a4.vertices().len(), 2);
        assert_eq!(a4.num_facets(), 2);
        assert_eq!(a4.dim(), Some(0));

        let a5 = associahedron(5).unwrap();
        assert_eq!(a5.f_vector(), vec![1, 5, 5]);
        assert_eq!(a5.euler_characteristic(), 0);

        let a6 = associahedron(6).unwrap();
        assert_eq!((a6.vertices().len(), a6.num_facets()), (9, 14));
        assert!(a6.is_pure() && a6.is_pseudomanifold());
        assert!(associahedron(2).is_err());
        assert_eq!(associahedron(3).unwrap().dim(), Some(-1));
    }

    #[test]
    fn associahedron_nonfaces_are_crossings() {
        for n in 5..=8 {
            let nf = associahedron(n).unwrap().minimal_nonfaces();
            let expected = (n * (n - 1) * (n - 2) * (n - 3)) / 24;
            assert_eq!(nf.len(), expected);
            for s in nf {
                let [VertexLabel::Diagonal(i, j), VertexLabel::Diagonal(k, l)] = s[..] else {
                    panic!("unexpected non-face {s:?}");
                };
                assert!(crossing((i as usize, j as usize), (k as usize, l as usize)));
            }
        }
    }

    #[test]
    fn kn_small() {
        let k5 = kn_complex(5).unwrap();
        assert_eq!((k5.vertices().len(), k5.num_facets()), (8, 12));
        assert_eq!(k5.euler_characteristic(), 2);
        assert!(k5.is_pure() && k5.is_pseudomanifold());
        let k6 = kn_complex(6).unwrap();
        assert_eq!((k6.vertices().len(), k6.num_facets()), (12, 33));
        assert_eq!(k6.minimal_nonfaces().len(), 15 + 6);
        assert!(kn_complex(4).is_err());
    }

    #[test]
    fn kn_is_flag() {
        for n in 5..=8 {
            let k = kn_complex(n).unwrap();
            assert!(k.is_flag(), "n = {n}");
            assert_eq!(k.dim(), Some(n as i64 - 3));
        }
    }
}
