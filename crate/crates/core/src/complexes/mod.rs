//! Abstract simplicial complexes stored by their facets.
//!
//! Vertices carry a [`VertexLabel`]; internally a face is a bitmask over the
//! sorted vertex list, so complexes are limited to 64 vertices. All target
//! complexes here have at most about thirty.

mod associahedron;
mod io;
mod isomorphism;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::algebra::{Monomial, Variable};
use crate::{Error, Result};

pub use associahedron::{associahedron, crossing, diagonals, kn_complex, triangulations};
pub use io::ComplexJson;
pub use isomorphism::complexes_isomorphic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexLabel {
    /// Diagonal `δ_ij` of the n-gon.
    Diagonal(u8, u8),
    /// Polygon edge between consecutive vertices (or `1, n`).
    Edge(u8, u8),
    /// Suspension points `w_1`, `w_2`.
    W(u8),
    /// Stellar subdivision vertex.
    V,
    /// Plain simplex vertex.
    Free(u32),
}

impl VertexLabel {
    /// `δ_ij`, requiring `2 <= j-i <= n-2` and `(i,j) != (1,n)`.
    pub fn diagonal(i: usize, j: usize, n: usize) -> Result<VertexLabel> {
        let ok = i >= 1 && j <= n && j >= i + 2 && j - i <= n - 2;
        if !ok {
            return Err(Error::InvalidArgument(format!("({i},{j}) is not a diagonal of the {n}-gon")));
        }
        Ok(VertexLabel::Diagonal(i as u8, j as u8))
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Diagonal(i, j) => write!(f, "d[{i},{j}]"),
            VertexLabel::Edge(i, j) => write!(f, "e[{i},{j}]"),
            VertexLabel::W(k) => write!(f, "w{k}"),
            VertexLabel::V => write!(f, "v"),
            VertexLabel::Free(k) => write!(f, "free[{k}]"),
        }
    }
}

pub type Face = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<VertexLabel>,
    /// Inclusion-maximal faces, sorted.
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets`; non-maximal entries are
    /// dropped. An empty list is the void complex; `[[]]` is `{∅}`.
    pub fn from_facets<I, F>(facets: I) -> Result<SimplicialComplex>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = VertexLabel>,
    {
        let facets: Vec<Vec<VertexLabel>> = facets.into_iter().map(|f| f.into_iter().collect()).collect();
        let mut vertices: Vec<VertexLabel> = facets.iter().flatten().copied().collect();
        vertices.sort();
        vertices.dedup();
        if vertices.len() > 64 {
            return Err(Error::InvalidComplex(format!("{} vertices exceed the limit of 64", vertices.len())));
        }
        let index: BTreeMap<VertexLabel, usize> = vertices.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let masks = facets
            .iter()
            .map(|f| f.iter().fold(0u64, |m, v| m | (1 << index[v])))
            .collect();
        Ok(SimplicialComplex::from_masks(vertices, masks))
    }

    /// Like [`SimplicialComplex::from_facets`] but also records vertices
    /// that lie in no listed facet, as singleton facets.
    pub fn with_vertices<I, F>(vertices: &[VertexLabel], facets: I) -> Result<SimplicialComplex>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = VertexLabel>,
    {
        let mut all: Vec<Vec<VertexLabel>> = facets.into_iter().map(|f| f.into_iter().collect()).collect();
        all.extend(vertices.iter().map(|v| vec![*v]));
        SimplicialComplex::from_facets(all)
    }

    fn from_masks(vertices: Vec<VertexLabel>, mut masks: Vec<Face>) -> SimplicialComplex {
        masks.sort_unstable();
        masks.dedup();
        let facets: Vec<Face> = masks
            .iter()
            .copied()
            .filter(|&f| !masks.iter().any(|&g| g != f && g & f == f))
            .collect();
        let mut k = SimplicialComplex { vertices, facets };
        k.sort_facets();
        k
    }

    fn sort_facets(&mut self) {
        self.facets.sort_by_key(|&f| mask_indices(f));
    }

    /// The full simplex on `labels`.
    pub fn simplex(labels: &[VertexLabel]) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets([labels.to_vec()])
    }

    /// `Δ_d` on `free[0..=d]`; `Δ_{-1}` is `{∅}`.
    pub fn standard_simplex(d: i64) -> SimplicialComplex {
        let labels: Vec<VertexLabel> = (0..=d).map(|k| VertexLabel::Free(k as u32)).collect();
        SimplicialComplex::simplex(&labels).expect("small simplex")
    }

    /// Boundary of the simplex on `labels`.
    pub fn simplex_boundary(labels: &[VertexLabel]) -> Result<SimplicialComplex> {
        if labels.is_empty() {
            return SimplicialComplex::from_facets(Vec::<Vec<VertexLabel>>::new());
        }
        SimplicialComplex::from_facets((0..labels.len()).map(|skip| {
            labels
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, v)| *v)
                .collect::<Vec<_>>()
        }))
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn facet_masks(&self) -> &[Face] {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Vec<VertexLabel>> {
        self.facets.iter().map(|&f| self.labels_of(f)).collect()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn labels_of(&self, face: Face) -> Vec<VertexLabel> {
        mask_indices(face).into_iter().map(|k| self.vertices[k]).collect()
    }

    pub fn mask_of(&self, labels: &[VertexLabel]) -> Option<Face> {
        labels.iter().try_fold(0u64, |m, v| {
            self.vertices.binary_search(v).ok().map(|k| m | (1 << k))
        })
    }

    /// Dimension; `-1` for `{∅}`, `None` for the void complex.
    pub fn dim(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.count_ones() as i64 - 1).max()
    }

    pub fn is_face(&self, face: Face) -> bool {
        self.facets.iter().any(|&f| f & face == face)
    }

    pub fn contains(&self, labels: &[VertexLabel]) -> bool {
        self.mask_of(labels).is_some_and(|m| self.is_face(m))
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(|f| f.count_ones());
        match sizes.next() {
            None => true,
            Some(s) => sizes.all(|t| t == s),
        }
    }

    /// All faces, the empty face included.
    pub fn faces(&self) -> HashSet<Face> {
        let mut out = HashSet::new();
        for &f in &self.facets {
            // enumerate submasks of f
            let mut s = f;
            loop {
                out.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        out
    }

    /// `f_vector()[k]` counts faces with `k` vertices, so index 0 is the
    /// empty face and index `k` holds `f_{k-1}`.
    pub fn f_vector(&self) -> Vec<u64> {
        // faces of a cone split as (face of the base) ∪ (subset of the apex set)
        let cone = self.cone_mask();
        let base = self.without_cone(cone);
        let mut f = vec![0u64; base.dim().map_or(0, |d| (d + 2) as usize)];
        for face in base.faces() {
            f[face.count_ones() as usize] += 1;
        }
        if f.is_empty() {
            return f;
        }
        join_f_vector(&f, &simplex_f_vector(cone.count_ones() as usize))
            .into_iter()
            .map(|c| c as u64)
            .collect()
    }

    /// Vertices lying in every facet.
    pub fn cone_mask(&self) -> Face {
        match self.facets.first() {
            None => 0,
            Some(&first) => self.facets.iter().fold(first, |acc, &f| acc & f),
        }
    }

    fn without_cone(&self, cone: Face) -> SimplicialComplex {
        if cone == 0 {
            return self.clone();
        }
        SimplicialComplex {
            vertices: self.vertices.clone(),
            facets: self.facets.iter().map(|&f| f & !cone).collect(),
        }
    }

    /// Unreduced Euler characteristic `Σ_{i>=0} (-1)^i f_i` (the empty face
    /// is not counted): 0 for a circle, 2 for a 2-sphere.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Pure, and every ridge lies in exactly two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        if !self.is_pure() || self.facets.is_empty() {
            return false;
        }
        let mut ridges: BTreeMap<Face, usize> = BTreeMap::new();
        for &f in &self.facets {
            for k in mask_indices(f) {
                *ridges.entry(f & !(1 << k)).or_default() += 1;
            }
        }
        ridges.values().all(|&c| c == 2)
    }

    /// Inclusion-minimal non-faces, as label lists sorted canonically.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<VertexLabel>> {
        // a cone vertex never lies in a minimal non-face
        let cone = self.cone_mask();
        let faces = self.without_cone(cone).faces();
        let nv = self.vertices.len();
        let mut out: Vec<Face> = Vec::new();
        for &face in &faces {
            let top = if face == 0 { 0 } else { 64 - face.leading_zeros() as usize };
            for v in (top..nv).filter(|v| cone & (1 << v) == 0) {
                let cand = face | (1 << v);
                if faces.contains(&cand) {
                    continue;
                }
                if mask_indices(cand)
                    .into_iter()
                    .all(|k| faces.contains(&(cand & !(1 << k))))
                {
                    out.push(cand);
                }
            }
        }
        out.sort_by_key(|&f| (f.count_ones(), mask_indices(f)));
        out.into_iter().map(|f| self.labels_of(f)).collect()
    }

    /// All minimal non-faces have exactly two vertices.
    pub fn is_flag(&self) -> bool {
        self.minimal_nonfaces().iter().all(|s| s.len() == 2)
    }

    /// `K * L` on disjoint vertex sets.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if let Some(v) = self.vertices.iter().find(|v| other.vertices.binary_search(v).is_ok()) {
            return Err(Error::InvalidComplex(format!("join of complexes sharing vertex {v}")));
        }
        let facets = self.facets().into_iter().flat_map(|f| {
            other.facets().into_iter().map(move |g| {
                let mut h = f.clone();
                h.extend(g);
                h
            })
        });
        SimplicialComplex::from_facets(facets.collect::<Vec<_>>())
    }

    /// Stellar subdivision at the face `face` (dimension at least one) with
    /// the fresh vertex `new_vertex`.
    pub fn stellar_subdivision(&self, face: &[VertexLabel], new_vertex: VertexLabel) -> Result<SimplicialComplex> {
        if face.len() < 2 {
            return Err(Error::InvalidComplex("stellar subdivision needs a face of dimension >= 1".into()));
        }
        let f = self
            .mask_of(face)
            .filter(|&m| m.count_ones() as usize == face.len() && self.is_face(m))
            .ok_or_else(|| Error::InvalidComplex("subdivided face is not a face of the complex".into()))?;
        if self.vertices.contains(&new_vertex) {
            return Err(Error::InvalidComplex(format!("vertex {new_vertex} already present")));
        }
        let mut out: Vec<Vec<VertexLabel>> = Vec::new();
        for &g in &self.facets {
            if g & f != f {
                out.push(self.labels_of(g));
                continue;
            }
            for k in mask_indices(f) {
                let mut h = self.labels_of(g & !(1 << k));
                h.push(new_vertex);
                out.push(h);
            }
        }
        SimplicialComplex::from_facets(out)
    }

    /// Renames vertices; `map` must be injective on the vertex set.
    pub fn relabel(&self, map: &BTreeMap<VertexLabel, VertexLabel>) -> Result<SimplicialComplex> {
        let images: HashSet<VertexLabel> = self.vertices.iter().filter_map(|v| map.get(v).copied()).collect();
        if images.len() != self.vertices.len() {
            return Err(Error::InvalidComplex("relabelling is not a bijection on the vertices".into()));
        }
        SimplicialComplex::from_facets(
            self.facets()
                .into_iter()
                .map(|f| f.into_iter().map(|v| map[&v]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    }

    /// Squarefree monomial generators of the Stanley-Reisner ideal under an
    /// injective vertex-to-variable labelling, canonically sorted.
    pub fn stanley_reisner_ideal(&self, labeling: &BTreeMap<VertexLabel, Variable>) -> Result<Vec<Monomial>> {
        let mut seen = HashSet::new();
        let mut n = None;
        for v in &self.vertices {
            let var = labeling
                .get(v)
                .ok_or_else(|| Error::InvalidArgument(format!("vertex {v} has no variable")))?;
            if !seen.insert(*var) {
                return Err(Error::InvalidArgument(format!("labelling is not injective at {var}")));
            }
            if *n.get_or_insert(var.n()) != var.n() {
                return Err(Error::RingMismatch(n.unwrap_or(0), var.n()));
            }
        }
        let n = n.ok_or_else(|| Error::InvalidArgument("complex has no vertices".into()))?;
        let mut gens = self
            .minimal_nonfaces()
            .into_iter()
            .map(|s| Monomial::from_vars(n, s.iter().map(|v| labeling[v])))
            .collect::<Result<Vec<_>>>()?;
        gens.sort();
        Ok(gens)
    }

    /// Rebuilds a complex from its vertex set and minimal non-faces.
    pub fn from_nonfaces(vertices: &[VertexLabel], nonfaces: &[Vec<VertexLabel>]) -> Result<SimplicialComplex> {
        let mut verts = vertices.to_vec();
        verts.sort();
        verts.dedup();
        if verts.len() > 64 {
            return Err(Error::InvalidComplex("too many vertices".into()));
        }
        let idx = |v: &VertexLabel| verts.binary_search(v).map_err(|_| Error::InvalidComplex(format!("unknown vertex {v}")));
        let bad: Vec<Face> = nonfaces
            .iter()
            .map(|s| s.iter().try_fold(0u64, |m, v| Ok::<_, Error>(m | (1 << idx(v)?))))
            .collect::<Result<_>>()?;
        // grow faces vertex by vertex, keeping those free of non-faces
        let mut maximal: Vec<Face> = Vec::new();
        fn rec(k: usize, nv: usize, face: Face, bad: &[Face], out: &mut Vec<Face>) {
            if k == nv {
                out.push(face);
                return;
            }
            let with = face | (1 << k);
            if bad.iter().all(|&b| b & with != b) {
                rec(k + 1, nv, with, bad, out);
            }
            rec(k + 1, nv, face, bad, out);
        }
        rec(0, verts.len(), 0, &bad, &mut maximal);
        Ok(SimplicialComplex::from_masks(verts, maximal))
    }
}

pub(crate) fn mask_indices(mut m: Face) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let k = m.trailing_zeros() as usize;
        out.push(k);
        m &= m - 1;
    }
    out
}

/// f-vector of a join from the f-vectors of its factors (both indexed by
/// number of vertices, empty face first).
pub fn join_f_vector(a: &[u64], b: &[u64]) -> Vec<u128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x as u128 * y as u128;
        }
    }
    out
}

/// f-vector of the full simplex with `k` vertices.
pub fn simplex_f_vector(k: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = vec![1u64; row.len() + 1];
        for t in 1..row.len() {
            next[t] = row[t - 1] + row[t];
        }
        row = next;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(k: u32) -> VertexLabel {
        VertexLabel::Free(k)
    }

    fn boundary_triangle() -> SimplicialComplex {
        SimplicialComplex::simplex_boundary(&[free(0), free(1), free(2)]).unwrap()
    }

    #[test]
    fn triangle_boundary_nonface() {
        let k = boundary_triangle();
        assert_eq!(k.minimal_nonfaces(), vec![vec![free(0), free(1), free(2)]]);
        assert_eq!(k.f_vector(), vec![1, 3, 3]);
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn simplex_f_vector_and_empty() {
        let d2 = SimplicialComplex::standard_simplex(2);
        assert_eq!(d2.f_vector(), vec![1, 3, 3, 1]);
        assert_eq!(simplex_f_vector(3), vec![1, 3, 3, 1]);
        let empty = SimplicialComplex::standard_simplex(-1);
        assert_eq!(empty.dim(), Some(-1));
        assert_eq!(empty.f_vector(), vec![1]);
    }

    #[test]
    fn join_with_empty_simplex_is_identity() {
        let k = boundary_triangle();
        assert_eq!(k.join(&SimplicialComplex::standard_simplex(-1)).unwrap(), k);
    }

    #[test]
    fn suspension_of_s0_is_square() {
        let s0 = SimplicialComplex::from_facets([[VertexLabel::W(1)], [VertexLabel::W(2)]]).unwrap();
        let t0 = SimplicialComplex::from_facets([[free(0)], [free(1)]]).unwrap();
        let sq = s0.join(&t0).unwrap();
        assert_eq!(sq.num_facets(), 4);
        assert!(sq.is_pseudomanifold());
        assert_eq!(sq.euler_characteristic(), 0);
        assert!(s0.join(&s0).is_err());
    }

    #[test]
    fn stellar_edge_of_triangle_boundary() {
        let k = boundary_triangle();
        let s = k.stellar_subdivision(&[free(0), free(1)], VertexLabel::V).unwrap();
        assert_eq!(s.num_facets(), 4);
        assert!(s.is_pseudomanifold());
        assert_eq!(s.vertices().len(), 4);
        assert!(!s.contains(&[free(0), free(1)]));
    }

    #[test]
    fn stellar_edge_of_solid_triangle() {
        let k = SimplicialComplex::standard_simplex(2);
        let s = k.stellar_subdivision(&[free(0), free(1)], VertexLabel::V).unwrap();
        assert_eq!(s.num_facets(), 2);
        assert!(s.facets().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn stellar_errors() {
        let k = boundary_triangle();
        assert!(k.stellar_subdivision(&[free(0)], VertexLabel::V).is_err());
        assert!(k.stellar_subdivision(&[free(0), free(1), free(2)], VertexLabel::V).is_err());
        assert!(k.stellar_subdivision(&[free(0), free(1)], free(2)).is_err());
    }

    #[test]
    fn isolated_vertices_are_singleton_facets() {
        let k = SimplicialComplex::with_vertices(&[free(5)], [[free(0), free(1)]]).unwrap();
        assert_eq!(k.num_facets(), 2);
        assert!(!k.is_pure());
    }

    #[test]
    fn nonface_round_trip() {
        let k = boundary_triangle();
        let back = SimplicialComplex::from_nonfaces(k.vertices(), &k.minimal_nonfaces()).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn sr_ideal_requires_injective_labels() {
        let k = boundary_triangle();
        let v = Variable::y(1, 3).unwrap();
        let lab: BTreeMap<_, _> = [(free(0), v), (free(1), v), (free(2), Variable::y(2, 3).unwrap())].into();
        assert!(k.stanley_reisner_ideal(&lab).is_err());
        let lab: BTreeMap<_, _> = (0..3).map(|k| (free(k), Variable::y(k as usize + 1, 3).unwrap())).collect();
        let gens = k.stanley_reisner_ideal(&lab).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].to_string(), "y[1]*y[2]*y[3]");
    }
}
