//! Combinatorial isomorphism of simplicial complexes by backtracking.

use std::collections::{BTreeMap, BTreeSet};

use super::{mask_indices, Face, SimplicialComplex, VertexLabel};

struct Profile {
    /// `co[u][v]`: number of facets containing both `u` and `v`.
    co: Vec<Vec<usize>>,
    /// Per vertex, the sorted sizes of the facets containing it.
    sizes: Vec<Vec<u32>>,
    facets: BTreeSet<Face>,
}

fn profile(k: &SimplicialComplex) -> Profile {
    let nv = k.vertices().len();
    let mut co = vec![vec![0; nv]; nv];
    let mut sizes = vec![Vec::new(); nv];
    for &f in k.facet_masks() {
        let idx = mask_indices(f);
        for &u in &idx {
            sizes[u].push(f.count_ones());
            for &v in &idx {
                co[u][v] += 1;
            }
        }
    }
    sizes.iter_mut().for_each(|s| s.sort_unstable());
    Profile { co, sizes, facets: k.facet_masks().iter().copied().collect() }
}

/// A vertex bijection `K -> L` carrying facets onto facets, if one exists.
pub fn complexes_isomorphic(k: &SimplicialComplex, l: &SimplicialComplex) -> Option<BTreeMap<VertexLabel, VertexLabel>> {
    let nv = k.vertices().len();
    if nv != l.vertices().len() || k.num_facets() != l.num_facets() {
        return None;
    }
    let pk = profile(k);
    let pl = profile(l);
    let mut a: Vec<u32> = k.facet_masks().iter().map(|f| f.count_ones()).collect();
    let mut b: Vec<u32> = l.facet_masks().iter().map(|f| f.count_ones()).collect();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }

    // visit vertices so that each new one is tied to many already placed
    let mut order: Vec<usize> = Vec::with_capacity(nv);
    let mut placed = vec![false; nv];
    while order.len() < nv {
        let next = (0..nv)
            .filter(|&u| !placed[u])
            .max_by_key(|&u| {
                let link: usize = order.iter().filter(|&&w| pk.co[u][w] > 0).count();
                (link, pk.co[u][u], std::cmp::Reverse(u))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; nv];
    let mut used = vec![false; nv];
    if !search(0, &order, &pk, &pl, &mut map, &mut used) {
        return None;
    }
    Some(
        (0..nv)
            .map(|u| (k.vertices()[u], l.vertices()[map[u]]))
            .collect(),
    )
}

fn search(depth: usize, order: &[usize], pk: &Profile, pl: &Profile, map: &mut [usize], used: &mut [bool]) -> bool {
    if depth == order.len() {
        let image: BTreeSet<Face> = pk
            .facets
            .iter()
            .map(|&f| mask_indices(f).into_iter().fold(0u64, |m, u| m | (1 << map[u])))
            .collect();
        return image == pl.facets;
    }
    let u = order[depth];
    for v in 0..map.len() {
        if used[v] || pk.sizes[u] != pl.sizes[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| pk.co[u][w] == pl.co[v][map[w]]);
        if !consistent {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if search(depth + 1, order, pk, pl, map, used) {
            return true;
        }
        used[v] = false;
        map[u] = usize::MAX;
    }
    false
}
