//! Canonical labeling and isomorphism testing for small complexes.
//!
//! Individualization-refinement over vertex invariants (facet-size profiles,
//! then iterated neighborhood colors). Complexes here stay at or below ~16
//! vertices, so exhaustive backtracking over the refined partition is cheap.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{Face, SimplicialComplex, VertexId};

/// Isomorphism-invariant total key: two complexes have equal keys iff they
/// are isomorphic. The key is the lexicographically smallest facet matrix
/// over all relabelings consistent with the refined partition.
pub type CanonicalKey = Vec<Vec<u32>>;

struct View {
    verts: Vec<VertexId>,
    facets: Vec<Vec<usize>>,
    facets_of: Vec<Vec<usize>>,
    adj: Vec<Vec<bool>>,
}

impl View {
    fn new(k: &SimplicialComplex) -> Self {
        let verts: Vec<VertexId> = k.vertices().collect();
        let index: HashMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let facets: Vec<Vec<usize>> = k
            .facets()
            .map(|f| f.vertices().iter().map(|v| index[v]).collect())
            .collect();
        let n = verts.len();
        let mut facets_of = vec![Vec::new(); n];
        let mut adj = vec![vec![false; n]; n];
        for (fi, facet) in facets.iter().enumerate() {
            for &v in facet {
                facets_of[v].push(fi);
            }
            for (i, &a) in facet.iter().enumerate() {
                for &b in &facet[i + 1..] {
                    adj[a][b] = true;
                    adj[b][a] = true;
                }
            }
        }
        View {
            verts,
            facets,
            facets_of,
            adj,
        }
    }

    fn n(&self) -> usize {
        self.verts.len()
    }
}

/// (old color, facet color-profiles at the vertex, neighbor colors)
type Signature = (usize, Vec<(usize, Vec<usize>)>, Vec<usize>);

/// One refinement sweep: recolor every vertex by its signature until the
/// number of color classes stops growing. Signatures are compared as values,
/// so colors computed for different complexes in the same sweep are
/// comparable across them.
fn refine(views: &[&View], colors: &mut [Vec<usize>]) {
    loop {
        let mut signatures: Vec<Vec<Signature>> = Vec::with_capacity(views.len());
        for (vi, view) in views.iter().enumerate() {
            let mut sigs = Vec::with_capacity(view.n());
            for v in 0..view.n() {
                let mut facet_profiles: Vec<(usize, Vec<usize>)> = view.facets_of[v]
                    .iter()
                    .map(|&fi| {
                        let facet = &view.facets[fi];
                        let mut others: Vec<usize> = facet
                            .iter()
                            .filter(|&&w| w != v)
                            .map(|&w| colors[vi][w])
                            .collect();
                        others.sort_unstable();
                        (facet.len(), others)
                    })
                    .collect();
                facet_profiles.sort();
                let mut neighbor_colors: Vec<usize> = (0..view.n())
                    .filter(|&w| view.adj[v][w])
                    .map(|w| colors[vi][w])
                    .collect();
                neighbor_colors.sort_unstable();
                sigs.push((colors[vi][v], facet_profiles, neighbor_colors));
            }
            signatures.push(sigs);
        }
        let mut all: Vec<&Signature> = signatures.iter().flatten().collect();
        all.sort();
        all.dedup();
        let rank: HashMap<_, usize> = all.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let old_classes = count_classes(colors);
        for (vi, sigs) in signatures.iter().enumerate() {
            for (v, sig) in sigs.iter().enumerate() {
                colors[vi][v] = rank[sig];
            }
        }
        if count_classes(colors) == old_classes {
            return;
        }
    }
}

fn count_classes(colors: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn initial_colors(view: &View) -> Vec<usize> {
    // facet-size profile at the vertex
    let mut profiles: Vec<Vec<usize>> = (0..view.n())
        .map(|v| {
            let mut sizes: Vec<usize> =
                view.facets_of[v].iter().map(|&fi| view.facets[fi].len()).collect();
            sizes.sort_unstable();
            sizes
        })
        .collect();
    let mut sorted = profiles.clone();
    sorted.sort();
    sorted.dedup();
    profiles
        .drain(..)
        .map(|p| sorted.binary_search(&p).unwrap())
        .collect()
}

fn encode(view: &View, position: &[usize]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = view
        .facets
        .iter()
        .map(|f| {
            let mut m: Vec<u32> = f.iter().map(|&v| position[v] as u32).collect();
            m.sort_unstable();
            m
        })
        .collect();
    out.sort();
    out
}

/// Smallest non-singleton color class (ties broken by color id), or None if
/// the partition is discrete.
fn target_cell(colors: &[usize]) -> Option<Vec<usize>> {
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    by_color
        .into_values()
        .filter(|cell| cell.len() > 1)
        .min_by_key(|cell| cell.len())
}

fn search_canonical(view: &View, colors: Vec<usize>, best: &mut Option<Vec<Vec<u32>>>) {
    match target_cell(&colors) {
        None => {
            // discrete partition: rank by color
            let mut order: Vec<usize> = (0..view.n()).collect();
            order.sort_by_key(|&v| colors[v]);
            let mut position = vec![0usize; view.n()];
            for (pos, &v) in order.iter().enumerate() {
                position[v] = pos;
            }
            let enc = encode(view, &position);
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
        }
        Some(cell) => {
            let fresh = view.n() + 1000;
            for &v in &cell {
                let mut next = colors.clone();
                next[v] = fresh;
                refine(&[view], std::slice::from_mut(&mut next));
                search_canonical(view, next, best);
            }
        }
    }
}

/// Total canonical key. Equal keys iff isomorphic.
pub fn canonical_key(k: &SimplicialComplex) -> CanonicalKey {
    if k.is_void() {
        return Vec::new();
    }
    if k.is_empty_complex() {
        return vec![Vec::new()];
    }
    let view = View::new(k);
    let mut colors = vec![initial_colors(&view)];
    refine(&[&view], &mut colors);
    let mut best = None;
    search_canonical(&view, colors.pop().unwrap(), &mut best);
    best.expect("nonvoid complex has a canonical form")
}

/// Cheap isomorphism-invariant fingerprint for hash prefilters: sorted facet
/// sizes plus the refined color histogram.
pub fn invariant_fingerprint(k: &SimplicialComplex) -> Vec<usize> {
    if k.is_void() || k.is_empty_complex() {
        return vec![k.facet_count()];
    }
    let view = View::new(k);
    let mut colors = vec![initial_colors(&view)];
    refine(&[&view], &mut colors);
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &colors[0] {
        *histogram.entry(c).or_default() += 1;
    }
    let mut out: Vec<usize> = k.facets().map(Face::cardinality).collect();
    out.sort_unstable();
    out.push(usize::MAX); // separator
    let mut counts: Vec<usize> = histogram.into_values().collect();
    counts.sort_unstable();
    out.extend(counts);
    out
}

/// Backtracking isomorphism search. Returns a vertex map from `a` onto `b`
/// or None. Finding one isomorphism is fast even for symmetric complexes.
pub fn find_isomorphism(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.is_void() || b.is_void() {
        return (a.is_void() && b.is_void()).then(BTreeMap::new);
    }
    if a.vertex_count() != b.vertex_count() || a.facet_count() != b.facet_count() {
        return None;
    }
    let va = View::new(a);
    let vb = View::new(b);
    let mut colors = vec![initial_colors(&va), initial_colors(&vb)];
    // joint refinement keeps the two color spaces comparable
    refine(&[&va, &vb], &mut colors);
    let (ca, cb) = (colors.remove(0), colors.remove(0));
    {
        let mut ha = ca.clone();
        let mut hb = cb.clone();
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return None;
        }
    }

    // order: most-constrained first — rare colors early, then adjacency chains
    let n = va.n();
    let mut color_count: HashMap<usize, usize> = HashMap::new();
    for &c in &ca {
        *color_count.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (color_count[&ca[v]], ca[v], v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(&va, &vb, &ca, &cb, &order, 0, &mut map, &mut used) {
        // full facet check
        let position: Vec<usize> = map.clone();
        let mut mapped: Vec<Vec<usize>> = va
            .facets
            .iter()
            .map(|f| {
                let mut m: Vec<usize> = f.iter().map(|&v| position[v]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        mapped.sort();
        let mut target: Vec<Vec<usize>> = vb
            .facets
            .iter()
            .map(|f| {
                let mut m = f.clone();
                m.sort_unstable();
                m
            })
            .collect();
        target.sort();
        if mapped != target {
            return None;
        }
        Some(
            (0..n)
                .map(|v| (va.verts[v], vb.verts[map[v]]))
                .collect(),
        )
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    va: &View,
    vb: &View,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..vb.n() {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        // adjacency with already-mapped vertices must agree
        let consistent = (0..va.n()).all(|u| {
            map[u] == usize::MAX || va.adj[v][u] == vb.adj[w][map[u]]
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if assign(va, vb, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[w] = false;
    }
    false
}

pub fn is_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Face;

    fn relabeled_octahedron() -> SimplicialComplex {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let map: BTreeMap<VertexId, VertexId> = octa
            .vertices()
            .map(|v| (v, VertexId((v.0 * 7 + 3) % 11)))
            .collect();
        octa.relabel(&map)
    }

    #[test]
    fn canonical_key_is_relabeling_invariant() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        assert_eq!(canonical_key(&octa), canonical_key(&relabeled_octahedron()));
    }

    #[test]
    fn canonical_key_separates_nonisomorphic() {
        let c5 = SimplicialComplex::cycle_complex(5).unwrap();
        let c6 = SimplicialComplex::cycle_complex(6).unwrap();
        assert_ne!(canonical_key(&c5), canonical_key(&c6));

        // same f-vector, different complexes: 6-cycle vs two triangles
        let two_triangles = SimplicialComplex::from_facets(
            [[0u32, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]
                .iter()
                .map(|e| Face::new(e.to_vec()).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(
            c6.f_vector().unwrap(),
            two_triangles.f_vector().unwrap()
        );
        assert_ne!(canonical_key(&c6), canonical_key(&two_triangles));
    }

    #[test]
    fn isomorphism_found_and_valid() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let other = relabeled_octahedron();
        let iso = find_isomorphism(&octa, &other).unwrap();
        assert_eq!(octa.relabel(&iso), other);
    }

    #[test]
    fn susp2_of_two_points_is_octahedron() {
        let s0 = SimplicialComplex::from_facets(vec![
            Face::new(vec![100u32]).unwrap(),
            Face::new(vec![200u32]).unwrap(),
        ])
        .unwrap();
        let octa_like = s0.suspension_iterated(2);
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        assert!(is_isomorphic(&octa_like, &octa));
    }

    #[test]
    fn nonisomorphic_rejected() {
        let square = SimplicialComplex::cycle_complex(4).unwrap();
        let pentagon = SimplicialComplex::cycle_complex(5).unwrap();
        assert!(find_isomorphism(&square, &pentagon).is_none());
    }

    #[test]
    fn void_and_empty_keys() {
        assert_ne!(
            canonical_key(&SimplicialComplex::void()),
            canonical_key(&SimplicialComplex::empty_complex())
        );
        assert!(is_isomorphic(&SimplicialComplex::void(), &SimplicialComplex::void()));
    }

    #[test]
    fn cross_polytope_keys_match_suspensions() {
        let c4 = SimplicialComplex::cross_polytope_boundary(4).unwrap();
        let octa_susp = SimplicialComplex::cross_polytope_boundary(3).unwrap().suspension();
        assert_eq!(canonical_key(&c4), canonical_key(&octa_susp));
        assert!(is_isomorphic(&c4, &octa_susp));
    }
}
