//! Barycentric subdivision and the explicit isomorphisms between links in a
//! subdivision and joins of subdivisions.
//!
//! Vertices of `sd K` are the nonempty faces of `K`, numbered in graded
//! lexicographic order (by size, then vertex sequence). In particular the
//! vertex `{v}` of `sd K` gets a smaller id than any edge, and vertices of `K`
//! keep their relative order.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

/// `sd K` together with the labeling of its vertices by faces of `K`.
#[derive(Clone, Debug)]
pub struct SdComplex {
    pub complex: Complex,
    face_of: Vec<Face>,
    id_of: HashMap<Face, Vertex>,
}

impl SdComplex {
    /// The face of the base complex represented by sd-vertex `v`.
    pub fn face_of(&self, v: Vertex) -> &Face {
        &self.face_of[v as usize]
    }

    /// The sd-vertex representing a nonempty base face.
    pub fn vertex_of(&self, sigma: &Face) -> Option<Vertex> {
        self.id_of.get(sigma).copied()
    }

    /// The sd-vertex `{v}` for a base vertex `v`.
    pub fn vertex_of_base_vertex(&self, v: Vertex) -> Option<Vertex> {
        self.vertex_of(&Face::vertex(v))
    }

    pub fn num_vertices(&self) -> usize {
        self.face_of.len()
    }

    /// `(sd-vertex, base face)` pairs in id order.
    pub fn labeling(&self) -> impl Iterator<Item = (Vertex, &Face)> {
        self.face_of.iter().enumerate().map(|(i, f)| (i as Vertex, f))
    }

    /// The sd-face corresponding to a chain of base faces.
    pub fn chain_to_face(&self, chain: &[Face]) -> Option<Face> {
        let ids: Option<Vec<Vertex>> = chain.iter().map(|f| self.vertex_of(f)).collect();
        ids.map(Face::new)
    }
}

/// Barycentric subdivision: the complex of strict chains of nonempty faces.
pub fn sd(k: &Complex) -> SdComplex {
    let mut nonempty: Vec<Face> = k.faces().iter().filter(|f| !f.is_empty()).cloned().collect();
    nonempty.sort_by(Face::graded_cmp);
    let id_of: HashMap<Face, Vertex> = nonempty
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i as Vertex))
        .collect();
    let complex = if k.is_empty() {
        Complex::empty()
    } else if k.is_unit() {
        Complex::unit()
    } else {
        let mut facets = Vec::new();
        for facet in k.facets() {
            let mut chain = Vec::with_capacity(facet.len());
            push_flags(facet, &Face::empty(), &id_of, &mut chain, &mut facets);
        }
        Complex::from_antichain(facets)
    };
    let labels: BTreeMap<Vertex, String> = nonempty
        .iter()
        .enumerate()
        .map(|(i, f)| (i as Vertex, f.to_string()))
        .collect();
    SdComplex {
        complex: complex.with_labels(labels),
        face_of: nonempty,
        id_of,
    }
}

// Full flags ∅ ⊊ {v1} ⊊ {v1,v2} ⊊ ... ⊊ facet; each is a maximal chain.
fn push_flags(
    facet: &Face,
    current: &Face,
    id_of: &HashMap<Face, Vertex>,
    chain: &mut Vec<Vertex>,
    out: &mut Vec<Face>,
) {
    if current.len() == facet.len() {
        out.push(Face::new(chain.iter().copied()));
        return;
    }
    for &v in facet.vertices() {
        if current.contains(v) {
            continue;
        }
        let next = current.with(v);
        chain.push(id_of[&next]);
        push_flags(facet, &next, id_of, chain, out);
        chain.pop();
    }
}

/// `sd² K` with both labeling levels.
#[derive(Clone, Debug)]
pub struct Sd2 {
    pub first: SdComplex,
    pub second: SdComplex,
}

impl Sd2 {
    pub fn new(k: &Complex) -> Self {
        let first = sd(k);
        let second = sd(&first.complex);
        Sd2 { first, second }
    }

    pub fn complex(&self) -> &Complex {
        &self.second.complex
    }

    /// The vertex of `sd² K` corresponding to the face `sigma` of `K`.
    pub fn vertex_of_base_face(&self, sigma: &Face) -> Option<Vertex> {
        let v = self.first.vertex_of(sigma)?;
        self.second.vertex_of_base_vertex(v)
    }
}

/// `lk(θ, sd K) ≅ sd ∂θ * sd lk(θ, K)` with the explicit vertex bijection
/// `λ ↦ λ` for `λ ⊊ θ` and `λ ↦ λ \ θ` for `θ ⊊ λ`.
#[derive(Clone, Debug)]
pub struct LinkIso {
    /// `lk(θ, sd K)` in the vertex ids of `sd K`.
    pub link: Complex,
    /// `sd` of the proper faces of `θ` (for a vertex this is `{∅}`).
    pub boundary_sd: SdComplex,
    /// `sd lk(θ, K)`.
    pub link_sd: SdComplex,
    /// The join; vertices of `link_sd` are shifted by `offset`.
    pub join: Complex,
    pub offset: Vertex,
    /// Vertex map from `link` to `join`.
    pub forward: BTreeMap<Vertex, Vertex>,
}

impl LinkIso {
    pub fn backward(&self) -> BTreeMap<Vertex, Vertex> {
        self.forward.iter().map(|(&a, &b)| (b, a)).collect()
    }
}

pub fn psi_link_iso(k: &Complex, theta: &Face) -> Result<LinkIso> {
    let sdk = sd(k);
    psi_link_iso_in(k, &sdk, theta)
}

/// As [`psi_link_iso`] with a precomputed `sd K`.
pub fn psi_link_iso_in(k: &Complex, sdk: &SdComplex, theta: &Face) -> Result<LinkIso> {
    if theta.is_empty() {
        return Err(Error::Precondition("θ must be a nonempty face".into()));
    }
    let theta_id = sdk
        .vertex_of(theta)
        .ok_or_else(|| Error::FaceNotInComplex(theta.clone()))?;
    let link = sdk.complex.vertex_link(theta_id);
    let boundary_sd = sd(&Complex::proper_faces(theta));
    let base_link = k.link_unchecked(theta);
    let link_sd = sd(&base_link);
    let offset = boundary_sd.complex.max_vertex().map_or(0, |m| m + 1);
    let join = boundary_sd
        .complex
        .join_disjoint(&link_sd.complex.relabel(|v| v + offset));
    let mut forward = BTreeMap::new();
    for v in link.vertices() {
        let lambda = sdk.face_of(v);
        let image = if lambda.is_subset_of(theta) {
            boundary_sd.vertex_of(lambda).expect("proper subface")
        } else {
            link_sd
                .vertex_of(&lambda.difference(theta))
                .expect("coface minus θ lies in the link")
                + offset
        };
        forward.insert(v, image);
    }
    Ok(LinkIso {
        link,
        boundary_sd,
        link_sd,
        join,
        offset,
        forward,
    })
}

/// Both pairs of the link-of-a-vertex isomorphism together with the map.
#[derive(Clone, Debug)]
pub struct PairIso {
    /// `(lk(x, sd K), O_{sd K}(x, W ∩ V(lk(x, K))))`, in ids of `sd K`.
    pub left: (Complex, Complex),
    /// `(sd lk(x, K), st(W ∩ V(lk(x, K)), sd lk(x, K)))`, in ids of `sd lk(x, K)`.
    pub right: (Complex, Complex),
    pub link_sd: SdComplex,
    /// Vertex map from the left pair to the right pair.
    pub forward: BTreeMap<Vertex, Vertex>,
}

pub fn pair_iso(k: &Complex, x: Vertex, w: &[Vertex]) -> Result<PairIso> {
    let sdk = sd(k);
    pair_iso_in(k, &sdk, x, w)
}

pub fn pair_iso_in(k: &Complex, sdk: &SdComplex, x: Vertex, w: &[Vertex]) -> Result<PairIso> {
    let xf = Face::vertex(x);
    if !k.contains(&xf) {
        return Err(Error::NotAVertex(x));
    }
    if w.contains(&x) {
        return Err(Error::Precondition(format!("x = {x} must not lie in W")));
    }
    for &u in w {
        if !k.contains(&Face::vertex(u)) {
            return Err(Error::NotAVertex(u));
        }
    }
    let xs = sdk.vertex_of(&xf).expect("vertex of K");
    let iso = psi_link_iso_in(k, sdk, &xf)?;
    let base_link = k.vertex_link(x);
    let in_link: Vec<Vertex> = w
        .iter()
        .copied()
        .filter(|u| base_link.contains(&Face::vertex(*u)))
        .collect();
    // Vertices of W outside lk(x, K) contribute nothing. Taken literally their
    // overlap with lk(x, sd K) is {∅}, which has no counterpart on the right.
    let ws: Vec<Vertex> = in_link
        .iter()
        .map(|&u| sdk.vertex_of_base_vertex(u).expect("vertex of K"))
        .collect();
    let left_overlap = crate::decomp::overlap(&sdk.complex, xs, &ws);
    let link_sd = iso.link_sd;
    let right_star_centers: Vec<Vertex> = in_link
        .iter()
        .map(|&u| link_sd.vertex_of_base_vertex(u).expect("link vertex"))
        .collect();
    let right_star = link_sd.complex.star_of_vertices(&right_star_centers);
    // ∂{x} = {∅} has no vertices, so the join is sd lk(x, K) shifted by `offset`.
    let forward = iso
        .forward
        .iter()
        .map(|(&a, &b)| (a, b - iso.offset))
        .collect();
    Ok(PairIso {
        left: (iso.link, left_overlap),
        right: (link_sd.complex.clone(), right_star),
        link_sd,
        forward,
    })
}

/// Checks that `map` is a bijection `V(a) → V(b)` sending faces of `a` exactly
/// onto faces of `b`.
pub fn is_simplicial_isomorphism(a: &Complex, b: &Complex, map: &BTreeMap<Vertex, Vertex>) -> bool {
    let va = a.vertices();
    let vb = b.vertices();
    if va.len() != vb.len() || map.len() != va.len() {
        return false;
    }
    if !va.iter().all(|v| map.contains_key(v)) {
        return false;
    }
    let mut image: Vec<Vertex> = map.values().copied().collect();
    image.sort_unstable();
    image.dedup();
    if image != vb {
        return false;
    }
    if a.is_empty() != b.is_empty() || a.num_faces() != b.num_faces() {
        return false;
    }
    a.faces().iter().all(|f| b.contains(&f.map(|v| map[&v])))
}

/// Applies a vertex map to a complex.
pub fn map_complex(k: &Complex, map: &BTreeMap<Vertex, Vertex>) -> Complex {
    k.relabel(|v| map[&v])
}

/// The sidecar label map written next to a subdivision: sd-vertex id → base face.
#[derive(Serialize)]
pub struct LabelMap<'a> {
    pub labels: BTreeMap<Vertex, &'a Face>,
}

impl SdComplex {
    pub fn label_map(&self) -> LabelMap<'_> {
        LabelMap {
            labels: self.labeling().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[Vertex]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| Face::from(*f)))
    }

    #[test]
    fn sd_of_units() {
        assert_eq!(sd(&Complex::empty()).complex, Complex::empty());
        assert_eq!(sd(&Complex::unit()).complex, Complex::unit());
    }

    #[test]
    fn sd_of_edge_is_a_path() {
        let s = sd(&Complex::simplex([1, 2]));
        // ids: {1}=0, {2}=1, {1,2}=2
        assert_eq!(s.face_of(2), &Face::from([1, 2]));
        assert_eq!(s.complex, c(&[&[0, 2], &[1, 2]]));
    }

    #[test]
    fn sd_of_triangle_counts() {
        let s = sd(&Complex::simplex([1, 2, 3]));
        assert_eq!(s.complex.num_vertices(), 7);
        assert_eq!(s.complex.facets().len(), 6);
    }

    #[test]
    fn sd_of_tetrahedron_boundary_counts() {
        let s = sd(&Complex::boundary_simplex(&Face::from([1, 2, 3, 4])));
        assert_eq!(s.complex.num_vertices(), 14);
        assert_eq!(s.complex.facets().len(), 24);
    }

    #[test]
    fn psi_on_top_face_of_triangle() {
        let k = Complex::simplex([1, 2, 3]);
        let iso = psi_link_iso(&k, &Face::from([1, 2, 3])).unwrap();
        assert_eq!(iso.link.facets().len(), 6);
        assert!(iso.link_sd.complex.is_unit());
        assert!(is_simplicial_isomorphism(&iso.link, &iso.join, &iso.forward));
    }

    #[test]
    fn psi_rejects_bad_faces() {
        let k = Complex::simplex([1, 2]);
        assert!(psi_link_iso(&k, &Face::empty()).is_err());
        assert!(psi_link_iso(&k, &Face::from([3])).is_err());
    }
}
