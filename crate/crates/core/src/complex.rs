//! Finite abstract simplicial complexes.
//!
//! A [`Complex`] is stored by its facets (inclusion-maximal faces) in canonical
//! sorted order. The full face lattice is materialized on first use and cached.
//! The empty complex (no faces at all) and the complex `{∅}` whose only face
//! is the empty face are different values: the first has no facets, the second
//! has the single facet `∅`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

/// Dimension of a complex. The empty complex has dimension `NegInfinity`,
/// which is strictly below the dimension `-1` of `{∅}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    NegInfinity,
    Finite(isize),
}

impl Dim {
    pub fn finite(self) -> Option<isize> {
        match self {
            Dim::NegInfinity => None,
            Dim::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::NegInfinity => write!(f, "-inf"),
            Dim::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug)]
struct FaceIndex {
    /// Every face, sorted by size then lexicographically.
    all: Vec<Face>,
    members: HashSet<Face>,
}

#[derive(Clone, Default)]
pub struct Complex {
    facets: Vec<Face>,
    labels: Option<Arc<BTreeMap<Vertex, String>>>,
    index: OnceLock<Arc<FaceIndex>>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for Complex {}

impl std::hash::Hash for Complex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.facets.hash(state);
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex{:?}", self.facets)
    }
}

/// Reduces a list of faces to its inclusion-maximal members, sorted.
pub(crate) fn maximal_faces(mut candidates: Vec<Face>) -> Vec<Face> {
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    candidates.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(candidates.len());
    let mut by_vertex: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for c in candidates {
        let covered = if c.is_empty() {
            !kept.is_empty()
        } else {
            let rarest = c
                .vertices()
                .iter()
                .map(|v| by_vertex.get(v).map_or(&[][..], |l| l.as_slice()))
                .min_by_key(|l| l.len())
                .unwrap_or(&[]);
            rarest.iter().any(|&i| c.is_subset_of(&kept[i]))
        };
        if !covered {
            for &v in c.vertices() {
                by_vertex.entry(v).or_default().push(kept.len());
            }
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

impl Complex {
    /// The empty complex: no faces, not even `∅`.
    pub fn empty() -> Self {
        Complex::default()
    }

    /// The complex `{∅}`, the unit for joins.
    pub fn unit() -> Self {
        Complex {
            facets: vec![Face::empty()],
            ..Default::default()
        }
    }

    /// Downward closure of the given faces.
    pub fn from_facets<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        Complex {
            facets: maximal_faces(faces.into_iter().collect()),
            ..Default::default()
        }
    }

    /// Trusts that `facets` is already a sorted antichain.
    pub(crate) fn from_antichain(mut facets: Vec<Face>) -> Self {
        facets.sort();
        debug_assert!(facets.windows(2).all(|w| w[0] != w[1]));
        Complex {
            facets,
            ..Default::default()
        }
    }

    /// The full simplex on the given vertices.
    pub fn simplex<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        Complex::from_facets([Face::new(vertices)])
    }

    /// All proper subsets of `sigma`. Following the usual convention the
    /// boundary of a vertex is the empty complex, not `{∅}`.
    pub fn boundary_simplex(sigma: &Face) -> Self {
        if sigma.len() <= 1 {
            return Complex::empty();
        }
        Complex::proper_faces(sigma)
    }

    /// All proper subsets of `sigma`; for a vertex this is `{∅}`. This is the
    /// factor that appears in the join description of links in a subdivision.
    pub fn proper_faces(sigma: &Face) -> Self {
        if sigma.is_empty() {
            return Complex::empty();
        }
        Complex::from_antichain(sigma.ridges().collect())
    }

    pub fn with_labels(mut self, labels: BTreeMap<Vertex, String>) -> Self {
        self.labels = Some(Arc::new(labels));
        self
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.as_ref()?.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> Option<&BTreeMap<Vertex, String>> {
        self.labels.as_deref()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// True for `{∅}`.
    pub fn is_unit(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    pub fn dim(&self) -> Dim {
        match self.facets.iter().map(Face::len).max() {
            None => Dim::NegInfinity,
            Some(n) => Dim::Finite(n as isize - 1),
        }
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self
            .facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        set.into_iter().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.facets
            .iter()
            .filter_map(|f| f.vertices().last().copied())
            .max()
    }

    fn index(&self) -> &FaceIndex {
        self.index.get_or_init(|| {
            let mut members = HashSet::new();
            for f in &self.facets {
                for s in f.subsets() {
                    members.insert(s);
                }
            }
            let mut all: Vec<Face> = members.iter().cloned().collect();
            all.sort_by(Face::graded_cmp);
            Arc::new(FaceIndex { all, members })
        })
    }

    pub fn contains(&self, sigma: &Face) -> bool {
        if let Some(ix) = self.index.get() {
            return ix.members.contains(sigma);
        }
        if self.facets.len() <= 8 {
            return self.facets.iter().any(|f| sigma.is_subset_of(f));
        }
        self.index().members.contains(sigma)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.contains(&Face::from([u, v]))
    }

    /// All faces, including `∅` when the complex is nonempty, ordered by size
    /// and then lexicographically.
    pub fn faces(&self) -> &[Face] {
        &self.index().all
    }

    pub fn faces_of_dim(&self, d: isize) -> Vec<Face> {
        let size = (d + 1) as usize;
        if d < -1 {
            return Vec::new();
        }
        self.faces()
            .iter()
            .filter(|f| f.len() == size)
            .cloned()
            .collect()
    }

    pub fn num_faces(&self) -> usize {
        self.faces().len()
    }

    /// Face counts `f_{-1}, f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for f in self.faces() {
            if out.len() <= f.len() {
                out.resize(f.len() + 1, 0);
            }
            out[f.len()] += 1;
        }
        out
    }

    fn require(&self, sigma: &Face) -> Result<()> {
        if self.contains(sigma) {
            Ok(())
        } else {
            Err(Error::FaceNotInComplex(sigma.clone()))
        }
    }

    /// `lk(σ, K) = {τ \ σ : τ ∈ K, σ ⊆ τ}`.
    pub fn link(&self, sigma: &Face) -> Result<Complex> {
        self.require(sigma)?;
        Ok(self.link_unchecked(sigma))
    }

    pub(crate) fn link_unchecked(&self, sigma: &Face) -> Complex {
        Complex::from_antichain(
            self.facets
                .iter()
                .filter(|f| sigma.is_subset_of(f))
                .map(|f| f.difference(sigma))
                .collect(),
        )
    }

    pub(crate) fn vertex_link(&self, v: Vertex) -> Complex {
        self.link_unchecked(&Face::vertex(v))
    }

    /// Closed star `st(σ, K) = {τ ∈ K : τ ∪ σ ∈ K}`.
    pub fn star(&self, sigma: &Face) -> Result<Complex> {
        self.require(sigma)?;
        Ok(Complex::from_antichain(
            self.facets
                .iter()
                .filter(|f| sigma.is_subset_of(f))
                .cloned()
                .collect(),
        ))
    }

    /// Union of the closed stars of the given vertices; empty for an empty set.
    pub fn star_of_vertices(&self, vertices: &[Vertex]) -> Complex {
        Complex::from_antichain(
            self.facets
                .iter()
                .filter(|f| vertices.iter().any(|&w| f.contains(w)))
                .cloned()
                .collect(),
        )
    }

    /// `K - v`: every face not containing `v`.
    pub fn delete_vertex(&self, v: Vertex) -> Complex {
        if !self.facets.iter().any(|f| f.contains(v)) {
            return self.clone();
        }
        Complex::from_facets(self.facets.iter().map(|f| f.without(v)))
    }

    /// Subcomplex induced by a vertex set.
    pub fn induced(&self, vertices: &BTreeSet<Vertex>) -> Complex {
        if self.is_empty() {
            return Complex::empty();
        }
        let keep = Face::new(vertices.iter().copied());
        Complex::from_facets(self.facets.iter().map(|f| f.intersection(&keep)))
    }

    pub fn union(&self, other: &Complex) -> Complex {
        Complex::from_facets(self.facets.iter().chain(other.facets.iter()).cloned())
    }

    pub fn intersection(&self, other: &Complex) -> Complex {
        let mut cands = Vec::new();
        for f in &self.facets {
            for g in &other.facets {
                cands.push(f.intersection(g));
            }
        }
        Complex::from_facets(cands)
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.facets.iter().all(|f| other.contains(f))
    }

    /// Join with `other`, whose vertices are shifted by `max vertex + 1` of `self`
    /// so the two vertex sets are disjoint.
    pub fn join(&self, other: &Complex) -> Join {
        let offset = self.max_vertex().map_or(0, |m| m + 1);
        let complex = self.join_disjoint(&other.relabel(|v| v + offset));
        Join { complex, offset }
    }

    /// Join of two complexes whose vertex sets are already disjoint.
    pub(crate) fn join_disjoint(&self, other: &Complex) -> Complex {
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                facets.push(f.union(g));
            }
        }
        Complex::from_antichain(facets)
    }

    /// Applies an injective vertex map.
    pub fn relabel<F: Fn(Vertex) -> Vertex>(&self, f: F) -> Complex {
        Complex::from_antichain(self.facets.iter().map(|s| s.map(&f)).collect())
    }

    /// Checks downward closure of the cached face lattice against the facets.
    pub fn check_closure(&self) -> bool {
        let ix = self.index();
        ix.all
            .iter()
            .all(|f| f.ridges().all(|r| ix.members.contains(&r)))
            && self.facets.iter().all(|f| ix.members.contains(f))
    }

    /// Parses the facet-list text format: one facet per line as whitespace
    /// separated vertex ids, `{}` for the empty face, `#` starts a comment.
    /// A file without facet lines is the empty complex.
    pub fn parse(text: &str) -> Result<Complex> {
        let mut facets = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line == "{}" {
                facets.push(Face::empty());
                continue;
            }
            let mut vs = Vec::new();
            for tok in line.split_whitespace() {
                let v: Vertex = tok.parse().map_err(|_| Error::Parse {
                    line: n + 1,
                    message: format!("expected a vertex id, found {tok:?}"),
                })?;
                vs.push(v);
            }
            let face = Face::new(vs.iter().copied());
            if face.len() != vs.len() {
                return Err(Error::Parse {
                    line: n + 1,
                    message: "repeated vertex in facet".into(),
                });
            }
            facets.push(face);
        }
        Ok(Complex::from_facets(facets))
    }

    /// Writes the facet-list text format.
    pub fn to_facet_list(&self) -> String {
        let mut out = String::new();
        for f in &self.facets {
            if f.is_empty() {
                out.push_str("{}");
            } else {
                let parts: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
                out.push_str(&parts.join(" "));
            }
            out.push('\n');
        }
        out
    }
}

/// Result of [`Complex::join`]: the second factor's vertex `v` became `v + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Join {
    pub complex: Complex,
    pub offset: Vertex,
}

impl Join {
    pub fn relabel(&self, v: Vertex) -> Vertex {
        v + self.offset
    }
}

impl Serialize for Complex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.facets.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Complex::from_facets(Vec::<Face>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[Vertex]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| Face::from(*f)))
    }

    #[test]
    fn empty_and_unit_are_distinct() {
        let e = Complex::empty();
        let u = Complex::unit();
        assert_ne!(e, u);
        assert_eq!(e.dim(), Dim::NegInfinity);
        assert_eq!(u.dim(), Dim::Finite(-1));
        assert_eq!(e.num_faces(), 0);
        assert_eq!(u.num_faces(), 1);
        assert!(Dim::NegInfinity < Dim::Finite(-1));
    }

    #[test]
    fn from_facets_drops_non_maximal() {
        let k = c(&[&[1, 2], &[1], &[1, 2, 3], &[4]]);
        assert_eq!(k.facets(), &[Face::from([1, 2, 3]), Face::from([4])]);
        assert!(k.check_closure());
    }

    #[test]
    fn link_examples() {
        let tri = Complex::simplex([1, 2, 3]);
        assert_eq!(tri.link(&Face::empty()).unwrap(), tri);
        assert_eq!(tri.link(&Face::from([1, 2])).unwrap(), c(&[&[3]]));
        assert_eq!(tri.link(&Face::from([1, 2, 3])).unwrap(), Complex::unit());
        assert!(matches!(
            tri.link(&Face::from([1, 4])),
            Err(Error::FaceNotInComplex(_))
        ));
    }

    #[test]
    fn star_examples() {
        let path = c(&[&[1, 2], &[2, 3]]);
        assert_eq!(path.star(&Face::from([2])).unwrap(), path);
        assert_eq!(path.star(&Face::empty()).unwrap(), path);
        assert_eq!(path.star(&Face::from([1])).unwrap(), c(&[&[1, 2]]));
    }

    #[test]
    fn join_units() {
        let k = c(&[&[1, 2], &[2, 3]]);
        assert_eq!(k.join(&Complex::unit()).complex, k);
        assert_eq!(k.join(&Complex::empty()).complex, Complex::empty());
        let pt = Complex::simplex([0]);
        let j = pt.join(&pt);
        assert_eq!(j.complex, c(&[&[0, 1]]));
        assert_eq!(j.offset, 1);
    }

    #[test]
    fn boundary_simplex_examples() {
        assert_eq!(Complex::boundary_simplex(&Face::from([1])), Complex::empty());
        assert_eq!(
            Complex::boundary_simplex(&Face::from([1, 2])),
            c(&[&[1], &[2]])
        );
        assert_eq!(
            Complex::boundary_simplex(&Face::from([1, 2, 3])),
            c(&[&[1, 2], &[1, 3], &[2, 3]])
        );
        assert_eq!(Complex::proper_faces(&Face::from([7])), Complex::unit());
    }

    #[test]
    fn induced_delete_purity() {
        let tri_bd = Complex::boundary_simplex(&Face::from([1, 2, 3]));
        let s: BTreeSet<Vertex> = [1, 2].into_iter().collect();
        assert_eq!(tri_bd.induced(&s), c(&[&[1, 2]]));
        assert_eq!(tri_bd.delete_vertex(3), c(&[&[1, 2]]));
        let bowtie = c(&[&[1, 2, 3], &[3, 4, 5]]);
        assert!(bowtie.is_pure());
        let dangling = c(&[&[1, 2, 3], &[3, 4]]);
        assert!(!dangling.is_pure());
        assert!(Complex::empty().is_pure());
    }

    #[test]
    fn f_vector_of_tetrahedron_boundary() {
        let bd = Complex::boundary_simplex(&Face::from([1, 2, 3, 4]));
        assert_eq!(bd.f_vector(), vec![1, 4, 6, 4]);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(Complex::parse("").unwrap(), Complex::empty());
        assert_eq!(Complex::parse("# nothing\n{}\n").unwrap(), Complex::unit());
        let k = Complex::parse("1 2 3 # a triangle\n\n3 4\n").unwrap();
        assert_eq!(k, c(&[&[1, 2, 3], &[3, 4]]));
        assert_eq!(k.to_facet_list(), "1 2 3\n3 4\n");
        assert!(matches!(
            Complex::parse("1 x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(Complex::parse("1 1").is_err());
    }
}
