use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// Vertex identifier.
pub type Vertex = u32;

/// A face of a simplicial complex: a strictly increasing list of vertices.
///
/// The empty list is the empty face. Construction always canonicalizes, so
/// two faces are equal exactly when their vertex sets are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Face(SmallVec<[Vertex; 6]>);

impl Face {
    pub fn empty() -> Self {
        Face(SmallVec::new())
    }

    pub fn vertex(v: Vertex) -> Self {
        let mut s = SmallVec::new();
        s.push(v);
        Face(s)
    }

    /// Builds a face from arbitrary vertices, sorting and removing duplicates.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut s: SmallVec<[Vertex; 6]> = vertices.into_iter().collect();
        s.sort_unstable();
        s.dedup();
        Face(s)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, `len - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        is_sorted_subset(&self.0, &other.0)
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out = SmallVec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Face(out)
    }

    pub fn intersection(&self, other: &Face) -> Face {
        let mut out = SmallVec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Face(out)
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn without(&self, v: Vertex) -> Face {
        Face(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    pub fn with(&self, v: Vertex) -> Face {
        self.union(&Face::vertex(v))
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.intersection(other).is_empty()
    }

    /// All subsets of this face, including the empty face and the face itself.
    pub fn subsets(&self) -> Vec<Face> {
        let n = self.len();
        assert!(n < 31, "face too large to enumerate subsets");
        (0u32..(1 << n))
            .map(|mask| {
                Face(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    /// Faces obtained by dropping exactly one vertex.
    pub fn ridges(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.len()).map(move |i| {
            let mut s = self.0.clone();
            s.remove(i);
            Face(s)
        })
    }

    pub fn map<F: Fn(Vertex) -> Vertex>(&self, f: F) -> Face {
        Face::new(self.0.iter().map(|&v| f(v)))
    }

    /// Ordering by size first, then lexicographically.
    pub fn graded_cmp(&self, other: &Face) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

pub(crate) fn is_sorted_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl From<&[Vertex]> for Face {
    fn from(v: &[Vertex]) -> Self {
        Face::new(v.iter().copied())
    }
}

impl<const N: usize> From<[Vertex; N]> for Face {
    fn from(v: [Vertex; N]) -> Self {
        Face::new(v)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<Vertex>::deserialize(deserializer)?;
        let face = Face::new(v.iter().copied());
        if face.len() != v.len() || v.windows(2).any(|w| w[0] > w[1]) {
            return Err(serde::de::Error::custom(
                "face must be a strictly increasing vertex list",
            ));
        }
        Ok(face)
    }
}
