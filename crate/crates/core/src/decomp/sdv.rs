use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::star::StarDecompCert;
use super::{is_suffix, malformed, rejected, CertPath, VerifyError};
use crate::complex::{Complex, Dim};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::subdivision::{sd, SdComplex};

/// Witness that `(sd X, Xset)` is star decomposable in vertices: a total order
/// on `V(X)` and, for each vertex `w` in that order, a certificate for
/// `sd lk(w, X)` with the set of link vertices after `w` (all link vertices
/// for the last one). Vertex ids are those of `X`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdvCert {
    pub order: Vec<Vertex>,
    pub children: Vec<SdvCert>,
}

impl SdvCert {
    pub fn is_empty(&self) -> bool {
        self.order.is_empty() && self.children.is_empty()
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(SdvCert::size).sum::<usize>()
    }

    /// The set the child at position `i` certifies, given the link.
    pub(crate) fn child_set(&self, i: usize, link: &Complex) -> Vec<Vertex> {
        let vs = link.vertices();
        if i + 1 == self.order.len() {
            return vs;
        }
        let later: BTreeSet<Vertex> = self.order[i + 1..].iter().copied().collect();
        vs.into_iter().filter(|v| later.contains(v)).collect()
    }
}

pub fn relabel_sdv(cert: &SdvCert, f: &dyn Fn(Vertex) -> Vertex) -> SdvCert {
    SdvCert {
        order: cert.order.iter().map(|&v| f(v)).collect(),
        children: cert.children.iter().map(|c| relabel_sdv(c, f)).collect(),
    }
}

/// Verifies the order, link and last vertex conditions recursively.
pub fn verify_sdv(x: &Complex, xset: &[Vertex], cert: &SdvCert) -> Result<(), VerifyError> {
    verify_at(x, xset, cert, &CertPath::default())
}

fn verify_at(x: &Complex, xset: &[Vertex], cert: &SdvCert, path: &CertPath) -> Result<(), VerifyError> {
    if !x.is_pure() {
        return Err(VerifyError::NotPure { path: path.clone() });
    }
    match x.dim() {
        Dim::NegInfinity => return Err(rejected(path, "the complex is empty")),
        Dim::Finite(-1) => {
            if !cert.is_empty() {
                return Err(malformed(path, "certificate for {∅} must be empty"));
            }
            if !xset.is_empty() {
                return Err(rejected(path, "the distinguished set of {∅} must be empty"));
            }
            return Ok(());
        }
        Dim::Finite(_) => {}
    }
    let mut sorted = cert.order.clone();
    sorted.sort_unstable();
    if sorted != x.vertices() {
        return Err(malformed(path, "order must list every vertex exactly once"));
    }
    if cert.children.len() != cert.order.len() {
        return Err(malformed(
            path,
            format!(
                "{} vertices need as many children, found {}",
                cert.order.len(),
                cert.children.len()
            ),
        ));
    }
    if !is_suffix(&cert.order, xset) {
        return Err(rejected(
            path,
            format!("{xset:?} is not a nonempty final segment of {:?}", cert.order),
        ));
    }
    for (i, &w) in cert.order.iter().enumerate() {
        let link = x.vertex_link(w);
        let set = cert.child_set(i, &link);
        verify_at(&link, &set, &cert.children[i], &path.push(w))?;
    }
    Ok(())
}

/// Result of turning a decomposition in vertices into a plain star
/// decomposition of `sd X`.
#[derive(Clone, Debug)]
pub struct SdTransport {
    pub sd: SdComplex,
    pub certificate: StarDecompCert,
    /// The distinguished set in ids of `sd X`.
    pub xset: Vec<Vertex>,
}

/// Builds a star decomposition of `(sd X, Xset)` from a verified decomposition
/// in vertices. `W` is the set of vertices `{w}` of `sd X`, and for each `w`
/// the set `U` consists of the edges `{u, w}` with `u` a later link vertex.
/// Child certificates are moved from `sd lk(w, X)` into `lk({w}, sd X)` by
/// `μ ↦ μ ∪ {w}`.
pub fn sdv_to_sd(x: &Complex, xset: &[Vertex], cert: &SdvCert) -> Result<SdTransport> {
    verify_sdv(x, xset, cert).map_err(|e| Error::InvalidCertificate(e.to_string()))?;
    let sdx = sd(x);
    let certificate = transport(x, &sdx, cert);
    let xset = xset
        .iter()
        .map(|&v| sdx.vertex_of_base_vertex(v).expect("vertex"))
        .collect();
    Ok(SdTransport {
        sd: sdx,
        certificate,
        xset,
    })
}

fn transport(x: &Complex, sdx: &SdComplex, cert: &SdvCert) -> StarDecompCert {
    if x.dim() == Dim::Finite(-1) {
        return StarDecompCert::default();
    }
    let n = cert.order.len();
    let mut out = StarDecompCert {
        order: cert
            .order
            .iter()
            .map(|&w| sdx.vertex_of_base_vertex(w).expect("vertex"))
            .collect(),
        ..Default::default()
    };
    for (i, &w) in cert.order.iter().enumerate() {
        let link = x.vertex_link(w);
        let sdl = sd(&link);
        let child = transport(&link, &sdl, &cert.children[i]);
        let lift = |v: Vertex| {
            sdx.vertex_of(&sdl.face_of(v).with(w))
                .expect("link face joined with w is a face")
        };
        out.children.push(super::star::relabel_star(&child, &lift));
        let edges: Vec<Vertex> = cert
            .child_set(i, &link)
            .into_iter()
            .map(|u| sdx.vertex_of(&Face::from([u, w])).expect("edge"))
            .collect();
        if i + 1 < n {
            out.u_sets.push(edges);
        } else {
            out.last_xset = edges;
        }
    }
    out
}
