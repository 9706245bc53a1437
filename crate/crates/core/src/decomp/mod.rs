//! Decomposability predicates, certificates and the conversions between them:
//! shellings, shedding orders, star decompositions (plain and in vertices) and
//! the merging of orders across joins.

mod join;
mod sdv;
mod shelling;
mod star;
mod vd;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::face::{Face, Vertex};

pub use join::{join_general, join_nice, join_pairs, join_with_order, merge_join_orders, MergeMode, Merger};
pub use sdv::{relabel_sdv, sdv_to_sd, verify_sdv, SdvCert};
pub use shelling::{find_shelling, is_shelling, ShellingCheck, ShellingOrder, ShellingSearch};
pub use star::{
    find_star_decomp, find_star_decomp_any, relabel_star, sd_to_shedding, sd_to_shedding_cert,
    verify_star_decomp,
    StarDecompCert, StarSearch,
};
pub use vd::{
    is_shedding_order, is_vertex_decomposable, shedding_cert_to_shelling, shedding_to_shelling,
    verify_shedding_cert, SheddingCert, SheddingCheck, SheddingOrder, VdOracle, VdSearch,
};

/// `O(x, W′) = lk(x, X) ∩ st(W′, X)`, computed face by face from the first
/// form of the definition. Empty when `W′` is empty.
pub fn overlap(x_complex: &Complex, x: Vertex, w: &[Vertex]) -> Complex {
    if w.is_empty() {
        return Complex::empty();
    }
    let link = x_complex.link_unchecked(&Face::vertex(x));
    let keep: Vec<Face> = link
        .faces()
        .iter()
        .filter(|s| {
            w.iter()
                .any(|&u| s.contains(u) || x_complex.contains(&s.with(u)))
        })
        .cloned()
        .collect();
    Complex::from_facets(keep)
}

/// Where in a recursive certificate a check failed: the sequence of vertices
/// whose links were entered.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertPath(pub Vec<Vertex>);

impl CertPath {
    pub(crate) fn push(&self, v: Vertex) -> CertPath {
        let mut p = self.0.clone();
        p.push(v);
        CertPath(p)
    }
}

impl fmt::Display for CertPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "lk {}", parts.join(" > "))
    }
}

/// Failure of a recursive certificate verifier.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyError {
    /// The certificate does not have the shape the complex requires.
    #[error("malformed certificate at {path}: {detail}")]
    Malformed { path: CertPath, detail: String },
    /// Well-formed, but a condition of the definition fails.
    #[error("rejected at {path}: {reason}")]
    Rejected { path: CertPath, reason: String },
    #[error("complex at {path} is not pure")]
    NotPure { path: CertPath },
}

pub(crate) fn malformed(path: &CertPath, detail: impl Into<String>) -> VerifyError {
    VerifyError::Malformed {
        path: path.clone(),
        detail: detail.into(),
    }
}

pub(crate) fn rejected(path: &CertPath, reason: impl Into<String>) -> VerifyError {
    VerifyError::Rejected {
        path: path.clone(),
        reason: reason.into(),
    }
}

/// Checks that `set` is a nonempty suffix of `order` (as a set).
pub(crate) fn is_suffix(order: &[Vertex], set: &[Vertex]) -> bool {
    if set.is_empty() || set.len() > order.len() {
        return false;
    }
    let tail = &order[order.len() - set.len()..];
    let mut a = tail.to_vec();
    a.sort_unstable();
    let mut b = set.to_vec();
    b.sort_unstable();
    b.dedup();
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlap_examples() {
        let square = Complex::from_facets(
            [[1, 2], [2, 3], [3, 4], [1, 4]].into_iter().map(Face::from),
        );
        assert_eq!(overlap(&square, 1, &[]), Complex::empty());
        // x = 1, w = 3: lk(1) = {2, 4} and both are neighbours of 3.
        let o = overlap(&square, 1, &[3]);
        assert_eq!(o, Complex::from_facets([Face::from([2]), Face::from([4])]));
    }

    #[test]
    fn suffix_check() {
        assert!(is_suffix(&[1, 2, 3], &[3, 2]));
        assert!(!is_suffix(&[1, 2, 3], &[1, 3]));
        assert!(!is_suffix(&[1, 2, 3], &[]));
    }
}
