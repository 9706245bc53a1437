use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::shelling::{is_shelling, ShellingCheck, ShellingOrder};
use crate::complex::{Complex, Dim};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

/// A vertex order of a vertex decomposition, extended over the vertices of
/// the final simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheddingOrder {
    pub vertices: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum VdSearch {
    Decomposable { order: SheddingOrder },
    No,
    BudgetExceeded,
}

pub(crate) struct OutOfBudget;

/// Memoized vertex decomposability search returning shedding orders.
///
/// A hint order steers which shedding vertex is tried first; when the hint is
/// itself a shedding order the search never backtracks.
pub struct VdOracle {
    memo: HashMap<Vec<Face>, Option<Vec<Vertex>>>,
    nodes: u64,
    budget: u64,
}

impl VdOracle {
    pub fn new(budget: u64) -> Self {
        VdOracle {
            memo: HashMap::new(),
            nodes: 0,
            budget,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// A shedding order of a pure complex, if one exists.
    pub(crate) fn decompose(
        &mut self,
        k: &Complex,
        hint: &[Vertex],
    ) -> Result<Option<Vec<Vertex>>, OutOfBudget> {
        let rank: HashMap<Vertex, usize> = hint.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        self.run(k, &rank)
    }

    fn by_hint(vs: &mut [Vertex], rank: &HashMap<Vertex, usize>) {
        vs.sort_by_key(|v| (rank.get(v).copied().unwrap_or(usize::MAX), *v));
    }

    fn run(
        &mut self,
        k: &Complex,
        rank: &HashMap<Vertex, usize>,
    ) -> Result<Option<Vec<Vertex>>, OutOfBudget> {
        if k.is_empty() || !k.is_pure() {
            return Ok(None);
        }
        let d = k.dim().finite().expect("nonempty");
        if k.facets().len() == 1 || d == 0 {
            let mut vs = k.vertices();
            Self::by_hint(&mut vs, rank);
            return Ok(Some(vs));
        }
        if let Some(hit) = self.memo.get(k.facets()) {
            return Ok(hit.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OutOfBudget);
        }
        let result = if d == 1 {
            graph_order(k, rank)
        } else if let Some(apex) = cone_apex(k, rank) {
            self.run(&k.vertex_link(apex), rank)?.map(|mut o| {
                o.push(apex);
                o
            })
        } else {
            let mut candidates = k.vertices();
            Self::by_hint(&mut candidates, rank);
            let mut found = None;
            for v in candidates {
                let rest = k.delete_vertex(v);
                if !rest.is_pure() || rest.dim() != Dim::Finite(d) {
                    continue;
                }
                if self.run(&k.vertex_link(v), rank)?.is_none() {
                    continue;
                }
                if let Some(o) = self.run(&rest, rank)? {
                    let mut order = vec![v];
                    order.extend(o);
                    found = Some(order);
                    break;
                }
            }
            found
        };
        self.memo.insert(k.facets().to_vec(), result.clone());
        Ok(result)
    }
}

fn cone_apex(k: &Complex, rank: &HashMap<Vertex, usize>) -> Option<Vertex> {
    let mut common: Vec<Vertex> = k.facets()[0]
        .vertices()
        .iter()
        .copied()
        .filter(|&v| k.facets().iter().all(|f| f.contains(v)))
        .collect();
    VdOracle::by_hint(&mut common, rank);
    common.last().copied()
}

/// Reverse breadth-first order of a connected graph: every prefix removal
/// leaves a connected graph without isolated vertices.
fn graph_order(k: &Complex, rank: &HashMap<Vertex, usize>) -> Option<Vec<Vertex>> {
    let mut vs = k.vertices();
    VdOracle::by_hint(&mut vs, rank);
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for e in k.facets() {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for list in adj.values_mut() {
        VdOracle::by_hint(list, rank);
        list.reverse();
    }
    let root = *vs.last()?;
    let mut seen = std::collections::HashSet::from([root]);
    let mut queue = VecDeque::from([root]);
    let mut bfs = Vec::new();
    while let Some(v) = queue.pop_front() {
        bfs.push(v);
        for &u in &adj[&v] {
            if seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    if bfs.len() != vs.len() {
        return None;
    }
    bfs.reverse();
    Some(bfs)
}

pub fn is_vertex_decomposable(k: &Complex, budget: u64) -> Result<VdSearch> {
    let mut oracle = VdOracle::new(budget);
    Ok(match oracle.decompose(k, &[]) {
        Ok(Some(vertices)) => VdSearch::Decomposable {
            order: SheddingOrder { vertices },
        },
        Ok(None) => VdSearch::No,
        Err(OutOfBudget) => VdSearch::BudgetExceeded,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SheddingCheck {
    Ok,
    Fail {
        index: usize,
        vertex: Vertex,
        reason: String,
    },
    BudgetExceeded {
        index: usize,
    },
}

fn restricted(order: &[Vertex], k: &Complex) -> Vec<Vertex> {
    order
        .iter()
        .copied()
        .filter(|&v| k.contains(&Face::vertex(v)))
        .collect()
}

fn check_permutation(k: &Complex, order: &[Vertex]) -> Result<()> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != k.vertices() {
        return Err(Error::InvalidCertificate(
            "shedding order must list every vertex exactly once".into(),
        ));
    }
    Ok(())
}

/// Checks, for every vertex `v` except the last `k + 1`, that
/// `lk(v, K_{⪰v})` is vertex decomposable of dimension `k − 1` and that
/// `K_{≻v}` is pure of dimension `k`. Vertex decomposability of the links is
/// decided by `oracle`, steered by the given order.
pub fn is_shedding_order(
    k: &Complex,
    order: &SheddingOrder,
    oracle: &mut VdOracle,
) -> Result<SheddingCheck> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    check_permutation(k, &order.vertices)?;
    let d = match k.dim() {
        Dim::Finite(d) if d >= 0 => d,
        _ => return Ok(SheddingCheck::Ok),
    };
    let n = order.vertices.len();
    let checked = n.saturating_sub(d as usize + 1);
    let mut current = k.clone();
    for (i, &v) in order.vertices[..checked].iter().enumerate() {
        let fail = |reason: String| SheddingCheck::Fail {
            index: i,
            vertex: v,
            reason,
        };
        let link = current.vertex_link(v);
        if link.dim() != Dim::Finite(d - 1) || !link.is_pure() {
            return Ok(fail(format!(
                "link has dimension {} instead of {}",
                link.dim(),
                d - 1
            )));
        }
        let rest = current.delete_vertex(v);
        if rest.dim() != Dim::Finite(d) || !rest.is_pure() {
            return Ok(fail(format!(
                "remaining complex is not pure of dimension {d}"
            )));
        }
        match oracle.decompose(&link, &restricted(&order.vertices[i + 1..], &link)) {
            Ok(Some(_)) => {}
            Ok(None) => return Ok(fail("link is not vertex decomposable".into())),
            Err(OutOfBudget) => return Ok(SheddingCheck::BudgetExceeded { index: i }),
        }
        current = rest;
    }
    Ok(SheddingCheck::Ok)
}

/// Shelling from a shedding order: the final simplex first, then for each
/// shedding vertex `v`, taken from last to first, the facets `v * G` for a
/// shelling `G` of its link at the moment of removal. The result is
/// re-verified before it is returned.
pub fn shedding_to_shelling(
    k: &Complex,
    order: &SheddingOrder,
    oracle: &mut VdOracle,
) -> Result<ShellingOrder> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    check_permutation(k, &order.vertices)?;
    let facets = shell(k, &order.vertices, oracle)?;
    let shelling = ShellingOrder { facets };
    match is_shelling(k, &shelling)? {
        ShellingCheck::Ok => Ok(shelling),
        ShellingCheck::Fail { index, witness } => Err(Error::InvalidCertificate(format!(
            "constructed facet order fails at position {index} against {witness}"
        ))),
    }
}

fn shell(k: &Complex, order: &[Vertex], oracle: &mut VdOracle) -> Result<Vec<Face>> {
    let d = match k.dim() {
        Dim::NegInfinity => return Ok(Vec::new()),
        Dim::Finite(d) => d,
    };
    if d < 0 {
        return Ok(vec![Face::empty()]);
    }
    let checked = order.len().saturating_sub(d as usize + 1);
    let mut current = k.clone();
    let mut blocks: Vec<Vec<Face>> = Vec::new();
    for (i, &v) in order[..checked].iter().enumerate() {
        let link = current.vertex_link(v);
        let hint = restricted(&order[i + 1..], &link);
        let link_order = match oracle.decompose(&link, &hint) {
            Ok(Some(o)) => o,
            Ok(None) => {
                return Err(Error::Precondition(format!(
                    "link of {v} is not vertex decomposable; not a shedding order"
                )))
            }
            Err(OutOfBudget) => {
                return Err(Error::BudgetExceeded {
                    context: format!("shelling the link of {v}"),
                    budget: oracle.budget,
                })
            }
        };
        let inner = shell(&link, &link_order, oracle)?;
        blocks.push(inner.iter().map(|f| f.with(v)).collect());
        current = current.delete_vertex(v);
    }
    if current.facets().len() != 1 {
        return Err(Error::Precondition(
            "the last vertices of a shedding order must span a simplex".into(),
        ));
    }
    let mut out = vec![current.facets()[0].clone()];
    for block in blocks.into_iter().rev() {
        out.extend(block);
    }
    Ok(out)
}

/// A shedding order with, for every checked position, a shedding
/// certificate for the link of that vertex at the moment it is removed.
/// Checking it needs no search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheddingCert {
    pub order: Vec<Vertex>,
    pub links: Vec<SheddingCert>,
}

impl SheddingCert {
    /// Certificate for the cone `apex * L` from one for `L`.
    pub fn cone(&self, apex: Vertex) -> SheddingCert {
        let mut order = self.order.clone();
        order.push(apex);
        SheddingCert {
            order,
            links: self.links.iter().map(|l| l.cone(apex)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.links.iter().map(SheddingCert::size).sum::<usize>()
    }
}

/// Checks the conditions of [`is_shedding_order`], recursing into the link
/// certificates instead of searching.
pub fn verify_shedding_cert(k: &Complex, cert: &SheddingCert) -> Result<SheddingCheck> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(match check_cert(k, cert) {
        None => SheddingCheck::Ok,
        Some((index, vertex, reason)) => SheddingCheck::Fail { index, vertex, reason },
    })
}

fn check_cert(k: &Complex, cert: &SheddingCert) -> Option<(usize, Vertex, String)> {
    let d = match k.dim() {
        Dim::Finite(d) if d >= 0 => d,
        _ => {
            return (!cert.order.is_empty() || !cert.links.is_empty())
                .then(|| (0, 0, "certificate for {∅} must be empty".to_string()));
        }
    };
    let mut sorted = cert.order.clone();
    sorted.sort_unstable();
    if sorted != k.vertices() {
        return Some((0, 0, "order must list every vertex exactly once".into()));
    }
    let checked = cert.order.len().saturating_sub(d as usize + 1);
    if cert.links.len() != checked {
        return Some((
            0,
            0,
            format!("expected {checked} link certificates, found {}", cert.links.len()),
        ));
    }
    let mut current = k.clone();
    for (i, &v) in cert.order[..checked].iter().enumerate() {
        let link = current.vertex_link(v);
        if link.dim() != Dim::Finite(d - 1) || !link.is_pure() {
            return Some((i, v, format!("link is not pure of dimension {}", d - 1)));
        }
        let rest = current.delete_vertex(v);
        if rest.dim() != Dim::Finite(d) || !rest.is_pure() {
            return Some((i, v, format!("remaining complex is not pure of dimension {d}")));
        }
        if let Some((j, u, why)) = check_cert(&link, &cert.links[i]) {
            return Some((i, v, format!("in the link, at position {j} (vertex {u}): {why}")));
        }
        current = rest;
    }
    if current.facets().len() != 1 {
        return Some((checked, cert.order[checked], "the last vertices do not span a simplex".into()));
    }
    None
}

/// Shelling from a verified shedding certificate, built as in
/// [`shedding_to_shelling`] with the link shellings taken from the
/// certificate.
pub fn shedding_cert_to_shelling(k: &Complex, cert: &SheddingCert) -> Result<ShellingOrder> {
    if let SheddingCheck::Fail { index, vertex, reason } = verify_shedding_cert(k, cert)? {
        return Err(Error::InvalidCertificate(format!(
            "shedding certificate fails at position {index} (vertex {vertex}): {reason}"
        )));
    }
    let shelling = ShellingOrder {
        facets: shell_cert(k, cert),
    };
    match is_shelling(k, &shelling)? {
        ShellingCheck::Ok => Ok(shelling),
        ShellingCheck::Fail { index, witness } => Err(Error::InvalidCertificate(format!(
            "constructed facet order fails at position {index} against {witness}"
        ))),
    }
}

fn shell_cert(k: &Complex, cert: &SheddingCert) -> Vec<Face> {
    if k.dim() == Dim::Finite(-1) {
        return vec![Face::empty()];
    }
    let mut current = k.clone();
    let mut blocks = Vec::with_capacity(cert.links.len());
    for (&v, sub) in cert.order.iter().zip(&cert.links) {
        let link = current.vertex_link(v);
        blocks.push(shell_cert(&link, sub).into_iter().map(|f| f.with(v)).collect::<Vec<_>>());
        current = current.delete_vertex(v);
    }
    let mut out = vec![current.facets()[0].clone()];
    for block in blocks.into_iter().rev() {
        out.extend(block);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[Vertex]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| Face::from(*f)))
    }

    fn check(k: &Complex, order: &[Vertex]) -> SheddingCheck {
        is_shedding_order(
            k,
            &SheddingOrder {
                vertices: order.to_vec(),
            },
            &mut VdOracle::new(10_000),
        )
        .unwrap()
    }

    #[test]
    fn simplex_any_order() {
        assert_eq!(check(&Complex::simplex([1, 2, 3]), &[3, 1, 2]), SheddingCheck::Ok);
    }

    #[test]
    fn triangle_boundary_any_order() {
        let k = Complex::boundary_simplex(&Face::from([1, 2, 3]));
        assert_eq!(check(&k, &[2, 3, 1]), SheddingCheck::Ok);
    }

    #[test]
    fn path_with_middle_first_fails() {
        let k = c(&[&[1, 2], &[2, 3]]);
        assert!(matches!(
            check(&k, &[2, 1, 3]),
            SheddingCheck::Fail { index: 0, vertex: 2, .. }
        ));
    }

    #[test]
    fn graphs_connected_iff_vd() {
        assert!(matches!(
            is_vertex_decomposable(&c(&[&[1, 2], &[2, 3], &[3, 4]]), 100).unwrap(),
            VdSearch::Decomposable { .. }
        ));
        assert_eq!(
            is_vertex_decomposable(&c(&[&[1, 2], &[3, 4]]), 100).unwrap(),
            VdSearch::No
        );
    }

    #[test]
    fn two_triangles_not_vd() {
        assert_eq!(
            is_vertex_decomposable(&c(&[&[1, 2, 3], &[3, 4, 5]]), 1000).unwrap(),
            VdSearch::No
        );
    }

    #[test]
    fn shelling_from_shedding() {
        for k in [
            Complex::simplex([0, 1, 2]),
            Complex::boundary_simplex(&Face::from([1, 2, 3])),
            Complex::boundary_simplex(&Face::from([1, 2, 3, 4])),
            Complex::boundary_simplex(&Face::from([0, 1, 2, 3, 4])),
        ] {
            let mut oracle = VdOracle::new(10_000);
            let order = match is_vertex_decomposable(&k, 10_000).unwrap() {
                VdSearch::Decomposable { order } => order,
                other => panic!("{other:?}"),
            };
            assert_eq!(is_shedding_order(&k, &order, &mut oracle).unwrap(), SheddingCheck::Ok);
            let sh = shedding_to_shelling(&k, &order, &mut oracle).unwrap();
            assert_eq!(sh.facets.len(), k.facets().len());
        }
    }
}
