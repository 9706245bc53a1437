use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::vd::{SheddingCert, SheddingOrder};
use super::{is_suffix, malformed, overlap, rejected, CertPath, VerifyError};
use crate::complex::{Complex, Dim};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

/// Witness that a pair `(X, Xset)` is star decomposable.
///
/// `order` lists the star-partition set `W` in its total order. `u_sets[i]`
/// and `children[i]` belong to `order[i]`; the last vertex has no `U` set and
/// its child certifies `(lk(ŵ, X), last_xset)`. For `X = {∅}` every field is
/// empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarDecompCert {
    pub order: Vec<Vertex>,
    pub u_sets: Vec<Vec<Vertex>>,
    pub children: Vec<StarDecompCert>,
    pub last_xset: Vec<Vertex>,
}

impl StarDecompCert {
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
            && self.u_sets.is_empty()
            && self.children.is_empty()
            && self.last_xset.is_empty()
    }

    /// Number of nodes in the certificate tree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(StarDecompCert::size).sum::<usize>()
    }
}

/// Applies a vertex map to every vertex mentioned in the certificate.
pub fn relabel_star(cert: &StarDecompCert, f: &dyn Fn(Vertex) -> Vertex) -> StarDecompCert {
    StarDecompCert {
        order: cert.order.iter().map(|&v| f(v)).collect(),
        u_sets: cert
            .u_sets
            .iter()
            .map(|u| u.iter().map(|&v| f(v)).collect())
            .collect(),
        children: cert.children.iter().map(|c| relabel_star(c, f)).collect(),
        last_xset: cert.last_xset.iter().map(|&v| f(v)).collect(),
    }
}

/// Verifies the star-partition property, the order condition, the link
/// condition for every non-last vertex and the last vertex condition,
/// recursing into the children.
///
/// When a link is `{∅}` (so `X` is 0-dimensional) the only possible `U` is
/// empty and the star equality is not checked: the overlap there is `{∅}`
/// while the star of the empty set is the empty complex.
pub fn verify_star_decomp(
    x: &Complex,
    xset: &[Vertex],
    cert: &StarDecompCert,
) -> Result<(), VerifyError> {
    verify_at(x, xset, cert, &CertPath::default())
}

fn verify_at(
    x: &Complex,
    xset: &[Vertex],
    cert: &StarDecompCert,
    path: &CertPath,
) -> Result<(), VerifyError> {
    if !x.is_pure() {
        return Err(VerifyError::NotPure { path: path.clone() });
    }
    let k = match x.dim() {
        Dim::NegInfinity => return Err(rejected(path, "the complex is empty")),
        Dim::Finite(k) => k,
    };
    if k == -1 {
        if !cert.is_empty() {
            return Err(malformed(path, "certificate for {∅} must be empty"));
        }
        if !xset.is_empty() {
            return Err(rejected(path, "the distinguished set of {∅} must be empty"));
        }
        return Ok(());
    }
    let n = cert.order.len();
    if n == 0 {
        return Err(rejected(path, "W must be nonempty"));
    }
    if cert.children.len() != n || cert.u_sets.len() != n - 1 {
        return Err(malformed(
            path,
            format!(
                "{} vertices need {} U sets and {} children, found {} and {}",
                n,
                n - 1,
                n,
                cert.u_sets.len(),
                cert.children.len()
            ),
        ));
    }
    let distinct: BTreeSet<Vertex> = cert.order.iter().copied().collect();
    if distinct.len() != n {
        return Err(malformed(path, "W lists a vertex twice"));
    }
    if let Some(v) = cert.order.iter().find(|&&v| !x.contains(&Face::vertex(v))) {
        return Err(malformed(path, format!("{v} is not a vertex")));
    }
    for (i, &a) in cert.order.iter().enumerate() {
        for &b in &cert.order[i + 1..] {
            if x.has_edge(a, b) {
                return Err(rejected(path, format!("W vertices {a} and {b} are neighbours")));
            }
        }
    }
    if let Some(f) = x
        .facets()
        .iter()
        .find(|f| !cert.order.iter().any(|&w| f.contains(w)))
    {
        return Err(rejected(path, format!("facet {f} lies in no star of W")));
    }
    if !is_suffix(&cert.order, xset) {
        return Err(rejected(
            path,
            format!("{xset:?} is not a nonempty final segment of {:?}", cert.order),
        ));
    }
    for i in 0..n - 1 {
        let w = cert.order[i];
        let link = x.vertex_link(w);
        let u = &cert.u_sets[i];
        let here = path.push(w);
        if let Some(v) = u.iter().find(|&&v| !link.contains(&Face::vertex(v))) {
            return Err(malformed(&here, format!("U contains {v}, not a vertex of the link")));
        }
        if !link.is_unit() {
            if u.is_empty() {
                return Err(rejected(&here, "U must be nonempty"));
            }
            let o = overlap(x, w, &cert.order[i + 1..]);
            if link.star_of_vertices(u) != o {
                return Err(rejected(
                    &here,
                    format!("st(U, lk) differs from the overlap {o:?}"),
                ));
            }
        }
        verify_at(&link, u, &cert.children[i], &here)?;
    }
    let last = cert.order[n - 1];
    verify_at(
        &x.vertex_link(last),
        &cert.last_xset,
        &cert.children[n - 1],
        &path.push(last),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum StarSearch {
    Found {
        certificate: StarDecompCert,
        xset: Vec<Vertex>,
    },
    No,
    BudgetExceeded,
}

struct OutOfBudget;

struct Finder {
    pairs: HashMap<(Vec<Face>, Vec<Vertex>), Option<StarDecompCert>>,
    any: HashMap<Vec<Face>, Option<(StarDecompCert, Vec<Vertex>)>>,
    nodes: u64,
    budget: u64,
}

type Step = (usize, Vec<Vertex>, StarDecompCert);

impl Finder {
    fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    fn find_any(
        &mut self,
        x: &Complex,
    ) -> Result<Option<(StarDecompCert, Vec<Vertex>)>, OutOfBudget> {
        if let Some(hit) = self.any.get(x.facets()) {
            return Ok(hit.clone());
        }
        let mut result = None;
        if x.is_unit() {
            result = Some((StarDecompCert::default(), Vec::new()));
        } else {
            // Any decomposition also works with just its last vertex as the set.
            for v in x.vertices() {
                if let Some(c) = self.find(x, &[v])? {
                    result = Some((c, vec![v]));
                    break;
                }
            }
        }
        self.any.insert(x.facets().to_vec(), result.clone());
        Ok(result)
    }

    fn find(&mut self, x: &Complex, xset: &[Vertex]) -> Result<Option<StarDecompCert>, OutOfBudget> {
        let mut xs = xset.to_vec();
        xs.sort_unstable();
        xs.dedup();
        if !x.is_pure() {
            return Ok(None);
        }
        let k = match x.dim() {
            Dim::NegInfinity => return Ok(None),
            Dim::Finite(k) => k,
        };
        if k == -1 {
            return Ok(xs.is_empty().then(StarDecompCert::default));
        }
        if xs.is_empty() || xs.iter().any(|&v| !x.contains(&Face::vertex(v))) {
            return Ok(None);
        }
        if k == 0 {
            let mut order: Vec<Vertex> = x.vertices().into_iter().filter(|v| !xs.contains(v)).collect();
            order.extend(&xs);
            let n = order.len();
            return Ok(Some(StarDecompCert {
                order,
                u_sets: vec![Vec::new(); n - 1],
                children: vec![StarDecompCert::default(); n],
                last_xset: Vec::new(),
            }));
        }
        let key = (x.facets().to_vec(), xs.clone());
        if let Some(hit) = self.pairs.get(&key) {
            return Ok(hit.clone());
        }
        self.tick()?;
        let mut result = None;
        for w in partition_sets(x, &xs) {
            if let Some(c) = self.order_for(x, &w, &xs)? {
                result = Some(c);
                break;
            }
        }
        self.pairs.insert(key, result.clone());
        Ok(result)
    }

    /// Dynamic programming over final segments of the order on `w`.
    fn order_for(
        &mut self,
        x: &Complex,
        w: &[Vertex],
        xs: &[Vertex],
    ) -> Result<Option<StarDecompCert>, OutOfBudget> {
        let n = w.len();
        if n > 20 {
            return Err(OutOfBudget);
        }
        let xmask: u32 = w
            .iter()
            .enumerate()
            .filter(|(_, v)| xs.contains(v))
            .fold(0, |m, (i, _)| m | 1 << i);
        let full: u32 = (1u32 << n) - 1;
        // best[S] = how the final segment S starts, if it can be completed.
        let mut best: HashMap<u32, Option<Step>> = HashMap::new();
        let mut last_cache: HashMap<usize, Option<(StarDecompCert, Vec<Vertex>)>> = HashMap::new();
        let mut masks: Vec<u32> = (1..=full)
            .filter(|&s| s & xmask == s || s & xmask == xmask)
            .collect();
        masks.sort_by_key(|s| s.count_ones());
        for s in masks {
            let mut entry = None;
            if s.count_ones() == 1 {
                let i = s.trailing_zeros() as usize;
                if !last_cache.contains_key(&i) {
                    let r = self.find_any(&x.vertex_link(w[i]))?;
                    last_cache.insert(i, r);
                }
                if let Some((c, set)) = &last_cache[&i] {
                    entry = Some((i, set.clone(), c.clone()));
                }
            } else {
                let firsts = if s & xmask == s { s } else { s & !xmask };
                for i in 0..n {
                    if firsts >> i & 1 == 0 {
                        continue;
                    }
                    let rest = s & !(1 << i);
                    if !matches!(best.get(&rest), Some(Some(_))) {
                        continue;
                    }
                    let later: Vec<Vertex> = (0..n).filter(|j| rest >> j & 1 == 1).map(|j| w[j]).collect();
                    if let Some((u, child)) = self.link_condition(x, w[i], &later)? {
                        entry = Some((i, u, child));
                        break;
                    }
                }
            }
            best.insert(s, entry);
        }
        if !matches!(best.get(&full), Some(Some(_))) {
            return Ok(None);
        }
        let mut cert = StarDecompCert::default();
        let mut s = full;
        while s != 0 {
            let (i, set, child) = best[&s].clone().expect("reachable");
            cert.order.push(w[i]);
            if s.count_ones() == 1 {
                cert.last_xset = set;
            } else {
                cert.u_sets.push(set);
            }
            cert.children.push(child);
            s &= !(1 << i);
        }
        Ok(Some(cert))
    }

    /// A nonempty `U` with `st(U, lk(w)) = O(w, later)` and `(lk(w), U)`
    /// decomposable.
    fn link_condition(
        &mut self,
        x: &Complex,
        w: Vertex,
        later: &[Vertex],
    ) -> Result<Option<(Vec<Vertex>, StarDecompCert)>, OutOfBudget> {
        let link = x.vertex_link(w);
        if link.is_unit() {
            return Ok(Some((Vec::new(), StarDecompCert::default())));
        }
        let o = overlap(x, w, later);
        if o.is_empty() {
            return Ok(None);
        }
        let cands: Vec<Vertex> = link
            .vertices()
            .into_iter()
            .filter(|&u| link.star_of_vertices(&[u]).is_subcomplex_of(&o))
            .collect();
        if cands.len() > 16 {
            return Err(OutOfBudget);
        }
        for mask in 1u32..(1 << cands.len()) {
            self.tick()?;
            let u: Vec<Vertex> = (0..cands.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cands[i])
                .collect();
            if link.star_of_vertices(&u) != o {
                continue;
            }
            if let Some(c) = self.find(&link, &u)? {
                return Ok(Some((u, c)));
            }
        }
        Ok(None)
    }
}

/// Independent vertex sets containing `xs` that meet every facet.
fn partition_sets(x: &Complex, xs: &[Vertex]) -> Vec<Vec<Vertex>> {
    let vs = x.vertices();
    for (i, &a) in xs.iter().enumerate() {
        if xs[i + 1..].iter().any(|&b| x.has_edge(a, b)) {
            return Vec::new();
        }
    }
    let mut out = Vec::new();
    let mut cur = xs.to_vec();
    let rest: Vec<Vertex> = vs
        .into_iter()
        .filter(|v| !xs.contains(v) && !xs.iter().any(|&u| x.has_edge(u, *v)))
        .collect();
    extend_sets(x, &rest, 0, &mut cur, &mut out);
    out
}

fn extend_sets(x: &Complex, rest: &[Vertex], i: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    if i == rest.len() {
        if x.facets().iter().all(|f| cur.iter().any(|&w| f.contains(w))) {
            let mut w = cur.clone();
            w.sort_unstable();
            out.push(w);
        }
        return;
    }
    let v = rest[i];
    if !cur.iter().any(|&u| x.has_edge(u, v)) {
        cur.push(v);
        extend_sets(x, rest, i + 1, cur, out);
        cur.pop();
    }
    extend_sets(x, rest, i + 1, cur, out);
}

/// Exhaustive search for a star decomposition of `(X, Xset)`.
pub fn find_star_decomp(x: &Complex, xset: &[Vertex], budget: u64) -> StarSearch {
    let mut f = Finder {
        pairs: HashMap::new(),
        any: HashMap::new(),
        nodes: 0,
        budget,
    };
    match f.find(x, xset) {
        Ok(Some(certificate)) => {
            let mut xs = xset.to_vec();
            xs.sort_unstable();
            xs.dedup();
            StarSearch::Found { certificate, xset: xs }
        }
        Ok(None) => StarSearch::No,
        Err(OutOfBudget) => StarSearch::BudgetExceeded,
    }
}

/// Searches for any set `Xset` making `(X, Xset)` star decomposable.
pub fn find_star_decomp_any(x: &Complex, budget: u64) -> StarSearch {
    let mut f = Finder {
        pairs: HashMap::new(),
        any: HashMap::new(),
        nodes: 0,
        budget,
    };
    match f.find_any(x) {
        Ok(Some((certificate, xset))) => StarSearch::Found { certificate, xset },
        Ok(None) => StarSearch::No,
        Err(OutOfBudget) => StarSearch::BudgetExceeded,
    }
}

/// Shedding order from a star decomposition: vertices are grouped by the last
/// `W` vertex whose closed star contains them, each group precedes its `W`
/// vertex, and inside a group the order comes from the child decomposition of
/// that vertex's link.
pub fn sd_to_shedding(x: &Complex, cert: &StarDecompCert) -> Result<SheddingOrder> {
    Ok(SheddingOrder {
        vertices: sd_to_shedding_cert(x, cert)?.order,
    })
}

/// As [`sd_to_shedding`], together with shedding certificates for the links
/// met along the way. A group vertex `v` of `w` has link `w * L` where `L` is
/// the link at the same step of the shedding of `lk(w)`; a `W` vertex other
/// than the last has the overlap as its link, which is what remains of the
/// shedding of `lk(w)` after its group is gone.
pub fn sd_to_shedding_cert(x: &Complex, cert: &StarDecompCert) -> Result<SheddingCert> {
    let k = match x.dim() {
        Dim::NegInfinity => return Err(Error::EmptyComplex),
        Dim::Finite(k) => k,
    };
    if k == -1 {
        return Ok(SheddingCert::default());
    }
    if k == 0 {
        let n = cert.order.len();
        return Ok(SheddingCert {
            order: cert.order.clone(),
            links: vec![SheddingCert::default(); n.saturating_sub(1)],
        });
    }
    let n = cert.order.len();
    if n == 0 || cert.children.len() != n {
        return Err(Error::InvalidCertificate("certificate shape does not match".into()));
    }
    let pos: HashMap<Vertex, usize> = cert.order.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut groups: Vec<HashSet<Vertex>> = vec![HashSet::new(); n];
    for v in x.vertices() {
        if pos.contains_key(&v) {
            continue;
        }
        let p = cert
            .order
            .iter()
            .rev()
            .find(|&&w| x.has_edge(v, w))
            .ok_or_else(|| Error::InvalidCertificate(format!("{v} lies in no star of W")))?;
        groups[pos[p]].insert(v);
    }
    let mut order = Vec::with_capacity(x.num_vertices());
    let mut links: Vec<Option<SheddingCert>> = Vec::with_capacity(x.num_vertices());
    for (i, &w) in cert.order.iter().enumerate() {
        let link = x.vertex_link(w);
        let child = sd_to_shedding_cert(&link, &cert.children[i])?;
        let group = &groups[i];
        let m = group.len();
        if !child.order[..m.min(child.order.len())].iter().all(|v| group.contains(v)) {
            return Err(Error::InvalidCertificate(format!(
                "the group of {w} is not an initial segment of the shedding of its link"
            )));
        }
        if i == n - 1 && m != child.order.len() {
            return Err(Error::InvalidCertificate(
                "the link of the last vertex is not covered by its group".into(),
            ));
        }
        for (j, &v) in child.order[..m].iter().enumerate() {
            order.push(v);
            links.push(child.links.get(j).map(|l| l.cone(w)));
        }
        order.push(w);
        links.push(if i + 1 < n && m <= child.links.len() {
            Some(SheddingCert {
                order: child.order[m..].to_vec(),
                links: child.links[m..].to_vec(),
            })
        } else {
            None
        });
    }
    let checked = order.len().saturating_sub(k as usize + 1);
    let links = links
        .into_iter()
        .take(checked)
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| {
                Error::InvalidCertificate(format!(
                    "no link certificate for {} at position {i}",
                    order[i]
                ))
            })
        })
        .collect::<Result<_>>()?;
    Ok(SheddingCert { order, links })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[Vertex]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| Face::from(*f)))
    }

    fn cycle(n: u32) -> Complex {
        Complex::from_facets((0..n).map(|i| Face::from([i, (i + 1) % n])))
    }

    #[test]
    fn unit_pair() {
        assert_eq!(verify_star_decomp(&Complex::unit(), &[], &StarDecompCert::default()), Ok(()));
        assert!(verify_star_decomp(&Complex::unit(), &[1], &StarDecompCert::default()).is_err());
    }

    #[test]
    fn zero_dimensional_iff_nonempty_set() {
        let x = c(&[&[1], &[2], &[3]]);
        assert_eq!(find_star_decomp(&x, &[], 100), StarSearch::No);
        match find_star_decomp(&x, &[2], 100) {
            StarSearch::Found { certificate, xset } => {
                assert_eq!(certificate.order, vec![1, 3, 2]);
                verify_star_decomp(&x, &xset, &certificate).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cycles() {
        assert_eq!(find_star_decomp_any(&cycle(5), 10_000), StarSearch::No);
        assert_eq!(find_star_decomp_any(&cycle(3), 10_000), StarSearch::No);
        for n in [4, 6] {
            match find_star_decomp_any(&cycle(n), 10_000) {
                StarSearch::Found { certificate, xset } => {
                    verify_star_decomp(&cycle(n), &xset, &certificate).unwrap();
                    let order = sd_to_shedding(&cycle(n), &certificate).unwrap();
                    assert_eq!(order.vertices.len(), n as usize);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn rejects_adjacent_w() {
        let x = c(&[&[1, 2]]);
        let cert = StarDecompCert {
            order: vec![1, 2],
            u_sets: vec![vec![]],
            children: vec![StarDecompCert::default(); 2],
            last_xset: vec![],
        };
        assert!(matches!(
            verify_star_decomp(&x, &[2], &cert),
            Err(VerifyError::Rejected { .. })
        ));
    }
}
