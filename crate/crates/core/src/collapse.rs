//! Free faces, elementary collapses, collapsibility search and the (RC) and
//! (HRC) checkers.
//!
//! A complex satisfies (RC) when it is empty, or when removing `β̃_d` of its
//! top-dimensional facets leaves a collapsible complex. It satisfies (HRC)
//! when the link of every face, the empty face included, satisfies (RC).

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Dim};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::homology::reduced_betti;

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Removal of facets `φ₁…φₜ` followed by elementary collapses `(σᵢ, τᵢ)` ending
/// at the single vertex `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseCertificate {
    pub removed_facets: Vec<Face>,
    pub steps: Vec<(Face, Face)>,
    pub terminal_vertex: Face,
}

impl CollapseCertificate {
    /// Every nonempty face in removal order: `φ₁…φₜ, σ₁, τ₁, …, {z}`.
    pub fn removal_order(&self) -> Vec<Face> {
        let mut out = self.removed_facets.clone();
        for (s, t) in &self.steps {
            out.push(s.clone());
            out.push(t.clone());
        }
        out.push(self.terminal_vertex.clone());
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CollapseOutcome {
    Collapsible { certificate: CollapseCertificate },
    NotCollapsible,
    BudgetExceeded,
}

/// Pairs `(σ, τ)` with `σ ≠ ∅` contained in exactly one strictly larger face `τ`.
pub fn free_faces(k: &Complex) -> Vec<(Face, Face)> {
    let table = FaceTable::new(k);
    let state = State::full(&table);
    state
        .free_pairs(&table, None)
        .into_iter()
        .map(|(s, t)| (table.faces[s].clone(), table.faces[t].clone()))
        .collect()
}

/// Cofaces of `sigma` in `k`, i.e. faces strictly containing it.
fn cofaces(k: &Complex, sigma: &Face) -> Vec<Face> {
    k.faces()
        .iter()
        .filter(|f| f.len() > sigma.len() && sigma.is_subset_of(f))
        .cloned()
        .collect()
}

/// `K \ {σ, τ}` for a free pair.
pub fn elementary_collapse(k: &Complex, sigma: &Face, tau: &Face) -> Result<Complex> {
    if !k.contains(sigma) {
        return Err(Error::FaceNotInComplex(sigma.clone()));
    }
    let above = cofaces(k, sigma);
    if sigma.is_empty() || above.len() != 1 || &above[0] != tau {
        return Err(Error::NotFree {
            sigma: sigma.clone(),
            tau: tau.clone(),
            cofaces: above,
        });
    }
    let rest = k
        .facets()
        .iter()
        .filter(|f| *f != tau)
        .cloned()
        .chain(tau.ridges().filter(|r| r != sigma));
    Ok(Complex::from_facets(rest))
}

/// Nonempty faces of a complex with their codimension-one coface lists.
struct FaceTable {
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    /// Codimension-one faces below, excluding `∅`.
    ridges: Vec<Vec<usize>>,
    /// Codimension-one faces above.
    cofaces: Vec<Vec<usize>>,
}

impl FaceTable {
    fn new(k: &Complex) -> Self {
        let faces: Vec<Face> = k.faces().iter().filter(|f| !f.is_empty()).cloned().collect();
        let index: HashMap<Face, usize> =
            faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let mut ridges = vec![Vec::new(); faces.len()];
        let mut cofaces = vec![Vec::new(); faces.len()];
        for (i, f) in faces.iter().enumerate() {
            if f.len() < 2 {
                continue;
            }
            for r in f.ridges() {
                let j = index[&r];
                ridges[i].push(j);
                cofaces[j].push(i);
            }
        }
        FaceTable {
            faces,
            index,
            ridges,
            cofaces,
        }
    }
}

#[derive(Clone)]
struct State {
    present: Vec<u64>,
    /// Number of present codimension-one cofaces.
    up: Vec<u32>,
    alive: usize,
}

impl State {
    fn full(t: &FaceTable) -> Self {
        let n = t.faces.len();
        let mut present = vec![0u64; n.div_ceil(64)];
        for i in 0..n {
            present[i / 64] |= 1 << (i % 64);
        }
        State {
            present,
            up: t.cofaces.iter().map(|c| c.len() as u32).collect(),
            alive: n,
        }
    }

    fn has(&self, i: usize) -> bool {
        self.present[i / 64] >> (i % 64) & 1 == 1
    }

    fn remove(&mut self, t: &FaceTable, i: usize) {
        debug_assert!(self.has(i));
        self.present[i / 64] &= !(1 << (i % 64));
        self.alive -= 1;
        for &r in &t.ridges[i] {
            self.up[r] -= 1;
        }
    }

    fn restore(&mut self, t: &FaceTable, i: usize) {
        self.present[i / 64] |= 1 << (i % 64);
        self.alive += 1;
        for &r in &t.ridges[i] {
            self.up[r] += 1;
        }
    }

    fn coface_of(&self, t: &FaceTable, i: usize) -> usize {
        *t.cofaces[i]
            .iter()
            .find(|&&c| self.has(c))
            .expect("free face has a coface")
    }

    /// Free pairs as index pairs, larger faces first.
    fn free_pairs(&self, t: &FaceTable, protect: Option<usize>) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..t.faces.len())
            .filter(|&i| self.has(i) && self.up[i] == 1 && Some(i) != protect)
            .map(|i| (i, self.coface_of(t, i)))
            .collect();
        out.sort_by(|a, b| {
            t.faces[b.1]
                .len()
                .cmp(&t.faces[a.1].len())
                .then(a.0.cmp(&b.0))
        });
        out
    }
}

struct Search<'a> {
    table: &'a FaceTable,
    protect: Option<usize>,
    failed: HashSet<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

enum Found {
    Yes(Vec<(usize, usize)>),
    No,
    Budget,
}

impl Search<'_> {
    fn run(&mut self, state: &mut State, path: &mut Vec<(usize, usize)>) -> Found {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Found::Budget;
        }
        if state.alive == 1 {
            return Found::Yes(path.clone());
        }
        if self.failed.contains(&state.present) {
            return Found::No;
        }
        for (s, t) in state.free_pairs(self.table, self.protect) {
            state.remove(self.table, t);
            state.remove(self.table, s);
            path.push((s, t));
            let r = self.run(state, path);
            path.pop();
            state.restore(self.table, s);
            state.restore(self.table, t);
            match r {
                Found::No => {}
                other => return other,
            }
        }
        self.failed.insert(state.present.clone());
        Found::No
    }
}

/// Searches for collapses of the faces of `k` minus `removed` down to a single
/// vertex (to `{target}` when given). Returns the outcome and nodes used.
fn collapse_faces(
    k: &Complex,
    removed: &[Face],
    target: Option<Vertex>,
    budget: u64,
) -> (CollapseOutcome, u64) {
    let table = FaceTable::new(k);
    let mut state = State::full(&table);
    for f in removed {
        let i = table.index[f];
        state.remove(&table, i);
    }
    let protect = match target {
        Some(v) => match table.index.get(&Face::vertex(v)) {
            Some(&i) => Some(i),
            None => return (CollapseOutcome::NotCollapsible, 0),
        },
        None => None,
    };
    if state.alive == 0 {
        return (CollapseOutcome::NotCollapsible, 0);
    }
    let mut search = Search {
        table: &table,
        protect,
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    let found = search.run(&mut state, &mut Vec::new());
    let outcome = match found {
        Found::Yes(path) => {
            let mut st = State::full(&table);
            for f in removed {
                st.remove(&table, table.index[f]);
            }
            for &(s, t) in &path {
                st.remove(&table, t);
                st.remove(&table, s);
            }
            let last = (0..table.faces.len()).find(|&i| st.has(i)).expect("one face left");
            CollapseOutcome::Collapsible {
                certificate: CollapseCertificate {
                    removed_facets: removed.to_vec(),
                    steps: path
                        .into_iter()
                        .map(|(s, t)| (table.faces[s].clone(), table.faces[t].clone()))
                        .collect(),
                    terminal_vertex: table.faces[last].clone(),
                },
            }
        }
        Found::No => CollapseOutcome::NotCollapsible,
        Found::Budget => CollapseOutcome::BudgetExceeded,
    };
    (outcome, search.nodes)
}

/// Exhaustive collapsibility search with memoization of dead-end states.
/// With `target`, only collapses ending at `{target}` are accepted.
pub fn find_collapse(k: &Complex, target: Option<Vertex>, budget: u64) -> Result<CollapseOutcome> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if let Some(v) = target {
        if !k.contains(&Face::vertex(v)) {
            return Err(Error::NotAVertex(v));
        }
    }
    Ok(collapse_faces(k, &[], target, budget).0)
}

/// Replays a certificate against `k`: facets removed first, then each pair
/// must be free at its step, and exactly `{z}` must remain.
pub fn replay(k: &Complex, cert: &CollapseCertificate) -> Result<()> {
    let table = FaceTable::new(k);
    let mut state = State::full(&table);
    let lookup = |f: &Face| {
        table
            .index
            .get(f)
            .copied()
            .ok_or_else(|| Error::FaceNotInComplex(f.clone()))
    };
    for f in &cert.removed_facets {
        let i = lookup(f)?;
        if !state.has(i) || state.up[i] != 0 {
            return Err(Error::InvalidCertificate(format!(
                "{f} is not a facet when it is removed"
            )));
        }
        state.remove(&table, i);
    }
    for (s, t) in &cert.steps {
        let (si, ti) = (lookup(s)?, lookup(t)?);
        if !state.has(si) || state.up[si] != 1 || !state.has(ti) || state.coface_of(&table, si) != ti
        {
            let above = table.cofaces[si]
                .iter()
                .filter(|&&c| state.has(c))
                .map(|&c| table.faces[c].clone())
                .collect();
            return Err(Error::NotFree {
                sigma: s.clone(),
                tau: t.clone(),
                cofaces: above,
            });
        }
        state.remove(&table, ti);
        state.remove(&table, si);
    }
    let z = lookup(&cert.terminal_vertex)?;
    if cert.terminal_vertex.len() != 1 || state.alive != 1 || !state.has(z) {
        return Err(Error::InvalidCertificate(format!(
            "{} faces remain instead of the vertex {}",
            state.alive, cert.terminal_vertex
        )));
    }
    Ok(())
}

/// Optional constraints on an (RC) certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RcRequest {
    /// The terminal vertex `z`.
    pub target: Option<Vertex>,
    /// A facet that must be removed first.
    pub first_facet: Option<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum RcVerdict {
    Certified { certificate: CollapseCertificate },
    /// The complex is `∅` or `{∅}`.
    Vacuous,
    Fails { reason: String },
    BudgetExceeded,
}

pub fn check_rc(k: &Complex, budget: u64) -> Result<RcVerdict> {
    check_rc_with(k, &RcRequest::default(), budget)
}

/// (RC) check honouring `request`. Facet subsets are tried in lexicographic
/// order and the first success wins.
pub fn check_rc_with(k: &Complex, request: &RcRequest, budget: u64) -> Result<RcVerdict> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let d = match k.dim() {
        Dim::NegInfinity | Dim::Finite(-1) => return Ok(RcVerdict::Vacuous),
        Dim::Finite(d) => d,
    };
    if let Some(v) = request.target {
        if !k.contains(&Face::vertex(v)) {
            return Err(Error::NotAVertex(v));
        }
    }
    if let Some(f) = &request.first_facet {
        if !k.facets().contains(f) {
            return Err(Error::FaceNotInComplex(f.clone()));
        }
    }
    if d == 0 {
        return Ok(rc_points(k, request));
    }
    let betti = reduced_betti(k);
    if let Some(i) = (-1..d).find(|&i| betti.get(i) != 0) {
        return Ok(RcVerdict::Fails {
            reason: format!("reduced Betti number in dimension {i} is {}", betti.get(i)),
        });
    }
    let r = betti.get(d);
    let facets = k.facets().to_vec();
    let mut chosen: Vec<Face> = Vec::new();
    if let Some(f) = &request.first_facet {
        if r == 0 {
            return Ok(RcVerdict::Fails {
                reason: format!("no facet is removed, so {f} cannot be removed first"),
            });
        }
        chosen.push(f.clone());
        if reduced_betti(&remove_facets(k, &chosen)).get(d) != r - 1 {
            return Ok(RcVerdict::Fails {
                reason: format!("removing {f} does not lower the top Betti number"),
            });
        }
    }
    let mut used = 0u64;
    let mut ctx = SubsetSearch {
        k,
        d,
        facets: &facets,
        target: request.target,
        budget,
        used: &mut used,
    };
    let start = chosen.len();
    match ctx.choose(&mut chosen, r, start, 0) {
        Some(Some(cert)) => Ok(RcVerdict::Certified { certificate: cert }),
        Some(None) => Ok(RcVerdict::BudgetExceeded),
        None => Ok(RcVerdict::Fails {
            reason: format!(
                "no set of {r} facets leaves a collapsible complex{}",
                request
                    .target
                    .map(|v| format!(" collapsing to {v}"))
                    .unwrap_or_default()
            ),
        }),
    }
}

fn rc_points(k: &Complex, request: &RcRequest) -> RcVerdict {
    let mut points: Vec<Face> = k.facets().to_vec();
    if let Some(f) = &request.first_facet {
        points.retain(|p| p != f);
        points.insert(0, f.clone());
    }
    if let Some(v) = request.target {
        let z = Face::vertex(v);
        if request.first_facet.as_ref() == Some(&z) && points.len() > 1 {
            return RcVerdict::Fails {
                reason: format!("{z} cannot be both first removed and terminal"),
            };
        }
        points.retain(|p| p != &z);
        points.push(z);
    }
    let z = points.pop().expect("nonempty 0-complex");
    RcVerdict::Certified {
        certificate: CollapseCertificate {
            removed_facets: points,
            steps: Vec::new(),
            terminal_vertex: z,
        },
    }
}

/// The complex generated by all faces of `k` except the given facets.
pub fn remove_facets(k: &Complex, removed: &[Face]) -> Complex {
    let mut out: Vec<Face> = k
        .facets()
        .iter()
        .filter(|f| !removed.contains(f))
        .cloned()
        .collect();
    for f in removed {
        out.extend(f.ridges());
    }
    Complex::from_facets(out)
}

struct SubsetSearch<'a> {
    k: &'a Complex,
    d: isize,
    facets: &'a [Face],
    target: Option<Vertex>,
    budget: u64,
    used: &'a mut u64,
}

impl SubsetSearch<'_> {
    /// `None`: exhausted. `Some(None)`: budget. `Some(Some(c))`: found.
    fn choose(
        &mut self,
        chosen: &mut Vec<Face>,
        r: usize,
        fixed: usize,
        from: usize,
    ) -> Option<Option<CollapseCertificate>> {
        if chosen.len() == r {
            let left = self.budget.saturating_sub(*self.used);
            let (outcome, nodes) = collapse_faces(self.k, chosen, self.target, left);
            *self.used += nodes.max(1);
            return match outcome {
                CollapseOutcome::Collapsible { certificate } => Some(Some(certificate)),
                CollapseOutcome::NotCollapsible => None,
                CollapseOutcome::BudgetExceeded => Some(None),
            };
        }
        let want = r - chosen.len();
        for i in from..self.facets.len() {
            if self.facets.len() - i < want {
                break;
            }
            let f = &self.facets[i];
            if chosen[..fixed].contains(f) {
                continue;
            }
            chosen.push(f.clone());
            // Each removal must lower β̃_d; otherwise it raises β̃_{d-1}.
            let lowers =
                reduced_betti(&remove_facets(self.k, chosen)).get(self.d) == r - chosen.len();
            let result = if lowers {
                self.choose(chosen, r, fixed, i + 1)
            } else {
                None
            };
            chosen.pop();
            if result.is_some() {
                return result;
            }
            if *self.used >= self.budget {
                return Some(None);
            }
        }
        None
    }
}

/// Per-face entry of an (HRC) certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkCertificate {
    Certificate { certificate: CollapseCertificate },
    /// The link has dimension at most 0.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrcEntry {
    pub face: Face,
    pub link: LinkCertificate,
}

/// One entry per face, in graded order starting with `∅` (which certifies
/// the complex itself).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrcCertificate {
    pub per_face: Vec<HrcEntry>,
}

impl HrcCertificate {
    pub fn get(&self, face: &Face) -> Option<&LinkCertificate> {
        self.per_face.iter().find(|e| &e.face == face).map(|e| &e.link)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum HrcVerdict {
    Certified { certificate: HrcCertificate },
    Fails { witness: Face, reason: String },
    BudgetExceeded { face: Face },
}

pub fn check_hrc(k: &Complex, budget: u64) -> Result<HrcVerdict> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let mut per_face = Vec::new();
    for sigma in k.faces() {
        let link = k.link_unchecked(sigma);
        let entry = match link.dim() {
            Dim::Finite(d) if d >= 1 => match check_rc(&link, budget)? {
                RcVerdict::Certified { certificate } => LinkCertificate::Certificate { certificate },
                RcVerdict::Vacuous => LinkCertificate::Trivial,
                RcVerdict::Fails { reason } => {
                    return Ok(HrcVerdict::Fails {
                        witness: sigma.clone(),
                        reason,
                    })
                }
                RcVerdict::BudgetExceeded => {
                    return Ok(HrcVerdict::BudgetExceeded {
                        face: sigma.clone(),
                    })
                }
            },
            _ => LinkCertificate::Trivial,
        };
        per_face.push(HrcEntry {
            face: sigma.clone(),
            link: entry,
        });
    }
    Ok(HrcVerdict::Certified {
        certificate: HrcCertificate { per_face },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[Vertex]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| Face::from(*f)))
    }

    #[test]
    fn free_faces_examples() {
        assert_eq!(free_faces(&Complex::simplex([1, 2])).len(), 2);
        assert!(free_faces(&Complex::boundary_simplex(&Face::from([1, 2, 3]))).is_empty());
        let two = c(&[&[1, 2, 3], &[3, 4, 5]]);
        let pairs = free_faces(&two);
        assert_eq!(pairs.len(), 6);
        assert!(pairs.iter().all(|(s, t)| s.len() == 2 && t.len() == 3));
    }

    #[test]
    fn elementary_collapse_examples() {
        let edge = Complex::simplex([1, 2]);
        let pt = elementary_collapse(&edge, &Face::from([1]), &Face::from([1, 2])).unwrap();
        assert_eq!(pt, c(&[&[2]]));
        let tri = Complex::simplex([1, 2, 3]);
        let k = elementary_collapse(&tri, &Face::from([1, 2]), &Face::from([1, 2, 3])).unwrap();
        assert_eq!(k, c(&[&[1, 3], &[2, 3]]));
        assert!(matches!(
            elementary_collapse(&tri, &Face::from([1]), &Face::from([1, 2])),
            Err(Error::NotFree { .. })
        ));
    }

    #[test]
    fn simplices_collapse_and_replay() {
        for n in 1..=5u32 {
            let k = Complex::simplex(0..n);
            match find_collapse(&k, None, DEFAULT_BUDGET).unwrap() {
                CollapseOutcome::Collapsible { certificate } => replay(&k, &certificate).unwrap(),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn targeted_collapse_ends_at_target() {
        let k = Complex::simplex([1, 2, 3]);
        for v in 1..=3 {
            match find_collapse(&k, Some(v), DEFAULT_BUDGET).unwrap() {
                CollapseOutcome::Collapsible { certificate } => {
                    assert_eq!(certificate.terminal_vertex, Face::vertex(v));
                    replay(&k, &certificate).unwrap();
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn circle_is_not_collapsible() {
        let k = Complex::boundary_simplex(&Face::from([1, 2, 3]));
        assert_eq!(
            find_collapse(&k, None, DEFAULT_BUDGET).unwrap(),
            CollapseOutcome::NotCollapsible
        );
    }

    #[test]
    fn rc_on_sphere_removes_one_facet() {
        let k = Complex::boundary_simplex(&Face::from([1, 2, 3, 4]));
        match check_rc(&k, DEFAULT_BUDGET).unwrap() {
            RcVerdict::Certified { certificate } => {
                assert_eq!(certificate.removed_facets, vec![Face::from([1, 2, 3])]);
                replay(&k, &certificate).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rc_first_facet_and_points() {
        let k = Complex::boundary_simplex(&Face::from([1, 2, 3, 4]));
        let req = RcRequest {
            target: Some(1),
            first_facet: Some(Face::from([2, 3, 4])),
        };
        match check_rc_with(&k, &req, DEFAULT_BUDGET).unwrap() {
            RcVerdict::Certified { certificate } => {
                assert_eq!(certificate.removed_facets[0], Face::from([2, 3, 4]));
                assert_eq!(certificate.terminal_vertex, Face::vertex(1));
                replay(&k, &certificate).unwrap();
            }
            other => panic!("{other:?}"),
        }
        let pts = c(&[&[1], &[2], &[3]]);
        let req = RcRequest {
            target: Some(1),
            first_facet: Some(Face::from([3])),
        };
        match check_rc_with(&pts, &req, DEFAULT_BUDGET).unwrap() {
            RcVerdict::Certified { certificate } => {
                assert_eq!(certificate.removed_facets, vec![Face::from([3]), Face::from([2])]);
                assert_eq!(certificate.terminal_vertex, Face::vertex(1));
                replay(&pts, &certificate).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rc_rejects_non_pure_and_accepts_units() {
        assert!(matches!(check_rc(&c(&[&[1, 2], &[3]]), 10), Err(Error::NotPure)));
        assert_eq!(check_rc(&Complex::empty(), 10).unwrap(), RcVerdict::Vacuous);
        assert_eq!(check_rc(&Complex::unit(), 10).unwrap(), RcVerdict::Vacuous);
    }

    #[test]
    fn hrc_two_triangles_fails_at_shared_vertex() {
        let k = c(&[&[1, 2, 3], &[3, 4, 5]]);
        match check_hrc(&k, DEFAULT_BUDGET).unwrap() {
            HrcVerdict::Fails { witness, .. } => assert_eq!(witness, Face::vertex(3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hrc_boundary_of_simplex() {
        let k = Complex::boundary_simplex(&Face::from([0, 1, 2, 3, 4]));
        match check_hrc(&k, DEFAULT_BUDGET).unwrap() {
            HrcVerdict::Certified { certificate } => {
                assert_eq!(certificate.per_face.len(), k.num_faces());
                assert_eq!(certificate.per_face[0].face, Face::empty());
            }
            other => panic!("{other:?}"),
        }
    }
}
