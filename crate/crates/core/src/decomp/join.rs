//! Merging decompositions in vertices of `sd A` and `sd B` into one of
//! `sd(A * B)`. The two complexes must already have disjoint vertex ids; the
//! resulting certificate uses the same ids.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::sdv::SdvCert;
use crate::complex::{Complex, Dim};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::homology::reduced_betti;
use crate::subdivision::sd;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum MergeMode {
    /// Every vertex of `A` but its last, every vertex of `B` but its last,
    /// then the two last vertices. Certifies all of `V(A) ⊔ V(B)`.
    General,
    /// `[V(A)∖XA, V(B)∖XB, XA∖x̂, XB∖ŷ, x̂, ŷ]`. Certifies `XA ⊔ XB`, and `XB`
    /// alone when `|XB| = 1`.
    Pairs { xa: Vec<Vertex>, xb: Vec<Vertex> },
    /// `[V(B)∖YB, order of A, YB]`. Certifies `YB`; needs `st(YB, sd B)` to
    /// have trivial reduced homology.
    Nice { yb: Vec<Vertex> },
}

/// Counters and caches shared across one merge.
#[derive(Default)]
pub struct Merger {
    /// Homology preconditions checked on entry to the nice merge.
    pub homology_checks: u64,
    /// Of those, the ones that restate the consequence of a previous check
    /// for a link (the inner recursive step of the nice merge).
    pub lemma_checks: u64,
    trivial: HashMap<(Vec<Face>, Vec<Vertex>), bool>,
}

fn vertex_in(k: &Complex, v: Vertex) -> bool {
    k.contains(&Face::vertex(v))
}

fn position(order: &[Vertex], v: Vertex) -> usize {
    order.iter().position(|&u| u == v).expect("vertex in order")
}

fn check_disjoint(a: &Complex, b: &Complex) -> Result<()> {
    let va: HashSet<Vertex> = a.vertices().into_iter().collect();
    if let Some(v) = b.vertices().into_iter().find(|v| va.contains(v)) {
        return Err(Error::Precondition(format!(
            "join factors share the vertex {v}"
        )));
    }
    Ok(())
}

impl Merger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Certificate for `sd(A * B)` in the given order, which must restrict to
    /// the orders of `ca` and `cb` and end with their last vertices.
    pub fn with_order(
        &mut self,
        a: &Complex,
        ca: &SdvCert,
        b: &Complex,
        cb: &SdvCert,
        order: &[Vertex],
    ) -> Result<SdvCert> {
        if a.is_unit() {
            return Ok(cb.clone());
        }
        if b.is_unit() {
            return Ok(ca.clone());
        }
        check_disjoint(a, b)?;
        let only_a: Vec<Vertex> = order.iter().copied().filter(|&v| vertex_in(a, v)).collect();
        let only_b: Vec<Vertex> = order.iter().copied().filter(|&v| vertex_in(b, v)).collect();
        if only_a != ca.order || only_b != cb.order || order.len() != only_a.len() + only_b.len() {
            return Err(Error::Precondition(
                "merged order must restrict to both factor orders".into(),
            ));
        }
        let n = order.len();
        let xh = *ca.order.last().expect("nonempty");
        let yh = *cb.order.last().expect("nonempty");
        let tail = [order[n - 2], order[n - 1]];
        if !(tail == [xh, yh] || tail == [yh, xh]) {
            return Err(Error::Precondition(
                "the last two vertices must be the last vertices of both factors".into(),
            ));
        }
        let mut children = Vec::with_capacity(n);
        for (pos, &v) in order.iter().enumerate() {
            let later = &order[pos + 1..];
            let child = if vertex_in(a, v) {
                let idx = position(&ca.order, v);
                let link = a.vertex_link(v);
                let sub = &ca.children[idx];
                if v != xh {
                    let set = ca.child_set(idx, &link);
                    let lb: Vec<Vertex> = later.iter().copied().filter(|&u| vertex_in(b, u)).collect();
                    self.pairs(&link, &set, sub, b, &lb, cb)?
                } else if pos == n - 2 {
                    self.pairs(&link, &link.vertices(), sub, b, &[yh], cb)?
                } else {
                    self.general(&link, sub, b, cb)?
                }
            } else {
                let idx = position(&cb.order, v);
                let link = b.vertex_link(v);
                let sub = &cb.children[idx];
                if v != yh {
                    let set = cb.child_set(idx, &link);
                    let la: Vec<Vertex> = later.iter().copied().filter(|&u| vertex_in(a, u)).collect();
                    self.pairs(a, &la, ca, &link, &set, sub)?
                } else if pos == n - 2 {
                    self.pairs(a, &[xh], ca, &link, &link.vertices(), sub)?
                } else {
                    self.general(a, ca, &link, sub)?
                }
            };
            children.push(child);
        }
        Ok(SdvCert {
            order: order.to_vec(),
            children,
        })
    }

    pub fn general(&mut self, a: &Complex, ca: &SdvCert, b: &Complex, cb: &SdvCert) -> Result<SdvCert> {
        if a.is_unit() {
            return Ok(cb.clone());
        }
        if b.is_unit() {
            return Ok(ca.clone());
        }
        let (xa, xh) = ca.order.split_at(ca.order.len() - 1);
        let (yb, yh) = cb.order.split_at(cb.order.len() - 1);
        let order: Vec<Vertex> = xa.iter().chain(yb).chain(xh).chain(yh).copied().collect();
        self.with_order(a, ca, b, cb, &order)
    }

    /// Certificate for `(sd(A * B), XA ⊔ XB)` from certificates for
    /// `(sd A, XA)` and `(sd B, XB)`.
    pub fn pairs(
        &mut self,
        a: &Complex,
        xa: &[Vertex],
        ca: &SdvCert,
        b: &Complex,
        xb: &[Vertex],
        cb: &SdvCert,
    ) -> Result<SdvCert> {
        if xa.is_empty() {
            if !a.is_unit() {
                return Err(Error::Precondition("empty set on a nonempty factor".into()));
            }
            return Ok(cb.clone());
        }
        if xb.is_empty() {
            if !b.is_unit() {
                return Err(Error::Precondition("empty set on a nonempty factor".into()));
            }
            return Ok(ca.clone());
        }
        let xs: HashSet<Vertex> = xa.iter().copied().collect();
        let ys: HashSet<Vertex> = xb.iter().copied().collect();
        let xh = *ca.order.last().expect("nonempty");
        let yh = *cb.order.last().expect("nonempty");
        if !xs.contains(&xh) || !ys.contains(&yh) {
            return Err(Error::Precondition(
                "distinguished sets must contain the last vertices".into(),
            ));
        }
        let mut order: Vec<Vertex> = ca.order.iter().copied().filter(|v| !xs.contains(v)).collect();
        order.extend(cb.order.iter().copied().filter(|v| !ys.contains(v)));
        order.extend(ca.order.iter().copied().filter(|&v| xs.contains(&v) && v != xh));
        order.extend(cb.order.iter().copied().filter(|&v| ys.contains(&v) && v != yh));
        order.push(xh);
        order.push(yh);
        self.with_order(a, ca, b, cb, &order)
    }

    fn star_is_trivial(&mut self, b: &Complex, yb: &[Vertex]) -> bool {
        let mut key_set = yb.to_vec();
        key_set.sort_unstable();
        let key = (b.facets().to_vec(), key_set);
        if let Some(&t) = self.trivial.get(&key) {
            return t;
        }
        let sdb = sd(b);
        let centers: Vec<Vertex> = yb
            .iter()
            .filter_map(|&v| sdb.vertex_of_base_vertex(v))
            .collect();
        let t = reduced_betti(&sdb.complex.star_of_vertices(&centers)).is_trivial();
        self.trivial.insert(key, t);
        t
    }

    /// Certificate for `(sd(A * B), YB)` from a certificate for `sd A` and
    /// one for `(sd B, YB)`, in the order `[V(B)∖YB, order of A, YB]`.
    pub fn nice(&mut self, a: &Complex, ca: &SdvCert, b: &Complex, yb: &[Vertex], cb: &SdvCert) -> Result<SdvCert> {
        self.nice_inner(a, ca, b, yb, cb, false)
    }

    fn nice_inner(
        &mut self,
        a: &Complex,
        ca: &SdvCert,
        b: &Complex,
        yb: &[Vertex],
        cb: &SdvCert,
        from_lemma: bool,
    ) -> Result<SdvCert> {
        if a.is_unit() {
            return Ok(cb.clone());
        }
        let db = match b.dim() {
            Dim::Finite(d) if d >= 0 => d,
            _ => {
                return Err(Error::Precondition(
                    "the second factor of a nice merge must have dimension at least 0".into(),
                ))
            }
        };
        self.homology_checks += 1;
        if from_lemma {
            self.lemma_checks += 1;
        }
        if !self.star_is_trivial(b, yb) {
            let sdb = sd(b);
            let centers: Vec<Vertex> = yb
                .iter()
                .filter_map(|&v| sdb.vertex_of_base_vertex(v))
                .collect();
            return Err(Error::NontrivialHomology {
                context: if from_lemma {
                    "link step of a nice merge".into()
                } else {
                    "nice merge precondition".into()
                },
                what: format!("st({yb:?}, sd B) for B = {:?}", b.facets()),
                betti: reduced_betti(&sdb.complex.star_of_vertices(&centers)).betti,
            });
        }
        let ys: HashSet<Vertex> = yb.iter().copied().collect();
        let mut order: Vec<Vertex> = cb.order.iter().copied().filter(|v| !ys.contains(v)).collect();
        order.extend(&ca.order);
        order.extend(cb.order.iter().copied().filter(|v| ys.contains(v)));
        if db == 0 {
            return self.with_order(a, ca, b, cb, &order);
        }
        check_disjoint(a, b)?;
        if !super::is_suffix(&cb.order, yb) {
            return Err(Error::Precondition(format!(
                "{yb:?} is not a final segment of the second order"
            )));
        }
        let xh = *ca.order.last().expect("nonempty");
        let yh = *cb.order.last().expect("nonempty");
        let all_a = a.vertices();
        let mut children = Vec::with_capacity(order.len());
        for &v in &order {
            let child = if vertex_in(a, v) {
                let idx = position(&ca.order, v);
                let link = a.vertex_link(v);
                let sub = &ca.children[idx];
                if v != xh {
                    let set = ca.child_set(idx, &link);
                    self.pairs(&link, &set, sub, b, yb, cb)?
                } else if link.is_unit() {
                    cb.clone()
                } else {
                    self.nice_inner(&link, sub, b, yb, cb, false)?
                }
            } else {
                let idx = position(&cb.order, v);
                let link = b.vertex_link(v);
                let sub = &cb.children[idx];
                let set = cb.child_set(idx, &link);
                if !ys.contains(&v) {
                    self.pairs(a, &all_a, ca, &link, &set, sub)?
                } else if v != yh {
                    self.nice_inner(a, ca, &link, &set, sub, true)?
                } else {
                    self.general(a, ca, &link, sub)?
                }
            };
            children.push(child);
        }
        Ok(SdvCert { order, children })
    }
}

pub fn join_with_order(a: &Complex, ca: &SdvCert, b: &Complex, cb: &SdvCert, order: &[Vertex]) -> Result<SdvCert> {
    Merger::new().with_order(a, ca, b, cb, order)
}

pub fn join_general(a: &Complex, ca: &SdvCert, b: &Complex, cb: &SdvCert) -> Result<SdvCert> {
    Merger::new().general(a, ca, b, cb)
}

pub fn join_pairs(
    a: &Complex,
    xa: &[Vertex],
    ca: &SdvCert,
    b: &Complex,
    xb: &[Vertex],
    cb: &SdvCert,
) -> Result<SdvCert> {
    Merger::new().pairs(a, xa, ca, b, xb, cb)
}

pub fn join_nice(a: &Complex, ca: &SdvCert, b: &Complex, yb: &[Vertex], cb: &SdvCert) -> Result<SdvCert> {
    Merger::new().nice(a, ca, b, yb, cb)
}

/// Dispatches to the merge for `mode`.
pub fn merge_join_orders(
    a: &Complex,
    ca: &SdvCert,
    b: &Complex,
    cb: &SdvCert,
    mode: &MergeMode,
) -> Result<SdvCert> {
    let mut m = Merger::new();
    match mode {
        MergeMode::General => m.general(a, ca, b, cb),
        MergeMode::Pairs { xa, xb } => m.pairs(a, xa, ca, b, xb, cb),
        MergeMode::Nice { yb } => m.nice(a, ca, b, yb, cb),
    }
}
