//! Reference implementations used as oracles. They work on plain sorted
//! vertex vectors, follow the textbook definitions literally and share no
//! code with the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use stardecomp::{Complex, Face};

pub type Set = Vec<u32>;

pub fn sets(k: &Complex) -> Vec<Set> {
    k.facets().iter().map(|f| f.vertices().to_vec()).collect()
}

pub fn complex(facets: &[Set]) -> Complex {
    Complex::from_facets(facets.iter().map(|f| Face::new(f.iter().copied())))
}

fn subsets(f: &[u32]) -> Vec<Set> {
    (0..1u32 << f.len())
        .map(|m| (0..f.len()).filter(|i| m >> i & 1 == 1).map(|i| f[i]).collect())
        .collect()
}

/// Every face, `∅` included when there is at least one facet.
pub fn faces(facets: &[Set]) -> BTreeSet<Set> {
    facets.iter().flat_map(|f| subsets(f)).collect()
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|v| b.contains(v))
}

/// Inclusion-maximal members.
pub fn maximal(fs: &BTreeSet<Set>) -> Vec<Set> {
    fs.iter()
        .filter(|f| !fs.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
        .cloned()
        .collect()
}

fn rank_gf2(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) {
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[c] {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= *y;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Reduced Z/2 Betti numbers `β̃_{-1} … β̃_d`.
pub fn betti(facets: &[Set]) -> Vec<usize> {
    let fs = faces(facets);
    let Some(top) = fs.iter().map(|f| f.len()).max() else {
        return Vec::new();
    };
    let by_size: Vec<Vec<&Set>> = (0..=top).map(|s| fs.iter().filter(|f| f.len() == s).collect()).collect();
    // Boundary from size s to size s-1.
    let rank = |s: usize| -> usize {
        if s == 0 || s > top {
            return 0;
        }
        let lower = &by_size[s - 1];
        let rows: Vec<Vec<bool>> = by_size[s]
            .iter()
            .map(|f| lower.iter().map(|g| g.len() + 1 == f.len() && is_subset(g, f)).collect())
            .collect();
        rank_gf2(rows)
    };
    (0..=top).map(|s| by_size[s].len() - rank(s) - rank(s + 1)).collect()
}

pub fn is_pure(facets: &[Set]) -> bool {
    facets.windows(2).all(|w| w[0].len() == w[1].len())
}

/// Chains of nonempty faces, as sorted lists of faces, that are maximal.
pub fn sd_facets(facets: &[Set]) -> Vec<Vec<Set>> {
    let mut out = Vec::new();
    fn down(chain: &mut Vec<Set>, out: &mut Vec<Vec<Set>>) {
        let last = chain.last().unwrap().clone();
        if last.len() == 1 {
            let mut c = chain.clone();
            c.sort();
            out.push(c);
            return;
        }
        for i in 0..last.len() {
            let mut smaller = last.clone();
            smaller.remove(i);
            chain.push(smaller);
            down(chain, out);
            chain.pop();
        }
    }
    for f in facets {
        if f.is_empty() {
            continue;
        }
        down(&mut vec![f.clone()], &mut out);
    }
    out
}

/// Number of facets of `sd X` counted by walking maximal chains.
pub fn count_sd_facets(facets: &[Set]) -> usize {
    sd_facets(facets).len()
}

/// `sd X` with vertices renumbered by sorted order of faces.
pub fn sd_numbered(facets: &[Set]) -> (Vec<Set>, Vec<Set>) {
    let chains = sd_facets(facets);
    let verts: Vec<Set> = faces(facets).into_iter().filter(|f| !f.is_empty()).collect();
    let id: HashMap<&Set, u32> = verts.iter().enumerate().map(|(i, f)| (f, i as u32)).collect();
    let fs = chains
        .iter()
        .map(|c| {
            let mut s: Set = c.iter().map(|f| id[f]).collect();
            s.sort();
            s
        })
        .collect();
    (fs, verts)
}

/// Shelling by the definition: each later facet meets the union of the
/// earlier ones in a pure complex of codimension one.
pub fn is_shelling(order: &[Set]) -> bool {
    for i in 1..order.len() {
        let f = &order[i];
        let meet: BTreeSet<Set> = subsets(f)
            .into_iter()
            .filter(|s| order[..i].iter().any(|g| is_subset(s, g)))
            .collect();
        let m = maximal(&meet);
        if m.is_empty() || m.iter().any(|g| g.len() + 1 != f.len()) {
            return false;
        }
    }
    true
}

/// Exhaustive shellability over all facet orders (small inputs only).
pub fn shellable(facets: &[Set]) -> bool {
    fn extend(rest: &mut Vec<Set>, order: &mut Vec<Set>) -> bool {
        if rest.is_empty() {
            return true;
        }
        for i in 0..rest.len() {
            let f = rest.remove(i);
            order.push(f);
            if is_shelling(order) && extend(rest, order) {
                return true;
            }
            let f = order.pop().unwrap();
            rest.insert(i, f);
        }
        false
    }
    is_pure(facets) && extend(&mut facets.to_vec(), &mut Vec::new())
}

/// Collapsible to a single vertex, by exhaustive search over elementary
/// collapses with a set of visited face sets.
pub fn collapsible(facets: &[Set]) -> bool {
    let start: BTreeSet<Set> = faces(facets).into_iter().filter(|f| !f.is_empty()).collect();
    let mut seen = HashSet::new();
    fn go(fs: BTreeSet<Set>, seen: &mut HashSet<BTreeSet<Set>>) -> bool {
        if fs.len() == 1 {
            return true;
        }
        if !seen.insert(fs.clone()) {
            return false;
        }
        for s in &fs {
            let cof: Vec<&Set> = fs.iter().filter(|t| t.len() > s.len() && is_subset(s, t)).collect();
            if cof.len() == 1 {
                let mut next = fs.clone();
                let t = cof[0].clone();
                next.remove(s);
                next.remove(&t);
                if go(next, seen) {
                    return true;
                }
            }
        }
        false
    }
    !start.is_empty() && go(start, &mut seen)
}

pub fn delete_vertex(facets: &[Set], v: u32) -> Vec<Set> {
    let fs: BTreeSet<Set> = faces(facets).into_iter().filter(|f| !f.contains(&v)).collect();
    maximal(&fs)
}

pub fn link(facets: &[Set], sigma: &[u32]) -> Vec<Set> {
    let fs: BTreeSet<Set> = faces(facets)
        .into_iter()
        .filter(|f| is_subset(sigma, f))
        .map(|f| f.into_iter().filter(|v| !sigma.contains(v)).collect())
        .collect();
    maximal(&fs)
}

pub fn vertices(facets: &[Set]) -> Vec<u32> {
    let s: BTreeSet<u32> = facets.iter().flatten().copied().collect();
    s.into_iter().collect()
}

/// Vertex decomposability by the definition (pure version).
pub fn vertex_decomposable(facets: &[Set]) -> bool {
    fn go(facets: &[Set], memo: &mut HashMap<Vec<Set>, bool>) -> bool {
        let mut key = facets.to_vec();
        key.sort();
        if let Some(&b) = memo.get(&key) {
            return b;
        }
        let r = if !is_pure(facets) || facets.is_empty() {
            false
        } else if facets.len() == 1 {
            true
        } else {
            let d = facets[0].len();
            vertices(facets).into_iter().any(|v| {
                let rest = delete_vertex(facets, v);
                let lk = link(facets, &[v]);
                !rest.is_empty()
                    && rest.iter().all(|f| f.len() == d)
                    && lk.iter().all(|f| f.len() + 1 == d)
                    && go(&lk, memo)
                    && go(&rest, memo)
            })
        };
        memo.insert(key, r);
        r
    }
    go(facets, &mut HashMap::new())
}

/// Union-find connectivity of the 1-skeleton over the given vertices.
pub fn connected(facets: &[Set]) -> bool {
    let vs = vertices(facets);
    if vs.is_empty() {
        return false;
    }
    let mut parent: BTreeMap<u32, u32> = vs.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut BTreeMap<u32, u32>, v: u32) -> u32 {
        let u = p[&v];
        if u == v {
            v
        } else {
            let r = find(p, u);
            p.insert(v, r);
            r
        }
    }
    for f in facets {
        for w in f.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent.insert(a, b);
        }
    }
    let root = find(&mut parent, vs[0]);
    vs.iter().all(|&v| find(&mut parent, v) == root)
}

/// Two-colourability of the 1-skeleton.
pub fn bipartite(facets: &[Set]) -> bool {
    let mut colour: BTreeMap<u32, bool> = BTreeMap::new();
    let edges: Vec<(u32, u32)> = faces(facets)
        .into_iter()
        .filter(|f| f.len() == 2)
        .map(|f| (f[0], f[1]))
        .collect();
    for s in vertices(facets) {
        if colour.contains_key(&s) {
            continue;
        }
        colour.insert(s, false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let c = colour[&v];
            for &(a, b) in &edges {
                let u = if a == v { b } else if b == v { a } else { continue };
                match colour.get(&u) {
                    Some(&cu) if cu == c => return false,
                    Some(_) => {}
                    None => {
                        colour.insert(u, !c);
                        stack.push(u);
                    }
                }
            }
        }
    }
    true
}

/// All labelled graphs on `n` vertices with at least one edge; isolated
/// vertices are kept as singleton facets.
pub fn graphs(n: u32) -> Vec<Vec<Set>> {
    let pairs: Vec<(u32, u32)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (1..1u64 << pairs.len())
        .map(|mask| {
            let mut fs: Vec<Set> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(a, b))| vec![a, b])
                .collect();
            for v in 0..n {
                if !fs.iter().any(|f| f.contains(&v)) {
                    fs.push(vec![v]);
                }
            }
            fs
        })
        .collect()
}

/// Every simplicial complex on vertices `0..n` (as facet lists), the empty
/// complex and `{∅}` included.
pub fn all_complexes(n: u32) -> Vec<Vec<Set>> {
    let mut cands: Vec<Set> = subsets(&(0..n).collect::<Vec<_>>())
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    cands.sort_by_key(|s| (s.len(), s.clone()));
    let mut out = vec![Vec::new(), vec![Vec::new()]];
    fn go(i: usize, cands: &[Set], chosen: &mut BTreeSet<Set>, out: &mut Vec<Vec<Set>>) {
        if i == cands.len() {
            if !chosen.is_empty() {
                out.push(maximal(chosen));
            }
            return;
        }
        let s = &cands[i];
        let closed = s.len() == 1
            || (0..s.len()).all(|j| {
                let mut r = s.clone();
                r.remove(j);
                chosen.contains(&r)
            });
        if closed {
            chosen.insert(s.clone());
            go(i + 1, cands, chosen, out);
            chosen.remove(s);
        }
        go(i + 1, cands, chosen, out);
    }
    go(0, &cands, &mut BTreeSet::new(), &mut out);
    out
}
