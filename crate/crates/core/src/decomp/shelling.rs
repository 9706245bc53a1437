use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Dim};
use crate::error::{Error, Result};
use crate::face::Face;

/// A total order of the facets of a pure complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingOrder {
    pub facets: Vec<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ShellingCheck {
    Ok,
    /// `facets[index] ∩ witness` is not contained in a codimension-one face
    /// of `facets[index]` shared with an earlier facet.
    Fail { index: usize, witness: Face },
}

fn check_facet_multiset(k: &Complex, facets: &[Face]) -> Result<()> {
    let mut sorted = facets.to_vec();
    sorted.sort();
    if sorted != k.facets() {
        let dup = sorted.windows(2).find(|w| w[0] == w[1]).map(|w| w[0].clone());
        let detail = match dup {
            Some(f) => format!("{f} is listed twice"),
            None => format!(
                "order has {} facets, complex has {}",
                facets.len(),
                k.facets().len()
            ),
        };
        return Err(Error::WrongFacets(detail));
    }
    Ok(())
}

/// Verifies that each facet after the first meets the union of its
/// predecessors in a nonempty pure complex of codimension one. The first
/// facet is accepted unconditionally.
pub fn is_shelling(k: &Complex, order: &ShellingOrder) -> Result<ShellingCheck> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    check_facet_multiset(k, &order.facets)?;
    let mut ridges: HashSet<Face> = HashSet::new();
    let mut by_vertex: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, f) in order.facets.iter().enumerate() {
        if i > 0 {
            if let Some(witness) = failing_predecessor(&order.facets, i, &ridges, &by_vertex) {
                return Ok(ShellingCheck::Fail { index: i, witness });
            }
        }
        ridges.extend(f.ridges());
        for &v in f.vertices() {
            by_vertex.entry(v).or_default().push(i);
        }
    }
    Ok(ShellingCheck::Ok)
}

fn failing_predecessor(
    facets: &[Face],
    i: usize,
    ridges: &HashSet<Face>,
    by_vertex: &HashMap<u32, Vec<usize>>,
) -> Option<Face> {
    let f = &facets[i];
    let good: Vec<Face> = f.ridges().filter(|r| ridges.contains(r)).collect();
    if good.is_empty() {
        // No shared codimension-one face: the intersection is empty or too small.
        let j = f
            .vertices()
            .iter()
            .filter_map(|v| by_vertex.get(v).and_then(|l| l.first()))
            .min()
            .copied()
            .unwrap_or(0);
        return Some(facets[j].clone());
    }
    let mut seen = HashSet::new();
    for v in f.vertices() {
        for &j in by_vertex.get(v).map_or(&[][..], |l| l.as_slice()) {
            if !seen.insert(j) {
                continue;
            }
            let meet = f.intersection(&facets[j]);
            if !good.iter().any(|r| meet.is_subset_of(r)) {
                return Some(facets[j].clone());
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ShellingSearch {
    Found { order: ShellingOrder },
    NotShellable,
    BudgetExceeded,
}

/// Exhaustive backtracking over facet orders, memoizing dead-end prefix sets.
pub fn find_shelling(k: &Complex, budget: u64) -> Result<ShellingSearch> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    if k.dim() == Dim::NegInfinity {
        return Ok(ShellingSearch::Found {
            order: ShellingOrder { facets: Vec::new() },
        });
    }
    let facets = k.facets().to_vec();
    let n = facets.len();
    let mut s = Shell {
        facets: &facets,
        used: vec![false; n],
        order: Vec::new(),
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    Ok(match s.run() {
        Some(true) => ShellingSearch::Found {
            order: ShellingOrder {
                facets: s.order.iter().map(|&i| facets[i].clone()).collect(),
            },
        },
        Some(false) => ShellingSearch::NotShellable,
        None => ShellingSearch::BudgetExceeded,
    })
}

struct Shell<'a> {
    facets: &'a [Face],
    used: Vec<bool>,
    order: Vec<usize>,
    failed: HashSet<Vec<bool>>,
    nodes: u64,
    budget: u64,
}

impl Shell<'_> {
    fn fits(&self, i: usize) -> bool {
        if self.order.is_empty() {
            return true;
        }
        let f = &self.facets[i];
        let good: Vec<Face> = f
            .ridges()
            .filter(|r| self.order.iter().any(|&j| r.is_subset_of(&self.facets[j])))
            .collect();
        !good.is_empty()
            && self.order.iter().all(|&j| {
                let meet = f.intersection(&self.facets[j]);
                good.iter().any(|r| meet.is_subset_of(r))
            })
    }

    fn run(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if self.order.len() == self.facets.len() {
            return Some(true);
        }
        if self.failed.contains(&self.used) {
            return Some(false);
        }
        for i in 0..self.facets.len() {
            if self.used[i] || !self.fits(i) {
                continue;
            }
            self.used[i] = true;
            self.order.push(i);
            let r = self.run();
            if r != Some(false) {
                return r;
            }
            self.order.pop();
            self.used[i] = false;
        }
        self.failed.insert(self.used.clone());
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::Vertex;

    fn c(facets: &[&[Vertex]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| Face::from(*f)))
    }

    fn order(facets: &[&[Vertex]]) -> ShellingOrder {
        ShellingOrder {
            facets: facets.iter().map(|f| Face::from(*f)).collect(),
        }
    }

    #[test]
    fn triangle_boundary_any_order() {
        let k = Complex::boundary_simplex(&Face::from([1, 2, 3]));
        let o = order(&[&[2, 3], &[1, 2], &[1, 3]]);
        assert_eq!(is_shelling(&k, &o).unwrap(), ShellingCheck::Ok);
    }

    #[test]
    fn two_triangles_fail_at_second() {
        let k = c(&[&[1, 2, 3], &[3, 4, 5]]);
        for o in [
            order(&[&[1, 2, 3], &[3, 4, 5]]),
            order(&[&[3, 4, 5], &[1, 2, 3]]),
        ] {
            assert!(matches!(
                is_shelling(&k, &o).unwrap(),
                ShellingCheck::Fail { index: 1, .. }
            ));
        }
        assert_eq!(find_shelling(&k, 1000).unwrap(), ShellingSearch::NotShellable);
    }

    #[test]
    fn tetrahedron_boundary_lex_order() {
        let k = Complex::boundary_simplex(&Face::from([1, 2, 3, 4]));
        let o = ShellingOrder {
            facets: k.facets().to_vec(),
        };
        assert_eq!(is_shelling(&k, &o).unwrap(), ShellingCheck::Ok);
    }

    #[test]
    fn wrong_facets_are_errors() {
        let k = Complex::boundary_simplex(&Face::from([1, 2, 3]));
        assert!(is_shelling(&k, &order(&[&[1, 2], &[1, 2], &[1, 3]])).is_err());
        assert!(is_shelling(&k, &order(&[&[1, 2], &[1, 3]])).is_err());
    }

    #[test]
    fn path_order_matters() {
        let k = c(&[&[1, 2], &[2, 3], &[3, 4]]);
        let bad = order(&[&[1, 2], &[3, 4], &[2, 3]]);
        assert_eq!(
            is_shelling(&k, &bad).unwrap(),
            ShellingCheck::Fail {
                index: 1,
                witness: Face::from([1, 2])
            }
        );
    }
}
