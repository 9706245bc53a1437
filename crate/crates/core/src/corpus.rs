//! Named test complexes with the verdicts known for them, and a runner that
//! checks those verdicts against the library.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::collapse::{check_hrc, check_rc, find_collapse, CollapseOutcome, HrcVerdict, RcVerdict};
use crate::complex::{Complex, Dim};
use crate::decomp::{find_shelling, find_star_decomp_any, is_vertex_decomposable, ShellingSearch, StarSearch, VdSearch};
use crate::error::Result;
use crate::face::{Face, Vertex};
use crate::homology::reduced_betti;
use crate::pipeline::{shell_sd2, PipelineOutcome};

/// Seed used by `corpus` when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Known verdicts; `None` means not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    pub betti: Option<Vec<usize>>,
    pub collapsible: Option<bool>,
    pub rc: Option<bool>,
    pub hrc: Option<bool>,
    /// Face reported when (HRC) fails.
    pub hrc_witness: Option<Face>,
    pub star_decomposable: Option<bool>,
    pub vertex_decomposable: Option<bool>,
    pub shellable: Option<bool>,
    /// Facets of the verified shelling of `sd² K`.
    pub sd2_facets: Option<usize>,
    /// Whenever (HRC) holds the pipeline must produce a verified shelling.
    pub hrc_implies_shelling: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: Complex,
    pub expect: Expectations,
}

pub fn cycle(n: Vertex) -> Complex {
    Complex::from_facets((0..n).map(|i| Face::from([i, (i + 1) % n])))
}

pub fn path(n: Vertex) -> Complex {
    Complex::from_facets((1..n).map(|i| Face::from([i - 1, i])))
}

/// Simplex on `0..=d`.
pub fn simplex(d: Vertex) -> Complex {
    Complex::simplex(0..=d)
}

/// Boundary of the simplex on `0..=d`.
pub fn sphere(d: Vertex) -> Complex {
    Complex::boundary_simplex(&Face::new(0..=d))
}

/// Cone over a hexagon: a triangulated disk with one interior vertex.
pub fn hexagon_disk() -> Complex {
    Complex::from_facets((1..=6).map(|i| Face::from([0, i, i % 6 + 1])))
}

/// Two triangles sharing only the vertex 3.
pub fn two_triangles() -> Complex {
    Complex::from_facets([Face::from([1, 2, 3]), Face::from([3, 4, 5])])
}

/// An 8-vertex triangulation of the dunce hat: contractible, no free edge.
pub fn dunce_hat() -> Complex {
    const FACETS: [[Vertex; 3]; 17] = [
        [1, 2, 4], [1, 2, 7], [1, 2, 8], [1, 3, 5], [1, 3, 6], [1, 3, 8],
        [1, 4, 7], [1, 5, 6], [2, 3, 4], [2, 3, 6], [2, 3, 7], [2, 6, 8],
        [3, 4, 8], [3, 5, 7], [4, 5, 7], [4, 5, 8], [5, 6, 8],
    ];
    Complex::from_facets(FACETS.iter().map(|f| Face::from(*f)))
}

/// `facets` distinct random `dim`-simplices on `vertices` vertices. Vertices
/// in no facet simply do not occur.
pub fn random_pure(rng: &mut ChaCha8Rng, vertices: Vertex, dim: usize, facets: usize) -> Complex {
    let all: Vec<Vertex> = (0..vertices).collect();
    let mut chosen: Vec<Face> = Vec::new();
    while chosen.len() < facets {
        let f = Face::new(all.choose_multiple(rng, dim + 1).copied());
        if !chosen.contains(&f) {
            chosen.push(f);
        }
    }
    Complex::from_facets(chosen)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn betti_of_sphere(dim: usize) -> Vec<usize> {
    let mut b = vec![0; dim + 2];
    b[dim + 1] = 1;
    b
}

/// The bundled corpus. Random members depend on `seed`.
pub fn corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut add = |name: String, complex: Complex, expect: Expectations| {
        out.push(CorpusEntry { name, complex, expect })
    };
    for d in 0..=4 {
        let n = d as usize;
        add(
            format!("simplex_d{d}"),
            simplex(d),
            Expectations {
                betti: Some(vec![0; n + 2]),
                collapsible: Some(true),
                rc: Some(true),
                hrc: Some(true),
                vertex_decomposable: Some(true),
                shellable: Some(true),
                sd2_facets: Some(factorial(n + 1).pow(2)),
                hrc_implies_shelling: true,
                ..Default::default()
            },
        );
    }
    for d in 1..=4 {
        let n = d as usize;
        add(
            format!("boundary_d{d}"),
            sphere(d),
            Expectations {
                betti: Some(betti_of_sphere(n - 1)),
                collapsible: Some(false),
                rc: Some(true),
                hrc: Some(true),
                vertex_decomposable: Some(true),
                shellable: Some(true),
                sd2_facets: Some((n + 1) * factorial(n).pow(2)),
                hrc_implies_shelling: true,
                ..Default::default()
            },
        );
    }
    for n in 3..=6 {
        add(
            format!("cycle_{n}"),
            cycle(n),
            Expectations {
                betti: Some(vec![0, 0, 1]),
                collapsible: Some(false),
                rc: Some(true),
                hrc: Some(true),
                star_decomposable: Some(n % 2 == 0),
                vertex_decomposable: Some(true),
                shellable: Some(true),
                sd2_facets: Some(n as usize * 4),
                hrc_implies_shelling: true,
                ..Default::default()
            },
        );
    }
    for n in [3, 4, 5] {
        add(
            format!("path_{n}"),
            path(n),
            Expectations {
                betti: Some(vec![0, 0, 0]),
                collapsible: Some(true),
                rc: Some(true),
                hrc: Some(true),
                star_decomposable: Some(true),
                vertex_decomposable: Some(true),
                shellable: Some(true),
                sd2_facets: Some((n as usize - 1) * 4),
                hrc_implies_shelling: true,
                ..Default::default()
            },
        );
    }
    add(
        "two_triangles".into(),
        two_triangles(),
        Expectations {
            betti: Some(vec![0, 0, 0, 0]),
            collapsible: Some(true),
            rc: Some(true),
            hrc: Some(false),
            hrc_witness: Some(Face::from([3])),
            vertex_decomposable: Some(false),
            shellable: Some(false),
            ..Default::default()
        },
    );
    add(
        "dunce_hat".into(),
        dunce_hat(),
        Expectations {
            betti: Some(vec![0, 0, 0, 0]),
            collapsible: Some(false),
            rc: Some(false),
            hrc: Some(false),
            hrc_witness: Some(Face::empty()),
            ..Default::default()
        },
    );
    add(
        "hexagon_disk".into(),
        hexagon_disk(),
        Expectations {
            betti: Some(vec![0, 0, 0, 0]),
            collapsible: Some(true),
            rc: Some(true),
            hrc: Some(true),
            vertex_decomposable: Some(true),
            shellable: Some(true),
            sd2_facets: Some(6 * 36),
            hrc_implies_shelling: true,
            ..Default::default()
        },
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..6 {
        let k = random_pure(&mut rng, 6, 2, 3 + i);
        add(
            format!("random2_{i}"),
            k,
            Expectations {
                hrc_implies_shelling: true,
                ..Default::default()
            },
        );
    }
    out
}

/// One compared verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub entry: String,
    pub predicate: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

/// Counters collected while running the pipeline over the corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub pipeline_runs: u64,
    pub homology_checks: u64,
    pub lemma_checks: u64,
}

fn push<T: std::fmt::Debug + PartialEq>(
    out: &mut Vec<Check>,
    entry: &str,
    predicate: &str,
    expected: &Option<T>,
    actual: impl FnOnce() -> Result<T>,
) -> Result<()> {
    if let Some(e) = expected {
        let a = actual()?;
        out.push(Check {
            entry: entry.into(),
            predicate: predicate.into(),
            expected: format!("{e:?}"),
            actual: format!("{a:?}"),
            ok: &a == e,
        });
    }
    Ok(())
}

fn decided(b: Option<bool>) -> Result<bool> {
    b.ok_or_else(|| crate::error::Error::BudgetExceeded {
        context: "running corpus expectations".into(),
        budget: 0,
    })
}

/// Checks every stated expectation of `entry`.
pub fn run_entry(entry: &CorpusEntry, budget: u64, stats: &mut CorpusStats) -> Result<Vec<Check>> {
    let k = &entry.complex;
    let e = &entry.expect;
    let name = entry.name.as_str();
    let mut out = Vec::new();
    push(&mut out, name, "betti", &e.betti, || Ok(reduced_betti(k).betti))?;
    push(&mut out, name, "collapsible", &e.collapsible, || {
        decided(match find_collapse(k, None, budget)? {
            CollapseOutcome::Collapsible { .. } => Some(true),
            CollapseOutcome::NotCollapsible => Some(false),
            CollapseOutcome::BudgetExceeded => None,
        })
    })?;
    push(&mut out, name, "rc", &e.rc, || {
        decided(match check_rc(k, budget)? {
            RcVerdict::Certified { .. } | RcVerdict::Vacuous => Some(true),
            RcVerdict::Fails { .. } => Some(false),
            RcVerdict::BudgetExceeded => None,
        })
    })?;
    let hrc = check_hrc(k, budget)?;
    let hrc_holds = match &hrc {
        HrcVerdict::Certified { .. } => Some(true),
        HrcVerdict::Fails { .. } => Some(false),
        HrcVerdict::BudgetExceeded { .. } => None,
    };
    push(&mut out, name, "hrc", &e.hrc, || decided(hrc_holds))?;
    push(&mut out, name, "hrc_witness", &e.hrc_witness.clone().map(Some), || {
        Ok(match &hrc {
            HrcVerdict::Fails { witness, .. } => Some(witness.clone()),
            _ => None,
        })
    })?;
    push(&mut out, name, "star_decomposable", &e.star_decomposable, || {
        decided(match find_star_decomp_any(k, budget) {
            StarSearch::Found { .. } => Some(true),
            StarSearch::No => Some(false),
            StarSearch::BudgetExceeded => None,
        })
    })?;
    push(&mut out, name, "vertex_decomposable", &e.vertex_decomposable, || {
        decided(match is_vertex_decomposable(k, budget)? {
            VdSearch::Decomposable { .. } => Some(true),
            VdSearch::No => Some(false),
            VdSearch::BudgetExceeded => None,
        })
    })?;
    push(&mut out, name, "shellable", &e.shellable, || {
        decided(match find_shelling(k, budget)? {
            ShellingSearch::Found { .. } => Some(true),
            ShellingSearch::NotShellable => Some(false),
            ShellingSearch::BudgetExceeded => None,
        })
    })?;
    let wants_pipeline = e.sd2_facets.is_some() || (e.hrc_implies_shelling && hrc_holds == Some(true));
    if wants_pipeline && k.dim() != Dim::NegInfinity {
        stats.pipeline_runs += 1;
        let outcome = shell_sd2(k, budget)?;
        let facets = match &outcome {
            PipelineOutcome::Shelled { report } => {
                stats.homology_checks += report.stats.homology_checks;
                stats.lemma_checks += report.stats.lemma_checks;
                Some(report.shelling.facets.len())
            }
            _ => None,
        };
        if e.hrc_implies_shelling && hrc_holds == Some(true) {
            out.push(Check {
                entry: name.into(),
                predicate: "hrc_implies_shelling".into(),
                expected: "verified shelling".into(),
                actual: match &outcome {
                    PipelineOutcome::Shelled { .. } => "verified shelling".into(),
                    other => format!("{other:?}"),
                },
                ok: facets.is_some(),
            });
        }
        push(&mut out, name, "sd2_facets", &e.sd2_facets, || Ok(facets.unwrap_or(0)))?;
    }
    Ok(out)
}

/// Runs the whole corpus.
pub fn run_corpus(seed: u64, budget: u64) -> Result<(Vec<Check>, CorpusStats)> {
    let mut stats = CorpusStats::default();
    let mut checks = Vec::new();
    for entry in corpus(seed) {
        checks.extend(run_entry(&entry, budget, &mut stats)?);
    }
    Ok((checks, stats))
}
