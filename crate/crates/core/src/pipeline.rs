//! Shelling `sd² K` for a complex `K` satisfying (HRC).
//!
//! The order on `V(sd K)` is the removal order of an (RC) certificate of `K`:
//! removed facets, then free pairs `(σ, τ)`, then the terminal vertex. For
//! each face `ω` in that order the certificate for `lk(ω, sd K)` is built on
//! `sd ∂ω * sd lk(ω, K)` and pulled back along the link isomorphism. The
//! result is verified, turned into a star decomposition of `sd² K`, then a
//! shedding order, then a shelling, and each of those is verified too.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::collapse::{check_hrc, check_rc_with, HrcCertificate, HrcVerdict, RcRequest, RcVerdict};
use crate::complex::{Complex, Dim};
use crate::decomp::{
    is_shelling, relabel_sdv, sd_to_shedding_cert, sdv_to_sd, shedding_cert_to_shelling, verify_sdv,
    verify_shedding_cert, verify_star_decomp, Merger, SdvCert, SheddingCert, SheddingCheck,
    ShellingCheck, ShellingOrder,
};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::subdivision::{psi_link_iso_in, sd};

/// Which (RC) certificate a recursive build starts from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Variant {
    Default,
    /// The terminal vertex is fixed.
    Target(Vertex),
    /// The given facet is removed first.
    FirstFacet(Face),
}

/// Builds decompositions in vertices of `sd² S` for the complexes met while
/// recursing from `K`.
pub struct Builder {
    budget: u64,
    memo: HashMap<(Vec<Face>, Variant), SdvCert>,
    pub merger: Merger,
    /// (RC) searches actually run (memo hits excluded).
    pub rc_searches: u64,
}

impl Builder {
    pub fn new(budget: u64) -> Self {
        Builder {
            budget,
            memo: HashMap::new(),
            merger: Merger::new(),
            rc_searches: 0,
        }
    }

    /// Certificate for `(sd² K, V(sd K))` in the vertex ids of `sd K`; valid
    /// for every nonempty final segment of its order.
    pub fn build(&mut self, k: &Complex) -> Result<SdvCert> {
        self.build_variant(k, Variant::Default)
    }

    /// The order on `V(sd K)` as faces of `K`.
    pub fn sd_order(&mut self, k: &Complex) -> Result<Vec<Face>> {
        Ok(self.rc_order(k, &Variant::Default)?.unwrap_or_default())
    }

    fn rc_order(&mut self, s: &Complex, variant: &Variant) -> Result<Option<Vec<Face>>> {
        let request = match variant {
            Variant::Default => RcRequest::default(),
            Variant::Target(v) => RcRequest {
                target: Some(*v),
                first_facet: None,
            },
            Variant::FirstFacet(f) => RcRequest {
                target: None,
                first_facet: Some(f.clone()),
            },
        };
        self.rc_searches += 1;
        match check_rc_with(s, &request, self.budget)? {
            RcVerdict::Certified { certificate } => Ok(Some(certificate.removal_order())),
            RcVerdict::Vacuous => Ok(None),
            RcVerdict::Fails { reason } => Err(Error::Precondition(format!(
                "(RC) fails for {:?} with {request:?}: {reason}",
                s.facets()
            ))),
            RcVerdict::BudgetExceeded => Err(Error::BudgetExceeded {
                context: format!("searching an (RC) certificate for {:?}", s.facets()),
                budget: self.budget,
            }),
        }
    }

    fn build_variant(&mut self, s: &Complex, variant: Variant) -> Result<SdvCert> {
        let key = (s.facets().to_vec(), variant);
        if let Some(c) = self.memo.get(&key) {
            return Ok(c.clone());
        }
        let cert = self.construct(s, &key.1)?;
        self.memo.insert(key, cert.clone());
        Ok(cert)
    }

    fn construct(&mut self, s: &Complex, variant: &Variant) -> Result<SdvCert> {
        let Some(faces) = self.rc_order(s, variant)? else {
            return Ok(SdvCert::default());
        };
        let sds = sd(s);
        let order: Vec<Vertex> = faces
            .iter()
            .map(|f| sds.vertex_of(f).expect("removal order lists faces"))
            .collect();
        if order.len() != sds.num_vertices() {
            return Err(Error::InvalidCertificate(format!(
                "removal order has {} faces, the complex has {}",
                order.len(),
                sds.num_vertices()
            )));
        }
        let position: HashMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = faces.len();
        let facets = faces.iter().take_while(|f| s.facets().contains(f)).count();
        let facets = facets.min(n - 1);
        let mut children = Vec::with_capacity(n);
        for (i, omega) in faces.iter().enumerate() {
            let iso = psi_link_iso_in(s, &sds, omega)?;
            let a = &iso.boundary_sd.complex;
            let off = iso.offset;
            let b = iso.link_sd.complex.relabel(|v| v + off);
            let base_link = s.link_unchecked(omega);
            let shift = |c: &SdvCert| relabel_sdv(c, &|v| v + off);
            // Later neighbours of ω, carried into the join.
            let later: BTreeSet<Vertex> = iso
                .forward
                .iter()
                .filter(|(v, _)| i + 1 == n || position[*v] > i)
                .map(|(_, &w)| w)
                .collect();
            let all_a: BTreeSet<Vertex> = a.vertices().into_iter().collect();
            let child = if i + 1 == n {
                // The terminal vertex z: lk(z, sd S) is sd lk(z, S).
                let c = self.build_variant(&base_link, Variant::Default)?;
                shift(&c)
            } else if i < facets {
                expect_set(&later, &all_a, omega, "removed facet")?;
                self.build_variant(&Complex::proper_faces(omega), Variant::Default)?
            } else if (i - facets) % 2 == 0 {
                let tau = &faces[i + 1];
                let apex = tau.difference(omega);
                let apex_id = iso.link_sd.vertex_of(&apex).expect("τ∖σ is a link vertex") + off;
                let mut expected = all_a.clone();
                expected.insert(apex_id);
                expect_set(&later, &expected, omega, "free face")?;
                let ca = self.build_variant(&Complex::proper_faces(omega), Variant::Default)?;
                let apex_vertex = apex.vertices()[0];
                let cb = self.build_variant(&base_link, Variant::Target(apex_vertex))?;
                let xa: Vec<Vertex> = all_a.iter().copied().collect();
                self.merger.pairs(a, &xa, &ca, &b, &[apex_id], &shift(&cb))?
            } else {
                let sigma = &faces[i - 1];
                let sigma_id = iso.boundary_sd.vertex_of(sigma).expect("σ is a proper face of τ");
                let mut yset = all_a.clone();
                yset.remove(&sigma_id);
                expect_set(&later, &yset, omega, "coface")?;
                let ca = self.build_variant(&Complex::proper_faces(omega), Variant::FirstFacet(sigma.clone()))?;
                if ca.order.first() != Some(&sigma_id) {
                    return Err(Error::InvalidCertificate(format!(
                        "boundary order of {omega} does not start with {sigma}"
                    )));
                }
                let cb = self.build_variant(&base_link, Variant::Default)?;
                let yset: Vec<Vertex> = ca.order.iter().copied().filter(|v| yset.contains(v)).collect();
                self.merger.nice(&b, &shift(&cb), a, &yset, &ca)?
            };
            let back = iso.backward();
            children.push(relabel_sdv(&child, &|v| back[&v]));
        }
        Ok(SdvCert { order, children })
    }
}

fn expect_set(got: &BTreeSet<Vertex>, want: &BTreeSet<Vertex>, omega: &Face, case: &str) -> Result<()> {
    if got != want {
        return Err(Error::InvalidCertificate(format!(
            "later link vertices of {omega} ({case}) are {got:?}, expected {want:?}"
        )));
    }
    Ok(())
}

/// Wall-clock milliseconds per stage and search counters.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub hrc_ms: f64,
    pub build_ms: f64,
    pub verify_sdv_ms: f64,
    pub star_ms: f64,
    pub shedding_ms: f64,
    pub shelling_ms: f64,
    pub rc_searches: u64,
    pub homology_checks: u64,
    /// Homology checks on links inside the nice merge. These restate a
    /// consequence of the enclosing check, so a failure here is a bug.
    pub lemma_checks: u64,
    pub sdv_cert_nodes: usize,
    pub star_cert_nodes: usize,
    pub shedding_cert_nodes: usize,
    pub sd2_facets: usize,
    /// `f_d(K) · ((d + 1)!)²`, counting pairs of maximal chains.
    pub sd2_facets_by_chains: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineReport {
    pub input: Complex,
    pub hrc_certificate: HrcCertificate,
    /// Faces of `K` in the order used on `V(sd K)`.
    pub sd_order: Vec<Face>,
    /// In ids of `sd K`.
    pub sdv_cert: SdvCert,
    /// Vertices of `sd² K`, as chains of faces of `K`, indexed by id.
    pub sd2_vertices: Vec<Vec<Face>>,
    /// Shedding order of `sd² K` with certificates for every link.
    pub shedding: SheddingCert,
    pub shedding_check: SheddingCheck,
    pub shelling: ShellingOrder,
    pub shelling_check: ShellingCheck,
    pub stats: PipelineStats,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum PipelineOutcome {
    Shelled { report: Box<PipelineReport> },
    HrcFailure { witness: Face, reason: String },
    BudgetExceeded { location: String },
    /// A certificate was constructed but a verifier rejected it.
    VerifiedFailure { stage: String, detail: String },
}

impl PipelineOutcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineOutcome::Shelled { .. } => 0,
            PipelineOutcome::VerifiedFailure { .. } => 1,
            PipelineOutcome::HrcFailure { .. } => 2,
            PipelineOutcome::BudgetExceeded { .. } => 3,
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `Instant::now` panics on wasm32-unknown-unknown; timings read 0 there.
fn now() -> Option<Instant> {
    (!cfg!(target_arch = "wasm32")).then(Instant::now)
}

fn ms(t: Option<Instant>) -> f64 {
    t.map_or(0.0, |t| t.elapsed().as_secs_f64() * 1e3)
}

/// Runs the whole chain on `k`, verifying every stage.
pub fn shell_sd2(k: &Complex, budget: u64) -> Result<PipelineOutcome> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let d = match k.dim() {
        Dim::Finite(d) if d >= 0 => d as usize,
        _ => return Err(Error::EmptyComplex),
    };
    let mut stats = PipelineStats::default();

    let t = now();
    let hrc = match check_hrc(k, budget)? {
        HrcVerdict::Certified { certificate } => certificate,
        HrcVerdict::Fails { witness, reason } => return Ok(PipelineOutcome::HrcFailure { witness, reason }),
        HrcVerdict::BudgetExceeded { face } => {
            return Ok(PipelineOutcome::BudgetExceeded {
                location: format!("(HRC) check at the link of {face}"),
            })
        }
    };
    stats.hrc_ms = ms(t);

    let t = now();
    let sdk = sd(k);
    let mut builder = Builder::new(budget);
    let cert = match builder.build(k) {
        Ok(c) => c,
        Err(Error::BudgetExceeded { context, .. }) => {
            return Ok(PipelineOutcome::BudgetExceeded { location: context })
        }
        Err(e) => return Err(e),
    };
    let sd_order: Vec<Face> = cert.order.iter().map(|&v| sdk.face_of(v).clone()).collect();
    stats.build_ms = ms(t);
    stats.rc_searches = builder.rc_searches;
    stats.homology_checks = builder.merger.homology_checks;
    stats.lemma_checks = builder.merger.lemma_checks;
    stats.sdv_cert_nodes = cert.size();

    let t = now();
    let all = sdk.complex.vertices();
    if let Err(e) = verify_sdv(&sdk.complex, &all, &cert) {
        return Ok(PipelineOutcome::VerifiedFailure {
            stage: "decomposition in vertices".into(),
            detail: e.to_string(),
        });
    }
    stats.verify_sdv_ms = ms(t);

    let t = now();
    let transport = sdv_to_sd(&sdk.complex, &all, &cert)?;
    let sd2 = &transport.sd.complex;
    if let Err(e) = verify_star_decomp(sd2, &transport.xset, &transport.certificate) {
        return Ok(PipelineOutcome::VerifiedFailure {
            stage: "star decomposition".into(),
            detail: e.to_string(),
        });
    }
    stats.star_cert_nodes = transport.certificate.size();
    stats.star_ms = ms(t);

    let t = now();
    let shedding = sd_to_shedding_cert(sd2, &transport.certificate)?;
    let shedding_check = verify_shedding_cert(sd2, &shedding)?;
    if shedding_check != SheddingCheck::Ok {
        return Ok(PipelineOutcome::VerifiedFailure {
            stage: "shedding order".into(),
            detail: serde_json::to_string(&shedding_check).unwrap_or_default(),
        });
    }
    stats.shedding_cert_nodes = shedding.size();
    stats.shedding_ms = ms(t);

    let t = now();
    let shelling = match shedding_cert_to_shelling(sd2, &shedding) {
        Ok(s) => s,
        Err(Error::InvalidCertificate(detail)) => {
            return Ok(PipelineOutcome::VerifiedFailure {
                stage: "shelling".into(),
                detail,
            })
        }
        Err(e) => return Err(e),
    };
    let shelling_check = is_shelling(sd2, &shelling)?;
    if shelling_check != ShellingCheck::Ok {
        return Ok(PipelineOutcome::VerifiedFailure {
            stage: "shelling".into(),
            detail: serde_json::to_string(&shelling_check).unwrap_or_default(),
        });
    }
    stats.shelling_ms = ms(t);
    stats.sd2_facets = sd2.facets().len();
    stats.sd2_facets_by_chains = k.facets().len() * factorial(d + 1) * factorial(d + 1);
    if stats.sd2_facets != stats.sd2_facets_by_chains || shelling.facets.len() != stats.sd2_facets {
        return Ok(PipelineOutcome::VerifiedFailure {
            stage: "facet count".into(),
            detail: format!(
                "sd² has {} facets, chain count gives {}, shelling lists {}",
                stats.sd2_facets,
                stats.sd2_facets_by_chains,
                shelling.facets.len()
            ),
        });
    }

    let sd2_vertices = (0..transport.sd.num_vertices() as Vertex)
        .map(|v| {
            transport
                .sd
                .face_of(v)
                .vertices()
                .iter()
                .map(|&u| sdk.face_of(u).clone())
                .collect()
        })
        .collect();
    Ok(PipelineOutcome::Shelled {
        report: Box::new(PipelineReport {
            input: k.clone(),
            hrc_certificate: hrc,
            sd_order,
            sdv_cert: cert,
            sd2_vertices,
            shedding,
            shedding_check,
            shelling,
            shelling_check,
            stats,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_order_is_forced_shape() {
        let k = Complex::simplex([1, 2]);
        let mut b = Builder::new(1000);
        let order = b.sd_order(&k).unwrap();
        assert_eq!(order.len(), 3);
        assert_eq!(order[1], Face::from([1, 2]));
        let cert = b.build(&k).unwrap();
        let sdk = sd(&k);
        verify_sdv(&sdk.complex, &sdk.complex.vertices(), &cert).unwrap();
    }

    #[test]
    fn triangle_end_to_end() {
        let k = Complex::simplex([1, 2, 3]);
        match shell_sd2(&k, 100_000).unwrap() {
            PipelineOutcome::Shelled { report } => {
                assert_eq!(report.shelling.facets.len(), 36);
                assert_eq!(report.sd_order.len(), 7);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn points_end_to_end() {
        let k = Complex::from_facets([Face::from([1]), Face::from([2]), Face::from([5])]);
        match shell_sd2(&k, 1000).unwrap() {
            PipelineOutcome::Shelled { report } => assert_eq!(report.shelling.facets.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_triangles_fail_hrc() {
        let k = Complex::from_facets([Face::from([1, 2, 3]), Face::from([3, 4, 5])]);
        match shell_sd2(&k, 1000).unwrap() {
            PipelineOutcome::HrcFailure { witness, .. } => assert_eq!(witness, Face::from([3])),
            other => panic!("{other:?}"),
        }
    }
}
