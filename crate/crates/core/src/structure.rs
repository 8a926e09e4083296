//! Supplements, module classification and the constructive procedures built
//! on them.
//!
//! Finite modules satisfy every finiteness premise (finitely generated,
//! finitely generated socle, cofinite submodules) automatically; the
//! procedures here still run their full quantifiers so that each routine is
//! an independent computation that can be checked against the others.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bounds, ModuleRep, RingTable};
use crate::error::{Error, Result};
use crate::lattice::NodeId;
use crate::predicates::{Analysis, Fault};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupplementKind {
    /// `M = K + L` and `K ∩ L ≪ L`.
    Supplement,
    /// `M = K + L` and `K ∩ L ≪_δ L`.
    DeltaSupplement,
    /// `M = K + L` and `K ∩ L ≪_δ M`.
    WeakDeltaSupplement,
}

/// What was verified for a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupplementChecks {
    pub sum_is_whole: bool,
    pub intersection_condition: bool,
    /// Minimality of `L` with `K + L = M`; only recorded for supplements.
    pub minimal: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupplementCertificate {
    pub kind: SupplementKind,
    pub of: NodeId,
    pub witness: NodeId,
    pub checks: SupplementChecks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub local: bool,
    pub delta_local: bool,
    pub semilocal: bool,
    pub semisimple: bool,
    pub singular: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartLabel {
    Simple,
    DeltaLocal,
}

/// `M = H_1 + … + H_n` with each part simple or δ-local.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<NodeId>,
    pub labels: Vec<PartLabel>,
    /// Sum of the δ-supplements chosen for maximal submodules over the socle.
    pub lambda: NodeId,
}

/// `Soc(M)/(Soc(M) ∩ Rad(M))` as a module.
#[derive(Debug, Clone)]
pub struct XOfM {
    pub value: ModuleRep,
    pub length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilocalReport {
    pub semilocal: bool,
    pub x_length: usize,
    pub x_semisimple: bool,
    pub equivalence_holds: bool,
    pub socle_in_radical: bool,
    /// When the socle lies in the radical: whether `Rad(M) = δ(M)`.
    pub radical_equals_delta: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionBranch {
    /// `δ(L) = L`: a semisimple complement of `K` inside `L` was returned.
    SemisimpleComplement,
    /// `K ∩ L ≪ L` for the current `L`.
    SmallIntersection,
}

/// Result of the supplement-extraction descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub certificate: SupplementCertificate,
    /// `L_0 = H, L_1, …` visited by the descent.
    pub chain: Vec<NodeId>,
    /// Semisimple pieces split off at each descent step.
    pub split_off: Vec<NodeId>,
    pub branch: ExtractionBranch,
    /// Composition length of `Soc(M)`, the descent bound.
    pub bound: usize,
}

impl Extraction {
    pub fn descents(&self) -> usize {
        self.chain.len() - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingClassification {
    pub semiperfect: bool,
    pub delta_semiperfect: bool,
    pub semilocal: bool,
    /// `S/(S ∩ J)` finitely generated, `S` the left socle and `J` the
    /// Jacobson radical; always true for finite rings.
    pub socle_condition: bool,
    /// `semiperfect ⇔ (delta_semiperfect ∧ semilocal)` and
    /// `semilocal ⇔ socle_condition` under δ-semiperfectness.
    pub consistent: bool,
}

impl Analysis {
    fn is_maximal_in(&self, k: NodeId, top: NodeId) -> bool {
        k != top && self.lattice().leq(k, top) && self.lattice().interval(k, top).len() == 2
    }

    // ---------------------------------------------------------------- supplements

    fn supplement_condition(&self, kind: SupplementKind, k: NodeId, l: NodeId, top: NodeId) -> bool {
        let meet = self.lattice().meet(k, l);
        match kind {
            SupplementKind::Supplement => self.is_small_in(meet, l, self.zero()),
            SupplementKind::DeltaSupplement => self.is_delta_small_in(meet, l, self.zero()),
            SupplementKind::WeakDeltaSupplement => self.is_delta_small_in(meet, top, self.zero()),
        }
    }

    /// Whether `l` is a supplement of the given kind of `k` in `top`. For
    /// plain supplements this is the small-intersection test.
    pub fn is_supplement_of(&self, l: NodeId, k: NodeId, top: NodeId, kind: SupplementKind) -> bool {
        self.lattice().sums_to(k, l, top) && self.supplement_condition(kind, k, l, top)
    }

    /// `L` minimal among submodules of `top` with `K + L = top`.
    fn is_minimal_complement(&self, k: NodeId, l: NodeId, top: NodeId) -> bool {
        self.lattice().sums_to(k, l, top)
            && self
                .lattice()
                .maximal_in(self.zero(), l)
                .into_iter()
                .all(|l2| !self.lattice().sums_to(k, l2, top))
    }

    /// All supplements of `k` in the section `top` (a submodule regarded as
    /// a module). Minimality and the small-intersection test must agree.
    pub fn find_supplements_in(&self, k: NodeId, top: NodeId) -> Result<Vec<SupplementCertificate>> {
        let mut out = Vec::new();
        for l in self.lattice().down(top).iter() {
            if !self.lattice().sums_to(k, l, top) {
                continue;
            }
            let minimal = self.is_minimal_complement(k, l, top);
            let small = self.supplement_condition(SupplementKind::Supplement, k, l, top);
            if minimal != small {
                return Err(Error::InternalInconsistency(format!(
                    "supplement {l} of {k}: minimality says {minimal}, small intersection says {small}"
                )));
            }
            if minimal {
                out.push(SupplementCertificate {
                    kind: SupplementKind::Supplement,
                    of: k,
                    witness: l,
                    checks: SupplementChecks {
                        sum_is_whole: true,
                        intersection_condition: small,
                        minimal: Some(minimal),
                    },
                });
            }
        }
        Ok(out)
    }

    pub fn find_supplements(&self, k: NodeId) -> Result<Vec<SupplementCertificate>> {
        self.find_supplements_in(k, self.top())
    }

    /// All (weak) δ-supplements of `k` in the section `top`.
    pub fn find_delta_supplements_in(
        &self,
        k: NodeId,
        top: NodeId,
        kind: SupplementKind,
    ) -> Vec<SupplementCertificate> {
        self.lattice()
            .down(top)
            .iter()
            .filter(|&l| self.lattice().sums_to(k, l, top))
            .filter(|&l| self.supplement_condition(kind, k, l, top))
            .map(|l| SupplementCertificate {
                kind,
                of: k,
                witness: l,
                checks: SupplementChecks {
                    sum_is_whole: true,
                    intersection_condition: true,
                    minimal: None,
                },
            })
            .collect()
    }

    pub fn find_delta_supplements(&self, k: NodeId, kind: SupplementKind) -> Vec<SupplementCertificate> {
        self.find_delta_supplements_in(k, self.top(), kind)
    }

    /// Lexicographically least supplement of the given kind, if any.
    pub fn least_supplement(&self, k: NodeId, top: NodeId, kind: SupplementKind) -> Option<NodeId> {
        let lat = self.lattice();
        let mut candidates: Vec<NodeId> = lat
            .down(top)
            .iter()
            .filter(|&l| lat.sums_to(k, l, top))
            .collect();
        candidates.sort_by_key(|&l| lat.lex_rank(l));
        candidates
            .into_iter()
            .find(|&l| match kind {
                SupplementKind::Supplement => self.is_minimal_complement(k, l, top),
                _ => self.supplement_condition(kind, k, l, top),
            })
    }

    pub fn is_supplemented_in(&self, top: NodeId) -> bool {
        self.lattice().down(top).iter().all(|k| {
            self.lattice()
                .down(top)
                .iter()
                .any(|l| self.is_minimal_complement(k, l, top))
        })
    }

    pub fn is_delta_supplemented_in(&self, top: NodeId) -> bool {
        self.lattice().down(top).iter().all(|k| {
            self.lattice().down(top).iter().any(|l| {
                self.lattice().sums_to(k, l, top)
                    && self.supplement_condition(SupplementKind::DeltaSupplement, k, l, top)
            })
        })
    }

    pub fn is_supplemented(&self) -> bool {
        self.is_supplemented_in(self.top())
    }

    pub fn is_delta_supplemented(&self) -> bool {
        self.is_delta_supplemented_in(self.top())
    }

    /// Every maximal submodule of `top` has a δ-supplement in `top`.
    pub fn maximals_have_delta_supplements(&self) -> bool {
        let top = self.top();
        self.lattice().maximal_submodules().into_iter().all(|k| {
            self.least_supplement(k, top, SupplementKind::DeltaSupplement)
                .is_some()
        })
    }

    // ---------------------------------------------------------------- classification

    /// Classification of the submodule `top` regarded as a module.
    pub fn classify_in(&self, top: NodeId) -> Classification {
        let zero = self.zero();
        let rad = self.rad_in(top, zero);
        let delta = self.delta_in(top, zero);
        Classification {
            local: self.is_maximal_in(rad, top) && self.is_small_in(rad, top, zero),
            delta_local: self.is_maximal_in(delta, top) && self.is_delta_small_in(delta, top, zero),
            semilocal: self.soc_in(top, rad) == top,
            semisimple: self.soc_in(top, zero) == top,
            singular: self.is_singular_section(top, zero),
        }
    }

    pub fn classify(&self) -> Classification {
        self.classify_in(self.top())
    }

    // ---------------------------------------------------------------- δ-lifting

    /// `M = D1 ⊕ D2` with `D1 ≤ N` and `N ∩ D2 ≪_δ D2`, least `D2` first.
    pub fn delta_lifting_decomposition(&self, n: NodeId) -> Option<(NodeId, NodeId)> {
        let lat = self.lattice();
        let (top, zero) = (self.top(), self.zero());
        let mut d2s: Vec<NodeId> = (0..lat.len()).collect();
        d2s.sort_by_key(|&x| lat.lex_rank(x));
        for d2 in d2s {
            if !self.is_delta_small_in(lat.meet(n, d2), d2, zero) {
                continue;
            }
            let d1 = lat.lex_min(
                lat.down(n)
                    .iter()
                    .filter(|&d1| lat.meet(d1, d2) == zero && lat.sums_to(d1, d2, top)),
            );
            if let Some(d1) = d1 {
                return Some((d1, d2));
            }
        }
        None
    }

    pub fn is_delta_lifting(&self) -> bool {
        (0..self.lattice().len()).all(|n| self.delta_lifting_decomposition(n).is_some())
    }

    // ---------------------------------------------------------------- extraction

    /// Turns a δ-supplement `h` of a maximal submodule `k` into a supplement
    /// of `k` contained in `h`.
    ///
    /// If `δ(L) = L` a projective semisimple complement `Y ≤ L` of `K` is
    /// returned. Otherwise, while `K ∩ L` is not small in `L`, a proper
    /// `L' < L` with `δ(L) + L' = L` is chosen together with a semisimple
    /// `Y' ≤ δ(L)` such that `L = L' ⊕ Y'`, and the descent continues with
    /// `L'`. Each step strictly shrinks `Soc(L)`, so more than
    /// `length(Soc M)` steps means a bug.
    pub fn extract_supplement(&self, h: NodeId, k: NodeId) -> Result<Extraction> {
        let lat = self.lattice();
        let (top, zero) = (self.top(), self.zero());
        if !self.is_maximal_in(k, top) {
            return Err(Error::PreconditionViolation(format!("node {k} is not maximal")));
        }
        if !(lat.sums_to(k, h, top)
            && self.supplement_condition(SupplementKind::DeltaSupplement, k, h, top))
        {
            return Err(Error::PreconditionViolation(format!(
                "node {h} is not a delta-supplement of {k}"
            )));
        }
        let bound = lat.height(zero, self.soc());
        let mut chain = vec![h];
        let mut split_off = Vec::new();
        let mut l = h;
        let (witness, branch) = loop {
            let d = self.delta_of(l);
            if d == l {
                let y = lat
                    .lex_min(lat.down(d).iter().filter(|&y| {
                        self.is_projective_semisimple(y)
                            && lat.meet(k, y) == zero
                            && lat.sums_to(k, y, top)
                    }))
                    .ok_or_else(|| {
                        Error::InternalInconsistency(format!(
                            "no semisimple complement of {k} inside delta({l}) = {l}"
                        ))
                    })?;
                break (y, ExtractionBranch::SemisimpleComplement);
            }
            if self.is_small_in(lat.meet(k, l), l, zero) {
                break (l, ExtractionBranch::SmallIntersection);
            }
            if chain.len() > bound {
                return Err(Error::InternalInconsistency(format!(
                    "descent exceeded the socle length {bound}"
                )));
            }
            let next = lat
                .lex_min(lat.down(l).iter().filter(|&x| x != l && lat.sums_to(d, x, l)))
                .ok_or_else(|| {
                    Error::InternalInconsistency(format!("delta({l}) is small in {l} yet K ∩ L is not"))
                })?;
            let y = lat
                .lex_min(lat.down(d).iter().filter(|&y| {
                    self.is_projective_semisimple(y)
                        && lat.meet(next, y) == zero
                        && lat.sums_to(next, y, l)
                }))
                .ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "no semisimple complement of {next} inside delta({l})"
                    ))
                })?;
            split_off.push(y);
            chain.push(next);
            l = next;
        };

        let certificate = SupplementCertificate {
            kind: SupplementKind::Supplement,
            of: k,
            witness,
            checks: SupplementChecks {
                sum_is_whole: lat.sums_to(k, witness, top),
                intersection_condition: self.is_small_in(lat.meet(k, witness), witness, zero),
                minimal: Some(self.is_minimal_complement(k, witness, top)),
            },
        };
        if !lat.leq(witness, h) {
            return Err(Error::InternalInconsistency(format!(
                "extracted supplement {witness} is not inside {h}"
            )));
        }
        Ok(Extraction {
            certificate,
            chain,
            split_off,
            branch,
            bound,
        })
    }

    // ---------------------------------------------------------------- decomposition

    /// Writes `M` as a sum of simple and δ-local submodules following the
    /// socle-plus-δ-supplements construction.
    ///
    /// Only maximal submodules over the socle are asked for δ-supplements,
    /// so this does not call [`Analysis::is_delta_supplemented`]; failure to
    /// find one is reported as [`Error::NotDeltaSupplemented`].
    pub fn decompose_simple_delta_local(&self) -> Result<Decomposition> {
        let lat = self.lattice();
        let (top, zero) = (self.top(), self.zero());
        let soc = self.soc();
        let mut maximals: Vec<NodeId> = lat
            .maximal_submodules()
            .into_iter()
            .filter(|&k| lat.leq(soc, k))
            .collect();
        maximals.sort_by_key(|&k| lat.lex_rank(k));

        let mut parts = Vec::new();
        let mut labels = Vec::new();
        for k in maximals {
            let l = self
                .least_supplement(k, top, SupplementKind::DeltaSupplement)
                .ok_or_else(|| Error::NotDeltaSupplemented(format!("maximal node {k}")))?;
            if !self.classify_in(l).delta_local {
                return Err(Error::InternalInconsistency(format!(
                    "delta-supplement {l} of maximal {k} over the socle is not delta-local"
                )));
            }
            if !parts.contains(&l) {
                parts.push(l);
                labels.push(PartLabel::DeltaLocal);
            }
        }
        let lambda = self.join_all(parts.iter().copied(), zero);
        if lat.join(soc, lambda) != top {
            return Err(Error::InternalInconsistency(
                "socle plus the delta-local part does not cover the module".into(),
            ));
        }
        let mut sum = lambda;
        let mut atoms = lat.minimal_submodules();
        atoms.sort_by_key(|&s| lat.lex_rank(s));
        for s in atoms {
            if sum == top {
                break;
            }
            if !lat.leq(s, sum) {
                parts.push(s);
                labels.push(PartLabel::Simple);
                sum = lat.join(sum, s);
            }
        }
        if sum != top {
            return Err(Error::InternalInconsistency("parts do not sum to the module".into()));
        }
        Ok(Decomposition {
            parts,
            labels,
            lambda,
        })
    }

    /// Checks each part against its label.
    pub fn verify_decomposition(&self, d: &Decomposition) -> bool {
        let lat = self.lattice();
        let sum = self.join_all(d.parts.iter().copied(), self.zero());
        sum == self.top()
            && d.parts.iter().zip(&d.labels).all(|(&p, label)| match label {
                PartLabel::Simple => lat.interval(self.zero(), p).len() == 2,
                PartLabel::DeltaLocal => self.classify_in(p).delta_local,
            })
    }

    /// Whether `M` is a sum of simple and δ-local submodules, decided by
    /// summing every such submodule.
    pub fn is_sum_of_simple_and_delta_local(&self) -> bool {
        let lat = self.lattice();
        let zero = self.zero();
        let parts = (0..lat.len()).filter(|&x| {
            lat.interval(zero, x).len() == 2 || self.classify_in(x).delta_local
        });
        self.join_all(parts, zero) == self.top()
    }

    // ---------------------------------------------------------------- semilocal

    pub fn x_of_m(&self) -> Result<XOfM> {
        let lat = self.lattice();
        let soc = self.soc();
        let inner = lat.meet(soc, self.rad());
        let (value, _) = self.module().subquotient(
            lat.node(soc).members(),
            lat.node(inner).members(),
            format!("X({})", self.module().name()),
        )?;
        Ok(XOfM {
            value,
            length: lat.height(inner, soc),
        })
    }

    /// Semilocality against the socle-over-radical criterion.
    pub fn semilocal_via_socle(&self) -> Result<SemilocalReport> {
        if !self.is_delta_supplemented() {
            return Err(Error::NotDeltaSupplemented(self.module().name().to_string()));
        }
        let lat = self.lattice();
        let (top, zero) = (self.top(), self.zero());
        let rad = self.rad();
        let soc = self.soc();
        let inner = lat.meet(soc, rad);
        let semilocal = self.soc_in(top, rad) == top;
        let x_semisimple = self.soc_in(soc, inner) == soc;
        // finite length, hence finitely generated
        let x_finitely_generated = true;
        let socle_in_radical = lat.leq(soc, rad);
        Ok(SemilocalReport {
            semilocal,
            x_length: lat.height(inner, soc),
            x_semisimple,
            equivalence_holds: semilocal == x_finitely_generated,
            socle_in_radical,
            radical_equals_delta: socle_in_radical.then(|| rad == self.delta_in(top, zero)),
        })
    }
}

/// Classification of a ring through its left regular module.
pub fn ring_classification(
    ring: &Arc<RingTable>,
    bounds: &Bounds,
    fault: Option<Fault>,
) -> Result<RingClassification> {
    let a = Analysis::new(ModuleRep::regular(ring), bounds)?.with_fault(fault);
    classify_regular(&a)
}

/// [`ring_classification`] on an existing analysis of the regular module.
pub fn classify_regular(a: &Analysis) -> Result<RingClassification> {
    let semiperfect = a.is_supplemented();
    let delta_semiperfect = a.is_delta_supplemented();
    let semilocal = a.classify().semilocal;
    let socle_condition = if delta_semiperfect {
        a.semilocal_via_socle()?.equivalence_holds
    } else {
        true
    };
    Ok(RingClassification {
        semiperfect,
        delta_semiperfect,
        semilocal,
        socle_condition,
        consistent: semiperfect == (delta_semiperfect && semilocal)
            && (!delta_semiperfect || semilocal == socle_condition),
    })
}
