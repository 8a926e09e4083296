//! Named theorem checks run exhaustively over a corpus.
//!
//! Every check is an implication or an identity quantified over all
//! applicable submodules of every module. An instance whose premise fails is
//! counted as vacuous. Failures are collected with replayable witnesses
//! (instance name plus generator lists of the submodules involved) and never
//! abort the run.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Bounds, Element, ModuleRep};
use crate::corpus::CorpusEntry;
use crate::error::Error;
use crate::lattice::NodeId;
use crate::predicates::{Analysis, DeltaSmallWitness, Fault};
use crate::structure::{classify_regular, SupplementKind};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub bounds: Bounds,
    /// Seed used for generated modules, if any were added to the corpus.
    pub seed: Option<u64>,
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSubmodule {
    pub role: String,
    pub generators: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// `ring::module`.
    pub instance: String,
    pub submodules: Vec<NamedSubmodule>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub anchor: String,
    pub instances_run: usize,
    pub passed: usize,
    pub failed: usize,
    pub vacuous_count: usize,
    /// No instance met the premise.
    pub vacuous: bool,
    /// The statement collapses at finite scale; passes here carry no weight.
    pub vacuous_by_design: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub instance: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
    pub skipped: Vec<Skipped>,
    pub config: SuiteConfig,
    pub instances: usize,
    pub wall_time_ms: f64,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Every check is vacuous.
    pub fn vacuous(&self) -> bool {
        self.checks.iter().all(|c| c.vacuous)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.failed > 0 {
                "FAIL"
            } else if c.vacuous {
                "VACUOUS"
            } else {
                "ok"
            };
            out.push_str(&format!(
                "{:<22} {:<7} run={:<6} passed={:<6} failed={:<4} vacuous={:<6}{}\n",
                c.name,
                status,
                c.instances_run,
                c.passed,
                c.failed,
                c.vacuous_count,
                if c.vacuous_by_design { " (vacuous by design)" } else { "" }
            ));
            for w in &c.witnesses {
                out.push_str(&format!("    {}: {}", w.instance, w.detail));
                for s in &w.submodules {
                    let gens: Vec<String> = s.generators.iter().map(|e| e.to_string()).collect();
                    out.push_str(&format!(" {}=<{}>", s.role, gens.join(",")));
                }
                out.push('\n');
            }
        }
        for s in &self.skipped {
            out.push_str(&format!("skipped {}: {}\n", s.instance, s.reason));
        }
        out.push_str(&format!(
            "{} checks, {} instances, {} failures\n",
            self.checks.len(),
            self.instances,
            self.failures()
        ));
        out
    }
}

enum Outcome {
    Pass,
    Vacuous,
    Fail {
        subs: Vec<(&'static str, NodeId)>,
        detail: String,
    },
}

fn expect(ok: bool, subs: Vec<(&'static str, NodeId)>, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail {
            subs,
            detail: detail(),
        }
    }
}

fn from_error(e: Error, subs: Vec<(&'static str, NodeId)>) -> Outcome {
    Outcome::Fail {
        subs,
        detail: e.to_string(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scope {
    Module,
    /// Run once per entry on the regular module.
    Ring,
}

struct Check {
    name: &'static str,
    anchor: &'static str,
    scope: Scope,
    by_design: bool,
    run: fn(&Analysis, &Bounds) -> Vec<Outcome>,
}

fn nodes(a: &Analysis) -> std::ops::Range<NodeId> {
    0..a.lattice().len()
}

fn small_implies_delta_small(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    nodes(a)
        .map(|n| {
            if !a.is_small(n) {
                return Outcome::Vacuous;
            }
            expect(a.is_delta_small(n), vec![("N", n)], || "small but not delta-small".into())
        })
        .collect()
}

fn witness_characterization(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let (lat, top, zero) = (a.lattice(), a.top(), a.zero());
    nodes(a)
        .map(|n| {
            let by_definition = a.is_delta_small(n);
            let search = a.delta_small_witness_search(n, top);
            if by_definition != search.holds() {
                return Outcome::Fail {
                    subs: vec![("N", n)],
                    detail: format!(
                        "definition says {by_definition}, complement search says {}",
                        search.holds()
                    ),
                };
            }
            if let DeltaSmallWitness::Confirmed(pairs) = search {
                for (x, y) in pairs {
                    let ok = lat.leq(y, n)
                        && lat.meet(x, y) == zero
                        && lat.sums_to(x, y, top)
                        && a.is_projective_semisimple(y);
                    if !ok {
                        return Outcome::Fail {
                            subs: vec![("N", n), ("X", x), ("Y", y)],
                            detail: "complement witness does not verify".into(),
                        };
                    }
                }
            }
            Outcome::Pass
        })
        .collect()
}

fn rad_eq(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let (x, y) = (a.rad_in(a.top(), a.zero()), a.rad_by_small_in(a.top(), a.zero()));
    vec![expect(x == y, vec![("meet_of_maximals", x), ("sum_of_smalls", y)], || {
        "radical computations disagree".into()
    })]
}

fn soc_eq(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let (x, y) = (a.soc_in(a.top(), a.zero()), a.soc_by_essential_in(a.top(), a.zero()));
    vec![expect(x == y, vec![("sum_of_minimals", x), ("meet_of_essentials", y)], || {
        "socle computations disagree".into()
    })]
}

fn delta_eq(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let (x, y) = (a.delta_in(a.top(), a.zero()), a.delta_by_small_in(a.top(), a.zero()));
    vec![expect(x == y, vec![("reject", x), ("sum_of_delta_smalls", y)], || {
        "delta computations disagree".into()
    })]
}

fn essential_maximals(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let delta = a.delta();
    a.lattice()
        .maximal_submodules()
        .into_iter()
        .map(|k| {
            if !a.is_essential(k) {
                return Outcome::Vacuous;
            }
            let singular = a.is_singular_section(a.top(), k);
            let below = a.lattice().leq(delta, k);
            expect(singular && below, vec![("K", k), ("delta", delta)], || {
                format!("essential maximal K: quotient singular {singular}, delta below K {below}")
            })
        })
        .collect()
}

fn delta_supplement_pairs(a: &Analysis) -> Vec<(NodeId, NodeId, bool)> {
    let top = a.top();
    let mut out = Vec::new();
    for k in nodes(a) {
        for l in nodes(a) {
            if a.lattice().sums_to(k, l, top) {
                out.push((k, l, a.is_supplement_of(l, k, top, SupplementKind::DeltaSupplement)));
            }
        }
    }
    out
}

fn lem_2_3(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    delta_supplement_pairs(a)
        .into_iter()
        .map(|(k, l, is_supp)| {
            if !is_supp {
                return Outcome::Vacuous;
            }
            expect(a.is_delta_coclosed(l), vec![("K", k), ("L", l)], || {
                "delta-supplement L of K is not delta-coclosed".into()
            })
        })
        .collect()
}

/// `∀ X ≤ n: X ≪_δ M ⇒ X ≪_δ n`, returning the first failing `X`.
fn hereditary_delta_small(a: &Analysis, n: NodeId) -> Option<NodeId> {
    a.lattice()
        .down(n)
        .iter()
        .find(|&x| a.is_delta_small(x) && !a.is_delta_small_in(x, n, a.zero()))
}

fn prop_2_5_1(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let delta = a.delta();
    nodes(a)
        .map(|n| {
            if !a.is_delta_coclosed(n) {
                return Outcome::Vacuous;
            }
            if let Some(x) = hereditary_delta_small(a, n) {
                return Outcome::Fail {
                    subs: vec![("N", n), ("K", x)],
                    detail: "K delta-small in M but not in delta-coclosed N".into(),
                };
            }
            let meet = a.lattice().meet(n, delta);
            let dn = a.delta_of(n);
            expect(dn == meet, vec![("N", n), ("delta_N", dn), ("N_meet_delta_M", meet)], || {
                "delta(N) differs from N ∩ delta(M)".into()
            })
        })
        .collect()
}

fn prop_2_5_2(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let (lat, top, zero) = (a.lattice(), a.top(), a.zero());
    let mut out = Vec::new();
    for n in nodes(a) {
        if !a.is_delta_coclosed(n) {
            out.push(Outcome::Vacuous);
            continue;
        }
        for x in lat.down(n).iter().filter(|&x| x != n) {
            if !a.is_delta_small_in(n, top, x) {
                out.push(Outcome::Vacuous);
                continue;
            }
            let complement = lat.lex_min(
                lat.down(n)
                    .iter()
                    .filter(|&y| lat.meet(x, y) == zero && lat.join(x, y) == n),
            );
            out.push(expect(complement.is_some(), vec![("N", n), ("X", x)], || {
                "X has no complement in N".into()
            }));
        }
    }
    out
}

fn prop_2_5_3(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    nodes(a)
        .map(|n| {
            if !(a.is_delta_coclosed(n) && a.is_singular_section(n, a.zero())) {
                return Outcome::Vacuous;
            }
            expect(a.is_coclosed(n), vec![("N", n)], || {
                "singular delta-coclosed N is not coclosed".into()
            })
        })
        .collect()
}

fn is_some_delta_supplement(a: &Analysis, l: NodeId) -> bool {
    nodes(a).any(|k| a.is_supplement_of(l, k, a.top(), SupplementKind::DeltaSupplement))
}

fn cor_2_6(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let delta = a.delta();
    nodes(a)
        .map(|l| {
            if !is_some_delta_supplement(a, l) {
                return Outcome::Vacuous;
            }
            let (dl, meet) = (a.delta_of(l), a.lattice().meet(l, delta));
            expect(dl == meet, vec![("N", l), ("delta_N", dl)], || {
                "delta-supplement N has delta(N) ≠ N ∩ delta(M)".into()
            })
        })
        .collect()
}

fn cor_2_7_chain(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let top = a.top();
    nodes(a)
        .map(|n| {
            let p1 = is_some_delta_supplement(a, n);
            let p2 = a.is_delta_coclosed(n);
            let p3 = hereditary_delta_small(a, n).is_none();
            let weak = nodes(a)
                .any(|k| a.is_supplement_of(k, n, top, SupplementKind::WeakDeltaSupplement));
            let ok = (!p1 || p2) && (!p2 || p3) && (!(p3 && weak) || p1);
            expect(ok, vec![("N", n)], || {
                format!("delta-supplement {p1}, delta-coclosed {p2}, hereditary {p3}, weak supplement exists {weak}")
            })
        })
        .collect()
}

fn lem_3_3(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let top = a.top();
    let mut out = Vec::new();
    for h in nodes(a) {
        if !a.classify_in(h).local {
            out.push(Outcome::Vacuous);
            continue;
        }
        for k in nodes(a).filter(|&k| k != top && a.lattice().sums_to(h, k, top)) {
            out.push(expect(
                a.is_supplement_of(h, k, top, SupplementKind::Supplement),
                vec![("H", h), ("K", k)],
                || "local H is not a supplement of K".into(),
            ));
        }
    }
    out
}

fn lem_3_4(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    nodes(a)
        .map(|h| {
            if !a.classify_in(h).delta_local {
                return Outcome::Vacuous;
            }
            expect(a.is_delta_supplemented_in(h), vec![("H", h)], || {
                "delta-local H is not delta-supplemented".into()
            })
        })
        .collect()
}

fn lem_3_6(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let (lat, top, soc) = (a.lattice(), a.top(), a.soc());
    let mut out = Vec::new();
    for k in lat.maximal_submodules() {
        if !lat.leq(soc, k) {
            out.push(Outcome::Vacuous);
            continue;
        }
        for l in a.find_delta_supplements_in(k, top, SupplementKind::DeltaSupplement) {
            out.push(expect(a.classify_in(l.witness).delta_local, vec![("K", k), ("L", l.witness)], || {
                "delta-supplement of a maximal K over the socle is not delta-local".into()
            }));
        }
    }
    out
}

fn prop_3_7_equiv(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let supplemented = a.is_delta_supplemented();
    let maximals = a.maximals_have_delta_supplements();
    let decomposition = match a.decompose_simple_delta_local() {
        Ok(d) => {
            if !a.verify_decomposition(&d) {
                let subs = d.parts.iter().map(|&p| ("part", p)).collect();
                return vec![Outcome::Fail {
                    subs,
                    detail: "decomposition parts do not verify".into(),
                }];
            }
            true
        }
        Err(Error::NotDeltaSupplemented(_)) => false,
        Err(e) => return vec![from_error(e, Vec::new())],
    };
    let sum_of_parts = a.is_sum_of_simple_and_delta_local();
    let agree = supplemented == maximals && maximals == decomposition && decomposition == sum_of_parts;
    vec![expect(agree, Vec::new(), || {
        format!(
            "delta-supplemented {supplemented}, maximals supplemented {maximals}, \
             decomposition {decomposition}, sum of simple and delta-local {sum_of_parts}"
        )
    })]
}

fn lem_4_1(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    if !a.is_delta_supplemented() {
        return vec![Outcome::Vacuous];
    }
    let r = match a.semilocal_via_socle() {
        Ok(r) => r,
        Err(e) => return vec![from_error(e, Vec::new())],
    };
    let x = match a.x_of_m() {
        Ok(x) => x,
        Err(e) => return vec![from_error(e, Vec::new())],
    };
    let ok = r.equivalence_holds
        && r.x_semisimple
        && x.length == r.x_length
        && (r.x_length == 0) == r.socle_in_radical
        && r.radical_equals_delta != Some(false);
    vec![expect(ok, vec![("Soc", a.soc()), ("Rad", a.rad())], || format!("{r:?}"))]
}

fn prop_4_2(a: &Analysis, bounds: &Bounds) -> Vec<Outcome> {
    let (lat, top, zero) = (a.lattice(), a.top(), a.zero());
    let gens = a.min_generator_count(top);
    let projective = match a.is_projective(gens, bounds) {
        Ok(p) => p,
        Err(Error::SearchBoundExceeded { .. }) => return vec![Outcome::Vacuous],
        Err(e) => return vec![from_error(e, Vec::new())],
    };
    let rad = a.rad();
    if !(projective && a.classify().semilocal && a.is_delta_supplemented() && a.is_small(rad)) {
        return vec![Outcome::Vacuous];
    }
    if !a.is_delta_lifting() {
        return vec![Outcome::Fail {
            subs: Vec::new(),
            detail: "projective delta-supplemented module is not delta-lifting".into(),
        }];
    }
    let soc = a.soc();
    let inner = lat.meet(soc, rad);
    let Some(d) = lat.lex_min(
        lat.down(soc)
            .iter()
            .filter(|&d| lat.meet(d, inner) == zero && lat.join(d, inner) == soc),
    ) else {
        return vec![Outcome::Fail {
            subs: vec![("Soc", soc), ("Rad", rad)],
            detail: "Soc ∩ Rad has no complement in Soc".into(),
        }];
    };
    let Some(n) = lat.lex_min(nodes(a).filter(|&n| lat.meet(d, n) == zero && lat.join(d, n) == top)) else {
        return vec![Outcome::Fail {
            subs: vec![("D", d)],
            detail: "D is not a direct summand".into(),
        }];
    };
    let n_rad = a.rad_in(n, zero);
    let ok = n_rad == a.delta_in(n, zero) && n_rad == rad && a.is_supplemented_in(n) && a.is_supplemented();
    vec![expect(ok, vec![("D", d), ("N", n)], || {
        "complement N of the semisimple part fails Rad(N) = delta(N) = Rad(M) or supplementedness".into()
    })]
}

fn cor_4_3(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    match classify_regular(a) {
        Ok(c) => vec![expect(c.consistent, Vec::new(), || format!("{c:?}"))],
        Err(e) => vec![from_error(e, Vec::new())],
    }
}

fn lem_4_4_algo(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let (lat, top) = (a.lattice(), a.top());
    let mut out = Vec::new();
    for k in lat.maximal_submodules() {
        let supplements = match a.find_supplements(k) {
            Ok(s) => s,
            Err(e) => {
                out.push(from_error(e, vec![("K", k)]));
                continue;
            }
        };
        for h in a.find_delta_supplements_in(k, top, SupplementKind::DeltaSupplement) {
            let h = h.witness;
            let subs = vec![("K", k), ("H", h)];
            out.push(match a.extract_supplement(h, k) {
                Ok(e) => {
                    let l = e.certificate.witness;
                    let c = e.certificate.checks;
                    let listed = supplements.iter().any(|s| s.witness == l);
                    let ok = e.descents() <= e.bound
                        && lat.leq(l, h)
                        && listed
                        && c.sum_is_whole
                        && c.intersection_condition
                        && c.minimal == Some(true);
                    expect(ok, vec![("K", k), ("H", h), ("L", l)], || {
                        format!("descents {} (bound {}), listed {listed}, checks {c:?}", e.descents(), e.bound)
                    })
                }
                Err(e) => from_error(e, subs),
            });
        }
    }
    out
}

fn cor_4_5(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let (s, d) = (a.is_supplemented(), a.is_delta_supplemented());
    vec![expect(s == d, Vec::new(), || format!("supplemented {s}, delta-supplemented {d}"))]
}

fn cor_4_6(a: &Analysis, _: &Bounds) -> Vec<Outcome> {
    let (lat, top, zero, soc) = (a.lattice(), a.top(), a.zero(), a.soc());
    let mut out = Vec::new();
    for k in lat.maximal_submodules() {
        if !lat.leq(soc, k) {
            let simple = lat.lex_min(
                lat.minimal_submodules()
                    .into_iter()
                    .filter(|&s| lat.meet(k, s) == zero && lat.sums_to(k, s, top)),
            );
            let ok = lat.join(k, soc) == top
                && simple.is_some_and(|s| a.is_supplement_of(s, k, top, SupplementKind::Supplement));
            out.push(expect(ok, vec![("K", k)], || {
                "maximal K missing the socle has no simple supplement".into()
            }));
        } else if let Some(h) = a.least_supplement(k, top, SupplementKind::DeltaSupplement) {
            out.push(match a.extract_supplement(h, k) {
                Ok(_) => Outcome::Pass,
                Err(e) => from_error(e, vec![("K", k), ("H", h)]),
            });
        } else {
            out.push(Outcome::Vacuous);
        }
    }
    let (s, d) = (a.is_supplemented(), a.is_delta_supplemented());
    out.push(expect(s == d, Vec::new(), || {
        format!("cofinitely supplemented {s}, cofinitely delta-supplemented {d}")
    }));
    out
}

fn proj_dichotomy(a: &Analysis, bounds: &Bounds) -> Vec<Outcome> {
    let lat = a.lattice();
    lat.minimal_submodules()
        .into_iter()
        .map(|s| {
            let by_dichotomy = !a.is_singular_section(s, a.zero());
            let (module, _) = match a.module().subquotient(
                lat.node(s).members(),
                lat.node(a.zero()).members(),
                "S",
            ) {
                Ok(m) => m,
                Err(e) => return from_error(e, vec![("S", s)]),
            };
            let oracle = Analysis::new(module, bounds)
                .map(|x| x.with_fault(a.fault()))
                .and_then(|x| x.is_projective(1, bounds));
            match oracle {
                Ok(p) => expect(p == by_dichotomy, vec![("S", s)], || {
                    format!("nonsingular {by_dichotomy}, split-surjection search {p}")
                }),
                Err(e) => from_error(e, vec![("S", s)]),
            }
        })
        .collect()
}

const CHECKS: &[Check] = &[
    Check {
        name: "COR-2.6",
        anchor: "a delta-supplement N has delta(N) equal to N meet delta(M)",
        scope: Scope::Module,
        by_design: false,
        run: cor_2_6,
    },
    Check {
        name: "COR-2.7-CHAIN",
        anchor: "delta-supplement implies delta-coclosed implies hereditary delta-smallness, which with a weak delta-supplement gives back a delta-supplement",
        scope: Scope::Module,
        by_design: false,
        run: cor_2_7_chain,
    },
    Check {
        name: "COR-4.3",
        anchor: "a ring is semiperfect exactly when it is delta-semiperfect and semilocal",
        scope: Scope::Ring,
        by_design: false,
        run: cor_4_3,
    },
    Check {
        name: "COR-4.5",
        anchor: "with finitely generated socle, supplemented and delta-supplemented coincide",
        scope: Scope::Module,
        by_design: false,
        run: cor_4_5,
    },
    Check {
        name: "COR-4.6-CONSISTENCY",
        anchor: "cofinitely supplemented and cofinitely delta-supplemented coincide under finitely generated socle",
        scope: Scope::Module,
        by_design: true,
        run: cor_4_6,
    },
    Check {
        name: "DELTA-EQ",
        anchor: "delta(M) as the reject of singular simples equals the sum of delta-small submodules",
        scope: Scope::Module,
        by_design: false,
        run: delta_eq,
    },
    Check {
        name: "LEM-2.3",
        anchor: "every delta-supplement is delta-coclosed",
        scope: Scope::Module,
        by_design: false,
        run: lem_2_3,
    },
    Check {
        name: "LEM-3.3",
        anchor: "a local submodule H is a supplement of every proper K with H + K = M",
        scope: Scope::Module,
        by_design: false,
        run: lem_3_3,
    },
    Check {
        name: "LEM-3.4",
        anchor: "delta-local modules are delta-supplemented",
        scope: Scope::Module,
        by_design: false,
        run: lem_3_4,
    },
    Check {
        name: "LEM-3.6",
        anchor: "a delta-supplement of a maximal submodule containing the socle is delta-local",
        scope: Scope::Module,
        by_design: false,
        run: lem_3_6,
    },
    Check {
        name: "LEM-4.1",
        anchor: "a delta-supplemented module is semilocal exactly when Soc/(Soc meet Rad) is finitely generated",
        scope: Scope::Module,
        by_design: false,
        run: lem_4_1,
    },
    Check {
        name: "LEM-4.4-ALGO",
        anchor: "a maximal K with delta-supplement H has a supplement inside H, found by socle descent",
        scope: Scope::Module,
        by_design: false,
        run: lem_4_4_algo,
    },
    Check {
        name: "PROJ-DICHOTOMY",
        anchor: "a simple module is projective exactly when it is nonsingular",
        scope: Scope::Module,
        by_design: false,
        run: proj_dichotomy,
    },
    Check {
        name: "PROP-2.5-1",
        anchor: "inside a delta-coclosed N, delta-smallness in M descends to N and delta(N) = N meet delta(M)",
        scope: Scope::Module,
        by_design: false,
        run: prop_2_5_1,
    },
    Check {
        name: "PROP-2.5-2",
        anchor: "a delta-coclosed N splits over any proper X with N/X delta-small in M/X",
        scope: Scope::Module,
        by_design: false,
        run: prop_2_5_2,
    },
    Check {
        name: "PROP-2.5-3",
        anchor: "a singular delta-coclosed submodule is coclosed",
        scope: Scope::Module,
        by_design: false,
        run: prop_2_5_3,
    },
    Check {
        name: "PROP-3.7-EQUIV",
        anchor: "delta-supplemented, every maximal has a delta-supplement, and sum of simple and delta-local parts are equivalent",
        scope: Scope::Module,
        by_design: false,
        run: prop_3_7_equiv,
    },
    Check {
        name: "PROP-4.2",
        anchor: "projective semilocal delta-supplemented modules with small radical are supplemented, through delta-lifting",
        scope: Scope::Module,
        by_design: false,
        run: prop_4_2,
    },
    Check {
        name: "RAD-EQ",
        anchor: "the meet of maximal submodules equals the sum of small submodules",
        scope: Scope::Module,
        by_design: false,
        run: rad_eq,
    },
    Check {
        name: "REMARK-ESSMAX",
        anchor: "an essential maximal K has singular quotient and contains delta(M)",
        scope: Scope::Module,
        by_design: false,
        run: essential_maximals,
    },
    Check {
        name: "SMALL-DELTA-SMALL",
        anchor: "small submodules are delta-small",
        scope: Scope::Module,
        by_design: false,
        run: small_implies_delta_small,
    },
    Check {
        name: "SOC-EQ",
        anchor: "the sum of minimal submodules equals the meet of essential submodules",
        scope: Scope::Module,
        by_design: false,
        run: soc_eq,
    },
    Check {
        name: "ZHOU-L12",
        anchor: "N is delta-small exactly when every X with X + N = M has a projective semisimple complement inside N",
        scope: Scope::Module,
        by_design: false,
        run: witness_characterization,
    },
];

/// Names of all checks, sorted.
pub fn check_names() -> Vec<&'static str> {
    let mut names: Vec<_> = CHECKS.iter().map(|c| c.name).collect();
    names.sort_unstable();
    names
}

struct Job<'a> {
    entry: &'a CorpusEntry,
    module: &'a Arc<ModuleRep>,
    ring_level: bool,
}

enum Resolved {
    Pass,
    Vacuous,
    Fail(Witness),
}

fn run_job(job: &Job, instance: &str, config: &SuiteConfig) -> Result<Vec<(usize, Vec<Resolved>)>, String> {
    let bounds = &config.bounds;
    if job.entry.ring.size() > bounds.max_ring_size {
        return Err(format!("ring size {} exceeds the bound", job.entry.ring.size()));
    }
    if job.module.size() > bounds.max_module_size {
        return Err(format!("module size {} exceeds the bound", job.module.size()));
    }
    let a = Analysis::from_arc(job.module.clone(), bounds)
        .map_err(|e| e.to_string())?
        .with_fault(config.fault);
    let scope = if job.ring_level { Scope::Ring } else { Scope::Module };
    let resolve = |o: Outcome| match o {
        Outcome::Pass => Resolved::Pass,
        Outcome::Vacuous => Resolved::Vacuous,
        Outcome::Fail { subs, detail } => Resolved::Fail(Witness {
            instance: instance.to_string(),
            submodules: subs
                .into_iter()
                .map(|(role, id)| NamedSubmodule {
                    role: role.to_string(),
                    generators: a.lattice().node(id).generator_elements(),
                })
                .collect(),
            detail,
        }),
    };
    Ok(CHECKS
        .iter()
        .enumerate()
        .filter(|(_, c)| c.scope == scope)
        .map(|(i, c)| (i, (c.run)(&a, bounds).into_iter().map(resolve).collect()))
        .collect())
}

/// Runs every check over every module of every entry. Ring-level checks run
/// once per entry on the regular module. Entries and modules are processed
/// in parallel; the report is sorted by check name, then instance.
pub fn run_suite(corpus: &[CorpusEntry], config: &SuiteConfig) -> SuiteReport {
    let start = Instant::now();
    let regulars: Vec<Arc<ModuleRep>> = corpus
        .iter()
        .map(|e| Arc::new(ModuleRep::regular(&e.ring).with_name("R(regular)")))
        .collect();
    let mut jobs = Vec::new();
    for (entry, regular) in corpus.iter().zip(&regulars) {
        jobs.push(Job {
            entry,
            module: regular,
            ring_level: true,
        });
        jobs.extend(entry.modules.iter().map(|module| Job {
            entry,
            module,
            ring_level: false,
        }));
    }

    let results: Vec<_> = jobs
        .par_iter()
        .map(|job| {
            let instance = format!("{}::{}", job.entry.name(), job.module.name());
            let result = run_job(job, &instance, config);
            (instance, result)
        })
        .collect();

    let mut checks: Vec<CheckReport> = CHECKS
        .iter()
        .map(|c| CheckReport {
            name: c.name.to_string(),
            anchor: c.anchor.to_string(),
            instances_run: 0,
            passed: 0,
            failed: 0,
            vacuous_count: 0,
            vacuous: true,
            vacuous_by_design: c.by_design,
            witnesses: Vec::new(),
        })
        .collect();
    let mut skipped = Vec::new();
    let mut instances = 0;
    for (instance, result) in results {
        let outcomes = match result {
            Ok(o) => o,
            Err(reason) => {
                skipped.push(Skipped { instance, reason });
                continue;
            }
        };
        instances += 1;
        for (idx, list) in outcomes {
            let report = &mut checks[idx];
            for o in list {
                report.instances_run += 1;
                match o {
                    Resolved::Pass => report.passed += 1,
                    Resolved::Vacuous => report.vacuous_count += 1,
                    Resolved::Fail(w) => {
                        report.failed += 1;
                        report.witnesses.push(w);
                    }
                }
            }
        }
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    for c in &mut checks {
        c.vacuous = c.passed + c.failed == 0;
        c.witnesses.sort_by(|a, b| a.instance.cmp(&b.instance));
    }
    skipped.sort_by(|a, b| a.instance.cmp(&b.instance));
    SuiteReport {
        checks,
        skipped,
        config: config.clone(),
        instances,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}
