//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Oracles here are written against the element-level module
//! operations and the lattice primitives only.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use finmod::corpus::{action_key, builtin_corpus, enumerate_small_modules, CorpusEntry};
use finmod::predicates::{Analysis, Fault};
use finmod::structure::{ring_classification, PartLabel, SupplementKind};
use finmod::suite::{check_names, run_suite, SuiteConfig};
use finmod::{Bounds, ModuleRep, NodeId};

type Outcome = Result<String, String>;

fn analyses(corpus: &[CorpusEntry]) -> Vec<(String, Analysis)> {
    corpus
        .par_iter()
        .flat_map_iter(|e| {
            e.modules.iter().map(move |m| {
                let a = Analysis::from_arc(m.clone(), &Bounds::default()).expect("builtin module analyses");
                (format!("{}::{}", e.name(), m.name()), a)
            })
        })
        .collect()
}

fn first_failure(bad: Vec<String>, total: usize, what: &str) -> Outcome {
    if bad.is_empty() {
        Ok(format!("{total} {what}, 0 disagreements"))
    } else {
        Err(format!("{} of {total} {what} disagree, first: {}", bad.len(), bad[0]))
    }
}

// ---------------------------------------------------------------- 1

fn criterion_1(corpus: &[CorpusEntry], mods: &[(String, Analysis)]) -> Outcome {
    let results: Vec<(usize, Vec<String>)> = mods
        .par_iter()
        .map(|(name, a)| {
            let lat = a.lattice();
            let mut bad = Vec::new();
            let mut pairs = 0;
            for y in 0..lat.len() {
                for n in lat.down(y).iter() {
                    pairs += 1;
                    let by_definition = a.is_delta_small_in(n, y, a.zero());
                    let by_witness = a.delta_small_witness_search(n, y).holds();
                    if by_definition != by_witness {
                        bad.push(format!("{name}: N={n} Y={y} definition {by_definition} witness {by_witness}"));
                    }
                }
            }
            (pairs, bad)
        })
        .collect();
    let total = results.iter().map(|r| r.0).sum();
    let bad: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    let pairs = first_failure(bad, total, "pairs")?;

    let start = Instant::now();
    let report = run_suite(corpus, &SuiteConfig::default());
    let secs = start.elapsed().as_secs_f64();
    if !report.all_passed() {
        return Err(format!("{pairs}; suite has {} failures", report.failures()));
    }
    if secs >= 60.0 {
        return Err(format!("{pairs}; suite took {secs:.1} s"));
    }
    Ok(format!("{pairs}; suite {} checks in {secs:.2} s", report.checks.len()))
}

// ---------------------------------------------------------------- 2

fn criterion_2(mods: &[(String, Analysis)]) -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for (name, a) in mods {
        let zero = a.zero();
        for top in 0..a.lattice().len() {
            total += 1;
            let pairs = [
                ("Rad", a.rad_in(top, zero), a.rad_by_small_in(top, zero)),
                ("Soc", a.soc_in(top, zero), a.soc_by_essential_in(top, zero)),
                ("delta", a.delta_in(top, zero), a.delta_by_small_in(top, zero)),
            ];
            for (what, x, y) in pairs {
                if x != y {
                    bad.push(format!("{name} top={top}: {what} {x} vs {y}"));
                }
            }
        }
    }
    first_failure(bad, total, "submodules (as ambient module)")
}

// ---------------------------------------------------------------- 3

fn criterion_3(corpus: &[CorpusEntry]) -> Outcome {
    let entry = corpus
        .iter()
        .find(|e| e.name() == "Z/4xF2")
        .ok_or("Z/4xF2 missing from the corpus")?;
    // ring basis (1,0), (0,1); coordinate 0 is S = 0 x F2, coordinate 1 is S' = Z/2 via Z/4
    let m = ModuleRep::new(
        "S+S'",
        entry.ring.clone(),
        vec![2, 2],
        vec![vec![vec![0, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 0]]],
        &Bounds::default(),
    )
    .map_err(|e| e.to_string())?;
    if !entry.modules.iter().any(|x| action_key(x) == action_key(&m)) {
        return Err("no corpus module isomorphic to S+S'".into());
    }
    let a = Analysis::new(m, &Bounds::default()).map_err(|e| e.to_string())?;
    let lat = a.lattice();
    let s = lat
        .find(&finmod::ElemSet::from_indices(4, [0, 1]))
        .ok_or("S is not a submodule")?;
    let delta = a.delta();
    let maximal = lat.maximal_submodules().contains(&delta);
    let c = a.classify();
    let claims = [
        ("delta(M) = S", delta == s),
        ("delta(M) maximal", maximal),
        ("M delta-local", c.delta_local),
        ("M not local", !c.local),
        ("S nonsingular", !a.is_singular_section(s, a.zero())),
        ("M/S singular", a.is_singular_section(a.top(), s)),
    ];
    match claims.iter().find(|c| !c.1) {
        Some((what, _)) => Err(format!("claim failed: {what}")),
        None => Ok(claims.iter().map(|c| c.0).collect::<Vec<_>>().join(", ")),
    }
}

// ---------------------------------------------------------------- 4

/// Element-level span of submodules, for checking that parts add up.
fn element_sum(a: &Analysis, parts: &[NodeId]) -> BTreeSet<usize> {
    let m = a.module();
    let mut acc: BTreeSet<usize> = [m_zero(m)].into();
    for &p in parts {
        let members: Vec<usize> = a.lattice().node(p).members().iter().collect();
        let current: Vec<usize> = acc.iter().copied().collect();
        for x in current {
            for &y in &members {
                acc.insert(m.add(x, y));
            }
        }
    }
    acc
}

fn m_zero(m: &ModuleRep) -> usize {
    m.index_of(&finmod::Element(vec![0; m.additive_orders().len()]))
}

fn criterion_4(mods: &[(String, Analysis)]) -> Outcome {
    let mut bad = Vec::new();
    let mut decomposed = 0;
    for (name, a) in mods {
        let lat = a.lattice();
        let p1 = a.is_delta_supplemented();
        let p2 = a.maximals_have_delta_supplements();
        let p3 = match a.decompose_simple_delta_local() {
            Ok(d) => {
                decomposed += 1;
                let whole: BTreeSet<usize> = (0..a.module().size()).collect();
                if element_sum(a, &d.parts) != whole {
                    bad.push(format!("{name}: parts do not sum to M"));
                }
                for (&p, label) in d.parts.iter().zip(&d.labels) {
                    let ok = match label {
                        PartLabel::Simple => lat.down(p).len() == 2,
                        PartLabel::DeltaLocal => {
                            let dp = a.delta_of(p);
                            lat.maximal_in(a.zero(), p).contains(&dp) && a.is_delta_small_in(dp, p, a.zero())
                        }
                    };
                    if !ok {
                        bad.push(format!("{name}: part {p} is not {label:?}"));
                    }
                }
                true
            }
            Err(finmod::Error::NotDeltaSupplemented(_)) => false,
            Err(e) => {
                bad.push(format!("{name}: {e}"));
                continue;
            }
        };
        if !(p1 == p2 && p2 == p3) {
            bad.push(format!("{name}: (1) {p1} (2) {p2} (3) {p3}"));
        }
    }
    first_failure(bad, mods.len(), "modules").map(|s| format!("{s}; {decomposed} decompositions verified"))
}

// ---------------------------------------------------------------- 5

/// Supplements of `k` by definition: minimal among `L` with `K + L = M`.
fn supplements_by_minimality(a: &Analysis, k: NodeId) -> Vec<NodeId> {
    let (lat, top) = (a.lattice(), a.top());
    let sums: Vec<NodeId> = (0..lat.len()).filter(|&l| lat.join(k, l) == top).collect();
    sums.iter()
        .copied()
        .filter(|&l| !sums.iter().any(|&x| x != l && lat.leq(x, l)))
        .collect()
}

/// Composition length of a semisimple submodule by greedy atom selection.
fn semisimple_length(a: &Analysis, s: NodeId) -> usize {
    let lat = a.lattice();
    let mut acc = a.zero();
    let mut n = 0;
    for atom in lat.minimal_in(a.zero(), s) {
        if lat.meet(acc, atom) == a.zero() {
            acc = lat.join(acc, atom);
            n += 1;
        }
    }
    assert_eq!(acc, s, "socle is not a sum of atoms");
    n
}

fn criterion_5(mods: &[(String, Analysis)]) -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    for (name, a) in mods {
        let lat = a.lattice();
        let length = semisimple_length(a, a.soc());
        for k in lat.maximal_submodules() {
            let listed = supplements_by_minimality(a, k);
            for h in a.find_delta_supplements(k, SupplementKind::DeltaSupplement) {
                let h = h.witness;
                runs += 1;
                match a.extract_supplement(h, k) {
                    Ok(e) => {
                        let l = e.certificate.witness;
                        if e.descents() > length || !lat.leq(l, h) || !listed.contains(&l) {
                            bad.push(format!(
                                "{name}: K={k} H={h} -> L={l}, {} descents (length {length})",
                                e.descents()
                            ));
                        }
                    }
                    Err(err) => bad.push(format!("{name}: K={k} H={h}: {err}")),
                }
            }
        }
    }
    first_failure(bad, runs, "extractions")
}

// ---------------------------------------------------------------- 6

fn criterion_6(corpus: &[CorpusEntry]) -> Outcome {
    let mut bad = Vec::new();
    for e in corpus {
        let a = Analysis::new(ModuleRep::regular(&e.ring), &Bounds::default()).map_err(|e| e.to_string())?;
        let semiperfect = a.is_supplemented();
        let delta_semiperfect = a.is_delta_supplemented();
        let semilocal = a.classify().semilocal;
        let rc = ring_classification(&e.ring, &Bounds::default(), None).map_err(|e| e.to_string())?;
        if semiperfect != (delta_semiperfect && semilocal) || !rc.consistent {
            bad.push(format!(
                "{}: semiperfect {semiperfect}, delta-semiperfect {delta_semiperfect}, semilocal {semilocal}",
                e.name()
            ));
        }
        if !(semiperfect && delta_semiperfect && semilocal) {
            bad.push(format!("{}: a finite ring failed to be semiperfect", e.name()));
        }
    }
    first_failure(bad, corpus.len(), "rings")
}

// ---------------------------------------------------------------- 7

fn criterion_7(mods: &[(String, Analysis)]) -> Outcome {
    let mut found: [Option<String>; 4] = Default::default();
    for (name, a) in mods {
        let lat = a.lattice();
        if found[0].is_none() {
            if let Some(n) = (0..lat.len()).find(|&n| n != a.top() && a.is_delta_small(n) && !a.is_small(n)) {
                found[0] = Some(format!("{name} N={n}"));
            }
        }
        if found[1].is_none() && a.delta() != a.rad() {
            found[1] = Some(name.clone());
        }
        let c = a.classify();
        if found[2].is_none() && c.delta_local && !c.local {
            found[2] = Some(name.clone());
        }
        if found[3].is_none() && c.local && !c.delta_local {
            found[3] = Some(name.clone());
        }
    }
    let labels = [
        "delta-small not small",
        "delta != Rad",
        "delta-local not local",
        "local not delta-local",
    ];
    let mut parts = Vec::new();
    for (label, f) in labels.iter().zip(&found) {
        match f {
            Some(w) => parts.push(format!("{label}: {w}")),
            None => return Err(format!("no witness for {label}")),
        }
    }
    parts.push("ring-level separation not reproducible: finite rings are semiperfect".into());
    Ok(parts.join("; "))
}

// ---------------------------------------------------------------- 8

/// Addition and ring action of a module with at most 64 elements, as
/// bitmask images: `sum_with[x]` and `act_on[x]` over all partners.
struct Tables {
    add: Vec<Vec<usize>>,
    act: Vec<u64>,
}

impl Tables {
    fn new(m: &ModuleRep) -> Self {
        let n = m.size();
        let rs = m.ring().size();
        Tables {
            add: (0..n).map(|x| (0..n).map(|y| m.add(x, y)).collect()).collect(),
            act: (0..n).map(|x| (0..rs).fold(0u64, |acc, r| acc | 1 << m.act(r, x))).collect(),
        }
    }

    /// Smallest subset containing `start` closed under addition and the
    /// ring action.
    fn closure(&self, start: u64) -> u64 {
        let mut set = 0u64;
        let mut pending = start;
        while pending != 0 {
            let x = pending.trailing_zeros() as usize;
            pending &= pending - 1;
            if set >> x & 1 == 1 {
                continue;
            }
            set |= 1 << x;
            let mut rest = set;
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                pending |= 1 << self.add[x][y];
            }
            pending |= self.act[x];
            pending &= !set;
        }
        set
    }
}

/// All submodules, reached from `{0}` by adjoining one element at a time.
fn brute_force_submodules(m: &ModuleRep) -> HashSet<u64> {
    let t = Tables::new(m);
    let zero = t.closure(1 << m_zero(m));
    let mut seen: HashSet<u64> = [zero].into();
    let mut frontier = vec![zero];
    while let Some(n) = frontier.pop() {
        for x in (0..m.size()).filter(|&x| n >> x & 1 == 0) {
            let c = t.closure(n | 1 << x);
            if seen.insert(c) {
                frontier.push(c);
            }
        }
    }
    seen
}

fn criterion_8(corpus: &[CorpusEntry]) -> Outcome {
    let mut modules: Vec<(String, Arc<ModuleRep>)> = Vec::new();
    for e in corpus {
        for m in &e.modules {
            modules.push((format!("{}::{}", e.name(), m.name()), m.clone()));
        }
        for (i, m) in enumerate_small_modules(&e.ring, 64, 7).into_iter().enumerate() {
            modules.push((format!("{}::generated{i}", e.name()), Arc::new(m)));
        }
    }
    modules.retain(|(_, m)| m.size() <= 64);
    let bad: Vec<String> = modules
        .par_iter()
        .filter_map(|(name, m)| {
            let a = Analysis::from_arc(m.clone(), &Bounds::default()).ok()?;
            let ours: HashSet<u64> = a
                .lattice()
                .nodes()
                .iter()
                .map(|n| n.members().iter().fold(0u64, |acc, i| acc | 1 << i))
                .collect();
            let oracle = brute_force_submodules(m);
            (ours.len() != a.lattice().len() || ours != oracle)
                .then(|| format!("{name}: {} nodes vs {} by brute force", a.lattice().len(), oracle.len()))
        })
        .collect();
    first_failure(bad, modules.len(), "modules")
}

// ---------------------------------------------------------------- 9

fn criterion_9(corpus: &[CorpusEntry]) -> Outcome {
    let mut summary = Vec::new();
    for fault in Fault::ALL {
        let config = SuiteConfig {
            fault: Some(fault),
            ..SuiteConfig::default()
        };
        let report = run_suite(corpus, &config);
        // prefer checks whose passes carry weight
        let mut failing: Vec<_> = report.checks.iter().filter(|c| c.failed > 0).collect();
        failing.sort_by_key(|c| c.vacuous_by_design);
        let Some((check, w)) = failing
            .iter()
            .find_map(|c| c.witnesses.first().map(|w| (c.name.clone(), w.clone())))
        else {
            return Err(format!("{fault:?}: no named check failed with a witness"));
        };
        // replay on the witness instance alone
        let (ring, module) = w.instance.split_once("::").ok_or("malformed witness instance")?;
        let mut entry = corpus
            .iter()
            .find(|e| e.name() == ring)
            .ok_or("witness ring not in corpus")?
            .clone();
        entry.modules.retain(|m| m.name() == module);
        let replay = run_suite(&[entry], &config);
        if replay.check(&check).map_or(0, |c| c.failed) == 0 {
            return Err(format!("{fault:?}: {check} on {} did not replay", w.instance));
        }
        summary.push(format!("{fault:?}->{check}"));
    }
    Ok(summary.join(", "))
}

fn main() -> ExitCode {
    let corpus = builtin_corpus();
    let mods = analyses(&corpus);
    assert!(check_names().len() >= 20);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("delta-small oracle equivalence", Box::new(|| criterion_1(&corpus, &mods))),
        ("double computation of Rad, Soc, delta", Box::new(|| criterion_2(&mods))),
        ("S + S' over Z/4 x F2", Box::new(|| criterion_3(&corpus))),
        ("three-way delta-supplemented equivalence", Box::new(|| criterion_4(&mods))),
        ("supplement extraction", Box::new(|| criterion_5(&mods))),
        ("ring classification consistency", Box::new(|| criterion_6(&corpus))),
        ("separation witnesses", Box::new(|| criterion_7(&mods))),
        ("lattice kernel oracle", Box::new(|| criterion_8(&corpus))),
        ("fault injection", Box::new(|| criterion_9(&corpus))),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title} [{secs:.1} s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {title} [{secs:.1} s]: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
