//! Built-in instances, instance-file loading and seeded module generation.

use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Bounds, InstanceFile, ModuleRep, RingRef, RingSpec, RingTable};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::{extend_submodule, SubmoduleLattice};

/// A ring together with modules over it.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub ring: Arc<RingTable>,
    pub modules: Vec<Arc<ModuleRep>>,
    pub tags: Vec<String>,
}

impl CorpusEntry {
    pub fn name(&self) -> &str {
        self.ring.name()
    }

    pub fn module(&self, name: &str) -> Result<&Arc<ModuleRep>> {
        self.modules
            .iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::UnknownModule(name.to_string()))
    }

    pub fn to_instance(&self) -> InstanceFile {
        InstanceFile {
            ring: self.ring.to_spec(),
            modules: self
                .modules
                .iter()
                .map(|m| {
                    let mut spec = m.to_spec();
                    spec.ring = RingRef::Name(self.ring.name().to_string());
                    spec
                })
                .collect(),
            tags: self.tags.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_instance()).expect("instance serializes")
    }
}

/// Parses and validates an instance file. A file without modules gets the
/// regular module, named `R`.
pub fn load_instance(text: &str, bounds: &Bounds) -> Result<CorpusEntry> {
    let file: InstanceFile = serde_json::from_str(text)?;
    let ring = Arc::new(RingTable::from_spec(&file.ring, bounds)?);
    let mut modules = Vec::with_capacity(file.modules.len());
    for spec in &file.modules {
        modules.push(Arc::new(ModuleRep::from_spec(spec, &ring, bounds)?));
    }
    if modules.is_empty() {
        modules.push(Arc::new(ModuleRep::regular(&ring).with_name("R")));
    }
    Ok(CorpusEntry {
        ring,
        modules,
        tags: file.tags,
    })
}

pub fn load_path(path: &Path, bounds: &Bounds) -> Result<CorpusEntry> {
    load_instance(&fs::read_to_string(path)?, bounds)
}

/// Every `*.json` file in `dir`, in file-name order.
pub fn load_dir(dir: &Path, bounds: &Bounds) -> Result<Vec<CorpusEntry>> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_path(p, bounds)).collect()
}

fn ring(name: &str, orders: Vec<u32>, one: Vec<i64>, mul: Vec<Vec<Vec<i64>>>) -> Arc<RingTable> {
    let spec = RingSpec {
        name: name.into(),
        additive_orders: orders,
        one,
        mul,
    };
    Arc::new(RingTable::from_spec(&spec, &Bounds::default()).expect("builtin ring is valid"))
}

/// The rings of the built-in corpus, with their tags.
pub fn builtin_rings() -> Vec<(Arc<RingTable>, Vec<&'static str>)> {
    let mut rings = Vec::new();
    for n in [2, 3, 4, 6, 8, 9, 12, 16] {
        let mut tags = vec!["commutative", "cyclic"];
        if [2, 3].contains(&n) {
            tags.push("field");
        }
        rings.push((Arc::new(RingTable::cyclic(n).expect("Z/n is valid")), tags));
    }
    let idempotents = vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]];
    rings.push((
        ring("F2xF2", vec![2, 2], vec![1, 1], idempotents.clone()),
        vec!["commutative", "semisimple"],
    ));
    rings.push((
        ring("Z/4xF2", vec![4, 2], vec![1, 1], idempotents),
        vec!["commutative", "mixed-simples"],
    ));
    // basis e11, e12, e22
    rings.push((
        ring(
            "UT2(F2)",
            vec![2, 2, 2],
            vec![1, 0, 1],
            vec![
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]],
                vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 1, 0]],
                vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]],
            ],
        ),
        vec!["noncommutative"],
    ));
    // basis 1, x
    rings.push((
        ring(
            "F2[x]/(x^2)",
            vec![2, 2],
            vec![1, 0],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
        ),
        vec!["commutative", "local"],
    ));
    rings
}

/// Orders and action matrices, minimized over coordinate permutations.
/// Isomorphic modules presented in permuted bases get the same key.
pub fn action_key(m: &ModuleRep) -> (Vec<u32>, Vec<Vec<Vec<u32>>>) {
    let k = m.additive_orders().len();
    let present = |p: &[usize]| {
        let orders = p.iter().map(|&i| m.additive_orders()[i]).collect();
        let actions = (0..m.ring().rank())
            .map(|b| {
                let a = m.action_matrix(b);
                p.iter()
                    .map(|&r| p.iter().map(|&c| a[r][c]).collect())
                    .collect()
            })
            .collect();
        (orders, actions)
    };
    if k > 7 {
        return present(&(0..k).collect::<Vec<_>>());
    }
    (0..k)
        .permutations(k)
        .map(|p| present(&p))
        .min()
        .expect("at least the identity permutation")
}

/// Two-sided annihilator `{r : rM = 0}`.
fn annihilator(m: &ModuleRep) -> ElemSet {
    let zero = ElemSet::from_indices(m.size(), [0]);
    let mut ann = ElemSet::full(m.ring().size());
    for x in 0..m.size() {
        ann.intersect_with(&m.annihilator_into(x, &zero));
    }
    ann
}

fn builtin_entry(ring: Arc<RingTable>, tags: Vec<&'static str>) -> CorpusEntry {
    let bounds = Bounds::default();
    let regular = Arc::new(ModuleRep::regular(&ring).with_name("R"));
    let lattice = SubmoduleLattice::build(&regular, &bounds).expect("regular lattice fits");
    let mut seen: HashSet<_> = [action_key(&regular)].into();
    let mut modules = vec![regular.clone()];

    let mut ideals: Vec<usize> = (1..lattice.len()).collect();
    ideals.sort_by_key(|&i| (lattice.size_of(i), lattice.lex_rank(i)));
    let maximal = lattice.maximal_submodules();
    let mut simples: Vec<(Arc<ModuleRep>, ElemSet)> = Vec::new();
    for i in ideals {
        let node = lattice.node(i);
        let name = if i == lattice.top() {
            "0".to_string()
        } else {
            let gens = node.generator_elements().iter().map(|e| e.to_string()).join(",");
            format!("R/<{gens}>")
        };
        let (q, _) = regular.quotient(node.members()).expect("quotient by a left ideal");
        let q = Arc::new(q.with_name(name));
        if maximal.contains(&i) {
            let ann = annihilator(&q);
            if !simples.iter().any(|(_, a)| *a == ann) {
                simples.push((q.clone(), ann));
            }
        }
        if seen.insert(action_key(&q)) {
            modules.push(q);
        }
    }

    let mut extra = Vec::new();
    for (a, b) in (0..simples.len()).tuple_combinations::<(_, _)>().chain((0..simples.len()).map(|i| (i, i))) {
        extra.push((simples[a].0.clone(), simples[b].0.clone()));
    }
    if ring.size() <= 16 {
        for (s, _) in &simples {
            extra.push((regular.clone(), s.clone()));
        }
    }
    if ring.size() <= 8 {
        extra.push((regular.clone(), regular.clone()));
    }
    for (a, b) in extra {
        let sum = a.direct_sum(&b).expect("same ring").module;
        let sum = sum.with_name(format!("{}+{}", a.name(), b.name()));
        if seen.insert(action_key(&sum)) {
            modules.push(Arc::new(sum));
        }
    }

    CorpusEntry {
        ring,
        modules,
        tags: std::iter::once("builtin").chain(tags).map(String::from).collect(),
    }
}

/// The built-in corpus: for each built-in ring, the regular module, its
/// quotients by left ideals, sums of two simples, and a few sums with the
/// regular module.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    builtin_rings()
        .into_iter()
        .map(|(r, tags)| builtin_entry(r, tags))
        .collect()
}

/// Modules of size at most `size_bound`, sampled as quotients of free
/// modules `R^n` by submodules generated from seeded random elements.
///
/// The generator is ChaCha8 seeded with `seed` through
/// `SeedableRng::seed_from_u64`; for each rank `n ≤ max(1, log2 size_bound)`
/// with `|R|^n ≤ 4096`, 32 draws of `0..=n` random generators are made. The regular module and
/// its quotients are always included when small enough. Duplicates under
/// [`action_key`] are dropped; output keeps first-seen order.
pub fn enumerate_small_modules(ring: &Arc<RingTable>, size_bound: usize, seed: u64) -> Vec<ModuleRep> {
    const FREE_LIMIT: usize = 4096;
    const DRAWS: usize = 32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut keep = |m: ModuleRep, out: &mut Vec<ModuleRep>| {
        if m.size() <= size_bound && seen.insert(action_key(&m)) {
            out.push(m);
        }
    };

    let regular = ModuleRep::regular(ring).with_name("R");
    let mut free = regular.clone();
    let max_rank = (usize::BITS - 1 - size_bound.max(2).leading_zeros()) as usize;
    let mut n = 1;
    while free.size() <= FREE_LIMIT && n <= max_rank {
        if n == 1 {
            keep(regular.clone(), &mut out);
        }
        for draw in 0..DRAWS {
            let count = rng.gen_range(0..=n);
            let gens: Vec<usize> = (0..count).map(|_| rng.gen_range(0..free.size())).collect();
            let sub = extend_submodule(&free, &ElemSet::from_indices(free.size(), [0]), &gens);
            if free.size() / sub.len() > size_bound {
                continue;
            }
            let (q, _) = free.quotient(&sub).expect("generated set is a submodule");
            keep(q.with_name(format!("gen{n}.{draw}")), &mut out);
        }
        n += 1;
        free = match free.direct_sum(&regular) {
            Ok(s) => s.module,
            Err(_) => break,
        };
    }
    out
}

/// Adds [`enumerate_small_modules`] output to each entry, skipping modules
/// whose [`action_key`] is already present. Entries over rings larger than
/// `size_bound` are left alone.
pub fn augment_with_generated(entries: &mut [CorpusEntry], size_bound: usize, seed: u64) {
    for entry in entries.iter_mut() {
        if entry.ring.size() > size_bound {
            continue;
        }
        let mut seen: HashSet<_> = entry.modules.iter().map(|m| action_key(m)).collect();
        for m in enumerate_small_modules(&entry.ring, size_bound, seed) {
            if seen.insert(action_key(&m)) {
                entry.modules.push(Arc::new(m));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_expected_rings_and_zero_modules() {
        let c = builtin_corpus();
        let names: Vec<&str> = c.iter().map(|e| e.name()).collect();
        assert_eq!(
            names,
            ["Z/2", "Z/3", "Z/4", "Z/6", "Z/8", "Z/9", "Z/12", "Z/16", "F2xF2", "Z/4xF2", "UT2(F2)", "F2[x]/(x^2)"]
        );
        for e in &c {
            assert_eq!(e.modules[0].name(), "R");
            assert!(e.modules.iter().any(|m| m.size() == 1));
            let names: HashSet<&str> = e.modules.iter().map(|m| m.name()).collect();
            assert_eq!(names.len(), e.modules.len(), "{}", e.name());
        }
    }

    #[test]
    fn round_trip_preserves_tables() {
        for e in builtin_corpus() {
            let back = load_instance(&e.to_json(), &Bounds::default()).unwrap();
            assert_eq!(*back.ring, *e.ring);
            assert_eq!(back.modules.len(), e.modules.len());
            for (a, b) in back.modules.iter().zip(&e.modules) {
                assert_eq!(a.to_spec(), b.to_spec());
            }
            assert_eq!(back.to_json(), e.to_json());
        }
    }

    #[test]
    fn malformed_and_bare_instances() {
        let err = load_instance("{\"ring\": {\"name\": \"x\",", &Bounds::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let bare = r#"{"ring": {"name": "Z/3", "additive_orders": [3], "one": [1], "mul": [[[1]]]}}"#;
        let e = load_instance(bare, &Bounds::default()).unwrap();
        assert_eq!(e.modules.len(), 1);
        assert_eq!(e.modules[0].size(), 3);
    }

    #[test]
    fn generation_is_seeded_and_contains_regular() {
        let r = Arc::new(RingTable::cyclic(4).unwrap());
        let a = enumerate_small_modules(&r, 4, 7);
        let b = enumerate_small_modules(&r, 4, 7);
        let key = |v: &[ModuleRep]| v.iter().map(|m| m.to_spec()).collect::<Vec<_>>();
        assert_eq!(key(&a), key(&b));
        assert_eq!(a[0].size(), 4);
        assert!(a.iter().all(|m| m.size() <= 4));
    }
}
