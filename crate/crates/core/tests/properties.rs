//! Exhaustive and property-based invariants over the built-in corpus and
//! seeded generated modules.

use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;

use finmod::corpus::{builtin_corpus, builtin_rings, enumerate_small_modules, CorpusEntry};
use finmod::lattice::Submodule;
use finmod::predicates::Analysis;
use finmod::structure::SupplementKind;
use finmod::suite::{check_names, run_suite, SuiteConfig};
use finmod::{Bounds, ElemSet, ModuleRep};

fn corpus_analyses() -> Vec<(String, Analysis)> {
    builtin_corpus()
        .iter()
        .flat_map(|e| {
            e.modules.iter().map(move |m| {
                (
                    format!("{}::{}", e.name(), m.name()),
                    Analysis::from_arc(m.clone(), &Bounds::default()).unwrap(),
                )
            })
        })
        .collect()
}

// ---------------------------------------------------------------- algebra

#[test]
fn ring_axioms_hold_on_all_triples() {
    for (ring, _) in builtin_rings() {
        let n = ring.size();
        for a in 0..n {
            assert_eq!(ring.mul(ring.one(), a), a);
            assert_eq!(ring.mul(a, ring.one()), a);
            for b in 0..n {
                for c in 0..n {
                    let (ab, bc) = (ring.mul(a, b), ring.mul(b, c));
                    assert_eq!(ring.mul(ab, c), ring.mul(a, bc), "{}", ring.name());
                    assert_eq!(ring.mul(a, ring.add(b, c)), ring.add(ab, ring.mul(a, c)));
                    assert_eq!(ring.mul(ring.add(a, b), c), ring.add(ring.mul(a, c), bc));
                }
            }
        }
    }
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    for (name, a) in corpus_analyses() {
        let m = a.module();
        for id in 0..a.lattice().len() {
            let n = a.lattice().node(id).members();
            let (q, p) = m.quotient(n).unwrap();
            assert_eq!(q.size() * n.len(), m.size(), "{name}");
            for x in 0..m.size() {
                for r in 0..m.ring().size() {
                    assert_eq!(p.images[m.act(r, x)], q.act(r, p.images[x]));
                }
                for y in 0..m.size() {
                    assert_eq!(p.images[m.add(x, y)], q.add(p.images[x], p.images[y]));
                }
            }
            // kernel is N
            let kernel: Vec<usize> = (0..m.size()).filter(|&x| p.images[x] == p.images[0]).collect();
            assert_eq!(kernel, n.to_vec(), "{name}");
        }
    }
}

#[test]
fn direct_sum_embeddings_are_complementary() {
    for e in builtin_corpus() {
        let small: Vec<_> = e.modules.iter().filter(|m| m.size() <= 16).take(4).collect();
        for a in &small {
            for b in &small {
                let s = a.direct_sum(b).unwrap();
                let left: HashSet<usize> = s.embed_left.iter().copied().collect();
                let right: HashSet<usize> = s.embed_right.iter().copied().collect();
                let zero = s.embed_left[0];
                assert_eq!(left.intersection(&right).copied().collect::<Vec<_>>(), vec![zero]);
                let sums: HashSet<usize> = left
                    .iter()
                    .flat_map(|&x| right.iter().map(move |&y| (x, y)))
                    .map(|(x, y)| s.module.add(x, y))
                    .collect();
                assert_eq!(sums.len(), s.module.size());
            }
        }
    }
}

#[test]
fn bad_structure_constants_are_rejected() {
    // group algebra F2[C2]: e1·e1 = e0
    let text = r#"{"name":"F2C2","additive_orders":[2,2],"one":[1,0],"mul":[[[1,0],[0,1]],[[0,1],[1,0]]]}"#;
    assert!(finmod::RingTable::from_json(text, &Bounds::default()).is_ok());
    // e0 is claimed as the unit but e1·e0 = 0
    let text = r#"{"name":"bad","additive_orders":[2,2],"one":[1,0],"mul":[[[1,0],[0,1]],[[0,0],[0,1]]]}"#;
    let err = finmod::RingTable::from_json(text, &Bounds::default()).unwrap_err();
    assert!(matches!(err, finmod::Error::AxiomViolation { .. }), "{err}");
}

// ---------------------------------------------------------------- lattice

#[test]
fn lattices_are_modular() {
    for (name, a) in corpus_analyses() {
        let lat = a.lattice();
        for c in 0..lat.len() {
            for x in lat.down(c).iter() {
                for b in 0..lat.len() {
                    assert_eq!(
                        lat.join(x, lat.meet(b, c)),
                        lat.meet(lat.join(x, b), c),
                        "{name}: A={x} B={b} C={c}"
                    );
                }
            }
        }
    }
}

#[test]
fn node_generators_regenerate_members() {
    for (name, a) in corpus_analyses() {
        for node in a.lattice().nodes() {
            let again = Submodule::generated_by(a.module(), node.generators());
            assert_eq!(again.members(), node.members(), "{name}");
        }
    }
}

#[test]
fn join_and_meet_match_element_level_operations() {
    for (name, a) in corpus_analyses() {
        let (lat, m) = (a.lattice(), a.module());
        for x in 0..lat.len() {
            for y in 0..lat.len() {
                let (sx, sy) = (lat.node(x).members(), lat.node(y).members());
                let meet: Vec<usize> = sx.iter().filter(|&i| sy.contains(i)).collect();
                assert_eq!(lat.node(lat.meet(x, y)).members().to_vec(), meet, "{name}");
                let sum: HashSet<usize> = sx.iter().flat_map(|i| sy.iter().map(move |j| m.add(i, j))).collect();
                assert_eq!(lat.node(lat.join(x, y)).len(), sum.len(), "{name}");
                assert!(sum.iter().all(|&s| lat.node(lat.join(x, y)).members().contains(s)));
            }
        }
    }
}

// ---------------------------------------------------------------- predicates

#[test]
fn small_implies_delta_small() {
    for (name, a) in corpus_analyses() {
        for n in 0..a.lattice().len() {
            if a.is_small(n) {
                assert!(a.is_delta_small(n), "{name}: {n}");
            }
        }
    }
}

#[test]
fn essential_maximals_have_singular_quotients_containing_delta() {
    for (name, a) in corpus_analyses() {
        for k in a.lattice().maximal_submodules() {
            if a.is_essential(k) {
                assert!(a.is_singular_section(a.top(), k), "{name}");
                assert!(a.lattice().leq(a.delta(), k), "{name}");
            }
        }
    }
}

#[test]
fn projectivity_examples() {
    let z4 = Arc::new(finmod::RingTable::cyclic(4).unwrap());
    let z2 = ModuleRep::new("Z/2", z4.clone(), vec![2], vec![vec![vec![1]]], &Bounds::default()).unwrap();
    let a = Analysis::new(z2, &Bounds::default()).unwrap();
    assert!(!a.is_projective(1, &Bounds::default()).unwrap());
    let a = Analysis::new(ModuleRep::regular(&z4), &Bounds::default()).unwrap();
    assert!(a.is_projective(1, &Bounds::default()).unwrap());

    let f2xf2 = builtin_corpus().into_iter().find(|e| e.name() == "F2xF2").unwrap();
    let r = Analysis::from_arc(f2xf2.module("R").unwrap().clone(), &Bounds::default()).unwrap();
    for s in r.lattice().minimal_submodules() {
        assert!(r.is_projective_semisimple(s));
    }
}

#[test]
fn simple_projectivity_dichotomy_against_split_surjection_search() {
    for (name, a) in corpus_analyses() {
        if a.lattice().len() != 2 {
            continue;
        }
        let by_search = a.is_projective(1, &Bounds::default()).unwrap();
        assert_eq!(a.is_projective_semisimple(a.top()), by_search, "{name}");
    }
}

// ---------------------------------------------------------------- structure

#[test]
fn supplement_kinds_are_nested() {
    for (name, a) in corpus_analyses() {
        let top = a.top();
        for k in 0..a.lattice().len() {
            for l in 0..a.lattice().len() {
                let s = a.is_supplement_of(l, k, top, SupplementKind::Supplement);
                let d = a.is_supplement_of(l, k, top, SupplementKind::DeltaSupplement);
                let w = a.is_supplement_of(l, k, top, SupplementKind::WeakDeltaSupplement);
                assert!(!s || d, "{name}: supplement not delta");
                assert!(!d || w, "{name}: delta not weak");
            }
        }
    }
}

#[test]
fn finite_modules_are_supplemented() {
    for (name, a) in corpus_analyses() {
        assert!(a.is_supplemented(), "{name}");
        assert!(a.is_delta_supplemented(), "{name}");
    }
}

#[test]
fn whole_ring_is_a_delta_supplement_of_a_simple_ideal() {
    let e = builtin_corpus().into_iter().find(|e| e.name() == "F2xF2").unwrap();
    let a = Analysis::from_arc(e.module("R").unwrap().clone(), &Bounds::default()).unwrap();
    let s1 = a.lattice().minimal_submodules()[0];
    assert!(a.is_supplement_of(a.top(), s1, a.top(), SupplementKind::DeltaSupplement));
    assert!(!a.is_supplement_of(a.top(), s1, a.top(), SupplementKind::Supplement));
}

// ---------------------------------------------------------------- corpus and suite

#[test]
fn corpus_is_deterministic() {
    let dump = |c: Vec<CorpusEntry>| c.iter().map(|e| e.to_json()).collect::<Vec<_>>();
    assert_eq!(dump(builtin_corpus()), dump(builtin_corpus()));
}

#[test]
fn corpus_covers_required_phenomena() {
    let mods = corpus_analyses();
    let has = |f: &dyn Fn(&Analysis) -> bool| mods.iter().any(|(_, a)| f(a));
    let simple = |a: &Analysis| a.lattice().len() == 2;
    assert!(has(&|a| simple(a) && a.is_singular_section(a.top(), a.zero())));
    assert!(has(&|a| simple(a) && !a.is_singular_section(a.top(), a.zero())));
    assert!(has(&|a| a.classify().local && !a.classify().semisimple));
    assert!(has(&|a| a.classify().delta_local && !a.classify().local));
    assert!(has(&|a| a.delta() != a.rad()));
}

#[test]
fn suite_is_deterministic_and_named() {
    let corpus = builtin_corpus();
    let mut a = run_suite(&corpus, &SuiteConfig::default());
    let mut b = run_suite(&corpus, &SuiteConfig::default());
    a.wall_time_ms = 0.0;
    b.wall_time_ms = 0.0;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());

    let names: Vec<&str> = a.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, check_names());
    let unique: HashSet<&str> = names.iter().copied().collect();
    assert_eq!(unique.len(), names.len());
    for c in &a.checks {
        assert!(!c.anchor.is_empty(), "{}", c.name);
        assert!(c.vacuous_by_design || !c.vacuous, "{} is vacuous", c.name);
        assert!(c.witnesses.is_empty());
    }
}

// ---------------------------------------------------------------- generated modules

fn brute_force_count(m: &ModuleRep) -> usize {
    let close = |start: &ElemSet| {
        let mut set = start.clone();
        loop {
            let members = set.to_vec();
            let before = set.len();
            for &x in &members {
                for r in 0..m.ring().size() {
                    set.insert(m.act(r, x));
                }
                for &y in &members {
                    set.insert(m.add(x, y));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    };
    let zero = close(&ElemSet::from_indices(m.size(), [0]));
    let mut seen: HashSet<ElemSet> = [zero.clone()].into();
    let mut stack = vec![zero];
    while let Some(n) = stack.pop() {
        for x in 0..m.size() {
            if !n.contains(x) {
                let mut s = n.clone();
                s.insert(x);
                let c = close(&s);
                if seen.insert(c.clone()) {
                    stack.push(c);
                }
            }
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_modules_behave(ring_index in 0usize..12, seed in any::<u64>()) {
        let rings = builtin_rings();
        let ring = &rings[ring_index % rings.len()].0;
        let modules = enumerate_small_modules(ring, 16, seed);
        let specs = |v: &[ModuleRep]| v.iter().map(|m| m.to_spec()).collect::<Vec<_>>();
        prop_assert_eq!(specs(&modules), specs(&enumerate_small_modules(ring, 16, seed)));
        for m in modules {
            let a = Analysis::new(m.clone(), &Bounds::default()).unwrap();
            prop_assert_eq!(a.lattice().len(), brute_force_count(&m));
            prop_assert_eq!(a.rad(), a.rad_by_small_in(a.top(), a.zero()));
            prop_assert_eq!(a.soc(), a.soc_by_essential_in(a.top(), a.zero()));
            prop_assert_eq!(a.delta(), a.delta_by_small_in(a.top(), a.zero()));
            for n in 0..a.lattice().len() {
                prop_assert_eq!(a.is_delta_small(n), a.delta_small_witness_search(n, a.top()).holds());
            }
            prop_assert_eq!(a.is_delta_supplemented(), a.maximals_have_delta_supplements());
        }
    }
}
