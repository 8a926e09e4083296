//! Submodule lattices.
//!
//! Enumeration seeds with the cyclic submodules `Rx` and closes under
//! pairwise sums with a worklist; every submodule of a finite module is a
//! finite sum of cyclic ones, so the closure is the whole lattice. Nodes are
//! deduplicated by their member bit set.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Bounds, Element, ModuleRep};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};

/// Index of a node in a [`SubmoduleLattice`].
pub type NodeId = usize;

/// A submodule of a parent module.
#[derive(Clone)]
pub struct Submodule {
    parent: Arc<ModuleRep>,
    members: ElemSet,
    generators: Vec<usize>,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Submodule")
            .field("size", &self.members.len())
            .field("generators", &self.generator_elements())
            .finish()
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Submodule {}

impl Submodule {
    /// The submodule generated by `generators`.
    pub fn generated_by(parent: &Arc<ModuleRep>, generators: &[usize]) -> Self {
        let zero = ElemSet::from_indices(parent.size(), [0]);
        let members = extend_submodule(parent, &zero, generators);
        let mut gens = Vec::new();
        let mut span = ElemSet::from_indices(parent.size(), [0]);
        for &g in generators {
            if !span.contains(g) {
                gens.push(g);
                span = extend_submodule(parent, &span, &[g]);
            }
        }
        Submodule {
            parent: parent.clone(),
            members,
            generators: gens,
        }
    }

    /// Wraps an element set after verifying closure.
    pub fn from_members(parent: &Arc<ModuleRep>, members: ElemSet) -> Result<Self> {
        if !parent.is_submodule_set(&members) {
            return Err(Error::InvalidSubmodule(
                "set is not closed under the module operations".into(),
            ));
        }
        let mut gens = Vec::new();
        let mut span = ElemSet::from_indices(parent.size(), [0]);
        for m in members.iter() {
            if !span.contains(m) {
                gens.push(m);
                span = extend_submodule(parent, &span, &[m]);
            }
        }
        Ok(Submodule {
            parent: parent.clone(),
            members,
            generators: gens,
        })
    }

    pub fn zero(parent: &Arc<ModuleRep>) -> Self {
        Submodule {
            parent: parent.clone(),
            members: ElemSet::from_indices(parent.size(), [0]),
            generators: Vec::new(),
        }
    }

    pub fn whole(parent: &Arc<ModuleRep>) -> Self {
        let gens: Vec<usize> = (0..parent.radix().rank())
            .map(|i| parent.radix().basis(i))
            .collect();
        Self::generated_by(parent, &gens)
    }

    pub fn parent(&self) -> &Arc<ModuleRep> {
        &self.parent
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<Element> {
        self.generators
            .iter()
            .map(|&g| self.parent.element(g))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        other.members.is_subset(&self.members)
    }

    /// `A + B`.
    pub fn join(&self, other: &Submodule) -> Result<Submodule> {
        if !Arc::ptr_eq(&self.parent, &other.parent) {
            return Err(Error::ParentMismatch);
        }
        let members = extend_submodule(&self.parent, &self.members, &other.generators);
        let mut generators = self.generators.clone();
        let mut span = self.members.clone();
        for &g in &other.generators {
            if !span.contains(g) {
                generators.push(g);
                span = extend_submodule(&self.parent, &span, &[g]);
            }
        }
        Ok(Submodule {
            parent: self.parent.clone(),
            members,
            generators,
        })
    }

    /// `A ∩ B`.
    pub fn meet(&self, other: &Submodule) -> Result<Submodule> {
        if !Arc::ptr_eq(&self.parent, &other.parent) {
            return Err(Error::ParentMismatch);
        }
        Submodule::from_members(&self.parent, self.members.intersection(&other.members))
    }
}

/// Smallest submodule containing the submodule `start` and `gens`.
///
/// `start` must already be a submodule. Each accepted generator extends the
/// additive span coset by coset and queues its images under the ring basis,
/// so the result is closed under the action once the queue drains.
pub fn extend_submodule(module: &ModuleRep, start: &ElemSet, gens: &[usize]) -> ElemSet {
    let ring = module.ring();
    let basis: Vec<usize> = (0..ring.rank()).map(|i| ring.radix().basis(i)).collect();
    let mut set = start.clone();
    let mut members = set.to_vec();
    let mut queue: Vec<usize> = gens.to_vec();
    while let Some(g) = queue.pop() {
        if set.contains(g) {
            continue;
        }
        let base_len = members.len();
        let mut x = g;
        while !set.contains(x) {
            for i in 0..base_len {
                let y = module.add(members[i], x);
                if set.insert(y) {
                    members.push(y);
                }
            }
            x = module.add(x, g);
        }
        for &e in &basis {
            queue.push(module.act(e, g));
        }
    }
    set
}

/// Greedy additive generating set of a subgroup given by its members.
pub fn additive_generators(module: &ModuleRep, set: &ElemSet) -> Vec<usize> {
    let mut span = ElemSet::from_indices(module.size(), [0]);
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for m in set.iter() {
        if span.contains(m) {
            continue;
        }
        gens.push(m);
        let base_len = members.len();
        let mut x = m;
        while !span.contains(x) {
            for i in 0..base_len {
                let y = module.add(members[i], x);
                if span.insert(y) {
                    members.push(y);
                }
            }
            x = module.add(x, m);
        }
    }
    gens
}

/// The distinct cyclic submodules `Rx`, each with its least generator.
pub fn cyclic_submodules(module: &Arc<ModuleRep>) -> Vec<Submodule> {
    let n = module.size();
    let rs = module.ring().size();
    let mut seen: HashMap<ElemSet, ()> = HashMap::new();
    let mut out = Vec::new();
    for x in 0..n {
        let set = ElemSet::from_indices(n, (0..rs).map(|r| module.act(r, x)));
        if seen.insert(set.clone(), ()).is_none() {
            out.push(Submodule {
                parent: module.clone(),
                members: set,
                generators: if x == 0 { Vec::new() } else { vec![x] },
            });
        }
    }
    out
}

/// Containment relation, stored per node as bit sets over node ids.
struct Order {
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

/// The complete lattice of submodules of a finite module.
///
/// Nodes are sorted by size, ties broken lexicographically, so node 0 is the
/// zero submodule and the last node is the whole module.
pub struct SubmoduleLattice {
    module: Arc<ModuleRep>,
    nodes: Vec<Submodule>,
    index: HashMap<ElemSet, NodeId>,
    lex_rank: Vec<usize>,
    order: OnceLock<Order>,
    upper_covers: OnceLock<Vec<Vec<NodeId>>>,
}

impl fmt::Debug for SubmoduleLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubmoduleLattice")
            .field("module", &self.module.name())
            .field("nodes", &self.nodes.len())
            .finish()
    }
}

impl SubmoduleLattice {
    pub fn build(module: &Arc<ModuleRep>, bounds: &Bounds) -> Result<Self> {
        let cyclic = cyclic_submodules(module);
        let mut nodes: Vec<Submodule> = Vec::new();
        let mut index: HashMap<ElemSet, NodeId> = HashMap::new();
        let mut push = |s: Submodule, nodes: &mut Vec<Submodule>| -> Result<()> {
            if !index.contains_key(&s.members) {
                if nodes.len() >= bounds.max_lattice_nodes {
                    return Err(Error::NodeBoundExceeded {
                        bound: bounds.max_lattice_nodes,
                    });
                }
                index.insert(s.members.clone(), nodes.len());
                nodes.push(s);
            }
            Ok(())
        };
        push(Submodule::zero(module), &mut nodes)?;
        for c in &cyclic {
            push(c.clone(), &mut nodes)?;
        }
        let mut i = 0;
        while i < nodes.len() {
            for c in &cyclic {
                if c.members.is_subset(&nodes[i].members) {
                    continue;
                }
                let g = c.generators[0];
                let members = extend_submodule(module, &nodes[i].members, &[g]);
                let mut generators = nodes[i].generators.clone();
                generators.push(g);
                push(
                    Submodule {
                        parent: module.clone(),
                        members,
                        generators,
                    },
                    &mut nodes,
                )?;
            }
            i += 1;
        }

        nodes.sort_by(|a, b| {
            a.members
                .len()
                .cmp(&b.members.len())
                .then_with(|| a.members.lex_cmp(&b.members))
        });
        let index = nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members.clone(), i))
            .collect();
        let mut by_lex: Vec<NodeId> = (0..nodes.len()).collect();
        by_lex.sort_by(|&a, &b| nodes[a].members.lex_cmp(&nodes[b].members));
        let mut lex_rank = vec![0; nodes.len()];
        for (rank, &id) in by_lex.iter().enumerate() {
            lex_rank[id] = rank;
        }
        Ok(SubmoduleLattice {
            module: module.clone(),
            nodes,
            index,
            lex_rank,
            order: OnceLock::new(),
            upper_covers: OnceLock::new(),
        })
    }

    pub fn module(&self) -> &Arc<ModuleRep> {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Submodule] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Submodule {
        &self.nodes[id]
    }

    pub fn zero(&self) -> NodeId {
        0
    }

    pub fn top(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn size_of(&self, id: NodeId) -> usize {
        self.nodes[id].members.len()
    }

    pub fn find(&self, members: &ElemSet) -> Option<NodeId> {
        self.index.get(members).copied()
    }

    /// Node id of a submodule of the same parent.
    pub fn id_of(&self, s: &Submodule) -> Result<NodeId> {
        if !Arc::ptr_eq(&s.parent, &self.module) {
            return Err(Error::ParentMismatch);
        }
        self.find(&s.members)
            .ok_or_else(|| Error::InternalInconsistency("submodule missing from lattice".into()))
    }

    /// Position of the node in lexicographic order of member sets.
    pub fn lex_rank(&self, id: NodeId) -> usize {
        self.lex_rank[id]
    }

    fn order(&self) -> &Order {
        self.order.get_or_init(|| {
            let n = self.nodes.len();
            let mut up = vec![ElemSet::new(n); n];
            let mut down = vec![ElemSet::new(n); n];
            for a in 0..n {
                for b in a..n {
                    if self.nodes[a].members.is_subset(&self.nodes[b].members) {
                        up[a].insert(b);
                        down[b].insert(a);
                    }
                }
            }
            Order { up, down }
        })
    }

    /// Nodes containing `a` (including `a`).
    pub fn up(&self, a: NodeId) -> &ElemSet {
        &self.order().up[a]
    }

    /// Nodes contained in `a` (including `a`).
    pub fn down(&self, a: NodeId) -> &ElemSet {
        &self.order().down[a]
    }

    /// `a ⊆ b`.
    #[inline]
    pub fn leq(&self, a: NodeId, b: NodeId) -> bool {
        self.order().up[a].contains(b)
    }

    /// Nodes `x` with `bottom ⊆ x ⊆ top`.
    pub fn interval(&self, bottom: NodeId, top: NodeId) -> ElemSet {
        self.up(bottom).intersection(self.down(top))
    }

    /// Node-level sum: the smallest node above both.
    pub fn join(&self, a: NodeId, b: NodeId) -> NodeId {
        if self.leq(a, b) {
            return b;
        }
        if self.leq(b, a) {
            return a;
        }
        self.up(a)
            .intersection(self.up(b))
            .iter()
            .min_by_key(|&x| self.size_of(x))
            .expect("the whole module bounds every pair")
    }

    /// Node-level intersection: the largest node below both.
    pub fn meet(&self, a: NodeId, b: NodeId) -> NodeId {
        if self.leq(a, b) {
            return a;
        }
        if self.leq(b, a) {
            return b;
        }
        self.down(a)
            .intersection(self.down(b))
            .iter()
            .max_by_key(|&x| self.size_of(x))
            .expect("zero lies below every pair")
    }

    /// `a + b = top` for `a, b ≤ top`, decided without computing the sum.
    #[inline]
    pub fn sums_to(&self, a: NodeId, b: NodeId, top: NodeId) -> bool {
        let ord = self.order();
        // some node strictly below `top` contains both exactly when the sum is proper
        !ord.up[a].meets3_except(&ord.up[b], &ord.down[top], top)
    }

    /// Upper covers of every node (lazy).
    pub fn upper_covers(&self) -> &[Vec<NodeId>] {
        self.upper_covers.get_or_init(|| {
            (0..self.nodes.len())
                .map(|a| {
                    self.up(a)
                        .iter()
                        .filter(|&b| b != a && self.interval(a, b).len() == 2)
                        .collect()
                })
                .collect()
        })
    }

    /// Maximal nodes strictly below `top` and above `bottom`.
    pub fn maximal_in(&self, bottom: NodeId, top: NodeId) -> Vec<NodeId> {
        if !self.leq(bottom, top) || bottom == top {
            return Vec::new();
        }
        let iv = self.interval(bottom, top);
        iv.iter()
            .filter(|&x| x != top && self.interval(x, top).len() == 2)
            .collect()
    }

    /// Minimal nodes strictly above `bottom` and below `top`.
    pub fn minimal_in(&self, bottom: NodeId, top: NodeId) -> Vec<NodeId> {
        if !self.leq(bottom, top) || bottom == top {
            return Vec::new();
        }
        let iv = self.interval(bottom, top);
        iv.iter()
            .filter(|&x| x != bottom && self.interval(bottom, x).len() == 2)
            .collect()
    }

    pub fn maximal_submodules(&self) -> Vec<NodeId> {
        self.maximal_in(self.zero(), self.top())
    }

    pub fn minimal_submodules(&self) -> Vec<NodeId> {
        self.minimal_in(self.zero(), self.top())
    }

    /// Hasse diagram edges `(lower, upper)`.
    pub fn hasse_edges(&self) -> Vec<(NodeId, NodeId)> {
        self.upper_covers()
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
            .collect()
    }

    /// Length of a maximal chain from `bottom` to `top` (composition length
    /// of `top/bottom`); all maximal chains agree in a modular lattice.
    pub fn height(&self, bottom: NodeId, top: NodeId) -> usize {
        let mut cur = bottom;
        let mut steps = 0;
        while cur != top {
            cur = self.minimal_in(cur, top)[0];
            steps += 1;
        }
        steps
    }

    /// Of the given candidates, the one whose member set is lexicographically
    /// least.
    pub fn lex_min(&self, candidates: impl IntoIterator<Item = NodeId>) -> Option<NodeId> {
        candidates.into_iter().min_by_key(|&x| self.lex_rank[x])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{RingSpec, RingTable};

    fn f2xf2() -> Arc<RingTable> {
        Arc::new(
            RingTable::from_spec(
                &RingSpec {
                    name: "F2xF2".into(),
                    additive_orders: vec![2, 2],
                    one: vec![1, 1],
                    mul: vec![
                        vec![vec![1, 0], vec![0, 0]],
                        vec![vec![0, 0], vec![0, 1]],
                    ],
                },
                &Bounds::default(),
            )
            .unwrap(),
        )
    }

    fn lattice(m: ModuleRep) -> SubmoduleLattice {
        SubmoduleLattice::build(&Arc::new(m), &Bounds::default()).unwrap()
    }

    #[test]
    fn z4_chain() {
        let z4 = Arc::new(RingTable::cyclic(4).unwrap());
        let m = Arc::new(ModuleRep::regular(&z4));
        assert_eq!(cyclic_submodules(&m).len(), 3);
        let l = SubmoduleLattice::build(&m, &Bounds::default()).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.node(1).members().to_vec(), vec![0, 2]);
        assert_eq!(l.maximal_submodules(), vec![1]);
        assert_eq!(l.minimal_submodules(), vec![1]);
        assert_eq!(l.hasse_edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn f2xf2_diamond() {
        let l = lattice(ModuleRep::regular(&f2xf2()));
        assert_eq!(l.len(), 4);
        assert_eq!(l.maximal_submodules(), vec![1, 2]);
        assert_eq!(l.minimal_submodules(), vec![1, 2]);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert!(l.sums_to(1, 2, 3));
        assert!(!l.sums_to(1, 1, 3));
    }

    #[test]
    fn f2_plane_has_five_subspaces() {
        let f2 = Arc::new(RingTable::cyclic(2).unwrap());
        let m = ModuleRep::new(
            "F2^2",
            f2,
            vec![2, 2],
            vec![vec![vec![1, 0], vec![0, 1]]],
            &Bounds::default(),
        )
        .unwrap();
        let l = lattice(m);
        assert_eq!(l.len(), 5);
        assert_eq!(l.height(0, l.top()), 2);
    }

    #[test]
    fn zero_module_lattice() {
        let z2 = Arc::new(RingTable::cyclic(2).unwrap());
        let m = Arc::new(ModuleRep::zero(&z2));
        assert_eq!(cyclic_submodules(&m).len(), 1);
        let l = SubmoduleLattice::build(&m, &Bounds::default()).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.maximal_submodules().is_empty());
        assert!(l.minimal_submodules().is_empty());
    }

    #[test]
    fn node_bound_enforced() {
        let f2 = Arc::new(RingTable::cyclic(2).unwrap());
        let m = ModuleRep::new(
            "F2^3",
            f2,
            vec![2, 2, 2],
            vec![vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]],
            &Bounds::default(),
        )
        .unwrap();
        let bounds = Bounds {
            max_lattice_nodes: 10,
            ..Bounds::default()
        };
        let err = SubmoduleLattice::build(&Arc::new(m), &bounds).unwrap_err();
        assert_eq!(err, Error::NodeBoundExceeded { bound: 10 });
    }

    #[test]
    fn element_level_join_meet_agree_with_nodes() {
        let z4 = Arc::new(RingTable::cyclic(4).unwrap());
        let m = Arc::new(
            ModuleRep::new(
                "Z4+Z2",
                z4,
                vec![4, 2],
                vec![vec![vec![1, 0], vec![0, 1]]],
                &Bounds::default(),
            )
            .unwrap(),
        );
        let l = SubmoduleLattice::build(&m, &Bounds::default()).unwrap();
        for a in 0..l.len() {
            for b in 0..l.len() {
                let j = l.node(a).join(l.node(b)).unwrap();
                let mt = l.node(a).meet(l.node(b)).unwrap();
                assert_eq!(l.id_of(&j).unwrap(), l.join(a, b));
                assert_eq!(l.id_of(&mt).unwrap(), l.meet(a, b));
                assert_eq!(l.sums_to(a, b, l.top()), l.join(a, b) == l.top());
            }
            // generators regenerate the member set
            let regen = Submodule::generated_by(&m, l.node(a).generators());
            assert_eq!(regen.members(), l.node(a).members());
        }
    }

    #[test]
    fn parent_mismatch() {
        let z4 = Arc::new(RingTable::cyclic(4).unwrap());
        let a = Arc::new(ModuleRep::regular(&z4));
        let b = Arc::new(ModuleRep::regular(&z4));
        let err = Submodule::whole(&a).join(&Submodule::whole(&b)).unwrap_err();
        assert_eq!(err, Error::ParentMismatch);
    }
}
