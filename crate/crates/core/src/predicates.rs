//! Elementary module-theoretic predicates and the fundamental submodules.
//!
//! Every predicate here is decided by quantifying over the precomputed
//! submodule lattice. Quotients `M/X` are handled through the interval
//! `[X, M]` of the lattice (correspondence theorem), and submodules `N`
//! viewed as modules through `[0, N]`, so most functions take a `top` and a
//! `bottom` node describing the section `top/bottom` they work in.
//!
//! Singularity is decided through annihilators: `top/bottom` is singular
//! exactly when every generator `g` of `top` has `{ r : r·g ∈ bottom }`
//! essential as a left ideal of the ring.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{Bounds, ModuleRep};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::{NodeId, SubmoduleLattice};

/// Deliberate corruption of a single predicate, for exercising the theorem
/// suite's ability to detect a broken implementation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    InvertSingular,
    InvertSmall,
    InvertDeltaSmall,
    InvertEssential,
    InvertCoclosed,
    InvertDeltaCoclosed,
    InvertProjectiveSemisimple,
    InvertProjective,
}

impl Fault {
    pub const ALL: [Fault; 8] = [
        Fault::InvertSingular,
        Fault::InvertSmall,
        Fault::InvertDeltaSmall,
        Fault::InvertEssential,
        Fault::InvertCoclosed,
        Fault::InvertDeltaCoclosed,
        Fault::InvertProjectiveSemisimple,
        Fault::InvertProjective,
    ];
}

/// `Rad`, `Soc`, `Z` and `δ` of a module, as lattice nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FundamentalSubmodules {
    pub rad: NodeId,
    pub soc: NodeId,
    pub z: NodeId,
    pub delta: NodeId,
}

/// Outcome of the projective-semisimple complement search for `N ≤ top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaSmallWitness {
    /// For each `X` with `X + N = top`, a projective semisimple `Y ≤ N`
    /// with `top = X ⊕ Y`.
    Confirmed(Vec<(NodeId, NodeId)>),
    /// An `X` with `X + N = top` admitting no such `Y`.
    Counterexample(NodeId),
}

impl DeltaSmallWitness {
    pub fn holds(&self) -> bool {
        matches!(self, DeltaSmallWitness::Confirmed(_))
    }
}

/// A module together with its submodule lattice and cached derived data.
pub struct Analysis {
    lattice: SubmoduleLattice,
    fault: Option<Fault>,
    singular: RwLock<HashMap<(NodeId, NodeId), bool>>,
    z: OnceLock<Result<NodeId>>,
    generator_count: OnceLock<Vec<(usize, Option<(NodeId, usize)>)>>,
}

impl std::fmt::Debug for Analysis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Analysis")
            .field("module", &self.module().name())
            .field("lattice", &self.lattice.len())
            .finish()
    }
}

impl Analysis {
    pub fn new(module: ModuleRep, bounds: &Bounds) -> Result<Self> {
        Self::from_arc(Arc::new(module), bounds)
    }

    pub fn from_arc(module: Arc<ModuleRep>, bounds: &Bounds) -> Result<Self> {
        let lattice = SubmoduleLattice::build(&module, bounds)?;
        Ok(Analysis {
            lattice,
            fault: None,
            singular: RwLock::new(HashMap::new()),
            z: OnceLock::new(),
            generator_count: OnceLock::new(),
        })
    }

    /// Enables fault injection. Caches are reset.
    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self.singular = RwLock::new(HashMap::new());
        self
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    fn flip(&self, f: Fault, value: bool) -> bool {
        value ^ (self.fault == Some(f))
    }

    pub fn module(&self) -> &Arc<ModuleRep> {
        self.lattice.module()
    }

    pub fn lattice(&self) -> &SubmoduleLattice {
        &self.lattice
    }

    pub fn zero(&self) -> NodeId {
        self.lattice.zero()
    }

    pub fn top(&self) -> NodeId {
        self.lattice.top()
    }

    fn members(&self, id: NodeId) -> &ElemSet {
        self.lattice.node(id).members()
    }

    fn proper_in(&self, bottom: NodeId, top: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.lattice
            .interval(bottom, top)
            .iter()
            .filter(move |&z| z != top)
            .collect::<Vec<_>>()
            .into_iter()
    }

    // ---------------------------------------------------------------- singularity

    /// Whether `top/bottom` is a singular module.
    pub fn is_singular_section(&self, top: NodeId, bottom: NodeId) -> bool {
        let key = (top, bottom);
        if let Some(&v) = self.singular.read().expect("cache lock").get(&key) {
            return v;
        }
        let module = self.module();
        let ring = module.ring();
        let inside = self.members(bottom);
        let value = self
            .lattice
            .node(top)
            .generators()
            .iter()
            .all(|&g| ring.is_essential_left_ideal(&module.annihilator_into(g, inside)));
        let value = self.flip(Fault::InvertSingular, value);
        self.singular.write().expect("cache lock").insert(key, value);
        value
    }

    /// `Z(M) = { m : ann(m) is an essential left ideal }`, computed element
    /// by element.
    pub fn singular_submodule(&self) -> Result<NodeId> {
        self.z
            .get_or_init(|| {
                let module = self.module();
                let ring = module.ring();
                let zero = self.members(self.zero());
                let set = ElemSet::from_indices(
                    module.size(),
                    (0..module.size()).filter(|&m| {
                        ring.is_essential_left_ideal(&module.annihilator_into(m, zero))
                    }),
                );
                self.lattice.find(&set).ok_or_else(|| {
                    Error::InternalInconsistency("singular elements do not form a submodule".into())
                })
            })
            .clone()
    }

    /// `M` is singular iff `Z(M) = M`.
    pub fn is_singular(&self) -> Result<bool> {
        Ok(self.singular_submodule()? == self.top())
    }

    // ---------------------------------------------------------------- essential / small

    /// `l/bottom` is essential in `top/bottom`.
    pub fn is_essential_in(&self, l: NodeId, top: NodeId, bottom: NodeId) -> bool {
        let value = self
            .lattice
            .interval(bottom, top)
            .iter()
            .filter(|&k| k != bottom)
            .all(|k| self.lattice.meet(l, k) != bottom);
        self.flip(Fault::InvertEssential, value)
    }

    pub fn is_essential(&self, l: NodeId) -> bool {
        self.is_essential_in(l, self.top(), self.zero())
    }

    /// Essentiality tested against nonzero cyclic submodules only.
    pub fn is_essential_cyclic(&self, l: NodeId) -> bool {
        let module = self.module();
        let rs = module.ring().size();
        let lm = self.members(l);
        (1..module.size()).all(|x| (0..rs).any(|r| {
            let y = module.act(r, x);
            y != 0 && lm.contains(y)
        }))
    }

    /// `n/bottom ≪ top/bottom`: no proper `Z` in the section with `n + Z = top`.
    pub fn is_small_in(&self, n: NodeId, top: NodeId, bottom: NodeId) -> bool {
        let value = self
            .proper_in(bottom, top)
            .all(|z| !self.lattice.sums_to(n, z, top));
        self.flip(Fault::InvertSmall, value)
    }

    pub fn is_small(&self, n: NodeId) -> bool {
        self.is_small_in(n, self.top(), self.zero())
    }

    /// `n/bottom ≪_δ top/bottom`: no proper `Z` in the section with
    /// `top/Z` singular and `n + Z = top`.
    pub fn is_delta_small_in(&self, n: NodeId, top: NodeId, bottom: NodeId) -> bool {
        let value = self.proper_in(bottom, top).all(|z| {
            !(self.lattice.sums_to(n, z, top) && self.is_singular_section(top, z))
        });
        self.flip(Fault::InvertDeltaSmall, value)
    }

    pub fn is_delta_small(&self, n: NodeId) -> bool {
        self.is_delta_small_in(n, self.top(), self.zero())
    }

    // ---------------------------------------------------------------- projective semisimple

    /// Simple submodule `s` (an atom) is nonsingular, equivalently projective.
    fn atom_is_projective(&self, s: NodeId) -> bool {
        !self.is_singular_section(s, self.zero())
    }

    /// `y` is a sum of simple submodules, each of them nonsingular.
    ///
    /// Any simple submodule of a semisimple module is isomorphic to one of
    /// its summands, so it suffices that every atom below `y` be nonsingular.
    pub fn is_projective_semisimple(&self, y: NodeId) -> bool {
        let atoms = self.lattice.minimal_in(self.zero(), y);
        let semisimple = self.join_all(atoms.iter().copied(), self.zero()) == y;
        let value = semisimple && atoms.iter().all(|&s| self.atom_is_projective(s));
        self.flip(Fault::InvertProjectiveSemisimple, value)
    }

    /// Complement search: for every `X ≤ top` with `X + n = top`, look for a
    /// projective semisimple `Y ≤ n` with `X ∩ Y = 0` and `X + Y = top`,
    /// choosing the lexicographically least `Y`.
    pub fn delta_small_witness_search(&self, n: NodeId, top: NodeId) -> DeltaSmallWitness {
        let zero = self.zero();
        let candidates: Vec<NodeId> = self
            .lattice
            .down(n)
            .iter()
            .filter(|&y| self.is_projective_semisimple(y))
            .collect();
        let mut pairs = Vec::new();
        for x in self.lattice.down(top).iter() {
            if !self.lattice.sums_to(x, n, top) {
                continue;
            }
            let found = self.lattice.lex_min(candidates.iter().copied().filter(|&y| {
                self.lattice.meet(x, y) == zero && self.lattice.sums_to(x, y, top)
            }));
            match found {
                Some(y) => pairs.push((x, y)),
                None => return DeltaSmallWitness::Counterexample(x),
            }
        }
        DeltaSmallWitness::Confirmed(pairs)
    }

    /// Complement characterization of `n ≪_δ top`, cross-checked against the
    /// definition.
    pub fn delta_small_witness(&self, n: NodeId, top: NodeId) -> Result<DeltaSmallWitness> {
        let w = self.delta_small_witness_search(n, top);
        if w.holds() != self.is_delta_small_in(n, top, self.zero()) {
            return Err(Error::InternalInconsistency(format!(
                "delta-smallness of node {n} in {top}: definition and complement search disagree"
            )));
        }
        Ok(w)
    }

    // ---------------------------------------------------------------- fundamental submodules

    pub(crate) fn join_all(&self, nodes: impl IntoIterator<Item = NodeId>, start: NodeId) -> NodeId {
        nodes
            .into_iter()
            .fold(start, |acc, x| self.lattice.join(acc, x))
    }

    pub(crate) fn meet_all(&self, nodes: impl IntoIterator<Item = NodeId>, start: NodeId) -> NodeId {
        nodes
            .into_iter()
            .fold(start, |acc, x| self.lattice.meet(acc, x))
    }

    /// `Rad(top/bottom)` as the intersection of maximal submodules.
    pub fn rad_in(&self, top: NodeId, bottom: NodeId) -> NodeId {
        self.meet_all(self.lattice.maximal_in(bottom, top), top)
    }

    /// `Rad(top/bottom)` as the sum of small submodules.
    pub fn rad_by_small_in(&self, top: NodeId, bottom: NodeId) -> NodeId {
        let smalls: Vec<NodeId> = self
            .lattice
            .interval(bottom, top)
            .iter()
            .filter(|&x| self.is_small_in(x, top, bottom))
            .collect();
        self.join_all(smalls, bottom)
    }

    /// `Soc(top/bottom)` as the sum of simple submodules.
    pub fn soc_in(&self, top: NodeId, bottom: NodeId) -> NodeId {
        self.join_all(self.lattice.minimal_in(bottom, top), bottom)
    }

    /// `Soc(top/bottom)` as the intersection of essential submodules.
    pub fn soc_by_essential_in(&self, top: NodeId, bottom: NodeId) -> NodeId {
        let ess: Vec<NodeId> = self
            .lattice
            .interval(bottom, top)
            .iter()
            .filter(|&x| self.is_essential_in(x, top, bottom))
            .collect();
        self.meet_all(ess, top)
    }

    /// `δ(top/bottom)`: intersection of the maximal `K` with `top/K`
    /// singular (the reject of the singular simple modules).
    pub fn delta_in(&self, top: NodeId, bottom: NodeId) -> NodeId {
        let ks: Vec<NodeId> = self
            .lattice
            .maximal_in(bottom, top)
            .into_iter()
            .filter(|&k| self.is_singular_section(top, k))
            .collect();
        self.meet_all(ks, top)
    }

    /// `δ(top/bottom)` as the sum of all δ-small submodules.
    pub fn delta_by_small_in(&self, top: NodeId, bottom: NodeId) -> NodeId {
        let ds: Vec<NodeId> = self
            .lattice
            .interval(bottom, top)
            .iter()
            .filter(|&x| self.is_delta_small_in(x, top, bottom))
            .collect();
        self.join_all(ds, bottom)
    }

    pub fn rad(&self) -> NodeId {
        self.rad_in(self.top(), self.zero())
    }

    pub fn soc(&self) -> NodeId {
        self.soc_in(self.top(), self.zero())
    }

    pub fn delta(&self) -> NodeId {
        self.delta_in(self.top(), self.zero())
    }

    /// `δ(N)` for a submodule `N` regarded as a module.
    pub fn delta_of(&self, n: NodeId) -> NodeId {
        self.delta_in(n, self.zero())
    }

    /// All four fundamental submodules, each of `Rad`, `Soc`, `δ` computed
    /// twice by independent routes.
    pub fn fundamental_submodules(&self) -> Result<FundamentalSubmodules> {
        let (top, zero) = (self.top(), self.zero());
        let rad = self.rad_in(top, zero);
        if rad != self.rad_by_small_in(top, zero) {
            return Err(Error::InternalInconsistency(
                "radical: intersection of maximals differs from sum of smalls".into(),
            ));
        }
        let soc = self.soc_in(top, zero);
        if soc != self.soc_by_essential_in(top, zero) {
            return Err(Error::InternalInconsistency(
                "socle: sum of minimals differs from intersection of essentials".into(),
            ));
        }
        let delta = self.delta_in(top, zero);
        if delta != self.delta_by_small_in(top, zero) {
            return Err(Error::InternalInconsistency(
                "delta: reject of singular simples differs from sum of delta-smalls".into(),
            ));
        }
        Ok(FundamentalSubmodules {
            rad,
            soc,
            z: self.singular_submodule()?,
            delta,
        })
    }

    // ---------------------------------------------------------------- coclosed

    /// No `K < N` has `N/K ≪ M/K`.
    pub fn is_coclosed(&self, n: NodeId) -> bool {
        let top = self.top();
        let value = self
            .proper_in(self.zero(), n)
            .all(|k| !self.is_small_in(n, top, k));
        self.flip(Fault::InvertCoclosed, value)
    }

    /// No `X < N` has `N/X` singular and `N/X ≪_δ M/X`.
    pub fn is_delta_coclosed(&self, n: NodeId) -> bool {
        let top = self.top();
        let value = self.proper_in(self.zero(), n).all(|x| {
            !(self.is_singular_section(n, x) && self.is_delta_small_in(n, top, x))
        });
        self.flip(Fault::InvertDeltaCoclosed, value)
    }

    // ---------------------------------------------------------------- projectivity

    /// Least number of generators of every node, with a predecessor on a
    /// shortest path `(previous node, cyclic generator element)`.
    fn generator_counts(&self) -> &[(usize, Option<(NodeId, usize)>)] {
        self.generator_count.get_or_init(|| {
            let module = self.module();
            let cyclic: Vec<(NodeId, usize)> = crate::lattice::cyclic_submodules(module)
                .into_iter()
                .filter(|c| !c.is_zero())
                .map(|c| {
                    let id = self.lattice.id_of(&c).expect("cyclic submodule is a node");
                    (id, c.generators()[0])
                })
                .collect();
            let n = self.lattice.len();
            let mut dist: Vec<(usize, Option<(NodeId, usize)>)> = vec![(usize::MAX, None); n];
            dist[self.zero()] = (0, None);
            let mut frontier = vec![self.zero()];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for &a in &frontier {
                    let d = dist[a].0;
                    for &(c, g) in &cyclic {
                        let b = self.lattice.join(a, c);
                        if dist[b].0 == usize::MAX {
                            dist[b] = (d + 1, Some((a, g)));
                            next.push(b);
                        }
                    }
                }
                frontier = next;
            }
            dist
        })
    }

    /// Least number of generators of the node `id`.
    pub fn min_generator_count(&self, id: NodeId) -> usize {
        self.generator_counts()[id].0
    }

    /// A generating tuple of `id` of least length.
    pub fn minimal_generators(&self, id: NodeId) -> Vec<usize> {
        let counts = self.generator_counts();
        let mut out = Vec::new();
        let mut cur = id;
        while let Some((prev, g)) = counts[cur].1 {
            out.push(g);
            cur = prev;
        }
        out.reverse();
        out
    }

    /// Whether the module is projective: the surjection `R^n → M` onto a
    /// least generating tuple splits. Decided by exhaustive search for a
    /// section among assignments of preimages to the generators.
    pub fn is_projective(&self, generator_bound: usize, bounds: &Bounds) -> Result<bool> {
        let value = projective_by_section(self, generator_bound, bounds)?;
        Ok(self.flip(Fault::InvertProjective, value))
    }
}

fn projective_by_section(a: &Analysis, generator_bound: usize, bounds: &Bounds) -> Result<bool> {
    let module = a.module();
    let ring = module.ring();
    let gens = a.minimal_generators(a.top());
    let n = gens.len();
    if n > generator_bound {
        return Err(Error::PreconditionViolation(format!(
            "module needs {n} generators, bound is {generator_bound}"
        )));
    }
    if n == 0 {
        return Ok(true);
    }
    let rs = ring.size();
    let free_size = rs
        .checked_pow(n as u32)
        .filter(|&s| s <= bounds.max_module_size)
        .ok_or(Error::SizeBoundExceeded {
            what: "free module",
            size: rs.saturating_pow(n as u32),
            bound: bounds.max_module_size,
        })?;
    let regular = ModuleRep::regular(ring);
    let mut free = regular.clone();
    for _ in 1..n {
        free = free.direct_sum(&regular)?.module;
    }
    debug_assert_eq!(free.size(), free_size);
    let coords = |t: usize| -> Vec<usize> {
        (0..n).map(|j| (t / rs.pow(j as u32)) % rs).collect()
    };
    let project = |t: usize| -> usize {
        coords(t)
            .iter()
            .zip(&gens)
            .fold(0, |acc, (&r, &g)| module.add(acc, module.act(r, g)))
    };
    let images: Vec<usize> = (0..free_size).map(project).collect();
    let free = Arc::new(free);
    let kernel = ElemSet::from_indices(free_size, (0..free_size).filter(|&t| images[t] == 0));
    let kernel = crate::lattice::Submodule::from_members(&free, kernel)?;
    let relations: Vec<Vec<usize>> = kernel.generators().iter().map(|&t| coords(t)).collect();
    let preimages: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..free_size).filter(|&t| images[t] == g).collect())
        .collect();
    let space: u128 = preimages.iter().map(|p| p.len() as u128).product();
    if space > bounds.max_hom_search {
        return Err(Error::SearchBoundExceeded {
            size: space,
            bound: bounds.max_hom_search,
        });
    }
    let mut choice = vec![0usize; n];
    loop {
        let section: Vec<usize> = (0..n).map(|j| preimages[j][choice[j]]).collect();
        let well_defined = relations.iter().all(|rel| {
            rel.iter()
                .zip(&section)
                .fold(0, |acc, (&r, &t)| free.add(acc, free.act(r, t)))
                == 0
        });
        if well_defined {
            return Ok(true);
        }
        // odometer
        let mut j = 0;
        loop {
            if j == n {
                return Ok(false);
            }
            choice[j] += 1;
            if choice[j] < preimages[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}
