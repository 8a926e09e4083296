use std::fmt;
use std::sync::Arc;

use super::normal_form::Subquotient;
use super::{reduce_coeffs, Bounds, Element, ModuleSpec, Radix, RingRef, RingTable};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};

/// Above this many triples the additivity checks range over basis elements
/// in one argument; for maps built from matrices this is equivalent.
const EXHAUSTIVE_TRIPLES: usize = 1 << 24;

/// A validated finite left module.
///
/// `act(r, m)` for every ring element `r` and module element `m` is
/// precomputed; everything downstream works on element indices.
#[derive(Clone)]
pub struct ModuleRep {
    name: String,
    ring: Arc<RingTable>,
    radix: Radix,
    actions: Vec<Vec<Vec<u32>>>,
    table: Vec<u32>,
}

impl fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleRep")
            .field("name", &self.name)
            .field("ring", &self.ring.name())
            .field("additive_orders", &self.radix.orders())
            .finish()
    }
}

impl PartialEq for ModuleRep {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.radix == other.radix
            && self.actions == other.actions
            && *self.ring == *other.ring
    }
}

impl Eq for ModuleRep {}

/// Canonical surjection `M → M/N`: `images[m]` is the coset index of `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub images: Vec<usize>,
}

/// `A ⊕ B` with its two canonical embeddings as index maps.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: ModuleRep,
    pub embed_left: Vec<usize>,
    pub embed_right: Vec<usize>,
}

impl ModuleRep {
    /// Builds and validates a module from raw action matrices.
    pub fn new(
        name: impl Into<String>,
        ring: Arc<RingTable>,
        additive_orders: Vec<u32>,
        actions: Vec<Vec<Vec<i64>>>,
        bounds: &Bounds,
    ) -> Result<Self> {
        Self::build(name, ring, additive_orders, actions, bounds, true)
    }

    fn build(
        name: impl Into<String>,
        ring: Arc<RingTable>,
        additive_orders: Vec<u32>,
        actions: Vec<Vec<Vec<i64>>>,
        bounds: &Bounds,
        check: bool,
    ) -> Result<Self> {
        let name = name.into();
        if let Some(&d) = additive_orders.iter().find(|&&d| d < 2) {
            return Err(Error::axiom(
                "additive orders are at least 2",
                format!("order {d}"),
            ));
        }
        let radix = Radix::new(&additive_orders).ok_or(Error::SizeBoundExceeded {
            what: "module",
            size: usize::MAX,
            bound: bounds.max_module_size,
        })?;
        if radix.size() > bounds.max_module_size {
            return Err(Error::SizeBoundExceeded {
                what: "module",
                size: radix.size(),
                bound: bounds.max_module_size,
            });
        }
        let k = ring.rank();
        let n = additive_orders.len();
        if actions.len() != k
            || actions
                .iter()
                .any(|a| a.len() != n || a.iter().any(|row| row.len() != n))
        {
            return Err(Error::axiom(
                "one n×n action matrix per ring basis element",
                format!("ring rank {k}, module rank {n}"),
            ));
        }
        let mut reduced = Vec::with_capacity(k);
        for (i, a) in actions.iter().enumerate() {
            let mut m = Vec::with_capacity(n);
            for (row, entries) in a.iter().enumerate() {
                let d_row = additive_orders[row] as i64;
                let r: Vec<u32> = entries
                    .iter()
                    .map(|&c| c.rem_euclid(d_row) as u32)
                    .collect();
                for (col, &c) in r.iter().enumerate() {
                    if !(additive_orders[col] as u64 * c as u64).is_multiple_of(d_row as u64) {
                        return Err(Error::axiom(
                            "action matrices respect additive orders",
                            format!(
                                "e{} entry ({row},{col}) = {c}: {}·{c} ≠ 0 mod {d_row}",
                                i + 1,
                                additive_orders[col]
                            ),
                        ));
                    }
                }
                m.push(r);
            }
            reduced.push(m);
        }
        let mut module = ModuleRep {
            name,
            ring,
            radix,
            actions: reduced,
            table: Vec::new(),
        };
        module.build_table();
        if check {
            module.check_axioms()?;
        }
        Ok(module)
    }

    pub fn from_spec(spec: &ModuleSpec, ring: &Arc<RingTable>, bounds: &Bounds) -> Result<Self> {
        let ring = match &spec.ring {
            RingRef::Name(n) if n == ring.name() => ring.clone(),
            RingRef::Name(n) => {
                return Err(Error::RingMismatch {
                    left: n.clone(),
                    right: ring.name().to_string(),
                })
            }
            RingRef::Inline(r) => {
                let inline = RingTable::from_spec(r, bounds)?;
                if inline != **ring {
                    return Err(Error::RingMismatch {
                        left: inline.name().to_string(),
                        right: ring.name().to_string(),
                    });
                }
                ring.clone()
            }
        };
        Self::new(
            spec.name.clone(),
            ring,
            spec.additive_orders.clone(),
            spec.actions.clone(),
            bounds,
        )
    }

    /// Parses a JSON module description over `ring` and validates it.
    pub fn from_json(ring: &Arc<RingTable>, text: &str, bounds: &Bounds) -> Result<Self> {
        let spec: ModuleSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec, ring, bounds)
    }

    pub fn to_spec(&self) -> ModuleSpec {
        ModuleSpec {
            name: self.name.clone(),
            ring: RingRef::Name(self.ring.name().to_string()),
            additive_orders: self.radix.orders().to_vec(),
            actions: self
                .actions
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|row| row.iter().map(|&c| c as i64).collect())
                        .collect()
                })
                .collect(),
        }
    }

    fn apply_matrix(&self, i: usize, m: usize) -> usize {
        let r = &self.radix;
        let digits = r.digits(m);
        let out: Vec<u32> = self.actions[i]
            .iter()
            .enumerate()
            .map(|(row, entries)| {
                let d = r.orders()[row] as u64;
                let s: u64 = entries
                    .iter()
                    .zip(&digits)
                    .map(|(&a, &x)| a as u64 * x as u64 % d)
                    .sum();
                (s % d) as u32
            })
            .collect();
        r.index_of(&out)
    }

    fn build_table(&mut self) {
        let n = self.radix.size();
        let rs = self.ring.size();
        let k = self.ring.rank();
        let basis: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..n).map(|m| self.apply_matrix(i, m)).collect())
            .collect();
        let mut table = vec![0u32; rs * n];
        let rr = self.ring.radix();
        for r in 0..rs {
            let coeffs = rr.digits(r);
            for m in 0..n {
                let mut acc = 0;
                for (i, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        acc = self.radix.add(acc, self.radix.scale(c as u64, basis[i][m]));
                    }
                }
                table[r * n + m] = acc as u32;
            }
        }
        self.table = table;
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        let ring = &*self.ring;
        let rs = ring.size();
        let el = |x: usize| self.radix.element(x).to_string();
        let rel = |x: usize| ring.element(x).to_string();
        for m in 0..n {
            if self.act(ring.one(), m) != m {
                return Err(Error::axiom("unit acts as identity 1·m = m", format!("m={}", el(m))));
            }
        }
        for r in 0..rs {
            for s in 0..rs {
                let rs_ = ring.mul(r, s);
                for m in 0..n {
                    if self.act(rs_, m) != self.act(r, self.act(s, m)) {
                        return Err(Error::axiom(
                            "compatibility (rs)m = r(sm)",
                            format!("r={}, s={}, m={}", rel(r), rel(s), el(m)),
                        ));
                    }
                }
            }
        }
        let ring_third: Vec<usize> = if rs * rs * n <= EXHAUSTIVE_TRIPLES {
            (0..rs).collect()
        } else {
            (0..ring.rank()).map(|i| ring.radix().basis(i)).collect()
        };
        for r in 0..rs {
            for &s in &ring_third {
                let sum = ring.add(r, s);
                for m in 0..n {
                    if self.act(sum, m) != self.radix.add(self.act(r, m), self.act(s, m)) {
                        return Err(Error::axiom(
                            "distributivity (r+s)m = rm+sm",
                            format!("r={}, s={}, m={}", rel(r), rel(s), el(m)),
                        ));
                    }
                }
            }
        }
        let module_third: Vec<usize> = if rs * n * n <= EXHAUSTIVE_TRIPLES {
            (0..n).collect()
        } else {
            (0..self.radix.rank()).map(|i| self.radix.basis(i)).collect()
        };
        for r in 0..rs {
            for m in 0..n {
                for &p in &module_third {
                    let lhs = self.act(r, self.radix.add(m, p));
                    if lhs != self.radix.add(self.act(r, m), self.act(r, p)) {
                        return Err(Error::axiom(
                            "distributivity r(m+n) = rm+rn",
                            format!("r={}, m={}, n={}", rel(r), el(m), el(p)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The left regular module of `ring`.
    pub fn regular(ring: &Arc<RingTable>) -> Self {
        let k = ring.rank();
        // column j of the matrix of e_i is e_i·e_j
        let actions = (0..k)
            .map(|i| {
                (0..k)
                    .map(|row| {
                        (0..k)
                            .map(|col| ring.structure_constant(i, col)[row] as i64)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let bounds = Bounds {
            max_module_size: ring.size(),
            ..Bounds::default()
        };
        Self::new(
            format!("{}-regular", ring.name()),
            ring.clone(),
            ring.additive_orders().to_vec(),
            actions,
            &bounds,
        )
        .expect("regular module of a validated ring is valid")
    }

    /// The zero module over `ring`.
    pub fn zero(ring: &Arc<RingTable>) -> Self {
        let actions = vec![Vec::new(); ring.rank()];
        Self::new("0", ring.clone(), Vec::new(), actions, &Bounds::default())
            .expect("zero module is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn radix(&self) -> &Radix {
        &self.radix
    }

    pub fn additive_orders(&self) -> &[u32] {
        self.radix.orders()
    }

    /// Matrix of the `i`-th ring basis element.
    pub fn action_matrix(&self, i: usize) -> &[Vec<u32>] {
        &self.actions[i]
    }

    pub fn size(&self) -> usize {
        self.radix.size()
    }

    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.table[r * self.size() + m] as usize
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.radix.add(a, b)
    }

    pub fn element(&self, idx: usize) -> Element {
        self.radix.element(idx)
    }

    pub fn index_of(&self, e: &Element) -> usize {
        self.radix.index_of(&e.0)
    }

    /// Checks that `set` is closed under addition, negation and the ring
    /// action and contains zero.
    ///
    /// The greedy additive generators of `set` span a group containing it,
    /// and a finite set holding 0 that is closed under adding them contains
    /// that group, so only sums with generators and the action of the ring
    /// basis are tested.
    pub fn is_submodule_set(&self, set: &ElemSet) -> bool {
        if set.capacity() != self.size() || !set.contains(0) {
            return false;
        }
        let gens = crate::lattice::additive_generators(self, set);
        let basis: Vec<usize> = (0..self.ring.rank()).map(|i| self.ring.radix().basis(i)).collect();
        set.iter().all(|a| {
            gens.iter().all(|&g| set.contains(self.add(a, g)))
                && basis.iter().all(|&e| set.contains(self.act(e, a)))
        })
    }

    /// Annihilator of `m` relative to `inside`: `{ r : r·m ∈ inside }`.
    pub fn annihilator_into(&self, m: usize, inside: &ElemSet) -> ElemSet {
        let rs = self.ring.size();
        ElemSet::from_indices(rs, (0..rs).filter(|&r| inside.contains(self.act(r, m))))
    }

    /// Presents `A/B` for submodules `B ≤ A` (given as element sets) as a
    /// module, with the map from members of `A` to quotient indices.
    ///
    /// Non-members of `A` map to `usize::MAX`.
    pub fn subquotient(
        &self,
        a: &ElemSet,
        b: &ElemSet,
        name: impl Into<String>,
    ) -> Result<(ModuleRep, Vec<usize>)> {
        if !b.is_subset(a) {
            return Err(Error::InvalidSubmodule(
                "denominator is not contained in numerator".into(),
            ));
        }
        let additive_gens = |set: &ElemSet| -> Vec<Vec<u32>> {
            crate::lattice::additive_generators(self, set)
                .into_iter()
                .map(|g| self.radix.digits(g))
                .collect()
        };
        let sq = Subquotient::new(self.radix.orders(), &additive_gens(a), &additive_gens(b))?;
        let qr = Radix::new(&sq.orders).expect("subquotient is no larger than its parent");

        let lifts: Vec<usize> = sq
            .generator_lifts
            .iter()
            .map(|v| self.radix.index_of_signed(v))
            .collect();
        let coords = |m: usize| -> Result<Vec<u32>> {
            sq.coordinates(&self.radix.digits(m)).ok_or_else(|| {
                Error::InternalInconsistency("action leaves the numerator submodule".into())
            })
        };
        let k = self.ring.rank();
        let mut actions = Vec::with_capacity(k);
        for i in 0..k {
            let e = self.ring.radix().basis(i);
            let mut mat = vec![vec![0i64; lifts.len()]; lifts.len()];
            for (col, &g) in lifts.iter().enumerate() {
                let image = coords(self.act(e, g))?;
                for (row, &c) in image.iter().enumerate() {
                    mat[row][col] = c as i64;
                }
            }
            actions.push(mat);
        }
        let bounds = Bounds {
            max_module_size: usize::MAX,
            ..Bounds::default()
        };
        let module = ModuleRep::new(name, self.ring.clone(), sq.orders.clone(), actions, &bounds)?;
        let mut images = vec![usize::MAX; self.size()];
        for m in a.iter() {
            images[m] = qr.index_of(&coords(m)?);
        }
        Ok((module, images))
    }

    /// `M/N` together with the canonical projection.
    pub fn quotient(&self, n: &ElemSet) -> Result<(ModuleRep, Projection)> {
        if !self.is_submodule_set(n) {
            return Err(Error::InvalidSubmodule("quotient by a non-submodule".into()));
        }
        let full = ElemSet::full(self.size());
        let (q, images) = self.subquotient(&full, n, format!("{}/N", self.name))?;
        Ok((q, Projection { images }))
    }

    /// `A ⊕ B` over a common ring.
    pub fn direct_sum(&self, other: &ModuleRep) -> Result<DirectSum> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.name().to_string(),
                right: other.ring.name().to_string(),
            });
        }
        let (na, nb) = (self.radix.rank(), other.radix.rank());
        let mut orders = self.radix.orders().to_vec();
        orders.extend_from_slice(other.radix.orders());
        let actions = (0..self.ring.rank())
            .map(|i| {
                let mut mat = vec![vec![0i64; na + nb]; na + nb];
                for r in 0..na {
                    for c in 0..na {
                        mat[r][c] = self.actions[i][r][c] as i64;
                    }
                }
                for r in 0..nb {
                    for c in 0..nb {
                        mat[na + r][na + c] = other.actions[i][r][c] as i64;
                    }
                }
                mat
            })
            .collect();
        let bounds = Bounds {
            max_module_size: usize::MAX,
            ..Bounds::default()
        };
        // block-diagonal actions of two modules are a module
        let module = ModuleRep::build(
            format!("{}+{}", self.name, other.name),
            self.ring.clone(),
            orders,
            actions,
            &bounds,
            false,
        )?;
        let embed_left = (0..self.size())
            .map(|a| {
                let mut d = self.radix.digits(a);
                d.resize(na + nb, 0);
                module.radix.index_of(&d)
            })
            .collect();
        let embed_right = (0..other.size())
            .map(|b| {
                let mut d = vec![0; na];
                d.extend(other.radix.digits(b));
                module.radix.index_of(&d)
            })
            .collect();
        Ok(DirectSum {
            module,
            embed_left,
            embed_right,
        })
    }

    /// Reduces signed coefficients into an element index.
    pub fn index_of_raw(&self, raw: &[i64]) -> Result<usize> {
        if raw.len() != self.radix.rank() {
            return Err(Error::InvalidSubmodule(format!(
                "element has {} coefficients, module has rank {}",
                raw.len(),
                self.radix.rank()
            )));
        }
        Ok(self.radix.index_of(&reduce_coeffs(raw, self.radix.orders())))
    }
}
