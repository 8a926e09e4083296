use std::fmt;

use super::{reduce_coeffs, Bounds, Element, Radix, RingSpec};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};

/// Above this many triples the distributivity checks run against basis
/// elements in one argument, which is equivalent for bilinear tables.
const EXHAUSTIVE_TRIPLES: usize = 1 << 24;

/// A validated finite unital ring.
///
/// Elements are indexed by [`Radix`]; the full multiplication table is kept
/// so that products are a single lookup.
#[derive(Clone)]
pub struct RingTable {
    name: String,
    radix: Radix,
    one: usize,
    mul: Vec<Vec<Vec<u32>>>,
    table: Vec<u32>,
    minimal_left_ideals: Vec<ElemSet>,
}

impl fmt::Debug for RingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingTable")
            .field("name", &self.name)
            .field("additive_orders", &self.radix.orders())
            .finish()
    }
}

impl PartialEq for RingTable {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.radix == other.radix
            && self.one == other.one
            && self.mul == other.mul
    }
}

impl Eq for RingTable {}

fn fmt_vec(v: &[u32]) -> String {
    Element(v.to_vec()).to_string()
}

impl RingTable {
    /// Parses a JSON ring description and validates it.
    pub fn from_json(text: &str, bounds: &Bounds) -> Result<Self> {
        let spec: RingSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec, bounds)
    }

    pub fn from_spec(spec: &RingSpec, bounds: &Bounds) -> Result<Self> {
        let k = spec.additive_orders.len();
        if let Some(&d) = spec.additive_orders.iter().find(|&&d| d < 2) {
            return Err(Error::axiom(
                "additive orders are at least 2",
                format!("order {d}"),
            ));
        }
        let radix = Radix::new(&spec.additive_orders).ok_or(Error::SizeBoundExceeded {
            what: "ring",
            size: usize::MAX,
            bound: bounds.max_ring_size,
        })?;
        if radix.size() > bounds.max_ring_size {
            return Err(Error::SizeBoundExceeded {
                what: "ring",
                size: radix.size(),
                bound: bounds.max_ring_size,
            });
        }
        if spec.one.len() != k {
            return Err(Error::axiom(
                "unit has one coefficient per basis element",
                format!("expected {k}, got {}", spec.one.len()),
            ));
        }
        if spec.mul.len() != k
            || spec
                .mul
                .iter()
                .any(|row| row.len() != k || row.iter().any(|v| v.len() != k))
        {
            return Err(Error::axiom(
                "multiplication table is k×k of length-k vectors",
                format!("k = {k}"),
            ));
        }
        let orders = &spec.additive_orders;
        let mul: Vec<Vec<Vec<u32>>> = spec
            .mul
            .iter()
            .map(|row| row.iter().map(|v| reduce_coeffs(v, orders)).collect())
            .collect();

        // d_i·(e_i e_j) = 0 and d_j·(e_i e_j) = 0
        for i in 0..k {
            for j in 0..k {
                let v = &mul[i][j];
                for (l, &c) in v.iter().enumerate() {
                    let dl = orders[l] as u64;
                    for &d in &[orders[i], orders[j]] {
                        if !(d as u64 * c as u64).is_multiple_of(dl) {
                            return Err(Error::axiom(
                                "structure constants respect additive orders",
                                format!(
                                    "{d}·(e{}·e{}) = {d}·{} ≠ 0",
                                    i + 1,
                                    j + 1,
                                    fmt_vec(v)
                                ),
                            ));
                        }
                    }
                }
            }
        }

        let n = radix.size();
        let basis_products: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| radix.index_of(&mul[i][j])).collect())
            .collect();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let ad = radix.digits(a);
            for b in 0..n {
                let bd = radix.digits(b);
                let mut acc = 0usize;
                for i in 0..k {
                    if ad[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        let c = ad[i] as u64 * bd[j] as u64;
                        if c != 0 {
                            acc = radix.add(acc, radix.scale(c, basis_products[i][j]));
                        }
                    }
                }
                table[a * n + b] = acc as u32;
            }
        }

        let one = radix.index_of(&reduce_coeffs(&spec.one, orders));
        let mut ring = RingTable {
            name: spec.name.clone(),
            radix,
            one,
            mul,
            table,
            minimal_left_ideals: Vec::new(),
        };
        ring.check_axioms()?;
        ring.minimal_left_ideals = ring.compute_minimal_left_ideals();
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        let r = &self.radix;
        let el = |x: usize| r.element(x).to_string();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::axiom(
                            "associativity (ab)c = a(bc)",
                            format!("a={}, b={}, c={}", el(a), el(b), el(c)),
                        ));
                    }
                }
            }
        }
        let exhaustive = n.saturating_mul(n).saturating_mul(n) <= EXHAUSTIVE_TRIPLES;
        let third: Vec<usize> = if exhaustive {
            (0..n).collect()
        } else {
            (0..r.rank()).map(|i| r.basis(i)).collect()
        };
        for a in 0..n {
            for b in 0..n {
                for &c in &third {
                    let left = self.mul(a, r.add(b, c));
                    if left != r.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::axiom(
                            "left distributivity a(b+c) = ab+ac",
                            format!("a={}, b={}, c={}", el(a), el(b), el(c)),
                        ));
                    }
                    let right = self.mul(r.add(b, c), a);
                    if right != r.add(self.mul(b, a), self.mul(c, a)) {
                        return Err(Error::axiom(
                            "right distributivity (b+c)a = ba+ca",
                            format!("a={}, b={}, c={}", el(a), el(b), el(c)),
                        ));
                    }
                }
            }
        }
        for a in 0..n {
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return Err(Error::axiom(
                    "two-sided unit 1·a = a = a·1",
                    format!("1={}, a={}", el(self.one), el(a)),
                ));
            }
        }
        Ok(())
    }

    fn compute_minimal_left_ideals(&self) -> Vec<ElemSet> {
        let n = self.size();
        let mut cyclic: Vec<ElemSet> = Vec::new();
        for x in 1..n {
            let s = ElemSet::from_indices(n, (0..n).map(|r| self.mul(r, x)));
            if s.len() > 1 && !cyclic.contains(&s) {
                cyclic.push(s);
            }
        }
        let minimal: Vec<ElemSet> = cyclic
            .iter()
            .filter(|s| !cyclic.iter().any(|t| t != *s && t.is_subset(s)))
            .cloned()
            .collect();
        minimal
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn radix(&self) -> &Radix {
        &self.radix
    }

    pub fn additive_orders(&self) -> &[u32] {
        self.radix.orders()
    }

    /// Number of basis elements `k`.
    pub fn rank(&self) -> usize {
        self.radix.rank()
    }

    pub fn size(&self) -> usize {
        self.radix.size()
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// Structure constants: coefficient vector of `e_i·e_j`.
    pub fn structure_constant(&self, i: usize, j: usize) -> &[u32] {
        &self.mul[i][j]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b] as usize
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.radix.add(a, b)
    }

    pub fn element(&self, idx: usize) -> Element {
        self.radix.element(idx)
    }

    /// Minimal nonzero left ideals, as element sets.
    pub fn minimal_left_ideals(&self) -> &[ElemSet] {
        &self.minimal_left_ideals
    }

    /// A left ideal is essential exactly when it contains every minimal left
    /// ideal (each minimal ideal meets it nontrivially iff it lies inside).
    pub fn is_essential_left_ideal(&self, ideal: &ElemSet) -> bool {
        self.minimal_left_ideals.iter().all(|m| m.is_subset(ideal))
    }

    pub fn to_spec(&self) -> RingSpec {
        RingSpec {
            name: self.name.clone(),
            additive_orders: self.radix.orders().to_vec(),
            one: self.radix.digits(self.one).iter().map(|&c| c as i64).collect(),
            mul: self
                .mul
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(|&c| c as i64).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// `Z/n` with generator 1.
    pub fn cyclic(n: u32) -> Result<Self> {
        Self::from_spec(
            &RingSpec {
                name: format!("Z/{n}"),
                additive_orders: vec![n],
                one: vec![1],
                mul: vec![vec![vec![1]]],
            },
            &Bounds::default(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str, orders: Vec<u32>, one: Vec<i64>, mul: Vec<Vec<Vec<i64>>>) -> RingSpec {
        RingSpec {
            name: name.into(),
            additive_orders: orders,
            one,
            mul,
        }
    }

    #[test]
    fn z4_is_a_ring() {
        let r = RingTable::cyclic(4).unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.mul(2, 3), 2);
        assert_eq!(r.minimal_left_ideals().len(), 1);
        assert_eq!(r.minimal_left_ideals()[0].to_vec(), vec![0, 2]);
    }

    #[test]
    fn f2xf2_is_a_ring() {
        let s = spec(
            "F2xF2",
            vec![2, 2],
            vec![1, 1],
            vec![
                vec![vec![1, 0], vec![0, 0]],
                vec![vec![0, 0], vec![0, 1]],
            ],
        );
        let r = RingTable::from_spec(&s, &Bounds::default()).unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.minimal_left_ideals().len(), 2);
    }

    #[test]
    fn nonassociative_table_is_rejected_with_witness() {
        // e1·e1 = e2, e2·e1 = e1, remaining products zero
        let s = spec(
            "bad",
            vec![2, 2],
            vec![1, 0],
            vec![
                vec![vec![0, 1], vec![0, 0]],
                vec![vec![1, 0], vec![0, 0]],
            ],
        );
        match RingTable::from_spec(&s, &Bounds::default()) {
            Err(Error::AxiomViolation { axiom, witness }) => {
                assert!(axiom.contains("associativity"), "{axiom}");
                assert!(witness.contains("a="), "{witness}");
            }
            other => panic!("expected axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn ill_defined_constants_rejected() {
        // e1 has order 2 but e1·e1 = 1 in Z/4
        let s = spec("bad", vec![2, 4], vec![0, 1], vec![
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![1, 0], vec![0, 1]],
        ]);
        assert!(matches!(
            RingTable::from_spec(&s, &Bounds::default()),
            Err(Error::AxiomViolation { .. })
        ));
    }

    #[test]
    fn missing_unit_rejected() {
        let s = spec("no-unit", vec![2], vec![0], vec![vec![vec![1]]]);
        let err = RingTable::from_spec(&s, &Bounds::default()).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { ref axiom, .. } if axiom.contains("unit")));
    }

    #[test]
    fn size_bound_enforced() {
        let bounds = Bounds {
            max_ring_size: 8,
            ..Bounds::default()
        };
        let s = spec("Z/9", vec![9], vec![1], vec![vec![vec![1]]]);
        assert!(matches!(
            RingTable::from_spec(&s, &bounds),
            Err(Error::SizeBoundExceeded { size: 9, bound: 8, .. })
        ));
    }

    #[test]
    fn json_parse_error_has_position() {
        let err = RingTable::from_json("{\"name\": \"x\",\n  \"additive_orders\": [2,", &Bounds::default())
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = RingTable::from_json(
            r#"{"name":"x","additive_orders":[2],"one":[1],"mul":[[[1]]],"extra":1}"#,
            &Bounds::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}
