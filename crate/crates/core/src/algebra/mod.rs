//! Finite rings and finite left modules given by explicit presentations.
//!
//! A ring or module is an additive group `Z/d_1 ⊕ … ⊕ Z/d_k` together with
//! structure constants (rings) or one action matrix per ring basis element
//! (modules). Elements are enumerated in mixed radix so that every element
//! has a dense index usable in bit sets.

mod format;
mod module;
mod normal_form;
mod ring;

pub use format::{InstanceFile, ModuleSpec, RingRef, RingSpec};
pub use module::{DirectSum, ModuleRep, Projection};
pub use ring::RingTable;

use std::fmt;

use serde::{Deserialize, Serialize};

/// Configured size limits for construction and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_ring_size: usize,
    pub max_module_size: usize,
    pub max_lattice_nodes: usize,
    /// Upper limit on candidate sections tried by the projectivity search.
    pub max_hom_search: u128,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_ring_size: 256,
            max_module_size: 4096,
            max_lattice_nodes: 1 << 16,
            max_hom_search: 1 << 22,
        }
    }
}

/// A reduced coefficient vector in a ring or module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub Vec<u32>);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Mixed-radix enumeration of `Z/d_1 ⊕ … ⊕ Z/d_k`.
///
/// Coordinate 0 is the least significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radix {
    orders: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

impl Radix {
    /// Returns `None` when the group order overflows `usize`.
    pub fn new(orders: &[u32]) -> Option<Self> {
        let mut strides = Vec::with_capacity(orders.len());
        let mut size: usize = 1;
        for &d in orders {
            strides.push(size);
            size = size.checked_mul(d as usize)?;
        }
        Some(Radix {
            orders: orders.to_vec(),
            strides,
            size,
        })
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn digit(&self, idx: usize, i: usize) -> u32 {
        ((idx / self.strides[i]) % self.orders[i] as usize) as u32
    }

    pub fn digits(&self, idx: usize) -> Vec<u32> {
        (0..self.rank()).map(|i| self.digit(idx, i)).collect()
    }

    /// Index of a coefficient vector; coefficients are reduced first.
    pub fn index_of(&self, coeffs: &[u32]) -> usize {
        coeffs
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&c, &d), &s)| (c % d) as usize * s)
            .sum()
    }

    /// Index of a signed coefficient vector, reduced modulo each order.
    pub fn index_of_signed(&self, coeffs: &[i128]) -> usize {
        coeffs
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&c, &d), &s)| c.rem_euclid(d as i128) as usize * s)
            .sum()
    }

    pub fn element(&self, idx: usize) -> Element {
        Element(self.digits(idx))
    }

    /// Index of the `i`-th standard basis vector.
    pub fn basis(&self, i: usize) -> usize {
        self.strides[i]
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for i in 0..self.orders.len() {
            let d = self.orders[i] as usize;
            let s = self.strides[i];
            let x = (a / s) % d + (b / s) % d;
            out += if x >= d { x - d } else { x } * s;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        for i in 0..self.orders.len() {
            let d = self.orders[i] as usize;
            let s = self.strides[i];
            let x = (a / s) % d;
            out += if x == 0 { 0 } else { d - x } * s;
        }
        out
    }

    /// `n·a` for a non-negative integer `n`.
    pub fn scale(&self, n: u64, a: usize) -> usize {
        let mut out = 0;
        for i in 0..self.orders.len() {
            let d = self.orders[i] as u64;
            let s = self.strides[i];
            out += (((a / s) as u64 % d) * (n % d) % d) as usize * s;
        }
        out
    }

    /// Additive order of the element at `a`.
    pub fn additive_order(&self, a: usize) -> u64 {
        let mut ord = 1u64;
        for i in 0..self.orders.len() {
            let d = self.orders[i] as u64;
            let x = self.digit(a, i) as u64;
            let o = d / gcd(d, x);
            ord = ord / gcd(ord, o) * o;
        }
        ord
    }

    /// Largest additive order of any element (the exponent of the group).
    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &d| acc / gcd(acc, d as u64) * d as u64)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn reduce_coeffs(raw: &[i64], orders: &[u32]) -> Vec<u32> {
    raw.iter()
        .zip(orders)
        .map(|(&c, &d)| c.rem_euclid(d as i64) as u32)
        .collect()
}
