//! JSON instance format.
//!
//! ```json
//! {
//!   "ring": { "name": "Z/4", "additive_orders": [4], "one": [1], "mul": [[[1]]] },
//!   "modules": [
//!     { "name": "Z/2", "ring": "Z/4", "additive_orders": [2], "actions": [[[1]]] }
//!   ],
//!   "tags": ["cyclic"]
//! }
//! ```
//!
//! `mul[i][j]` is the coefficient vector of `e_i·e_j`. `actions[i]` is the
//! matrix of the `i`-th ring basis element acting on module coefficient
//! vectors, row `r` giving output coordinate `r`. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub name: String,
    pub additive_orders: Vec<u32>,
    pub one: Vec<i64>,
    pub mul: Vec<Vec<Vec<i64>>>,
}

/// A module's ring, either by name (matching the instance ring) or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Name(String),
    Inline(RingSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    pub ring: RingRef,
    pub additive_orders: Vec<u32>,
    pub actions: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub ring: RingSpec,
    #[serde(default)]
    pub modules: Vec<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}
