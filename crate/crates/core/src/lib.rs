//! Condorcet domains from never-condition schemes.
//!
//! The crate builds the domains of set-alternating schemes (`1N3` on triples whose midpoint
//! lies in a set `A`, `3N1` elsewhere) and of Fishburn's alternating scheme, decides their
//! structural properties, counts them through recurrences without enumeration, and
//! enumerates every maximal Condorcet domain on a handful of alternatives.

pub mod alternatives;
pub mod analyze;
pub mod condition;
pub mod domain;
pub mod dyck;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod order;
pub mod scheme;
pub mod sizes;

pub use alternatives::{reverse_complement_set, AlternativeSet};
pub use condition::{ConditionSet, NeverCondition, ValueForm};
pub use domain::{dual_domain, restrict_domain, satisfied_conditions, Domain};
pub use error::{Error, Result};
pub use generate::{brute_force_domain, common_part_domain, count_domain, generate_domain};
pub use order::{restrict_order, LinearOrder, Triple};
pub use scheme::{fishburn_scheme, named_set, read_scheme, set_alternating_scheme, write_scheme, FishburnParity, NamedSetKind, Scheme};
