//! Finite monoids, their right actions, topologies on monoids, monogenic
//! actions and a Fraïssé chain builder.

pub mod actions;
pub mod bitset;
pub mod dictionary;
pub mod error;
pub mod fraisse;
pub mod monogenic;
pub mod monoid;
pub mod partition;
pub mod topology;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use monoid::FiniteMonoid;
pub use partition::{Partition, UnionFind};
