//! Exact growth-order counting for rooted trees on the square lattice.
//!
//! A rooted tree with `L` bonds can be grown from its root, one bond at a
//! time and always connected, in `N(T) = L!/W(T)` ways, where `W(T)` is the
//! product over bonds of their downstream weights. This crate builds such
//! trees (paths, combs, random trees and the hierarchical trees whose growth
//! count is within `C^L` of `L!`), counts their growth orders exactly, checks
//! the count against brute-force enumeration, and certifies the `C^L` bound
//! for generations far too large to build.
//!
//! ```
//! use lattice_growth::{comb_tree, growth_count, enumerate_growth_orders};
//!
//! let comb = comb_tree(8).unwrap();
//! assert_eq!(growth_count(&comb).unwrap(), 105u32.into());
//! assert_eq!(enumerate_growth_orders(&comb, None).unwrap(), 105u32.into());
//! ```

pub mod analytics;
pub mod bethe;
pub mod bigcount;
pub mod counting;
pub mod error;
pub mod forest;
pub mod generators;
pub mod lattice;
pub mod logdomain;
pub mod params;
pub mod random;
pub mod render;
pub mod sparse;
pub mod verify;

pub use analytics::{
    bond_count, constants, epsilon0, exact_weight, paper_weight_bound, structure_fractions,
    verify_main_bound, verify_main_bound_exact, BoundMode, ConstantsReport,
};
pub use bigcount::BigCount;
pub use counting::{
    downstream_weights, enumerate_growth_orders, growth_count, orient_from_root, tree_weight,
    WeightTable,
};
pub use error::{Error, Result};
pub use generators::{bouch_tree, comb_tree, custom_hierarchical_tree, path_tree};
pub use lattice::{validate_tree, Bond, RootedTree, Site};
pub use logdomain::LogValue;
pub use params::BouchParams;
pub use random::random_lattice_tree;
pub use sparse::Sparse;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    struct Readme;
    #[doc = include_str!("../../../book/src/intro.md")]
    struct Intro;
    #[doc = include_str!("../../../book/src/growth-orders.md")]
    struct GrowthOrders;
    #[doc = include_str!("../../../book/src/hierarchical.md")]
    struct Hierarchical;
    #[doc = include_str!("../../../book/src/bounds.md")]
    struct Bounds;
    #[doc = include_str!("../../../book/src/bethe.md")]
    struct Bethe;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
