//! Counting homomorphisms from link groups to finite groups.

pub mod group;
pub mod hurwitz;
pub mod wirtinger;

pub use group::{builtin_group, FiniteGroup, DEFAULT_ORDER_CAP};
pub use hurwitz::{
    hom_count_estimate, hom_count_exact, hom_count_exact_with_budget, hurwitz_act, HomEstimate, DEFAULT_HOM_BUDGET,
};
pub use wirtinger::{wirtinger_hom_count, wirtinger_hom_count_with_budget, WirtingerPresentation, DEFAULT_NODE_BUDGET};
