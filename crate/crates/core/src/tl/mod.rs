//! Temperley–Lieb algebra at roots of unity, the Jones representation of the
//! braid group, and the Jones polynomial of braid closures.

pub mod diagram;
pub mod element;
pub mod jones;

pub use diagram::{TLBasis, TLDiagram};
pub use element::{braid_to_tl, generator_image, markov_trace, TLElement, TlParams};
pub use jones::{jones_at_root, kauffman_bracket_statesum, kauffman_bracket_statesum_capped, STATESUM_DEFAULT_CAP};
