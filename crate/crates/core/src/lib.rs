//! Genus bounds for curves on rational normal scrolls, divisor calculus on
//! scrolls, genus bookkeeping through linkage, and an exact checker for
//! the linkage duality on quadric and cubic surfaces.

pub mod error;
pub mod genus;
pub mod linkage;
pub mod oracle;
pub mod scroll;

pub use error::{Error, Result};
pub use genus::{
    castelnuovo_genus, closed_form_genus, compute_parameters, delta_h_table, exceeds_degree_bound,
    max_genus, min_admissible_degree, printed_castelnuovo_genus, residual_h0_bound, Branch, ClosedForm,
    DeltaHTable, GenusParameters,
};
pub use linkage::{duality_rhs, linked_genus, linked_genus_scroll, LinkageData};
pub use scroll::{make_scroll, ClassGroup, DivisorClass, ResolutionClass, Scroll, Vertex};
