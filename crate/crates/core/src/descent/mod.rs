//! Galois extensions, crossed products and the descent of good gradings.
//!
//! A Galois extension `l/k` with group `H` yields a grading on `End_k(l)`
//! that becomes good after extending scalars to `l`. Two constructions are
//! provided: through the map `j: Δ(l,H) → End_k(l)` ([`descend`]) and through
//! fixed points of the shift descent datum ([`datum_descent`]). Both carry a
//! transport matrix from which [`splitting_witness`] builds and checks
//! homogeneous matrix units over `l`.

mod crossed;
mod datum;
mod extension;
mod forms;
mod split;

pub use crossed::{dual_crossed_iso, CrossedProduct, DualCrossedIso};
pub use datum::{datum_descent, datum_grading, descend_with_datum, shift_fixed_basis, DescentDatum};
pub use extension::{
    dual_group_extension, frobenius_extension, make_quadratic, Construction, GaloisExtension, GaloisReport,
    MAX_EXTENSION_SIZE,
};
pub use forms::{
    good_basis_for_split_form, identity_component_invariant, quadratic_form_classes, FormClass, FormInvariant,
};
pub use split::{descend, descended_grading, splitting_witness, Descended, SplittingCertificate};
