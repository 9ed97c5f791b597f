//! Left-invariant forms as elements of the exterior algebra on a coframe.

mod expr;
mod form;

pub use expr::{parse_form, parse_scalar, render_form, render_in, render_scalar, ExprScope};
pub use form::{
    basis_order_key, is_primitive, lefschetz, mask_from_indices, mask_indices, merge_sign, GradedBasis, Grading,
    InvariantForm, Mask,
};
