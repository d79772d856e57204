//! Leibniz algebras given by structure constants.

mod enumerate;
mod ideal;
mod maps;
mod tensor;

pub use ideal::{
    center, center_within, derived_series, ideal_closure, is_ideal, left_annihilator, left_mult,
    leib_ideal, liezation, lower_central_series, product_space, quotient, right_annihilator,
    right_mult, subalgebra, symmetric_mult, symmetric_span, IdealHandle, Quotient,
};
pub(crate) use ideal::{closure_unchecked, common_kernel};
pub use enumerate::enumerate_leibniz;
pub use maps::{hom_check, hom_violations, is_isomorphism, HomCheck, LinearMap, MapRole};
pub use tensor::{format_combination, Convention, LeibnizAlgebra, LeibnizCheck, StructureTensor};
