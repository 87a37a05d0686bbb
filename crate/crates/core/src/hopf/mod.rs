//! Coalgebra layer: tensor powers, coproduct extension, and the axiom checks
//! for Hopf and Lie-bialgebra structures.

mod checks;
mod tensor;

pub use checks::{
    antipode_of_series, antipode_of_word, check_antipode, check_classical_yang_baxter,
    check_coassociativity, check_cocommutator_table, check_coproduct_homomorphism, check_counit,
    check_first_order_cocommutators, check_r_antisymmetry, coboundary, derive_antipode,
    schouten_bracket, CoproductMap,
};
pub use tensor::{eval_tensor, parse_tensor, wedge, TensorElement, TensorKey};
