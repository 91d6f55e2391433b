//! Lifting, MV-closure, external joins, triple products and the product
//! closure of a product hoop.

mod closure;
mod lift;
mod mv;
mod triple;

pub use closure::{
    b_of, c_of, cs, gs, product_closure, remark_filter_of_double, verify_decomposition,
    verify_main_theorem, ProductClosure, GS_CAP,
};
pub use lift::lift;
pub use mv::{in_slice, mv_closure, mv_negation};
pub use triple::{
    canonicalize, external_join_from_maximal_filter, triple_product, verify_external_join,
    ExternalJoin, JoinFn, JoinKind,
};
