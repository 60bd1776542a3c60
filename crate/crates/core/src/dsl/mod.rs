//! Operator-expression language: parsing, printing, state literals and evaluation.
//!
//! Products apply right to left: `A*B` on `s` is `A(B(s))`.

mod cursor;
pub mod eval;
pub mod expr;
pub mod state;

pub use eval::{eval_fermionized, eval_on, to_algebra, Space, SpaceState};
pub use expr::{parse_expr, IndexedOp, OpExpr};
pub use state::{parse_state, StateLit};
