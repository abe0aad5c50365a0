//! Ternary cyclic codes `C(1,e)` of length `3^m - 1` and the machinery to
//! certify their optimality: GF(3) polynomial algebra and factorization,
//! GF(3^m) arithmetic, cyclotomic cosets, code construction with a
//! brute-force distance oracle, the C1–C3 decision procedure, and exact
//! checks of the polynomial identities behind the optimal families.

pub mod code;
pub mod conditions;
pub mod cyclotomic;
pub mod error;
pub mod factor;
pub mod field;
pub mod gf3;
pub mod identities;
pub mod poly;
pub mod report;
pub mod text;

pub use error::{Error, Result};
pub use factor::{factor, Factorization};
pub use field::{FieldCtx, FieldElem};
pub use gf3::Gf3;
pub use poly::Poly;
pub use report::{emit_report, Format, RunReport};
pub use text::{format_list, parse_poly};
