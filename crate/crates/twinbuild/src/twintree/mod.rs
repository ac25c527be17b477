//! The twin tree of SL₂ over GF(q)[t,t⁻¹].
//!
//! B₊ consists of matrices polynomial in t and upper triangular at t = 0,
//! B₋ of matrices polynomial in t⁻¹ and lower triangular at t = ∞. Weyl
//! representatives are ṡ₁ = [[0,1],[−1,0]] and ṡ₀ = [[0,−t⁻¹],[t,0]].

mod decomp;
mod field;
mod groups;
mod laurent;
mod mat;
mod weyl;

pub use decomp::{
    ball, birkhoff, bruhat, codist, dist, monomial, signature_collisions, simple_root_elem, Decomposition,
    ThickChamber,
};
pub use field::{Field, Fq, SUPPORTED};
pub use groups::*;
pub use laurent::Laurent;
pub use mat::{in_borel, in_parahoric, LaurentMat};
pub use weyl::{letter_name, AffWeyl};
