//! Certified multiprecision approximation of the Selberg zeta function of
//! Hecke triangle groups `Γ_w`, `w > 2`, through the determinants
//! `F_N(s) = det(1 - L(s))` of truncated transfer operators.

pub mod binom;
pub mod bounds;
pub mod cache;
pub mod cbound;
pub mod commands;
pub mod error;
pub mod hexfloat;
pub mod lu;
pub mod matrix;
mod outward;
pub mod polylog;
pub mod precision;
pub mod roots;
pub mod spectral;
pub mod zeta;

pub use bounds::{choose_n, total_bound, BoundFactors, ErrorBudget};
pub use cache::ZetaCache;
pub use cbound::{c_upper, CBound};
pub use error::{Error, Result};
pub use matrix::{det_one_minus, entry_a, entry_l, f_n, f_n_real, Basis, FNValue, GroupParam, TransferMatrix};
pub use precision::{PrecisionContext, Scalar};
pub use roots::{
    bisect_delta, bisect_delta_capped, certified_sign, hausdorff_table, RootEnclosure, Sign, SignCertificate,
};
pub use spectral::{
    rank_analysis, ruelle_at_zero, u_matrix, vanishing_order_probe, ProbeReport, RankReport, RuelleReport, UMatrix,
};
pub use zeta::{zeta_complex, zeta_real};
