//! Scalar pseudo-differential symbol calculus on the circle.
//!
//! A classical symbol of order `m` is stored as its homogeneous components
//! `σ_{m−j}` at the two cosphere points `ξ = ±1`, each a truncated Fourier
//! series in `x`. Positive homogeneity recovers every other `ξ ≠ 0`.

mod anomaly;
mod periodic;
mod resolvent;
mod symbol;

pub use anomaly::{anomaly_integrand, check_asodd, residue_coboundary, AnomalyCuts};
pub use periodic::{grid_len, Periodic};
pub use resolvent::{log_symbol, power_symbol, resolvent_symbols, ResolventSymbolFamily, LOG_STEP};
pub use symbol::{
    commutator_symbol, compose, is_odd_class, is_odd_pair, odd_class_deviation, odd_pair_deviation,
    wodzicki_res, ClassicalSymbol, HomogComponent, LogSymbol, Side, Symbol,
};

/// Default Fourier bandwidth `N`.
pub const DEFAULT_BANDWIDTH: usize = 32;
/// Default truncation depth `J`.
pub const DEFAULT_DEPTH: usize = 6;
/// Default tolerance for symbol identities.
pub const EPS_SYM: crate::Real = 1e-8;
