//! Deterministic covariance PDE (in progress).
