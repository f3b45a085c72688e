//! Stochastic heat equation solver (in progress).
