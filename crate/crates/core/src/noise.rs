//! Discrete spacetime white noise on the torus (in progress).
