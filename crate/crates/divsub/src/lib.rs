//! Toolkit for ℤq-edge-weighted complete graphs: divisible subdivisions,
//! connector machinery, B-restricted weightings, exact micro-scale
//! subdivision numbers, and red/blue even-split Hamiltonian cycles.

pub mod connector;
pub mod finder;
pub mod hamiltonian;
pub mod manifest;
pub mod oracle;
pub mod pattern;
pub mod restricted;
pub mod subdivision;
pub mod tsclaims;
pub mod weighting;
pub mod zq;
