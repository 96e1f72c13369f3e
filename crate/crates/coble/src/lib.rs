//! Coble covariants of marked Del Pezzo surfaces of degree 2 to 5, realized as polynomials
//! on the Cartan algebras of E7, E6, D5 and A4, with exact checks of their combinatorics.

pub mod config;
pub mod covariants;
pub mod cuspidal;
pub mod lattice;
pub mod poly;
pub mod report;
pub mod suites;
