//! Exact Ihara zeta functions of finite graphs, class numbers of imaginary
//! quadratic orders, and the class-number sums attached to the prime geodesic
//! theorem on quotients of the Bruhat-Tits tree.

pub mod arith;
pub mod graph;
pub mod quad;
pub mod report;
pub mod verify;
