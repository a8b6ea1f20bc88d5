//! Exact arithmetic for genus-2 curves with real multiplication by the
//! order of discriminant 5.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod experiments;
pub mod families;
pub mod invariants;
pub mod matrix;
pub mod mestre;
pub mod models;
pub mod moduli;
pub mod poly;
pub mod qf_reduce;
pub mod ring;
