//! Flow polytopes of acyclic graphs through the subdivision algebra.
//!
//! Reduction trees, reduced forms, coherent-route triangulations, shellings
//! and Ehrhart data, all computed exactly.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod algebra;
pub mod corpus;
pub mod ehrhart;
pub mod graph;
pub mod poly;
pub mod reduction;
pub mod shelling;
pub mod triangulation;
pub mod verify;
