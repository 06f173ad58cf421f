//! Group gradings on matrix algebras over exact fields.
//!
//! The crate is `no_std` and only needs `alloc`. It covers
//!
//! * finite abelian grading groups ([`group`]),
//! * exact scalars, matrices and structure-constant algebras ([`field`],
//!   [`matrix`], [`algebra`]),
//! * graded vector spaces, good gradings `END(V)` and general gradings with
//!   verification ([`graded`]),
//! * counting good `C_n`-gradings up to isomorphism ([`classify`]),
//! * Galois extensions, crossed products and descended gradings ([`descent`]).
#![no_std]

extern crate alloc;

pub mod error;

pub mod algebra;
pub mod classify;
pub mod descent;
pub mod field;
pub mod graded;
pub mod group;
pub mod matrix;
mod poly;

pub use error::{Error, Result};
