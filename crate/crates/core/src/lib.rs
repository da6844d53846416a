#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod exact;
pub mod species;
pub mod chord;
pub mod pi;
pub mod geometry;
pub mod apollonius;
pub mod cli;
