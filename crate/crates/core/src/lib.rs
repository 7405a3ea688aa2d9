#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod constants;
pub mod dispersion;
pub mod efficiency;
pub mod error;
pub mod numerics;
pub mod phasematch;
pub mod sfwm;

pub use error::{Error, Result};
