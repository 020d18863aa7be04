//! Exact cohomology of functors on finite categories, homotopic systems and
//! explicit contracting homotopies of their standard cochain complexes.

pub mod abgrp;
pub mod accover;
pub mod complex;
pub mod fincat;
pub mod fixtures;
pub mod functorlib;
pub mod group;
pub mod homotopy;
pub mod cli;
pub mod mackey;
pub mod error;

pub use error::{Error, Result};
