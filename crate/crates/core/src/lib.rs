#![allow(clippy::needless_range_loop)]

pub mod atlas;
pub mod canon;
pub mod cli;
pub mod connectivity;
pub mod error;
pub mod families;
pub mod graph;
pub mod hamiltonize;
pub mod io;
pub mod linkage;
pub mod moduli;
pub mod normal_form;
pub mod tropical;
mod util;

pub use error::{Error, Result};
