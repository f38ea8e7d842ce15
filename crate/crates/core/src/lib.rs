pub mod algebra;
pub mod annulus;
pub mod connection;
pub mod error;
pub mod graph;
pub mod io;
pub mod kasteleyn;
pub mod multiweb;
pub mod skein;

pub use error::{Error, Result};
